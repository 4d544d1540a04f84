#include "loewner/slitstack.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "loewner/errors.hpp"

namespace loewner {

SlitElement SlitElement::through(double base, Complex tip) {
    if (!(tip.imag() > 0.0)) throw GeometryError("slit tip must lie in the upper half-plane", 0);
    return {base, tip.imag(), tip.real() - base};
}

SlitElement SlitElement::truncated(double dt) const {
    if (!(dt > 0.0)) throw InputError("truncated: capacity increment must be positive");
    if (is_vertical()) return vertical(u, 2.0 * std::sqrt(dt));
    double h = 2.0 * dt;
    double k = shift / (shift * shift + v * v);
    double sq = std::sqrt(std::max(1.0 - 4.0 * h * k * k, 0.0));
    return {u, std::sqrt(4.0 * h * sq / (1.0 + sq)), 4.0 * h * k / (1.0 + sq)};
}

double SlitElement::base_image(Side side) const {
    double r = std::hypot(shift, v);
    double c = u + 0.5 * shift;
    return side == Side::left ? c - r : c + r;
}

double SlitElement::distance(Complex z) const {
    Complex base{u, 0.0};
    double len = std::hypot(shift, v);
    if (std::abs(shift) < 1e-8 * len) {
        double y = std::clamp(z.imag(), 0.0, v);
        return std::abs(z - Complex{u + shift * y / v, y});
    }
    double cx = u + 0.5 * len * len / shift;
    double rho = std::abs(cx - u);
    Complex rel = z - cx;
    double ang = std::arg(rel);
    double tip_ang = std::arg(tip() - cx);
    bool inside = shift > 0.0 ? (ang >= tip_ang && ang <= std::numbers::pi) : (ang >= 0.0 && ang <= tip_ang);
    if (inside && z.imag() >= 0.0) return std::abs(std::abs(rel) - rho);
    return std::min(std::abs(z - base), std::abs(z - tip()));
}

namespace {

void reject_near(const SlitElement& e, Complex z) {
    double len = std::hypot(e.shift, e.v);
    if (std::abs(z - Complex{e.u, 0.0}) > len + kSlitTolerance) return;
    if (e.distance(z) < kSlitTolerance) throw SingularPointError("point lies on a slit");
}

}  // namespace

Complex slit_apply(const SlitElement& e, Complex z) {
    reject_near(e, z);
    Complex s = z - e.u;
    if (e.is_vertical()) return e.u + s * std::sqrt(1.0 + e.v * e.v / (s * s));
    double a = e.shift, b = e.v;
    double w2 = a * a + b * b;
    Complex t = (w2 - a * s) / (b * s);
    Complex r = (b / std::sqrt(w2)) * s * std::sqrt(1.0 + t * t);
    Complex num = r + s - a;
    Complex alt = r - s + a;
    if (std::abs(num) < std::abs(alt)) num = b * b / alt;
    Complex den = r + s;
    Complex dalt = r - s;
    if (std::abs(den) < std::abs(dalt)) den = (w2 - 2.0 * a * s) / dalt;
    return e.u + 1.5 * a + r * num / den;
}

Complex slit_invert(const SlitElement& e, Complex w) {
    if (w.imag() < 0.0) throw NumericalError("slit_invert: point below the real axis");
    if (w.imag() == 0.0) {
        if (w.real() == e.drive()) return e.tip();
        if (w.real() > e.base_image(Side::left) && w.real() < e.base_image(Side::right))
            throw AmbiguityError("slit_invert: real point inside the collapsed interval");
    }
    if (e.is_vertical()) {
        Complex x = w - e.u;
        if (x == 0.0) return e.tip();
        return e.u + x * std::sqrt(1.0 - e.v * e.v / (x * x));
    }
    double a = e.shift, b = e.v;
    double w2 = a * a + b * b;
    Complex g = w - e.u - 1.5 * a;
    Complex x = g + a;
    Complex r = x == 0.0 ? Complex{0.0, std::sqrt(w2)} : x * std::sqrt(1.0 - w2 / (x * x));
    Complex num = r + x;
    Complex alt = r - x;
    if (std::abs(num) < std::abs(alt)) num = -w2 / alt;
    Complex den = r + g;
    Complex dalt = r - g;
    if (std::abs(den) < std::abs(dalt)) den = (2.0 * a * g - b * b) / dalt;
    return e.u + r * num / den;
}

Complex apply_elements(const std::vector<SlitElement>& els, Complex z, std::size_t first, std::size_t last) {
    for (std::size_t i = first; i < last; ++i) z = slit_apply(els[i], z);
    return z;
}

Complex invert_elements(const std::vector<SlitElement>& els, Complex w, std::size_t first, std::size_t last) {
    for (std::size_t i = last; i > first; --i) w = slit_invert(els[i - 1], w);
    return w;
}

double apply_real(const std::vector<SlitElement>& els, double x) {
    return apply_elements(els, Complex{x, 0.0}).real();
}

Complex stack_apply(const MapStack& s, Complex z) {
    if (s.pre) z = mobius_apply(*s.pre, z);
    z = apply_elements(s.elements, z);
    if (s.post) z = mobius_apply(*s.post, z);
    return z;
}

Complex stack_invert(const MapStack& s, Complex w) {
    if (s.post) w = mobius_apply(s.post->inverse(), w);
    w = invert_elements(s.elements, w);
    if (s.pre) w = mobius_apply(s.pre->inverse(), w);
    return w;
}

double stack_hcap(const MapStack& s) {
    if ((s.pre && !s.pre->is_translation()) || (s.post && !s.post->is_translation()))
        throw InputError("stack_hcap: pre/post maps must be translations");
    double h = 0.0;
    for (const auto& e : s.elements) h += e.hcap();
    return h;
}

}  // namespace loewner
