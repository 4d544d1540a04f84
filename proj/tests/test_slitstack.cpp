#include <doctest.h>

#include <random>

#include "loewner/errors.hpp"
#include "loewner/slitstack.hpp"

using namespace loewner;

namespace {

bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

// Coefficient of 1/z in g(z) - z, read off far away.
Complex far_coefficient(const SlitElement& e) {
    Complex z{3e3, 4e3};
    return (slit_apply(e, z) - z) * (z - e.u);
}

}  // namespace

TEST_CASE("vertical slit examples") {
    SlitElement e = SlitElement::vertical(0, 1);
    CHECK(near(slit_apply(e, Complex{0, 2}), Complex{0, std::sqrt(3.0)}, 1e-15));
    CHECK(near(slit_apply(e, Complex{1, 0}), Complex{std::sqrt(2.0), 0}, 1e-15));
    CHECK(near(slit_invert(e, Complex{0, std::sqrt(3.0)}), Complex{0, 2}, 1e-15));
    CHECK(slit_invert(e, Complex{0, 0}) == Complex{0, 1});

    SlitElement f = SlitElement::vertical(3, 2);
    CHECK(near(slit_apply(f, Complex{3.0 + 1e-9, 2.0 + 1e-7}), Complex{3, 0}, 1e-3));
    CHECK(f.drive() == 3.0);
    CHECK(f.hcap() == 2.0);
}

TEST_CASE("points on the slit are rejected") {
    SlitElement e = SlitElement::vertical(0, 1);
    CHECK_THROWS_AS(slit_apply(e, Complex{0, 0.5}), SingularPointError);
    CHECK_THROWS_AS(slit_apply(e, Complex{5e-11, 0.2}), SingularPointError);
    CHECK_NOTHROW(slit_apply(e, Complex{1e-9, 0.2}));
    SlitElement a = SlitElement::through(0.0, Complex{0.6, 0.8});
    Complex on_arc = Complex{1.0 / 1.2, 0} + (1.0 / 1.2) * std::polar(1.0, 2.0);
    CHECK_THROWS_AS(slit_apply(a, on_arc), SingularPointError);
}

TEST_CASE("collapsed interval is ambiguous on the real line") {
    SlitElement e = SlitElement::vertical(0, 1);
    CHECK_THROWS_AS(slit_invert(e, Complex{0.5, 0}), AmbiguityError);
    CHECK(near(slit_invert(e, Complex{2, 0}), Complex{std::sqrt(3.0), 0}, 1e-15));
}

TEST_CASE("round trip on random points") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> x(-3, 3), y(0.01, 3), sh(-2, 2), v(0.1, 2);
    for (int kind = 0; kind < 2; ++kind) {
        double worst = 0;
        for (int i = 0; i < 1000; ++i) {
            SlitElement e{x(rng), v(rng), kind == 0 ? 0.0 : sh(rng)};
            Complex z{x(rng), y(rng)};
            if (e.distance(z) < 0.01) continue;
            worst = std::max(worst, std::abs(slit_invert(e, slit_apply(e, z)) - z));
        }
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("arc element: tip, base images and capacity") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> sh(-3, 3), v(0.05, 2);
    for (int i = 0; i < 50; ++i) {
        SlitElement e{0.3, v(rng), sh(rng)};
        // tip pulls back from the driving value
        CHECK(near(slit_invert(e, Complex{e.drive(), 0}), e.tip(), 1e-12));
        // points just off the base land next to the base images
        Complex left = slit_apply(e, Complex{e.u - 1e-7, 0});
        Complex right = slit_apply(e, Complex{e.u + 1e-7, 0});
        CHECK(std::abs(left.real() - e.base_image(Side::left)) < 1e-5);
        CHECK(std::abs(right.real() - e.base_image(Side::right)) < 1e-5);
        // hydrodynamic expansion: g(z) = z + hcap / z + ...
        CHECK(std::abs(far_coefficient(e) - e.hcap()) <= 1e-3 * e.hcap() + 1e-6);
    }
}

TEST_CASE("arc element maps its arc onto the real line and the half-plane into itself") {
    SlitElement e = SlitElement::through(0.0, Complex{1.5, 0.4});
    double c = 0.5 * std::norm(e.tip() - e.u) / e.shift;
    double a1 = std::arg(e.tip() - c);
    for (int j = 1; j < 20; ++j) {
        double th = a1 + (M_PI - a1) * j / 20.0;
        Complex p = c + std::abs(c) * std::polar(1.0, th);
        Complex n = std::polar(1.0, th);
        Complex out = slit_apply(e, p + 1e-8 * n);
        Complex in = slit_apply(e, p - 1e-8 * n);
        CHECK(std::abs(out.imag()) < 1e-3);
        CHECK(std::abs(in.imag()) < 1e-3);
        CHECK(out.real() < e.drive());
        CHECK(in.real() > e.drive());
    }
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> x(-4, 4), y(1e-3, 4);
    for (int i = 0; i < 500; ++i) {
        Complex z{x(rng), y(rng)};
        if (e.distance(z) < 1e-6) continue;
        CHECK(slit_apply(e, z).imag() > 0.0);
    }
}

TEST_CASE("vertical slit is the zero-shift arc element") {
    SlitElement v = SlitElement::vertical(0.2, 0.7);
    SlitElement a{0.2, 0.7, 1e-300};
    for (Complex z : {Complex{1, 1}, Complex{-0.3, 0.01}, Complex{0.25, 2}})
        CHECK(near(slit_apply(a, z), slit_apply(v, z), 1e-14));
}

TEST_CASE("truncated element carries the requested capacity") {
    for (SlitElement e : {SlitElement::vertical(0, 1), SlitElement{0, 0.3, 1.2}, SlitElement{1, 0.8, -0.5}}) {
        SlitElement t = e.truncated(0.3 * e.dt());
        CHECK(std::abs(t.dt() - 0.3 * e.dt()) <= 1e-14 * e.dt());
        // same circle: the partial tip lies on the arc through the base and the full tip
        if (!e.is_vertical()) {
            double c = e.u + 0.5 * std::norm(e.tip() - e.u) / e.shift;
            CHECK(std::abs(std::abs(t.tip() - c) - std::abs(c - e.u)) < 1e-12);
        }
    }
}

TEST_CASE("stack operations") {
    MapStack empty;
    CHECK(stack_apply(empty, Complex{1, 2}) == Complex{1, 2});
    CHECK(stack_hcap(empty) == 0.0);

    MapStack one{std::nullopt, {SlitElement::vertical(0, 1)}, std::nullopt};
    CHECK(stack_apply(one, Complex{0.5, 0.5}) == slit_apply(one.elements[0], Complex{0.5, 0.5}));

    MapStack two{std::nullopt, {SlitElement::vertical(0, 1), SlitElement::vertical(0, 1)}, std::nullopt};
    CHECK(stack_hcap(two) == 1.0);
    MapStack mixed{std::nullopt, {SlitElement::vertical(0, 1), SlitElement::vertical(3, 2)}, std::nullopt};
    CHECK(stack_hcap(mixed) == 2.5);

    MapStack shifted = mixed;
    shifted.pre = MobiusMap{1, 0.5, 0, 1};
    CHECK(stack_hcap(shifted) == 2.5);
    shifted.post = MobiusMap{2, 0, 0, 1};
    CHECK_THROWS_AS(stack_hcap(shifted), InputError);
}

TEST_CASE("stack round trip away from slits") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> x(-2, 2), v(0.1, 1), y(0.01, 3), sh(-1, 1);
    MapStack s;
    for (int i = 0; i < 30; ++i) s.elements.push_back({x(rng), v(rng), i % 2 ? sh(rng) : 0.0});
    s.pre = MobiusMap{1, 0.25, 0, 1};
    double worst = 0;
    for (int i = 0; i < 300; ++i) {
        Complex z{x(rng), y(rng)};
        Complex w;
        try {
            w = stack_apply(s, z);
        } catch (const SingularPointError&) {
            continue;
        }
        if (w.imag() < 0.01) continue;
        worst = std::max(worst, std::abs(stack_invert(s, w) - z));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("random stacks obey the mapping-out bounds") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> x(-0.5, 0.5), v(0.05, 0.4);
    for (int trial = 0; trial < 20; ++trial) {
        MapStack s;
        for (int i = 0; i < 10; ++i) s.elements.push_back(SlitElement::vertical(x(rng), v(rng)));
        double h = stack_hcap(s);
        // hull radius about 0: pull points of each slit back to the original plane
        double r = 0;
        for (std::size_t i = 0; i < s.elements.size(); ++i) {
            const SlitElement& e = s.elements[i];
            for (int k = 0; k <= 20; ++k) {
                Complex p{e.u + 1e-9, std::max(e.v * k / 20.0, 1e-9)};
                r = std::max(r, std::abs(invert_elements(s.elements, k == 20 ? e.tip() : p, 0, i)));
            }
        }
        for (int j = 0; j < 16; ++j) {
            Complex z = 100.0 * r * std::polar(1.0, M_PI * (j + 0.5) / 16);
            Complex g = stack_apply(s, z);
            CHECK(std::abs(g - z - h / z) <= 10.0 * r * h / std::norm(z));
            CHECK(std::abs(g - z) <= 3.0 * 2.0 * r);
        }
    }
}

TEST_CASE("capacity scales exactly") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> x(-1, 1), v(0.1, 1);
    MapStack s, t;
    const double r = 3.0, shift = 0.5;
    for (int i = 0; i < 40; ++i) {
        SlitElement e{x(rng), v(rng), i % 3 ? 0.0 : x(rng)};
        s.elements.push_back(e);
        t.elements.push_back({r * e.u + shift, r * e.v, r * e.shift});
    }
    CHECK(std::abs(stack_hcap(t) / (r * r * stack_hcap(s)) - 1.0) <= 1e-12);
}
