#pragma once

#include <optional>
#include <vector>

#include "loewner/conformal.hpp"

namespace loewner {

enum class Side { left, right };

// Conformal map removing a slit from the upper half-plane.
// shift == 0: the vertical segment [u, u + iv].
// shift != 0: the arc from u to u + shift + iv on the circle through u orthogonal to the real line.
struct SlitElement {
    double u = 0.0;
    double v = 1.0;
    double shift = 0.0;

    static SlitElement vertical(double u, double v) { return {u, v, 0.0}; }
    static SlitElement through(double base, Complex tip);

    bool is_vertical() const { return shift == 0.0; }
    Complex tip() const { return {u + shift, v}; }
    double drive() const { return u + 1.5 * shift; }
    double hcap() const { return 0.25 * (shift * shift + 2.0 * v * v); }
    double dt() const { return 0.5 * hcap(); }

    // Sub-slit from the same base carrying capacity increment dt (a_t = t clock).
    SlitElement truncated(double dt) const;

    // Image of the base approached along the real axis from the given side.
    double base_image(Side side) const;

    // Distance from z to the closed slit.
    double distance(Complex z) const;
};

inline constexpr double kSlitTolerance = 1e-10;

Complex slit_apply(const SlitElement& e, Complex z);
Complex slit_invert(const SlitElement& e, Complex w);

struct MapStack {
    std::optional<MobiusMap> pre;
    std::vector<SlitElement> elements;
    std::optional<MobiusMap> post;
};

Complex stack_apply(const MapStack& s, Complex z);
Complex stack_invert(const MapStack& s, Complex w);
double stack_hcap(const MapStack& s);

// Element-range versions used internally by the zipper and surgery: elements [first, last).
Complex apply_elements(const std::vector<SlitElement>& els, Complex z, std::size_t first, std::size_t last);
Complex invert_elements(const std::vector<SlitElement>& els, Complex w, std::size_t first, std::size_t last);
inline Complex apply_elements(const std::vector<SlitElement>& els, Complex z) {
    return apply_elements(els, z, 0, els.size());
}
inline Complex invert_elements(const std::vector<SlitElement>& els, Complex w) {
    return invert_elements(els, w, 0, els.size());
}

// Image of the real point x under the elements, x not on any slit base.
double apply_real(const std::vector<SlitElement>& els, double x);

}  // namespace loewner
