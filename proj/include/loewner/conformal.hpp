#pragma once

#include <complex>

namespace loewner {

using Complex = std::complex<double>;

struct BoundaryPoint {
    bool infinite = false;
    double x = 0.0;

    static BoundaryPoint finite(double v) { return {false, v}; }
    static BoundaryPoint infinity() { return {true, 0.0}; }

    bool operator==(const BoundaryPoint&) const = default;
};

// z -> (a z + b) / (c z + d) with real coefficients and positive determinant.
struct MobiusMap {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    double det() const { return a * d - b * c; }
    bool is_translation() const { return c == 0.0 && a == d; }
    MobiusMap inverse() const { return {d, -b, -c, a}; }
};

MobiusMap compose(const MobiusMap& outer, const MobiusMap& inner);

// phi(a) = 0, phi(b) = infinity; the apex of the geodesic between finite a and b goes to i.
MobiusMap mobius_fixing(BoundaryPoint a, BoundaryPoint b);

Complex mobius_apply(const MobiusMap& m, Complex z);
BoundaryPoint mobius_apply(const MobiusMap& m, BoundaryPoint p);

void validate(const MobiusMap& m);

}  // namespace loewner
