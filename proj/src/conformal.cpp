#include "loewner/conformal.hpp"

#include <cmath>

#include "loewner/errors.hpp"

namespace loewner {

MobiusMap compose(const MobiusMap& f, const MobiusMap& g) {
    return {f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d,
            f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d};
}

MobiusMap mobius_fixing(BoundaryPoint a, BoundaryPoint b) {
    if (a == b) throw InputError("mobius_fixing: endpoints coincide");
    if (!a.infinite && !std::isfinite(a.x)) throw InputError("mobius_fixing: non-finite endpoint");
    if (!b.infinite && !std::isfinite(b.x)) throw InputError("mobius_fixing: non-finite endpoint");
    if (b.infinite) return {1.0, -a.x, 0.0, 1.0};
    if (a.infinite) return {0.0, -1.0, 1.0, -b.x};
    if (a.x < b.x) return {1.0, -a.x, -1.0, b.x};
    return {1.0, -a.x, 1.0, -b.x};
}

Complex mobius_apply(const MobiusMap& m, Complex z) {
    return (m.a * z + m.b) / (m.c * z + m.d);
}

BoundaryPoint mobius_apply(const MobiusMap& m, BoundaryPoint p) {
    if (p.infinite) {
        if (m.c == 0.0) return BoundaryPoint::infinity();
        return BoundaryPoint::finite(m.a / m.c);
    }
    double den = m.c * p.x + m.d;
    if (den == 0.0) return BoundaryPoint::infinity();
    return BoundaryPoint::finite((m.a * p.x + m.b) / den);
}

void validate(const MobiusMap& m) {
    if (!std::isfinite(m.a) || !std::isfinite(m.b) || !std::isfinite(m.c) || !std::isfinite(m.d))
        throw InputError("Mobius map has non-finite coefficients");
    if (!(m.det() > 0.0)) throw InputError("Mobius map must have positive determinant");
}

}  // namespace loewner
