#include "loewner/energy.hpp"

#include <cmath>

#include "loewner/errors.hpp"

namespace loewner {

BoundaryPoint resolve(const MapStack& stack, const PrimeEnd& p) {
    BoundaryPoint out;
    switch (p.kind) {
        case PrimeEnd::Kind::image:
            return p.point;
        case PrimeEnd::Kind::tip:
            if (stack.elements.empty()) throw InputError("tip prime end requested on an empty stack");
            out = BoundaryPoint::finite(stack.elements.back().drive());
            break;
        case PrimeEnd::Kind::boundary: {
            BoundaryPoint q = stack.pre ? mobius_apply(*stack.pre, p.point) : p.point;
            if (!q.infinite) q = BoundaryPoint::finite(apply_real(stack.elements, q.x));
            out = q;
            break;
        }
    }
    return stack.post ? mobius_apply(*stack.post, out) : out;
}

double dirichlet_energy(const DrivingFunction& d) {
    double e = 0.0;
    for (std::size_t i = 0; i + 1 < d.samples.size(); ++i) {
        double dt = d.samples[i + 1].t - d.samples[i].t;
        if (!(dt > 0.0)) throw InputError("duplicate time samples in driving function");
        double dl = d.samples[i + 1].lambda - d.samples[i].lambda;
        e += dl * dl / dt;
    }
    return 0.5 * e;
}

namespace {

EnergyReport normalized_zip(const std::vector<Complex>& images, const EnergyOptions& opts) {
    std::vector<Complex> pts;
    pts.reserve(images.size());
    for (auto w : images) {
        if (std::abs(w) > opts.stop_modulus) break;
        pts.push_back(w);
    }
    EnergyReport rep;
    rep.resolution = static_cast<int>(pts.size());
    if (pts.empty()) return rep;
    ZipperResult z = zip_points(0.0, pts, opts.kind);
    rep.energy = dirichlet_energy(z.driving);
    rep.t_used = z.total_t;
    return rep;
}

}  // namespace

EnergyReport chord_energy(const Chord& chord, const EnergyOptions& opts) {
    return chord_energy(chord, mobius_fixing(BoundaryPoint::finite(chord.start), BoundaryPoint::finite(chord.end)),
                        opts);
}

EnergyReport chord_energy(const Chord& chord, const MobiusMap& phi, const EnergyOptions& opts) {
    validate(chord);
    validate(phi);
    std::vector<Complex> images;
    images.reserve(chord.vertices.size());
    for (auto z : chord.vertices) images.push_back(mobius_apply(phi, z));
    EnergyReport rep = normalized_zip(images, opts);
    double gap = std::abs(chord.vertices.back() - Complex{chord.end, 0.0});
    rep.tail_hcap_bound = gap * gap;
    return rep;
}

EnergyReport domain_energy(const MapStack& stack, const PrimeEnd& from, const PrimeEnd& to,
                           const std::vector<Complex>& vertices, const EnergyOptions& opts) {
    if (vertices.empty()) return {};
    BoundaryPoint a = resolve(stack, from);
    BoundaryPoint b = resolve(stack, to);
    MobiusMap phi = mobius_fixing(a, b);
    std::vector<Complex> images;
    images.reserve(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        Complex w;
        try {
            w = stack_apply(stack, vertices[i]);
        } catch (const SingularPointError&) {
            throw GeometryError("curve touches the ambient hull", i);
        }
        images.push_back(mobius_apply(phi, w));
    }
    return normalized_zip(images, opts);
}

double partial_energy(const CurveSegment& segment, const PrimeEnd& target, const MapStack* ambient,
                      const EnergyOptions& opts) {
    if (segment.vertices.empty()) return 0.0;
    MapStack identity;
    const MapStack& s = ambient ? *ambient : identity;
    return domain_energy(s, PrimeEnd::at(segment.base), target, segment.vertices, opts).energy;
}

}  // namespace loewner
