#pragma once

#include <vector>

#include "loewner/zipper.hpp"

namespace loewner {

// A boundary point of a slit domain: a real or infinite point of the original plane,
// the tip of the last slit of the stack, or a point given directly in image coordinates.
struct PrimeEnd {
    enum class Kind { boundary, tip, image };
    Kind kind = Kind::boundary;
    BoundaryPoint point;

    static PrimeEnd at(double x) { return {Kind::boundary, BoundaryPoint::finite(x)}; }
    static PrimeEnd at_infinity() { return {Kind::boundary, BoundaryPoint::infinity()}; }
    static PrimeEnd last_tip() { return {Kind::tip, {}}; }
    static PrimeEnd image(double x) { return {Kind::image, BoundaryPoint::finite(x)}; }
};

// Image of the prime end on the boundary of the uniformized domain.
BoundaryPoint resolve(const MapStack& stack, const PrimeEnd& p);

struct EnergyOptions {
    double stop_modulus = 1e6;
    ElementKind kind = ElementKind::vertical;
};

struct EnergyReport {
    double energy = 0.0;
    double t_used = 0.0;
    double tail_hcap_bound = 0.0;
    int resolution = 0;
};

double dirichlet_energy(const DrivingFunction& driving);

EnergyReport chord_energy(const Chord& chord, const EnergyOptions& opts = {});

// Same, with a caller-chosen normalization phi sending start to 0 and end to infinity.
EnergyReport chord_energy(const Chord& chord, const MobiusMap& phi, const EnergyOptions& opts = {});

// Energy of a polyline running in the domain of the stack between two prime ends.
EnergyReport domain_energy(const MapStack& stack, const PrimeEnd& from, const PrimeEnd& to,
                           const std::vector<Complex>& vertices, const EnergyOptions& opts = {});

double partial_energy(const CurveSegment& segment, const PrimeEnd& target, const MapStack* ambient = nullptr,
                      const EnergyOptions& opts = {});

}  // namespace loewner
