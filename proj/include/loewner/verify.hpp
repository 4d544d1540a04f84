#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "loewner/zipper.hpp"

namespace loewner {

struct CheckResult {
    std::string name;
    bool passed = false;
    double observed = 0.0;
    double bound = 0.0;
    std::string witness;
};

template <class T>
struct Named {
    std::string name;
    T value;
};

struct Suite {
    std::vector<Named<Chord>> chords;
    std::vector<Named<CurveSegment>> hulls;
    std::uint64_t seed = 1;
};

Suite default_suite(std::uint64_t seed = 1);

// Hull radius about ref: largest distance from ref to a vertex or endpoint.
double chord_radius(const Chord& c, double ref);
double diameter(const std::vector<Complex>& pts);

// Sup distance of the two mapping-out functions on the semicircle |z - ref| = R (ref: midpoint
// of the shared endpoints). Non-positive R means 100 times the larger hull radius.
double map_distance(const Chord& a, const Chord& b, double R = 0.0, int n = 64);

std::vector<CheckResult> check_hcap_identities(const Suite& suite);
std::vector<CheckResult> check_map_bound(const Suite& suite, int pairs = 10000);
CheckResult check_energy_cone(const Chord& chord);

// Measured energy of a chord through exp(i theta) in the (0, infinity) frame, against -8 log sin theta.
CheckResult check_cone_witness(double theta);

struct DistRatios {
    CheckResult result;
    double diam_ratio = 0.0;
    double hcap_ratio = 0.0;
};

DistRatios check_dist_bounds(const Chord& chord);
std::vector<CheckResult> check_dist_suite(const Suite& suite);
std::vector<CheckResult> check_geodesic_energy(const Suite& suite);
std::vector<CheckResult> check_commutation();

// Runs the named groups (hcap, map, cone, dist, geodesic, commutation); empty means all.
std::vector<CheckResult> run_checks(const Suite& suite, const std::vector<std::string>& only = {});

}  // namespace loewner
