#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "loewner/zipper.hpp"

namespace loewner {

// Half-circle from a to b sampled at n equal angles, endpoints excluded.
Chord geodesic_chord(double a, double b, int n);

struct DrivenChordOptions {
    double total_t = 1.0;
    int n = 800;
    double geodesic_fraction = 0.25;
    double offset = 1.0;
    double close_fraction = 1e-3;
};

// Traces the driving on [0, T], then closes with the hyperbolic geodesic from the tip to the
// boundary point whose image lies `offset` to the right of the image of the base's right side.
Chord chord_from_driving(const std::function<double(double)>& lambda, const DrivenChordOptions& opts = {});

DrivingFunction sample_driving(const std::function<double(double)>& lambda, double total_t, int steps);

// "sin:a,w" is a*sin(w t); "poly:c0,c1,..." is c0 + c1 t + ...
std::function<double(double)> parse_formula(const std::string& spec);

Chord named_chord(const std::string& name);

// Deterministic uniform doubles in [0, 1), identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace loewner
