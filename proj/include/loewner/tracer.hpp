#pragma once

#include <utility>
#include <vector>

#include "loewner/zipper.hpp"

namespace loewner {

struct TraceOptions {
    int steps_per_sample = 4;
    // Largest sub-step; non-positive means 1e-3 of the total time.
    double max_step_t = 0.0;
};

struct TraceResult {
    CurveSegment curve;
    std::vector<double> times;  // capacity time of each vertex
    std::vector<SlitElement> elements;
};

TraceResult trace_curve(const DrivingFunction& driving, const TraceOptions& opts = {});

// Prefix of the chord up to capacity time t, re-traced from its driving, and its tip.
std::pair<CurveSegment, Complex> slice_by_capacity(const Chord& chord, double t);

}  // namespace loewner
