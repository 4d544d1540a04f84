#pragma once

#include <vector>

#include "loewner/conformal.hpp"
#include "loewner/slitstack.hpp"

namespace loewner {

// Polyline from start to end through vertices in the open upper half-plane.
struct Chord {
    double start = 0.0;
    double end = 1.0;
    std::vector<Complex> vertices;
};

// Polyline growing from a real base point; the last vertex is the tip.
struct CurveSegment {
    double base = 0.0;
    std::vector<Complex> vertices;
};

struct DrivingSample {
    double t;
    double lambda;
};

// Piecewise-linear driving function in the a_t = t clock.
struct DrivingFunction {
    std::vector<DrivingSample> samples;

    double total_t() const { return samples.empty() ? 0.0 : samples.back().t; }
    double at(double t) const;
    DrivingFunction truncated(double t) const;
};

void validate(const DrivingFunction& d);
void validate(const Chord& c);
void validate(const CurveSegment& c);

enum class ElementKind { vertical, arc };

struct ZipOptions {
    ElementKind kind = ElementKind::vertical;
    double close_fraction = 1e-3;
};

struct ZipperResult {
    DrivingFunction driving;
    MapStack stack;
    double total_t = 0.0;
    double total_hcap = 0.0;
    double closing_gap = 0.0;
    double tail_hcap_bound = 0.0;
    bool closed = true;
    bool low_resolution = false;
};

ZipperResult compute_driving(const Chord& chord, const ZipOptions& opts = {});
ZipperResult compute_driving(const CurveSegment& curve, const ZipOptions& opts = {});

// Zips points from a real base without validating the polyline.
ZipperResult zip_points(double base, const std::vector<Complex>& points, ElementKind kind);

// True if any segment of polyline a meets any segment of polyline b.
bool polylines_intersect(const std::vector<Complex>& a, const std::vector<Complex>& b);

Chord reversed(const Chord& c);
Chord mirrored(const Chord& c);
CurveSegment mirrored(const CurveSegment& c);

}  // namespace loewner
