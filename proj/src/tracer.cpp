#include "loewner/tracer.hpp"

#include <cmath>
#include <limits>

#include "loewner/errors.hpp"

namespace loewner {

TraceResult trace_curve(const DrivingFunction& driving, const TraceOptions& opts) {
    validate(driving);
    if (opts.steps_per_sample < 1) throw InputError("steps_per_sample must be at least 1");
    double total = driving.total_t();
    double max_dt = opts.max_step_t > 0.0 ? opts.max_step_t : 1e-3 * total;

    TraceResult r;
    r.curve.base = driving.samples.front().lambda;
    const auto& s = driving.samples;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        double span = s[i + 1].t - s[i].t;
        int m = std::max(opts.steps_per_sample, static_cast<int>(std::ceil(span / max_dt - 1e-9)));
        double prev = s[i].t;
        for (int j = 1; j <= m; ++j) {
            double t = j == m ? s[i + 1].t : s[i].t + span * j / m;
            double f = (t - s[i].t) / span;
            double lam = s[i].lambda + f * (s[i + 1].lambda - s[i].lambda);
            r.elements.push_back(SlitElement::vertical(lam, 2.0 * std::sqrt(t - prev)));
            r.times.push_back(t);
            prev = t;
        }
    }
    r.curve.vertices.reserve(r.elements.size());
    for (std::size_t k = 0; k < r.elements.size(); ++k) {
        Complex z = invert_elements(r.elements, r.elements[k].tip(), 0, k);
        if (!(z.imag() >= 1e-12))
            throw StepError("traced tip collided with the real axis at sub-step " + std::to_string(k) +
                            "; refine the time grid");
        r.curve.vertices.push_back(z);
    }
    return r;
}

std::pair<CurveSegment, Complex> slice_by_capacity(const Chord& chord, double t) {
    ZipperResult z = compute_driving(chord);
    if (!(t > 0.0) || !(t < z.total_t)) throw InputError("slice time out of range");
    TraceOptions opts{1, std::numeric_limits<double>::infinity()};
    TraceResult tr = trace_curve(z.driving.truncated(t), opts);
    Complex tip = tr.curve.vertices.back();
    return {tr.curve, tip};
}

}  // namespace loewner
