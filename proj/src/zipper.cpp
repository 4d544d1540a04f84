#include "loewner/zipper.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "loewner/errors.hpp"

namespace loewner {

double DrivingFunction::at(double t) const {
    if (samples.empty()) throw InputError("empty driving function");
    if (t <= samples.front().t) return samples.front().lambda;
    if (t >= samples.back().t) return samples.back().lambda;
    auto it = std::upper_bound(samples.begin(), samples.end(), t,
                               [](double x, const DrivingSample& s) { return x < s.t; });
    const auto& hi = *it;
    const auto& lo = *std::prev(it);
    double f = (t - lo.t) / (hi.t - lo.t);
    return lo.lambda + f * (hi.lambda - lo.lambda);
}

DrivingFunction DrivingFunction::truncated(double t) const {
    if (!(t > 0.0) || t > total_t()) throw InputError("truncation time out of range");
    DrivingFunction out;
    for (const auto& s : samples) {
        if (s.t >= t) break;
        out.samples.push_back(s);
    }
    out.samples.push_back({t, at(t)});
    return out;
}

void validate(const DrivingFunction& d) {
    if (d.samples.size() < 2) throw InputError("driving function needs at least two samples");
    if (d.samples.front().t != 0.0) throw InputError("driving function must start at t = 0");
    for (std::size_t i = 0; i < d.samples.size(); ++i) {
        const auto& s = d.samples[i];
        if (!std::isfinite(s.t) || !std::isfinite(s.lambda))
            throw InputError("driving sample " + std::to_string(i) + " is not finite");
        if (i > 0 && !(s.t > d.samples[i - 1].t))
            throw InputError("driving times must be strictly increasing (sample " + std::to_string(i) + ")");
    }
}

namespace {

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool on_segment(Complex p, Complex q, Complex r) {
    return std::min(p.real(), r.real()) <= q.real() && q.real() <= std::max(p.real(), r.real()) &&
           std::min(p.imag(), r.imag()) <= q.imag() && q.imag() <= std::max(p.imag(), r.imag());
}

int orient(Complex p, Complex q, Complex r) {
    double v = cross(q - p, r - p);
    return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
}

bool segments_meet(Complex p1, Complex p2, Complex q1, Complex q2) {
    int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
    int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(p1, q1, p2)) return true;
    if (o2 == 0 && on_segment(p1, q2, p2)) return true;
    if (o3 == 0 && on_segment(q1, p1, q2)) return true;
    if (o4 == 0 && on_segment(q1, p2, q2)) return true;
    return false;
}

void check_simple(const std::vector<Complex>& pts) {
    std::size_t m = pts.size();
    if (m < 4) return;
    struct Box { double x0, x1, y0, y1; };
    std::vector<Box> boxes(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i)
        boxes[i] = {std::min(pts[i].real(), pts[i + 1].real()), std::max(pts[i].real(), pts[i + 1].real()),
                    std::min(pts[i].imag(), pts[i + 1].imag()), std::max(pts[i].imag(), pts[i + 1].imag())};
    for (std::size_t i = 0; i + 1 < m; ++i) {
        for (std::size_t j = i + 2; j + 1 < m; ++j) {
            const Box& a = boxes[i];
            const Box& b = boxes[j];
            if (a.x1 < b.x0 || b.x1 < a.x0 || a.y1 < b.y0 || b.y1 < a.y0) continue;
            if (segments_meet(pts[i], pts[i + 1], pts[j], pts[j + 1]))
                throw InputError("polyline is not simple: segments " + std::to_string(i) + " and " +
                                 std::to_string(j) + " intersect");
        }
    }
}

void check_vertices(const std::vector<Complex>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag()))
            throw InputError("vertex " + std::to_string(i) + " is not finite");
        if (!(v[i].imag() > 0.0))
            throw InputError("vertex " + std::to_string(i) + " is not in the upper half-plane");
    }
}

}  // namespace

bool polylines_intersect(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        for (std::size_t j = 0; j + 1 < b.size(); ++j)
            if (segments_meet(a[i], a[i + 1], b[j], b[j + 1])) return true;
    return false;
}

void validate(const Chord& c) {
    if (!std::isfinite(c.start) || !std::isfinite(c.end)) throw InputError("chord endpoints must be finite");
    if (c.start == c.end) throw InputError("chord endpoints coincide");
    if (c.vertices.empty()) throw InputError("chord has no vertices");
    check_vertices(c.vertices);
    std::vector<Complex> pts;
    pts.reserve(c.vertices.size() + 2);
    pts.emplace_back(c.start, 0.0);
    pts.insert(pts.end(), c.vertices.begin(), c.vertices.end());
    pts.emplace_back(c.end, 0.0);
    check_simple(pts);
}

void validate(const CurveSegment& c) {
    if (!std::isfinite(c.base)) throw InputError("segment base must be finite");
    check_vertices(c.vertices);
    std::vector<Complex> pts;
    pts.reserve(c.vertices.size() + 1);
    pts.emplace_back(c.base, 0.0);
    pts.insert(pts.end(), c.vertices.begin(), c.vertices.end());
    check_simple(pts);
}

ZipperResult zip_points(double base, const std::vector<Complex>& points, ElementKind kind) {
    ZipperResult r;
    auto& els = r.stack.elements;
    els.reserve(points.size());
    r.driving.samples.reserve(points.size() + 1);
    r.driving.samples.push_back({0.0, base});
    double t = 0.0;
    double cur = base;
    for (std::size_t k = 0; k < points.size(); ++k) {
        Complex w;
        try {
            w = apply_elements(els, points[k]);
        } catch (const SingularPointError&) {
            throw GeometryError("vertex lies on the zipped hull", k);
        }
        if (!(w.imag() > 0.0)) throw GeometryError("vertex image left the upper half-plane", k);
        SlitElement e = kind == ElementKind::vertical ? SlitElement::vertical(w.real(), w.imag())
                                                      : SlitElement::through(cur, w);
        t += e.dt();
        cur = e.drive();
        if (!(t > r.driving.samples.back().t)) throw GeometryError("capacity increment vanished", k);
        els.push_back(e);
        r.driving.samples.push_back({t, cur});
    }
    r.total_t = t;
    r.total_hcap = stack_hcap(r.stack);
    r.low_resolution = points.size() < 3;
    return r;
}

ZipperResult compute_driving(const Chord& chord, const ZipOptions& opts) {
    validate(chord);
    ZipperResult r = zip_points(chord.start, chord.vertices, opts.kind);
    r.closing_gap = std::abs(chord.vertices.back() - Complex{chord.end, 0.0});
    r.tail_hcap_bound = r.closing_gap * r.closing_gap;
    r.closed = r.closing_gap <= opts.close_fraction * std::abs(chord.end - chord.start);
    return r;
}

ZipperResult compute_driving(const CurveSegment& curve, const ZipOptions& opts) {
    validate(curve);
    return zip_points(curve.base, curve.vertices, opts.kind);
}

Chord reversed(const Chord& c) {
    return {c.end, c.start, std::vector<Complex>(c.vertices.rbegin(), c.vertices.rend())};
}

Chord mirrored(const Chord& c) {
    Chord m{0.0 - c.start, 0.0 - c.end, {}};
    m.vertices.reserve(c.vertices.size());
    for (auto z : c.vertices) m.vertices.emplace_back(0.0 - z.real(), z.imag());
    return m;
}

CurveSegment mirrored(const CurveSegment& c) {
    CurveSegment m{0.0 - c.base, {}};
    m.vertices.reserve(c.vertices.size());
    for (auto z : c.vertices) m.vertices.emplace_back(0.0 - z.real(), z.imag());
    return m;
}

}  // namespace loewner
