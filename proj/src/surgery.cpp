#include "loewner/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace loewner {

namespace {

struct Semicircle {
    double from, to;

    Complex at(double p) const {
        double c = 0.5 * (from + to);
        double r = 0.5 * std::abs(to - from);
        double theta = from < to ? std::numbers::pi * (1.0 - p) : std::numbers::pi * p;
        return {c + r * std::cos(theta), r * std::sin(theta)};
    }
};

Semicircle image_semicircle(const MapStack& stack, const PrimeEnd& from, const PrimeEnd& to) {
    BoundaryPoint a = resolve(stack, from);
    BoundaryPoint b = resolve(stack, to);
    if (a.infinite || b.infinite) throw InputError("geodesic endpoints must resolve to finite image points");
    if (a.x == b.x) throw InputError("geodesic endpoints resolve to the same image point");
    return {a.x, b.x};
}

Complex pull_back(const MapStack& stack, Complex w) {
    Complex z = stack_invert(stack, w);
    if (!(z.imag() > 0.0) || !std::isfinite(z.real()))
        throw NumericalError("geodesic pullback left the upper half-plane");
    return z;
}

}  // namespace

std::vector<Complex> hyperbolic_geodesic(const MapStack& stack, const PrimeEnd& from, const PrimeEnd& to,
                                         const GeodesicSpec& spec) {
    if (spec.n_samples < 3) throw InputError("geodesic needs at least 3 samples");
    Semicircle sc = image_semicircle(stack, from, to);
    double n1 = spec.n_samples + 1.0;
    std::vector<double> ps;
    for (int j = 1; j <= spec.n_samples; ++j) ps.push_back(j / n1);
    for (int m = 1; m <= spec.end_refinement; ++m) ps.push_back(1.0 - std::ldexp(1.0, -m) / n1);
    std::sort(ps.begin(), ps.end());
    std::vector<Complex> out;
    out.reserve(ps.size());
    for (double p : ps) out.push_back(pull_back(stack, sc.at(p)));
    return out;
}

std::vector<Complex> closing_geodesic(const MapStack& stack, const PrimeEnd& from, const PrimeEnd& to,
                                      int n_samples, Complex target, double tol) {
    std::vector<Complex> out = hyperbolic_geodesic(stack, from, to, {n_samples, 0});
    Semicircle sc = image_semicircle(stack, from, to);
    double n1 = n_samples + 1.0;
    for (int m = 1; m <= 60 && std::abs(out.back() - target) > tol; ++m)
        out.push_back(pull_back(stack, sc.at(1.0 - std::ldexp(1.0, -m) / n1)));
    return out;
}

std::vector<SlitElement> capacity_prefix(const std::vector<double>& times, const std::vector<SlitElement>& elements,
                                         double s, std::size_t* full_count) {
    std::vector<SlitElement> out;
    std::size_t full = 0;
    for (std::size_t j = 0; j < elements.size(); ++j) {
        if (times[j + 1] <= s * (1.0 + 1e-14)) {
            out.push_back(elements[j]);
            ++full;
            continue;
        }
        if (s > times[j]) out.push_back(elements[j].truncated(s - times[j]));
        break;
    }
    if (full_count) *full_count = full;
    return out;
}

namespace {

double chord_radius(const Chord& c) {
    double mid = 0.5 * (c.start + c.end);
    double r = 0.5 * std::abs(c.end - c.start);
    for (auto z : c.vertices) r = std::max(r, std::abs(z - mid));
    return r;
}

EnergyReport arc_energy(const MapStack& stack, const PrimeEnd& from, const PrimeEnd& to,
                        const std::vector<Complex>& pts) {
    EnergyOptions eo;
    eo.kind = ElementKind::arc;
    return domain_energy(stack, from, to, pts, eo);
}

}  // namespace

ReversalState start_reversal(const Chord& chord, const ReversalOptions& opts) {
    ReversalState st;
    st.chord = chord;
    ZipperResult z = compute_driving(chord, {ElementKind::arc, opts.close_fraction});
    st.elements = std::move(z.stack.elements);
    st.times.reserve(z.driving.samples.size());
    for (const auto& s : z.driving.samples) st.times.push_back(s.t);
    st.t_cursor = z.total_t;
    if (opts.track_ledger)
        st.ledger.initial_energy =
            arc_energy({}, PrimeEnd::at(chord.start), PrimeEnd::at(chord.end), chord.vertices).energy;
    return st;
}

ReversalState local_reversal_step(const ReversalState& state, double eps, const ReversalOptions& opts) {
    if (!(eps > 0.0) || eps > state.t_cursor * (1.0 + 1e-12))
        throw InputError("reversal step size must lie in (0, t_cursor]");
    const Chord& chord = state.chord;
    double total = state.times.back();
    double s = state.t_cursor - eps;
    if (s <= 1e-12 * total) s = 0.0;

    std::size_t full = 0;
    MapStack g{std::nullopt, capacity_prefix(state.times, state.elements, s, &full), std::nullopt};
    const auto& gel = g.elements;
    double u_g = gel.empty() ? chord.start : gel.back().drive();
    double y_base = apply_real(gel, chord.end);

    std::vector<SlitElement> h;
    double y = y_base;
    if (!state.eta.empty()) {
        std::vector<Complex> moved;
        moved.reserve(state.eta.size());
        for (auto z : state.eta) moved.push_back(apply_elements(gel, z));
        ZipperResult hz = zip_points(y_base, moved, ElementKind::arc);
        h = std::move(hz.stack.elements);
        y = hz.driving.samples.back().lambda;
    }
    double x = apply_real(h, u_g);

    MapStack joint;
    joint.elements = gel;
    joint.elements.insert(joint.elements.end(), h.begin(), h.end());

    ReversalState next = state;
    next.t_cursor = s;
    next.step = state.step + 1;
    std::vector<Complex> piece;
    try {
        if (gel.empty()) {
            double tol = opts.close_fraction * std::abs(chord.end - chord.start);
            piece = closing_geodesic(joint, PrimeEnd::image(y), PrimeEnd::image(x), opts.geodesic.n_samples,
                                     Complex{chord.start, 0.0}, tol);
        } else {
            piece = hyperbolic_geodesic(joint, PrimeEnd::image(y), PrimeEnd::image(x), opts.geodesic);
            piece.push_back(invert_elements(gel, gel.back().tip(), 0, gel.size() - 1));
        }
    } catch (const NumericalError& ex) {
        throw ReversalError(std::string("reversal step ") + std::to_string(state.step) + ": " + ex.what() +
                                "; increase n_samples or the number of steps",
                            state.ledger);
    }
    next.eta.insert(next.eta.end(), piece.begin(), piece.end());

    if (!opts.track_ledger) return next;

    LedgerRow row;
    row.step = state.step;
    row.t_cursor = s;
    row.x = x;
    row.y = y;
    double r = 0.5 * std::abs(x - y);
    double c = 0.5 * (x + y);
    row.geodesic_hcap = r * r;
    row.joint_hcap = stack_hcap(joint) + r * r;
    if (!gel.empty()) {
        std::vector<Complex> pre(chord.vertices.begin(), chord.vertices.begin() + static_cast<long>(full));
        if (gel.size() > full) pre.push_back(piece.back());
        row.energy_prefix = arc_energy({}, PrimeEnd::at(chord.start), PrimeEnd::at(chord.end), pre).energy;
        std::vector<Complex> body(next.eta.begin(), next.eta.end() - 1);
        row.energy_eta = arc_energy(g, PrimeEnd::at(chord.end), PrimeEnd::last_tip(), body).energy;
    } else {
        row.energy_eta = arc_energy({}, PrimeEnd::at(chord.end), PrimeEnd::at(chord.start), next.eta).energy;
    }
    row.energy_total = row.energy_prefix + row.energy_eta;

    double radius = opts.probe_radius > 0.0 ? opts.probe_radius : 100.0 * chord_radius(chord);
    double ref = 0.5 * (chord.start + chord.end);
    double worst = 0.0;
    for (int j = 0; j < opts.probe_points; ++j) {
        double th = std::numbers::pi * (j + 0.5) / opts.probe_points;
        Complex z = ref + radius * Complex{std::cos(th), std::sin(th)};
        Complex w = apply_elements(joint.elements, z);
        w += r * r / (w - c);
        worst = std::max(worst, std::abs(w - apply_elements(state.elements, z)));
    }
    row.cara_distance = worst;
    next.ledger.rows.push_back(row);
    return next;
}

ReversalResult reverse_chord(const Chord& chord, int k, const ReversalOptions& opts) {
    if (k < 1) throw InputError("reverse_chord: k must be at least 1");
    ReversalState st = start_reversal(chord, opts);
    double eps = st.t_cursor / k;
    for (int i = 0; i < k; ++i) st = local_reversal_step(st, i + 1 == k ? st.t_cursor : eps, opts);
    return {Chord{chord.end, chord.start, std::move(st.eta)}, std::move(st.ledger)};
}

CommutationResult commutation_defect(const CurveSegment& gamma, const CurveSegment& eta, const EnergyOptions& opts) {
    validate(gamma);
    validate(eta);
    if (gamma.base == eta.base) throw InputError("commutation: segments share a base point");
    std::vector<Complex> pg{Complex{gamma.base, 0.0}}, pe{Complex{eta.base, 0.0}};
    pg.insert(pg.end(), gamma.vertices.begin(), gamma.vertices.end());
    pe.insert(pe.end(), eta.vertices.begin(), eta.vertices.end());
    if (polylines_intersect(pg, pe)) throw InputError("commutation: segments intersect");

    auto one_side = [&](const CurveSegment& first, const CurveSegment& second) {
        double e1 = partial_energy(first, PrimeEnd::at(second.base), nullptr, opts);
        if (first.vertices.empty()) return e1 + partial_energy(second, PrimeEnd::at(first.base), nullptr, opts);
        ZipperResult z = zip_points(first.base, first.vertices, opts.kind);
        return e1 + partial_energy(second, PrimeEnd::last_tip(), &z.stack, opts);
    };
    return {one_side(gamma, eta), one_side(eta, gamma)};
}

}  // namespace loewner
