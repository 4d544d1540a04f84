#include "loewner/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "loewner/energy.hpp"
#include "loewner/errors.hpp"
#include "loewner/generators.hpp"
#include "loewner/surgery.hpp"
#include "loewner/tracer.hpp"

namespace loewner {

namespace {

using nlohmann::json;

CheckResult make(std::string name, bool passed, double observed, double bound, const json& witness = json::object()) {
    return {std::move(name), passed, observed, bound, witness.dump()};
}

std::vector<Complex> with_base(const CurveSegment& s) {
    std::vector<Complex> pts{Complex{s.base, 0.0}};
    pts.insert(pts.end(), s.vertices.begin(), s.vertices.end());
    return pts;
}

std::vector<Complex> with_ends(const Chord& c) {
    std::vector<Complex> pts{Complex{c.start, 0.0}};
    pts.insert(pts.end(), c.vertices.begin(), c.vertices.end());
    pts.emplace_back(c.end, 0.0);
    return pts;
}

double max_im(const std::vector<Complex>& pts) {
    double m = 0.0;
    for (auto z : pts) m = std::max(m, z.imag());
    return m;
}

CurveSegment transformed(const CurveSegment& s, double r, double x) {
    CurveSegment out{r * s.base + x, {}};
    for (auto z : s.vertices) out.vertices.push_back(r * z + x);
    return out;
}

CurveSegment shifted(const CurveSegment& s, double x) { return transformed(s, 1.0, x); }

CurveSegment traced_hull(const std::function<double(double)>& f, double total_t, int steps) {
    return trace_curve(sample_driving(f, total_t, steps), {1, total_t}).curve;
}

CurveSegment random_hull(Rng& rng) {
    double a = rng.uniform(-1.5, 1.5);
    double w = rng.uniform(1.0, 8.0);
    double ph = rng.uniform(0.0, 2.0 * std::numbers::pi);
    double b = rng.uniform(-1.0, 1.0);
    double x0 = rng.uniform(-1.0, 1.0);
    double total = rng.uniform(0.05, 0.5);
    auto f = [=](double t) { return x0 + a * (std::sin(w * t + ph) - std::sin(ph)) + b * t; };
    return traced_hull(f, total, 100);
}

double segment_distance(Complex p, Complex a, Complex b) {
    Complex d = b - a;
    double len2 = std::norm(d);
    double f = len2 > 0.0 ? std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0) : 0.0;
    return std::abs(p - (a + f * d));
}

double polyline_distance(Complex p, const std::vector<Complex>& pts) {
    double d = std::abs(p - pts.front());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) d = std::min(d, segment_distance(p, pts[i], pts[i + 1]));
    return d;
}

double stack_distance(const std::vector<SlitElement>& a, const std::vector<SlitElement>& b, double ref, double R,
                      int n) {
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        double th = std::numbers::pi * (j + 0.5) / n;
        Complex z = ref + R * Complex{std::cos(th), std::sin(th)};
        worst = std::max(worst, std::abs(apply_elements(a, z) - apply_elements(b, z)));
    }
    return worst;
}

}  // namespace

double diameter(const std::vector<Complex>& pts) {
    double d = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, std::abs(pts[i] - pts[j]));
    return d;
}

double chord_radius(const Chord& c, double ref) {
    double r = std::max(std::abs(c.start - ref), std::abs(c.end - ref));
    for (auto z : c.vertices) r = std::max(r, std::abs(z - ref));
    return r;
}

Suite default_suite(std::uint64_t seed) {
    Suite s;
    s.seed = seed;
    s.chords.push_back({"geodesic", geodesic_chord(-1.0, 1.0, 200)});
    s.chords.push_back({"g1", named_chord("g1")});
    s.chords.push_back({"p1", named_chord("p1")});
    s.chords.push_back({"g1-mirror", mirrored(s.chords[1].value)});
    s.chords.push_back({"p1-mirror", mirrored(s.chords[2].value)});

    CurveSegment vslit{0.0, {}};
    for (int j = 1; j <= 50; ++j) vslit.vertices.emplace_back(0.0, 2.0 * j / 50);
    s.hulls.push_back({"vertical-slit", vslit});
    s.hulls.push_back({"traced-sin", traced_hull([](double t) { return 0.5 * std::sin(4.0 * t); }, 0.25, 100)});
    s.hulls.push_back({"g1-prefix", traced_hull([](double t) { return std::sin(4.0 * t); }, 0.5, 200)});
    Rng rng(seed);
    for (int i = 0; i < 5; ++i) s.hulls.push_back({"random-" + std::to_string(i), random_hull(rng)});
    return s;
}

double map_distance(const Chord& a, const Chord& b, double R, int n) {
    bool same = (a.start == b.start && a.end == b.end) || (a.start == b.end && a.end == b.start);
    if (!same) throw InputError("map_distance: chords must share their endpoints");
    if (n < 16) throw InputError("map_distance: need at least 16 sample points");
    double ref = 0.5 * (a.start + a.end);
    double rad = std::max(chord_radius(a, ref), chord_radius(b, ref));
    if (!(R > 0.0)) R = 100.0 * rad;
    if (!(rad < 0.5 * R)) throw InputError("map_distance: hull radius must be below R/2");
    ZipperResult za = zip_points(a.start, a.vertices, ElementKind::arc);
    ZipperResult zb = zip_points(b.start, b.vertices, ElementKind::arc);
    return stack_distance(za.stack.elements, zb.stack.elements, ref, R, n);
}

std::vector<CheckResult> check_hcap_identities(const Suite& suite) {
    std::vector<CheckResult> out;
    const double r = 3.0, x = 0.5;
    for (const auto& [name, hull] : suite.hulls) {
        ZipperResult z = compute_driving(hull);
        double h = z.total_hcap;
        ZipperResult zs = compute_driving(transformed(hull, r, x));
        double ratio = zs.total_hcap / h;
        out.push_back(make("hcap-scaling/" + name, std::abs(ratio - r * r) <= 1e-9, std::abs(ratio - r * r), 1e-9));

        MapStack scaled;
        for (auto e : z.stack.elements) scaled.elements.push_back({r * e.u + x, r * e.v, r * e.shift});
        double rel = std::abs(stack_hcap(scaled) / (r * r * h) - 1.0);
        out.push_back(make("hcap-scaling-exact/" + name, rel <= 1e-12, rel, 1e-12));

        auto pts = with_base(hull);
        double lower = 0.5 * std::pow(max_im(pts), 2);
        out.push_back(make("hcap-height/" + name, h >= lower, h - lower, 0.0));
        double diam = diameter(pts);
        out.push_back(make("hcap-diameter/" + name, h <= diam * diam, h - diam * diam, 0.0));

        std::size_t half = hull.vertices.size() / 2;
        if (half > 0) {
            CurveSegment pre{hull.base, {hull.vertices.begin(), hull.vertices.begin() + static_cast<long>(half)}};
            double hp = compute_driving(pre).total_hcap;
            out.push_back(make("hcap-monotone-prefix/" + name, hp <= h * 1.01, hp - h, 0.01 * h));
        }
    }
    for (const auto& [name, hull] : suite.hulls) {
        if (name != "vertical-slit") continue;
        double h = compute_driving(hull).total_hcap;
        double lower = 0.5 * std::pow(max_im(with_base(hull)), 2);
        double rel = std::abs(h - lower) / lower;
        out.push_back(make("hcap-height-equality/" + name, rel <= 1e-12, rel, 1e-12));
    }
    for (const auto& [name, chord] : suite.chords) {
        double h = compute_driving(chord).total_hcap;
        auto pts = with_ends(chord);
        double lower = 0.5 * std::pow(max_im(pts), 2);
        double diam = diameter(pts);
        out.push_back(make("hcap-height/" + name, h >= lower, h - lower, 0.0));
        out.push_back(make("hcap-diameter/" + name, h <= diam * diam, h - diam * diam, 0.0));
    }
    {
        double h = compute_driving(geodesic_chord(-1.0, 1.0, 200)).total_hcap;
        out.push_back(make("hcap-half-disk", std::abs(h - 1.0) <= 0.02, h, 1.0));
    }

    const auto& hs = suite.hulls;
    for (std::size_t i = 0; i + 1 < hs.size(); ++i) {
        CurveSegment a = hs[i].value, b = hs[i + 1].value;
        double amax = a.base, bmin = b.base;
        for (auto z : a.vertices) amax = std::max(amax, z.real());
        for (auto z : b.vertices) bmin = std::min(bmin, z.real());
        a = shifted(a, -0.1 - amax);
        b = shifted(b, 0.1 - bmin);
        auto joint = [](const CurveSegment& first, const CurveSegment& second) {
            ZipperResult z1 = compute_driving(first);
            CurveSegment moved{apply_real(z1.stack.elements, second.base), {}};
            for (auto z : second.vertices) moved.vertices.push_back(apply_elements(z1.stack.elements, z));
            return z1.total_hcap + zip_points(moved.base, moved.vertices, ElementKind::vertical).total_hcap;
        };
        double hab = joint(a, b), hba = joint(b, a);
        double ha = compute_driving(a).total_hcap, hb = compute_driving(b).total_hcap;
        std::string tag = hs[i].name + "+" + hs[i + 1].name;
        double rel = std::abs(hab - hba) / hab;
        out.push_back(make("hcap-additivity/" + tag, rel <= 0.01, rel, 0.01));
        out.push_back(make("hcap-subadditivity/" + tag, hab <= (ha + hb) * 1.01, hab - (ha + hb), 0.01 * (ha + hb)));
        double mono = std::max(ha, hb) - hab;
        out.push_back(make("hcap-monotone/" + tag, mono <= 0.01 * hab, mono, 0.01 * hab));
    }
    return out;
}

std::vector<CheckResult> check_map_bound(const Suite& suite, int pairs) {
    std::vector<Named<CurveSegment>> hulls = suite.hulls;
    for (const auto& [name, c] : suite.chords) hulls.push_back({name, CurveSegment{c.start, c.vertices}});
    Rng rng(suite.seed * 7919 + 17);
    for (int i = 0; i < 10; ++i) hulls.push_back({"extra-" + std::to_string(i), random_hull(rng)});

    struct Prepared {
        std::vector<SlitElement> els;
        std::vector<Complex> pts;
        double diam, x0, x1, y1, hcap;
    };
    std::vector<Prepared> prep;
    for (const auto& [name, h] : hulls) {
        Prepared p;
        ZipperResult z = compute_driving(h);
        p.els = z.stack.elements;
        p.hcap = z.total_hcap;
        p.pts = with_base(h);
        p.diam = diameter(p.pts);
        p.x0 = p.x1 = h.base;
        p.y1 = 0.0;
        for (auto v : p.pts) {
            p.x0 = std::min(p.x0, v.real());
            p.x1 = std::max(p.x1, v.real());
            p.y1 = std::max(p.y1, v.imag());
        }
        prep.push_back(std::move(p));
    }

    std::vector<CheckResult> out;
    double worst = 0.0;
    json worst_witness;
    int violations = 0;
    for (int i = 0; i < pairs; ++i) {
        std::size_t k = static_cast<std::size_t>(i) % prep.size();
        const Prepared& p = prep[k];
        for (;;) {
            Complex z{rng.uniform(p.x0 - p.diam, p.x1 + p.diam), rng.uniform(0.0, p.y1 + p.diam)};
            if (z.imag() <= 0.0 || polyline_distance(z, p.pts) < 0.01) continue;
            Complex g;
            try {
                g = apply_elements(p.els, z);
            } catch (const SingularPointError&) {
                continue;
            }
            double ratio = std::abs(g - z) / (3.0 * p.diam);
            if (ratio > 1.0) ++violations;
            if (ratio > worst) {
                worst = ratio;
                worst_witness = {{"hull", hulls[k].name}, {"z", {z.real(), z.imag()}}};
            }
            break;
        }
    }
    out.push_back(make("map-displacement", violations == 0, worst, 1.0, worst_witness));

    for (std::size_t k = 0; k < prep.size(); ++k) {
        const Prepared& p = prep[k];
        double x = p.pts.front().real();
        double rad = 0.0;
        for (auto v : p.pts) rad = std::max(rad, std::abs(v - x));
        double R = 100.0 * rad;
        double worst_c = 0.0;
        for (int j = 0; j < 64; ++j) {
            double th = std::numbers::pi * (j + 0.5) / 64;
            Complex z = x + R * Complex{std::cos(th), std::sin(th)};
            Complex g = apply_elements(p.els, z);
            double e = std::abs(g - z - p.hcap / (z - x));
            worst_c = std::max(worst_c, e * R * R / (rad * p.hcap));
        }
        out.push_back(make("map-far-field/" + hulls[k].name, worst_c <= 10.0, worst_c, 10.0));
    }

    const double family[][2] = {{0.1, 2.0}, {0.5, 1.0}, {1.0, 1.0}, {2.0, 0.5}, {3.0, 1.0}, {0.25, 0.25}};
    for (const auto& dh : family) {
        double d = dh[0], h = dh[1];
        std::vector<SlitElement> a{SlitElement::vertical(0.0, h)}, b{SlitElement::vertical(d, h)};
        double ref = 0.5 * d;
        double r = std::hypot(0.5 * d, h);
        double R = 100.0 * r;
        double dist = stack_distance(a, b, ref, R, 64);
        double bound = 10.0 * r * (0.5 * h * h) / (R * R);
        out.push_back(make("map-paired-slits/d=" + json(d).dump() + ",h=" + json(h).dump(), dist <= bound, dist, bound,
                           {{"d", d}, {"h", h}}));
    }
    return out;
}

CheckResult check_energy_cone(const Chord& chord) {
    double rho = chord_energy(chord).energy;
    double theta = std::asin(std::exp(-rho / 8.0));
    MobiusMap phi = mobius_fixing(BoundaryPoint::finite(chord.start), BoundaryPoint::finite(chord.end));
    double margin = std::numbers::pi;
    for (auto z : chord.vertices) {
        double a = std::arg(mobius_apply(phi, z));
        margin = std::min({margin, a - theta, std::numbers::pi - theta - a});
    }
    return make("energy-cone", margin >= -0.01, margin, -0.01, {{"energy", rho}, {"theta", theta}});
}

CheckResult check_cone_witness(double theta) {
    SlitElement arc = SlitElement::through(0.0, std::polar(1.0, theta));
    double c = 0.5 / std::cos(theta);
    double a0 = std::arg(Complex{-c, 0.0});
    double a1 = std::arg(std::polar(1.0, theta) - c);
    std::vector<Complex> pts;
    const int n_arc = 400, n_ray = 800;
    for (int j = 1; j <= n_arc; ++j) pts.push_back(c + std::abs(c) * std::polar(1.0, a0 + (a1 - a0) * j / n_arc));
    pts.back() = arc.tip();
    for (int j = 0; j < n_ray; ++j) {
        double y = std::pow(10.0, -4.0 + 8.0 * j / (n_ray - 1));
        pts.push_back(slit_invert(arc, Complex{arc.drive(), y}));
    }
    double energy = dirichlet_energy(zip_points(0.0, pts, ElementKind::vertical).driving);
    double bound = -8.0 * std::log(std::sin(theta));
    return make("cone-witness/theta=" + json(theta).dump(), energy >= bound - 0.05, energy, bound,
                {{"theta", theta}});
}

DistRatios check_dist_bounds(const Chord& chord) {
    double d = std::abs(chord.end - chord.start);
    auto pts = with_ends(chord);
    double diam = diameter(pts);
    ZipperResult z = compute_driving(chord);
    DistRatios r;
    r.diam_ratio = diam / d;
    r.hcap_ratio = z.total_hcap / (d * d);
    bool ok = d <= diam && z.total_hcap <= diam * diam;
    r.result = make("dist-bounds", ok, r.diam_ratio, 1.0,
                    {{"diam_ratio", r.diam_ratio}, {"hcap_ratio", r.hcap_ratio}, {"low_resolution", z.low_resolution}});
    return r;
}

std::vector<CheckResult> check_dist_suite(const Suite& suite) {
    std::vector<CheckResult> out;
    double cmax = 0.0, hmax = 0.0;
    for (const auto& [name, chord] : suite.chords) {
        DistRatios r = check_dist_bounds(chord);
        r.result.name += "/" + name;
        out.push_back(r.result);
        cmax = std::max(cmax, r.diam_ratio);
        hmax = std::max(hmax, r.hcap_ratio);
    }
    out.push_back(make("dist-fitted-diameter-constant", cmax <= 10.0, cmax, 10.0));
    out.push_back(make("dist-fitted-capacity-constant", hmax <= 10.0, hmax, 10.0));
    return out;
}

std::vector<CheckResult> check_geodesic_energy(const Suite& suite) {
    std::vector<CheckResult> out;
    for (const auto& [name, chord] : suite.chords) {
        double e = chord_energy(geodesic_chord(chord.start, chord.end, 200)).energy;
        out.push_back(make("geodesic-energy/" + name, e <= 0.01, e, 0.01));
    }
    struct Domain {
        std::string name;
        MapStack stack;
        PrimeEnd from, to;
    };
    std::vector<Domain> domains;
    domains.push_back({"vertical-slit", {std::nullopt, {SlitElement::vertical(0.0, 1.0)}, std::nullopt},
                       PrimeEnd::last_tip(), PrimeEnd::at(1.0)});
    TraceResult tr = trace_curve(sample_driving([](double t) { return std::sin(4.0 * t); }, 0.5, 200), {1, 0.5});
    MapStack traced{std::nullopt, tr.elements, std::nullopt};
    domains.push_back({"traced-prefix", traced, PrimeEnd::last_tip(), PrimeEnd::at(3.0)});
    domains.push_back({"traced-prefix-boundary", traced, PrimeEnd::at(-1.0), PrimeEnd::at(3.0)});
    CurveSegment a{-0.5, {}}, b{0.7, {}};
    for (int j = 1; j <= 20; ++j) {
        a.vertices.emplace_back(-0.5, 1.0 * j / 20);
        b.vertices.emplace_back(0.7, 0.6 * j / 20);
    }
    ZipperResult za = compute_driving(a);
    std::vector<Complex> moved;
    for (auto z : b.vertices) moved.push_back(apply_elements(za.stack.elements, z));
    ZipperResult zb = zip_points(apply_real(za.stack.elements, b.base), moved, ElementKind::vertical);
    MapStack two = za.stack;
    two.elements.insert(two.elements.end(), zb.stack.elements.begin(), zb.stack.elements.end());
    domains.push_back({"two-slits", two, PrimeEnd::last_tip(), PrimeEnd::at(-2.0)});

    for (const auto& d : domains) {
        auto geo = hyperbolic_geodesic(d.stack, d.from, d.to, {200, 0});
        double e = domain_energy(d.stack, d.from, d.to, geo).energy;
        out.push_back(make("geodesic-energy/" + d.name, e <= 0.01, e, 0.01));
    }
    return out;
}

std::vector<CheckResult> check_commutation() {
    std::vector<CheckResult> out;
    CurveSegment g{0.0, {}}, h{1.0, {}};
    for (int j = 1; j <= 800; ++j) {
        g.vertices.emplace_back(0.0, 0.3 * j / 800);
        h.vertices.emplace_back(1.0, 0.3 * j / 800);
    }
    CommutationResult two = commutation_defect(g, h);
    double d2 = std::abs(two.lhs - two.rhs);
    out.push_back(make("commutation/two-slits", d2 <= 0.01, d2, 0.01, {{"lhs", two.lhs}, {"rhs", two.rhs}}));

    CurveSegment left = traced_hull([](double t) { return -t; }, 0.03, 200);
    CurveSegment right{1.0, {}};
    for (auto z : left.vertices) right.vertices.push_back(1.0 - std::conj(z));
    CommutationResult sym = commutation_defect(left, right);
    double ds = std::abs(sym.lhs - sym.rhs);
    out.push_back(make("commutation/mirror", ds <= 1e-9, ds, 1e-9, {{"lhs", sym.lhs}, {"rhs", sym.rhs}}));

    CommutationResult empty = commutation_defect(CurveSegment{0.0, {}}, h);
    double de = std::abs(empty.lhs - empty.rhs);
    out.push_back(make("commutation/empty", de == 0.0, de, 0.0));
    return out;
}

std::vector<CheckResult> run_checks(const Suite& suite, const std::vector<std::string>& only) {
    auto want = [&](const std::string& g) { return only.empty() || std::find(only.begin(), only.end(), g) != only.end(); };
    for (const auto& g : only)
        if (g != "hcap" && g != "map" && g != "cone" && g != "dist" && g != "geodesic" && g != "commutation")
            throw InputError("unknown check group '" + g + "'");
    std::vector<CheckResult> out;
    auto add = [&](std::vector<CheckResult> v) { out.insert(out.end(), v.begin(), v.end()); };
    if (want("hcap")) add(check_hcap_identities(suite));
    if (want("map")) add(check_map_bound(suite));
    if (want("cone")) {
        for (const auto& [name, chord] : suite.chords) {
            CheckResult r = check_energy_cone(chord);
            r.name += "/" + name;
            out.push_back(r);
        }
        for (double th : {std::numbers::pi / 3, std::numbers::pi / 4, std::numbers::pi / 6})
            out.push_back(check_cone_witness(th));
    }
    if (want("dist")) add(check_dist_suite(suite));
    if (want("geodesic")) add(check_geodesic_energy(suite));
    if (want("commutation")) add(check_commutation());
    return out;
}

}  // namespace loewner
