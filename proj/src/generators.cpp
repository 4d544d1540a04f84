#include "loewner/generators.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "loewner/errors.hpp"
#include "loewner/surgery.hpp"
#include "loewner/tracer.hpp"

namespace loewner {

Chord geodesic_chord(double a, double b, int n) {
    if (n < 1) throw InputError("geodesic needs at least one vertex");
    if (a == b) throw InputError("geodesic endpoints coincide");
    return {a, b, hyperbolic_geodesic({}, PrimeEnd::at(a), PrimeEnd::at(b), {std::max(n, 3), 0})};
}

DrivingFunction sample_driving(const std::function<double(double)>& lambda, double total_t, int steps) {
    if (!(total_t > 0.0) || steps < 1) throw InputError("driving sampling needs T > 0 and steps >= 1");
    DrivingFunction d;
    for (int i = 0; i <= steps; ++i) {
        double t = total_t * i / steps;
        d.samples.push_back({t, lambda(t)});
    }
    return d;
}

Chord chord_from_driving(const std::function<double(double)>& lambda, const DrivenChordOptions& opts) {
    int ng = static_cast<int>(opts.n * opts.geodesic_fraction);
    int nt = opts.n - ng;
    if (nt < 1 || ng < 3) throw InputError("from-driving: n too small for the geodesic fraction");
    if (!(opts.offset > 0.0)) throw InputError("from-driving: offset must be positive");
    TraceResult tr = trace_curve(sample_driving(lambda, opts.total_t, nt), {1, opts.total_t});
    const auto& verts = tr.curve.vertices;
    ZipperResult z = zip_points(tr.curve.base, verts, ElementKind::arc);
    const auto& els = z.stack.elements;
    double right = apply_elements(els, Complex{els.front().base_image(Side::right), 0.0}, 1, els.size()).real();
    double target_image = right + opts.offset;
    double y = invert_elements(els, Complex{target_image, 0.0}).real();
    double tol = opts.close_fraction * std::abs(y - tr.curve.base);
    std::vector<Complex> geo = closing_geodesic(z.stack, PrimeEnd::last_tip(), PrimeEnd::image(target_image), ng,
                                                Complex{y, 0.0}, tol);
    Chord c{tr.curve.base, y, verts};
    c.vertices.insert(c.vertices.end(), geo.begin(), geo.end());
    return c;
}

std::function<double(double)> parse_formula(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw InputError("formula must look like kind:params, got '" + spec + "'");
    std::string kind = spec.substr(0, colon);
    std::vector<double> p;
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            p.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw InputError("bad number '" + item + "' in formula");
        }
    }
    if (kind == "sin") {
        if (p.size() != 2) throw InputError("sin formula takes amplitude,frequency");
        double a = p[0], w = p[1];
        return [a, w](double t) { return a * std::sin(w * t); };
    }
    if (kind == "poly") {
        if (p.empty()) throw InputError("poly formula needs coefficients");
        return [p](double t) {
            double acc = 0.0;
            for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
            return acc;
        };
    }
    throw InputError("unknown formula kind '" + kind + "'");
}

Chord named_chord(const std::string& name) {
    if (name == "g1") return chord_from_driving(parse_formula("sin:1,4"));
    if (name == "p1") return chord_from_driving(parse_formula("poly:0,0,2,-1"));
    if (name == "geodesic") return geodesic_chord(-1.0, 1.0, 200);
    if (name == "g1-mirror") return mirrored(named_chord("g1"));
    if (name == "p1-mirror") return mirrored(named_chord("p1"));
    throw InputError("unknown named chord '" + name + "'");
}

}  // namespace loewner
