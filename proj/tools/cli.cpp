#include "cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <future>
#include <map>
#include <sstream>

#include "formats.hpp"
#include "loewner/energy.hpp"
#include "loewner/errors.hpp"
#include "loewner/generators.hpp"
#include "loewner/surgery.hpp"
#include "loewner/tracer.hpp"
#include "loewner/verify.hpp"

namespace loewner::cli {

namespace {

struct Profile {
    double close_fraction;
    double ledger_slack;
};

Profile profile_named(const std::string& name) {
    if (name == "strict") return {1e-4, 1e-4};
    if (name == "loose") return {1e-2, 1e-2};
    return {1e-3, 1e-3};
}

struct Globals {
    std::uint64_t seed = 1;
    std::string out;
    int threads = 1;
    std::string profile = "default";
};

ElementKind kind_named(const std::string& s) { return s == "arc" ? ElementKind::arc : ElementKind::vertical; }

void emit(const Globals& g, std::ostream& out, const std::string& text) {
    if (g.out.empty())
        out << text;
    else
        write_text(g.out, text);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

int cmd_drive(const Globals& g, const std::string& path, bool chordal, const std::string& elements, std::ostream& out,
              std::ostream& err) {
    Profile p = profile_named(g.profile);
    auto curve = parse_curve(read_text(path), path);
    ZipOptions zo{kind_named(elements), p.close_fraction};
    ZipperResult z = std::holds_alternative<Chord>(curve) ? compute_driving(std::get<Chord>(curve), zo)
                                                          : compute_driving(std::get<CurveSegment>(curve), zo);
    emit(g, out, driving_json(z.driving));
    std::ostream& summary = g.out.empty() ? err : out;
    summary << "total_t " << num(z.total_t) << "\n";
    summary << "total_hcap " << num(z.total_hcap) << "\n";
    summary << "samples " << z.driving.samples.size() << "\n";
    if (std::holds_alternative<Chord>(curve)) {
        summary << "closing_gap " << num(z.closing_gap) << (z.closed ? "" : " (exceeds closing tolerance)") << "\n";
        summary << "tail_hcap_bound " << num(z.tail_hcap_bound) << "\n";
        if (chordal) {
            EnergyOptions eo;
            eo.kind = zo.kind;
            summary << "energy " << num(chord_energy(std::get<Chord>(curve), eo).energy) << "\n";
        }
    } else if (chordal) {
        throw InputError("--chordal needs a chord with two endpoints");
    }
    if (z.low_resolution) summary << "warning: fewer than 3 vertices (low resolution)\n";
    return 0;
}

int cmd_trace(const Globals& g, const std::string& path, int steps, double max_step, std::ostream& out,
              std::ostream& err) {
    DrivingFunction d = parse_driving(read_text(path), path);
    TraceResult tr = trace_curve(d, {steps, max_step});
    emit(g, out, segment_json(tr.curve));
    ZipperResult z = zip_points(tr.curve.base, tr.curve.vertices, ElementKind::vertical);
    double sup = 0.0;
    for (std::size_t k = 0; k < tr.times.size(); ++k)
        sup = std::max(sup, std::abs(z.driving.samples[k + 1].lambda - d.at(tr.times[k])));
    std::ostream& summary = g.out.empty() ? err : out;
    summary << "vertices " << tr.curve.vertices.size() << "\n";
    summary << "total_t " << num(d.total_t()) << "\n";
    Complex tip = tr.curve.vertices.back();
    summary << "tip " << num(tip.real()) << " " << num(tip.imag()) << "\n";
    summary << "roundtrip_sup_error " << num(sup) << "\n";
    return 0;
}

int cmd_energy(const Globals& g, const std::string& path, const std::string& elements, double stop,
               std::ostream& out) {
    Chord c = parse_chord(read_text(path), path);
    EnergyOptions eo{stop, kind_named(elements)};
    EnergyReport r = chord_energy(c, eo);
    std::string text = "energy " + num(r.energy) + "\nt_used " + num(r.t_used) + "\ntail_hcap_bound " +
                       num(r.tail_hcap_bound) + "\nresolution " + std::to_string(r.resolution) + "\n";
    emit(g, out, text);
    return 0;
}

struct KRun {
    int k = 0;
    ReversalLedger ledger;
    std::optional<Chord> reversed;
    std::string error;
    int code = 0;
};

KRun run_k(const Chord& c, int k, const ReversalOptions& opts) {
    KRun r;
    r.k = k;
    try {
        ReversalResult res = reverse_chord(c, k, opts);
        r.ledger = std::move(res.ledger);
        r.reversed = std::move(res.reversed);
    } catch (const ReversalError& e) {
        r.ledger = e.ledger;
        r.error = e.what();
        r.code = 3;
    } catch (const NumericalError& e) {
        r.error = e.what();
        r.code = 3;
    }
    return r;
}

int cmd_reverse(const Globals& g, const std::string& path, const std::vector<int>& ks, int n_samples,
                std::ostream& out, std::ostream& err) {
    Profile p = profile_named(g.profile);
    Chord c = parse_chord(read_text(path), path);
    for (int k : ks)
        if (k < 1) throw InputError("--k values must be positive");
    if (n_samples < 3) throw InputError("--n-samples must be at least 3");
    ReversalOptions opts;
    opts.geodesic.n_samples = n_samples;
    opts.close_fraction = p.close_fraction;

    std::vector<KRun> runs(ks.size());
    std::size_t workers = static_cast<std::size_t>(std::max(1, g.threads));
    for (std::size_t i = 0; i < ks.size(); i += workers) {
        std::vector<std::future<KRun>> batch;
        for (std::size_t j = i; j < std::min(ks.size(), i + workers); ++j)
            batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, run_k, std::cref(c),
                                       ks[j], std::cref(opts)));
        for (std::size_t j = 0; j < batch.size(); ++j) runs[i + j] = batch[j].get();
    }

    std::filesystem::path dir = g.out.empty() ? std::filesystem::path(".") : std::filesystem::path(g.out);
    std::filesystem::create_directories(dir);
    double e_fwd = chord_energy(c).energy;
    Chord ref = reversed(c);
    std::string ledger = "k,step,t_cursor,x,y,geodesic_hcap,joint_hcap,energy_prefix,energy_eta,energy_total,cara_distance\n";
    std::string summary = "k,energy_forward,energy_reversed,defect,cara_distance_final\n";
    out << fmt::format("{:>6} {:>22} {:>22} {:>22} {:>22}\n", "k", "energy_forward", "energy_reversed", "defect",
                       "cara_distance_final");
    int code = 0;
    for (const auto& r : runs) {
        for (const auto& row : r.ledger.rows)
            ledger += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", r.k, row.step, num(row.t_cursor), num(row.x),
                                  num(row.y), num(row.geodesic_hcap), num(row.joint_hcap), num(row.energy_prefix),
                                  num(row.energy_eta), num(row.energy_total), num(row.cara_distance));
        if (!r.reversed) {
            err << "k=" << r.k << ": " << r.error << "\n";
            summary += fmt::format("{},{},nan,nan,nan\n", r.k, num(e_fwd));
            code = std::max(code, r.code);
            continue;
        }
        write_text((dir / fmt::format("reversed_k{}.json", r.k)).string(), chord_json(*r.reversed));
        double e_rev = chord_energy(*r.reversed).energy;
        double defect = std::abs(e_rev - e_fwd);
        double dist = map_distance(*r.reversed, ref);
        summary += fmt::format("{},{},{},{},{}\n", r.k, num(e_fwd), num(e_rev), num(defect), num(dist));
        out << fmt::format("{:>6} {:>22} {:>22} {:>22} {:>22}\n", r.k, num(e_fwd), num(e_rev), num(defect), num(dist));
        double last = r.ledger.initial_energy;
        for (const auto& row : r.ledger.rows) {
            if (row.energy_total > last + p.ledger_slack)
                err << "warning: k=" << r.k << " step " << row.step << " ledger energy rose by "
                    << num(row.energy_total - last) << "\n";
            last = row.energy_total;
        }
    }
    write_text((dir / "ledger.csv").string(), ledger);
    write_text((dir / "summary.csv").string(), summary);
    return code;
}

int cmd_verify(const Globals& g, const std::string& suite_arg, const std::vector<std::string>& only,
               std::ostream& out) {
    Suite suite = suite_arg == "default" ? default_suite(g.seed) : parse_suite(read_text(suite_arg), suite_arg);
    if (suite_arg != "default") suite.seed = g.seed;
    if (suite.hulls.empty()) suite.hulls = default_suite(g.seed).hulls;
    std::vector<CheckResult> res = run_checks(suite, only);
    int failures = 0;
    std::string csv = "name,passed,observed,bound,witness\n";
    for (const auto& r : res) {
        if (!r.passed) ++failures;
        out << fmt::format("{} {} observed={} bound={}\n", r.passed ? "PASS" : "FAIL", r.name, num(r.observed),
                           num(r.bound));
        csv += fmt::format("{},{},{},{},{}\n", csv_field(r.name), r.passed ? "true" : "false", num(r.observed),
                           num(r.bound), csv_field(r.witness));
    }
    out << fmt::format("{} checks, {} failures\n", res.size(), failures);
    if (!g.out.empty()) write_text(g.out, csv);
    return failures == 0 ? 0 : 1;
}

int cmd_gen(const Globals& g, const std::string& kind, double a, double b, int n, const std::string& formula,
            double total_t, double offset, double fraction, const std::string& name, std::ostream& out) {
    Profile p = profile_named(g.profile);
    Chord c;
    if (kind == "geodesic") {
        c = geodesic_chord(a, b, n);
    } else if (kind == "from-driving") {
        c = chord_from_driving(parse_formula(formula), {total_t, n, fraction, offset, p.close_fraction});
    } else if (kind == "named") {
        c = named_chord(name);
    } else {
        throw InputError("unknown generator kind '" + kind + "'");
    }
    emit(g, out, chord_json(c));
    return 0;
}

std::vector<Complex> resample_polyline(const std::vector<Complex>& pts, int n, bool keep_last) {
    std::vector<double> acc{0.0};
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) acc.push_back(acc.back() + std::abs(pts[i + 1] - pts[i]));
    double total = acc.back();
    std::vector<Complex> out;
    std::size_t seg = 0;
    for (int j = 1; j <= n; ++j) {
        double s = keep_last ? total * j / n : total * j / (n + 1);
        while (seg + 2 < acc.size() && acc[seg + 1] < s) ++seg;
        double len = acc[seg + 1] - acc[seg];
        double f = len > 0.0 ? (s - acc[seg]) / len : 0.0;
        out.push_back(pts[seg] + f * (pts[seg + 1] - pts[seg]));
    }
    if (keep_last) out.back() = pts.back();
    return out;
}

int cmd_resample(const Globals& g, const std::string& path, int n, std::ostream& out) {
    if (n < 1) throw InputError("--n must be positive");
    auto curve = parse_curve(read_text(path), path);
    if (auto* c = std::get_if<Chord>(&curve)) {
        std::vector<Complex> pts{Complex{c->start, 0.0}};
        pts.insert(pts.end(), c->vertices.begin(), c->vertices.end());
        pts.emplace_back(c->end, 0.0);
        Chord r{c->start, c->end, resample_polyline(pts, n, false)};
        validate(r);
        emit(g, out, chord_json(r));
    } else {
        const auto& s = std::get<CurveSegment>(curve);
        std::vector<Complex> pts{Complex{s.base, 0.0}};
        pts.insert(pts.end(), s.vertices.begin(), s.vertices.end());
        CurveSegment r{s.base, resample_polyline(pts, n, true)};
        validate(r);
        emit(g, out, segment_json(r));
    }
    return 0;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Loewner chord toolkit: driving functions, capacities, energies and chord reversal"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Random seed for suites and generators");
    app.add_option("--out", g.out, "Output file (directory for reverse)");
    app.add_option("--threads", g.threads, "Worker threads for independent runs")->check(CLI::PositiveNumber);
    app.add_option("--tolerance-profile", g.profile, "Closing and ledger tolerances")
        ->check(CLI::IsMember({"default", "strict", "loose"}));

    std::string input, elements = "vertical", suite = "default", kind, formula = "sin:1,4", name = "g1";
    bool chordal = false;
    int steps = 4, n = 200, n_samples = 16;
    double max_step = 0.0, stop = 1e6, a = -1.0, b = 1.0, total_t = 1.0, offset = 1.0, fraction = 0.25;
    std::vector<int> ks{4, 16, 64};
    std::vector<std::string> only;

    auto* drive = app.add_subcommand("drive", "Driving function of a chord or open segment");
    drive->add_option("input", input, "Chord file")->required();
    drive->add_flag("--chordal", chordal, "Also report the chordal energy");
    drive->add_option("--elements", elements)->check(CLI::IsMember({"vertical", "arc"}));

    auto* trace = app.add_subcommand("trace", "Curve generated by a driving function");
    trace->add_option("input", input, "Driving file")->required();
    trace->add_option("--steps-per-sample", steps)->check(CLI::PositiveNumber);
    trace->add_option("--max-step-t", max_step, "Largest sub-step (default 1e-3 of the total time)");

    auto* energy = app.add_subcommand("energy", "Loewner energy of a chord");
    energy->add_option("input", input, "Chord file")->required();
    energy->add_option("--elements", elements)->check(CLI::IsMember({"vertical", "arc"}));
    energy->add_option("--stop-modulus", stop)->check(CLI::PositiveNumber);

    auto* reverse = app.add_subcommand("reverse", "Reverse a chord by geodesic surgery in k capacity steps");
    reverse->add_option("input", input, "Chord file")->required();
    reverse->add_option("--k", ks, "Comma-separated step counts")->delimiter(',');
    reverse->add_option("--n-samples", n_samples, "Geodesic samples per step");

    auto* verify = app.add_subcommand("verify", "Run the property checks");
    verify->add_option("--suite", suite, "default or a suite file");
    verify->add_option("--only", only, "Check groups: hcap,map,cone,dist,geodesic,commutation")->delimiter(',');

    auto* gen = app.add_subcommand("gen", "Generate a test chord");
    gen->add_option("--kind", kind)->required()->check(CLI::IsMember({"geodesic", "from-driving", "named"}));
    gen->add_option("--a", a, "Geodesic start");
    gen->add_option("--b", b, "Geodesic end");
    gen->add_option("--n", n, "Number of vertices");
    gen->add_option("--formula", formula, "sin:amp,freq or poly:c0,c1,...");
    gen->add_option("--T", total_t, "Driving time span");
    gen->add_option("--offset", offset, "Image offset of the closing point");
    gen->add_option("--geodesic-fraction", fraction, "Share of vertices on the closing geodesic");
    gen->add_option("--name", name, "g1, p1, geodesic, g1-mirror or p1-mirror");

    auto* resample = app.add_subcommand("resample", "Resample a polyline uniformly in arc length");
    resample->add_option("input", input, "Chord file")->required();
    resample->add_option("--n", n, "Number of vertices")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*drive) return cmd_drive(g, input, chordal, elements, out, err);
        if (*trace) return cmd_trace(g, input, steps, max_step, out, err);
        if (*energy) return cmd_energy(g, input, elements, stop, out);
        if (*reverse) return cmd_reverse(g, input, ks, n_samples, out, err);
        if (*verify) return cmd_verify(g, suite, only, out);
        if (*gen) {
            if (app.get_option("--seed")->count() == 0) throw InputError("gen requires --seed");
            if (kind == "from-driving" && gen->get_option("--n")->count() == 0) n = 800;
            return cmd_gen(g, kind, a, b, n, formula, total_t, offset, fraction, name, out);
        }
        if (*resample) return cmd_resample(g, input, n, out);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace loewner::cli
