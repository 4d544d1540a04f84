#include "formats.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "loewner/errors.hpp"

namespace loewner::cli {

using nlohmann::json;

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
    if (!out) throw InputError("write failed for '" + path + "'");
}

namespace {

struct Reader {
    std::string origin;

    [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
        throw InputError(origin + ": " + path + ": " + msg);
    }

    json parse(const std::string& text) const {
        try {
            return json::parse(text);
        } catch (const json::parse_error& e) {
            throw InputError(origin + ": malformed JSON (byte " + std::to_string(e.byte) + ")");
        }
    }

    const json& field(const json& obj, const std::string& key, const std::string& path) const {
        if (!obj.is_object()) fail(path, "expected an object");
        auto it = obj.find(key);
        if (it == obj.end()) fail(path + "." + key, "missing field");
        return *it;
    }

    double number(const json& v, const std::string& path) const {
        if (!v.is_number()) fail(path, "expected a number");
        return v.get<double>();
    }

    Complex pair(const json& v, const std::string& path) const {
        if (!v.is_array() || v.size() != 2) fail(path, "expected a [re, im] pair");
        return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
    }

    std::vector<Complex> pairs(const json& v, const std::string& path) const {
        if (!v.is_array()) fail(path, "expected an array");
        std::vector<Complex> out;
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(pair(v[i], path + "[" + std::to_string(i) + "]"));
        return out;
    }

    void version(const json& root) const {
        const json& v = field(root, "schema_version", "$");
        if (!v.is_number_integer() || v.get<int>() != kSchemaVersion)
            fail("$.schema_version", "unsupported schema version (expected 1)");
    }

    std::variant<Chord, CurveSegment> curve(const json& root, const std::string& path) const {
        double start = number(field(root, "start", path), path + ".start");
        const json& end = field(root, "end", path);
        auto verts = pairs(field(root, "vertices", path), path + ".vertices");
        if (end.is_null()) {
            CurveSegment s{start, std::move(verts)};
            validate(s);
            return s;
        }
        Chord c{start, number(end, path + ".end"), std::move(verts)};
        validate(c);
        return c;
    }
};

}  // namespace

std::variant<Chord, CurveSegment> parse_curve(const std::string& text, const std::string& origin) {
    Reader r{origin};
    json root = r.parse(text);
    r.version(root);
    return r.curve(root, "$");
}

Chord parse_chord(const std::string& text, const std::string& origin) {
    auto v = parse_curve(text, origin);
    if (!std::holds_alternative<Chord>(v)) throw InputError(origin + ": expected a chord (end must not be null)");
    return std::get<Chord>(v);
}

DrivingFunction parse_driving(const std::string& text, const std::string& origin) {
    Reader r{origin};
    json root = r.parse(text);
    r.version(root);
    const json& clock = r.field(root, "clock", "$");
    if (!clock.is_string() || clock.get<std::string>() != "a_t=t") r.fail("$.clock", "expected \"a_t=t\"");
    DrivingFunction d;
    for (auto p : r.pairs(r.field(root, "samples", "$"), "$.samples")) d.samples.push_back({p.real(), p.imag()});
    validate(d);
    return d;
}

Suite parse_suite(const std::string& text, const std::string& origin) {
    Reader r{origin};
    json root = r.parse(text);
    r.version(root);
    Suite s;
    if (root.contains("seed")) {
        if (!root["seed"].is_number_unsigned()) r.fail("$.seed", "expected a non-negative integer");
        s.seed = root["seed"].get<std::uint64_t>();
    }
    const json& items = r.field(root, "chords", "$");
    if (!items.is_array()) r.fail("$.chords", "expected an array");
    for (std::size_t i = 0; i < items.size(); ++i) {
        std::string path = "$.chords[" + std::to_string(i) + "]";
        const json& name = r.field(items[i], "name", path);
        if (!name.is_string()) r.fail(path + ".name", "expected a string");
        auto c = r.curve(items[i], path);
        if (auto* chord = std::get_if<Chord>(&c))
            s.chords.push_back({name.get<std::string>(), *chord});
        else
            s.hulls.push_back({name.get<std::string>(), std::get<CurveSegment>(c)});
    }
    if (s.chords.empty() && s.hulls.empty()) r.fail("$.chords", "suite is empty");
    return s;
}

std::string num(double x) { return fmt::format("{:.17g}", x); }

namespace {

std::string pair_list(const std::vector<Complex>& pts) {
    std::string out = "[";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out += i == 0 ? "\n    [" : ",\n    [";
        out += num(pts[i].real()) + ", " + num(pts[i].imag()) + "]";
    }
    out += pts.empty() ? "]" : "\n  ]";
    return out;
}

}  // namespace

std::string chord_json(const Chord& c) {
    return fmt::format("{{\n  \"schema_version\": {},\n  \"start\": {},\n  \"end\": {},\n  \"vertices\": {}\n}}\n",
                       kSchemaVersion, num(c.start), num(c.end), pair_list(c.vertices));
}

std::string segment_json(const CurveSegment& s) {
    return fmt::format("{{\n  \"schema_version\": {},\n  \"start\": {},\n  \"end\": null,\n  \"vertices\": {}\n}}\n",
                       kSchemaVersion, num(s.base), pair_list(s.vertices));
}

std::string driving_json(const DrivingFunction& d) {
    std::vector<Complex> pts;
    for (const auto& s : d.samples) pts.emplace_back(s.t, s.lambda);
    return fmt::format("{{\n  \"schema_version\": {},\n  \"clock\": \"a_t=t\",\n  \"samples\": {}\n}}\n",
                       kSchemaVersion, pair_list(pts));
}

}  // namespace loewner::cli
