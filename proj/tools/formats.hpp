#pragma once

#include <string>
#include <variant>

#include "loewner/verify.hpp"
#include "loewner/zipper.hpp"

namespace loewner::cli {

inline constexpr int kSchemaVersion = 1;

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

// A chord file with "end": null holds an open segment based at "start".
std::variant<Chord, CurveSegment> parse_curve(const std::string& text, const std::string& origin);
Chord parse_chord(const std::string& text, const std::string& origin);
DrivingFunction parse_driving(const std::string& text, const std::string& origin);
Suite parse_suite(const std::string& text, const std::string& origin);

std::string num(double x);
std::string chord_json(const Chord& c);
std::string segment_json(const CurveSegment& s);
std::string driving_json(const DrivingFunction& d);

}  // namespace loewner::cli
