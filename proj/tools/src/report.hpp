#pragma once

#include "morsecup/complex.hpp"
#include "morsecup/cup.hpp"
#include "morsecup/cuplength.hpp"
#include "morsecup/eigenflow.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace morsecup::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct Check {
  std::string module;
  std::string name;
  bool ok = true;
  nlohmann::json detail = nlohmann::json::object();
};

struct Report {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json complexes = nlohmann::json::array();
  nlohmann::json cup_tables = nlohmann::json::array();
  nlohmann::json cuplength = nlohmann::json::object();
  std::vector<Check> checks;
  std::map<std::string, double> timings_ms;

  bool passed() const;
  /// Everything except "timings" is a deterministic function of the config.
  nlohmann::json to_json() const;
};

nlohmann::json integer_json(const Integer& v);
nlohmann::json complex_json(const MorseDatum& d, const GradedComplex& c);
nlohmann::json cup_table_json(const CupStructure& w);
nlohmann::json cup_length_json(const CupLengthReport& r);

enum class Format { Json, Text };
Format parse_format(const std::string& text);

std::string render_text(const Report& report);
/// Writes to `path`, or stdout when empty. Throws MorseError(Io).
void emit_report(const Report& report, Format format, const std::string& path);

}  // namespace morsecup::cli
