#pragma once

#include "morsecup/eigenflow.hpp"
#include "morsecup/oracle.hpp"
#include "morsecup/spectrum.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace morsecup::cli {

struct DatumSpec {
  std::string label;
  SpaceKind space = SpaceKind::Sphere;
  std::optional<std::vector<std::vector<double>>> matrix;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> spectrum_of;
  std::optional<VerticalFactor> vertical;
};

struct RunConfig {
  int n = 1;
  RingTag ring = RingTag::Z2;
  std::uint64_t seed = 0;
  std::vector<DatumSpec> data;
  std::optional<std::string> alpha_label;
  std::optional<std::string> attracting_label;
  std::optional<std::string> gamma_label;
  Tolerances tolerances;
  OracleConfig oracle;
  nlohmann::json echo;  // the document as given, with resolved seed and ring
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> ring;
};

/// Parses and validates; throws MorseError(InvalidConfig). The seed falls
/// back to MORSE_SEED, then 0, when neither the flag nor the document sets it.
RunConfig parse_config(const nlohmann::json& doc, const Overrides& overrides = {});
RunConfig load_config(const std::string& path, const Overrides& overrides = {});

/// Spectra are built in declaration order. A seeded datum is resampled until
/// it is in general position with every earlier, distinct spectrum.
std::vector<MorseDatum> resolve_data(const RunConfig& cfg);

const MorseDatum& find_datum(const std::vector<MorseDatum>& data, const std::string& label);

}  // namespace morsecup::cli
