#include "config.hpp"

#include "morsecup/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>

namespace morsecup::cli {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& what) { throw MorseError(ErrorCode::InvalidConfig, what); }

template <typename T>
T get_as(const json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    invalid(where + ": field '" + key + "' is missing or has the wrong type");
  }
}

void require_known_keys(const json& j, const std::set<std::string>& keys, const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!keys.count(key)) invalid(where + ": unknown field '" + key + "'");
}

VerticalFactor parse_vertical(const json& j, const std::string& where) {
  if (!j.is_object()) invalid(where + ": vertical must be an object");
  require_known_keys(j, {"sign", "center"}, where + ".vertical");
  VerticalFactor v{get_as<int>(j, "sign", where + ".vertical"), get_as<double>(j, "center", where + ".vertical")};
  if (v.sign != 1 && v.sign != -1) invalid(where + ": vertical sign must be +1 or -1");
  if (!(v.center > -1.0 && v.center < 1.0)) invalid(where + ": vertical center must lie in (-1, 1)");
  return v;
}

void apply_tolerances(const json& j, Tolerances& t) {
  if (!j.is_object()) invalid("tolerances must be an object");
  const std::pair<const char*, double*> fields[] = {
      {"eps_sym", &t.eps_sym},         {"eps_orth", &t.eps_orth},       {"eps_eig", &t.eps_eig},
      {"delta_gap", &t.delta_gap},     {"eps_on", &t.eps_on},           {"eps_flow", &t.eps_flow},
      {"t_max", &t.t_max},             {"eps_support", &t.eps_support}, {"eps_rank", &t.eps_rank},
      {"eps_pos", &t.eps_pos},         {"generic_margin", &t.generic_margin}};
  std::set<std::string> known;
  for (const auto& [name, target] : fields) {
    known.insert(name);
    if (j.contains(name)) {
      *target = get_as<double>(j, name, "tolerances");
      if (!(*target > 0.0)) invalid(std::string("tolerances.") + name + " must be positive");
    }
  }
  require_known_keys(j, known, "tolerances");
}

void apply_oracle(const json& j, OracleConfig& o) {
  if (!j.is_object()) invalid("oracle must be an object");
  require_known_keys(j, {"horizon", "step", "samples_per_cell", "seed", "eps_near", "eps_support",
                         "boundary_clearance", "max_base_dim"},
                     "oracle");
  if (j.contains("horizon")) o.horizon = get_as<double>(j, "horizon", "oracle");
  if (j.contains("step")) o.step = get_as<double>(j, "step", "oracle");
  if (j.contains("samples_per_cell")) o.samples_per_cell = get_as<int>(j, "samples_per_cell", "oracle");
  if (j.contains("seed")) o.seed = get_as<std::uint64_t>(j, "seed", "oracle");
  if (j.contains("eps_near")) o.eps_near = get_as<double>(j, "eps_near", "oracle");
  if (j.contains("eps_support")) o.eps_support = get_as<double>(j, "eps_support", "oracle");
  if (j.contains("boundary_clearance")) o.boundary_clearance = get_as<double>(j, "boundary_clearance", "oracle");
  if (j.contains("max_base_dim")) o.max_base_dim = get_as<int>(j, "max_base_dim", "oracle");
  validate(o);
}

std::optional<std::uint64_t> env_seed() {
  const char* text = std::getenv("MORSE_SEED");
  if (!text || !*text) return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text, &end, 10);
  if (*end != '\0') invalid("MORSE_SEED is not an unsigned integer");
  return v;
}

}  // namespace

RunConfig parse_config(const json& doc, const Overrides& overrides) {
  if (!doc.is_object()) invalid("config must be a JSON object");
  require_known_keys(doc, {"n", "ring", "space", "seed", "data", "alpha_label", "attracting_label", "gamma_label",
                           "tolerances", "oracle"},
                     "config");
  RunConfig cfg;
  cfg.n = get_as<int>(doc, "n", "config");
  if (cfg.n < 1) invalid("n must be at least 1");

  std::string ring = overrides.ring.value_or(doc.value("ring", std::string("z2")));
  try {
    cfg.ring = parse_ring(ring);
  } catch (const MorseError&) {
    invalid("ring must be z2 or z");
  }
  if (overrides.seed)
    cfg.seed = *overrides.seed;
  else if (doc.contains("seed"))
    cfg.seed = get_as<std::uint64_t>(doc, "seed", "config");
  else
    cfg.seed = env_seed().value_or(0);

  SpaceKind default_space = SpaceKind::Sphere;
  if (doc.contains("space")) default_space = parse_space(get_as<std::string>(doc, "space", "config"));

  if (!doc.contains("data") || !doc.at("data").is_array() || doc.at("data").empty())
    invalid("config needs a nonempty 'data' array");
  std::set<std::string> labels;
  for (std::size_t i = 0; i < doc.at("data").size(); ++i) {
    const json& d = doc.at("data")[i];
    const std::string where = "data[" + std::to_string(i) + "]";
    if (!d.is_object()) invalid(where + " must be an object");
    require_known_keys(d, {"label", "space", "matrix", "seed", "spectrum_of", "vertical"}, where);
    DatumSpec spec;
    spec.label = get_as<std::string>(d, "label", where);
    if (spec.label.empty() || !labels.insert(spec.label).second) invalid(where + ": labels must be nonempty and unique");
    spec.space = d.contains("space") ? parse_space(get_as<std::string>(d, "space", where)) : default_space;
    const int sources = int(d.contains("matrix")) + int(d.contains("seed")) + int(d.contains("spectrum_of"));
    if (sources > 1) invalid(where + ": give at most one of matrix, seed, spectrum_of");
    if (d.contains("matrix")) {
      spec.matrix = get_as<std::vector<std::vector<double>>>(d, "matrix", where);
      if (spec.matrix->size() != static_cast<std::size_t>(cfg.n + 1)) invalid(where + ": matrix must be (n+1)x(n+1)");
      for (const auto& row : *spec.matrix)
        if (row.size() != static_cast<std::size_t>(cfg.n + 1)) invalid(where + ": matrix must be (n+1)x(n+1)");
    }
    if (d.contains("seed")) spec.seed = get_as<std::uint64_t>(d, "seed", where);
    if (d.contains("spectrum_of")) {
      spec.spectrum_of = get_as<std::string>(d, "spectrum_of", where);
      if (!labels.count(*spec.spectrum_of) || *spec.spectrum_of == spec.label)
        invalid(where + ": spectrum_of must name an earlier datum");
    }
    if (d.contains("vertical")) spec.vertical = parse_vertical(d.at("vertical"), where);
    cfg.data.push_back(std::move(spec));
  }

  for (auto [key, target] : {std::pair{"alpha_label", &cfg.alpha_label},
                             std::pair{"attracting_label", &cfg.attracting_label},
                             std::pair{"gamma_label", &cfg.gamma_label}}) {
    if (!doc.contains(key)) continue;
    *target = get_as<std::string>(doc, key, "config");
    if (!labels.count(**target)) invalid(std::string(key) + " '" + **target + "' does not name a datum");
  }
  if (cfg.ring == RingTag::Z)
    for (const auto& spec : cfg.data)
      if (spec.space != SpaceKind::Sphere) invalid("ring z needs sphere data ('" + spec.label + "' is projective)");

  if (doc.contains("tolerances")) apply_tolerances(doc.at("tolerances"), cfg.tolerances);
  if (doc.contains("oracle")) apply_oracle(doc.at("oracle"), cfg.oracle);

  cfg.echo = doc;
  cfg.echo["seed"] = cfg.seed;
  cfg.echo["ring"] = std::string(to_string(cfg.ring));
  return cfg;
}

RunConfig load_config(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw MorseError(ErrorCode::Io, "cannot read config '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    invalid(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc, overrides);
}

std::vector<MorseDatum> resolve_data(const RunConfig& cfg) {
  std::vector<MorseDatum> out;
  std::vector<SymmetricSpectrum> distinct;
  for (std::size_t i = 0; i < cfg.data.size(); ++i) {
    const DatumSpec& spec = cfg.data[i];
    SymmetricSpectrum spectrum;
    if (spec.matrix) {
      Eigen::MatrixXd m(cfg.n + 1, cfg.n + 1);
      for (int r = 0; r <= cfg.n; ++r)
        for (int c = 0; c <= cfg.n; ++c) m(r, c) = (*spec.matrix)[r][c];
      spectrum = eigendecompose(m, cfg.tolerances);
    } else if (spec.spectrum_of) {
      spectrum = find_datum(out, *spec.spectrum_of).spectrum;
    } else {
      const std::uint64_t seed = derive_seed(cfg.seed, spec.seed.value_or(i));
      spectrum = distinct.empty() ? random_spectrum(cfg.n, seed, cfg.tolerances)
                                  : random_generic_partner(distinct, seed, cfg.tolerances);
    }
    if (std::none_of(distinct.begin(), distinct.end(), [&](const auto& s) { return same_matrix(s, spectrum); }))
      distinct.push_back(spectrum);
    out.push_back(make_datum(spec.space, std::move(spectrum), spec.vertical, spec.label));
  }
  return out;
}

const MorseDatum& find_datum(const std::vector<MorseDatum>& data, const std::string& label) {
  for (const auto& d : data)
    if (d.label == label) return d;
  invalid("no datum labelled '" + label + "'");
}

}  // namespace morsecup::cli
