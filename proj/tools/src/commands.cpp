#include "commands.hpp"

#include "morsecup/cup.hpp"
#include "morsecup/cuplength.hpp"
#include "morsecup/errors.hpp"
#include "morsecup/intersections.hpp"
#include "morsecup/oracle.hpp"

#include <chrono>
#include <random>

namespace morsecup::cli {

using nlohmann::json;

ExitCode exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig:
    case ErrorCode::NonSymmetric:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::UnsupportedRing:
    case ErrorCode::MismatchedNeighborhoods:
    case ErrorCode::NotAttracting:
    case ErrorCode::ShapeMismatch:
      return ExitCode::InvalidInput;
    case ErrorCode::DegenerateSpectrum:
    case ErrorCode::GenericityFailure:
    case ErrorCode::BudgetExhausted:
    case ErrorCode::TransversalityFailure:
    case ErrorCode::IsolationFailure:
      return ExitCode::Genericity;
    case ErrorCode::Io:
      return ExitCode::Io;
    default:
      return ExitCode::Invariant;
  }
}

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(Report& report) : report_(report) {}
  template <typename F>
  auto operator()(const std::string& stage, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    struct Record {
      Report& r;
      std::string stage;
      std::chrono::steady_clock::time_point t0;
      ~Record() {
        r.timings_ms[stage] += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      }
    } record{report_, stage, t0};
    return body();
  }

 private:
  Report& report_;
};

json key_json(const CupKey& k) { return {std::get<0>(k), std::get<1>(k), std::get<2>(k)}; }

void add_check(Report& report, std::string module, std::string name, bool ok, json detail = json::object()) {
  report.checks.push_back({std::move(module), std::move(name), ok, std::move(detail)});
}

bool oracle_fits(const MorseDatum& d, const OracleConfig& cfg) { return d.spectrum.dim() <= cfg.max_base_dim; }

json discrepancies_json(const OracleCounts& counts) {
  json out = json::array();
  for (const auto& d : counts.discrepancies)
    out.push_back({{"what", d.what}, {"generators", d.generators}, {"oracle", d.oracle}, {"engine", d.engine}});
  return out;
}

std::string pair_name(const CupStructure& w) {
  return "(" + w.gamma_label() + "," + w.alpha_label() + "," + w.beta_label() + ")";
}

// Leibniz for one table, commutativity against its swapped partner and, for
// small n, the brute-force triple counts.
void check_table_pair(Report& report, const RunConfig& cfg, const CupStructure& w_ab, const CupStructure& w_ba,
                      const MorseDatum& gamma, const MorseDatum& a, const MorseDatum& b, const GradedComplex& c_gamma,
                      const GradedComplex& c_a, const GradedComplex& c_b) {
  Stopwatch time(report);
  for (const auto* w : {&w_ab, &w_ba}) {
    const bool swapped = w == &w_ba;
    const auto leibniz =
        time("leibniz", [&] { return leibniz_check(*w, c_gamma, swapped ? c_b : c_a, swapped ? c_a : c_b); });
    json detail = json::object();
    if (!leibniz.ok) {
      json residual = json::array();
      for (const auto& v : leibniz.residual.coefficients) residual.push_back(integer_json(v));
      detail = {{"x", leibniz.x}, {"y", leibniz.y}, {"degree", leibniz.residual.degree}, {"residual", residual}};
    }
    add_check(report, "cup", "leibniz " + pair_name(*w), leibniz.ok, detail);
  }
  const auto comm = time("commutativity", [&] { return commutativity_check(w_ab, w_ba); });
  add_check(report, "cup", "commutativity " + pair_name(w_ab), comm.ok,
            comm.counterexample ? json{{"z_x_y", key_json(*comm.counterexample)}} : json::object());

  if (oracle_fits(gamma, cfg.oracle) && oracle_fits(a, cfg.oracle) && oracle_fits(b, cfg.oracle)) {
    const auto counts = time("oracle_triples", [&] {
      return compare_triples(
          gamma, a, b, [&](const std::string& z, const std::string& x, const std::string& y) { return w_ab.get(z, x, y); },
          cfg.oracle);
    });
    add_check(report, "oracle", "triples " + pair_name(w_ab), counts.discrepancies.empty(),
              {{"compared", counts.triples.size()}, {"discrepancies", discrepancies_json(counts)}});
  }
}

const MorseDatum& require_label(const std::vector<MorseDatum>& data, const std::optional<std::string>& label,
                                const char* key) {
  if (!label) throw MorseError(ErrorCode::InvalidConfig, std::string("cuplength needs '") + key + "'");
  return find_datum(data, *label);
}

}  // namespace

Report cmd_complex(const RunConfig& cfg) {
  Report report;
  report.command = "complex";
  report.config = cfg.echo;
  Stopwatch time(report);
  const auto data = time("resolve", [&] { return resolve_data(cfg); });
  for (const auto& d : data) {
    const auto c = time("complex", [&] { return build_complex(d, cfg.ring, cfg.tolerances); });
    const auto check = validate_differential(c);
    add_check(report, "complex", "d_squared " + d.label, check.ok, check.ok ? json::object() : json{{"degree", check.degree}});
    if (check.ok) report.complexes.push_back(time("cohomology", [&] { return complex_json(d, c); }));
  }
  return report;
}

Report cmd_cuplength(const RunConfig& cfg) {
  Report report;
  report.command = "cuplength";
  report.config = cfg.echo;
  Stopwatch time(report);
  const auto data = time("resolve", [&] { return resolve_data(cfg); });
  const MorseDatum& alpha = require_label(data, cfg.alpha_label, "alpha_label");
  const MorseDatum& attracting = require_label(data, cfg.attracting_label, "attracting_label");
  const MorseDatum* gamma = cfg.gamma_label ? &find_datum(data, *cfg.gamma_label) : nullptr;

  for (const MorseDatum* d : {&alpha, &attracting, gamma}) {
    if (!d) continue;
    report.complexes.push_back(complex_json(*d, build_complex(*d, RingTag::Z2, cfg.tolerances)));
  }

  const auto relative =
      time("relative", [&] { return relative_cup_length(alpha, attracting, cfg.tolerances, cfg.oracle); });
  report.cuplength["relative"] = cup_length_json(relative);
  report.cup_tables.push_back(
      cup_table_json(chain_cup(alpha, alpha, attracting, RingTag::Z2, cfg.tolerances, cfg.oracle)));

  BoundReport bound;
  bound.cup_length = relative.value;
  bound.critical_points = static_cast<int>(critical_points(alpha).size());
  bound.satisfied = bound.critical_points >= bound.cup_length;
  report.cuplength["bound"] = {{"cup_length", bound.cup_length},
                               {"critical_points", bound.critical_points},
                               {"satisfied", bound.satisfied},
                               {"equality", bound.critical_points == bound.cup_length}};
  add_check(report, "cuplength", "critical_point_bound", bound.satisfied, report.cuplength["bound"]);
  add_check(report, "cuplength", "structural_bound relative", relative.structural_bound_ok,
            {{"value", relative.value}, {"structural_bound", relative.structural_bound}});

  if (gamma) {
    const auto absolute =
        time("absolute", [&] { return absolute_cup_length(alpha, *gamma, cfg.tolerances, cfg.oracle); });
    report.cuplength["absolute"] = cup_length_json(absolute);
    report.cup_tables.push_back(
        cup_table_json(chain_cup(alpha, alpha, *gamma, RingTag::Z2, cfg.tolerances, cfg.oracle)));
    const bool holds = absolute.value <= relative.value;
    report.cuplength["remark"] = {{"relative", relative.value}, {"absolute", absolute.value}, {"holds", holds}};
    add_check(report, "cuplength", "absolute_le_relative", holds, report.cuplength["remark"]);
    add_check(report, "cuplength", "structural_bound absolute", absolute.structural_bound_ok,
              {{"value", absolute.value}, {"structural_bound", absolute.structural_bound}});
  }
  return report;
}

Report cmd_verify(const RunConfig& cfg, const VerifyOptions& options) {
  Report report;
  report.command = "verify";
  report.config = cfg.echo;
  Stopwatch time(report);
  const auto data = time("resolve", [&] { return resolve_data(cfg); });

  std::map<std::string, GradedComplex> complexes;
  for (const auto& d : data) {
    const auto c = time("complex", [&] { return build_complex(d, cfg.ring, cfg.tolerances); });
    const auto check = validate_differential(c);
    add_check(report, "complex", "d_squared " + d.label, check.ok, check.ok ? json::object() : json{{"degree", check.degree}});
    if (!check.ok) continue;
    report.complexes.push_back(complex_json(d, c));
    if (oracle_fits(d, cfg.oracle)) {
      const auto counts = time("oracle_connections", [&] { return compare_connections(d, c, cfg.oracle); });
      add_check(report, "oracle", "connections " + d.label, counts.discrepancies.empty(),
                {{"compared", counts.connections.size()}, {"discrepancies", discrepancies_json(counts)}});
    }
    complexes.emplace(d.label, c);
  }

  const MorseDatum& alpha = cfg.alpha_label ? find_datum(data, *cfg.alpha_label) : data.front();
  const MorseDatum* partner = cfg.attracting_label ? &find_datum(data, *cfg.attracting_label) : nullptr;
  if (!partner)
    for (const auto& d : data)
      if (d.label != alpha.label && (!cfg.gamma_label || d.label != *cfg.gamma_label)) {
        partner = &d;
        break;
      }
  const MorseDatum* gamma = cfg.gamma_label ? &find_datum(data, *cfg.gamma_label) : nullptr;

  const bool have_complexes = complexes.count(alpha.label) && (!partner || complexes.count(partner->label)) &&
                              (!gamma || complexes.count(gamma->label));
  if (partner && have_complexes) {
    bool mutated = false;
    for (const MorseDatum* b : {partner, gamma}) {
      if (!b) continue;
      const auto& c_a = complexes.at(alpha.label);
      const auto& c_b = complexes.at(b->label);
      auto w_ab = time("cup", [&] { return chain_cup(alpha, alpha, *b, cfg.ring, cfg.tolerances, cfg.oracle); });
      const auto w_ba = time("cup", [&] { return chain_cup(alpha, *b, alpha, cfg.ring, cfg.tolerances, cfg.oracle); });
      if (options.mutate_cup_entry && !mutated) {
        auto [changed, key] = mutate_first_entry(w_ab);
        w_ab = std::move(changed);
        mutated = true;
        report.cuplength["mutated_entry"] = key_json(key);
      }
      report.cup_tables.push_back(cup_table_json(w_ab));
      report.cup_tables.push_back(cup_table_json(w_ba));
      check_table_pair(report, cfg, w_ab, w_ba, alpha, alpha, *b, c_a, c_a, c_b);
    }

    if (is_attracting_type(*partner)) {
      const auto relative =
          time("relative", [&] { return relative_cup_length(alpha, *partner, cfg.tolerances, cfg.oracle); });
      report.cuplength["relative"] = cup_length_json(relative);
      add_check(report, "cuplength", "critical_point_bound",
                static_cast<int>(critical_points(alpha).size()) >= relative.value,
                {{"cup_length", relative.value}, {"critical_points", critical_points(alpha).size()}});
      add_check(report, "cuplength", "structural_bound relative", relative.structural_bound_ok,
                {{"value", relative.value}, {"structural_bound", relative.structural_bound}});
      if (gamma) {
        const auto absolute =
            time("absolute", [&] { return absolute_cup_length(alpha, *gamma, cfg.tolerances, cfg.oracle); });
        report.cuplength["absolute"] = cup_length_json(absolute);
        add_check(report, "cuplength", "absolute_le_relative", absolute.value <= relative.value,
                  {{"relative", relative.value}, {"absolute", absolute.value}});
      }
    }
  } else if (!partner) {
    add_check(report, "cup", "skipped", true, {{"reason", "a single datum has no partner for cup products"}});
  }

  const auto swap = time("swap_rule", [&] {
    return swap_rule_check(options.swap_trials, derive_seed(cfg.seed, 0x5a5a), options.swap_max_dim);
  });
  add_check(report, "intersections", "swap_rule", swap.failures == 0,
            {{"trials", swap.trials}, {"failures", swap.failures}, {"counterexample", swap.counterexample}});
  return report;
}

SwapRuleResult swap_rule_check(int trials, std::uint64_t seed, int max_dim) {
  if (max_dim < 2) throw MorseError(ErrorCode::InvalidConfig, "swap rule needs ambient dimension at least 2");
  SwapRuleResult out;
  std::normal_distribution<double> gauss;
  auto random_matrix = [&](std::mt19937_64& rng, int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) m(i, j) = gauss(rng);
    return m;
  };
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const int dim = std::uniform_int_distribution<int>(2, max_dim)(rng);
    const int c1 = std::uniform_int_distribution<int>(1, dim - 1)(rng);
    const int c2 = std::uniform_int_distribution<int>(1, dim - c1)(rng);
    const OrientedSubspace x{random_matrix(rng, dim, c1 + c2), 1};
    const CoorientedStratum y1{random_matrix(rng, dim, dim - c1), random_matrix(rng, dim, c1)};
    const CoorientedStratum y2{random_matrix(rng, dim, dim - c2), random_matrix(rng, dim, c2)};
    const CoorientedStratum forward[] = {y1, y2};
    const CoorientedStratum backward[] = {y2, y1};
    const int s12 = intersection_sign(x, forward);
    const int s21 = intersection_sign(x, backward);
    const int expected = ((c1 * c2) % 2 ? -1 : 1) * s21;
    ++out.trials;
    if (s12 != expected) {
      ++out.failures;
      if (out.counterexample.is_null())
        out.counterexample = {{"trial", t}, {"dim", dim}, {"codim1", c1}, {"codim2", c2}, {"sign12", s12}, {"sign21", s21}};
    }
  }
  return out;
}

}  // namespace morsecup::cli
