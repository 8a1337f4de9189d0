#include "report.hpp"

#include "morsecup/errors.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace morsecup::cli {

using nlohmann::json;

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

json Report::to_json() const {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["config"] = config;
  j["complexes"] = complexes;
  j["cup_tables"] = cup_tables;
  j["cuplength"] = cuplength;
  json checks_json = json::array();
  for (const auto& c : checks)
    checks_json.push_back({{"module", c.module}, {"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  j["checks"] = checks_json;
  j["status"] = passed() ? "ok" : "failed";
  json timings = json::object();
  for (const auto& [k, v] : timings_ms) timings[k] = v;
  j["timings"] = timings;
  return j;
}

json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return static_cast<long long>(v);
  return v.str();
}

json complex_json(const MorseDatum& d, const GradedComplex& c) {
  json j;
  j["label"] = d.label;
  j["space"] = std::string(to_string(d.space));
  j["n"] = d.n();
  j["ring"] = std::string(to_string(c.ring()));
  if (d.vertical) j["vertical"] = {{"sign", d.vertical->sign}, {"center", d.vertical->center}};
  json gens = json::array();
  json diffs = json::array();
  for (int k = 0; k < c.degree_count(); ++k) {
    json names = json::array();
    for (const auto& g : c.generators(k)) names.push_back(g.name);
    gens.push_back(names);
    if (k + 1 < c.degree_count()) {
      const RingMatrix& m = c.differential(k);
      json rows = json::array();
      for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t col = 0; col < m.cols(); ++col) row.push_back(integer_json(m.get(r, col)));
        rows.push_back(row);
      }
      diffs.push_back(rows);
    }
  }
  j["generators"] = gens;
  j["differentials"] = diffs;
  json coh = json::array();
  const auto groups = cohomology(c);
  for (std::size_t k = 0; k < groups.size(); ++k) {
    json torsion = json::array();
    for (const auto& t : groups[k].torsion) torsion.push_back(integer_json(t));
    coh.push_back({{"degree", k}, {"rank", groups[k].rank}, {"torsion", torsion}});
  }
  j["cohomology"] = coh;
  j["euler_characteristic"] = euler_characteristic(c);
  return j;
}

json cup_table_json(const CupStructure& w) {
  json entries = json::array();
  for (const auto& [key, value] : w.entries())
    entries.push_back({{"z", std::get<0>(key)}, {"x", std::get<1>(key)}, {"y", std::get<2>(key)}, {"w", integer_json(value)}});
  json j{{"gamma", w.gamma_label()},
         {"alpha", w.alpha_label()},
         {"beta", w.beta_label()},
         {"ring", std::string(to_string(w.ring()))},
         {"isolation", std::string(to_string(w.verdict))},
         {"entries", entries}};
  if (w.verdict == IsolationVerdict::SampledTrue) j["caveat"] = "isolation compatibility sampled, not proven";
  return j;
}

json cup_length_json(const CupLengthReport& r) {
  json witness = json::array();
  for (const auto& s : r.witness) witness.push_back({{"source", s.source}, {"degree", s.degree}, {"generators", s.generators}});
  return {{"value", r.value},
          {"alpha", r.alpha_label},
          {"partner", r.partner_label},
          {"witness", witness},
          {"all_products_vanish", r.all_products_vanish},
          {"isolation", std::string(to_string(r.verdict))},
          {"structural_bound", r.structural_bound},
          {"structural_bound_ok", r.structural_bound_ok},
          {"notes", r.notes}};
}

Format parse_format(const std::string& text) {
  if (text == "json") return Format::Json;
  if (text == "text") return Format::Text;
  throw MorseError(ErrorCode::InvalidConfig, "format must be json or text");
}

namespace {

std::string join(const json& names, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? sep : "") + names[i].get<std::string>();
  return out;
}

void render_complex(std::ostringstream& out, const json& c) {
  out << "complex " << c["label"].get<std::string>() << " (" << c["space"].get<std::string>()
      << ", n=" << c["n"].get<int>() << ", ring " << c["ring"].get<std::string>() << ")\n";
  std::size_t width = 10;
  for (const auto& names : c["generators"]) width = std::max(width, join(names, " ").size());
  out << "  " << std::left << std::setw(8) << "degree" << std::setw(static_cast<int>(width) + 2) << "generators"
      << "H\n";
  for (const auto& h : c["cohomology"]) {
    const std::size_t k = h["degree"].get<std::size_t>();
    std::string rank = std::to_string(h["rank"].get<std::size_t>());
    for (const auto& t : h["torsion"]) rank += " + Z/" + t.dump();
    out << "  " << std::left << std::setw(8) << k << std::setw(static_cast<int>(width) + 2)
        << (c["generators"][k].empty() ? std::string("-") : join(c["generators"][k], " ")) << rank << "\n";
  }
}

void render_cup_table(std::ostringstream& out, const json& t) {
  out << "cup table (gamma=" << t["gamma"].get<std::string>() << ", alpha=" << t["alpha"].get<std::string>()
      << ", beta=" << t["beta"].get<std::string>() << ", " << t["ring"].get<std::string>()
      << ", isolation " << t["isolation"].get<std::string>() << ")\n";
  if (t["entries"].empty()) {
    out << "  all products vanish\n";
    return;
  }
  // group by (x, y) so each line reads eta^x cup eta^y = sum
  std::map<std::pair<std::string, std::string>, std::string> rows;
  std::size_t width = 0;
  for (const auto& e : t["entries"]) {
    const auto key = std::make_pair(e["x"].get<std::string>(), e["y"].get<std::string>());
    const long long w = e["w"].is_number() ? e["w"].get<long long>() : 0;
    std::string term = (w == 1 ? "" : w == -1 ? "-" : std::to_string(w) + " ") + "eta^" + e["z"].get<std::string>();
    auto& rhs = rows[key];
    rhs += rhs.empty() ? term : (term[0] == '-' ? " - " + term.substr(1) : " + " + term);
    width = std::max(width, key.first.size() + key.second.size());
  }
  for (const auto& [key, rhs] : rows) {
    const std::string lhs = "eta^" + key.first + " cup eta^" + key.second;
    out << "  " << std::left << std::setw(static_cast<int>(width) + 14) << lhs << "= " << rhs << "\n";
  }
}

}  // namespace

std::string render_text(const Report& report) {
  std::ostringstream out;
  out << "morsecup " << kToolVersion << " " << report.command << "\n";
  for (const auto& c : report.complexes) {
    out << "\n";
    render_complex(out, c);
  }
  for (const auto& t : report.cup_tables) {
    out << "\n";
    render_cup_table(out, t);
  }
  if (!report.cuplength.empty()) {
    out << "\n";
    for (const auto& [name, r] : report.cuplength.items()) {
      if (!r.is_object() || !r.contains("value")) continue;
      out << std::left << std::setw(10) << name << "value " << r["value"].get<int>();
      if (r.contains("all_products_vanish"))
        out << (r["all_products_vanish"].get<bool>() ? "  (all positive-degree products vanish)" : "");
      out << "\n";
    }
    if (report.cuplength.contains("bound")) {
      const auto& b = report.cuplength["bound"];
      out << "bound     " << b["critical_points"].get<int>() << " critical points >= " << b["cup_length"].get<int>()
          << (b["satisfied"].get<bool>() ? "  satisfied" : "  VIOLATED") << "\n";
    }
  }
  if (!report.checks.empty()) {
    out << "\n";
    for (const auto& c : report.checks)
      out << (c.ok ? "  ok    " : "  FAIL  ") << c.module << "/" << c.name
          << (c.ok || c.detail.empty() ? "" : "  " + c.detail.dump()) << "\n";
  }
  out << "\nstatus " << (report.passed() ? "ok" : "failed") << "\n";
  return out.str();
}

void emit_report(const Report& report, Format format, const std::string& path) {
  const std::string body = format == Format::Json ? report.to_json().dump(2) + "\n" : render_text(report);
  if (path.empty()) {
    std::cout << body;
    std::cout.flush();
    if (!std::cout) throw MorseError(ErrorCode::Io, "failed to write report to stdout");
    return;
  }
  std::ofstream out(path);
  if (!out) throw MorseError(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << body;
  out.flush();
  if (!out) throw MorseError(ErrorCode::Io, "failed to write '" + path + "'");
}

}  // namespace morsecup::cli
