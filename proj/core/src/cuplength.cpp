#include "morsecup/cuplength.hpp"

#include "morsecup/errors.hpp"

#include <map>
#include <utility>

namespace morsecup {

bool is_attracting_type(const MorseDatum& d) { return !d.vertical || d.vertical->sign > 0; }

namespace {

struct Node {
  Cochain rep;
  int parent = -1;
  int factor = -1;  // index into the partner class list
};

WitnessStep describe(const GradedComplex& c, const std::string& source, const Cochain& x) {
  WitnessStep step{source, x.degree, x, {}};
  for (std::size_t i = 0; i < x.coefficients.size(); ++i)
    if (x.coefficients[i] != 0) step.generators.push_back(c.generators(x.degree)[i].name);
  return step;
}

/// Canonical cocycle for the class of x: the matching combination of basis representatives.
Cochain canonical_rep(const GradedComplex& c, const Cochain& x) {
  const Vector coords = class_coordinates(c, x);
  const auto basis = cohomology_basis(c, x.degree);
  Cochain out = c.zero_cochain(x.degree);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coords[i] != 0)
      for (std::size_t j = 0; j < out.coefficients.size(); ++j)
        out.coefficients[j] = reduce(c.ring(), out.coefficients[j] + basis[i].coefficients[j]);
  return out;
}

}  // namespace

CupLengthReport cup_length_search(const GradedComplex& c_alpha, const GradedComplex& c_partner,
                                  const CupStructure& w) {
  if (c_alpha.ring() != RingTag::Z2 || c_partner.ring() != RingTag::Z2 || w.ring() != RingTag::Z2)
    throw MorseError(ErrorCode::UnsupportedRing, "cup-length search runs over Z2");
  CupLengthReport report;
  report.alpha_label = w.alpha_label();
  report.partner_label = w.beta_label();
  report.verdict = w.verdict;

  std::vector<Cochain> partner;
  int nonzero_positive_degrees = 0;
  for (int d = 1; d < c_partner.degree_count(); ++d) {
    auto basis = cohomology_basis(c_partner, d);
    if (!basis.empty()) ++nonzero_positive_degrees;
    for (auto& b : basis) partner.push_back(std::move(b));
  }
  report.structural_bound = 1 + nonzero_positive_degrees;

  std::vector<Node> nodes;
  std::vector<int> level;
  for (int d = 0; d < c_alpha.degree_count(); ++d)
    for (auto& b : cohomology_basis(c_alpha, d)) {
      level.push_back(static_cast<int>(nodes.size()));
      nodes.push_back({std::move(b), -1, -1});
    }

  for (int i : level) {
    if (nodes[i].rep.degree == 0) continue;
    for (const auto& mu : partner)
      if (cohomology_cup(w, c_alpha, c_alpha, c_partner, nodes[i].rep, mu).nonzero) report.all_products_vanish = false;
  }

  if (level.empty()) {
    report.structural_bound_ok = true;
    return report;
  }
  report.value = 1;
  while (true) {
    std::map<std::pair<int, Vector>, int> seen;
    std::vector<int> next;
    for (int i : level)
      for (std::size_t m = 0; m < partner.size(); ++m) {
        const ClassProduct p = cohomology_cup(w, c_alpha, c_alpha, c_partner, nodes[i].rep, partner[m]);
        if (!p.nonzero) continue;
        const Cochain rep = canonical_rep(c_alpha, p.product);
        const auto key = std::make_pair(rep.degree, rep.coefficients);
        if (seen.count(key)) continue;
        seen[key] = static_cast<int>(nodes.size());
        next.push_back(static_cast<int>(nodes.size()));
        nodes.push_back({rep, i, static_cast<int>(m)});
      }
    if (next.empty()) break;
    ++report.value;
    level = std::move(next);
  }

  // witness: walk back from the first class of the longest level
  std::vector<int> chain;
  for (int i = level.front(); i >= 0; i = nodes[i].parent) chain.push_back(i);
  report.witness.push_back(describe(c_alpha, w.alpha_label(), nodes[chain.back()].rep));
  for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) {
    const Cochain& mu = partner[nodes[*it].factor];
    report.witness.push_back(describe(c_partner, w.beta_label(), mu));
  }
  report.structural_bound_ok = report.value <= report.structural_bound;
  return report;
}

namespace {

CupLengthReport run(const MorseDatum& alpha, const MorseDatum& partner, const Tolerances& tol,
                    const OracleConfig& cfg) {
  const CupStructure w = chain_cup(alpha, alpha, partner, RingTag::Z2, tol, cfg);
  CupLengthReport report = cup_length_search(build_complex(alpha, RingTag::Z2, tol),
                                             build_complex(partner, RingTag::Z2, tol), w);
  if (w.verdict == IsolationVerdict::SampledTrue)
    report.notes.push_back("isolation compatibility sampled, not proven");
  return report;
}

}  // namespace

CupLengthReport relative_cup_length(const MorseDatum& alpha, const MorseDatum& attracting, const Tolerances& tol,
                                    const OracleConfig& cfg) {
  if (!is_attracting_type(attracting))
    throw MorseError(ErrorCode::NotAttracting, attracting.label + " has a repelling line factor");
  CupLengthReport report = run(alpha, attracting, tol, cfg);
  report.notes.push_back("relative cup-length over Z2");
  return report;
}

CupLengthReport absolute_cup_length(const MorseDatum& alpha, const MorseDatum& gamma, const Tolerances& tol,
                                    const OracleConfig& cfg) {
  CupLengthReport report = run(alpha, gamma, tol, cfg);
  report.notes.push_back("value counts a nonzero class as length 1; all_products_vanish records whether every "
                         "positive-degree product is zero");
  return report;
}

BoundReport critical_point_bound(const MorseDatum& alpha, const MorseDatum& attracting, const Tolerances& tol,
                                 const OracleConfig& cfg) {
  BoundReport out;
  out.cup_length = relative_cup_length(alpha, attracting, tol, cfg).value;
  out.critical_points = static_cast<int>(critical_points(alpha).size());
  out.satisfied = out.critical_points >= out.cup_length;
  return out;
}

RemarkReport remark_inequality_check(const MorseDatum& alpha, const MorseDatum& attracting, const MorseDatum& gamma,
                                     const Tolerances& tol, const OracleConfig& cfg) {
  RemarkReport out;
  out.relative = relative_cup_length(alpha, attracting, tol, cfg).value;
  out.absolute = absolute_cup_length(alpha, gamma, tol, cfg).value;
  out.holds = out.absolute <= out.relative;
  return out;
}

}  // namespace morsecup
