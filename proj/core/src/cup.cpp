#include "morsecup/cup.hpp"

#include "morsecup/errors.hpp"
#include "morsecup/intersections.hpp"

namespace morsecup {

std::string_view to_string(IsolationVerdict verdict) {
  switch (verdict) {
    case IsolationVerdict::StructurallyTrue: return "structurally_true";
    case IsolationVerdict::SampledTrue: return "sampled_true";
    case IsolationVerdict::Fail: return "fail";
  }
  return "fail";
}

bool same_flow(const MorseDatum& a, const MorseDatum& b) {
  if (a.space != b.space || !same_matrix(a.spectrum, b.spectrum)) return false;
  if (a.vertical.has_value() != b.vertical.has_value()) return false;
  return !a.vertical || (a.vertical->sign == b.vertical->sign && a.vertical->center == b.vertical->center);
}

IsolationVerdict isolation_compatible(const MorseDatum& gamma, const MorseDatum& alpha, const MorseDatum& beta,
                                      const OracleConfig& cfg) {
  for (const auto* d : {&alpha, &beta}) {
    if (d->space != gamma.space || d->spectrum.dim() != gamma.spectrum.dim() ||
        d->vertical.has_value() != gamma.vertical.has_value())
      throw MorseError(ErrorCode::MismatchedNeighborhoods, d->label + " and " + gamma.label + " differ in N");
  }
  if (same_flow(gamma, alpha) || same_flow(gamma, beta)) return IsolationVerdict::StructurallyTrue;
  return z_set_sample_check(gamma, alpha, beta, cfg) ? IsolationVerdict::SampledTrue : IsolationVerdict::Fail;
}

CupStructure::CupStructure(RingTag ring, const MorseDatum& gamma, const MorseDatum& alpha, const MorseDatum& beta)
    : ring_(ring), gamma_label_(gamma.label), alpha_label_(alpha.label), beta_label_(beta.label) {
  const MorseDatum* data[3] = {&gamma, &alpha, &beta};
  for (int i = 0; i < 3; ++i)
    for (const auto& cp : critical_points(*data[i])) degrees_[i][cp.name] = cp.morse_index;
}

Integer CupStructure::get(const std::string& z, const std::string& x, const std::string& y) const {
  const auto it = table_.find({z, x, y});
  return it == table_.end() ? Integer{0} : it->second;
}

void CupStructure::set(const std::string& z, const std::string& x, const std::string& y, const Integer& value) {
  const std::string* names[3] = {&z, &x, &y};
  int deg[3];
  for (int i = 0; i < 3; ++i) {
    const auto it = degrees_[i].find(*names[i]);
    if (it == degrees_[i].end()) throw MorseError(ErrorCode::ShapeMismatch, "unknown generator " + *names[i]);
    deg[i] = it->second;
  }
  if (deg[0] != deg[1] + deg[2])
    throw MorseError(ErrorCode::InvalidDegree, "w(" + z + ", " + x + ", " + y + ") violates index additivity");
  const Integer v = reduce(ring_, value);
  if (v == 0)
    table_.erase({z, x, y});
  else
    table_[{z, x, y}] = v;
}

CupStructure chain_cup(const MorseDatum& gamma, const MorseDatum& alpha, const MorseDatum& beta, RingTag ring,
                       const Tolerances& tol, const OracleConfig& cfg) {
  const IsolationVerdict verdict = isolation_compatible(gamma, alpha, beta, cfg);
  if (verdict == IsolationVerdict::Fail)
    throw MorseError(ErrorCode::IsolationFailure, "(" + gamma.label + ", " + alpha.label + ", " + beta.label +
                                                      ") are not isolation compatible");
  const std::pair<const MorseDatum*, const MorseDatum*> pairs[] = {{&gamma, &alpha}, {&gamma, &beta}, {&alpha, &beta}};
  for (const auto& [a, b] : pairs) {
    if (!same_matrix(a->spectrum, b->spectrum) && !general_position_check(a->spectrum, b->spectrum, tol))
      throw MorseError(ErrorCode::GenericityFailure, a->label + " and " + b->label + " are not in general position");
  }

  CupStructure w(ring, gamma, alpha, beta);
  w.verdict = verdict;
  const auto zs = critical_points(gamma);
  const auto xs = critical_points(alpha);
  const auto ys = critical_points(beta);
  for (const auto& z : zs) {
    const LinearStratum u = unstable_stratum(gamma, z);
    for (const auto& x : xs) {
      if (x.morse_index > z.morse_index) continue;
      const LinearStratum s1 = stable_stratum(alpha, x);
      for (const auto& y : ys) {
        if (z.morse_index != x.morse_index + y.morse_index) continue;
        Integer total = 0;
        for (const auto& p : triple_intersection(u, s1, stable_stratum(beta, y), ring, tol)) total += p.sign;
        w.set(z.name, x.name, y.name, total);
      }
    }
  }
  return w;
}

namespace {

void require_sources(const CupStructure& w, const GradedComplex& c_gamma, const GradedComplex& c_alpha,
                     const GradedComplex& c_beta) {
  const GradedComplex* cs[3] = {&c_gamma, &c_alpha, &c_beta};
  const std::map<std::string, int>* ds[3] = {&w.gamma_degrees(), &w.alpha_degrees(), &w.beta_degrees()};
  for (int i = 0; i < 3; ++i) {
    if (cs[i]->ring() != w.ring()) throw MorseError(ErrorCode::RingMismatch, "complex and cup table rings differ");
    if (cs[i]->total_generators() != ds[i]->size())
      throw MorseError(ErrorCode::ShapeMismatch, "complex does not match the cup table generators");
    for (const auto& [name, degree] : *ds[i]) {
      const auto where = cs[i]->find(name);
      if (!where || where->first != degree)
        throw MorseError(ErrorCode::ShapeMismatch, "complex does not match the cup table at " + name);
    }
  }
}

void accumulate(RingTag ring, Vector& into, const Vector& add, const Integer& scale) {
  for (std::size_t i = 0; i < into.size(); ++i) into[i] = reduce(ring, into[i] + scale * add[i]);
}

Cochain multiply_unchecked(const CupStructure& w, const GradedComplex& c_gamma, const GradedComplex& c_alpha,
                           const GradedComplex& c_beta, const Cochain& a, const Cochain& b) {
  Cochain out = c_gamma.zero_cochain(a.degree + b.degree);
  if (out.coefficients.empty()) return out;
  const auto& zs = c_gamma.generators(out.degree);
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
    if (a.coefficients[i] == 0) continue;
    const auto& x = c_alpha.generators(a.degree)[i].name;
    for (std::size_t j = 0; j < b.coefficients.size(); ++j) {
      if (b.coefficients[j] == 0) continue;
      const auto& y = c_beta.generators(b.degree)[j].name;
      for (std::size_t k = 0; k < zs.size(); ++k) {
        const Integer v = w.get(zs[k].name, x, y);
        if (v != 0) out.coefficients[k] += a.coefficients[i] * b.coefficients[j] * v;
      }
    }
  }
  out.coefficients = reduce(w.ring(), std::move(out.coefficients));
  return out;
}

void require_shape(const GradedComplex& c, const Cochain& x) {
  if (x.coefficients.size() != c.generator_count(x.degree) || x.degree < 0 || x.degree >= c.degree_count())
    throw MorseError(ErrorCode::ShapeMismatch, "cochain does not fit its complex");
}

Cochain coboundary(const GradedComplex& c, const Cochain& x) {
  if (x.degree + 1 >= c.degree_count()) return c.zero_cochain(x.degree + 1);
  return Cochain{x.degree + 1, c.apply_differential(x)};
}

}  // namespace

Cochain multiply(const CupStructure& w, const GradedComplex& c_gamma, const GradedComplex& c_alpha,
                 const GradedComplex& c_beta, const Cochain& a, const Cochain& b) {
  require_sources(w, c_gamma, c_alpha, c_beta);
  require_shape(c_alpha, a);
  require_shape(c_beta, b);
  return multiply_unchecked(w, c_gamma, c_alpha, c_beta, a, b);
}

IdentityCheck leibniz_check(const CupStructure& w, const GradedComplex& c_gamma, const GradedComplex& c_alpha,
                            const GradedComplex& c_beta) {
  require_sources(w, c_gamma, c_alpha, c_beta);
  const RingTag ring = w.ring();
  for (int i = 0; i < c_alpha.degree_count(); ++i)
    for (int j = 0; j < c_beta.degree_count(); ++j) {
      const int target = i + j + 1;
      if (c_gamma.generator_count(target) == 0) continue;
      for (const auto& x : c_alpha.generators(i))
        for (const auto& y : c_beta.generators(j)) {
          const Cochain ex = c_alpha.basis_cochain(x.name);
          const Cochain ey = c_beta.basis_cochain(y.name);
          Cochain r = c_gamma.zero_cochain(target);
          const Cochain xy = multiply_unchecked(w, c_gamma, c_alpha, c_beta, ex, ey);
          if (!xy.coefficients.empty()) accumulate(ring, r.coefficients, coboundary(c_gamma, xy).coefficients, 1);
          const Cochain dx = coboundary(c_alpha, ex);
          if (!dx.coefficients.empty())
            accumulate(ring, r.coefficients, multiply_unchecked(w, c_gamma, c_alpha, c_beta, dx, ey).coefficients, -1);
          const Cochain dy = coboundary(c_beta, ey);
          if (!dy.coefficients.empty())
            accumulate(ring, r.coefficients, multiply_unchecked(w, c_gamma, c_alpha, c_beta, ex, dy).coefficients,
                       i % 2 == 0 ? -1 : 1);
          if (!is_zero(r.coefficients)) return {false, x.name, y.name, std::move(r)};
        }
    }
  return {};
}

CommutativityCheck commutativity_check(const CupStructure& w_ab, const CupStructure& w_ba) {
  if (w_ab.ring() != w_ba.ring() || w_ab.gamma_label() != w_ba.gamma_label() ||
      w_ab.alpha_label() != w_ba.beta_label() || w_ab.beta_label() != w_ba.alpha_label() ||
      w_ab.gamma_degrees() != w_ba.gamma_degrees() || w_ab.alpha_degrees() != w_ba.beta_degrees() ||
      w_ab.beta_degrees() != w_ba.alpha_degrees())
    throw MorseError(ErrorCode::SourceMismatch, "cup tables do not come from swapped factors");
  for (const auto& [z, dz] : w_ab.gamma_degrees())
    for (const auto& [x, dx] : w_ab.alpha_degrees())
      for (const auto& [y, dy] : w_ab.beta_degrees()) {
        if (dz != dx + dy) continue;
        const int sign = (dx * dy) % 2 == 0 ? 1 : -1;
        if (reduce(w_ab.ring(), w_ab.get(z, x, y) - sign * w_ba.get(z, y, x)) != 0)
          return {false, CupKey{z, x, y}};
      }
  return {};
}

ClassProduct cohomology_cup(const CupStructure& w, const GradedComplex& c_gamma, const GradedComplex& c_alpha,
                            const GradedComplex& c_beta, const Cochain& a, const Cochain& b) {
  require_sources(w, c_gamma, c_alpha, c_beta);
  require_shape(c_alpha, a);
  require_shape(c_beta, b);
  if (!is_zero(coboundary(c_alpha, a).coefficients) || !is_zero(coboundary(c_beta, b).coefficients))
    throw MorseError(ErrorCode::NotCocycle, "cup product of classes needs cocycle representatives");
  ClassProduct out{multiply_unchecked(w, c_gamma, c_alpha, c_beta, a, b), false};
  if (out.product.degree < c_gamma.degree_count())
    out.nonzero = !is_coboundary(c_gamma, out.product).is_coboundary;
  return out;
}

std::pair<CupStructure, CupKey> mutate_first_entry(const CupStructure& w) {
  for (const auto& [z, dz] : w.gamma_degrees())
    for (const auto& [x, dx] : w.alpha_degrees())
      for (const auto& [y, dy] : w.beta_degrees()) {
        if (dz != dx + dy) continue;
        CupStructure out = w;
        const Integer old = w.get(z, x, y);
        out.set(z, x, y, w.ring() == RingTag::Z2 ? Integer{1} - old : old + 1);
        return {std::move(out), CupKey{z, x, y}};
      }
  throw MorseError(ErrorCode::ShapeMismatch, "cup table has no admissible triple");
}

}  // namespace morsecup
