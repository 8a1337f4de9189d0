#include "morsecup/complex.hpp"

#include "morsecup/errors.hpp"

#include <algorithm>

namespace morsecup {

GradedComplex::GradedComplex(RingTag ring, std::vector<std::vector<GeneratorLabel>> generators,
                             std::vector<RingMatrix> differentials)
    : ring_(ring), generators_(std::move(generators)), differentials_(std::move(differentials)) {
  const std::size_t degrees = generators_.size();
  if (differentials_.size() + 1 == degrees) differentials_.emplace_back(ring_, 0, generators_.back().size());
  if (differentials_.size() != degrees)
    throw MorseError(ErrorCode::ShapeMismatch, "expected one differential per degree");
  for (std::size_t k = 0; k < degrees; ++k) {
    const auto& d = differentials_[k];
    const std::size_t expected_rows = k + 1 < degrees ? generators_[k + 1].size() : 0;
    if (d.ring() != ring_) throw MorseError(ErrorCode::RingMismatch, "differential over a different ring");
    if (d.cols() != generators_[k].size() || d.rows() != expected_rows)
      throw MorseError(ErrorCode::ShapeMismatch, "differential in degree " + std::to_string(k) +
                                                     " does not match generator counts");
    for (std::size_t i = 0; i < generators_[k].size(); ++i) {
      const auto& g = generators_[k][i];
      if (g.degree != static_cast<int>(k))
        throw MorseError(ErrorCode::ShapeMismatch, "generator " + g.name + " listed under the wrong degree");
      if (!index_.emplace(g.name, std::make_pair(static_cast<int>(k), i)).second)
        throw MorseError(ErrorCode::ShapeMismatch, "duplicate generator " + g.name);
    }
  }
}

const std::vector<GeneratorLabel>& GradedComplex::generators(int degree) const {
  if (degree < 0 || degree >= degree_count()) throw MorseError(ErrorCode::InvalidDegree, std::to_string(degree));
  return generators_[static_cast<std::size_t>(degree)];
}

std::size_t GradedComplex::generator_count(int degree) const {
  if (degree < 0 || degree >= degree_count()) return 0;
  return generators_[static_cast<std::size_t>(degree)].size();
}

std::size_t GradedComplex::total_generators() const {
  std::size_t n = 0;
  for (const auto& g : generators_) n += g.size();
  return n;
}

const RingMatrix& GradedComplex::differential(int degree) const {
  if (degree < 0 || degree >= degree_count()) throw MorseError(ErrorCode::InvalidDegree, std::to_string(degree));
  return differentials_[static_cast<std::size_t>(degree)];
}

std::optional<std::pair<int, std::size_t>> GradedComplex::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Cochain GradedComplex::basis_cochain(const std::string& name) const {
  const auto where = find(name);
  if (!where) throw MorseError(ErrorCode::ShapeMismatch, "no generator named " + name);
  Cochain c = zero_cochain(where->first);
  c.coefficients[where->second] = 1;
  return c;
}

Cochain GradedComplex::zero_cochain(int degree) const {
  return Cochain{degree, Vector(generator_count(degree), Integer{0})};
}

Vector GradedComplex::apply_differential(const Cochain& x) const {
  if (x.coefficients.size() != generator_count(x.degree))
    throw MorseError(ErrorCode::ShapeMismatch, "cochain length does not match degree " + std::to_string(x.degree));
  return differential(x.degree).apply(x.coefficients);
}

void ComplexBuilder::add_generator(std::string name, int degree) {
  if (degree < 0) throw MorseError(ErrorCode::InvalidDegree, name);
  if (!degrees_.emplace(std::move(name), degree).second) throw MorseError(ErrorCode::ShapeMismatch, "duplicate generator");
}

void ComplexBuilder::set_coefficient(const std::string& from, const std::string& to, const Integer& value) {
  const auto f = degrees_.find(from);
  const auto t = degrees_.find(to);
  if (f == degrees_.end() || t == degrees_.end()) throw MorseError(ErrorCode::ShapeMismatch, "unknown generator");
  if (t->second != f->second + 1)
    throw MorseError(ErrorCode::IndexGap, "differential must raise degree by one: " + from + " -> " + to);
  entries_[{from, to}] = reduce(ring_, value);
}

GradedComplex ComplexBuilder::build() const {
  int top = -1;
  for (const auto& [name, degree] : degrees_) top = std::max(top, degree);
  std::vector<std::vector<GeneratorLabel>> gens(static_cast<std::size_t>(top + 1));
  // std::map iteration is already lexicographic by name
  for (const auto& [name, degree] : degrees_) gens[static_cast<std::size_t>(degree)].push_back({name, degree});

  auto position = [&](const std::string& name, int degree) {
    const auto& list = gens[static_cast<std::size_t>(degree)];
    return static_cast<std::size_t>(
        std::find_if(list.begin(), list.end(), [&](const GeneratorLabel& g) { return g.name == name; }) - list.begin());
  };
  std::vector<RingMatrix> diffs;
  for (int k = 0; k <= top; ++k) {
    const std::size_t rows = k < top ? gens[static_cast<std::size_t>(k + 1)].size() : 0;
    diffs.emplace_back(ring_, rows, gens[static_cast<std::size_t>(k)].size());
  }
  for (const auto& [key, value] : entries_) {
    const int k = degrees_.at(key.first);
    diffs[static_cast<std::size_t>(k)].set(position(key.second, k + 1), position(key.first, k), value);
  }
  return GradedComplex(ring_, std::move(gens), std::move(diffs));
}

DifferentialCheck validate_differential(const GradedComplex& c) {
  for (int k = 0; k + 1 < c.degree_count(); ++k) {
    RingMatrix composite = c.differential(k + 1) * c.differential(k);
    if (!composite.is_zero()) return {false, k, std::move(composite)};
  }
  return {};
}

namespace {

void require_valid(const GradedComplex& c) {
  const auto check = validate_differential(c);
  if (!check.ok)
    throw MorseError(ErrorCode::InvalidDifferential, "d^2 != 0 starting at degree " + std::to_string(check.degree));
}

std::size_t rank_of(const GradedComplex& c, int degree) {
  if (degree < 0 || degree >= c.degree_count()) return 0;
  return rank(c.differential(degree));
}

}  // namespace

std::vector<CohomologyGroup> cohomology(const GradedComplex& c) {
  require_valid(c);
  std::vector<CohomologyGroup> out;
  for (int k = 0; k < c.degree_count(); ++k) {
    CohomologyGroup h;
    h.rank = c.generator_count(k) - rank_of(c, k) - rank_of(c, k - 1);
    if (c.ring() == RingTag::Z && k > 0) {
      for (const auto& f : smith_normal_form(c.differential(k - 1)).invariant_factors())
        if (f > 1) h.torsion.push_back(f);
    }
    out.push_back(std::move(h));
  }
  return out;
}

CoboundaryResult is_coboundary(const GradedComplex& c, const Cochain& x) {
  if (x.degree < 0 || x.degree >= c.degree_count()) {
    if (is_zero(x.coefficients)) return {true, x};
    throw MorseError(ErrorCode::InvalidDegree, std::to_string(x.degree));
  }
  if (!is_zero(c.apply_differential(x))) throw MorseError(ErrorCode::NotCocycle, "cochain is not closed");
  if (x.degree == 0) {
    if (is_zero(x.coefficients)) return {true, c.zero_cochain(-1)};
    return {false, {}};
  }
  auto w = solve_in_column_space(c.differential(x.degree - 1), reduce(c.ring(), x.coefficients));
  if (!w) return {false, {}};
  return {true, Cochain{x.degree - 1, std::move(*w)}};
}

std::vector<Cochain> cohomology_basis(const GradedComplex& c, int degree) {
  if (degree < 0) throw MorseError(ErrorCode::InvalidDegree, std::to_string(degree));
  if (degree >= c.degree_count()) return {};
  require_valid(c);
  const std::size_t size = c.generator_count(degree);
  const auto kernel = kernel_basis(c.differential(degree));
  std::vector<Vector> image;
  if (degree > 0) {
    const auto& d = c.differential(degree - 1);
    for (std::size_t j = 0; j < d.cols(); ++j) image.push_back(d.column(j));
  }

  std::vector<Cochain> reps;
  if (c.ring() == RingTag::Z2) {
    std::vector<Vector> span = image;
    for (const auto& v : kernel) {
      if (solve_in_column_space(RingMatrix::from_columns(RingTag::Z2, size, span), v)) continue;
      span.push_back(v);
      reps.push_back({degree, v});
    }
    return reps;
  }

  // Over Z: write the image in kernel-lattice coordinates, then read the
  // cokernel generators off the Smith form of that coordinate matrix.
  if (kernel.empty()) return reps;
  const RingMatrix k = RingMatrix::from_columns(RingTag::Z, size, kernel);
  std::vector<Vector> coords;
  for (const auto& v : image) {
    auto x = solve_in_column_space(k, v);
    if (!x) throw MorseError(ErrorCode::InvalidDifferential, "image not contained in kernel");
    coords.push_back(std::move(*x));
  }
  const RingMatrix coord_matrix = RingMatrix::from_columns(RingTag::Z, kernel.size(), coords);
  const SmithForm snf = smith_normal_form(coord_matrix);
  const RingMatrix u_inv = unimodular_inverse(snf.u);
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    const Integer di = i < coord_matrix.cols() ? snf.d.get(i, i) : Integer{0};
    if (di == 1) continue;
    reps.push_back({degree, k.apply(u_inv.column(i))});
  }
  return reps;
}

Vector class_coordinates(const GradedComplex& c, const Cochain& x) {
  if (!is_zero(c.apply_differential(x))) throw MorseError(ErrorCode::NotCocycle, "cochain is not closed");
  const auto basis = cohomology_basis(c, x.degree);
  std::vector<Vector> columns;
  for (const auto& b : basis) columns.push_back(b.coefficients);
  if (x.degree > 0) {
    const auto& d = c.differential(x.degree - 1);
    for (std::size_t j = 0; j < d.cols(); ++j) columns.push_back(d.column(j));
  }
  const std::size_t size = c.generator_count(x.degree);
  auto t = solve_in_column_space(RingMatrix::from_columns(c.ring(), size, columns), reduce(c.ring(), x.coefficients));
  if (!t) throw MorseError(ErrorCode::InvalidDifferential, "cocycle outside the span of basis and coboundaries");
  t->resize(basis.size());
  return *t;
}

long euler_characteristic(const GradedComplex& c) {
  long chi = 0;
  for (int k = 0; k < c.degree_count(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(c.generator_count(k));
  return chi;
}

}  // namespace morsecup
