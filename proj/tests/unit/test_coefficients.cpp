#include "morsecup/coefficients.hpp"
#include "morsecup/errors.hpp"

#include "doctest.h"

#include <boost/integer/common_factor.hpp>

#include <random>

using namespace morsecup;

namespace {

RingMatrix random_matrix(RingTag ring, std::size_t rows, std::size_t cols, std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> u(lo, hi);
  RingMatrix m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, reduce(ring, u(rng)));
  return m;
}

// Bareiss elimination; every intermediate is an exact integer.
std::size_t bareiss_rank(const RingMatrix& m) {
  std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m.get(i, j);
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

// Size of the row span over Z/2, by enumeration.
std::size_t z2_span_rank(const RingMatrix& m) {
  std::vector<std::uint64_t> rows(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.get(i, j) != 0) rows[i] |= std::uint64_t{1} << j;
  std::vector<bool> seen(std::size_t{1} << m.cols(), false);
  std::size_t distinct = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m.rows()); ++mask) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (mask >> i & 1) v ^= rows[i];
    if (!seen[v]) {
      seen[v] = true;
      ++distinct;
    }
  }
  std::size_t r = 0;
  while ((std::size_t{1} << r) < distinct) ++r;
  return r;
}

bool z2_solvable_bruteforce(const RingMatrix& a, const Vector& b) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << a.cols()); ++mask) {
    Vector x(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) x[j] = mask >> j & 1;
    if (a.apply(x) == reduce(RingTag::Z2, b)) return true;
  }
  return false;
}

Integer abs_det(const RingMatrix& m) {
  Integer d = determinant(m);
  return d < 0 ? Integer(-d) : d;
}

}  // namespace

TEST_CASE("rank of small fixed matrices") {
  CHECK(rank(RingMatrix::identity(RingTag::Z2, 3)) == 3);
  CHECK(rank(RingMatrix::from_rows(RingTag::Z2, {{1, 1}, {1, 1}})) == 1);
  CHECK(rank(RingMatrix::from_rows(RingTag::Z, {{2, 0}, {0, 2}})) == 2);
  CHECK(rank(RingMatrix::from_rows(RingTag::Z2, {{2, 0}, {0, 1}})) == 1);
  CHECK(rank(RingMatrix(RingTag::Z, 0, 4)) == 0);
}

TEST_CASE("integer rank matches fraction-free elimination") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + trial % 6, cols = 1 + (trial / 6) % 8;
    // small entry range so rank deficiency actually happens
    const RingMatrix m = random_matrix(RingTag::Z, rows, cols, rng, -2, 2);
    CHECK(rank(m) == bareiss_rank(m));
  }
  const RingMatrix m = random_matrix(RingTag::Z, 5, 7, rng, -50, 50);
  CHECK(rank(m) == bareiss_rank(m));
}

TEST_CASE("Z2 rank matches enumeration of the row span") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + trial % 10, cols = 1 + (trial / 10) % 12;
    const RingMatrix m = random_matrix(RingTag::Z2, rows, cols, rng, 0, 1);
    CHECK(rank(m) == z2_span_rank(m));
    CHECK(rank(m.transpose()) == rank(m));
  }
}

TEST_CASE("wide Z2 matrices cross word boundaries") {
  RingMatrix m(RingTag::Z2, 3, 130);
  m.set(0, 0, 1);
  m.set(0, 129, 1);
  m.set(1, 64, 1);
  m.set(2, 0, 1);
  m.set(2, 129, 1);
  m.set(2, 64, 1);
  CHECK(rank(m) == 2);
}

TEST_CASE("solve_in_column_space") {
  SUBCASE("zero right-hand side") {
    const auto a = RingMatrix::from_rows(RingTag::Z, {{3, 1}, {1, 5}});
    const auto x = solve_in_column_space(a, {0, 0});
    REQUIRE(x);
    CHECK(is_zero(*x));
  }
  SUBCASE("identity returns b") {
    const auto x = solve_in_column_space(RingMatrix::identity(RingTag::Z, 3), {4, -2, 7});
    REQUIRE(x);
    CHECK(*x == Vector{4, -2, 7});
  }
  SUBCASE("parity obstruction over Z") {
    CHECK_FALSE(solve_in_column_space(RingMatrix::from_rows(RingTag::Z, {{2}}), {1}));
    CHECK(solve_in_column_space(RingMatrix::from_rows(RingTag::Z2, {{1}}), {1}));
  }
  SUBCASE("integral but not unimodular") {
    const auto a = RingMatrix::from_rows(RingTag::Z, {{2, 4}, {6, 8}});
    const auto x = solve_in_column_space(a, {2, 6});
    REQUIRE(x);
    CHECK(a.apply(*x) == Vector{2, 6});
    CHECK_FALSE(solve_in_column_space(a, {1, 0}));
  }
  SUBCASE("ring mismatch is rejected") {
    const auto a = RingMatrix::identity(RingTag::Z2, 2);
    const auto b = RingMatrix::identity(RingTag::Z, 2);
    CHECK_THROWS_AS(a * b, MorseError);
  }
}

TEST_CASE("Z2 solvability matches exhaustive search") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + trial % 7, cols = 1 + (trial / 7) % 12;
    const RingMatrix a = random_matrix(RingTag::Z2, rows, cols, rng, 0, 1);
    Vector b(rows);
    for (auto& v : b) v = bit(rng);
    const auto x = solve_in_column_space(a, b);
    CHECK(x.has_value() == z2_solvable_bruteforce(a, b));
    if (x) CHECK(a.apply(*x) == b);
  }
}

TEST_CASE("Smith normal form examples") {
  CHECK(smith_normal_form(RingMatrix::from_rows(RingTag::Z, {{1, 0, 0}, {0, 2, 0}, {0, 0, 6}})).invariant_factors() ==
        std::vector<Integer>{1, 2, 6});
  CHECK(smith_normal_form(RingMatrix::from_rows(RingTag::Z, {{2, 4}, {6, 8}})).invariant_factors() ==
        std::vector<Integer>{2, 4});
  const auto zero = smith_normal_form(RingMatrix(RingTag::Z, 2, 3));
  CHECK(zero.d.is_zero());
  CHECK(zero.invariant_factors().empty());
  CHECK_THROWS_AS(smith_normal_form(RingMatrix::identity(RingTag::Z2, 2)), MorseError);
}

TEST_CASE("Smith normal form properties on random matrices") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t rows = 1 + trial % 5, cols = 1 + (trial / 5) % 5;
    const RingMatrix a = random_matrix(RingTag::Z, rows, cols, rng, -9, 9);
    const SmithForm s = smith_normal_form(a);
    CHECK(s.u * a * s.v == s.d);
    CHECK(abs_det(s.u) == 1);
    CHECK(abs_det(s.v) == 1);
    const auto f = s.invariant_factors();
    CHECK(f.size() == rank(a));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        if (i != j) CHECK(s.d.get(i, j) == 0);
        if (i == j) CHECK(s.d.get(i, j) >= 0);
      }
    for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i] % f[i - 1] == 0);
    // first invariant factor is the gcd of all entries
    Integer g = 0;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) g = boost::integer::gcd(g, a.get(i, j));
    if (!f.empty()) CHECK(f[0] == (g < 0 ? Integer(-g) : g));
    if (rows == cols && f.size() == rows) {
      Integer product = 1;
      for (const auto& v : f) product *= v;
      CHECK(product == abs_det(a));
    }
  }
}

TEST_CASE("kernel basis and unimodular inverse") {
  std::mt19937_64 rng(3);
  for (auto ring : {RingTag::Z2, RingTag::Z}) {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t rows = 1 + trial % 4, cols = 1 + (trial / 4) % 7;
      const RingMatrix m = random_matrix(ring, rows, cols, rng, ring == RingTag::Z ? -3 : 0, ring == RingTag::Z ? 3 : 1);
      const auto kernel = kernel_basis(m);
      CHECK(kernel.size() == cols - rank(m));
      for (const auto& v : kernel) CHECK(is_zero(m.apply(v)));
      if (!kernel.empty()) CHECK(rank(RingMatrix::from_columns(ring, cols, kernel)) == kernel.size());
    }
  }
  for (int trial = 0; trial < 40; ++trial) {
    const RingMatrix a = random_matrix(RingTag::Z, 4, 4, rng, -5, 5);
    const SmithForm s = smith_normal_form(a);
    CHECK(s.u * unimodular_inverse(s.u) == RingMatrix::identity(RingTag::Z, 4));
  }
}

TEST_CASE("Z2 entries are reduced") {
  RingMatrix m(RingTag::Z2, 1, 1);
  m.set(0, 0, 3);
  CHECK(m.get(0, 0) == 1);
  m.add(0, 0, 1);
  CHECK(m.get(0, 0) == 0);
  CHECK(reduce(RingTag::Z2, Integer(-3)) == 1);
  CHECK(reduce(RingTag::Z, Integer(-3)) == -3);
  CHECK(parse_ring("z2") == RingTag::Z2);
  CHECK_THROWS_AS(parse_ring("q"), MorseError);
}
