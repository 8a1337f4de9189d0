#include "morsecup/coefficients.hpp"

#include "morsecup/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <bit>
#include <utility>

namespace morsecup {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t cols) { return (cols + kWordBits - 1) / kWordBits; }

bool test_bit(const std::uint64_t* row, std::size_t j) { return (row[j / kWordBits] >> (j % kWordBits)) & 1U; }
void flip_bit(std::uint64_t* row, std::size_t j) { row[j / kWordBits] ^= std::uint64_t{1} << (j % kWordBits); }

void xor_row(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t w = 0; w < words; ++w) dst[w] ^= src[w];
}

void require_same_ring(const RingMatrix& a, const RingMatrix& b) {
  if (a.ring() != b.ring()) throw MorseError(ErrorCode::RingMismatch, "operands over different rings");
}

// Reduced row echelon form over Z2, in place. Returns the pivot column of each pivot row.
std::vector<std::size_t> rref_z2(std::vector<std::uint64_t>& bits, std::size_t rows, std::size_t cols,
                                 std::size_t words, std::size_t pivot_limit) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_limit && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && !test_bit(bits.data() + p * words, c)) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap_ranges(bits.begin() + static_cast<std::ptrdiff_t>(p * words),
                       bits.begin() + static_cast<std::ptrdiff_t>((p + 1) * words),
                       bits.begin() + static_cast<std::ptrdiff_t>(r * words));
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i != r && test_bit(bits.data() + i * words, c)) xor_row(bits.data() + i * words, bits.data() + r * words, words);
    }
    pivots.push_back(c);
    ++r;
  }
  (void)cols;
  return pivots;
}

std::vector<std::vector<Integer>> dense(const RingMatrix& m) {
  std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m.get(i, j);
  return a;
}

// Fraction-free (Bareiss) elimination; returns rank and, for square input, the determinant.
std::pair<std::size_t, Integer> bareiss(std::vector<std::vector<Integer>> a, std::size_t rows, std::size_t cols) {
  Integer prev = 1;
  int sign = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  Integer det = 0;
  if (rows == cols && r == rows) det = sign * (rows == 0 ? Integer{1} : a[rows - 1][cols - 1]);
  if (rows == 0 && cols == 0) det = 1;
  return {r, det};
}

}  // namespace

std::string_view to_string(RingTag ring) { return ring == RingTag::Z2 ? "z2" : "z"; }

RingTag parse_ring(std::string_view text) {
  if (text == "z2" || text == "Z2") return RingTag::Z2;
  if (text == "z" || text == "Z") return RingTag::Z;
  throw MorseError(ErrorCode::InvalidConfig, "unknown ring '" + std::string(text) + "'");
}

Integer reduce(RingTag ring, const Integer& value) {
  if (ring == RingTag::Z) return value;
  Integer r = value % 2;
  return r < 0 ? -r : r;
}

Vector reduce(RingTag ring, Vector v) {
  for (auto& x : v) x = reduce(ring, x);
  return v;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

RingMatrix::RingMatrix(RingTag ring, std::size_t rows, std::size_t cols) : ring_(ring), rows_(rows), cols_(cols) {
  if (ring == RingTag::Z2) {
    words_ = words_for(cols);
    bits_.assign(rows * words_, 0);
  } else {
    ints_.assign(rows * cols, Integer{0});
  }
}

RingMatrix RingMatrix::identity(RingTag ring, std::size_t n) {
  RingMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

RingMatrix RingMatrix::from_rows(RingTag ring, std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Integer>> v;
  for (const auto& r : rows) v.emplace_back(r.begin(), r.end());
  return from_rows(ring, v);
}

RingMatrix RingMatrix::from_rows(RingTag ring, const std::vector<std::vector<Integer>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RingMatrix m(ring, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw MorseError(ErrorCode::ShapeMismatch, "ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

RingMatrix RingMatrix::from_columns(RingTag ring, std::size_t rows, const std::vector<Vector>& columns) {
  RingMatrix m(ring, rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw MorseError(ErrorCode::ShapeMismatch, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m.set(i, j, columns[j][i]);
  }
  return m;
}

Integer RingMatrix::get(std::size_t i, std::size_t j) const {
  if (ring_ == RingTag::Z2) return test_bit(bit_row(i), j) ? 1 : 0;
  return ints_[i * cols_ + j];
}

void RingMatrix::set(std::size_t i, std::size_t j, const Integer& value) {
  if (ring_ == RingTag::Z2) {
    if (test_bit(bit_row(i), j) != (reduce(RingTag::Z2, value) == 1)) flip_bit(bit_row(i), j);
  } else {
    ints_[i * cols_ + j] = value;
  }
}

void RingMatrix::add(std::size_t i, std::size_t j, const Integer& value) {
  if (ring_ == RingTag::Z2) {
    if (reduce(RingTag::Z2, value) == 1) flip_bit(bit_row(i), j);
  } else {
    ints_[i * cols_ + j] += value;
  }
}

bool RingMatrix::is_zero() const {
  if (ring_ == RingTag::Z2) return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
  return std::all_of(ints_.begin(), ints_.end(), [](const Integer& x) { return x == 0; });
}

Vector RingMatrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = get(i, j);
  return v;
}

Vector RingMatrix::row(std::size_t i) const {
  Vector v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = get(i, j);
  return v;
}

RingMatrix RingMatrix::transpose() const {
  RingMatrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, get(i, j));
  return t;
}

Vector RingMatrix::apply(const Vector& x) const {
  if (x.size() != cols_) throw MorseError(ErrorCode::ShapeMismatch, "vector length does not match columns");
  Vector y(rows_, Integer{0});
  for (std::size_t i = 0; i < rows_; ++i) {
    Integer acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (x[j] != 0) acc += get(i, j) * x[j];
    }
    y[i] = reduce(ring_, acc);
  }
  return y;
}

RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
  require_same_ring(a, b);
  if (a.cols() != b.rows()) throw MorseError(ErrorCode::ShapeMismatch, "inner dimensions differ");
  RingMatrix c(a.ring(), a.rows(), b.cols());
  if (a.ring() == RingTag::Z2) {
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < a.cols(); ++k)
        if (test_bit(a.bit_row(i), k)) xor_row(c.bit_row(i), b.bit_row(k), c.words_per_row());
    return c;
  }
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer aik = a.get(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c.add(i, j, aik * b.get(k, j));
    }
  return c;
}

bool operator==(const RingMatrix& a, const RingMatrix& b) {
  return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.bits_ == b.bits_ && a.ints_ == b.ints_;
}

std::size_t rank(const RingMatrix& m) {
  if (m.ring() == RingTag::Z2) {
    std::vector<std::uint64_t> bits(m.bit_row(0), m.bit_row(0) + m.rows() * m.words_per_row());
    return rref_z2(bits, m.rows(), m.cols(), m.words_per_row(), m.cols()).size();
  }
  return bareiss(dense(m), m.rows(), m.cols()).first;
}

Integer determinant(const RingMatrix& m) {
  if (m.rows() != m.cols()) throw MorseError(ErrorCode::ShapeMismatch, "determinant of a non-square matrix");
  if (m.ring() == RingTag::Z2) return rank(m) == m.rows() ? 1 : 0;
  return bareiss(dense(m), m.rows(), m.cols()).second;
}

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
    if (d.get(i, i) != 0) out.push_back(d.get(i, i));
  return out;
}

SmithForm smith_normal_form(const RingMatrix& input) {
  if (input.ring() != RingTag::Z) throw MorseError(ErrorCode::RingMismatch, "Smith normal form needs ring Z");
  const std::size_t m = input.rows();
  const std::size_t n = input.cols();
  auto a = dense(input);
  auto u = dense(RingMatrix::identity(RingTag::Z, m));
  auto v = dense(RingMatrix::identity(RingTag::Z, n));

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  };
  // row_i += q * row_j
  auto add_row = [&](std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t c = 0; c < n; ++c) a[i][c] += q * a[j][c];
    for (std::size_t c = 0; c < m; ++c) u[i][c] += q * u[j][c];
  };
  // col_i += q * col_j
  auto add_col = [&](std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t r = 0; r < m; ++r) a[r][i] += q * a[r][j];
    for (std::size_t r = 0; r < n; ++r) v[r][i] += q * v[r][j];
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // smallest |entry| in the trailing block
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a[i][j] != 0 && (!best || abs(a[i][j]) < abs(a[best->first][best->second]))) best = {i, j};
    if (!best) break;
    swap_rows(t, best->first);
    swap_cols(t, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        add_row(i, t, -(a[i][t] / a[t][t]));
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        add_col(j, t, -(a[t][j] / a[t][t]));
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) {
        // a remainder is now smaller than the pivot; move the smallest to (t, t)
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (a[i][t] != 0 && abs(a[i][t]) < abs(a[bi][bj])) bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[t][j] != 0 && abs(a[t][j]) < abs(a[bi][bj])) bi = t, bj = j;
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < m && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      add_row(t, *bad_row, 1);
    }
    if (a[t][t] < 0) add_row(t, t, -2);
  }
  return {RingMatrix::from_rows(RingTag::Z, u), RingMatrix::from_rows(RingTag::Z, a),
          RingMatrix::from_rows(RingTag::Z, v)};
}

std::optional<Vector> solve_in_column_space(const RingMatrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw MorseError(ErrorCode::ShapeMismatch, "right-hand side length differs from rows");
  for (const auto& x : b)
    if (a.ring() == RingTag::Z2 && x != 0 && x != 1)
      throw MorseError(ErrorCode::RingMismatch, "right-hand side is not a Z2 vector");

  if (a.ring() == RingTag::Z2) {
    const std::size_t cols = a.cols() + 1;
    const std::size_t words = words_for(cols);
    std::vector<std::uint64_t> bits(a.rows() * words, 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      std::uint64_t* row = bits.data() + i * words;
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (test_bit(a.bit_row(i), j)) flip_bit(row, j);
      if (b[i] == 1) flip_bit(row, a.cols());
    }
    const auto pivots = rref_z2(bits, a.rows(), cols, words, a.cols());
    for (std::size_t i = pivots.size(); i < a.rows(); ++i)
      if (test_bit(bits.data() + i * words, a.cols())) return std::nullopt;
    Vector x(a.cols(), Integer{0});
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = test_bit(bits.data() + r * words, a.cols()) ? 1 : 0;
    return x;
  }

  // Over Z: with u a v = d, solve d y = u b and set x = v y.
  const SmithForm snf = smith_normal_form(a);
  const Vector ub = snf.u.apply(b);
  Vector y(a.cols(), Integer{0});
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Integer di = i < a.cols() ? snf.d.get(i, i) : Integer{0};
    if (di == 0) {
      if (ub[i] != 0) return std::nullopt;
      continue;
    }
    if (ub[i] % di != 0) return std::nullopt;
    y[i] = ub[i] / di;
  }
  return snf.v.apply(y);
}

std::vector<Vector> kernel_basis(const RingMatrix& m) {
  std::vector<Vector> basis;
  if (m.ring() == RingTag::Z2) {
    std::vector<std::uint64_t> bits(m.bit_row(0), m.bit_row(0) + m.rows() * m.words_per_row());
    const auto pivots = rref_z2(bits, m.rows(), m.cols(), m.words_per_row(), m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < m.cols(); ++f) {
      if (is_pivot[f]) continue;
      Vector x(m.cols(), Integer{0});
      x[f] = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r)
        if (test_bit(bits.data() + r * m.words_per_row(), f)) x[pivots[r]] = 1;
      basis.push_back(std::move(x));
    }
    return basis;
  }
  const SmithForm snf = smith_normal_form(m);
  const std::size_t r = snf.invariant_factors().size();
  for (std::size_t j = r; j < m.cols(); ++j) basis.push_back(snf.v.column(j));
  return basis;
}

RingMatrix unimodular_inverse(const RingMatrix& u) {
  if (u.rows() != u.cols()) throw MorseError(ErrorCode::ShapeMismatch, "inverse of a non-square matrix");
  if (u.ring() == RingTag::Z2) {
    const std::size_t n = u.rows();
    RingMatrix inv(RingTag::Z2, n, n);
    for (std::size_t j = 0; j < n; ++j) {
      Vector e(n, Integer{0});
      e[j] = 1;
      auto x = solve_in_column_space(u, e);
      if (!x) throw MorseError(ErrorCode::ShapeMismatch, "matrix is not invertible");
      for (std::size_t i = 0; i < n; ++i) inv.set(i, j, (*x)[i]);
    }
    return inv;
  }
  const std::size_t n = u.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(u.get(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw MorseError(ErrorCode::ShapeMismatch, "matrix is singular");
    std::swap(a[p], a[c]);
    const Rational pivot = a[c][c];
    for (auto& x : a[c]) x /= pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  RingMatrix inv(RingTag::Z, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = a[i][n + j];
      if (denominator(x) != 1) throw MorseError(ErrorCode::ShapeMismatch, "matrix is not unimodular");
      inv.set(i, j, numerator(x));
    }
  return inv;
}

}  // namespace morsecup
