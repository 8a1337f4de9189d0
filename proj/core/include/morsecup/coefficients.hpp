#pragma once

// Exact linear algebra over Z/2 and Z.
//
// Z/2 matrices are stored bit-packed per row; Z matrices hold arbitrary
// precision integers. Both share the RingMatrix interface so that the
// complex and cup code can be written once for either ring.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string_view>
#include <vector>

namespace morsecup {

using Integer = boost::multiprecision::cpp_int;
using Vector = std::vector<Integer>;

enum class RingTag { Z2, Z };

std::string_view to_string(RingTag ring);
RingTag parse_ring(std::string_view text);

/// Canonical representative of `value` in `ring` (0/1 for Z2).
Integer reduce(RingTag ring, const Integer& value);

class RingMatrix {
 public:
  RingMatrix() = default;
  RingMatrix(RingTag ring, std::size_t rows, std::size_t cols);

  static RingMatrix identity(RingTag ring, std::size_t n);
  static RingMatrix from_rows(RingTag ring, std::initializer_list<std::initializer_list<long>> rows);
  static RingMatrix from_rows(RingTag ring, const std::vector<std::vector<Integer>>& rows);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static RingMatrix from_columns(RingTag ring, std::size_t rows, const std::vector<Vector>& columns);

  RingTag ring() const noexcept { return ring_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Integer& value);
  /// Adds `value` to entry (i, j), reducing in the ring.
  void add(std::size_t i, std::size_t j, const Integer& value);

  bool is_zero() const;
  Vector column(std::size_t j) const;
  Vector row(std::size_t i) const;
  RingMatrix transpose() const;

  /// Matrix-vector product; throws RingMismatch/ShapeMismatch.
  Vector apply(const Vector& x) const;

  friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b);
  friend bool operator==(const RingMatrix& a, const RingMatrix& b);

  // Bit-level access for the Z2 kernels.
  const std::uint64_t* bit_row(std::size_t i) const { return bits_.data() + i * words_; }
  std::uint64_t* bit_row(std::size_t i) { return bits_.data() + i * words_; }
  std::size_t words_per_row() const noexcept { return words_; }

 private:
  RingTag ring_ = RingTag::Z2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<Integer> ints_;
};

/// Rank over Z/2, or over the rationals for Z (free rank).
std::size_t rank(const RingMatrix& m);

/// Some x with a*x = b over the ring (integral for Z), or nullopt.
std::optional<Vector> solve_in_column_space(const RingMatrix& a, const Vector& b);

struct SmithForm {
  RingMatrix u;  // unimodular, rows x rows
  RingMatrix d;  // diagonal, d_i | d_{i+1}, d_i >= 0
  RingMatrix v;  // unimodular, cols x cols
  std::vector<Integer> invariant_factors() const;  // nonzero diagonal entries
};

/// u * a * v = d. Pivoting picks the smallest nonzero |entry|.
SmithForm smith_normal_form(const RingMatrix& a);

/// Basis of the right kernel (a lattice basis over Z).
std::vector<Vector> kernel_basis(const RingMatrix& m);

/// Inverse of a unimodular integer matrix.
RingMatrix unimodular_inverse(const RingMatrix& u);

Integer determinant(const RingMatrix& m);

bool is_zero(const Vector& v);
Vector reduce(RingTag ring, Vector v);

}  // namespace morsecup
