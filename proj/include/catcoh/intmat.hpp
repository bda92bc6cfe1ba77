#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace catcoh {

using Int = mpz_class;

// Thrown on violated preconditions and malformed inputs.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a configurable size guard is exceeded.
struct LimitError : std::runtime_error {
  explicit LimitError(const std::string& msg) : std::runtime_error(msg) {}
};

// Dense integer matrix with arbitrary-precision entries, row-major.
// Zero-dimensional shapes (0 x n, n x 0) are valid and arise routinely
// as presentations of zero groups.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, Int(0)) {}

  static IntMatrix identity(std::size_t n);
  // Convenience for literals in tests and builders.
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix column(const std::vector<Int>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  bool is_zero() const;
  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  std::vector<Int> col(std::size_t j) const;
  std::string to_string() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Int> e_;
};

IntMatrix mul(const IntMatrix& a, const IntMatrix& b);
std::vector<Int> mul(const IntMatrix& a, const std::vector<Int>& x);
IntMatrix add(const IntMatrix& a, const IntMatrix& b);
IntMatrix sub(const IntMatrix& a, const IntMatrix& b);
IntMatrix negate(const IntMatrix& a);
IntMatrix scale(const Int& c, const IntMatrix& a);
// [a | b] and [a ; b].
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix hstack(const std::vector<IntMatrix>& parts, std::size_t rows);
IntMatrix submatrix_rows(const IntMatrix& a, std::size_t first, std::size_t count);

// Exact determinant of a square matrix (fraction-free Bareiss elimination).
Int determinant(const IntMatrix& a);

// u * a * v = s with s diagonal, diagonal entries nonnegative and each
// dividing the next; u, v unimodular with tracked inverses.
struct SmithResult {
  IntMatrix s, u, v, uinv, vinv;
  std::size_t rank = 0;  // number of nonzero diagonal entries
  std::vector<Int> diagonal() const;
};
SmithResult smith_normal_form(const IntMatrix& a);

// One integral solution of a x = b, if any.
std::optional<std::vector<Int>> solve(const IntMatrix& a, const std::vector<Int>& b);
// Columnwise solve a x_j = b_j; nullopt if any column has no solution.
std::optional<IntMatrix> solve_columns(const IntMatrix& a, const IntMatrix& b);
bool in_colspan(const IntMatrix& a, const std::vector<Int>& b);
// All columns of b lie in the column span of a.
bool colspan_contains(const IntMatrix& a, const IntMatrix& b);

// Columns generate the lattice {x : a x = 0}.
IntMatrix kernel_basis(const IntMatrix& a);
// Columns generate {x : a x in colspan(r)}; contains the kernel of a.
IntMatrix colspan_preimage(const IntMatrix& a, const IntMatrix& r);
// Columns generate colspan(a) n colspan(b).
IntMatrix colspan_intersection(const IntMatrix& a, const IntMatrix& b);

}  // namespace catcoh
