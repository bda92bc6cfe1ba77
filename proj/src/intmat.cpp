#include "catcoh/intmat.hpp"

#include <algorithm>
#include <sstream>

namespace catcoh {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.begin()->size();
  IntMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw InputError("from_rows: ragged row lengths");
    std::size_t j = 0;
    for (long v : row) m.at(i, j++) = v;
    ++i;
  }
  return m;
}

IntMatrix IntMatrix::column(const std::vector<Int>& entries) {
  IntMatrix m(entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, 0) = entries[i];
  return m;
}

bool IntMatrix::is_zero() const {
  for (const Int& v : e_)
    if (v != 0) return false;
  return true;
}

std::vector<Int> IntMatrix::col(std::size_t j) const {
  std::vector<Int> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = at(i, j);
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << " ";
      os << at(i, j).get_str();
    }
  }
  os << "]";
  return os.str();
}

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("mul: shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

std::vector<Int> mul(const IntMatrix& a, const std::vector<Int>& x) {
  if (a.cols() != x.size()) throw InputError("mul: vector length mismatch");
  std::vector<Int> y(a.rows(), Int(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != 0) y[i] += a.at(i, j) * x[j];
  return y;
}

IntMatrix add(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("add: shape mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
  return c;
}

IntMatrix sub(const IntMatrix& a, const IntMatrix& b) { return add(a, negate(b)); }

IntMatrix negate(const IntMatrix& a) {
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = -a.at(i, j);
  return c;
}

IntMatrix scale(const Int& c, const IntMatrix& a) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = c * a.at(i, j);
  return out;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw InputError("hstack: row count mismatch");
  IntMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, a.cols() + j) = b.at(i, j);
  }
  return c;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw InputError("vstack: column count mismatch");
  IntMatrix c(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c.at(a.rows() + i, j) = b.at(i, j);
  return c;
}

IntMatrix hstack(const std::vector<IntMatrix>& parts, std::size_t rows) {
  std::size_t total = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw InputError("hstack: row count mismatch");
    total += p.cols();
  }
  IntMatrix c(rows, total);
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < p.cols(); ++j) c.at(i, off + j) = p.at(i, j);
    off += p.cols();
  }
  return c;
}

IntMatrix submatrix_rows(const IntMatrix& a, std::size_t first, std::size_t count) {
  if (first + count > a.rows()) throw InputError("submatrix_rows: out of range");
  IntMatrix c(count, a.cols());
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(first + i, j);
  return c;
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw InputError("determinant: matrix not square");
  std::size_t n = a.rows();
  if (n == 0) return Int(1);
  IntMatrix m = a;
  Int prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m.at(p, k) == 0) ++p;
      if (p == n) return Int(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

std::vector<Int> SmithResult::diagonal() const {
  std::vector<Int> d;
  std::size_t n = std::min(s.rows(), s.cols());
  for (std::size_t i = 0; i < n; ++i) d.push_back(s.at(i, i));
  return d;
}

namespace {

// Mutable Smith state; every elementary operation on s is mirrored on the
// transforms so that u * a * v = s stays invariant, with uinv, vinv the
// exact inverses of u, v.
struct SmithState {
  IntMatrix s, u, v, uinv, vinv;

  explicit SmithState(const IntMatrix& a)
      : s(a),
        u(IntMatrix::identity(a.rows())),
        v(IntMatrix::identity(a.cols())),
        uinv(IntMatrix::identity(a.rows())),
        vinv(IntMatrix::identity(a.cols())) {}

  // R_i <- R_i + q R_t on s, u; inverse column op on uinv.
  void row_add(std::size_t i, std::size_t t, const Int& q) {
    for (std::size_t j = 0; j < s.cols(); ++j) s.at(i, j) += q * s.at(t, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u.at(i, j) += q * u.at(t, j);
    for (std::size_t r = 0; r < uinv.rows(); ++r) uinv.at(r, t) -= q * uinv.at(r, i);
  }
  void row_swap(std::size_t i, std::size_t t) {
    if (i == t) return;
    for (std::size_t j = 0; j < s.cols(); ++j) std::swap(s.at(i, j), s.at(t, j));
    for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u.at(i, j), u.at(t, j));
    for (std::size_t r = 0; r < uinv.rows(); ++r) std::swap(uinv.at(r, i), uinv.at(r, t));
  }
  void row_negate(std::size_t i) {
    for (std::size_t j = 0; j < s.cols(); ++j) s.at(i, j) = -s.at(i, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u.at(i, j) = -u.at(i, j);
    for (std::size_t r = 0; r < uinv.rows(); ++r) uinv.at(r, i) = -uinv.at(r, i);
  }
  // C_j <- C_j + q C_t on s, v; inverse row op on vinv.
  void col_add(std::size_t j, std::size_t t, const Int& q) {
    for (std::size_t i = 0; i < s.rows(); ++i) s.at(i, j) += q * s.at(i, t);
    for (std::size_t i = 0; i < v.rows(); ++i) v.at(i, j) += q * v.at(i, t);
    for (std::size_t c = 0; c < vinv.cols(); ++c) vinv.at(t, c) -= q * vinv.at(j, c);
  }
  void col_swap(std::size_t j, std::size_t t) {
    if (j == t) return;
    for (std::size_t i = 0; i < s.rows(); ++i) std::swap(s.at(i, j), s.at(i, t));
    for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v.at(i, j), v.at(i, t));
    for (std::size_t c = 0; c < vinv.cols(); ++c) std::swap(vinv.at(j, c), vinv.at(t, c));
  }
};

}  // namespace

SmithResult smith_normal_form(const IntMatrix& a) {
  SmithState st(a);
  IntMatrix& s = st.s;
  const std::size_t nr = s.rows(), nc = s.cols();
  std::size_t t = 0;

  while (t < nr && t < nc) {
    // Pivot: entry of minimal absolute value in the remaining submatrix.
    bool found = false;
    std::size_t pi = t, pj = t;
    Int best;
    for (std::size_t i = t; i < nr; ++i)
      for (std::size_t j = t; j < nc; ++j) {
        const Int& x = s.at(i, j);
        if (x == 0) continue;
        Int ax = abs(x);
        if (!found || ax < best) {
          found = true;
          best = ax;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;  // remaining submatrix zero
    st.row_swap(t, pi);
    st.col_swap(t, pj);

    for (;;) {
      // Clear column t below the pivot; a nonzero remainder becomes the new,
      // strictly smaller pivot, so this loop terminates.
      bool touched = true;
      while (touched) {
        touched = false;
        for (std::size_t i = t + 1; i < nr; ++i) {
          if (s.at(i, t) == 0) continue;
          Int q;
          mpz_tdiv_q(q.get_mpz_t(), s.at(i, t).get_mpz_t(), s.at(t, t).get_mpz_t());
          st.row_add(i, t, Int(-q));
          if (s.at(i, t) != 0) {
            st.row_swap(t, i);
            touched = true;
          }
        }
        for (std::size_t j = t + 1; j < nc; ++j) {
          if (s.at(t, j) == 0) continue;
          Int q;
          mpz_tdiv_q(q.get_mpz_t(), s.at(t, j).get_mpz_t(), s.at(t, t).get_mpz_t());
          st.col_add(j, t, Int(-q));
          if (s.at(t, j) != 0) {
            st.col_swap(t, j);
            touched = true;  // column swap may reintroduce entries below the pivot
          }
        }
      }
      // Divisibility: fold in a row holding a non-multiple and re-clear.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < nr && divides_all; ++i)
        for (std::size_t j = t + 1; j < nc; ++j) {
          if (s.at(i, j) % s.at(t, t) != 0) {
            st.row_add(t, i, Int(1));
            divides_all = false;
            break;
          }
        }
      if (divides_all) break;
    }
    if (s.at(t, t) < 0) st.row_negate(t);
    ++t;
  }

  SmithResult res;
  res.s = std::move(st.s);
  res.u = std::move(st.u);
  res.v = std::move(st.v);
  res.uinv = std::move(st.uinv);
  res.vinv = std::move(st.vinv);
  res.rank = 0;
  for (std::size_t i = 0; i < std::min(nr, nc); ++i)
    if (res.s.at(i, i) != 0) ++res.rank;
  return res;
}

std::optional<std::vector<Int>> solve(const IntMatrix& a, const std::vector<Int>& b) {
  if (b.size() != a.rows()) throw InputError("solve: vector length mismatch");
  SmithResult snf = smith_normal_form(a);
  std::vector<Int> y = mul(snf.u, b);
  std::vector<Int> x0(a.cols(), Int(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < snf.rank) {
      const Int& d = snf.s.at(i, i);
      if (y[i] % d != 0) return std::nullopt;
      x0[i] = y[i] / d;
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return mul(snf.v, x0);
}

std::optional<IntMatrix> solve_columns(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw InputError("solve_columns: row count mismatch");
  SmithResult snf = smith_normal_form(a);
  IntMatrix x(a.cols(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    std::vector<Int> y = mul(snf.u, b.col(j));
    std::vector<Int> x0(a.cols(), Int(0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i < snf.rank) {
        const Int& d = snf.s.at(i, i);
        if (y[i] % d != 0) return std::nullopt;
        x0[i] = y[i] / d;
      } else if (y[i] != 0) {
        return std::nullopt;
      }
    }
    std::vector<Int> xj = mul(snf.v, x0);
    for (std::size_t i = 0; i < a.cols(); ++i) x.at(i, j) = xj[i];
  }
  return x;
}

bool in_colspan(const IntMatrix& a, const std::vector<Int>& b) {
  return solve(a, b).has_value();
}

bool colspan_contains(const IntMatrix& a, const IntMatrix& b) {
  return solve_columns(a, b).has_value();
}

IntMatrix kernel_basis(const IntMatrix& a) {
  SmithResult snf = smith_normal_form(a);
  std::size_t k = a.cols() - snf.rank;
  IntMatrix ker(a.cols(), k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) ker.at(i, j) = snf.v.at(i, snf.rank + j);
  return ker;
}

IntMatrix colspan_preimage(const IntMatrix& a, const IntMatrix& r) {
  if (a.rows() != r.rows()) throw InputError("colspan_preimage: row count mismatch");
  IntMatrix ker = kernel_basis(hstack(a, r));
  // The x-part of ker(a x + r y = 0) generates the preimage lattice.
  IntMatrix out(a.cols(), ker.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < ker.cols(); ++j) out.at(i, j) = ker.at(i, j);
  return out;
}

IntMatrix colspan_intersection(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw InputError("colspan_intersection: row count mismatch");
  IntMatrix ker = kernel_basis(hstack(a, negate(b)));
  IntMatrix top(a.cols(), ker.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < ker.cols(); ++j) top.at(i, j) = ker.at(i, j);
  return mul(a, top);
}

}  // namespace catcoh
