#include "billiards/exactla.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "billiards/numtheory.hpp"

namespace billiards {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  std::vector<std::vector<mpz_class>> big;
  big.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<mpz_class> r;
    r.reserve(row.size());
    for (std::int64_t v : row) r.emplace_back(static_cast<long>(v));
    big.push_back(std::move(r));
  }
  return from_rows(big);
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<mpz_class>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.front().size() : 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(ErrorKind::InvalidArgument, "ragged matrix rows");
  }
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<mpz_class>> IntMatrix::to_rows() const {
  std::vector<std::vector<mpz_class>> out(rows_, std::vector<mpz_class>(cols_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
  }
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const mpz_class& v) { return v == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::InvalidArgument, "matrix shape mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t l = 0; l < a.cols_; ++l) {
      const mpz_class& x = a(i, l);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(l, j);
    }
  }
  return out;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix circulant(std::span<const std::int64_t> entries) {
  const std::size_t k = entries.size();
  IntMatrix c(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      c(i, j) = static_cast<long>(entries[(i + k - j) % k]);
    }
  }
  return c;
}

IntMatrix circulant(const PolygonTuple& t) { return circulant(t.entries()); }

namespace {

// Working state for the diagonalization. Every elementary operation on D is
// mirrored on U or V so that A = U * D * V holds after each step.
class SnfWorkspace {
 public:
  explicit SnfWorkspace(const IntMatrix& a)
      : d_(a), u_(IntMatrix::identity(a.rows())), v_(IntMatrix::identity(a.cols())) {}

  IntMatrix& d() { return d_; }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < d_.cols(); ++c) std::swap(d_(i, c), d_(j, c));
    for (std::size_t r = 0; r < u_.rows(); ++r) std::swap(u_(r, i), u_(r, j));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < d_.rows(); ++r) std::swap(d_(r, i), d_(r, j));
    for (std::size_t c = 0; c < v_.cols(); ++c) std::swap(v_(i, c), v_(j, c));
  }

  // row_i += factor * row_j
  void add_row(std::size_t i, std::size_t j, const mpz_class& factor) {
    for (std::size_t c = 0; c < d_.cols(); ++c) d_(i, c) += factor * d_(j, c);
    for (std::size_t r = 0; r < u_.rows(); ++r) u_(r, j) -= factor * u_(r, i);
  }

  // col_i += factor * col_j
  void add_col(std::size_t i, std::size_t j, const mpz_class& factor) {
    for (std::size_t r = 0; r < d_.rows(); ++r) d_(r, i) += factor * d_(r, j);
    for (std::size_t c = 0; c < v_.cols(); ++c) v_(j, c) -= factor * v_(i, c);
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < d_.cols(); ++c) d_(i, c) = -d_(i, c);
    for (std::size_t r = 0; r < u_.rows(); ++r) u_(r, i) = -u_(r, i);
  }

  SnfResult finish() {
    const std::size_t r = std::min(d_.rows(), d_.cols());
    std::vector<mpz_class> divisors(r);
    for (std::size_t i = 0; i < r; ++i) divisors[i] = d_(i, i);
    return {std::move(u_), std::move(d_), std::move(v_), std::move(divisors)};
  }

 private:
  IntMatrix d_;
  IntMatrix u_;
  IntMatrix v_;
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a) {
  SnfWorkspace ws(a);
  IntMatrix& d = ws.d();
  const std::size_t m = d.rows();
  const std::size_t n = d.cols();
  const std::size_t r = std::min(m, n);

  for (std::size_t s = 0; s < r; ++s) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool found = false;
      std::size_t pi = s, pj = s;
      mpz_class best;
      for (std::size_t i = s; i < m; ++i) {
        for (std::size_t j = s; j < n; ++j) {
          if (d(i, j) == 0) continue;
          mpz_class mag = abs(d(i, j));
          if (!found || mag < best) {
            found = true;
            best = mag;
            pi = i;
            pj = j;
          }
        }
      }
      if (!found) return ws.finish();

      ws.swap_rows(s, pi);
      ws.swap_cols(s, pj);

      bool clean = true;
      for (std::size_t i = s + 1; i < m; ++i) {
        if (d(i, s) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), d(i, s).get_mpz_t(), d(s, s).get_mpz_t());
        ws.add_row(i, s, -q);
        if (d(i, s) != 0) clean = false;
      }
      for (std::size_t j = s + 1; j < n; ++j) {
        if (d(s, j) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), d(s, j).get_mpz_t(), d(s, s).get_mpz_t());
        ws.add_col(j, s, -q);
        if (d(s, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the whole trailing block; otherwise pull the
      // offending row into row s and reduce again with a smaller remainder.
      bool divides = true;
      for (std::size_t i = s + 1; i < m && divides; ++i) {
        for (std::size_t j = s + 1; j < n; ++j) {
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(s, s).get_mpz_t())) {
            ws.add_row(s, i, 1);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (d(s, s) < 0) ws.negate_row(s);
  }
  return ws.finish();
}

mpz_class determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  mpz_class sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && m(swap_with, k) == 0) ++swap_with;
      if (swap_with == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap_with, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

// Calls visit(indices) for every increasing j-subset of {0, ..., n-1}.
template <typename Visit>
void for_each_subset(std::size_t n, std::size_t j, Visit&& visit) {
  std::vector<std::size_t> idx(j);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (;;) {
    visit(idx);
    std::size_t pos = j;
    while (pos > 0 && idx[pos - 1] == n - j + pos - 1) --pos;
    if (pos == 0) return;
    ++idx[pos - 1];
    for (std::size_t q = pos; q < j; ++q) idx[q] = idx[q - 1] + 1;
  }
}

}  // namespace

mpz_class minor_gcd(const IntMatrix& a, std::size_t j) {
  if (j < 1 || j > std::min(a.rows(), a.cols())) {
    throw Error(ErrorKind::JOutOfRange, "minor size " + std::to_string(j) + " out of range");
  }
  mpz_class g = 0;
  IntMatrix sub(j, j);
  for_each_subset(a.rows(), j, [&](const std::vector<std::size_t>& rows) {
    if (g == 1) return;
    for_each_subset(a.cols(), j, [&](const std::vector<std::size_t>& cols) {
      if (g == 1) return;
      for (std::size_t r = 0; r < j; ++r) {
        for (std::size_t c = 0; c < j; ++c) sub(r, c) = a(rows[r], cols[c]);
      }
      mpz_class det = determinant(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
    });
  });
  return g;
}

std::size_t rank_mod_p(const IntMatrix& a, std::int64_t p) {
  if (!nt::is_prime(p)) throw Error(ErrorKind::PNotPrime, std::to_string(p) + " is not prime");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<std::vector<std::int64_t>> rows(m, std::vector<std::int64_t>(n));
  const mpz_class modulus = static_cast<long>(p);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), a(i, j).get_mpz_t(), modulus.get_mpz_t());
      rows[i][j] = r.get_si();
    }
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t pivot = rank;
    while (pivot < m && rows[pivot][col] == 0) ++pivot;
    if (pivot == m) continue;
    std::swap(rows[rank], rows[pivot]);
    const std::int64_t inv = nt::inverse(rows[rank][col], p);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      const std::int64_t factor = nt::mul_mod(rows[i][col], inv, p);
      for (std::size_t j = col; j < n; ++j) {
        rows[i][j] = nt::mod(rows[i][j] - nt::mul_mod(factor, rows[rank][j], p), p);
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace billiards
