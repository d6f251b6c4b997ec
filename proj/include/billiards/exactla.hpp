#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "billiards/polygon.hpp"

namespace billiards {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);
  static IntMatrix from_rows(const std::vector<std::vector<mpz_class>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<std::vector<mpz_class>> to_rows() const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

/// A = U * D * V with U, V unimodular and D diagonal with d_1 | d_2 | ...
struct SnfResult {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  std::vector<mpz_class> divisors;
};

/// k x k circulant with entry (i, j) = a_{(i - j) mod k}; column 0 is the tuple.
IntMatrix circulant(std::span<const std::int64_t> entries);
IntMatrix circulant(const PolygonTuple& t);

SnfResult smith_normal_form(const IntMatrix& a);

/// Exact determinant (fraction-free Bareiss elimination).
mpz_class determinant(const IntMatrix& a);

/// gcd of every j x j minor determinant; 0 when all of them vanish.
mpz_class minor_gcd(const IntMatrix& a, std::size_t j);

/// Rank over F_p by Gaussian elimination.
std::size_t rank_mod_p(const IntMatrix& a, std::int64_t p);

}  // namespace billiards
