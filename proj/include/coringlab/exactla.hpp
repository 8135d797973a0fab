#pragma once

// Exact dense linear algebra over Q (GMP rationals) and F_p.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "coringlab/errors.hpp"

namespace coringlab::la {

class Scalar;

/// The ground field: either Q (modulus 0) or F_p for a prime p.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field(0); }
  /// Throws ShapeError when p is not a prime below 2^62.
  static Field prime(std::uint64_t p);
  /// Parses "Q" or "Fp:<p>".
  static Field parse(const std::string& text);

  bool is_rational() const { return modulus_ == 0; }
  std::uint64_t modulus() const { return modulus_; }
  std::string name() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;
  /// "p/q" or an integer for Q; a decimal integer for F_p.
  Scalar parse_scalar(const std::string& text) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  friend class Scalar;
  explicit Field(std::uint64_t m) : modulus_(m) {}
  std::uint64_t modulus_ = 0;
};

/// An exact field element in canonical form: a reduced fraction with
/// positive denominator, or a residue in [0, p).
class Scalar {
 public:
  Scalar() = default;  // zero of Q

  static Scalar rational(const mpq_class& q);
  static Scalar residue(std::uint64_t value, std::uint64_t p);

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  /// "p/q" (or "p" when q = 1) over Q; decimal residue over F_p.
  std::string to_string() const;

  const mpq_class& rational_value() const { return q_; }
  std::uint64_t residue_value() const { return r_; }

  Scalar operator-() const;
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  void check_same(const Scalar& o) const;

  std::uint64_t p_ = 0;
  std::uint64_t r_ = 0;
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Dense row-major matrix over one field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols);

  static Matrix identity(Field f, std::size_t n);
  static Matrix column(Field f, const std::vector<Scalar>& entries);
  /// Builds from integer rows; mostly for tests and fixtures.
  static Matrix from_ints(Field f, const std::vector<std::vector<long long>>& rows);
  static Matrix from_rows(Field f, std::size_t cols, const std::vector<std::vector<Scalar>>& rows);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  bool is_identity() const;

  Matrix transpose() const;
  Matrix col(std::size_t j) const;
  Matrix row(std::size_t i) const;
  /// Columns listed in `idx`, in order.
  Matrix select_cols(const std::vector<std::size_t>& idx) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Matrix scaled(const Scalar& s) const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix hstack(const std::vector<Matrix>& parts);
Matrix vstack(const std::vector<Matrix>& parts);
Matrix direct_sum(const Matrix& a, const Matrix& b);

struct Rref {
  Matrix form;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form; leftmost pivot, topmost row first.
Rref rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Columns form the standard nullspace basis: one column per free variable
/// in increasing order, that variable set to 1 and the other free ones to 0.
Matrix kernel_basis(const Matrix& m);

/// Lexicographically first set of row indices on which a matrix of full
/// column rank restricts to an invertible square block.
std::vector<std::size_t> independent_rows(const Matrix& m);

/// Left inverse of an injective matrix; throws ShapeError otherwise.
Matrix left_inverse(const Matrix& m);

/// Solves m * x = rhs column by column (canonical particular solution);
/// false when inconsistent.
bool try_solve(const Matrix& m, const Matrix& rhs, Matrix& out);

struct Constraint {
  Matrix lhs;
  Matrix rhs;  // one column
};

struct Feasible {
  Matrix particular;  // one column, free variables set to zero
  Matrix nullspace;   // columns
};

struct Infeasible {
  std::size_t rank_deficit = 0;  // inconsistent rows of the reduced system
};

using AffineResult = std::variant<Feasible, Infeasible>;

/// Solves the stacked system of every constraint block.
AffineResult solve_affine(const std::vector<Constraint>& constraints);

/// Solves a single stacked system directly.
AffineResult solve_affine(const Matrix& lhs, const Matrix& rhs);

/// Row-major vectorisation helpers for matrix unknowns.
Matrix vec(const Matrix& m);
Matrix unvec(const Matrix& v, std::size_t rows, std::size_t cols);
/// The matrix of X -> p * X * s on row-major vectorisations: kron(p, s^T).
Matrix linearize(const Matrix& p, const Matrix& s);

}  // namespace coringlab::la
