#include "coringlab/exactla.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace coringlab::la {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Row reduction of lhs carried along on rhs. Pivots are only taken in lhs.
struct Reduced {
  Matrix lhs;
  Matrix rhs;
  std::vector<std::size_t> pivots;
};

Reduced reduce(Matrix lhs, Matrix rhs) {
  const std::size_t rows = lhs.rows();
  const std::size_t cols = lhs.cols();
  const std::size_t rcols = rhs.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && lhs(sel, c).is_zero()) ++sel;
    if (sel == rows) continue;
    if (sel != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(lhs(sel, j), lhs(r, j));
      for (std::size_t j = 0; j < rcols; ++j) std::swap(rhs(sel, j), rhs(r, j));
    }
    const Scalar inv = lhs(r, c).inverse();
    if (!inv.is_one()) {
      for (std::size_t j = c; j < cols; ++j) {
        if (!lhs(r, j).is_zero()) lhs(r, j) *= inv;
      }
      for (std::size_t j = 0; j < rcols; ++j) {
        if (!rhs(r, j).is_zero()) rhs(r, j) *= inv;
      }
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || lhs(i, c).is_zero()) continue;
      const Scalar factor = lhs(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (!lhs(r, j).is_zero()) lhs(i, j) -= factor * lhs(r, j);
      }
      for (std::size_t j = 0; j < rcols; ++j) {
        if (!rhs(r, j).is_zero()) rhs(i, j) -= factor * rhs(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(lhs), std::move(rhs), std::move(pivots)};
}

}  // namespace

// ---------------------------------------------------------------- Field

Field Field::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 62) || !is_prime(p)) {
    throw ShapeError("field modulus " + std::to_string(p) + " is not a supported prime");
  }
  return Field(p);
}

Field Field::parse(const std::string& text) {
  if (text == "Q") return rationals();
  if (text.rfind("Fp:", 0) == 0) {
    const std::string digits = text.substr(3);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      throw ShapeError("malformed field '" + text + "'");
    }
    return prime(std::stoull(digits));
  }
  throw ShapeError("unknown field '" + text + "' (expected \"Q\" or \"Fp:<p>\")");
}

std::string Field::name() const {
  return is_rational() ? std::string("Q") : "Fp:" + std::to_string(modulus_);
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long long v) const {
  if (is_rational()) return Scalar::rational(mpq_class(static_cast<long>(v)));
  long long m = static_cast<long long>(modulus_);
  long long r = v % m;
  if (r < 0) r += m;
  return Scalar::residue(static_cast<std::uint64_t>(r), modulus_);
}

Scalar Field::parse_scalar(const std::string& text) const {
  if (text.empty()) throw ShapeError("empty scalar");
  if (is_rational()) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw ShapeError("malformed rational '" + text + "'");
    if (q.get_den() == 0) throw ShapeError("zero denominator in '" + text + "'");
    q.canonicalize();
    return Scalar::rational(q);
  }
  mpz_class z;
  if (text.find('/') != std::string::npos || z.set_str(text, 10) != 0) {
    throw ShapeError("malformed residue '" + text + "'");
  }
  mpz_class m(std::to_string(modulus_));
  mpz_class r = z % m;
  if (r < 0) r += m;
  return Scalar::residue(std::stoull(r.get_str()), modulus_);
}

// ---------------------------------------------------------------- Scalar

Scalar Scalar::rational(const mpq_class& q) {
  Scalar s;
  s.q_ = q;
  s.q_.canonicalize();
  return s;
}

Scalar Scalar::residue(std::uint64_t value, std::uint64_t p) {
  Scalar s;
  s.p_ = p;
  s.r_ = value % p;
  return s;
}

Field Scalar::field() const { return Field(p_); }

bool Scalar::is_zero() const { return p_ == 0 ? sgn(q_) == 0 : r_ == 0; }

bool Scalar::is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }

std::string Scalar::to_string() const {
  if (p_ != 0) return std::to_string(r_);
  return q_.get_str();
}

void Scalar::check_same(const Scalar& o) const {
  if (p_ != o.p_) {
    throw FieldMismatch("mixed-field arithmetic: " + field().name() + " vs " + o.field().name());
  }
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (p_ == 0) {
    s.q_ = -q_;
  } else {
    s.r_ = r_ == 0 ? 0 : p_ - r_;
  }
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ShapeError("division by zero");
  Scalar s = *this;
  if (p_ == 0) {
    s.q_ = 1 / q_;
  } else {
    s.r_ = powmod(r_, p_ - 2, p_);
  }
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (p_ == 0) {
    q_ += o.q_;
  } else {
    r_ += o.r_;
    if (r_ >= p_) r_ -= p_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (p_ == 0) {
    q_ -= o.q_;
  } else {
    r_ = r_ >= o.r_ ? r_ - o.r_ : r_ + p_ - o.r_;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (p_ == 0) {
    q_ *= o.q_;
  } else {
    r_ = mulmod(r_, o.r_, p_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same(o);
  return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.check_same(b);
  return a.p_ == 0 ? a.q_ == b.q_ : a.r_ == b.r_;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, f.zero()) {}

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Matrix Matrix::column(Field f, const std::vector<Scalar>& entries) {
  Matrix m(f, entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
  return m;
}

Matrix Matrix::from_ints(Field f, const std::vector<std::vector<long long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ShapeError("ragged integer matrix");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = f.from_int(rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_rows(Field f, std::size_t cols, const std::vector<std::vector<Scalar>>& rows) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ShapeError("ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) {
      if (rows[i][j].field() != f) throw FieldMismatch("matrix entry from a different field");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
    }
  }
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Matrix Matrix::col(std::size_t j) const { return block(0, j, rows_, 1); }
Matrix Matrix::row(std::size_t i) const { return block(i, 0, 1, cols_); }

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
  Matrix out(field_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < idx.size(); ++k) out(i, k) = (*this)(i, idx[k]);
  }
  return out;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix out(field_, idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    for (std::size_t j = 0; j < cols_; ++j) out(k, j) = (*this)(idx[k], j);
  }
  return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block out of range");
  Matrix out(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  }
  return out;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix out = *this;
  for (auto& x : out.data_) {
    if (!x.is_zero()) x *= s;
  }
  return out;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix sum shape mismatch");
  if (field_ != o.field_) throw FieldMismatch("matrix sum across fields");
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!o.data_[k].is_zero()) data_[k] += o.data_[k];
  }
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix difference shape mismatch");
  if (field_ != o.field_) throw FieldMismatch("matrix difference across fields");
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!o.data_[k].is_zero()) data_[k] -= o.data_[k];
  }
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) {
    throw ShapeError("product shape mismatch: " + std::to_string(a.rows_) + "x" +
                     std::to_string(a.cols_) + " * " + std::to_string(b.rows_) + "x" +
                     std::to_string(b.cols_));
  }
  if (a.field_ != b.field_) throw FieldMismatch("matrix product across fields");
  Matrix c(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& y = b(k, j);
        if (!y.is_zero()) c(i, j) += x * y;
      }
    }
  }
  return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.field_ != b.field_) return false;
  return a.data_ == b.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << "]";
  }
  return os << "]";
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) throw FieldMismatch("kron across fields");
  Matrix out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& x = a(i, j);
      if (x.is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          if (!b(k, l).is_zero()) out(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
        }
      }
    }
  }
  return out;
}

Matrix hstack(const std::vector<Matrix>& parts) {
  if (parts.empty()) throw ShapeError("hstack of nothing");
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != parts.front().rows()) throw ShapeError("hstack row mismatch");
    cols += p.cols();
  }
  Matrix out(parts.front().field(), parts.front().rows(), cols);
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rows(); ++i) {
      for (std::size_t j = 0; j < p.cols(); ++j) out(i, off + j) = p(i, j);
    }
    off += p.cols();
  }
  return out;
}

Matrix vstack(const std::vector<Matrix>& parts) {
  if (parts.empty()) throw ShapeError("vstack of nothing");
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != parts.front().cols()) throw ShapeError("vstack column mismatch");
    rows += p.rows();
  }
  Matrix out(parts.front().field(), rows, parts.front().cols());
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rows(); ++i) {
      for (std::size_t j = 0; j < p.cols(); ++j) out(off + i, j) = p(i, j);
    }
    off += p.rows();
  }
  return out;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  }
  return out;
}

// ---------------------------------------------------------------- elimination

Rref rref(const Matrix& m) {
  Reduced r = reduce(m, Matrix(m.field(), m.rows(), 0));
  return {std::move(r.lhs), std::move(r.pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Matrix kernel_basis(const Matrix& m) {
  const Rref r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) free.push_back(j);
  }
  Matrix basis(m.field(), n, free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], k) = m.field().one();
    for (std::size_t row = 0; row < r.pivots.size(); ++row) {
      const Scalar& x = r.form(row, free[k]);
      if (!x.is_zero()) basis(r.pivots[row], k) = -x;
    }
  }
  return basis;
}

std::vector<std::size_t> independent_rows(const Matrix& m) {
  const Rref r = rref(m.transpose());
  return r.pivots;
}

Matrix left_inverse(const Matrix& m) {
  // Rows selected by the RREF pivots of the transpose form an invertible
  // square block.
  const std::vector<std::size_t> rows = independent_rows(m);
  if (rows.size() != m.cols()) throw ShapeError("left_inverse of a non-injective matrix");
  const Matrix square = m.select_rows(rows);
  Matrix inv;
  if (!try_solve(square, Matrix::identity(m.field(), m.cols()), inv)) {
    throw ShapeError("left_inverse: singular block");
  }
  Matrix out(m.field(), m.cols(), m.rows());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t i = 0; i < m.cols(); ++i) out(i, rows[k]) = inv(i, k);
  }
  return out;
}

bool try_solve(const Matrix& m, const Matrix& rhs, Matrix& out) {
  if (m.rows() != rhs.rows()) throw ShapeError("try_solve row mismatch");
  Reduced r = reduce(m, rhs);
  const std::size_t rk = r.pivots.size();
  for (std::size_t i = rk; i < r.rhs.rows(); ++i) {
    for (std::size_t j = 0; j < r.rhs.cols(); ++j) {
      if (!r.rhs(i, j).is_zero()) return false;
    }
  }
  out = Matrix(m.field(), m.cols(), rhs.cols());
  for (std::size_t i = 0; i < rk; ++i) {
    for (std::size_t j = 0; j < rhs.cols(); ++j) out(r.pivots[i], j) = r.rhs(i, j);
  }
  return true;
}

AffineResult solve_affine(const Matrix& lhs, const Matrix& rhs) {
  if (rhs.cols() != 1 || rhs.rows() != lhs.rows()) throw ShapeError("solve_affine: rhs must be a column matching lhs rows");
  Reduced r = reduce(lhs, rhs);
  const std::size_t rk = r.pivots.size();
  std::size_t bad = 0;
  for (std::size_t i = rk; i < r.rhs.rows(); ++i) {
    if (!r.rhs(i, 0).is_zero()) ++bad;
  }
  if (bad > 0) return Infeasible{bad};
  Matrix x(lhs.field(), lhs.cols(), 1);
  for (std::size_t i = 0; i < rk; ++i) x(r.pivots[i], 0) = r.rhs(i, 0);
  // Nullspace from the already reduced lhs.
  const std::size_t n = lhs.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) free.push_back(j);
  }
  Matrix ns(lhs.field(), n, free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    ns(free[k], k) = lhs.field().one();
    for (std::size_t row = 0; row < rk; ++row) {
      const Scalar& v = r.lhs(row, free[k]);
      if (!v.is_zero()) ns(r.pivots[row], k) = -v;
    }
  }
  return Feasible{std::move(x), std::move(ns)};
}

AffineResult solve_affine(const std::vector<Constraint>& constraints) {
  if (constraints.empty()) throw ShapeError("solve_affine: no constraints");
  const std::size_t n = constraints.front().lhs.cols();
  std::vector<Matrix> lhs;
  std::vector<Matrix> rhs;
  for (const auto& c : constraints) {
    if (c.lhs.cols() != n) throw ShapeError("solve_affine: unknown dimension differs between blocks");
    if (c.rhs.cols() != 1 || c.rhs.rows() != c.lhs.rows()) throw ShapeError("solve_affine: bad rhs block");
    if (c.lhs.rows() == 0) continue;
    lhs.push_back(c.lhs);
    rhs.push_back(c.rhs);
  }
  const Field f = constraints.front().lhs.field();
  if (lhs.empty()) return solve_affine(Matrix(f, 0, n), Matrix(f, 0, 1));
  return solve_affine(vstack(lhs), vstack(rhs));
}

Matrix vec(const Matrix& m) {
  Matrix v(m.field(), m.rows() * m.cols(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) v(i * m.cols() + j, 0) = m(i, j);
  }
  return v;
}

Matrix unvec(const Matrix& v, std::size_t rows, std::size_t cols) {
  if (v.rows() != rows * cols || v.cols() != 1) throw ShapeError("unvec shape mismatch");
  Matrix m(v.field(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = v(i * cols + j, 0);
  }
  return m;
}

Matrix linearize(const Matrix& p, const Matrix& s) { return kron(p, s.transpose()); }

}  // namespace coringlab::la
