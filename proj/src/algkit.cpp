#include "coringlab/algkit.hpp"

#include <sstream>

namespace coringlab {

void ValidationReport::append(const ValidationReport& other, const std::string& prefix) {
  for (const auto& v : other.violations) add(prefix + v.axiom, v.witness);
}

std::string ValidationReport::summary() const {
  if (ok()) return "valid";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].axiom;
    if (!violations[i].witness.empty()) os << " at " << violations[i].witness;
  }
  return os.str();
}

}  // namespace coringlab

namespace coringlab::alg {

namespace {

std::string tuple(std::initializer_list<std::size_t> idx) {
  std::string s = "(";
  bool first = true;
  for (auto i : idx) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + ")";
}

void require_square(const Matrix& m, std::size_t n, const char* what) {
  if (m.rows() != n || m.cols() != n) {
    throw ShapeError(std::string(what) + ": expected " + std::to_string(n) + "x" + std::to_string(n) +
                     " matrix, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

Matrix combine(Field f, std::size_t n, const std::vector<Matrix>& basis, const Matrix& x) {
  if (x.rows() != basis.size() || x.cols() != 1) throw ShapeError("element has wrong length");
  Matrix out(f, n, n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!x(i, 0).is_zero()) out += basis[i].scaled(x(i, 0));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Algebra

Algebra Algebra::from_structure(Field f, const std::vector<std::vector<std::vector<Scalar>>>& mult,
                                const Matrix& unit) {
  const std::size_t n = mult.size();
  if (n == 0) throw ShapeError("algebra must have positive dimension");
  if (unit.rows() != n || unit.cols() != 1) throw ShapeError("unit must be a column of length dim");
  if (unit.field() != f) throw FieldMismatch("unit over a different field");
  Data d;
  d.field = f;
  d.dim = n;
  d.left.assign(n, Matrix(f, n, n));
  d.right.assign(n, Matrix(f, n, n));
  for (std::size_t i = 0; i < n; ++i) {
    if (mult[i].size() != n) throw ShapeError("multiplication tensor is not cubic");
    for (std::size_t j = 0; j < n; ++j) {
      if (mult[i][j].size() != n) throw ShapeError("multiplication tensor is not cubic");
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& c = mult[i][j][k];
        if (c.field() != f) throw FieldMismatch("structure constant over a different field");
        d.left[i](k, j) = c;
        d.right[j](k, i) = c;
      }
    }
  }
  d.unit = unit;
  Algebra a;
  a.data_ = std::make_shared<const Data>(std::move(d));
  return a;
}

Algebra Algebra::ground(Field f) {
  return from_structure(f, {{{f.one()}}}, Matrix::identity(f, 1));
}

Algebra Algebra::diagonal(Field f, std::size_t n) {
  std::vector<std::vector<std::vector<Scalar>>> m(
      n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, f.zero())));
  Matrix u(f, n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i][i] = f.one();
    u(i, 0) = f.one();
  }
  return from_structure(f, m, u);
}

Algebra Algebra::truncated_polynomial(Field f, std::size_t n) {
  std::vector<std::vector<std::vector<Scalar>>> m(
      n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, f.zero())));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; i + j < n; ++j) m[i][j][i + j] = f.one();
  }
  Matrix u(f, n, 1);
  u(0, 0) = f.one();
  return from_structure(f, m, u);
}

Algebra Algebra::matrix_algebra(Field f, std::size_t n) {
  const std::size_t d = n * n;
  std::vector<std::vector<std::vector<Scalar>>> m(
      d, std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d, f.zero())));
  Matrix u(f, d, 1);
  for (std::size_t i = 0; i < n; ++i) {
    u(i * n + i, 0) = f.one();
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) m[i * n + j][j * n + l][i * n + l] = f.one();
    }
  }
  return from_structure(f, m, u);
}

Matrix Algebra::left_mult(const Matrix& x) const { return combine(field(), dim(), data_->left, x); }

Matrix Algebra::right_mult(const Matrix& x) const { return combine(field(), dim(), data_->right, x); }

Matrix Algebra::basis_vector(std::size_t i) const {
  Matrix v(field(), dim(), 1);
  v(i, 0) = field().one();
  return v;
}

bool operator==(const Algebra& a, const Algebra& b) {
  if (a.data_ == b.data_) return true;
  if (!a.data_ || !b.data_) return false;
  return a.field() == b.field() && a.dim() == b.dim() && a.data_->left == b.data_->left &&
         a.data_->unit == b.data_->unit;
}

ValidationReport validate_algebra(const Algebra& a) {
  ValidationReport rep;
  const std::size_t n = a.dim();
  // (e_i e_j) e_k = e_i (e_j e_k), compared coefficientwise.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Matrix lhs = a.left_mult(a.left(i).col(j));
      const Matrix rhs = a.left(i) * a.left(j);
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          if (lhs(l, k) != rhs(l, k)) rep.add("associativity", tuple({i, j, k, l}));
        }
      }
    }
  }
  const Matrix lu = a.left_mult(a.unit());
  const Matrix ru = a.right_mult(a.unit());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Scalar want = k == i ? a.field().one() : a.field().zero();
      if (lu(k, i) != want) rep.add("left unit", tuple({i, k}));
      if (ru(k, i) != want) rep.add("right unit", tuple({i, k}));
    }
  }
  return rep;
}

// ---------------------------------------------------------------- AlgebraHom

AlgebraHom AlgebraHom::identity(const Algebra& a) {
  return {a, a, Matrix::identity(a.field(), a.dim())};
}

AlgebraHom AlgebraHom::unit_map(const Algebra& a) { return {Algebra::ground(a.field()), a, a.unit()}; }

AlgebraHom AlgebraHom::then(const AlgebraHom& next) const {
  if (next.source != target) throw AlgebraMismatch("composing algebra maps through different algebras");
  return {source, next.target, next.matrix * matrix};
}

ValidationReport validate_algebra_hom(const AlgebraHom& h) {
  ValidationReport rep;
  const Algebra& s = h.source;
  const Algebra& t = h.target;
  if (h.matrix.rows() != t.dim() || h.matrix.cols() != s.dim()) {
    rep.add("shape", tuple({h.matrix.rows(), h.matrix.cols()}));
    return rep;
  }
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const Matrix hi = h.matrix.col(i);
    for (std::size_t j = 0; j < s.dim(); ++j) {
      const Matrix lhs = h.matrix * s.left(i).col(j);
      const Matrix rhs = t.product(hi, h.matrix.col(j));
      if (lhs != rhs) rep.add("multiplicative", tuple({i, j}));
    }
  }
  if (h.matrix * s.unit() != t.unit()) rep.add("unital", "");
  return rep;
}

// ---------------------------------------------------------------- Bimodule

Bimodule::Bimodule(Algebra left_alg, Algebra right_alg, std::size_t dim, std::vector<Matrix> left_action,
                   std::vector<Matrix> right_action) {
  if (left_alg.field() != right_alg.field()) throw FieldMismatch("bimodule over algebras of different fields");
  if (left_action.size() != left_alg.dim() || right_action.size() != right_alg.dim()) {
    throw ShapeError("bimodule needs one action matrix per algebra basis element");
  }
  for (const auto& m : left_action) {
    require_square(m, dim, "left action");
    if (m.field() != left_alg.field()) throw FieldMismatch("left action over a different field");
  }
  for (const auto& m : right_action) {
    require_square(m, dim, "right action");
    if (m.field() != right_alg.field()) throw FieldMismatch("right action over a different field");
  }
  data_ = std::make_shared<const Data>(
      Data{std::move(left_alg), std::move(right_alg), dim, std::move(left_action), std::move(right_action)});
}

Bimodule Bimodule::regular(const Algebra& a) {
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    l.push_back(a.left(i));
    r.push_back(a.right(i));
  }
  return Bimodule(a, a, a.dim(), std::move(l), std::move(r));
}

Bimodule Bimodule::vector_space(Field f, std::size_t n) {
  const Algebra k = Algebra::ground(f);
  return Bimodule(k, k, n, {Matrix::identity(f, n)}, {Matrix::identity(f, n)});
}

Matrix Bimodule::left_by(const Matrix& x) const { return combine(field(), dim(), data_->left_action, x); }

Matrix Bimodule::right_by(const Matrix& x) const { return combine(field(), dim(), data_->right_action, x); }

bool operator==(const Bimodule& a, const Bimodule& b) {
  if (a.data_ == b.data_) return true;
  if (!a.data_ || !b.data_) return false;
  return a.dim() == b.dim() && a.left_alg() == b.left_alg() && a.right_alg() == b.right_alg() &&
         a.data_->left_action == b.data_->left_action && a.data_->right_action == b.data_->right_action;
}

ValidationReport validate_bimodule(const Bimodule& m) {
  ValidationReport rep;
  const Algebra& l = m.left_alg();
  const Algebra& r = m.right_alg();
  const Matrix id = Matrix::identity(m.field(), m.dim());
  for (std::size_t i = 0; i < l.dim(); ++i) {
    for (std::size_t j = 0; j < l.dim(); ++j) {
      if (m.left_by(l.left(i).col(j)) != m.left_action(i) * m.left_action(j)) {
        rep.add("left associativity", tuple({i, j}));
      }
    }
  }
  if (m.left_by(l.unit()) != id) rep.add("left unit", "");
  for (std::size_t i = 0; i < r.dim(); ++i) {
    for (std::size_t j = 0; j < r.dim(); ++j) {
      if (m.right_by(r.left(i).col(j)) != m.right_action(j) * m.right_action(i)) {
        rep.add("right associativity", tuple({i, j}));
      }
    }
  }
  if (m.right_by(r.unit()) != id) rep.add("right unit", "");
  for (std::size_t i = 0; i < l.dim(); ++i) {
    for (std::size_t j = 0; j < r.dim(); ++j) {
      if (m.left_action(i) * m.right_action(j) != m.right_action(j) * m.left_action(i)) {
        rep.add("actions commute", tuple({i, j}));
      }
    }
  }
  return rep;
}

Bimodule restrict_left(const Bimodule& m, const AlgebraHom& along) {
  if (along.target != m.left_alg()) throw AlgebraMismatch("restriction along a map into the wrong algebra");
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < along.source.dim(); ++i) l.push_back(m.left_by(along.matrix.col(i)));
  for (std::size_t j = 0; j < m.right_alg().dim(); ++j) r.push_back(m.right_action(j));
  return Bimodule(along.source, m.right_alg(), m.dim(), std::move(l), std::move(r));
}

Bimodule restrict_right(const Bimodule& m, const AlgebraHom& along) {
  if (along.target != m.right_alg()) throw AlgebraMismatch("restriction along a map into the wrong algebra");
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < m.left_alg().dim(); ++i) l.push_back(m.left_action(i));
  for (std::size_t j = 0; j < along.source.dim(); ++j) r.push_back(m.right_by(along.matrix.col(j)));
  return Bimodule(m.left_alg(), along.source, m.dim(), std::move(l), std::move(r));
}

Bimodule as_right_module(const Bimodule& m) { return restrict_left(m, AlgebraHom::unit_map(m.left_alg())); }

Bimodule as_left_module(const Bimodule& m) { return restrict_right(m, AlgebraHom::unit_map(m.right_alg())); }

Bimodule direct_sum(const Bimodule& a, const Bimodule& b) {
  if (a.left_alg() != b.left_alg() || a.right_alg() != b.right_alg()) {
    throw AlgebraMismatch("direct sum of bimodules over different algebras");
  }
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < a.left_alg().dim(); ++i) l.push_back(la::direct_sum(a.left_action(i), b.left_action(i)));
  for (std::size_t j = 0; j < a.right_alg().dim(); ++j) {
    r.push_back(la::direct_sum(a.right_action(j), b.right_action(j)));
  }
  return Bimodule(a.left_alg(), a.right_alg(), a.dim() + b.dim(), std::move(l), std::move(r));
}

Bimodule submodule(const Bimodule& m, const Matrix& basis) {
  if (basis.rows() != m.dim()) throw ShapeError("submodule basis has wrong length");
  const std::size_t k = basis.cols();
  std::vector<Matrix> l, r;
  auto restrict_to = [&](const Matrix& act) {
    if (k == 0) return Matrix(m.field(), 0, 0);
    Matrix x;
    if (!la::try_solve(basis, act * basis, x)) throw ShapeError("subspace is not invariant under the action");
    return x;
  };
  if (k > 0 && la::rank(basis) != k) throw ShapeError("submodule basis is not independent");
  for (std::size_t i = 0; i < m.left_alg().dim(); ++i) l.push_back(restrict_to(m.left_action(i)));
  for (std::size_t j = 0; j < m.right_alg().dim(); ++j) r.push_back(restrict_to(m.right_action(j)));
  return Bimodule(m.left_alg(), m.right_alg(), k, std::move(l), std::move(r));
}

// ---------------------------------------------------------------- maps

BimoduleMap BimoduleMap::identity(const Bimodule& m) { return {m, m, Matrix::identity(m.field(), m.dim())}; }

bool is_bimodule_map(const Bimodule& source, const Bimodule& target, const Matrix& f) {
  if (f.rows() != target.dim() || f.cols() != source.dim()) return false;
  if (source.left_alg() != target.left_alg() || source.right_alg() != target.right_alg()) return false;
  for (std::size_t i = 0; i < source.left_alg().dim(); ++i) {
    if (f * source.left_action(i) != target.left_action(i) * f) return false;
  }
  for (std::size_t j = 0; j < source.right_alg().dim(); ++j) {
    if (f * source.right_action(j) != target.right_action(j) * f) return false;
  }
  return true;
}

ValidationReport validate_bimodule_map(const BimoduleMap& f) {
  ValidationReport rep;
  const Bimodule& s = f.source;
  const Bimodule& t = f.target;
  if (f.matrix.rows() != t.dim() || f.matrix.cols() != s.dim()) {
    rep.add("shape", tuple({f.matrix.rows(), f.matrix.cols()}));
    return rep;
  }
  if (s.left_alg() != t.left_alg() || s.right_alg() != t.right_alg()) {
    rep.add("algebras differ", "");
    return rep;
  }
  for (std::size_t i = 0; i < s.left_alg().dim(); ++i) {
    if (f.matrix * s.left_action(i) != t.left_action(i) * f.matrix) rep.add("left linearity", tuple({i}));
  }
  for (std::size_t j = 0; j < s.right_alg().dim(); ++j) {
    if (f.matrix * s.right_action(j) != t.right_action(j) * f.matrix) rep.add("right linearity", tuple({j}));
  }
  return rep;
}

// ---------------------------------------------------------------- tensor products

TensorSpace tensor_over(const Bimodule& m, const Bimodule& n) {
  if (m.right_alg() != n.left_alg()) throw AlgebraMismatch("tensor factors disagree on the middle algebra");
  const Field f = m.field();
  const std::size_t dm = m.dim(), dn = n.dim(), amb = dm * dn;
  const Matrix im = Matrix::identity(f, dm), in = Matrix::identity(f, dn);

  std::vector<Matrix> rel_rows;
  for (std::size_t t = 0; t < m.right_alg().dim(); ++t) {
    Matrix d = kron(m.right_action(t), in) - kron(im, n.left_action(t));
    if (!d.is_zero()) rel_rows.push_back(d.transpose());
  }
  Matrix relations(f, 0, amb);
  std::vector<std::size_t> pivots;
  if (!rel_rows.empty()) {
    la::Rref r = la::rref(la::vstack(rel_rows));
    pivots = r.pivots;
    std::vector<std::size_t> keep(pivots.size());
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
    relations = r.form.select_rows(keep);
  }

  std::vector<std::size_t> free_cols;
  std::vector<bool> is_pivot(amb, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t c = 0; c < amb; ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  const std::size_t q = free_cols.size();
  Matrix proj(f, q, amb), section(f, amb, q);
  for (std::size_t k = 0; k < q; ++k) {
    proj(k, free_cols[k]) = f.one();
    section(free_cols[k], k) = f.one();
  }
  for (std::size_t p = 0; p < pivots.size(); ++p) {
    for (std::size_t k = 0; k < q; ++k) {
      const Scalar& v = relations(p, free_cols[k]);
      if (!v.is_zero()) proj(k, pivots[p]) = -v;
    }
  }

  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < m.left_alg().dim(); ++i) l.push_back(proj * (kron(m.left_action(i), in) * section));
  for (std::size_t j = 0; j < n.right_alg().dim(); ++j) {
    r.push_back(proj * (kron(im, n.right_action(j)) * section));
  }
  Bimodule quotient(m.left_alg(), n.right_alg(), q, std::move(l), std::move(r));
  return {m, n, amb, std::move(relations), std::move(pivots), std::move(proj), std::move(section),
          std::move(quotient)};
}

Matrix induced_map(const Matrix& f, const Matrix& g, const TensorSpace& src, const TensorSpace& tgt) {
  if (f.cols() != src.left.dim() || f.rows() != tgt.left.dim() || g.cols() != src.right.dim() ||
      g.rows() != tgt.right.dim()) {
    throw ShapeError("induced map factors do not match the tensor spaces");
  }
  const Matrix pk = tgt.proj * kron(f, g);
  if (src.relations.rows() > 0 && !(pk * src.relations.transpose()).is_zero()) {
    throw NotBalanced("map does not descend to the balanced tensor product");
  }
  return pk * src.section;
}

Matrix induced_map(const BimoduleMap& f, const BimoduleMap& g, const TensorSpace& src, const TensorSpace& tgt) {
  return induced_map(f.matrix, g.matrix, src, tgt);
}

Tensor::Tensor(const Bimodule& m) {
  const Matrix id = Matrix::identity(m.field(), m.dim());
  data_ = std::make_shared<const Data>(Data{{m}, id, id, m, nullptr});
}

Tensor tensor(const Tensor& a, const Tensor& b) {
  auto step = std::make_shared<const TensorSpace>(tensor_over(a.quotient(), b.quotient()));
  Tensor::Data d;
  d.factors = a.factors();
  d.factors.insert(d.factors.end(), b.factors().begin(), b.factors().end());
  d.proj = a.factors().size() + b.factors().size() == 2 ? step->proj : step->proj * kron(a.proj(), b.proj());
  d.section = a.factors().size() + b.factors().size() == 2 ? step->section : kron(a.section(), b.section()) * step->section;
  d.quotient = step->quotient;
  d.step = std::move(step);
  Tensor t;
  t.data_ = std::make_shared<const Tensor::Data>(std::move(d));
  return t;
}

Tensor chain(const std::vector<Bimodule>& factors) {
  if (factors.empty()) throw ShapeError("tensor chain of no factors");
  Tensor t(factors.front());
  for (std::size_t i = 1; i < factors.size(); ++i) t = tensor(t, Tensor(factors[i]));
  return t;
}

Tensor chain_right(const std::vector<Bimodule>& factors) {
  if (factors.empty()) throw ShapeError("tensor chain of no factors");
  Tensor t(factors.back());
  for (std::size_t i = factors.size() - 1; i-- > 0;) t = tensor(Tensor(factors[i]), t);
  return t;
}

Block Block::identity(const Bimodule& m) { return {1, 1, Matrix::identity(m.field(), m.dim())}; }

Block Block::map(const Matrix& m) { return {1, 1, m}; }

Block Block::into(const Tensor& target, const Matrix& m) {
  return {1, target.factors().size(), target.section() * m};
}

Block Block::out_of(const Tensor& source, const Matrix& m) {
  return {source.factors().size(), 1, m * source.proj()};
}

Block Block::between(const Tensor& source, const Tensor& target, const Matrix& m) {
  return {source.factors().size(), target.factors().size(), target.section() * (m * source.proj())};
}

namespace {

Matrix block_kron(const Tensor& src, const Tensor& tgt, const std::vector<Block>& blocks) {
  if (blocks.empty()) throw ShapeError("tensor map needs at least one block");
  std::size_t si = 0, ti = 0;
  Matrix k;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Block& blk = blocks[b];
    if (si + blk.src_factors > src.factors().size() || ti + blk.tgt_factors > tgt.factors().size()) {
      throw ShapeError("tensor map blocks cover more factors than exist");
    }
    std::size_t sd = 1, td = 1;
    for (std::size_t i = 0; i < blk.src_factors; ++i) sd *= src.factors()[si + i].dim();
    for (std::size_t i = 0; i < blk.tgt_factors; ++i) td *= tgt.factors()[ti + i].dim();
    if (blk.ambient.rows() != td || blk.ambient.cols() != sd) {
      throw ShapeError("tensor map block " + std::to_string(b) + " is " + std::to_string(blk.ambient.rows()) +
                       "x" + std::to_string(blk.ambient.cols()) + ", expected " + std::to_string(td) + "x" +
                       std::to_string(sd));
    }
    k = b == 0 ? blk.ambient : kron(k, blk.ambient);
    si += blk.src_factors;
    ti += blk.tgt_factors;
  }
  if (si != src.factors().size() || ti != tgt.factors().size()) {
    throw ShapeError("tensor map blocks do not cover every factor");
  }
  return k;
}

}  // namespace

Matrix tensor_map(const Tensor& src, const Tensor& tgt, const std::vector<Block>& blocks) {
  const Matrix k = block_kron(src, tgt, blocks);
  return tgt.proj() * (k * src.section());
}

Matrix tensor_map_checked(const Tensor& src, const Tensor& tgt, const std::vector<Block>& blocks) {
  const Matrix k = block_kron(src, tgt, blocks);
  const Matrix pk = tgt.proj() * k;
  const Matrix rel = la::kernel_basis(src.proj());
  if (rel.cols() > 0 && !(pk * rel).is_zero()) {
    throw NotBalanced("map does not descend to the balanced tensor product");
  }
  return pk * src.section();
}

Matrix rebracket(const Tensor& src, const Tensor& tgt) {
  if (src.factors() != tgt.factors()) throw AlgebraMismatch("rebracketing different factors");
  return tgt.proj() * src.section();
}

Matrix unit_right(const Bimodule& m, const TensorSpace& ma) {
  if (ma.left != m || ma.right.dim() != m.right_alg().dim()) throw ShapeError("unit_right: wrong tensor space");
  return ma.proj * kron(Matrix::identity(m.field(), m.dim()), m.right_alg().unit());
}

Matrix unit_left(const Bimodule& m, const TensorSpace& am) {
  if (am.right != m || am.left.dim() != m.left_alg().dim()) throw ShapeError("unit_left: wrong tensor space");
  return am.proj * kron(m.left_alg().unit(), Matrix::identity(m.field(), m.dim()));
}

Matrix act_right_ambient(const Bimodule& m) {
  const std::size_t d = m.dim(), a = m.right_alg().dim();
  Matrix out(m.field(), d, d * a);
  for (std::size_t j = 0; j < a; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t r = 0; r < d; ++r) out(r, i * a + j) = m.right_action(j)(r, i);
    }
  }
  return out;
}

Matrix act_left_ambient(const Bimodule& m) {
  const std::size_t d = m.dim(), a = m.left_alg().dim();
  Matrix out(m.field(), d, a * d);
  for (std::size_t j = 0; j < a; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t r = 0; r < d; ++r) out(r, j * d + i) = m.left_action(j)(r, i);
    }
  }
  return out;
}

// ---------------------------------------------------------------- predicates

BimoduleMap equalizer(const BimoduleMap& f, const BimoduleMap& g) {
  if (f.source != g.source || f.target != g.target) throw AlgebraMismatch("equalizer of non-parallel maps");
  const Matrix k = la::kernel_basis(f.matrix - g.matrix);
  const Matrix inc = k.cols() == 0 ? Matrix(f.source.field(), f.source.dim(), 0) : k;
  return {submodule(f.source, inc), f.source, inc};
}

bool preserves_equalizer(const Bimodule& z, const BimoduleMap& f, const BimoduleMap& g, const BimoduleMap& k,
                         Side side) {
  if (f.matrix.rows() != g.matrix.rows() || f.matrix.cols() != g.matrix.cols() ||
      k.matrix.rows() != f.matrix.cols()) {
    throw ShapeError("equalizer data has inconsistent shapes");
  }
  const Matrix diff = f.matrix - g.matrix;
  const Matrix iz = Matrix::identity(z.field(), z.dim());
  Matrix fg, kz;
  std::size_t ker_dim = 0, x_dim = 0;
  if (side == Side::Right) {
    const TensorSpace tx = tensor_over(f.source, z), ty = tensor_over(f.target, z), tk = tensor_over(k.source, z);
    fg = induced_map(diff, iz, tx, ty);
    kz = induced_map(k.matrix, iz, tk, tx);
    ker_dim = tk.dim();
    x_dim = tx.dim();
  } else {
    const TensorSpace tx = tensor_over(z, f.source), ty = tensor_over(z, f.target), tk = tensor_over(z, k.source);
    fg = induced_map(iz, diff, tx, ty);
    kz = induced_map(iz, k.matrix, tk, tx);
    ker_dim = tk.dim();
    x_dim = tx.dim();
  }
  const std::size_t rk = la::rank(kz);
  const std::size_t nullity = x_dim - la::rank(fg);
  const bool composite_zero = kz.cols() == 0 || fg.rows() == 0 || (fg * kz).is_zero();
  return composite_zero && rk == ker_dim && rk == nullity;
}

bool preserves_equalizer(const Bimodule& z, const BimoduleMap& f, const BimoduleMap& g, Side side) {
  return preserves_equalizer(z, f, g, equalizer(f, g), side);
}

ProjectivityResult projectivity(const Bimodule& n) {
  const Algebra& a = n.left_alg();
  const Field f = n.field();
  const std::size_t d = n.dim(), da = a.dim(), free_dim = d * da;
  ProjectivityResult out;
  if (d == 0) {
    out.projective = true;
    return out;
  }
  // Evaluation A^d -> N; coordinate i*da + t is e_t in slot i.
  Matrix ev(f, d, free_dim);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t t = 0; t < da; ++t) {
      for (std::size_t r = 0; r < d; ++r) ev(r, i * da + t) = n.left_action(t)(r, i);
    }
  }
  // Unknown s: N -> A^d, left A-linear with ev * s = id.
  std::vector<la::Constraint> cs;
  const Matrix id_d = Matrix::identity(f, d), id_free = Matrix::identity(f, free_dim);
  for (std::size_t t = 0; t < da; ++t) {
    const Matrix lfree = kron(id_d, a.left(t));
    const Matrix lhs = la::linearize(id_free, n.left_action(t)) - la::linearize(lfree, id_d);
    cs.push_back({lhs, Matrix(f, lhs.rows(), 1)});
  }
  cs.push_back({la::linearize(ev, id_d), la::vec(id_d)});
  auto res = la::solve_affine(cs);
  if (!std::holds_alternative<la::Feasible>(res)) return out;
  const Matrix s = la::unvec(std::get<la::Feasible>(res).particular, free_dim, d);
  out.projective = true;
  for (std::size_t i = 0; i < d; ++i) out.dual_basis.push_back(s.block(i * da, 0, da, d));
  return out;
}

}  // namespace coringlab::alg
