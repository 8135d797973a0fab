#pragma once

// Finite-dimensional algebras by structure constants, bimodules given by
// action matrices, and balanced tensor products over an algebra.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coringlab/exactla.hpp"

namespace coringlab {

/// One failed identity of a validator, with the basis indices that witness it.
struct Violation {
  std::string axiom;
  std::string witness;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string axiom, std::string witness) {
    violations.push_back({std::move(axiom), std::move(witness)});
  }
  void append(const ValidationReport& other, const std::string& prefix = "");
  std::string summary() const;
};

}  // namespace coringlab

namespace coringlab::alg {

using la::Field;
using la::Matrix;
using la::Scalar;

/// A unital associative algebra. Basis products are stored as left
/// multiplication matrices: column j of left(i) is e_i * e_j.
/// Immutable; copies share storage.
class Algebra {
 public:
  Algebra() = default;

  /// mult[i][j][k] is the coefficient of e_k in e_i * e_j.
  static Algebra from_structure(Field f, const std::vector<std::vector<std::vector<Scalar>>>& mult,
                                const Matrix& unit);
  /// The ground field viewed as a one-dimensional algebra.
  static Algebra ground(Field f);
  /// K^n with componentwise product.
  static Algebra diagonal(Field f, std::size_t n);
  /// K[x]/(x^n) in the basis 1, x, ..., x^(n-1).
  static Algebra truncated_polynomial(Field f, std::size_t n);
  /// Full matrix algebra M_n(K), basis e_ij at index i*n+j.
  static Algebra matrix_algebra(Field f, std::size_t n);

  Field field() const { return data_->field; }
  std::size_t dim() const { return data_->dim; }
  const Matrix& left(std::size_t i) const { return data_->left[i]; }
  const Matrix& right(std::size_t j) const { return data_->right[j]; }
  const Matrix& unit() const { return data_->unit; }
  Scalar structure(std::size_t i, std::size_t j, std::size_t k) const { return data_->left[i](k, j); }

  /// Left (right) multiplication by the element with coordinates x.
  Matrix left_mult(const Matrix& x) const;
  Matrix right_mult(const Matrix& x) const;
  Matrix product(const Matrix& x, const Matrix& y) const { return left_mult(x) * y; }
  Matrix basis_vector(std::size_t i) const;

  bool same(const Algebra& o) const { return data_ == o.data_; }
  friend bool operator==(const Algebra& a, const Algebra& b);
  friend bool operator!=(const Algebra& a, const Algebra& b) { return !(a == b); }

 private:
  struct Data {
    Field field;
    std::size_t dim = 0;
    std::vector<Matrix> left;
    std::vector<Matrix> right;
    Matrix unit;
  };
  std::shared_ptr<const Data> data_;
};

ValidationReport validate_algebra(const Algebra& a);

struct AlgebraHom {
  Algebra source;
  Algebra target;
  Matrix matrix;  // dim(target) x dim(source)

  static AlgebraHom identity(const Algebra& a);
  /// The structure map K -> A.
  static AlgebraHom unit_map(const Algebra& a);
  AlgebraHom then(const AlgebraHom& next) const;
};

ValidationReport validate_algebra_hom(const AlgebraHom& h);

/// An A'-A bimodule: left_action(i) is the matrix of e_i of A', and
/// right_action(j) the matrix of m -> m * e_j for e_j of A.
class Bimodule {
 public:
  Bimodule() = default;
  Bimodule(Algebra left_alg, Algebra right_alg, std::size_t dim, std::vector<Matrix> left_action,
           std::vector<Matrix> right_action);

  /// A as an A-A bimodule.
  static Bimodule regular(const Algebra& a);
  /// K^n with trivial ground-field actions on both sides.
  static Bimodule vector_space(Field f, std::size_t n);

  const Algebra& left_alg() const { return data_->left_alg; }
  const Algebra& right_alg() const { return data_->right_alg; }
  std::size_t dim() const { return data_->dim; }
  Field field() const { return data_->left_alg.field(); }
  const Matrix& left_action(std::size_t i) const { return data_->left_action[i]; }
  const Matrix& right_action(std::size_t j) const { return data_->right_action[j]; }
  /// Action of an arbitrary algebra element (coordinate column).
  Matrix left_by(const Matrix& x) const;
  Matrix right_by(const Matrix& x) const;

  bool same(const Bimodule& o) const { return data_ == o.data_; }
  friend bool operator==(const Bimodule& a, const Bimodule& b);
  friend bool operator!=(const Bimodule& a, const Bimodule& b) { return !(a == b); }

 private:
  struct Data {
    Algebra left_alg;
    Algebra right_alg;
    std::size_t dim = 0;
    std::vector<Matrix> left_action;
    std::vector<Matrix> right_action;
  };
  std::shared_ptr<const Data> data_;
};

ValidationReport validate_bimodule(const Bimodule& m);

/// Restriction of scalars along algebra maps into the acting algebras.
Bimodule restrict_left(const Bimodule& m, const AlgebraHom& along);
Bimodule restrict_right(const Bimodule& m, const AlgebraHom& along);
/// Forget the left (right) action, leaving a one-sided module.
Bimodule as_right_module(const Bimodule& m);
Bimodule as_left_module(const Bimodule& m);
Bimodule direct_sum(const Bimodule& a, const Bimodule& b);
/// The action on an invariant subspace spanned by the columns of basis.
Bimodule submodule(const Bimodule& m, const Matrix& basis);

struct BimoduleMap {
  Bimodule source;
  Bimodule target;
  Matrix matrix;

  static BimoduleMap identity(const Bimodule& m);
};

ValidationReport validate_bimodule_map(const BimoduleMap& f);
/// True iff matrix intertwines both actions of source and target.
bool is_bimodule_map(const Bimodule& source, const Bimodule& target, const Matrix& f);

/// The balanced tensor product M (x)_A N of an A'-A and an A-A'' bimodule.
/// The quotient basis is the set of non-pivot columns of the RREF of the
/// balancing relations; `section` is the coordinate section.
struct TensorSpace {
  Bimodule left;
  Bimodule right;
  std::size_t ambient_dim = 0;
  Matrix relations;                 // RREF rows spanning the relations
  std::vector<std::size_t> pivots;  // pivot columns of `relations`
  Matrix proj;                      // ambient -> quotient
  Matrix section;                   // quotient -> ambient
  Bimodule quotient;                // A'-A'' bimodule

  std::size_t dim() const { return quotient.dim(); }
};

TensorSpace tensor_over(const Bimodule& m, const Bimodule& n);

/// The unique h with h * src.proj = tgt.proj * (f (x)_K g).
/// Throws NotBalanced when f (x) g does not descend.
Matrix induced_map(const Matrix& f, const Matrix& g, const TensorSpace& src, const TensorSpace& tgt);
Matrix induced_map(const BimoduleMap& f, const BimoduleMap& g, const TensorSpace& src,
                   const TensorSpace& tgt);

/// A bracketed tensor product of several bimodules over the consecutive
/// algebras, with projection/section relative to the flat K-tensor product
/// of its factors. Two bracketings of the same factors are quotients of the
/// same ambient space by the same relations.
class Tensor {
 public:
  Tensor() = default;
  /// A single factor; projection and section are identities.
  explicit Tensor(const Bimodule& m);

  const std::vector<Bimodule>& factors() const { return data_->factors; }
  std::size_t ambient_dim() const { return data_->proj.cols(); }
  std::size_t dim() const { return data_->quotient.dim(); }
  const Matrix& proj() const { return data_->proj; }
  const Matrix& section() const { return data_->section; }
  const Bimodule& quotient() const { return data_->quotient; }
  /// The outermost binary step; null for a single factor.
  const TensorSpace* step() const { return data_->step.get(); }
  Field field() const { return data_->quotient.field(); }

  friend Tensor tensor(const Tensor& a, const Tensor& b);

 private:
  struct Data {
    std::vector<Bimodule> factors;
    Matrix proj;
    Matrix section;
    Bimodule quotient;
    std::shared_ptr<const TensorSpace> step;
  };
  std::shared_ptr<const Data> data_;
};

Tensor tensor(const Tensor& a, const Tensor& b);
/// Left-nested ((X1 (x) X2) (x) X3) ...
Tensor chain(const std::vector<Bimodule>& factors);
/// Right-nested X1 (x) (X2 (x) (X3 ...)).
Tensor chain_right(const std::vector<Bimodule>& factors);

/// A K-linear map on a run of consecutive flat factors, given on the flat
/// ambient spaces of that run.
struct Block {
  std::size_t src_factors = 1;
  std::size_t tgt_factors = 1;
  Matrix ambient;

  static Block identity(const Bimodule& m);
  /// One factor to one factor.
  static Block map(const Matrix& m);
  /// A map into a bracketed tensor, given in its quotient coordinates.
  static Block into(const Tensor& target, const Matrix& m);
  /// A map out of a bracketed tensor, given in its quotient coordinates.
  static Block out_of(const Tensor& source, const Matrix& m);
  /// A map between bracketed tensors, given in quotient coordinates.
  static Block between(const Tensor& source, const Tensor& target, const Matrix& m);
};

/// Matrix of tgt.proj * (block_1 (x) ... (x) block_r) * src.section. The
/// blocks must cover the flat factors of src and tgt in order. The caller
/// is responsible for the blocks being balanced; use tensor_map_checked to
/// verify that the map descends.
Matrix tensor_map(const Tensor& src, const Tensor& tgt, const std::vector<Block>& blocks);
Matrix tensor_map_checked(const Tensor& src, const Tensor& tgt, const std::vector<Block>& blocks);

/// Canonical isomorphism between two bracketings of the same factors.
Matrix rebracket(const Tensor& src, const Tensor& tgt);

/// m -> m (x) 1 into T(M, A) and m -> 1 (x) m into T(A, M).
Matrix unit_right(const Bimodule& m, const TensorSpace& ma);
Matrix unit_left(const Bimodule& m, const TensorSpace& am);
/// m (x) a -> m a and a (x) m -> a m, as flat ambient maps.
Matrix act_right_ambient(const Bimodule& m);
Matrix act_left_ambient(const Bimodule& m);

enum class Side { Left, Right };

/// Equalizer of a pair of bimodule maps: the kernel of f - g with its
/// inherited actions, and the inclusion.
BimoduleMap equalizer(const BimoduleMap& f, const BimoduleMap& g);

/// Whether z preserves the equalizer k of (f, g). With Side::Right the
/// tensor is X (x) z (z a left module over the right algebra of X); with
/// Side::Left it is z (x) X.
bool preserves_equalizer(const Bimodule& z, const BimoduleMap& f, const BimoduleMap& g,
                         const BimoduleMap& k, Side side);
bool preserves_equalizer(const Bimodule& z, const BimoduleMap& f, const BimoduleMap& g, Side side);

/// Projectivity of the left module underlying n, with the dual basis of a
/// splitting of the evaluation map A^dim(n) -> n when it exists.
struct ProjectivityResult {
  bool projective = false;
  /// dual_basis[i] is a left A-linear map n -> A (dim(A) x dim(n)); then
  /// sum_i dual_basis[i](m) * e_i = m for the standard basis e_i of n.
  std::vector<Matrix> dual_basis;
};

ProjectivityResult projectivity(const Bimodule& n);
inline bool is_projective(const Bimodule& n) { return projectivity(n).projective; }

}  // namespace coringlab::alg
