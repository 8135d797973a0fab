#pragma once

// Corings over a finite-dimensional algebra, their comodules and
// bicomodules, and the cotensor product.

#include <optional>
#include <string>
#include <vector>

#include "coringlab/algkit.hpp"

namespace coringlab::coring {

using alg::Algebra;
using alg::Bimodule;
using alg::Block;
using alg::Tensor;
using la::Field;
using la::Matrix;

/// An A-coring: an A-bimodule C with delta: C -> C (x)_A C and
/// epsilon: C -> A, both in quotient coordinates.
struct Coring {
  Algebra base;
  Bimodule carrier;
  Matrix delta;
  Matrix epsilon;
  Tensor cc;  // C (x)_A C

  /// Shapes are checked here; the axioms by validate_coring.
  static Coring make(const Bimodule& carrier, const Matrix& delta, const Matrix& epsilon);
  /// A over itself: delta the unit isomorphism A -> A (x)_A A, epsilon = id.
  static Coring trivial(const Algebra& a);

  std::size_t dim() const { return carrier.dim(); }
  Field field() const { return carrier.field(); }
  Bimodule base_module() const { return Bimodule::regular(base); }

  friend bool operator==(const Coring& a, const Coring& b);
};

ValidationReport validate_coring(const Coring& c);

/// A right C-comodule. The carrier may carry any left action; only the
/// right A-structure takes part in the axioms.
struct RightComodule {
  Coring coring;
  Bimodule carrier;
  Matrix rho;
  Tensor mc;  // M (x)_A C

  static RightComodule make(const Coring& c, const Bimodule& carrier, const Matrix& rho);
  /// C coacting on itself through delta.
  static RightComodule regular(const Coring& c);
  /// A right A-module over the trivial A-coring.
  static RightComodule over_trivial(const Bimodule& m);

  std::size_t dim() const { return carrier.dim(); }
};

struct LeftComodule {
  Coring coring;
  Bimodule carrier;
  Matrix lambda;
  Tensor cm;  // C (x)_A M

  static LeftComodule make(const Coring& c, const Bimodule& carrier, const Matrix& lambda);
  static LeftComodule regular(const Coring& c);
  static LeftComodule over_trivial(const Bimodule& m);

  std::size_t dim() const { return carrier.dim(); }
};

/// A C'-C bicomodule on an A'-A bimodule.
struct Bicomodule {
  Coring left;
  Coring right;
  Bimodule carrier;
  Matrix lambda;
  Matrix rho;
  Tensor cm;  // C' (x)_A' M
  Tensor mc;  // M (x)_A C

  static Bicomodule make(const Coring& left, const Coring& right, const Bimodule& carrier, const Matrix& lambda,
                         const Matrix& rho);
  /// C as a C-C bicomodule.
  static Bicomodule regular(const Coring& c);
  /// Adds the trivial coaction of the left (right) acting algebra.
  static Bicomodule from_right(const RightComodule& m);
  static Bicomodule from_left(const LeftComodule& m);

  RightComodule right_part() const;
  LeftComodule left_part() const;
  std::size_t dim() const { return carrier.dim(); }
};

ValidationReport validate_comodule(const RightComodule& m);
ValidationReport validate_comodule(const LeftComodule& m);
ValidationReport validate_comodule(const Bicomodule& m);

/// Colinearity of a matrix between comodules over the same coring,
/// including linearity over the relevant base algebras.
bool is_colinear(const RightComodule& source, const RightComodule& target, const Matrix& f);
bool is_colinear(const LeftComodule& source, const LeftComodule& target, const Matrix& f);
bool is_bicolinear(const Bicomodule& source, const Bicomodule& target, const Matrix& f);

struct ComoduleMap {
  RightComodule source;
  RightComodule target;
  Matrix matrix;
};

ValidationReport validate_comodule_map(const ComoduleMap& f);

RightComodule direct_sum(const RightComodule& a, const RightComodule& b);
/// The subcomodule spanned by the columns of basis; throws ShapeError if
/// the span is not closed under the actions and the coaction.
RightComodule subcomodule(const RightComodule& m, const Matrix& basis);
/// The cofree comodule X (x)_A C on a module with right A-action.
RightComodule cofree(const Coring& c, const Bimodule& x);

/// M box_C N: the kernel of rho_M (x) N - M (x) lambda_N inside M (x)_A N.
/// The outer coactions are installed only when the outer corings preserve
/// the defining equalizer; otherwise `bicomodule` is empty and
/// `failed_hypotheses` names the sides that failed.
struct CotensorSpace {
  Bicomodule left;
  Bicomodule right;
  Tensor ambient;    // M (x)_A N
  Matrix inclusion;  // ambient quotient coordinates, one column per basis vector
  Matrix retraction;
  Bimodule carrier;
  std::optional<Bicomodule> bicomodule;
  std::vector<std::string> failed_hypotheses;

  std::size_t dim() const { return inclusion.cols(); }
  bool structured() const { return bicomodule.has_value(); }
  /// The bicomodule, or HypothesisFailed naming the first failed side.
  const Bicomodule& require_structure() const;
};

CotensorSpace cotensor(const Bicomodule& m, const Bicomodule& n);

/// Whether z preserves the equalizer defining m box n when tensored on the
/// given side: Side::Left is z (x) M (x) N, Side::Right is M (x) N (x) z.
bool preserves_cotensor(const Bimodule& z, const Bicomodule& m, const Bicomodule& n, alg::Side side);

/// Restriction of f (x) g to the cotensor products; throws ShapeError when
/// the image leaves the target subspace.
Matrix cotensor_map(const CotensorSpace& src, const CotensorSpace& tgt, const Matrix& f, const Matrix& g);

/// The comparison W (x)_A' (M box_C N) -> (W (x)_A' M) box_C N.
struct PsiResult {
  Matrix psi;
  bool preserves_equalizer = false;
  bool invertible = false;
};

/// W is a module with right A'-action. Throws HypothesisFailed if W does
/// not preserve the equalizer and the comparison is not invertible.
PsiResult psi_compat_checked(const Bimodule& w, const Bicomodule& m, const Bicomodule& n);
/// Same data without throwing.
PsiResult psi_compat(const Bimodule& w, const Bicomodule& m, const Bicomodule& n);

/// W (x)_A' M with coaction W (x) rho_M, as a bicomodule with trivial left coaction.
Bicomodule tensor_left(const Bimodule& w, const Bicomodule& m);

/// The isomorphism L box (M box N) -> (L box M) box N.
struct CotensorAssoc {
  CotensorSpace mn;
  CotensorSpace lm;
  CotensorSpace l_mn;
  CotensorSpace lm_n;
  Matrix iso;
};

CotensorAssoc cotensor_assoc(const Bicomodule& l, const Bicomodule& m, const Bicomodule& n);

}  // namespace coringlab::coring
