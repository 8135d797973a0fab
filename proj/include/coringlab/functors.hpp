#pragma once

// Coring homomorphisms, the induction functor - (x)_A B, its right adjoint
// - box_D (B (x)_A C), the unit and counit of that adjunction, and the
// co-hom functor of a bicomodule that is finitely generated projective
// over its left base.

#include <vector>

#include "coringlab/coringcore.hpp"

namespace coringlab::functors {

using alg::AlgebraHom;
using alg::Bimodule;
using alg::Tensor;
using coring::Bicomodule;
using coring::Coring;
using coring::CotensorSpace;
using coring::RightComodule;
using la::Matrix;

/// A pair (phi, rho) from an A-coring C to a B-coring D. phi is a map
/// C -> D in quotient coordinates.
struct CoringHom {
  Coring source;
  Coring target;
  AlgebraHom rho;
  Matrix phi;

  static CoringHom identity(const Coring& c);
  /// The counit C -> A into the trivial A-coring.
  static CoringHom counit(const Coring& c);
  /// this followed by next.
  CoringHom then(const CoringHom& next) const;
};

ValidationReport validate_coring_hom(const CoringHom& h);

/// D with both actions pulled back along rho, as an A-bimodule.
Bimodule pulled_back(const CoringHom& h);

/// A map between two tensor products, with the tensors it is written in.
struct TensorMorphism {
  Tensor source;
  Tensor target;
  Matrix matrix;
};

/// sigma_X: B (x)_A X -> X (x)_B B, b (x) x -> bx (x) 1, for a B-bimodule X.
TensorMorphism sigma(const Bimodule& x, const AlgebraHom& rho);
/// The canonical surjection X (x)_A Y -> X (x)_B Y.
TensorMorphism omega(const Bimodule& x, const Bimodule& y, const AlgebraHom& rho);

/// M (x)_A B with the induced right D-coaction.
struct InducedComodule {
  RightComodule source;
  Tensor tensor;  // M (x)_A B
  Matrix rho_tilde;  // (M (x) phi) rho_M into M (x)_A D
  RightComodule comodule;
};

/// Throws InternalAxiomError if the result is not a D-comodule, which
/// happens only for invalid inputs.
InducedComodule induce(const RightComodule& m, const CoringHom& h);
/// f (x)_A B.
Matrix induce_map(const InducedComodule& source, const InducedComodule& target, const Matrix& f);

/// B (x)_A C as a D-C bicomodule.
struct AdInductionBicomodule {
  CoringHom hom;
  Tensor tensor;        // B (x)_A C
  Matrix lambda_tilde;  // (phi (x) C) delta_C into D (x)_A C
  Bicomodule bicomodule;
};

AdInductionBicomodule build_adinduction(const CoringHom& h);

/// Y box_D (B (x)_A C) with its right C-coaction.
struct AdInduced {
  RightComodule source;
  CotensorSpace space;
  RightComodule comodule;
};

/// Throws HypothesisFailed when C does not preserve the defining equalizer.
AdInduced ad_induce(const RightComodule& y, const AdInductionBicomodule& bc);
AdInduced ad_induce(const RightComodule& y, const CoringHom& h);
/// g box_D (B (x)_A C).
Matrix ad_induce_map(const AdInduced& source, const AdInduced& target, const Matrix& g);

/// theta_M: M -> (M (x)_A B) box_D (B (x)_A C), in cotensor coordinates.
Matrix unit_component(const InducedComodule& fm, const AdInductionBicomodule& bc, const AdInduced& gfm);
/// chi_Y: (Y box_D (B (x)_A C)) (x)_A B -> Y.
Matrix counit_component(const AdInduced& gy, const AdInductionBicomodule& bc, const InducedComodule& fgy);

/// Delta bar: C -> (C (x)_A B) (x)_B (B (x)_A C), c -> c1 (x) 1 (x) 1 (x) c2.
Matrix delta_bar(const AdInductionBicomodule& bc);
/// phi hat: (B (x)_A C) (x)_A B -> D, b (x) c (x) b' -> b phi(c) b'.
Matrix phi_hat(const AdInductionBicomodule& bc);

struct AdjunctionData {
  CoringHom hom;
  AdInductionBicomodule adinduction;
  Tensor cbbc;        // (C (x)_A B) (x)_B (B (x)_A C)
  Tensor bcb;         // B (x)_A C (x)_A B
  Matrix iota;        // C (x)_A C -> cbbc, c (x) c' -> c (x) 1 (x) 1 (x) c'
  Matrix delta_bar;   // iota delta_C
  Matrix epsilon_hat; // bcb -> B, b (x) c (x) b' -> b rho(eps(c)) b'
  Matrix phi_hat;     // bcb -> D, b (x) c (x) b' -> b phi(c) b'
  std::vector<RightComodule> c_samples;
  std::vector<RightComodule> d_samples;
  std::vector<Matrix> varsigma;  // per C-sample: M -> M (x)_A B (x)_B B
  std::vector<Matrix> theta;     // per C-sample
  std::vector<Matrix> chi;       // per D-sample
};

/// Builds every structure map and checks both triangle identities on each
/// sample; throws TriangleFailure on a mismatch. Empty sample lists are
/// replaced by sample_comodules of the respective coring.
AdjunctionData adjunction_data(const CoringHom& h, std::vector<RightComodule> c_samples = {},
                               std::vector<RightComodule> d_samples = {});

/// C, cofree comodules on A and A + A, a direct sum, and the image of
/// delta inside C (x)_A C.
std::vector<RightComodule> sample_comodules(const Coring& c);

/// N* = Hom_A(N, A) for a C-B bicomodule N over the trivial B-coring whose
/// underlying left A-module is projective.
struct CohomFinite {
  Bicomodule n;
  std::vector<Matrix> dual_maps;  // basis of N*, each dim(A) x dim(N)
  Matrix dual_basis;              // sum_i f_i (x) n_i in N* (x)_K N, flat coordinates
  RightComodule dual;             // N* over C, with left B-action
};

/// Throws NotQuasiFinite when N is not projective as a left A-module.
CohomFinite cohom_finite(const Bicomodule& n);
/// X (x)_B N* for a right B-module X.
RightComodule cohom(const CohomFinite& h, const Bimodule& x);
/// The unit X -> (X (x)_B N*) (x)_A N.
Matrix cohom_unit(const CohomFinite& h, const Bimodule& x);

/// Dimensions of both sides of Hom_A(X (x)_B N*, Y) = Hom_B(X, Y (x)_A N)
/// and whether f -> (f (x) N) theta_X is bijective.
struct CohomAdjunctionCheck {
  std::size_t hom_left = 0;
  std::size_t hom_right = 0;
  bool bijective = false;
};

CohomAdjunctionCheck check_cohom_adjunction(const CohomFinite& h, const Bimodule& x, const Bimodule& y);

}  // namespace coringlab::functors
