#pragma once

// Separability of the induction and ad-induction functors of a coring
// homomorphism, of the forgetful functor and of - (x)_A C, decided by
// solving the linear systems for their splitting maps.

#include <optional>
#include <string>
#include <vector>

#include "coringlab/functors.hpp"

namespace coringlab::sep {

using coring::ComoduleMap;
using coring::Coring;
using functors::CoringHom;
using la::Matrix;

enum class CertificateKind { Omega, NuHat, Gamma, Invariant };

std::string to_string(CertificateKind k);

/// A splitting map. Omega and NuHat refer to `hom`; Gamma and Invariant to
/// `coring`. The payload is
///   Omega:     (C (x)_A B) box_D (B (x)_A C) -> C, in cotensor coordinates
///   NuHat:     D -> (B (x)_A C) (x)_A B
///   Gamma:     C (x)_A C -> A
///   Invariant: a column e in C.
struct Certificate {
  CertificateKind kind = CertificateKind::Gamma;
  Coring coring;
  std::optional<CoringHom> hom;
  Matrix payload;
  std::size_t solution_space_dim = 0;
};

struct SeparabilityReport {
  bool feasible = false;
  std::optional<Certificate> certificate;
  std::size_t solution_space_dim = 0;
  std::size_t infeasibility_rank_deficit = 0;
  std::vector<std::string> hypothesis_checks;
};

/// The affine system over the row-major entries of an unknown matrix.
struct LinearSystem {
  std::vector<la::Constraint> constraints;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

LinearSystem induction_system(const CoringHom& h);
LinearSystem adinduction_system(const CoringHom& h);
LinearSystem forgetful_system(const Coring& c);
LinearSystem base_extension_system(const Coring& c);

/// Throws HypothesisFailed when an equalizer preservation hypothesis fails
/// on one of the generated comodules.
SeparabilityReport certify_induction(const CoringHom& h);
SeparabilityReport certify_adinduction(const CoringHom& h);
SeparabilityReport certify_forgetful(const Coring& c);
SeparabilityReport certify_base_extension(const Coring& c);

/// Checks the defining identities of the payload directly.
ValidationReport verify_certificate(const Certificate& cert);

/// A right A-linear section of a surjective comodule map; throws
/// ShapeError when none exists.
Matrix a_linear_section(const ComoduleMap& f);

/// A colinear section of f. `s` must be an A-linear section of f. Throws
/// CertificateMismatch when the certificate does not verify, belongs to
/// another coring, or no colinear section exists.
ComoduleMap colinear_section(const ComoduleMap& f, const Certificate& cert, const Matrix& s);

}  // namespace coringlab::sep
