#pragma once

// Entwining structures (A, C, psi) over the ground field, the A-coring
// A (x) C they define, and the coring homomorphisms induced by their
// morphisms.

#include "coringlab/functors.hpp"

namespace coringlab::entwine {

using alg::Algebra;
using alg::AlgebraHom;
using coring::Coring;
using la::Matrix;

/// psi: C (x) A -> A (x) C on flat coordinates, index c * dim(A) + a on the
/// source and a * dim(C) + c on the target. `coalgebra` is a coring over
/// the ground field.
struct Entwining {
  Algebra algebra;
  Coring coalgebra;
  Matrix psi;

  /// psi(c (x) a) = a (x) c.
  static Entwining trivial(const Algebra& a, const Coring& c);
};

/// Checks the algebra, the coalgebra and the four compatibilities of psi
/// with multiplication, unit, comultiplication and counit.
ValidationReport validate_entwining(const Entwining& e);

/// A (x) C with a (a' (x) c) b = a a' b_psi (x) c^psi,
/// delta(a (x) c) = (a (x) c1) (x)_A (1 (x) c2), eps(a (x) c) = a eps(c).
/// Basis index a * dim(C) + c. Throws ValidationFailed on an invalid e.
Coring coring_from_entwining(const Entwining& e);

/// (f, g) with f an algebra map and g a coalgebra map.
struct EntwiningMorphism {
  Entwining source;
  Entwining target;
  AlgebraHom f;
  Matrix g;  // dim(D) x dim(C)

  static EntwiningMorphism identity(const Entwining& e);
  EntwiningMorphism then(const EntwiningMorphism& next) const;
};

ValidationReport validate_entwining_morphism(const EntwiningMorphism& m);

/// (f (x) g, f) between the compiled corings. Throws ValidationFailed when
/// either entwining or the morphism is invalid.
functors::CoringHom hom_from_entwining_morphism(const EntwiningMorphism& m);

}  // namespace coringlab::entwine
