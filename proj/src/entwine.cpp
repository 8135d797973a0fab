#include "coringlab/entwine.hpp"

namespace coringlab::entwine {

using alg::Bimodule;
using la::Field;
using la::kron;

namespace {

// Multiplication A (x) A -> A on flat coordinates.
Matrix multiplication(const Algebra& a) {
  const std::size_t n = a.dim();
  Matrix m(a.field(), n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) m(k, i * n + j) = a.structure(i, j, k);
    }
  }
  return m;
}

Matrix flat_delta(const Coring& c) { return c.cc.section() * c.delta; }

bool is_coalgebra(const Coring& c) { return c.base.dim() == 1; }

bool has_shape(const Matrix& m, std::size_t r, std::size_t c) { return m.rows() == r && m.cols() == c; }

void require_valid(const ValidationReport& rep, const std::string& what) {
  if (!rep.ok()) throw ValidationFailed(what + ": " + rep.summary());
}

}  // namespace

Entwining Entwining::trivial(const Algebra& a, const Coring& c) {
  const std::size_t da = a.dim(), dc = c.dim();
  Matrix flip(a.field(), da * dc, dc * da);
  for (std::size_t x = 0; x < da; ++x) {
    for (std::size_t y = 0; y < dc; ++y) flip(x * dc + y, y * da + x) = a.field().one();
  }
  return {a, c, flip};
}

ValidationReport validate_entwining(const Entwining& e) {
  ValidationReport rep;
  rep.append(alg::validate_algebra(e.algebra), "algebra: ");
  if (!is_coalgebra(e.coalgebra)) {
    rep.add("coalgebra is not over the ground field", "base dimension " + std::to_string(e.coalgebra.base.dim()));
    return rep;
  }
  rep.append(coring::validate_coring(e.coalgebra), "coalgebra: ");
  const std::size_t da = e.algebra.dim(), dc = e.coalgebra.dim();
  if (e.algebra.field() != e.coalgebra.field() || e.psi.field() != e.algebra.field()) {
    rep.add("field mismatch", e.algebra.field().name() + " vs " + e.coalgebra.field().name());
    return rep;
  }
  if (!has_shape(e.psi, da * dc, dc * da)) {
    rep.add("psi has the wrong shape", std::to_string(e.psi.rows()) + "x" + std::to_string(e.psi.cols()));
    return rep;
  }
  if (!rep.ok()) return rep;
  const Field f = e.algebra.field();
  const Matrix ia = Matrix::identity(f, da), ic = Matrix::identity(f, dc);
  const Matrix& psi = e.psi;
  const Matrix mult = multiplication(e.algebra);
  const Matrix& unit = e.algebra.unit();
  const Matrix delta = flat_delta(e.coalgebra);
  const Matrix& eps = e.coalgebra.epsilon;

  if (psi * kron(ic, mult) != kron(mult, ic) * kron(ia, psi) * kron(psi, ia)) {
    rep.add("psi and multiplication", "psi(c (x) ab) != a_psi b_Psi (x) c^psi^Psi");
  }
  if (psi * kron(ic, unit) != kron(unit, ic)) rep.add("psi and unit", "psi(c (x) 1) != 1 (x) c");
  if (kron(ia, delta) * psi != kron(psi, ic) * kron(ic, psi) * kron(delta, ia)) {
    rep.add("psi and comultiplication", "(A (x) delta) psi != (psi (x) C)(C (x) psi)(delta (x) A)");
  }
  if (kron(ia, eps) * psi != kron(eps, ia)) rep.add("psi and counit", "(A (x) eps) psi != eps (x) A");
  return rep;
}

Coring coring_from_entwining(const Entwining& e) {
  require_valid(validate_entwining(e), "invalid entwining");
  const Algebra& a = e.algebra;
  const Field f = a.field();
  const std::size_t da = a.dim(), dc = e.coalgebra.dim();
  const Matrix ia = Matrix::identity(f, da), ic = Matrix::identity(f, dc);
  const Matrix mult = multiplication(a);
  std::vector<Matrix> left, right;
  for (std::size_t i = 0; i < da; ++i) {
    left.push_back(kron(a.left(i), ic));
    right.push_back(kron(mult, ic) * kron(ia, e.psi * kron(ic, a.basis_vector(i))));
  }
  const Bimodule carrier(a, a, da * dc, left, right);
  require_valid(alg::validate_bimodule(carrier), "A (x) C is not a bimodule");

  // (a (x) c) -> (a (x) c1) (x) (1 (x) c2) on the flat ambient space.
  const Matrix delta_flat = kron(ia, kron(kron(ic, a.unit()), ic) * flat_delta(e.coalgebra));
  const Matrix eps = kron(ia, e.coalgebra.epsilon);
  const alg::Tensor cc = alg::chain({carrier, carrier});
  const Coring out = Coring::make(carrier, cc.proj() * delta_flat, eps);
  require_valid(coring::validate_coring(out), "compiled coring");
  return out;
}

EntwiningMorphism EntwiningMorphism::identity(const Entwining& e) {
  return {e, e, AlgebraHom::identity(e.algebra), Matrix::identity(e.algebra.field(), e.coalgebra.dim())};
}

EntwiningMorphism EntwiningMorphism::then(const EntwiningMorphism& next) const {
  return {source, next.target, f.then(next.f), next.g * g};
}

ValidationReport validate_entwining_morphism(const EntwiningMorphism& m) {
  ValidationReport rep;
  rep.append(validate_entwining(m.source), "source: ");
  rep.append(validate_entwining(m.target), "target: ");
  if (!rep.ok()) return rep;
  if (m.f.source != m.source.algebra || m.f.target != m.target.algebra) {
    rep.add("f does not connect the algebras", "");
    return rep;
  }
  rep.append(alg::validate_algebra_hom(m.f), "f: ");
  const Coring& c = m.source.coalgebra;
  const Coring& d = m.target.coalgebra;
  if (!has_shape(m.g, d.dim(), c.dim())) {
    rep.add("g has the wrong shape", std::to_string(m.g.rows()) + "x" + std::to_string(m.g.cols()));
    return rep;
  }
  if (flat_delta(d) * m.g != kron(m.g, m.g) * flat_delta(c)) rep.add("g comultiplication", "");
  if (d.epsilon * m.g != c.epsilon) rep.add("g counit", "");
  if (m.target.psi * kron(m.g, m.f.matrix) != kron(m.f.matrix, m.g) * m.source.psi) {
    rep.add("compatibility with psi", "gamma (g (x) f) != (f (x) g) psi");
  }
  return rep;
}

functors::CoringHom hom_from_entwining_morphism(const EntwiningMorphism& m) {
  require_valid(validate_entwining_morphism(m), "invalid entwining morphism");
  functors::CoringHom h{coring_from_entwining(m.source), coring_from_entwining(m.target), m.f,
                        kron(m.f.matrix, m.g)};
  require_valid(functors::validate_coring_hom(h), "compiled homomorphism");
  return h;
}

}  // namespace coringlab::entwine
