#include "coringlab/functors.hpp"

namespace coringlab::functors {

using alg::Block;
using alg::chain;
using alg::tensor;
using alg::tensor_map;
using la::Field;
using la::kron;

namespace {

Block id(const Bimodule& m) { return Block::identity(m); }

Matrix eye(Field f, std::size_t n) { return Matrix::identity(f, n); }

void compare_columns(ValidationReport& rep, const std::string& axiom, const Matrix& lhs, const Matrix& rhs) {
  for (std::size_t j = 0; j < lhs.cols(); ++j) {
    if (lhs.col(j) != rhs.col(j)) rep.add(axiom, "basis vector " + std::to_string(j));
  }
}

const alg::Algebra& base_b(const CoringHom& h) { return h.rho.target; }

// B as an A-B bimodule (for M (x)_A B) and as a B-A bimodule (for B (x)_A C).
Bimodule b_ab(const CoringHom& h) { return alg::restrict_left(Bimodule::regular(base_b(h)), h.rho); }
Bimodule b_ba(const CoringHom& h) { return alg::restrict_right(Bimodule::regular(base_b(h)), h.rho); }

// b (x) c (x) b' -> b f(c) b' on flat coordinates, for f: C -> X into a B-bimodule.
Matrix sandwich(const Bimodule& x, const Matrix& f) {
  const Field fl = x.field();
  const std::size_t db = x.left_alg().dim();
  return alg::act_right_ambient(x) * kron(alg::act_left_ambient(x) * kron(eye(fl, db), f), eye(fl, db));
}

}  // namespace

// ---------------------------------------------------------------- homs

CoringHom CoringHom::identity(const Coring& c) {
  return {c, c, AlgebraHom::identity(c.base), eye(c.field(), c.dim())};
}

CoringHom CoringHom::counit(const Coring& c) {
  return {c, Coring::trivial(c.base), AlgebraHom::identity(c.base), c.epsilon};
}

CoringHom CoringHom::then(const CoringHom& next) const {
  if (!(target == next.source)) throw AlgebraMismatch("composing coring homomorphisms that do not meet");
  return {source, next.target, rho.then(next.rho), next.phi * phi};
}

Bimodule pulled_back(const CoringHom& h) {
  return alg::restrict_left(alg::restrict_right(h.target.carrier, h.rho), h.rho);
}

ValidationReport validate_coring_hom(const CoringHom& h) {
  ValidationReport rep;
  const Coring& c = h.source;
  const Coring& d = h.target;
  if (h.rho.source != c.base || h.rho.target != d.base) {
    rep.add("rho does not connect the base algebras", "");
    return rep;
  }
  rep.append(alg::validate_algebra_hom(h.rho), "rho: ");
  if (h.phi.rows() != d.dim() || h.phi.cols() != c.dim()) {
    rep.add("phi has the wrong shape", "");
    return rep;
  }
  if (alg::is_bimodule_map(c.carrier, pulled_back(h), h.phi)) {
    const Matrix lhs = tensor_map(c.cc, d.cc, {Block::map(h.phi), Block::map(h.phi)}) * c.delta;
    compare_columns(rep, "comultiplication", lhs, d.delta * h.phi);
  } else {
    rep.add("phi not A-bilinear", "");
  }
  compare_columns(rep, "counit", d.epsilon * h.phi, h.rho.matrix * c.epsilon);
  return rep;
}

TensorMorphism sigma(const Bimodule& x, const AlgebraHom& rho) {
  const Bimodule reg = Bimodule::regular(rho.target);
  TensorMorphism out{chain({alg::restrict_right(reg, rho), alg::restrict_left(x, rho)}), chain({x, reg}), {}};
  const Matrix u = rho.target.unit();
  out.matrix = tensor_map(out.source, out.target, {Block{2, 2, kron(alg::act_left_ambient(x), u)}});
  return out;
}

TensorMorphism omega(const Bimodule& x, const Bimodule& y, const AlgebraHom& rho) {
  TensorMorphism out{chain({alg::restrict_right(x, rho), alg::restrict_left(y, rho)}), chain({x, y}), {}};
  out.matrix = tensor_map(out.source, out.target, {id(x), id(y)});
  return out;
}

// ---------------------------------------------------------------- induction

InducedComodule induce(const RightComodule& m, const CoringHom& h) {
  if (!(m.coring == h.source)) throw AlgebraMismatch("comodule is not over the source coring");
  const Coring& c = h.source;
  const Coring& d = h.target;
  const Bimodule b = b_ab(h);
  const Bimodule daa = pulled_back(h);
  const Matrix u = base_b(h).unit();

  InducedComodule out;
  out.source = m;
  out.tensor = chain({m.carrier, b});
  const Tensor mcb = chain({m.carrier, c.carrier, b});
  const Tensor mdb = chain({m.carrier, daa, b});
  const Tensor mbd = tensor(out.tensor, Tensor(d.carrier));
  // m (x) b -> m0 (x) phi(m1) (x) b -> m0 (x) 1 (x) phi(m1) b
  const Matrix s1 = tensor_map(out.tensor, mcb, {Block::into(m.mc, m.rho), id(b)});
  const Matrix s2 = tensor_map(mcb, mdb, {id(m.carrier), Block::map(h.phi), id(b)});
  const Matrix s3 = tensor_map(mdb, mbd, {id(m.carrier), Block{2, 2, kron(u, alg::act_right_ambient(d.carrier))}});
  out.rho_tilde =
      tensor_map(m.mc, chain({m.carrier, alg::restrict_left(d.carrier, h.rho)}), {id(m.carrier), Block::map(h.phi)}) *
      m.rho;
  out.comodule = RightComodule::make(d, out.tensor.quotient(), s3 * (s2 * s1));
  const ValidationReport rep = coring::validate_comodule(out.comodule);
  if (!rep.ok()) throw InternalAxiomError("induced comodule is invalid: " + rep.summary());
  return out;
}

Matrix induce_map(const InducedComodule& source, const InducedComodule& target, const Matrix& f) {
  return tensor_map(source.tensor, target.tensor, {Block::map(f), id(source.tensor.factors().back())});
}

AdInductionBicomodule build_adinduction(const CoringHom& h) {
  const Coring& c = h.source;
  const Coring& d = h.target;
  const Bimodule b = b_ba(h);
  const Bimodule daa = pulled_back(h);
  const Matrix u = base_b(h).unit();

  AdInductionBicomodule out;
  out.hom = h;
  out.tensor = chain({b, c.carrier});
  const Tensor bcc = chain({b, c.carrier, c.carrier});
  const Tensor bdc = chain({b, daa, c.carrier});
  const Tensor dbc = tensor(Tensor(d.carrier), out.tensor);
  // b (x) c -> b (x) phi(c1) (x) c2 -> b phi(c1) (x) 1 (x) c2
  const Matrix s1 = tensor_map(out.tensor, bcc, {id(b), Block::into(c.cc, c.delta)});
  const Matrix s2 = tensor_map(bcc, bdc, {id(b), Block::map(h.phi), id(c.carrier)});
  const Matrix s3 = tensor_map(bdc, dbc, {Block{2, 2, kron(alg::act_left_ambient(d.carrier), u)}, id(c.carrier)});
  const Matrix rho = tensor_map(out.tensor, tensor(out.tensor, Tensor(c.carrier)), {id(b), Block::into(c.cc, c.delta)});
  out.lambda_tilde =
      tensor_map(c.cc, chain({alg::restrict_right(d.carrier, h.rho), c.carrier}), {Block::map(h.phi), id(c.carrier)}) *
      c.delta;
  out.bicomodule = Bicomodule::make(d, c, out.tensor.quotient(), s3 * (s2 * s1), rho);
  const ValidationReport rep = coring::validate_comodule(out.bicomodule);
  if (!rep.ok()) throw InternalAxiomError("B (x)_A C is not a bicomodule: " + rep.summary());
  return out;
}

AdInduced ad_induce(const RightComodule& y, const AdInductionBicomodule& bc) {
  if (!(y.coring == bc.hom.target)) throw AlgebraMismatch("comodule is not over the target coring");
  AdInduced out{y, coring::cotensor(Bicomodule::from_right(y), bc.bicomodule), {}};
  out.comodule = out.space.require_structure().right_part();
  return out;
}

AdInduced ad_induce(const RightComodule& y, const CoringHom& h) { return ad_induce(y, build_adinduction(h)); }

Matrix ad_induce_map(const AdInduced& source, const AdInduced& target, const Matrix& g) {
  const std::size_t n = source.space.right.dim();
  return coring::cotensor_map(source.space, target.space, g, eye(g.field(), n));
}

// ---------------------------------------------------------------- unit and counit

Matrix unit_component(const InducedComodule& fm, const AdInductionBicomodule& bc, const AdInduced& gfm) {
  const RightComodule& m = fm.source;
  const Field f = m.carrier.field();
  const Matrix u = base_b(bc.hom).unit();
  const Tensor mbbc = tensor(fm.tensor, bc.tensor);
  // m -> m0 (x) 1 (x) 1 (x) m1
  const Matrix amb =
      tensor_map(m.mc, mbbc, {Block{1, 3, kron(kron(eye(f, m.dim()), u), u)}, id(m.coring.carrier)}) * m.rho;
  const Matrix theta = gfm.space.retraction * amb;
  if (gfm.space.inclusion * theta != amb) throw InternalAxiomError("unit does not land in the cotensor product");
  return theta;
}

Matrix counit_component(const AdInduced& gy, const AdInductionBicomodule& bc, const InducedComodule& fgy) {
  const CoringHom& h = bc.hom;
  const RightComodule& y = gy.source;
  const Bimodule b = fgy.tensor.factors().back();
  const Field f = y.carrier.field();
  const Tensor ybc = tensor(Tensor(y.carrier), bc.tensor);
  const Tensor ybcb = tensor(ybc, Tensor(b));
  const Matrix into = tensor_map(fgy.tensor, ybcb, {Block::into(ybc, gy.space.inclusion), id(b)});
  const Matrix eps_hat = sandwich(Bimodule::regular(base_b(h)), h.rho.matrix * h.source.epsilon);
  const Matrix act = alg::act_right_ambient(y.carrier) * kron(eye(f, y.dim()), eps_hat);
  return tensor_map(ybcb, Tensor(y.carrier), {Block{4, 1, act}}) * into;
}

Matrix delta_bar(const AdInductionBicomodule& bc) {
  const Coring& c = bc.hom.source;
  const Matrix u = base_b(bc.hom).unit();
  const Matrix ic = eye(c.field(), c.dim());
  const Tensor cbbc = tensor(chain({c.carrier, b_ab(bc.hom)}), bc.tensor);
  return tensor_map(c.cc, cbbc, {Block{1, 2, kron(ic, u)}, Block{1, 2, kron(u, ic)}}) * c.delta;
}

Matrix phi_hat(const AdInductionBicomodule& bc) {
  const Tensor bcb = tensor(bc.tensor, Tensor(b_ab(bc.hom)));
  return tensor_map(bcb, Tensor(bc.hom.target.carrier), {Block{3, 1, sandwich(bc.hom.target.carrier, bc.hom.phi)}});
}

std::vector<RightComodule> sample_comodules(const Coring& c) {
  const Bimodule a = c.base_module();
  const RightComodule reg = RightComodule::regular(c);
  const RightComodule free1 = coring::cofree(c, a);
  return {reg, free1, coring::cofree(c, alg::direct_sum(a, a)), coring::direct_sum(reg, free1),
          coring::subcomodule(coring::cofree(c, c.carrier), c.delta)};
}

AdjunctionData adjunction_data(const CoringHom& h, std::vector<RightComodule> c_samples,
                               std::vector<RightComodule> d_samples) {
  const ValidationReport rep = validate_coring_hom(h);
  if (!rep.ok()) throw ValidationFailed("not a coring homomorphism: " + rep.summary());
  const Coring& c = h.source;
  const Coring& d = h.target;
  const Field f = c.field();
  const Matrix u = base_b(h).unit();
  if (c_samples.empty()) c_samples = sample_comodules(c);
  if (d_samples.empty()) d_samples = sample_comodules(d);

  AdjunctionData out;
  out.hom = h;
  out.adinduction = build_adinduction(h);
  const AdInductionBicomodule& bc = out.adinduction;
  const Bimodule bl = b_ab(h);
  out.cbbc = tensor(chain({c.carrier, bl}), bc.tensor);
  out.bcb = tensor(bc.tensor, Tensor(bl));
  const Matrix ic = eye(f, c.dim());
  out.iota = tensor_map(c.cc, out.cbbc, {Block{1, 2, kron(ic, u)}, Block{1, 2, kron(u, ic)}});
  out.delta_bar = out.iota * c.delta;
  const Bimodule reg_b = Bimodule::regular(base_b(h));
  out.epsilon_hat = tensor_map(out.bcb, Tensor(reg_b), {Block{3, 1, sandwich(reg_b, h.rho.matrix * c.epsilon)}});
  out.phi_hat = phi_hat(bc);

  for (const RightComodule& m : c_samples) {
    const InducedComodule fm = induce(m, h);
    const AdInduced gfm = ad_induce(fm.comodule, bc);
    const Matrix theta = unit_component(fm, bc, gfm);
    if (!coring::is_colinear(m, gfm.comodule, theta)) throw TriangleFailure("unit is not colinear");
    const InducedComodule fgfm = induce(gfm.comodule, h);
    const Matrix chi = counit_component(gfm, bc, fgfm);
    if (!(chi * induce_map(fm, fgfm, theta)).is_identity()) {
      throw TriangleFailure("chi_F o F(theta) is not the identity");
    }
    const Tensor mbb = chain({m.carrier, bl, reg_b});
    out.varsigma.push_back(tensor_map(Tensor(m.carrier), mbb, {Block{1, 3, kron(kron(eye(f, m.dim()), u), u)}}));
    out.theta.push_back(theta);
  }
  for (const RightComodule& y : d_samples) {
    const AdInduced gy = ad_induce(y, bc);
    const InducedComodule fgy = induce(gy.comodule, h);
    const Matrix chi = counit_component(gy, bc, fgy);
    if (!coring::is_colinear(fgy.comodule, y, chi)) throw TriangleFailure("counit is not colinear");
    const AdInduced gfgy = ad_induce(fgy.comodule, bc);
    const Matrix theta = unit_component(fgy, bc, gfgy);
    if (!(ad_induce_map(gfgy, gy, chi) * theta).is_identity()) {
      throw TriangleFailure("G(chi) o theta_G is not the identity");
    }
    out.chi.push_back(chi);
  }
  out.c_samples = std::move(c_samples);
  out.d_samples = std::move(d_samples);
  return out;
}

// ---------------------------------------------------------------- co-hom

CohomFinite cohom_finite(const Bicomodule& n) {
  const alg::Algebra& a = n.carrier.left_alg();
  const alg::Algebra& b = n.carrier.right_alg();
  if (!(n.right == Coring::trivial(b))) throw AlgebraMismatch("co-hom needs the trivial coring on the right");
  const alg::ProjectivityResult pr = alg::projectivity(n.carrier);
  if (!pr.projective) throw NotQuasiFinite("the bicomodule is not projective over its left base algebra");
  const Field f = a.field();
  const std::size_t da = a.dim(), dn = n.dim();
  const Matrix ia = eye(f, da), in = eye(f, dn);

  // Hom_A(N, A): X L^N_i = L^A_i X.
  std::vector<Matrix> rows;
  for (std::size_t i = 0; i < da; ++i) rows.push_back(la::linearize(ia, n.carrier.left_action(i)) - la::linearize(a.left(i), in));
  const Matrix basis = la::kernel_basis(la::vstack(rows));
  const std::size_t dd = basis.cols();
  const Matrix coords = la::left_inverse(basis);

  CohomFinite out;
  out.n = n;
  for (std::size_t k = 0; k < dd; ++k) out.dual_maps.push_back(la::unvec(basis.col(k), da, dn));
  std::vector<Matrix> left, right;
  for (std::size_t j = 0; j < b.dim(); ++j) left.push_back(coords * la::linearize(ia, n.carrier.right_action(j)) * basis);
  for (std::size_t j = 0; j < da; ++j) right.push_back(coords * la::linearize(a.right(j), in) * basis);
  const Bimodule dual(b, a, dd, left, right);

  out.dual_basis = Matrix(f, dd * dn, 1);
  for (std::size_t i = 0; i < dn; ++i) {
    out.dual_basis += kron(coords * la::vec(pr.dual_basis[i]), in.col(i));
  }

  // N* (x)_A C = Hom_A(N, C) through f (x) c -> (n -> f(n) c); rho(f) is n -> n_(-1) f(n_(0)).
  const Coring& c = n.left;
  const std::size_t dc = c.dim();
  const Tensor nc = chain({dual, c.carrier});
  Matrix eval(f, dc * dn, dd * dc);
  for (std::size_t k = 0; k < dd; ++k) {
    for (std::size_t nn = 0; nn < dn; ++nn) {
      const Matrix act = c.carrier.left_by(out.dual_maps[k].col(nn));
      for (std::size_t r = 0; r < dc; ++r) {
        for (std::size_t cc = 0; cc < dc; ++cc) eval(r * dn + nn, k * dc + cc) = act(r, cc);
      }
    }
  }
  eval = eval * nc.section();
  Matrix targets(f, dc * dn, dd);
  for (std::size_t k = 0; k < dd; ++k) {
    const Matrix g = tensor_map(n.cm, Tensor(c.carrier),
                                {Block{2, 1, alg::act_right_ambient(c.carrier) * kron(eye(f, dc), out.dual_maps[k])}}) *
                     n.lambda;
    const Matrix v = la::vec(g);
    for (std::size_t r = 0; r < v.rows(); ++r) targets(r, k) = v(r, 0);
  }
  Matrix rho;
  if (!la::try_solve(eval, targets, rho)) throw InternalAxiomError("dual coaction is not representable");
  out.dual = RightComodule::make(c, dual, rho);
  const ValidationReport rep = coring::validate_comodule(out.dual);
  if (!rep.ok()) throw InternalAxiomError("dual comodule is invalid: " + rep.summary());
  return out;
}

RightComodule cohom(const CohomFinite& h, const Bimodule& x) {
  const Tensor xn = chain({x, h.dual.carrier});
  const Tensor xnc = tensor(xn, Tensor(h.dual.coring.carrier));
  const Matrix rho = tensor_map(xn, xnc, {id(x), Block::into(h.dual.mc, h.dual.rho)});
  return RightComodule::make(h.dual.coring, xn.quotient(), rho);
}

Matrix cohom_unit(const CohomFinite& h, const Bimodule& x) {
  const Tensor target = tensor(chain({x, h.dual.carrier}), Tensor(h.n.carrier));
  const Matrix block = kron(eye(x.field(), x.dim()), h.dual_basis);
  return tensor_map(Tensor(x), target, {Block{1, 3, block}});
}

namespace {

// Basis of right-linear maps s -> t, as row-major vectorised columns.
Matrix right_linear_maps(const Bimodule& s, const Bimodule& t) {
  const Field f = s.field();
  std::vector<Matrix> rows;
  for (std::size_t j = 0; j < s.right_alg().dim(); ++j) {
    rows.push_back(la::linearize(eye(f, t.dim()), s.right_action(j)) - la::linearize(t.right_action(j), eye(f, s.dim())));
  }
  if (rows.empty()) return eye(f, s.dim() * t.dim());
  return la::kernel_basis(la::vstack(rows));
}

}  // namespace

CohomAdjunctionCheck check_cohom_adjunction(const CohomFinite& h, const Bimodule& x, const Bimodule& y) {
  const Tensor xn = chain({x, h.dual.carrier});
  const Tensor xnn = tensor(xn, Tensor(h.n.carrier));
  const Tensor yn = chain({y, h.n.carrier});
  const Matrix left = right_linear_maps(xn.quotient(), y);
  const Matrix right = right_linear_maps(x, yn.quotient());
  CohomAdjunctionCheck out{left.cols(), right.cols(), false};
  const Matrix theta = cohom_unit(h, x);
  std::vector<Matrix> images;
  for (std::size_t k = 0; k < left.cols(); ++k) {
    const Matrix fk = la::unvec(left.col(k), y.dim(), xn.dim());
    images.push_back(la::vec(tensor_map(xnn, yn, {Block::out_of(xn, fk), id(h.n.carrier)}) * theta));
  }
  if (out.hom_left != out.hom_right) return out;
  if (images.empty()) {
    out.bijective = true;
    return out;
  }
  const Matrix img = la::hstack(images);
  // Every image must be B-linear and together they must span.
  out.bijective = la::rank(img) == out.hom_left && la::rank(la::hstack({img, right})) == out.hom_right;
  return out;
}

}  // namespace coringlab::functors
