#include "coringlab/coringcore.hpp"

namespace coringlab::coring {

using alg::chain;
using alg::Side;
using alg::tensor;
using alg::tensor_map;

namespace {

Block id(const Bimodule& m) { return Block::identity(m); }

void compare_columns(ValidationReport& rep, const std::string& axiom, const Matrix& lhs, const Matrix& rhs) {
  for (std::size_t j = 0; j < lhs.cols(); ++j) {
    if (lhs.col(j) != rhs.col(j)) rep.add(axiom, "basis vector " + std::to_string(j));
  }
}

void require_shape(const Matrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw ShapeError(what + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
}

bool right_linear(const Bimodule& s, const Bimodule& t, const Matrix& f) {
  for (std::size_t j = 0; j < s.right_alg().dim(); ++j) {
    if (f * s.right_action(j) != t.right_action(j) * f) return false;
  }
  return true;
}

bool left_linear(const Bimodule& s, const Bimodule& t, const Matrix& f) {
  for (std::size_t i = 0; i < s.left_alg().dim(); ++i) {
    if (f * s.left_action(i) != t.left_action(i) * f) return false;
  }
  return true;
}

Matrix solve_or_throw(const Matrix& a, const Matrix& b, const std::string& what) {
  Matrix x;
  if (!la::try_solve(a, b, x)) throw InternalAxiomError(what);
  return x;
}

// The parallel pair rho_M (x) N and M (x) lambda_N, as maps M (x) N -> M (x) C (x) N.
struct DefiningPair {
  Tensor x;
  Tensor y;
  Matrix f;
  Matrix g;
};

DefiningPair defining_pair(const Bicomodule& m, const Bicomodule& n) {
  if (!(m.right == n.left)) throw AlgebraMismatch("cotensor over different corings");
  DefiningPair p;
  p.x = chain({m.carrier, n.carrier});
  p.y = chain({m.carrier, m.right.carrier, n.carrier});
  p.f = tensor_map(p.x, p.y, {Block::into(m.mc, m.rho), id(n.carrier)});
  p.g = tensor_map(p.x, p.y, {id(m.carrier), Block::into(n.cm, n.lambda)});
  return p;
}

}  // namespace

// ---------------------------------------------------------------- Coring

Coring Coring::make(const Bimodule& carrier, const Matrix& delta, const Matrix& epsilon) {
  if (carrier.left_alg() != carrier.right_alg()) throw AlgebraMismatch("coring carrier must be an A-A bimodule");
  Coring c;
  c.base = carrier.left_alg();
  c.carrier = carrier;
  c.cc = chain({carrier, carrier});
  require_shape(delta, c.cc.dim(), carrier.dim(), "comultiplication");
  require_shape(epsilon, c.base.dim(), carrier.dim(), "counit");
  if (delta.field() != carrier.field() || epsilon.field() != carrier.field()) {
    throw FieldMismatch("coring maps over a different field");
  }
  c.delta = delta;
  c.epsilon = epsilon;
  return c;
}

Coring Coring::trivial(const Algebra& a) {
  const Bimodule reg = Bimodule::regular(a);
  const Tensor aa = chain({reg, reg});
  return make(reg, alg::unit_right(reg, *aa.step()), Matrix::identity(a.field(), a.dim()));
}

bool operator==(const Coring& a, const Coring& b) {
  return a.carrier == b.carrier && a.delta == b.delta && a.epsilon == b.epsilon;
}

ValidationReport validate_coring(const Coring& c) {
  ValidationReport rep;
  rep.append(alg::validate_bimodule(c.carrier), "carrier: ");
  const Bimodule& cm = c.carrier;
  if (!alg::is_bimodule_map(cm, c.cc.quotient(), c.delta)) rep.add("comultiplication not A-bilinear", "");
  if (!alg::is_bimodule_map(cm, c.base_module(), c.epsilon)) rep.add("counit not A-bilinear", "");

  const Tensor ccc = tensor(c.cc, Tensor(cm));
  const Matrix lhs = tensor_map(c.cc, ccc, {Block::into(c.cc, c.delta), id(cm)}) * c.delta;
  const Matrix rhs = tensor_map(c.cc, ccc, {id(cm), Block::into(c.cc, c.delta)}) * c.delta;
  compare_columns(rep, "coassociativity", lhs, rhs);

  const Bimodule a = c.base_module();
  const Tensor ca = chain({cm, a});
  compare_columns(rep, "right counit", tensor_map(c.cc, ca, {id(cm), Block::map(c.epsilon)}) * c.delta,
                  alg::unit_right(cm, *ca.step()));
  const Tensor ac = chain({a, cm});
  compare_columns(rep, "left counit", tensor_map(c.cc, ac, {Block::map(c.epsilon), id(cm)}) * c.delta,
                  alg::unit_left(cm, *ac.step()));
  return rep;
}

// ---------------------------------------------------------------- comodules

RightComodule RightComodule::make(const Coring& c, const Bimodule& carrier, const Matrix& rho) {
  if (carrier.right_alg() != c.base) throw AlgebraMismatch("comodule carrier is not a module over the coring base");
  RightComodule m{c, carrier, rho, chain({carrier, c.carrier})};
  require_shape(rho, m.mc.dim(), carrier.dim(), "right coaction");
  return m;
}

RightComodule RightComodule::regular(const Coring& c) { return {c, c.carrier, c.delta, c.cc}; }

RightComodule RightComodule::over_trivial(const Bimodule& m) {
  const Coring t = Coring::trivial(m.right_alg());
  const Tensor ma = chain({m, t.carrier});
  return {t, m, alg::unit_right(m, *ma.step()), ma};
}

LeftComodule LeftComodule::make(const Coring& c, const Bimodule& carrier, const Matrix& lambda) {
  if (carrier.left_alg() != c.base) throw AlgebraMismatch("comodule carrier is not a module over the coring base");
  LeftComodule m{c, carrier, lambda, chain({c.carrier, carrier})};
  require_shape(lambda, m.cm.dim(), carrier.dim(), "left coaction");
  return m;
}

LeftComodule LeftComodule::regular(const Coring& c) { return {c, c.carrier, c.delta, c.cc}; }

LeftComodule LeftComodule::over_trivial(const Bimodule& m) {
  const Coring t = Coring::trivial(m.left_alg());
  const Tensor am = chain({t.carrier, m});
  return {t, m, alg::unit_left(m, *am.step()), am};
}

Bicomodule Bicomodule::make(const Coring& left, const Coring& right, const Bimodule& carrier, const Matrix& lambda,
                            const Matrix& rho) {
  const LeftComodule l = LeftComodule::make(left, carrier, lambda);
  const RightComodule r = RightComodule::make(right, carrier, rho);
  return {left, right, carrier, lambda, rho, l.cm, r.mc};
}

Bicomodule Bicomodule::regular(const Coring& c) { return {c, c, c.carrier, c.delta, c.delta, c.cc, c.cc}; }

Bicomodule Bicomodule::from_right(const RightComodule& m) {
  const LeftComodule l = LeftComodule::over_trivial(m.carrier);
  return {l.coring, m.coring, m.carrier, l.lambda, m.rho, l.cm, m.mc};
}

Bicomodule Bicomodule::from_left(const LeftComodule& m) {
  const RightComodule r = RightComodule::over_trivial(m.carrier);
  return {m.coring, r.coring, m.carrier, m.lambda, r.rho, m.cm, r.mc};
}

RightComodule Bicomodule::right_part() const { return {right, carrier, rho, mc}; }

LeftComodule Bicomodule::left_part() const { return {left, carrier, lambda, cm}; }

namespace {

ValidationReport right_axioms(const RightComodule& m) {
  ValidationReport rep;
  const Coring& c = m.coring;
  if (!right_linear(m.carrier, m.mc.quotient(), m.rho)) rep.add("coaction not right A-linear", "");
  const Tensor mcc = tensor(m.mc, Tensor(c.carrier));
  const Matrix lhs = tensor_map(m.mc, mcc, {Block::into(m.mc, m.rho), id(c.carrier)}) * m.rho;
  const Matrix rhs = tensor_map(m.mc, mcc, {id(m.carrier), Block::into(c.cc, c.delta)}) * m.rho;
  compare_columns(rep, "coassociativity", lhs, rhs);
  const Tensor ma = chain({m.carrier, c.base_module()});
  compare_columns(rep, "counit", tensor_map(m.mc, ma, {id(m.carrier), Block::map(c.epsilon)}) * m.rho,
                  alg::unit_right(m.carrier, *ma.step()));
  return rep;
}

ValidationReport left_axioms(const LeftComodule& m) {
  ValidationReport rep;
  const Coring& c = m.coring;
  if (!left_linear(m.carrier, m.cm.quotient(), m.lambda)) rep.add("coaction not left A-linear", "");
  const Tensor ccm = tensor(c.cc, Tensor(m.carrier));
  const Matrix lhs = tensor_map(m.cm, ccm, {Block::into(c.cc, c.delta), id(m.carrier)}) * m.lambda;
  const Matrix rhs = tensor_map(m.cm, ccm, {id(c.carrier), Block::into(m.cm, m.lambda)}) * m.lambda;
  compare_columns(rep, "coassociativity", lhs, rhs);
  const Tensor am = chain({c.base_module(), m.carrier});
  compare_columns(rep, "counit", tensor_map(m.cm, am, {Block::map(c.epsilon), id(m.carrier)}) * m.lambda,
                  alg::unit_left(m.carrier, *am.step()));
  return rep;
}

}  // namespace

ValidationReport validate_comodule(const RightComodule& m) {
  ValidationReport rep;
  rep.append(alg::validate_bimodule(m.carrier), "carrier: ");
  rep.append(right_axioms(m));
  return rep;
}

ValidationReport validate_comodule(const LeftComodule& m) {
  ValidationReport rep;
  rep.append(alg::validate_bimodule(m.carrier), "carrier: ");
  rep.append(left_axioms(m));
  return rep;
}

ValidationReport validate_comodule(const Bicomodule& m) {
  ValidationReport rep;
  rep.append(alg::validate_bimodule(m.carrier), "carrier: ");
  rep.append(left_axioms(m.left_part()), "left ");
  rep.append(right_axioms(m.right_part()), "right ");
  if (!left_linear(m.carrier, m.mc.quotient(), m.rho)) rep.add("right coaction not left A-linear", "");
  if (!right_linear(m.carrier, m.cm.quotient(), m.lambda)) rep.add("left coaction not right A-linear", "");
  const Tensor cmc = tensor(m.cm, Tensor(m.right.carrier));
  const Matrix lhs = tensor_map(m.mc, cmc, {Block::into(m.cm, m.lambda), id(m.right.carrier)}) * m.rho;
  const Matrix rhs = tensor_map(m.cm, cmc, {id(m.left.carrier), Block::into(m.mc, m.rho)}) * m.lambda;
  compare_columns(rep, "coactions commute", lhs, rhs);
  return rep;
}

bool is_colinear(const RightComodule& s, const RightComodule& t, const Matrix& f) {
  if (!(s.coring == t.coring) || f.rows() != t.dim() || f.cols() != s.dim()) return false;
  if (!right_linear(s.carrier, t.carrier, f)) return false;
  return t.rho * f == tensor_map(s.mc, t.mc, {Block::map(f), id(s.coring.carrier)}) * s.rho;
}

bool is_colinear(const LeftComodule& s, const LeftComodule& t, const Matrix& f) {
  if (!(s.coring == t.coring) || f.rows() != t.dim() || f.cols() != s.dim()) return false;
  if (!left_linear(s.carrier, t.carrier, f)) return false;
  return t.lambda * f == tensor_map(s.cm, t.cm, {id(s.coring.carrier), Block::map(f)}) * s.lambda;
}

bool is_bicolinear(const Bicomodule& s, const Bicomodule& t, const Matrix& f) {
  return alg::is_bimodule_map(s.carrier, t.carrier, f) && is_colinear(s.left_part(), t.left_part(), f) &&
         is_colinear(s.right_part(), t.right_part(), f);
}

ValidationReport validate_comodule_map(const ComoduleMap& f) {
  ValidationReport rep;
  if (!(f.source.coring == f.target.coring)) {
    rep.add("comodules over different corings", "");
    return rep;
  }
  if (f.matrix.rows() != f.target.dim() || f.matrix.cols() != f.source.dim()) {
    rep.add("shape", "");
    return rep;
  }
  if (!right_linear(f.source.carrier, f.target.carrier, f.matrix)) rep.add("not right A-linear", "");
  const Matrix lhs = f.target.rho * f.matrix;
  const Matrix rhs = tensor_map(f.source.mc, f.target.mc, {Block::map(f.matrix), id(f.source.coring.carrier)}) *
                     f.source.rho;
  compare_columns(rep, "colinearity", lhs, rhs);
  return rep;
}

RightComodule direct_sum(const RightComodule& a, const RightComodule& b) {
  if (!(a.coring == b.coring)) throw AlgebraMismatch("direct sum of comodules over different corings");
  const Bimodule sum = alg::direct_sum(a.carrier, b.carrier);
  const Tensor mc = chain({sum, a.coring.carrier});
  const Field f = sum.field();
  const Matrix inj_a = la::vstack({Matrix::identity(f, a.dim()), Matrix(f, b.dim(), a.dim())});
  const Matrix inj_b = la::vstack({Matrix(f, a.dim(), b.dim()), Matrix::identity(f, b.dim())});
  const Block ic = id(a.coring.carrier);
  const Matrix rho = la::hstack({tensor_map(a.mc, mc, {Block::map(inj_a), ic}) * a.rho,
                                 tensor_map(b.mc, mc, {Block::map(inj_b), ic}) * b.rho});
  return {a.coring, sum, rho, mc};
}

RightComodule subcomodule(const RightComodule& m, const Matrix& basis) {
  const Bimodule sub = alg::submodule(m.carrier, basis);
  const Tensor mc = chain({sub, m.coring.carrier});
  const Matrix incl = tensor_map(mc, m.mc, {Block::map(basis), id(m.coring.carrier)});
  Matrix rho;
  if (!la::try_solve(incl, m.rho * basis, rho)) throw ShapeError("span is not closed under the coaction");
  return {m.coring, sub, rho, mc};
}

RightComodule cofree(const Coring& c, const Bimodule& x) {
  const Tensor xc = chain({x, c.carrier});
  const Tensor xcc = tensor(xc, Tensor(c.carrier));
  const Matrix rho = tensor_map(xc, xcc, {id(x), Block::into(c.cc, c.delta)});
  return RightComodule::make(c, xc.quotient(), rho);
}

// ---------------------------------------------------------------- cotensor

const Bicomodule& CotensorSpace::require_structure() const {
  if (!bicomodule) {
    const std::string side = failed_hypotheses.empty() ? "unknown" : failed_hypotheses.front();
    throw HypothesisFailed(side, "cotensor product lacks bicomodule structure: the " + side +
                                     " coring does not preserve the defining equalizer");
  }
  return *bicomodule;
}

CotensorSpace cotensor(const Bicomodule& m, const Bicomodule& n) {
  DefiningPair p = defining_pair(m, n);
  const Field f = m.carrier.field();
  CotensorSpace out;
  out.left = m;
  out.right = n;
  out.ambient = p.x;
  out.inclusion = la::kernel_basis(p.f - p.g);
  if (out.inclusion.cols() == 0) out.inclusion = Matrix(f, p.x.dim(), 0);
  out.retraction = out.inclusion.cols() == 0 ? Matrix(f, 0, p.x.dim()) : la::left_inverse(out.inclusion);
  out.carrier = alg::submodule(p.x.quotient(), out.inclusion);

  const alg::BimoduleMap bf{p.x.quotient(), p.y.quotient(), p.f};
  const alg::BimoduleMap bg{p.x.quotient(), p.y.quotient(), p.g};
  const alg::BimoduleMap k{out.carrier, p.x.quotient(), out.inclusion};
  if (!alg::preserves_equalizer(alg::as_right_module(m.left.carrier), bf, bg, k, Side::Left)) {
    out.failed_hypotheses.push_back("left");
  }
  if (!alg::preserves_equalizer(alg::as_left_module(n.right.carrier), bf, bg, k, Side::Right)) {
    out.failed_hypotheses.push_back("right");
  }
  if (!out.failed_hypotheses.empty()) return out;

  const Bimodule& c2 = n.right.carrier;
  const Bimodule& c1 = m.left.carrier;
  const Block into_x = Block::into(p.x, out.inclusion);

  const Tensor xc = tensor(p.x, Tensor(c2));
  const Tensor pc = chain({out.carrier, c2});
  const Matrix rho_x = tensor_map(p.x, xc, {id(m.carrier), Block::into(n.mc, n.rho)}) * out.inclusion;
  const Matrix rho = solve_or_throw(tensor_map(pc, xc, {into_x, id(c2)}), rho_x,
                                    "right coaction does not restrict to the cotensor product");

  const Tensor cx = tensor(Tensor(c1), p.x);
  const Tensor cp = chain({c1, out.carrier});
  const Matrix lambda_x = tensor_map(p.x, cx, {Block::into(m.cm, m.lambda), id(n.carrier)}) * out.inclusion;
  const Matrix lambda = solve_or_throw(tensor_map(cp, cx, {id(c1), into_x}), lambda_x,
                                       "left coaction does not restrict to the cotensor product");

  out.bicomodule = Bicomodule::make(m.left, n.right, out.carrier, lambda, rho);
  return out;
}

bool preserves_cotensor(const Bimodule& z, const Bicomodule& m, const Bicomodule& n, Side side) {
  const DefiningPair d = defining_pair(m, n);
  const alg::BimoduleMap bf{d.x.quotient(), d.y.quotient(), d.f};
  const alg::BimoduleMap bg{d.x.quotient(), d.y.quotient(), d.g};
  return alg::preserves_equalizer(z, bf, bg, side);
}

Matrix cotensor_map(const CotensorSpace& src, const CotensorSpace& tgt, const Matrix& f, const Matrix& g) {
  const Matrix full = tensor_map(src.ambient, tgt.ambient, {Block::map(f), Block::map(g)}) * src.inclusion;
  const Matrix res = tgt.retraction * full;
  if (tgt.inclusion * res != full) throw ShapeError("map does not restrict to the cotensor products");
  return res;
}

Bicomodule tensor_left(const Bimodule& w, const Bicomodule& m) {
  const Tensor wm = chain({w, m.carrier});
  const Tensor wmc = tensor(wm, Tensor(m.right.carrier));
  const Matrix rho = tensor_map(wm, wmc, {id(w), Block::into(m.mc, m.rho)});
  return Bicomodule::from_right(RightComodule::make(m.right, wm.quotient(), rho));
}

PsiResult psi_compat(const Bimodule& w, const Bicomodule& m, const Bicomodule& n) {
  if (w.right_alg() != m.carrier.left_alg()) throw AlgebraMismatch("W does not act on the left algebra of M");
  const CotensorSpace p = cotensor(m, n);
  const Bicomodule wm = tensor_left(w, m);
  const CotensorSpace p2 = cotensor(wm, n);

  const Tensor wp = chain({w, p.carrier});
  const Tensor wmn = tensor(chain({w, m.carrier}), Tensor(n.carrier));
  const Matrix comp = tensor_map(wp, wmn, {id(w), Block::into(p.ambient, p.inclusion)});
  PsiResult out;
  out.psi = p2.retraction * comp;
  if (p2.inclusion * out.psi != comp) throw InternalAxiomError("comparison map leaves the cotensor product");
  out.invertible = out.psi.rows() == out.psi.cols() && la::rank(out.psi) == out.psi.rows();

  const DefiningPair d = defining_pair(m, n);
  const alg::BimoduleMap bf{d.x.quotient(), d.y.quotient(), d.f};
  const alg::BimoduleMap bg{d.x.quotient(), d.y.quotient(), d.g};
  const alg::BimoduleMap k{p.carrier, d.x.quotient(), p.inclusion};
  out.preserves_equalizer = alg::preserves_equalizer(w, bf, bg, k, Side::Left);
  return out;
}

PsiResult psi_compat_checked(const Bimodule& w, const Bicomodule& m, const Bicomodule& n) {
  PsiResult r = psi_compat(w, m, n);
  if (!r.preserves_equalizer) {
    throw HypothesisFailed("W", "W does not preserve the equalizer; the comparison map is " +
                                    std::string(r.invertible ? "invertible" : "not invertible"));
  }
  if (!r.invertible) throw InternalAxiomError("comparison map is not invertible although W preserves the equalizer");
  return r;
}

CotensorAssoc cotensor_assoc(const Bicomodule& l, const Bicomodule& m, const Bicomodule& n) {
  auto need = [](const CotensorSpace& s, const std::string& name) -> const Bicomodule& {
    if (!s.structured()) {
      throw HypothesisFailed(name + ":" + s.failed_hypotheses.front(),
                             "the " + s.failed_hypotheses.front() + " coring of " + name +
                                 " does not preserve the defining equalizer");
    }
    return *s.bicomodule;
  };
  CotensorAssoc out{cotensor(m, n), cotensor(l, m), {}, {}, {}};
  out.l_mn = cotensor(l, need(out.mn, "M box N"));
  out.lm_n = cotensor(need(out.lm, "L box M"), n);
  const Bicomodule& lhs = need(out.l_mn, "L box (M box N)");
  const Bicomodule& rhs = need(out.lm_n, "(L box M) box N");

  const Tensor lmn = chain({l.carrier, m.carrier, n.carrier});
  const Matrix inc_l = tensor_map(out.l_mn.ambient, lmn, {id(l.carrier), Block::into(out.mn.ambient, out.mn.inclusion)}) *
                       out.l_mn.inclusion;
  const Matrix inc_r = tensor_map(out.lm_n.ambient, lmn, {Block::into(out.lm.ambient, out.lm.inclusion), id(n.carrier)}) *
                       out.lm_n.inclusion;
  out.iso = solve_or_throw(inc_r, inc_l, "the two iterated cotensor products differ");
  if (out.iso.rows() != out.iso.cols() || la::rank(out.iso) != out.iso.rows()) {
    throw InternalAxiomError("associativity comparison is not invertible");
  }
  if (!is_bicolinear(lhs, rhs, out.iso)) throw InternalAxiomError("associativity comparison is not bicolinear");
  return out;
}

}  // namespace coringlab::coring
