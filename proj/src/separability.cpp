#include "coringlab/separability.hpp"

#include <functional>

namespace coringlab::sep {

using alg::Bimodule;
using alg::Block;
using alg::chain;
using alg::Side;
using alg::Tensor;
using alg::tensor;
using alg::tensor_map;
using coring::Bicomodule;
using coring::RightComodule;
using la::Constraint;
using la::Field;
using la::linearize;

namespace {

Matrix eye(Field f, std::size_t n) { return Matrix::identity(f, n); }

Constraint homogeneous(const Matrix& lhs) { return {lhs, Matrix(lhs.field(), lhs.rows(), 1)}; }

// X -> proj * kron(X, I_k) * s on row-major vectorisations, X of size xr x xc.
Matrix kron_left_operator(const Matrix& proj, const Matrix& s, std::size_t xr, std::size_t xc, std::size_t k) {
  const std::size_t n = s.cols();
  Matrix m(s.field(), xr * k * n, xr * xc);
  for (std::size_t a = 0; a < xr; ++a) {
    for (std::size_t t = 0; t < k; ++t) {
      for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t b = 0; b < xc; ++b) m((a * k + t) * n + col, a * xc + b) = s(b * k + t, col);
      }
    }
  }
  return linearize(proj, eye(s.field(), n)) * m;
}

// X -> proj * kron(I_k, X) * s.
Matrix kron_right_operator(const Matrix& proj, const Matrix& s, std::size_t xr, std::size_t xc, std::size_t k) {
  const std::size_t n = s.cols();
  Matrix m(s.field(), k * xr * n, xr * xc);
  for (std::size_t t = 0; t < k; ++t) {
    for (std::size_t a = 0; a < xr; ++a) {
      for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t b = 0; b < xc; ++b) m((t * xr + a) * n + col, a * xc + b) = s(t * xc + b, col);
      }
    }
  }
  return linearize(proj, eye(s.field(), n)) * m;
}

void bilinear_constraints(std::vector<Constraint>& out, const Bimodule& s, const Bimodule& t) {
  const Field f = s.field();
  const Matrix is = eye(f, s.dim()), it = eye(f, t.dim());
  for (std::size_t i = 0; i < s.left_alg().dim(); ++i) {
    out.push_back(homogeneous(linearize(it, s.left_action(i)) - linearize(t.left_action(i), is)));
  }
  for (std::size_t j = 0; j < s.right_alg().dim(); ++j) {
    out.push_back(homogeneous(linearize(it, s.right_action(j)) - linearize(t.right_action(j), is)));
  }
}

// X: s -> t right colinear: t.rho X = (X (x) C) s.rho.
Matrix right_colinear_operator(const RightComodule& s, const RightComodule& t) {
  const Matrix lhs = linearize(t.rho, eye(s.carrier.field(), s.dim()));
  return lhs - kron_left_operator(t.mc.proj(), s.mc.section() * s.rho, t.dim(), s.dim(), s.coring.dim());
}

Matrix left_colinear_operator(const coring::LeftComodule& s, const coring::LeftComodule& t) {
  const Matrix lhs = linearize(t.lambda, eye(s.carrier.field(), s.dim()));
  return lhs - kron_right_operator(t.cm.proj(), s.cm.section() * s.lambda, t.dim(), s.dim(), s.coring.dim());
}

void bicolinear_constraints(std::vector<Constraint>& out, const Bicomodule& s, const Bicomodule& t) {
  bilinear_constraints(out, s.carrier, t.carrier);
  out.push_back(homogeneous(right_colinear_operator(s.right_part(), t.right_part())));
  out.push_back(homogeneous(left_colinear_operator(s.left_part(), t.left_part())));
}

// (C (x)_A B) box_D (B (x)_A C) as a C-bicomodule, with delta bar in its coordinates.
struct InductionContext {
  Bicomodule cb;
  coring::CotensorSpace p;
  Matrix delta_bar;
};

InductionContext induction_context(const CoringHom& h, const functors::AdInductionBicomodule& bc) {
  const Coring& c = h.source;
  const functors::InducedComodule fc = functors::induce(RightComodule::regular(c), h);
  const Bimodule& b = fc.tensor.factors().back();
  const Matrix lambda =
      tensor_map(fc.tensor, tensor(Tensor(c.carrier), fc.tensor), {Block::into(c.cc, c.delta), Block::identity(b)});
  InductionContext ctx;
  ctx.cb = Bicomodule::make(c, h.target, fc.tensor.quotient(), lambda, fc.comodule.rho);
  ctx.p = coring::cotensor(ctx.cb, bc.bicomodule);
  ctx.p.require_structure();
  const Matrix amb = functors::delta_bar(bc);
  ctx.delta_bar = ctx.p.retraction * amb;
  if (ctx.p.inclusion * ctx.delta_bar != amb) throw InternalAxiomError("delta bar leaves the cotensor product");
  return ctx;
}

// (B (x)_A C) (x)_A B as a D-bicomodule, with phi hat.
struct AdInductionContext {
  Bicomodule bcb;
  Matrix phi_hat;
};

AdInductionContext adinduction_context(const CoringHom& h, const functors::AdInductionBicomodule& bc) {
  const functors::InducedComodule ind = functors::induce(bc.bicomodule.right_part(), h);
  const Bimodule& b = ind.tensor.factors().back();
  const Matrix lambda = tensor_map(ind.tensor, tensor(Tensor(h.target.carrier), ind.tensor),
                                   {Block::into(bc.bicomodule.cm, bc.bicomodule.lambda), Block::identity(b)});
  AdInductionContext ctx;
  ctx.bcb = Bicomodule::make(h.target, h.target, ind.tensor.quotient(), lambda, ind.comodule.rho);
  const ValidationReport rep = coring::validate_comodule(ctx.bcb);
  if (!rep.ok()) throw InternalAxiomError("B (x)_A C (x)_A B is not a bicomodule: " + rep.summary());
  ctx.phi_hat = functors::phi_hat(bc);
  return ctx;
}

// The two sides of the cointegral identity for a given gamma, as maps C (x)_A C -> C.
struct CointegralSides {
  Matrix left;   // c (x) c' -> c1 gamma(c2 (x) c')
  Matrix right;  // c (x) c' -> gamma(c (x) c'1) c'2
};

struct CointegralData {
  Tensor ccc;   // (C C) C
  Tensor c_cc;  // C (C C)
  Matrix dl;    // delta (x) C into ccc
  Matrix dr;    // C (x) delta into c_cc
};

CointegralData cointegral_data(const Coring& c) {
  CointegralData d;
  d.ccc = tensor(c.cc, Tensor(c.carrier));
  d.c_cc = tensor(Tensor(c.carrier), c.cc);
  d.dl = tensor_map(c.cc, d.ccc, {Block::into(c.cc, c.delta), Block::identity(c.carrier)});
  d.dr = tensor_map(c.cc, d.c_cc, {Block::identity(c.carrier), Block::into(c.cc, c.delta)});
  return d;
}

void check_hypothesis(SeparabilityReport& rep, bool holds, const std::string& what) {
  rep.hypothesis_checks.push_back(what + (holds ? ": holds" : ": fails"));
  if (!holds) throw HypothesisFailed(what, what + " does not preserve the equalizer");
}

SeparabilityReport solve(const LinearSystem& sys, CertificateKind kind, const Coring& c,
                         const std::optional<CoringHom>& hom, SeparabilityReport rep) {
  const la::AffineResult res = la::solve_affine(sys.constraints);
  if (const auto* inf = std::get_if<la::Infeasible>(&res)) {
    rep.feasible = false;
    rep.infeasibility_rank_deficit = inf->rank_deficit;
    return rep;
  }
  const auto& ok = std::get<la::Feasible>(res);
  rep.feasible = true;
  rep.solution_space_dim = ok.nullspace.cols();
  Certificate cert{kind, c, hom, la::unvec(ok.particular, sys.rows, sys.cols), rep.solution_space_dim};
  const ValidationReport v = verify_certificate(cert);
  if (!v.ok()) throw InternalAxiomError("solver output fails verification: " + v.summary());
  rep.certificate = std::move(cert);
  return rep;
}

}  // namespace

std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::Omega: return "omega";
    case CertificateKind::NuHat: return "nu_hat";
    case CertificateKind::Gamma: return "gamma";
    case CertificateKind::Invariant: return "invariant";
  }
  return "unknown";
}

// ---------------------------------------------------------------- systems

LinearSystem induction_system(const CoringHom& h) {
  const functors::AdInductionBicomodule bc = functors::build_adinduction(h);
  const InductionContext ctx = induction_context(h, bc);
  const Bicomodule& p = *ctx.p.bicomodule;
  const Bicomodule c = Bicomodule::regular(h.source);
  const Field f = c.carrier.field();
  LinearSystem sys;
  sys.rows = c.dim();
  sys.cols = p.dim();
  bicolinear_constraints(sys.constraints, p, c);
  sys.constraints.push_back({linearize(eye(f, c.dim()), ctx.delta_bar), la::vec(eye(f, c.dim()))});
  return sys;
}

LinearSystem adinduction_system(const CoringHom& h) {
  const functors::AdInductionBicomodule bc = functors::build_adinduction(h);
  const AdInductionContext ctx = adinduction_context(h, bc);
  const Bicomodule d = Bicomodule::regular(h.target);
  const Field f = d.carrier.field();
  LinearSystem sys;
  sys.rows = ctx.bcb.dim();
  sys.cols = d.dim();
  bicolinear_constraints(sys.constraints, d, ctx.bcb);
  sys.constraints.push_back({linearize(ctx.phi_hat, eye(f, d.dim())), la::vec(eye(f, d.dim()))});
  return sys;
}

LinearSystem forgetful_system(const Coring& c) {
  const Field f = c.field();
  const Bimodule a = c.base_module();
  const std::size_t da = a.dim(), dc = c.dim(), dcc = c.cc.dim();
  LinearSystem sys;
  sys.rows = da;
  sys.cols = dcc;
  bilinear_constraints(sys.constraints, c.cc.quotient(), a);
  sys.constraints.push_back({linearize(eye(f, da), c.delta), la::vec(c.epsilon)});
  // gamma enters the flat maps through y = gamma * proj(C (x)_A C).
  const CointegralData d = cointegral_data(c);
  const Matrix to_y = linearize(eye(f, da), c.cc.proj());
  const std::size_t flat = c.cc.ambient_dim();
  const Matrix left = kron_right_operator(alg::act_right_ambient(c.carrier), d.c_cc.section() * alg::rebracket(d.ccc, d.c_cc) * d.dl, da, flat, dc);
  const Matrix right = kron_left_operator(alg::act_left_ambient(c.carrier), d.ccc.section() * alg::rebracket(d.c_cc, d.ccc) * d.dr, da, flat, dc);
  sys.constraints.push_back(homogeneous((left - right) * to_y));
  return sys;
}

LinearSystem base_extension_system(const Coring& c) {
  const Bimodule& m = c.carrier;
  LinearSystem sys;
  sys.rows = c.dim();
  sys.cols = 1;
  for (std::size_t i = 0; i < c.base.dim(); ++i) {
    sys.constraints.push_back(homogeneous(m.left_action(i) - m.right_action(i)));
  }
  sys.constraints.push_back({c.epsilon, c.base.unit()});
  return sys;
}

// ---------------------------------------------------------------- certifiers

SeparabilityReport certify_induction(const CoringHom& h) {
  SeparabilityReport rep;
  const functors::AdInductionBicomodule bc = functors::build_adinduction(h);
  const Bimodule c_left = alg::as_left_module(h.source.carrier);
  const auto d_samples = functors::sample_comodules(h.target);
  for (std::size_t i = 0; i < d_samples.size(); ++i) {
    const Bicomodule y = Bicomodule::from_right(d_samples[i]);
    check_hypothesis(rep, coring::preserves_cotensor(c_left, y, bc.bicomodule, Side::Right),
                     "C on D-sample " + std::to_string(i));
  }
  const InductionContext ctx = induction_context(h, bc);
  const auto c_samples = functors::sample_comodules(h.source);
  for (std::size_t i = 0; i < c_samples.size(); ++i) {
    const Bimodule x = alg::as_right_module(c_samples[i].carrier);
    check_hypothesis(rep, coring::preserves_cotensor(x, ctx.cb, bc.bicomodule, Side::Left),
                     "C-sample " + std::to_string(i));
  }
  return solve(induction_system(h), CertificateKind::Omega, h.source, h, std::move(rep));
}

SeparabilityReport certify_adinduction(const CoringHom& h) {
  SeparabilityReport rep;
  const functors::AdInductionBicomodule bc = functors::build_adinduction(h);
  const Bimodule b_left =
      alg::as_left_module(alg::restrict_left(Bimodule::regular(h.rho.target), h.rho));
  const Bimodule c_left = alg::as_left_module(h.source.carrier);
  const auto d_samples = functors::sample_comodules(h.target);
  for (std::size_t i = 0; i < d_samples.size(); ++i) {
    const Bicomodule y = Bicomodule::from_right(d_samples[i]);
    check_hypothesis(rep, coring::preserves_cotensor(b_left, y, bc.bicomodule, Side::Right),
                     "B on D-sample " + std::to_string(i));
    check_hypothesis(rep, coring::preserves_cotensor(c_left, y, bc.bicomodule, Side::Right),
                     "C on D-sample " + std::to_string(i));
  }
  return solve(adinduction_system(h), CertificateKind::NuHat, h.target, h, std::move(rep));
}

SeparabilityReport certify_forgetful(const Coring& c) {
  return solve(forgetful_system(c), CertificateKind::Gamma, c, std::nullopt, {});
}

SeparabilityReport certify_base_extension(const Coring& c) {
  return solve(base_extension_system(c), CertificateKind::Invariant, c, std::nullopt, {});
}

// ---------------------------------------------------------------- verification

ValidationReport verify_certificate(const Certificate& cert) {
  ValidationReport rep;
  const Matrix& x = cert.payload;
  auto shape = [&](std::size_t r, std::size_t c) {
    if (x.rows() == r && x.cols() == c) return true;
    rep.add("payload shape", std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
    return false;
  };
  switch (cert.kind) {
    case CertificateKind::Omega: {
      if (!cert.hom) {
        rep.add("missing homomorphism", "");
        break;
      }
      const functors::AdInductionBicomodule bc = functors::build_adinduction(*cert.hom);
      const InductionContext ctx = induction_context(*cert.hom, bc);
      const Bicomodule c = Bicomodule::regular(cert.hom->source);
      if (!shape(c.dim(), ctx.p.dim())) break;
      if (!coring::is_bicolinear(*ctx.p.bicomodule, c, x)) rep.add("not a bicomodule map", "");
      if (!(x * ctx.delta_bar).is_identity()) rep.add("splitting", "omega delta bar");
      break;
    }
    case CertificateKind::NuHat: {
      if (!cert.hom) {
        rep.add("missing homomorphism", "");
        break;
      }
      const functors::AdInductionBicomodule bc = functors::build_adinduction(*cert.hom);
      const AdInductionContext ctx = adinduction_context(*cert.hom, bc);
      const Bicomodule d = Bicomodule::regular(cert.hom->target);
      if (!shape(ctx.bcb.dim(), d.dim())) break;
      if (!coring::is_bicolinear(d, ctx.bcb, x)) rep.add("not a bicomodule map", "");
      if (!(ctx.phi_hat * x).is_identity()) rep.add("splitting", "phi hat nu hat");
      break;
    }
    case CertificateKind::Gamma: {
      const Coring& c = cert.coring;
      if (!shape(c.base.dim(), c.cc.dim())) break;
      if (!alg::is_bimodule_map(c.cc.quotient(), c.base_module(), x)) rep.add("not A-bilinear", "");
      if (x * c.delta != c.epsilon) rep.add("counit", "gamma delta");
      const CointegralData d = cointegral_data(c);
      const Bimodule a = c.base_module();
      const Tensor ca = chain({c.carrier, a}), ac = chain({a, c.carrier});
      const Matrix left = tensor_map(ca, Tensor(c.carrier), {Block{2, 1, alg::act_right_ambient(c.carrier)}}) *
                          tensor_map(d.c_cc, ca, {Block::identity(c.carrier), Block::out_of(c.cc, x)}) *
                          alg::rebracket(d.ccc, d.c_cc) * d.dl;
      const Matrix right = tensor_map(ac, Tensor(c.carrier), {Block{2, 1, alg::act_left_ambient(c.carrier)}}) *
                           tensor_map(d.ccc, ac, {Block::out_of(c.cc, x), Block::identity(c.carrier)}) *
                           alg::rebracket(d.c_cc, d.ccc) * d.dr;
      for (std::size_t j = 0; j < left.cols(); ++j) {
        if (left.col(j) != right.col(j)) rep.add("cointegral identity", "basis vector " + std::to_string(j));
      }
      break;
    }
    case CertificateKind::Invariant: {
      const Coring& c = cert.coring;
      if (!shape(c.dim(), 1)) break;
      for (std::size_t i = 0; i < c.base.dim(); ++i) {
        if (c.carrier.left_action(i) * x != c.carrier.right_action(i) * x) {
          rep.add("not invariant", "basis element " + std::to_string(i));
        }
      }
      if (c.epsilon * x != c.base.unit()) rep.add("counit value", "epsilon(e) != 1");
      break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------- Maschke

namespace {

std::vector<Constraint> section_constraints(const ComoduleMap& f, bool colinear) {
  const RightComodule& m = f.source;
  const RightComodule& n = f.target;
  const Field fl = m.carrier.field();
  std::vector<Constraint> out;
  for (std::size_t j = 0; j < n.carrier.right_alg().dim(); ++j) {
    out.push_back(homogeneous(linearize(eye(fl, m.dim()), n.carrier.right_action(j)) -
                              linearize(m.carrier.right_action(j), eye(fl, n.dim()))));
  }
  if (colinear) out.push_back(homogeneous(right_colinear_operator(n, m)));
  out.push_back({linearize(f.matrix, eye(fl, n.dim())), la::vec(eye(fl, n.dim()))});
  return out;
}

}  // namespace

Matrix a_linear_section(const ComoduleMap& f) {
  const la::AffineResult res = la::solve_affine(section_constraints(f, false));
  if (std::holds_alternative<la::Infeasible>(res)) throw ShapeError("map has no A-linear section");
  return la::unvec(std::get<la::Feasible>(res).particular, f.source.dim(), f.target.dim());
}

ComoduleMap colinear_section(const ComoduleMap& f, const Certificate& cert, const Matrix& s) {
  const ValidationReport v = verify_certificate(cert);
  if (!v.ok()) throw CertificateMismatch("certificate does not verify: " + v.summary());
  const Coring& owner = cert.hom && cert.kind == CertificateKind::Omega ? cert.hom->source
                        : cert.hom                                    ? cert.hom->target
                                                                      : cert.coring;
  if (!(owner == f.source.coring)) throw CertificateMismatch("certificate belongs to another coring");
  const bool linear = s.rows() == f.source.dim() && s.cols() == f.target.dim() &&
                      (f.matrix * s).is_identity() &&
                      alg::is_bimodule_map(alg::as_right_module(f.target.carrier), alg::as_right_module(f.source.carrier), s);
  if (!linear) throw ShapeError("s is not an A-linear section of f");
  const la::AffineResult res = la::solve_affine(section_constraints(f, true));
  if (std::holds_alternative<la::Infeasible>(res)) {
    throw CertificateMismatch("no colinear section exists although the certificate verifies");
  }
  ComoduleMap out{f.target, f.source, la::unvec(std::get<la::Feasible>(res).particular, f.source.dim(), f.target.dim())};
  const ValidationReport check = coring::validate_comodule_map(out);
  if (!check.ok()) throw InternalAxiomError("colinear section fails verification: " + check.summary());
  return out;
}

}  // namespace coringlab::sep
