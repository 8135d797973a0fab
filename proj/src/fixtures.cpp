#include "coringlab/fixtures.hpp"

namespace coringlab::fixtures {

using alg::Bimodule;
using alg::Block;
using alg::Tensor;
using la::Matrix;

namespace {

// A coalgebra over the ground field from its coproduct on basis vectors:
// delta[j] lists (a, b, coefficient) for e_a (x) e_b.
struct Term {
  std::size_t a, b;
  long long coeff;
};

Coring coalgebra(Field f, std::size_t n, const std::vector<std::vector<Term>>& delta, const std::vector<long long>& eps) {
  const Bimodule c = Bimodule::vector_space(f, n);
  Matrix d(f, n * n, n), e(f, 1, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (const Term& t : delta[j]) d(t.a * n + t.b, j) += f.from_int(t.coeff);
    e(0, j) = f.from_int(eps[j]);
  }
  return Coring::make(c, d, e);
}

}  // namespace

Algebra product_algebra(const Algebra& a, const Algebra& b) {
  const Field f = a.field();
  const std::size_t n = a.dim() + b.dim();
  std::vector<std::vector<std::vector<la::Scalar>>> m(
      n, std::vector<std::vector<la::Scalar>>(n, std::vector<la::Scalar>(n, f.zero())));
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      for (std::size_t k = 0; k < a.dim(); ++k) m[i][j][k] = a.structure(i, j, k);
    }
  }
  const std::size_t o = a.dim();
  for (std::size_t i = 0; i < b.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      for (std::size_t k = 0; k < b.dim(); ++k) m[o + i][o + j][o + k] = b.structure(i, j, k);
    }
  }
  return Algebra::from_structure(f, m, la::vstack({a.unit(), b.unit()}));
}

Coring group_like(Field f) { return coalgebra(f, 1, {{{0, 0, 1}}}, {1}); }

Coring sweedler(const AlgebraHom& h) {
  const Algebra& s = h.target;
  const Bimodule reg = Bimodule::regular(s);
  const Bimodule s_sr = alg::restrict_right(reg, h);
  const Bimodule s_rs = alg::restrict_left(reg, h);
  const Tensor ss = alg::chain({s_sr, s_rs});
  const Tensor cc = alg::tensor(ss, ss);
  const Field f = s.field();
  const Matrix is = Matrix::identity(f, s.dim());
  // s (x) s' -> (s (x) 1) (x) (1 (x) s')
  const Matrix delta = alg::tensor_map(ss, cc, {Block{1, 2, la::kron(is, s.unit())}, Block{1, 2, la::kron(s.unit(), is)}});
  const Matrix eps = alg::tensor_map(ss, Tensor(reg), {Block{2, 1, alg::act_right_ambient(reg)}});
  return Coring::make(ss.quotient(), delta, eps);
}

Coring sweedler_split(Field f) {
  const Algebra s = Algebra::diagonal(f, 2);
  return sweedler(AlgebraHom::unit_map(s));
}

Coring sweedler_dual_numbers(Field f) {
  const Algebra a = Algebra::truncated_polynomial(f, 2);
  const Algebra s = product_algebra(a, Algebra::ground(f));
  return sweedler({a, s, Matrix::from_ints(f, {{1, 0}, {0, 1}, {1, 0}})});
}

Coring comatrix(Field f, std::size_t n) {
  std::vector<std::vector<Term>> delta(n * n);
  std::vector<long long> eps(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    eps[i * n + i] = 1;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) delta[i * n + j].push_back({i * n + k, k * n + j, 1});
    }
  }
  return coalgebra(f, n * n, delta, eps);
}

Coring dual_group_z2(Field f) {
  return coalgebra(f, 2, {{{0, 0, 1}, {1, 1, 1}}, {{0, 1, 1}, {1, 0, 1}}}, {1, 0});
}

Coring divided_power(Field f) { return coalgebra(f, 2, {{{0, 0, 1}}, {{0, 1, 1}, {1, 0, 1}}}, {1, 0}); }

std::vector<NamedCoring> coring_fixtures(Field f) {
  return {
      {"trivial-K", Coring::trivial(Algebra::ground(f))},
      {"trivial-KxK", Coring::trivial(Algebra::diagonal(f, 2))},
      {"group-like", group_like(f)},
      {"sweedler-split", sweedler_split(f)},
      {"comatrix-2", comatrix(f, 2)},
      {"dual-group-z2", dual_group_z2(f)},
      {"divided-power", divided_power(f)},
  };
}

std::vector<NamedCoring> entwined_fixtures(Field f) {
  using entwine::Entwining;
  return {
      {"entwined-KxK-group-like", entwine::coring_from_entwining(Entwining::trivial(Algebra::diagonal(f, 2), group_like(f)))},
      {"entwined-K-comatrix-2", entwine::coring_from_entwining(Entwining::trivial(Algebra::ground(f), comatrix(f, 2)))},
  };
}

functors::CoringHom group_like_to_trivial(Field f) {
  const Algebra k = Algebra::ground(f);
  return {group_like(f), Coring::trivial(k), AlgebraHom::identity(k), Matrix::from_ints(f, {{1}})};
}

std::vector<NamedHom> hom_fixtures(Field f) {
  std::vector<NamedHom> out;
  for (const NamedCoring& c : coring_fixtures(f)) {
    out.push_back({"identity-" + c.name, functors::CoringHom::identity(c.coring)});
    out.push_back({"counit-" + c.name, functors::CoringHom::counit(c.coring)});
  }
  out.push_back({"group-like-to-trivial", group_like_to_trivial(f)});
  return out;
}

std::vector<SplitEpi> split_epis(const Coring& c) {
  using coring::RightComodule;
  const Field f = c.field();
  const std::size_t n = c.dim();
  const Matrix i = Matrix::identity(f, n), z(f, n, n);
  const RightComodule reg = RightComodule::regular(c);
  std::vector<SplitEpi> out;
  out.push_back({"identity", {reg, reg, i}, i});
  out.push_back({"sum", {coring::direct_sum(reg, reg), reg, la::hstack({i, i})}, la::vstack({i, z})});
  const RightComodule cc = coring::cofree(c, c.carrier);
  const alg::Tensor ac = alg::chain({c.base_module(), c.carrier});
  const Matrix counit_c = alg::tensor_map(ac, alg::Tensor(c.carrier), {alg::Block{2, 1, alg::act_left_ambient(c.carrier)}}) *
                          alg::tensor_map(c.cc, ac, {alg::Block::map(c.epsilon), alg::Block::identity(c.carrier)});
  out.push_back({"counit-cofree", {cc, reg, counit_c}, c.delta});
  return out;
}

}  // namespace coringlab::fixtures
