#include "coringlab/algkit.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace coringlab;
using namespace coringlab::alg;
using la::Matrix;
using la::kron;

namespace {

const la::Field Q = la::Field::rationals();
const la::Field F2 = la::Field::prime(2);

// Balancing relations written out from structure constants, one vector per
// (m, a, n) basis triple; independent of tensor_over.
std::size_t brute_force_tensor_dim(const Bimodule& m, const Bimodule& n) {
  const std::size_t dm = m.dim(), dn = n.dim();
  std::vector<Matrix> rels;
  for (std::size_t i = 0; i < dm; ++i) {
    for (std::size_t t = 0; t < m.right_alg().dim(); ++t) {
      for (std::size_t j = 0; j < dn; ++j) {
        Matrix v(m.field(), 1, dm * dn);
        for (std::size_t r = 0; r < dm; ++r) v(0, r * dn + j) += m.right_action(t)(r, i);
        for (std::size_t r = 0; r < dn; ++r) v(0, i * dn + r) -= n.left_action(t)(r, j);
        rels.push_back(v);
      }
    }
  }
  return dm * dn - la::rank(la::vstack(rels));
}

void check_tensor_invariants(const TensorSpace& ts) {
  const std::size_t q = ts.dim();
  CHECK(ts.proj * ts.section == Matrix::identity(ts.left.field(), q));
  const Matrix idem = ts.section * ts.proj;
  CHECK(idem * idem == idem);
  if (ts.relations.rows() > 0) CHECK((ts.proj * ts.relations.transpose()).is_zero());
  CHECK(ts.relations.rows() + q == ts.ambient_dim);
  const Matrix in = Matrix::identity(ts.left.field(), ts.right.dim());
  const Matrix im = Matrix::identity(ts.left.field(), ts.left.dim());
  for (std::size_t i = 0; i < ts.left.left_alg().dim(); ++i) {
    CHECK(ts.proj * kron(ts.left.left_action(i), in) == ts.quotient.left_action(i) * ts.proj);
  }
  for (std::size_t j = 0; j < ts.right.right_alg().dim(); ++j) {
    CHECK(ts.proj * kron(im, ts.right.right_action(j)) == ts.quotient.right_action(j) * ts.proj);
  }
  CHECK(validate_bimodule(ts.quotient).ok());
}

}  // namespace

TEST_CASE("validate_algebra examples") {
  CHECK(validate_algebra(Algebra::ground(Q)).ok());
  CHECK(validate_algebra(Algebra::diagonal(Q, 2)).ok());
  CHECK(validate_algebra(Algebra::truncated_polynomial(Q, 3)).ok());
  CHECK(validate_algebra(Algebra::matrix_algebra(F2, 2)).ok());

  const Algebra bad = Algebra::from_structure(Q, {{{Q.from_int(2)}}}, Matrix::identity(Q, 1));
  const ValidationReport rep = validate_algebra(bad);
  CHECK_FALSE(rep.ok());
  bool unit_violation = false;
  for (const auto& v : rep.violations) unit_violation |= v.axiom.find("unit") != std::string::npos;
  CHECK(unit_violation);

  // Non-associative: e0 e0 = e1, e1 e0 = 0, e0 e1 = e0 in a 2-dim space.
  std::vector<std::vector<std::vector<la::Scalar>>> m(2, std::vector<std::vector<la::Scalar>>(
                                                             2, std::vector<la::Scalar>(2, Q.zero())));
  m[0][0][1] = Q.one();
  m[0][1][0] = Q.one();
  CHECK_FALSE(validate_algebra(Algebra::from_structure(Q, m, Matrix::from_ints(Q, {{0}, {1}}))).ok());
  CHECK_THROWS_AS(Algebra::from_structure(Q, {}, Matrix(Q, 0, 1)), ShapeError);
}

TEST_CASE("algebra homs and restriction") {
  const Algebra k = Algebra::ground(Q);
  const Algebra d = Algebra::diagonal(Q, 2);
  const AlgebraHom diag{k, d, Matrix::from_ints(Q, {{1}, {1}})};
  CHECK(validate_algebra_hom(diag).ok());
  CHECK(validate_algebra_hom(AlgebraHom::unit_map(d)).ok());
  CHECK_FALSE(validate_algebra_hom({k, d, Matrix::from_ints(Q, {{1}, {0}})}).ok());
  const AlgebraHom swap{d, d, Matrix::from_ints(Q, {{0, 1}, {1, 0}})};
  CHECK(validate_algebra_hom(swap).ok());
  CHECK(validate_algebra_hom(diag.then(swap)).ok());

  const Bimodule r = restrict_left(Bimodule::regular(d), swap);
  CHECK(validate_bimodule(r).ok());
  CHECK(r.left_action(0) == d.left(1));
  CHECK(validate_bimodule(as_right_module(Bimodule::regular(d))).ok());
  CHECK_THROWS_AS(restrict_left(Bimodule::regular(k), swap), AlgebraMismatch);
}

TEST_CASE("bimodule validation and maps") {
  const Algebra a = Algebra::truncated_polynomial(Q, 2);
  CHECK(validate_bimodule(Bimodule::regular(a)).ok());
  // Left and right x acting by non-commuting nilpotents.
  const Matrix x1 = Matrix::from_ints(Q, {{0, 1, 0}, {0, 0, 0}, {0, 0, 0}});
  const Matrix x2 = Matrix::from_ints(Q, {{0, 0, 0}, {0, 0, 1}, {0, 0, 0}});
  const Matrix i3 = Matrix::identity(Q, 3);
  const Bimodule bad(a, a, 3, {i3, x1}, {i3, x2});
  const ValidationReport rep = validate_bimodule(bad);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations.front().axiom == "actions commute");

  const Bimodule reg = Bimodule::regular(a);
  CHECK(is_bimodule_map(reg, reg, Matrix::identity(Q, 2)));
  CHECK(is_bimodule_map(reg, reg, a.left(1)));
  CHECK_FALSE(is_bimodule_map(reg, reg, Matrix::from_ints(Q, {{1, 0}, {0, 0}})));
  CHECK(validate_bimodule_map(BimoduleMap::identity(reg)).ok());
}

TEST_CASE("tensor_over examples") {
  SUBCASE("A (x)_A A for Q x Q has dimension 2, projection = multiplication") {
    const Algebra a = Algebra::diagonal(Q, 2);
    const Bimodule reg = Bimodule::regular(a);
    const TensorSpace ts = tensor_over(reg, reg);
    CHECK(ts.ambient_dim == 4);
    CHECK(ts.dim() == 2);
    CHECK(brute_force_tensor_dim(reg, reg) == 2);
    check_tensor_invariants(ts);
    // Multiplication factors through the quotient as an isomorphism.
    const Matrix mu = act_right_ambient(reg);
    CHECK((mu * ts.relations.transpose()).is_zero());
    CHECK(la::rank(mu * ts.section) == 2);
  }
  SUBCASE("over the ground field there are no relations") {
    const Bimodule m = Bimodule::vector_space(Q, 3), n = Bimodule::vector_space(Q, 2);
    const TensorSpace ts = tensor_over(m, n);
    CHECK(ts.dim() == 6);
    CHECK(ts.relations.rows() == 0);
    CHECK(ts.proj == Matrix::identity(Q, 6));
  }
  SUBCASE("A (x)_A M = M") {
    const Algebra a = Algebra::truncated_polynomial(Q, 2);
    const Bimodule reg = Bimodule::regular(a);
    const Bimodule k = testsupport::trivial_left(a);
    const TensorSpace ts = tensor_over(reg, k);
    CHECK(ts.dim() == 1);
    check_tensor_invariants(ts);
    const Matrix u = unit_left(k, ts);
    CHECK(act_left_ambient(k) * ts.section * u == Matrix::identity(Q, 1));
  }
  SUBCASE("middle algebra mismatch") {
    const Bimodule m = Bimodule::regular(Algebra::diagonal(Q, 2));
    const Bimodule n = Bimodule::regular(Algebra::truncated_polynomial(Q, 2));
    CHECK_THROWS_AS(tensor_over(m, n), AlgebraMismatch);
  }
}

TEST_CASE("induced_map examples") {
  const Algebra a = Algebra::truncated_polynomial(Q, 2);
  const Bimodule reg = Bimodule::regular(a);
  const TensorSpace ts = tensor_over(reg, reg);
  const Matrix id = Matrix::identity(Q, 2);
  CHECK(induced_map(id, id, ts, ts) == Matrix::identity(Q, ts.dim()));
  CHECK(induced_map(Matrix(Q, 2, 2), a.left(1), ts, ts).is_zero());
  // Projection onto the constant term is not right A-linear and does not descend.
  CHECK_THROWS_AS(induced_map(Matrix::from_ints(Q, {{1, 0}, {0, 0}}), id, ts, ts), NotBalanced);
}

TEST_CASE("unit isomorphisms") {
  const Algebra a = Algebra::diagonal(Q, 2);
  const Bimodule m = testsupport::right_module(a, 3,
                                               {Matrix::from_ints(Q, {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}),
                                                Matrix::from_ints(Q, {{0, 0, 0}, {0, 0, 0}, {0, 0, 1}})});
  REQUIRE(validate_bimodule(m).ok());
  const TensorSpace ma = tensor_over(m, Bimodule::regular(a));
  const Matrix u = unit_right(m, ma);
  const Matrix mult = act_right_ambient(m) * ma.section;
  CHECK(mult * u == Matrix::identity(Q, 3));
  CHECK(u * mult == Matrix::identity(Q, ma.dim()));
}

TEST_CASE("nested tensors and rebracketing") {
  const Algebra a = Algebra::truncated_polynomial(Q, 2);
  const Bimodule reg = Bimodule::regular(a);
  const Bimodule k = testsupport::trivial_left(a);
  const Tensor left = chain({reg, reg, k});
  const Tensor right = chain_right({reg, reg, k});
  CHECK(left.dim() == 1);
  CHECK(right.dim() == 1);
  CHECK(left.ambient_dim() == 4);
  CHECK(left.proj() * left.section() == Matrix::identity(Q, 1));
  const Matrix lr = rebracket(left, right), rl = rebracket(right, left);
  CHECK(lr * rl == Matrix::identity(Q, 1));

  const Matrix id = tensor_map(left, left, {Block::identity(reg), Block::identity(reg), Block::identity(k)});
  CHECK(id == Matrix::identity(Q, 1));
  // Left multiplication by x on the first factor is balanced.
  CHECK_NOTHROW(tensor_map_checked(left, left, {Block::map(a.left(1)), Block::identity(reg), Block::identity(k)}));
  const Tensor aa = chain({reg, reg});
  CHECK_THROWS_AS(
      tensor_map_checked(aa, aa, {Block::map(Matrix::from_ints(Q, {{1, 0}, {0, 0}})), Block::identity(reg)}),
      NotBalanced);
  CHECK_THROWS_AS(tensor_map(left, left, {Block::identity(reg), Block::identity(reg)}), ShapeError);
}

TEST_CASE("preserves_equalizer examples") {
  const Algebra a = Algebra::truncated_polynomial(Q, 2);
  const Bimodule x = testsupport::right_module(a, 2, {a.right(0), a.right(1)});
  const BimoduleMap f{x, x, a.left(1)};
  const BimoduleMap g{x, x, Matrix(Q, 2, 2)};
  REQUIRE(validate_bimodule_map(f).ok());
  const BimoduleMap k = equalizer(f, g);
  CHECK(k.source.dim() == 1);

  const Bimodule free1 = as_left_module(Bimodule::regular(a));
  const Bimodule free2 = direct_sum(free1, free1);
  CHECK(preserves_equalizer(free1, f, g, k, Side::Right));
  CHECK(preserves_equalizer(free2, f, g, Side::Right));
  CHECK_FALSE(preserves_equalizer(testsupport::trivial_left(a), f, g, k, Side::Right));

  // Mirror image: left modules, z a right module on the left.
  const Bimodule y = testsupport::left_module(a, 2, {a.left(0), a.left(1)});
  const BimoduleMap fl{y, y, a.right(1)}, gl{y, y, Matrix(Q, 2, 2)};
  const Bimodule kr = testsupport::right_module(a, 1, {Matrix::identity(Q, 1), Matrix(Q, 1, 1)});
  CHECK_FALSE(preserves_equalizer(kr, fl, gl, Side::Left));
  CHECK(preserves_equalizer(as_right_module(Bimodule::regular(a)), fl, gl, Side::Left));
}

TEST_CASE("is_projective examples") {
  const Algebra a = Algebra::truncated_polynomial(Q, 2);
  const Bimodule free1 = as_left_module(Bimodule::regular(a));
  const ProjectivityResult pr = projectivity(free1);
  REQUIRE(pr.projective);
  // Dual basis reconstructs every basis vector.
  for (std::size_t j = 0; j < free1.dim(); ++j) {
    Matrix sum(Q, free1.dim(), 1);
    for (std::size_t i = 0; i < free1.dim(); ++i) {
      sum += free1.left_by(pr.dual_basis[i].col(j)) * Matrix::identity(Q, free1.dim()).col(i);
    }
    CHECK(sum == Matrix::identity(Q, free1.dim()).col(j));
  }
  CHECK_FALSE(is_projective(testsupport::trivial_left(a)));
  CHECK_FALSE(is_projective(testsupport::trivial_left(Algebra::truncated_polynomial(F2, 2))));

  const Algebra d = Algebra::diagonal(Q, 2);
  const Bimodule ae = testsupport::left_module(d, 1, {Matrix::identity(Q, 1), Matrix(Q, 1, 1)});
  CHECK(is_projective(ae));
}

TEST_CASE("property: tensor invariants, functoriality, projective implies preservation") {
  std::mt19937 rng(915);
  for (la::Field f : {Q, F2}) {
    const Algebra a = Algebra::truncated_polynomial(f, 2);
    for (int trial = 0; trial < 12; ++trial) {
      const Bimodule m = testsupport::random_dual_number_bimodule(rng, a);
      const Bimodule n = testsupport::random_dual_number_bimodule(rng, a);
      REQUIRE(validate_bimodule(m).ok());
      const TensorSpace ts = tensor_over(m, n);
      check_tensor_invariants(ts);
      CHECK(ts.dim() == brute_force_tensor_dim(m, n));

      const Matrix f1 = testsupport::random_bimodule_map(rng, m, m);
      const Matrix f2 = testsupport::random_bimodule_map(rng, m, m);
      const Matrix g1 = testsupport::random_bimodule_map(rng, n, n);
      const Matrix g2 = testsupport::random_bimodule_map(rng, n, n);
      CHECK(induced_map(f2 * f1, g2 * g1, ts, ts) == induced_map(f2, g2, ts, ts) * induced_map(f1, g1, ts, ts));

      // Associativity of dimensions through both bracketings.
      const Bimodule p = testsupport::random_dual_number_bimodule(rng, a);
      const Tensor l = chain({m, n, p}), r = chain_right({m, n, p});
      CHECK(l.dim() == r.dim());
      CHECK(rebracket(l, r) * rebracket(r, l) == Matrix::identity(f, l.dim()));

      const Bimodule z = as_left_module(m);
      if (is_projective(z)) {
        const Bimodule xr = as_right_module(n);
        const BimoduleMap e1{xr, xr, testsupport::random_bimodule_map(rng, xr, xr)};
        const BimoduleMap e2{xr, xr, testsupport::random_bimodule_map(rng, xr, xr)};
        CHECK(preserves_equalizer(z, e1, e2, Side::Right));
      }
    }
  }
}
