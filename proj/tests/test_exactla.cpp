#include <random>

#include "coringlab/exactla.hpp"
#include "doctest.h"

using namespace coringlab;
using namespace coringlab::la;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);
const Field F7 = Field::prime(7);

Matrix random_matrix(std::mt19937& rng, Field f, std::size_t r, std::size_t c, int sparsity) {
  std::uniform_int_distribution<int> coin(0, sparsity);
  std::uniform_int_distribution<int> val(-3, 3);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (coin(rng) == 0) m(i, j) = f.from_int(val(rng));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("scalars are canonical") {
  CHECK(Q.parse_scalar("2/4").to_string() == "1/2");
  CHECK(Q.parse_scalar("-3/-6").to_string() == "1/2");
  CHECK(Q.parse_scalar("4/2").to_string() == "2");
  CHECK(F7.parse_scalar("-1").to_string() == "6");
  CHECK(F7.parse_scalar("15").to_string() == "1");
  CHECK((F7.from_int(3) * F7.from_int(5)).to_string() == "1");
  CHECK((F7.from_int(3).inverse()).to_string() == "5");
  CHECK_THROWS_AS(Q.parse_scalar("1/0"), ShapeError);
  CHECK_THROWS_AS(F7.parse_scalar("1/2"), ShapeError);
  CHECK_THROWS_AS(Field::prime(9), ShapeError);
  CHECK(Field::parse("Fp:2") == F2);
  CHECK(Field::parse("Q") == Q);
  CHECK_THROWS_AS(Field::parse("R"), ShapeError);
}

TEST_CASE("mixed-field arithmetic is rejected") {
  CHECK_THROWS_AS(Q.one() + F7.one(), FieldMismatch);
  Matrix a = Matrix::identity(Q, 2);
  Matrix b = Matrix::identity(F7, 2);
  CHECK_THROWS_AS(a * b, FieldMismatch);
  Matrix mixed = Matrix::identity(Q, 2);
  mixed(0, 1) = F7.one();
  CHECK_THROWS_AS(rref(mixed), FieldMismatch);
  CHECK_THROWS_AS(kernel_basis(mixed), FieldMismatch);
}

TEST_CASE("rref examples") {
  auto r = rref(Matrix::identity(Q, 2));
  CHECK(r.form == Matrix::identity(Q, 2));
  CHECK(r.pivots == std::vector<std::size_t>{0, 1});

  auto z = rref(Matrix(Q, 2, 3));
  CHECK(z.form.is_zero());
  CHECK(z.pivots.empty());

  auto s = rref(Matrix::from_ints(Q, {{2, 4}, {1, 2}}));
  CHECK(s.form == Matrix::from_ints(Q, {{1, 2}, {0, 0}}));
  CHECK(s.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("kernel_basis examples") {
  CHECK(kernel_basis(Matrix::identity(Q, 3)).cols() == 0);
  CHECK(kernel_basis(Matrix(Q, 3, 3)) == Matrix::identity(Q, 3));
  Matrix k = kernel_basis(Matrix::from_ints(Q, {{1, 1}}));
  CHECK(k == Matrix::from_ints(Q, {{-1}, {1}}));
  CHECK(independent_rows(k) == std::vector<std::size_t>{0});
}

TEST_CASE("solve_affine examples") {
  SUBCASE("identity") {
    Matrix b = Matrix::from_ints(Q, {{3}, {-1}});
    auto res = solve_affine({{Matrix::identity(Q, 2), b}});
    REQUIRE(std::holds_alternative<Feasible>(res));
    CHECK(std::get<Feasible>(res).particular == b);
    CHECK(std::get<Feasible>(res).nullspace.cols() == 0);
  }
  SUBCASE("contradictory") {
    auto res = solve_affine({{Matrix::from_ints(Q, {{1, 1}}), Matrix::from_ints(Q, {{1}})},
                             {Matrix::from_ints(Q, {{1, 1}}), Matrix::from_ints(Q, {{2}})}});
    REQUIRE(std::holds_alternative<Infeasible>(res));
    CHECK(std::get<Infeasible>(res).rank_deficit == 1);
  }
  SUBCASE("underdetermined") {
    auto res = solve_affine({{Matrix::from_ints(Q, {{1, 0}}), Matrix::from_ints(Q, {{3}})}});
    REQUIRE(std::holds_alternative<Feasible>(res));
    CHECK(std::get<Feasible>(res).particular == Matrix::from_ints(Q, {{3}, {0}}));
    CHECK(std::get<Feasible>(res).nullspace == Matrix::from_ints(Q, {{0}, {1}}));
  }
  SUBCASE("shape errors") {
    CHECK_THROWS_AS(solve_affine({{Matrix::from_ints(Q, {{1, 0}}), Matrix::from_ints(Q, {{3}})},
                                  {Matrix::from_ints(Q, {{1}}), Matrix::from_ints(Q, {{3}})}}),
                    ShapeError);
  }
  SUBCASE("trace one over F2 is solvable, 2x = 1 is not") {
    auto ok = solve_affine(Matrix::from_ints(F2, {{1, 0, 0, 1}}), Matrix::from_ints(F2, {{1}}));
    CHECK(std::holds_alternative<Feasible>(ok));
    auto bad = solve_affine(Matrix::from_ints(F2, {{2}}), Matrix::from_ints(F2, {{1}}));
    CHECK(std::holds_alternative<Infeasible>(bad));
  }
}

TEST_CASE("left_inverse and try_solve") {
  Matrix m = Matrix::from_ints(Q, {{1, 0}, {2, 1}, {0, 3}});
  CHECK(left_inverse(m) * m == Matrix::identity(Q, 2));
  CHECK_THROWS_AS(left_inverse(Matrix::from_ints(Q, {{1, 2}, {2, 4}})), ShapeError);
  Matrix x;
  CHECK(try_solve(m, m * Matrix::from_ints(Q, {{5}, {-2}}), x));
  CHECK(x == Matrix::from_ints(Q, {{5}, {-2}}));
  CHECK_FALSE(try_solve(m, Matrix::from_ints(Q, {{1}, {0}, {0}}), x));
}

TEST_CASE("property: rref idempotent, rank-nullity, affine solutions") {
  std::mt19937 rng(20240607);
  for (Field f : {Q, F2, F7}) {
    for (int trial = 0; trial < 60; ++trial) {
      std::uniform_int_distribution<int> dim(0, 6);
      const std::size_t r = dim(rng), c = dim(rng);
      Matrix m = random_matrix(rng, f, r, c, 2);
      const Rref once = rref(m);
      CHECK(rref(once.form).form == once.form);
      const Matrix k = kernel_basis(m);
      CHECK(once.pivots.size() + k.cols() == c);
      if (r > 0 && k.cols() > 0) CHECK((m * k).is_zero());

      Matrix b = m * random_matrix(rng, f, c, 1, 1);
      auto res = solve_affine(m, b);
      REQUIRE(std::holds_alternative<Feasible>(res));
      const auto& sol = std::get<Feasible>(res);
      CHECK(m * sol.particular == b);
      if (sol.nullspace.cols() > 0 && r > 0) CHECK((m * sol.nullspace).is_zero());

      // Permuting unknowns keeps the verdict.
      Matrix b2 = random_matrix(rng, f, r, 1, 1);
      const bool feasible = std::holds_alternative<Feasible>(solve_affine(m, b2));
      std::vector<std::size_t> perm(c);
      for (std::size_t j = 0; j < c; ++j) perm[j] = c - 1 - j;
      CHECK(std::holds_alternative<Feasible>(solve_affine(m.select_cols(perm), b2)) == feasible);
    }
  }
}
