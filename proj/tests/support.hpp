#pragma once

// Hand-rolled generators shared by the property tests.

#include <random>
#include <variant>

#include "coringlab/algkit.hpp"

namespace testsupport {

using coringlab::alg::Algebra;
using coringlab::alg::Bimodule;
using coringlab::la::Field;
using coringlab::la::Matrix;

inline Matrix random_matrix(std::mt19937& rng, Field f, std::size_t r, std::size_t c, int spread = 3) {
  std::uniform_int_distribution<int> val(-spread, spread);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(val(rng));
  }
  return m;
}

inline Matrix random_invertible(std::mt19937& rng, Field f, std::size_t n) {
  for (;;) {
    Matrix m = random_matrix(rng, f, n, n, 2);
    if (coringlab::la::rank(m) == n) return m;
  }
}

/// Conjugates every action by a random change of basis.
inline Bimodule scramble(std::mt19937& rng, const Bimodule& m) {
  const Matrix p = random_invertible(rng, m.field(), m.dim());
  const Matrix pinv = coringlab::la::left_inverse(p);
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < m.left_alg().dim(); ++i) l.push_back(pinv * m.left_action(i) * p);
  for (std::size_t j = 0; j < m.right_alg().dim(); ++j) r.push_back(pinv * m.right_action(j) * p);
  return Bimodule(m.left_alg(), m.right_alg(), m.dim(), l, r);
}

/// A random linear combination of a basis of all bimodule maps source -> target.
inline Matrix random_bimodule_map(std::mt19937& rng, const Bimodule& s, const Bimodule& t) {
  using coringlab::la::linearize;
  const Field f = s.field();
  const Matrix is = Matrix::identity(f, s.dim()), it = Matrix::identity(f, t.dim());
  std::vector<Matrix> rows;
  for (std::size_t i = 0; i < s.left_alg().dim(); ++i) {
    rows.push_back(linearize(it, s.left_action(i)) - linearize(t.left_action(i), is));
  }
  for (std::size_t j = 0; j < s.right_alg().dim(); ++j) {
    rows.push_back(linearize(it, s.right_action(j)) - linearize(t.right_action(j), is));
  }
  const Matrix basis = coringlab::la::kernel_basis(coringlab::la::vstack(rows));
  Matrix v(f, t.dim() * s.dim(), 1);
  if (basis.cols() > 0) v = basis * random_matrix(rng, f, basis.cols(), 1, 2);
  return coringlab::la::unvec(v, t.dim(), s.dim());
}

/// The left A-module with the given action of each basis element, and trivial right K-action.
inline Bimodule left_module(const Algebra& a, std::size_t dim, std::vector<Matrix> actions) {
  const Algebra k = Algebra::ground(a.field());
  return Bimodule(a, k, dim, std::move(actions), {Matrix::identity(a.field(), dim)});
}

inline Bimodule right_module(const Algebra& a, std::size_t dim, std::vector<Matrix> actions) {
  const Algebra k = Algebra::ground(a.field());
  return Bimodule(k, a, dim, {Matrix::identity(a.field(), dim)}, std::move(actions));
}

/// K with x acting as zero, over K[x]/(x^2).
inline Bimodule trivial_left(const Algebra& dual_numbers) {
  const Field f = dual_numbers.field();
  return left_module(dual_numbers, 1, {Matrix::identity(f, 1), Matrix(f, 1, 1)});
}

/// Random A-A bimodule over A = K[x]/(x^2): a scrambled direct sum of copies
/// of A and of K with x acting as zero on both sides.
inline Bimodule random_dual_number_bimodule(std::mt19937& rng, const Algebra& a) {
  const Field f = a.field();
  const Bimodule reg = Bimodule::regular(a);
  const Bimodule triv(a, a, 1, {Matrix::identity(f, 1), Matrix(f, 1, 1)}, {Matrix::identity(f, 1), Matrix(f, 1, 1)});
  std::uniform_int_distribution<int> coin(0, 1), count(1, 3);
  Bimodule m = coin(rng) ? reg : triv;
  for (int i = count(rng); i > 1; --i) m = coringlab::alg::direct_sum(m, coin(rng) ? reg : triv);
  return scramble(rng, m);
}

}  // namespace testsupport
