#pragma once

// Small named corings and homomorphisms used by the tests, the acceptance
// suite and `coringlab export-fixtures`.

#include <string>
#include <vector>

#include "coringlab/entwine.hpp"
#include "coringlab/functors.hpp"

namespace coringlab::fixtures {

using alg::Algebra;
using alg::AlgebraHom;
using coring::Coring;
using la::Field;

/// Componentwise product A x B, basis of A followed by basis of B.
Algebra product_algebra(const Algebra& a, const Algebra& b);

/// K g with g group-like.
Coring group_like(Field f);
/// The Sweedler coring S (x)_R S of an algebra map R -> S.
Coring sweedler(const AlgebraHom& h);
/// Sweedler coring of Q -> Q x Q (or the same over F_p).
Coring sweedler_split(Field f);
/// Sweedler coring of K[x]/(x^2) -> K[x]/(x^2) x K.
Coring sweedler_dual_numbers(Field f);
/// The n x n comatrix coalgebra: delta(e_ij) = sum_k e_ik (x) e_kj.
Coring comatrix(Field f, std::size_t n);
/// Functions on Z/2 with the convolution coproduct.
Coring dual_group_z2(Field f);
/// Divided powers up to degree 1: c0 group-like, c1 primitive-like.
Coring divided_power(Field f);

struct NamedCoring {
  std::string name;
  Coring coring;
};

/// Every coring fixture over f, in a fixed order.
std::vector<NamedCoring> coring_fixtures(Field f);

/// Corings compiled from trivial entwinings: K x K with the group-like
/// coalgebra, and K with the 2 x 2 comatrix coalgebra.
std::vector<NamedCoring> entwined_fixtures(Field f);

/// K g -> K over the identity of K, g -> 1.
functors::CoringHom group_like_to_trivial(Field f);

struct NamedHom {
  std::string name;
  functors::CoringHom hom;
};

/// The identity and the counit of every coring fixture, and the map from
/// the group-like coring to the trivial one.
std::vector<NamedHom> hom_fixtures(Field f);

/// A surjective comodule map with a right A-linear section.
struct SplitEpi {
  std::string name;
  coring::ComoduleMap map;
  la::Matrix section;
};

/// The identity of C, the sum map C + C -> C and eps (x) C on the cofree
/// comodule C (x)_A C.
std::vector<SplitEpi> split_epis(const Coring& c);

}  // namespace coringlab::fixtures
