#include <doctest.h>

#include "support.hpp"
#include "torusmono/mobius.hpp"

using namespace torusmono;
using testing_support::random_complex;

namespace {

MobiusMap random_conjugator(std::mt19937_64& g) {
  // moderate condition number: entries in a unit box, det bounded below
  for (;;) {
    cplx a = random_complex(g, 1.0) + 1.0, b = random_complex(g, 1.0);
    cplx c = random_complex(g, 1.0), d = random_complex(g, 1.0) + 1.0;
    if (std::abs(a * d - b * c) > 0.3) return MobiusMap::from_coefficients(a, b, c, d);
  }
}

MobiusMap conj(const MobiusMap& c, const MobiusMap& f) { return compose(compose(c, f), c.inverse()); }

}  // namespace

TEST_SUITE("mobius") {
  TEST_CASE("composition examples") {
    MobiusMap f = MobiusMap::affine(2.0, 0.0), g = MobiusMap::affine(1.0, 1.0);
    CHECK(same_projective(compose(MobiusMap::identity(), f), f));
    CHECK(same_projective(compose(f, g), MobiusMap::affine(2.0, 2.0)));

    MobiusMap neg = MobiusMap::from_coefficients(-1.0, 0.0, 0.0, 1.0);
    MobiusMap inv = MobiusMap::from_coefficients(0.0, 1.0, 1.0, 0.0);
    MobiusMap expected = MobiusMap::from_coefficients(0.0, -1.0, 1.0, 0.0);  // -1/z
    CHECK(same_projective(compose(neg, inv), expected));
    CHECK(same_projective(compose(inv, neg), expected));
    CHECK(commutator_defect(neg, inv) < 1e-14);
  }

  TEST_CASE("action on the sphere") {
    MobiusMap inv = MobiusMap::from_coefficients(0.0, 1.0, 1.0, 0.0);
    CHECK(inv(ProjectivePoint::infinity()) == ProjectivePoint::finite(0.0));
    CHECK(inv(ProjectivePoint::finite(0.0)).infinite);
    CHECK(MobiusMap::identity()(ProjectivePoint::finite({5.0, 2.0})) ==
          ProjectivePoint::finite({5.0, 2.0}));
    MobiusMap cayley = MobiusMap::from_coefficients(1.0, 1.0, 1.0, -1.0);
    CHECK(apply(cayley, ProjectivePoint::finite(1.0)).infinite);
    CHECK(MobiusMap::affine(2.0, 1.0)(ProjectivePoint::infinity()).infinite);
  }

  TEST_CASE("degenerate coefficients are rejected") {
    CHECK_THROWS_AS(MobiusMap::from_coefficients(1.0, 2.0, 2.0, 4.0), DegeneracyError);
  }

  TEST_CASE("composition is associative on normalized representatives") {
    auto g = testing_support::rng(1);
    for (int k = 0; k < 50; ++k) {
      MobiusMap a = random_conjugator(g), b = random_conjugator(g), c = random_conjugator(g);
      MobiusMap l = compose(compose(a, b), c), r = compose(a, compose(b, c));
      cplx phase = l.a / r.a;  // unimodular after normalization
      CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
      for (auto [x, y] : {std::pair{l.a, r.a}, {l.b, r.b}, {l.c, r.c}, {l.d, r.d}})
        CHECK(std::abs(x - phase * y) < 1e-12);
    }
  }

  TEST_CASE("normal forms") {
    RepClass lin = classify_commuting_pair(MobiusMap::affine(2.0, 0.0), MobiusMap::affine(3.0, 0.0));
    CHECK(lin.tag == RepTag::Linear);
    CHECK(std::abs(lin.first - 2.0) < 1e-12);
    CHECK(std::abs(lin.second - 3.0) < 1e-12);

    RepClass euc = classify_commuting_pair(MobiusMap::affine(1.0, 1.0),
                                           MobiusMap::affine(1.0, cplx{0.0, 1.0}));
    CHECK(euc.tag == RepTag::Euclidean);
    CHECK(std::abs(euc.second / euc.first - cplx{0.0, 1.0}) < 1e-12);

    MobiusMap neg = MobiusMap::from_coefficients(-1.0, 0.0, 0.0, 1.0);
    MobiusMap inv = MobiusMap::from_coefficients(0.0, 1.0, 1.0, 0.0);
    RepClass dih = classify_commuting_pair(neg, inv);
    CHECK(dih.tag == RepTag::Dihedral);
    CHECK(dih.first == cplx{-1.0});
    CHECK(dih.second == cplx{0.0});

    CHECK(classify_commuting_pair(MobiusMap::identity(), MobiusMap::identity()).tag ==
          RepTag::Trivial);
  }

  TEST_CASE("normal form conjugator realizes the normal form") {
    MobiusMap c = MobiusMap::from_coefficients({1.0, 0.5}, 2.0, {0.3, -0.2}, 1.0);
    MobiusMap f = conj(c, MobiusMap::affine(2.0, 0.0)), g = conj(c, MobiusMap::affine({0.0, 1.5}, 0.0));
    RepClass r = classify_commuting_pair(f, g);
    REQUIRE(r.tag == RepTag::Linear);
    CHECK(same_projective(conj(r.conjugator, f), MobiusMap::affine(r.first, 0.0)));
    CHECK(same_projective(conj(r.conjugator, g), MobiusMap::affine(r.second, 0.0)));
  }

  TEST_CASE("non-commuting pair is rejected") {
    CHECK_THROWS_AS(classify_commuting_pair(MobiusMap::affine(2.0, 0.0), MobiusMap::affine(1.0, 1.0)),
                    PreconditionError);
  }

  TEST_CASE("near-parabolic element is ambiguous") {
    // tr^2/det - 4 of diag(1 + e, 1) is about e^2
    MobiusMap f = MobiusMap::affine(1.0 + 1e-3, 0.0);
    CHECK_THROWS_AS(classify_commuting_pair(f, MobiusMap::identity()), AmbiguityError);
  }

  TEST_CASE("tag is conjugation invariant") {
    auto g = testing_support::rng(2);
    const std::pair<MobiusMap, MobiusMap> pairs[] = {
        {MobiusMap::affine(2.0, 0.0), MobiusMap::affine({0.3, 0.8}, 0.0)},
        {MobiusMap::affine(1.0, 1.0), MobiusMap::affine(1.0, {0.2, 1.1})},
        {MobiusMap::from_coefficients(-1.0, 0.0, 0.0, 1.0), MobiusMap::from_coefficients(0.0, 1.0, 1.0, 0.0)},
    };
    for (const auto& [f, h] : pairs) {
      RepTag tag = classify_commuting_pair(f, h).tag;
      for (int k = 0; k < 20; ++k) {
        MobiusMap c = random_conjugator(g);
        CHECK(classify_commuting_pair(conj(c, f), conj(c, h)).tag == tag);
      }
    }
  }

  TEST_CASE("B1 coordinates") {
    cplx tau{0.0, 1.0};
    B1Point p = b1_from_affine_pair({1.0, 1.0, 1.0, tau});
    CHECK(p.a1 == cplx{1.0});
    CHECK(std::abs(p.bdir[0] * tau - p.bdir[1]) < 1e-15);

    // (a1, a_tau) = (2, 3) forces b_tau = 2 b1
    B1Point q = b1_from_affine_pair({2.0, 0.7, 3.0, 1.4});
    CHECK(std::abs(q.bdir[0] - 0.5) < 1e-15);
    CHECK(std::abs(q.bdir[1] - 1.0) < 1e-15);
    CHECK(std::abs(q.constraint_residual()) < 1e-12);

    CHECK_THROWS_AS(b1_from_affine_pair({2.0, 0.0, 3.0, 0.0}), DegeneracyError);
  }

  TEST_CASE("B1 direction is forced by the multipliers") {
    auto g = testing_support::rng(3);
    for (int k = 0; k < 50; ++k) {
      cplx a1 = random_complex(g, 2.0), at = random_complex(g, 2.0), b1 = random_complex(g, 1.0);
      if (std::abs(a1 - 1.0) < 0.1) continue;
      AffinePair p{a1, b1, at, (at - 1.0) * b1 / (a1 - 1.0)};
      B1Point b = b1_from_affine_pair(p);
      CHECK(std::abs(b.constraint_residual()) < 1e-12);
      auto forced = normalize_direction(a1 - 1.0, at - 1.0);
      CHECK(std::abs(b.bdir[0] - forced[0]) < 1e-12);
      CHECK(std::abs(b.bdir[1] - forced[1]) < 1e-12);
    }
  }
}
