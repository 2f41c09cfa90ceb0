#include <doctest.h>

#include "support.hpp"
#include "torusmono/bundle.hpp"
#include "torusmono/riccati.hpp"

using namespace torusmono;
using Tag = RuledBundleClass::Tag;
using testing_support::random_complex;

namespace {

MobiusMap random_conjugator(std::mt19937_64& g) {
  for (;;) {
    cplx a = random_complex(g, 1.0) + 1.0, b = random_complex(g, 1.0);
    cplx c = random_complex(g, 1.0), d = random_complex(g, 1.0) + 1.0;
    if (std::abs(a * d - b * c) > 0.3) return MobiusMap::from_coefficients(a, b, c, d);
  }
}

MobiusMap conj(const MobiusMap& c, const MobiusMap& f) { return compose(compose(c, f), c.inverse()); }

RepClass linear(cplx a, cplx b) { return {RepTag::Linear, a, b, MobiusMap::identity()}; }

}  // namespace

TEST_SUITE("bundle") {
  TEST_CASE("intersection form") {
    for (int e = -3; e <= 4; ++e) {
      SurfaceContext ctx{2, e};
      for (long n = -4; n <= 4; ++n) {
        HomologyClass sigma{1, n};
        CHECK(intersect(ctx, sigma, sigma) == -e + 2 * n);
        CHECK(intersect(ctx, {1, 0}, sigma) == n - e);
      }
      CHECK(intersect(ctx, {0, 1}, {0, 1}) == 0);
      CHECK(intersect(ctx, {1, 0}, {0, 1}) == 1);
      CHECK(intersect(ctx, {1, 0}, {1, 0}) == -e);
    }
  }

  TEST_CASE("intersection form is symmetric and bilinear") {
    for (int e = -2; e <= 2; ++e) {
      SurfaceContext ctx{3, e};
      for (long m1 = -5; m1 <= 5; ++m1)
        for (long n1 = -5; n1 <= 5; ++n1)
          for (long m2 = -5; m2 <= 5; ++m2)
            for (long n2 = -5; n2 <= 5; ++n2) {
              HomologyClass a{m1, n1}, b{m2, n2};
              CHECK(intersect(ctx, a, b) == intersect(ctx, b, a));
              long expanded = m1 * m2 * intersect(ctx, {1, 0}, {1, 0}) +
                              (m1 * n2 + n1 * m2) * intersect(ctx, {1, 0}, {0, 1}) +
                              n1 * n2 * intersect(ctx, {0, 1}, {0, 1});
              CHECK(intersect(ctx, a, b) == expanded);
            }
    }
  }

  TEST_CASE("gap between -e and e") {
    for (int e = 1; e <= 6; ++e) {
      SurfaceContext ctx{4, e};
      for (long n = 0; n <= 20; ++n) {
        HomologyClass sigma{1, n};
        if (intersect(ctx, {1, 0}, sigma) >= 0 && n != 0) CHECK(intersect(ctx, sigma, sigma) >= e);
      }
    }
  }

  TEST_CASE("tangent bundle and tangencies") {
    CHECK(tangent_bundle_class(1, 0).n == 0);
    CHECK(tangent_bundle_class(0, 0).n == 2);
    CHECK(tangent_bundle_class(2, 3).n == -5);
    CHECK(tangent_bundle_class(2, 3).m == 0);
    CHECK_THROWS_AS(tangent_bundle_class(-1, 0), PreconditionError);
    CHECK_THROWS_AS(tangent_bundle_class(1, -1), PreconditionError);

    CHECK(tangency_count({1, 0}, 0, 0) == 0);
    CHECK(tangency_count({1, 0}, 0, 1) == 2);
    for (int g = 0; g <= 4; ++g)
      for (int e = -g; e <= 2 * g; ++e)
        for (int d = 0; d <= 3; ++d)
          for (long n = -3; n <= 6; ++n)
            CHECK(tangency_count({g, e}, d, n) == 2 * n - e - 2 + 2 * g + d);
    for (int g = 2; g <= 5; ++g)
      for (long n = 0; n <= 4; ++n) {
        int e = static_cast<int>(2 * n + 2 * g - 2);
        CHECK(tangency_count({g, e}, 0, n) == 0);
      }
  }

  TEST_CASE("rigidity") {
    for (int g = 2; g <= 8; ++g) {
      RigiditySolution s = poincare_rigidity(g);
      CHECK_FALSE(s.torus_case);
      CHECK(s.unique());
      CHECK(s.e == 2 * g - 2);
      CHECK(s.n == 0);
    }
    CHECK(poincare_rigidity(1).torus_case);
    CHECK_THROWS_AS(poincare_rigidity(0), PreconditionError);
    CHECK(within_nagata_bound({2, 2}));
    CHECK_FALSE(within_nagata_bound({2, 3}));
    CHECK_FALSE(within_nagata_bound({2, -3}));
  }

  TEST_CASE("elementary transformations") {
    CHECK(elm_section_effect(true, 0) == -1);
    CHECK(elm_section_effect(false, 0) == 1);
    auto g = testing_support::rng(50);
    std::bernoulli_distribution coin;
    std::uniform_int_distribution<long> start(-6, 6);
    for (int trial = 0; trial < 200; ++trial) {
      long s = start(g);
      long parity = ((s % 2) + 2) % 2;
      int k = 1 + trial % 9;
      for (int i = 0; i < k; ++i) s = elm_section_effect(coin(g), s);
      CHECK(((s % 2) + 2) % 2 == (parity + k) % 2);
    }

    cplx x{0.3, 0.2};
    DivisorOnCurve d0;
    DivisorOnCurve once = elm_on_line_bundle(d0, x, SectionKind::Zero);
    CHECK(once == DivisorOnCurve::point(x, -1));
    CHECK(elm_on_line_bundle(once, x, SectionKind::Infinity) == d0);
    CHECK(elm_on_line_bundle(d0, x, SectionKind::Infinity).degree() == 1);
    // zero at 0 then zero at u0
    cplx u0{0.25, 0.4};
    DivisorOnCurve two = elm_on_line_bundle(elm_on_line_bundle(d0, 0.0, SectionKind::Zero), u0, SectionKind::Zero);
    CHECK(two == (DivisorOnCurve::point(0.0, -1) - DivisorOnCurve::point(u0)));
    CHECK(two.degree() == -2);
    CHECK(class_of_divisor(two, {0.0, 1.0}).same_as(RuledBundleClass::decomposable(-2)));
  }

  TEST_CASE("divisor classes") {
    cplx tau{0.5, 1.0};
    CHECK(class_of_divisor({}, tau).tag == Tag::Trivial);
    DivisorOnCurve principal = DivisorOnCurve::point({0.2, 0.1}) + DivisorOnCurve::point(cplx{0.8, -0.1} + tau) -
                               DivisorOnCurve::point(0.0, 2);
    CHECK(class_of_divisor(principal, tau).tag == Tag::Trivial);
    cplx u0{0.3, 0.2};
    RuledBundleClass l = class_of_divisor(DivisorOnCurve::point(u0) - DivisorOnCurve::point(0.0), tau);
    CHECK(l.tag == Tag::LineBundleBar);
    CHECK(l.same_as(RuledBundleClass::line_bundle_bar(-u0, tau)));
    CHECK(l.same_as(RuledBundleClass::line_bundle_bar(u0 + 2.0 - tau, tau)));
    CHECK(l.e() == 0);
    CHECK(RuledBundleClass::pminus1().e() == -1);
    CHECK(RuledBundleClass::decomposable(-2).e() == 2);
    CHECK(DivisorOnCurve::point(u0, -2).to_string().find("-2") == 0);
  }

  TEST_CASE("two-step construction cases") {
    cplx tau{0.0, 1.0}, u0{0.3, 0.15};
    CHECK(case_analysis_second_elm(QLocation::SpecialPoint, u0, tau).tag == Tag::Trivial);
    CHECK(case_analysis_second_elm(QLocation::GenericOffFiber, u0, tau)
              .same_as(RuledBundleClass::line_bundle_bar(u0, tau)));
    CHECK(case_analysis_second_elm(QLocation::SameFiberGeneric, u0, tau).tag == Tag::P0);
    CHECK(case_analysis_second_elm(QLocation::OnSigmaInfinity, u0, tau)
              .same_as(RuledBundleClass::decomposable(-2)));
    CHECK_THROWS_AS(case_analysis_second_elm(QLocation::GenericOffFiber, 1.0, tau), PreconditionError);
  }

  TEST_CASE("suspension of linear pairs") {
    cplx tau{0.0, 1.0};
    CHECK(classify_suspension(linear(std::exp(0.3), std::exp(cplx{0.0, 0.3})), tau).bundle.tag == Tag::Trivial);
    // lattice shifts of the exponents stay trivial
    cplx c{0.2, -0.4};
    CHECK(classify_suspension(linear(std::exp(c), std::exp(c * tau + two_pi_i * 3.0)), tau).bundle.tag ==
          Tag::Trivial);

    auto g = testing_support::rng(51);
    for (cplx t : testing_support::kLattices) {
      auto ctx = WeierstrassContext::make(t);
      for (int k = 0; k < 10; ++k) {
        cplx u0 = testing_support::cell_point(g, ctx, 0.1);
        cplx cc = random_complex(g, 0.5);
        MonodromyPair m = rh_map(ctx, A0Point::main(u0, cc));
        SuspensionClassification s = classify_suspension(linear(m.x, m.y), t, 1e-9, &ctx);
        REQUIRE(s.bundle.tag == Tag::LineBundleBar);
        CHECK(s.bundle.same_as(RuledBundleClass::line_bundle_bar(u0, t), 1e-9));
        REQUIRE(s.connection.has_value());
        MonodromyPair back = rh_map(ctx, *s.connection);
        CHECK(std::abs(back.x / m.x - 1.0) < 1e-8);
        CHECK(std::abs(back.y / m.y - 1.0) < 1e-8);
      }
    }
  }

  TEST_CASE("ambiguous lattice membership") {
    cplx tau{0.0, 1.0};
    double tol = 1e-9;
    // w = (tau log a1 - log a_tau) / (2 pi i) lands 5 tol from 0
    cplx c{0.2, 0.1};
    cplx shift = two_pi_i * 5.0 * tol;
    CHECK_THROWS_AS(classify_suspension(linear(std::exp(c), std::exp(c * tau - shift)), tau, tol), AmbiguityError);
    CHECK(classify_suspension(linear(std::exp(c), std::exp(c * tau - shift * 100.0)), tau, tol).bundle.tag ==
          Tag::LineBundleBar);
  }

  TEST_CASE("euclidean and dihedral suspensions") {
    cplx tau{0.5, 1.0};
    RepClass prop{RepTag::Euclidean, {0.7, 0.2}, cplx{0.7, 0.2} * tau, MobiusMap::identity()};
    CHECK(classify_suspension(prop, tau).bundle.tag == Tag::Trivial);
    for (cplx t : testing_support::kLattices) {
      auto ctx = WeierstrassContext::make(t);
      for (cplx gamma : {cplx{0.0}, cplx{1.0, -2.0}}) {
        EuclideanMonodromy e = euclidean_monodromy(ctx, gamma);
        RepClass r = classify_commuting_pair(e.map1, e.map_tau);
        CHECK(classify_suspension(r, t).bundle.tag == Tag::P0);
      }
    }
    RepClass dih = classify_commuting_pair(MobiusMap::from_coefficients(-1.0, 0.0, 0.0, 1.0),
                                           MobiusMap::from_coefficients(0.0, 1.0, 1.0, 0.0));
    CHECK(classify_suspension(dih, tau).bundle.tag == Tag::Pminus1);
    CHECK(classify_suspension(RepClass{}, tau).bundle.tag == Tag::Trivial);
  }

  TEST_CASE("classification is conjugation invariant") {
    auto g = testing_support::rng(52);
    cplx tau{0.0, 1.0};
    auto ctx = WeierstrassContext::make(tau);
    MonodromyPair m = rh_map(ctx, A0Point::main({0.31, 0.22}, {0.2, 0.1}));
    EuclideanMonodromy e = euclidean_monodromy(ctx, 0.5);
    const std::pair<MobiusMap, MobiusMap> pairs[] = {
        {MobiusMap::affine(m.x, 0.0), MobiusMap::affine(m.y, 0.0)},
        {MobiusMap::affine(std::exp(0.3), 0.0), MobiusMap::affine(std::exp(cplx{0.0, 0.3}), 0.0)},
        {e.map1, e.map_tau},
        {MobiusMap::from_coefficients(-1.0, 0.0, 0.0, 1.0), MobiusMap::from_coefficients(0.0, 1.0, 1.0, 0.0)},
    };
    for (const auto& [f, h] : pairs) {
      RuledBundleClass ref = classify_suspension(classify_commuting_pair(f, h), tau, 1e-8).bundle;
      for (int k = 0; k < 20; ++k) {
        MobiusMap c = random_conjugator(g);
        RuledBundleClass got = classify_suspension(classify_commuting_pair(conj(c, f), conj(c, h)), tau, 1e-8).bundle;
        CHECK(got.same_as(ref, 1e-7));
      }
    }
  }
}
