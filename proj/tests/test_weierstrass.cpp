#include <doctest.h>

#include "support.hpp"
#include "torusmono/path.hpp"
#include "torusmono/weierstrass.hpp"

using namespace torusmono;
using testing_support::cell_point;
using testing_support::kLattices;

namespace {

// Eisenstein sums over square shells max(|m|,|n|) <= N.
struct LatticeSums {
  cplx g2, g3, wp;
};

LatticeSums direct_sums(cplx tau, cplx u, long N) {
  cplx s4{}, s6{}, p = 1.0 / (u * u);
  for (long m = -N; m <= N; ++m)
    for (long n = -N; n <= N; ++n) {
      if (m == 0 && n == 0) continue;
      cplx l = static_cast<double>(m) + static_cast<double>(n) * tau;
      cplx l2 = l * l;
      s4 += 1.0 / (l2 * l2);
      s6 += 1.0 / (l2 * l2 * l2);
      p += 1.0 / ((u - l) * (u - l)) - 1.0 / l2;
    }
  return {60.0 * s4, 140.0 * s6, p};
}

// Shell tails decay like 1/N^2 with a 1/N^3 correction; two Richardson
// passes remove both.
LatticeSums extrapolated_sums(cplx tau, cplx u) {
  LatticeSums a = direct_sums(tau, u, 40), b = direct_sums(tau, u, 80), c = direct_sums(tau, u, 160);
  auto rich = [](cplx x, cplx y, cplx z) {
    cplx r1 = (4.0 * y - x) / 3.0, r2 = (4.0 * z - y) / 3.0;
    return (8.0 * r2 - r1) / 7.0;
  };
  return {rich(a.g2, b.g2, c.g2), rich(a.g3, b.g3, c.g3), rich(a.wp, b.wp, c.wp)};
}

}  // namespace

TEST_SUITE("weierstrass") {
  TEST_CASE("invariants agree with lattice sums") {
    for (cplx tau : kLattices) {
      auto ctx = WeierstrassContext::make(tau);
      cplx u{0.23, 0.17};
      LatticeSums s = extrapolated_sums(tau, u);
      CHECK(std::abs(ctx.g2() - s.g2) < 1e-6 * std::max(1.0, std::abs(s.g2)));
      CHECK(std::abs(ctx.g3() - s.g3) < 1e-6 * std::max(1.0, std::abs(s.g3)));
      CHECK(std::abs(ctx.wp(u) - s.wp) < 1e-6 * std::abs(s.wp));
    }
  }

  TEST_CASE("symmetric lattices") {
    auto square = WeierstrassContext::make({0.0, 1.0});
    CHECK(std::abs(square.g3()) <= square.accuracy());
    auto hex = WeierstrassContext::make(std::polar(1.0, pi / 3.0));
    CHECK(std::abs(hex.g2()) <= hex.accuracy() * 10.0);
  }

  TEST_CASE("Legendre relation") {
    auto g = testing_support::rng(10);
    std::uniform_real_distribution<double> re(-0.8, 0.8), im(0.3, 2.0);
    for (int k = 0; k < 20; ++k) {
      auto ctx = WeierstrassContext::make({re(g), im(g)});
      CHECK(ctx.legendre_residual() <= ctx.accuracy());
    }
  }

  TEST_CASE("zeta is minus the integral of wp") {
    // 2 zeta(u) = zeta(u) - zeta(-u) = -integral of wp from -u to u; wp has no residue.
    for (cplx tau : kLattices) {
      auto ctx = WeierstrassContext::make(tau);
      auto g = testing_support::rng(11);
      for (int k = 0; k < 5; ++k) {
        cplx u = cell_point(g, ctx, 0.15);
        PathSpec path = make_polyline({-u, u}, {0.0}, tau, true, 0.05);
        auto r = integrate_along(path, [&](cplx z) { return ctx.wp(z); });
        CHECK(std::abs(-0.5 * r.value - ctx.zeta(u)) < 1e-9);
      }
    }
  }

  TEST_CASE("contour integral of zeta over a cell is 2 pi i") {
    for (cplx tau : kLattices) {
      auto ctx = WeierstrassContext::make(tau);
      cplx o{0.013, -0.021};
      cplx a = o - 0.5 - 0.5 * tau;
      PathSpec path = make_polyline({a, a + 1.0, a + 1.0 + tau, a + tau, a}, {}, tau, false, 0.1);
      auto r = integrate_along(path, [&](cplx z) { return ctx.zeta(z); });
      CHECK(std::abs(r.value - two_pi_i) < 1e-9);
    }
  }

  TEST_CASE("differential equation") {
    for (cplx tau : kLattices) {
      auto ctx = WeierstrassContext::make(tau);
      auto g = testing_support::rng(12);
      for (int k = 0; k < 100; ++k) {
        cplx u = cell_point(g, ctx, 0.25);
        cplx p = ctx.wp(u), d = ctx.wp_prime(u);
        cplx rhs = 4.0 * p * p * p - ctx.g2() * p - ctx.g3();
        CHECK(std::abs(d * d - rhs) <= 10.0 * ctx.accuracy() * std::max(1.0, std::abs(rhs)));
        CHECK(std::abs(ctx.wp_second(u) - (6.0 * p * p - 0.5 * ctx.g2())) < 1e-15 * std::max(1.0, std::abs(p * p)));
      }
    }
  }

  TEST_CASE("parity and periodicity") {
    for (cplx tau : kLattices) {
      auto ctx = WeierstrassContext::make(tau);
      auto g = testing_support::rng(13);
      for (int k = 0; k < 100; ++k) {
        cplx u = cell_point(g, ctx, 0.05);
        double s = std::max(1.0, std::abs(ctx.wp(u)));
        CHECK(std::abs(ctx.wp(-u) - ctx.wp(u)) < 1e-12 * s);
        CHECK(std::abs(ctx.wp(u + 1.0) - ctx.wp(u)) < 1e-11 * s);
        CHECK(std::abs(ctx.wp(u + tau) - ctx.wp(u)) < 1e-11 * s);
        CHECK(std::abs(ctx.zeta(-u) + ctx.zeta(u)) < 1e-12 * s);
        CHECK(std::abs(ctx.zeta(u + 1.0) - ctx.zeta(u) - ctx.eta1()) < 1e-11 * s);
        CHECK(std::abs(ctx.zeta(u + tau) - ctx.zeta(u) - ctx.eta_tau()) < 1e-11 * s);
        CHECK(std::abs(ctx.zeta(u - 2.0 + tau) - ctx.zeta(u) - ctx.eta(-2, 1)) < 1e-10 * s);
        CHECK(std::abs(ctx.sigma(-u) + ctx.sigma(u)) < 1e-12 * std::abs(ctx.sigma(u)));
      }
    }
  }

  TEST_CASE("sigma quasi-periodicity") {
    for (cplx tau : kLattices) {
      auto ctx = WeierstrassContext::make(tau);
      auto g = testing_support::rng(14);
      for (int k = 0; k < 100; ++k) {
        cplx u = cell_point(g, ctx, 0.05);
        cplx s = ctx.sigma(u);
        cplx r1 = -std::exp(ctx.eta1() * (u + 0.5));
        cplx rt = -std::exp(ctx.eta_tau() * (u + 0.5 * tau));
        CHECK(std::abs(ctx.sigma(u + 1.0) / s - r1) < 1e-10 * std::abs(r1));
        CHECK(std::abs(ctx.sigma(u + tau) / s - rt) < 1e-10 * std::abs(rt));
      }
    }
  }

  TEST_CASE("finite-difference derivatives") {
    const double h = 1e-5;
    for (cplx tau : kLattices) {
      auto ctx = WeierstrassContext::make(tau);
      auto g = testing_support::rng(15);
      for (int k = 0; k < 100; ++k) {
        cplx u = cell_point(g, ctx, 0.2);
        cplx dz = (ctx.zeta(u + h) - ctx.zeta(u - h)) / (2.0 * h);
        CHECK(std::abs(dz + ctx.wp(u)) < 1e-6 * std::max(1.0, std::abs(ctx.wp(u))));
        cplx dp = (ctx.wp(u + h) - ctx.wp(u - h)) / (2.0 * h);
        CHECK(std::abs(dp - ctx.wp_prime(u)) < 1e-6 * std::max(1.0, std::abs(ctx.wp_prime(u))));
        cplx dl = (std::log(ctx.sigma(u + h) / ctx.sigma(u - h))) / (2.0 * h);
        CHECK(std::abs(dl - ctx.zeta(u)) < 1e-6 * std::max(1.0, std::abs(ctx.zeta(u))));
      }
    }
  }

  TEST_CASE("behaviour at the origin") {
    auto ctx = WeierstrassContext::make({0.5, 1.0});
    for (double r : {1e-1, 1e-2, 1e-3, 1e-4}) {
      cplx u = std::polar(r, 0.7);
      CHECK(std::abs(u * u * ctx.wp(u) - 1.0) < 2.0 * r * r);
      CHECK(std::abs(u * ctx.zeta(u) - 1.0) < 2.0 * r * r);
      CHECK(std::abs(ctx.sigma(u) / u - 1.0) < 2.0 * r * r);
      CHECK(std::abs(ctx.zeta_regular(u) - (ctx.zeta(u) - 1.0 / u)) < 1e-10);
      // leading Laurent terms: wp - 1/u^2 = g2 u^2 / 20 + g3 u^4 / 28 + ...
      cplx lead = ctx.g2() * u * u / 20.0 + ctx.g3() * u * u * u * u / 28.0;
      CHECK(std::abs(ctx.wp_regular(u) - lead) < 2.0 * std::pow(r, 6) * std::abs(ctx.g2() * ctx.g2()));
    }
    CHECK(ctx.sigma(0.0) == cplx{});
    CHECK(ctx.zeta_regular(0.0) == cplx{});
    CHECK_NOTHROW(ctx.sigma(1.0));
  }

  TEST_CASE("continuity across the cell boundary") {
    auto ctx = WeierstrassContext::make({0.5, 1.0});
    for (cplx edge : {cplx{0.5, 0.1}, ctx.tau() * 0.5 + 0.1, cplx{0.5} + ctx.tau() * 0.5}) {
      for (double e : {1e-9, 1e-12}) {
        cplx d{e, e};
        CHECK(std::abs(ctx.wp(edge + d) - ctx.wp(edge - d)) < 1e-7);
        CHECK(std::abs(ctx.zeta(edge + d) - ctx.zeta(edge - d)) < 1e-7);
        CHECK(std::abs(ctx.sigma(edge + d) - ctx.sigma(edge - d)) < 1e-7);
      }
    }
  }

  TEST_CASE("zeta identity") {
    auto ctx = WeierstrassContext::make({0.0, 1.0});
    auto g = testing_support::rng(16);
    int tested = 0;
    while (tested < 100) {
      cplx u = cell_point(g, ctx, 0.01), u0 = cell_point(g, ctx, 0.01);
      if (ctx.lattice_distance(u - u0) < 0.01 || ctx.lattice_distance(u + u0) < 0.01) continue;
      ++tested;
      CHECK(std::abs(zeta_identity_residual(ctx, u, u0)) < 1e-9 * std::max(1.0, std::abs(ctx.zeta(u - u0))));
    }
    for (cplx h : ctx.half_periods()) {
      CHECK(std::abs(ctx.wp_prime(h)) < 1e-10);
      CHECK(std::abs(zeta_identity_residual(ctx, cplx{0.21, 0.33}, h)) < 1e-9);
    }
    // u -> -u0 stays regular
    cplx u0{0.3, 0.2};
    for (double e : {1e-1, 1e-2, 2e-3}) {
      cplx r = zeta_identity_residual(ctx, -u0 + cplx{e, 0.0}, u0);
      CHECK(std::isfinite(std::abs(r)));
      CHECK(std::abs(r) < 1e-7);
    }
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(WeierstrassContext::make({0.0, -1.0}), DomainError);
    CHECK_THROWS_AS(WeierstrassContext::make({1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(WeierstrassContext::make({0.0, 1.0}, 1e-3), DomainError);
    CHECK_THROWS_AS(WeierstrassContext::make({0.0, 1.0}, 1e-16), DomainError);
    auto ctx = WeierstrassContext::make({0.0, 1.0});
    CHECK_THROWS_AS(ctx.wp(cplx{1.0, 1.0}), PoleError);
    CHECK_THROWS_AS(ctx.zeta(cplx{2e-7, 0.0}), PoleError);
    try {
      ctx.wp_prime(cplx{-1.0, 2.0 + 1e-8});
      FAIL("expected PoleError");
    } catch (const PoleError& e) {
      CHECK(std::abs(e.pole() - cplx{-1.0, 2.0}) < 1e-12);
    }
    CHECK(WeierstrassContext::make({0.0, 0.15}, 1e-8).degraded());
    CHECK_FALSE(ctx.degraded());
  }
}
