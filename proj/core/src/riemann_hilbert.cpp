#include "torusmono/riemann_hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "torusmono/riccati.hpp"

namespace torusmono {

namespace {

double scale(const WeierstrassContext& ctx) { return std::min(1.0, std::abs(ctx.tau())); }

cplx nearest_rep(const WeierstrassContext& ctx, cplx u) {
  return u - ctx.nearest_lattice_point(u);
}

// (m, n) with m + n tau = w, for w known to be a lattice point.
std::array<long, 2> lattice_indices(const WeierstrassContext& ctx, cplx w) {
  auto [s, t] = ctx.lattice().coordinates(w);
  return {std::lround(s), std::lround(t)};
}

double wrap_to_branch(double target_im, double ref_im) {
  return target_im + 2.0 * pi * std::round((ref_im - target_im) / (2.0 * pi));
}

std::array<cplx, 2> align(std::array<cplx, 2> target, const std::array<cplx, 2>& ref) {
  for (int k = 0; k < 2; ++k)
    target[k] = {target[k].real(), wrap_to_branch(target[k].imag(), ref[k].imag())};
  return target;
}

RhJacobian finish(std::array<std::array<cplx, 2>, 2> j) {
  RhJacobian out;
  out.entries = j;
  double frob = 0.0;
  for (auto& row : j)
    for (cplx v : row) frob += std::norm(v);
  double det = std::abs(j[0][0] * j[1][1] - j[0][1] * j[1][0]);
  double disc = std::sqrt(std::max(0.0, frob * frob - 4.0 * det * det));
  out.sigma_max = std::sqrt(0.5 * (frob + disc));
  out.sigma_min = out.sigma_max > 0.0 ? det / out.sigma_max : 0.0;
  return out;
}

}  // namespace

std::array<cplx, 2> rh_exponents(const WeierstrassContext& ctx, const A0Point& p) {
  const cplx tau = ctx.tau();
  if (p.is_main()) {
    if (ctx.lattice_distance(p.u0) < WeierstrassContext::kPoleGuard)
      throw ChartError("main chart needs u0 off the lattice, got " + to_string(p.u0) +
                       "; use the zero chart");
    // zeta is continuous in u0 here, so nearby points share a branch.
    cplx z = ctx.zeta(p.u0);
    return {-p.u0 * ctx.eta1() + z + p.c, -p.u0 * ctx.eta_tau() + (z + p.c) * tau};
  }
  cplx zr = ctx.zeta_regular(p.u0);
  return {-p.u0 * ctx.eta1() + zr + p.c, -p.u0 * ctx.eta_tau() + (zr + p.c) * tau};
}

MonodromyPair rh_map(const WeierstrassContext& ctx, const A0Point& p) {
  auto e = rh_exponents(ctx, p);
  return {std::exp(e[0]), std::exp(e[1])};
}

A0Point chart_transition(const WeierstrassContext& ctx, const A0Point& p, ChartDirection dir,
                         const ChartRadii& radii) {
  const double s = scale(ctx);
  cplx v = nearest_rep(ctx, p.u0);
  double r = std::abs(v);
  if (r < radii.switch_radius * s || r > radii.outer_radius * s)
    throw ChartError("chart transition needs |u0| in [" + std::to_string(radii.switch_radius * s) +
                     ", " + std::to_string(radii.outer_radius * s) + "], got " +
                     std::to_string(r));
  if (dir == ChartDirection::ToZero) {
    if (!p.is_main()) throw ChartError("point is already in the zero chart");
    return A0Point::zero(p.c + 1.0 / v, v);
  }
  if (p.is_main()) throw ChartError("point is already in the main chart");
  if (std::abs(v - p.u0) > 0.0) throw ChartError("zero chart point lies outside its disk");
  return A0Point::main(v, p.c - 1.0 / v);
}

RhJacobian rh_jacobian(const WeierstrassContext& ctx, const A0Point& p, double h) {
  if (!p.is_main()) throw PreconditionError("numeric Jacobian is defined on the main chart");
  if (ctx.lattice_distance(p.u0) < 3.0 * h)
    throw PoleError("Jacobian stencil reaches the lattice", ctx.nearest_lattice_point(p.u0));
  auto diff = [&](cplx du, cplx dc) {
    auto at = [&](double k) { return rh_exponents(ctx, A0Point::main(p.u0 + k * du, p.c + k * dc)); };
    auto m2 = at(-2.0), m1 = at(-1.0), p1 = at(1.0), p2 = at(2.0);
    std::array<cplx, 2> d;
    for (int i = 0; i < 2; ++i) d[i] = (m2[i] - 8.0 * m1[i] + 8.0 * p1[i] - p2[i]) / (12.0 * h);
    return d;
  };
  auto du = diff(h, 0.0), dc = diff(0.0, h);
  return finish({{{du[0], dc[0]}, {du[1], dc[1]}}});
}

RhJacobian rh_jacobian_exact(const WeierstrassContext& ctx, const A0Point& p) {
  const cplx tau = ctx.tau();
  if (p.is_main()) {
    cplx w = ctx.wp(p.u0);
    return finish({{{-ctx.eta1() - w, 1.0}, {-ctx.eta_tau() - tau * w, tau}}});
  }
  // d/du0 of zeta~ is -(wp - 1/u^2)
  cplx w = ctx.wp_regular(p.u0);
  return finish({{{-ctx.eta1() - w, 1.0}, {-ctx.eta_tau() - tau * w, tau}}});
}

InverseResult rh_inverse(const WeierstrassContext& ctx, const MonodromyPair& target,
                         const A0Point& seed, const InverseOptions& opts) {
  if (target.x == cplx{} || target.y == cplx{} || !std::isfinite(std::abs(target.x)) ||
      !std::isfinite(std::abs(target.y)))
    throw DomainError("monodromy target must lie in C* x C*");
  const double s = scale(ctx);
  const double switch_r = opts.radii.switch_radius * s;
  const double outer_r = opts.radii.outer_radius * s;

  InverseResult out;
  out.unitary_target =
      std::abs(std::abs(target.x) - 1.0) < 1e-12 && std::abs(std::abs(target.y) - 1.0) < 1e-12;

  A0Point p = seed;
  std::array<cplx, 2> goal = {std::log(target.x), std::log(target.y)};
  auto e = rh_exponents(ctx, p);
  goal = align(goal, e);

  for (int it = 0; it <= opts.max_iterations; ++it) {
    double res = std::max(std::abs(e[0] - goal[0]), std::abs(e[1] - goal[1]));
    double ref = std::max({1.0, std::abs(goal[0]), std::abs(goal[1])});
    if (res <= opts.tolerance * ref) {
      if (p.is_main()) p.u0 = ctx.reduce(p.u0).reduced;  // the map is invariant under u0 -> u0 + lattice
      out.point = p;
      out.iterations = it;
      out.residual = res;
      return out;
    }
    if (it == opts.max_iterations) break;

    auto j = rh_jacobian_exact(ctx, p).entries;
    cplx det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    cplx r0 = goal[0] - e[0], r1 = goal[1] - e[1];
    cplx du = (j[1][1] * r0 - j[0][1] * r1) / det;
    cplx dc = (-j[1][0] * r0 + j[0][0] * r1) / det;
    p.u0 += du;
    p.c += dc;

    // Keep the iterate in a chart where it is well conditioned. A chart
    // change moves the exponents by an exact element of 2 pi i Z, which
    // is carried over to the goal so the branch stays the seed's.
    std::optional<A0Point> moved;
    if (p.is_main()) {
      cplx v = nearest_rep(ctx, p.u0);
      if (std::abs(v) < switch_r) moved = A0Point::zero(p.c + 1.0 / v, v);
    } else if (std::abs(p.u0) > outer_r) {
      moved = A0Point::main(p.u0, p.c - 1.0 / p.u0);
    }
    if (moved) {
      auto before = rh_exponents(ctx, p);
      auto after = rh_exponents(ctx, *moved);
      for (int k = 0; k < 2; ++k)
        goal[k] += two_pi_i * std::round((after[k] - before[k]).imag() / (2.0 * pi));
      p = *moved;
    }
    e = rh_exponents(ctx, p);
  }
  throw ConvergenceError("inverse monodromy did not converge in " +
                         std::to_string(opts.max_iterations) + " iterations");
}

cplx group_law_correction(const WeierstrassContext& ctx, cplx u1, cplx u2) {
  cplx delta = nearest_rep(ctx, u2 - u1);
  if (std::abs(delta) < 1e-7) {
    cplx m = u1 + 0.5 * delta;
    cplx d = ctx.wp_prime(m);
    if (std::abs(d) < 1e-12)
      throw DegeneracyError("group law correction: u1 = u2 is a half period");
    return ctx.wp_second(m) / (2.0 * d);
  }
  cplx den = ctx.wp(u2) - ctx.wp(u1);
  if (std::abs(den) < 1e-14 * std::max(1.0, std::abs(ctx.wp(u1))))
    throw DegeneracyError("group law correction: u1 + u2 lies on the lattice");
  return (ctx.wp_prime(u2) - ctx.wp_prime(u1)) / (2.0 * den);
}

A0Point group_law(const WeierstrassContext& ctx, const A0Point& p1, const A0Point& p2,
                  OutputChart out, const ChartRadii& radii) {
  const double switch_r = radii.switch_radius * scale(ctx);

  auto place = [&](cplx u, cplx c) {
    cplx v = nearest_rep(ctx, u);
    if (out == OutputChart::Auto && std::abs(v) < switch_r) return A0Point::zero(c + 1.0 / v, v);
    return A0Point::main(v, c);
  };
  // A zero-chart point with u0 = 0 only shifts c; any other zero-chart
  // point is moved to the main chart first.
  auto lift = [&](const A0Point& p) {
    if (p.is_main() || p.u0 == cplx{}) return p;
    return A0Point::main(p.u0, p.c - 1.0 / p.u0);
  };
  A0Point a = lift(p1), b = lift(p2);

  if (!a.is_main() && !b.is_main()) {
    if (out == OutputChart::ForceMain)
      throw ChartError("product is the trivial bundle, which has no main-chart representative");
    return A0Point::zero(a.c + b.c);
  }
  if (!a.is_main()) return place(b.u0, b.c + a.c);
  if (!b.is_main()) return place(a.u0, a.c + b.c);

  cplx u3 = a.u0 + b.u0;
  cplx lam = ctx.nearest_lattice_point(u3);
  cplx v3 = u3 - lam;
  if (std::abs(v3) < switch_r) {
    auto [m, n] = lattice_indices(ctx, lam);
    cplx c0 = a.c + b.c + ctx.zeta(a.u0) + ctx.zeta(b.u0) - ctx.eta(m, n) - ctx.zeta_regular(v3);
    if (out == OutputChart::Auto) return A0Point::zero(c0, v3);
    if (std::abs(v3) < WeierstrassContext::kPoleGuard)
      throw ChartError("u1 + u2 lies on the lattice; the product has no main-chart representative");
    return A0Point::main(v3, c0 - 1.0 / v3);
  }
  return A0Point::main(v3, a.c + b.c - group_law_correction(ctx, a.u0, b.u0));
}

double group_law_residual(const WeierstrassContext& ctx, const A0Point& p1, const A0Point& p2,
                          const A0Point& p3) {
  auto e1 = rh_exponents(ctx, p1), e2 = rh_exponents(ctx, p2), e3 = rh_exponents(ctx, p3);
  double r = 0.0;
  for (int k = 0; k < 2; ++k) r = std::max(r, std::abs(std::exp(e1[k] + e2[k] - e3[k]) - 1.0));
  return r;
}

namespace {

cplx chord_slope(const WeierstrassContext& ctx, cplx u1, cplx u2) {
  return 2.0 * group_law_correction(ctx, u1, u2);
}

}  // namespace

cplx divisor_function(const WeierstrassContext& ctx, cplx u1, cplx u2, cplx u3, cplx u) {
  cplx s = chord_slope(ctx, u1, u2);
  cplx w = ctx.wp(u);
  cplx num = ctx.wp_prime(u) - ctx.wp_prime(u1) - s * (w - ctx.wp(u1));
  return num / (w - ctx.wp(u3));
}

DivisorWitness divisor_witness(const WeierstrassContext& ctx, cplx u1, cplx u2, cplx u3, cplx u) {
  constexpr double kGuard = 1e-6;
  for (cplx w : {cplx{0.0}, u1, u2, u3, -u3}) {
    if (ctx.lattice_distance(u - w) < kGuard)
      throw PoleError("divisor witness: u = " + to_string(u) + " is on the divisor",
                      ctx.nearest_lattice_point(u - w) + w);
  }
  cplx s = chord_slope(ctx, u1, u2);
  cplx w = ctx.wp(u), wp1 = ctx.wp_prime(u);
  cplx num = wp1 - ctx.wp_prime(u1) - s * (w - ctx.wp(u1));
  cplx den = w - ctx.wp(u3);
  cplx dnum = ctx.wp_second(u) - s * wp1;

  DivisorWitness out;
  out.f = num / den;
  out.log_derivative = dnum / num - wp1 / den;
  cplx combo = coefficient_A(ctx, u1, u) + coefficient_A(ctx, u2, u) - coefficient_A(ctx, u3, u) +
               0.5 * s;
  out.residual = out.log_derivative - combo;
  return out;
}

}  // namespace torusmono
