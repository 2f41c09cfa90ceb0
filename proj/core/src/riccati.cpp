#include "torusmono/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ode.hpp"

namespace torusmono {

namespace {

double distance_mod_lattice(const WeierstrassContext& ctx, cplx u, cplx pole) {
  return ctx.lattice_distance(u - pole);
}

double default_clearance(const WeierstrassContext& ctx) {
  return 0.05 * std::min(1.0, std::abs(ctx.tau()));
}

}  // namespace

cplx coefficient_A(const WeierstrassContext& ctx, cplx u0, cplx u, double clearance) {
  if (ctx.lattice_distance(u0) < WeierstrassContext::kPoleGuard)
    throw PreconditionError("linear family needs u0 outside the lattice");
  for (cplx pole : {cplx{0.0}, u0}) {
    if (distance_mod_lattice(ctx, u, pole) < clearance)
      throw PoleError("coefficient A: u = " + to_string(u) + " is within " +
                          std::to_string(clearance) + " of the pole " + to_string(pole) +
                          " (mod lattice)",
                      ctx.nearest_lattice_point(u - pole) + pole);
  }
  if (distance_mod_lattice(ctx, u, -u0) < 1e-2)
    return ctx.zeta(u - u0) - ctx.zeta(u) + ctx.zeta(u0);
  return (ctx.wp_prime(u) + ctx.wp_prime(u0)) / (2.0 * (ctx.wp(u) - ctx.wp(u0)));
}

std::vector<cplx> linear_family_avoid_set(cplx u0) { return {cplx{0.0}, u0, -u0}; }

TransportResult transport_linear(const WeierstrassContext& ctx, const LinearFamilyPoint& p,
                                 const PathSpec& path, const QuadratureOptions& opts) {
  auto integrand = [&](cplx u) { return coefficient_A(ctx, p.u0, u, 0.0) + p.c; };
  QuadratureResult q = integrate_along(path, integrand, opts);
  TransportResult r;
  r.log_multiplier = q.value;
  r.multiplier = std::exp(q.value);
  r.error = std::abs(r.multiplier) * q.error;
  r.panels = q.panels;
  return r;
}

RiccatiTransport transport_riccati(const RiccatiEquation& eq, const PathSpec& path,
                                   const ProjectivePoint& y0, double tol, double max_panel) {
  using S = detail::State<4>;  // row-major 2x2 fundamental matrix
  auto eval = [](const std::function<cplx(cplx)>& fn, cplx u) { return fn ? fn(u) : cplx{}; };
  auto rhs = [&](cplx u, const S& m, S& d) {
    cplx a = eval(eq.a, u), b = eval(eq.b, u), c = eval(eq.c, u);
    // [[b/2, c], [-a, -b/2]] * M
    d[0] = 0.5 * b * m[0] + c * m[2];
    d[1] = 0.5 * b * m[1] + c * m[3];
    d[2] = -a * m[0] - 0.5 * b * m[2];
    d[3] = -a * m[1] - 0.5 * b * m[3];
  };
  auto unimodular = [](S& m) {
    cplx det = m[0] * m[3] - m[1] * m[2];
    cplx s = std::sqrt(det);
    for (auto& v : m) v /= s;
  };
  S m{cplx{1.0}, cplx{}, cplx{}, cplx{1.0}};
  m = detail::transport_along(path, m, rhs, tol, max_panel, unimodular);
  MobiusMap map = MobiusMap::from_coefficients(m[0], m[1], m[2], m[3]);
  return {map(y0), map};
}

cplx choose_base_point(const WeierstrassContext& ctx, const std::vector<cplx>& avoid) {
  constexpr int kGrid = 16;
  cplx best{};
  double best_dist = -1.0;
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) {
      cplx z = ctx.lattice().point((i + 0.5) / kGrid - 0.5, (j + 0.5) / kGrid - 0.5);
      double d = std::numeric_limits<double>::infinity();
      for (cplx w : avoid) d = std::min(d, distance_mod_lattice(ctx, z, w));
      if (d > best_dist + 1e-12) {
        best_dist = d;
        best = z;
      }
    }
  return best;
}

namespace {

struct Loops {
  PathSpec first, second;
};

Loops generator_loops(const WeierstrassContext& ctx, const std::vector<cplx>& avoid,
                      const MonodromyOptions& opts) {
  cplx base = opts.base ? *opts.base : choose_base_point(ctx, avoid);
  double base_dist = std::numeric_limits<double>::infinity();
  for (cplx w : avoid) base_dist = std::min(base_dist, distance_mod_lattice(ctx, base, w));
  double clearance = opts.clearance ? *opts.clearance
                                    : std::min(default_clearance(ctx), base_dist / 2.5);
  auto [l1, l2] = period_loops(ctx.tau(), avoid, base, clearance, opts.side);
  return {std::move(l1), std::move(l2)};
}

}  // namespace

MonodromyResult monodromy_numeric(const WeierstrassContext& ctx, const LinearFamilyPoint& p,
                                  const MonodromyOptions& opts) {
  if (ctx.lattice_distance(p.u0) < WeierstrassContext::kPoleGuard)
    throw PreconditionError("linear family needs u0 outside the lattice");
  Loops loops = generator_loops(ctx, linear_family_avoid_set(p.u0), opts);
  TransportResult t1 = transport_linear(ctx, p, loops.first, opts.quadrature);
  TransportResult t2 = transport_linear(ctx, p, loops.second, opts.quadrature);
  return {t1.multiplier, t2.multiplier, std::max(t1.error, t2.error)};
}

cplx closed_form_solution(const WeierstrassContext& ctx, const LinearFamilyPoint& p, cplx a,
                          cplx u) {
  if (ctx.lattice_distance(u) < WeierstrassContext::kPoleGuard)
    throw PoleError("closed-form solution has a pole at the lattice point " +
                        to_string(ctx.nearest_lattice_point(u)),
                    ctx.nearest_lattice_point(u));
  return a * ctx.sigma(u - p.u0) / ctx.sigma(u) * std::exp((ctx.zeta(p.u0) + p.c) * u);
}

EuclideanMonodromy euclidean_monodromy(const WeierstrassContext& ctx, cplx gamma,
                                       const MonodromyOptions& opts) {
  EuclideanMonodromy out;
  // zeta' = -wp, so the integral over a period w is gamma w - eta_w.
  out.b1 = gamma - ctx.eta1();
  out.b_tau = gamma * ctx.tau() - ctx.eta_tau();

  Loops loops = generator_loops(ctx, {cplx{0.0}}, opts);
  auto integrand = [&](cplx u) { return ctx.wp(u) + gamma; };
  QuadratureResult q1 = integrate_along(loops.first, integrand, opts.quadrature);
  QuadratureResult q2 = integrate_along(loops.second, integrand, opts.quadrature);
  out.b1_numeric = q1.value;
  out.b_tau_numeric = q2.value;
  out.error = std::max(q1.error, q2.error);

  RiccatiEquation eq{{}, {}, integrand};
  out.map1 = transport_riccati(eq, loops.first, ProjectivePoint::finite(0.0)).map;
  out.map_tau = transport_riccati(eq, loops.second, ProjectivePoint::finite(0.0)).map;
  return out;
}

}  // namespace torusmono
