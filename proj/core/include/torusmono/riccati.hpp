#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "torusmono/mobius.hpp"
#include "torusmono/path.hpp"
#include "torusmono/weierstrass.hpp"

namespace torusmono {

/// Parameters of dz/du = (A(u) + c) z with
/// A(u) = (wp'(u) + wp'(u0)) / (2 (wp(u) - wp(u0))).
struct LinearFamilyPoint {
  cplx u0;
  cplx c;
};

struct MonodromyResult {
  cplx x{1.0}, y{1.0};  // multipliers along the generators 1 and tau
  double error = 0.0;
};

/// A(u) from the wp display; falls back to zeta(u - u0) - zeta(u) + zeta(u0)
/// within 1e-2 of the regular point -u0 where the display is 0/0.
/// Throws PoleError within `clearance` of 0 + Lattice or u0 + Lattice.
cplx coefficient_A(const WeierstrassContext& ctx, cplx u0, cplx u, double clearance = 1e-6);

/// Points to keep away from when integrating the linear family: the poles
/// 0 and u0 and the apparent 0/0 point -u0 of the wp display.
std::vector<cplx> linear_family_avoid_set(cplx u0);

struct TransportResult {
  cplx multiplier{1.0};
  cplx log_multiplier{};
  double error = 0.0;
  int panels = 0;
};

/// exp of the path integral of (A + c) du, by adaptive quadrature.
TransportResult transport_linear(const WeierstrassContext& ctx, const LinearFamilyPoint& p,
                                 const PathSpec& path, const QuadratureOptions& opts = {});

/// dy/du = a(u) y^2 + b(u) y + c(u); empty handles are zero.
struct RiccatiEquation {
  std::function<cplx(cplx)> a, b, c;
};

struct RiccatiTransport {
  ProjectivePoint value;
  MobiusMap map;  // transport as a Mobius map of the fibre
};

/// Integrates the trace-free lift Y' = [[b/2, c], [-a, -b/2]] Y along the
/// path (unit determinant restored after every panel) and acts on y0
/// projectively, so y0 = infinity is handled like any other point.
RiccatiTransport transport_riccati(const RiccatiEquation& eq, const PathSpec& path,
                                   const ProjectivePoint& y0, double tol = 1e-12,
                                   double max_panel = 0.1);

struct MonodromyOptions {
  std::optional<cplx> base;       // automatic when empty
  std::optional<double> clearance; // 0.05 min(1, |tau|) when empty
  DetourSide side = DetourSide::CounterClockwise;
  QuadratureOptions quadrature{};
};

/// Point of the fundamental parallelogram farthest from `avoid` + Lattice,
/// chosen from a fixed grid so results are deterministic.
cplx choose_base_point(const WeierstrassContext& ctx, const std::vector<cplx>& avoid);

MonodromyResult monodromy_numeric(const WeierstrassContext& ctx, const LinearFamilyPoint& p,
                                  const MonodromyOptions& opts = {});

/// a sigma(u - u0) / sigma(u) exp((zeta(u0) + c) u). Throws PoleError on the lattice.
cplx closed_form_solution(const WeierstrassContext& ctx, const LinearFamilyPoint& p, cplx a,
                          cplx u);

/// Translation parts of dz/du = wp(u) + gamma along the generators.
struct EuclideanMonodromy {
  cplx b1, b_tau;                  // gamma * period - eta_period
  cplx b1_numeric, b_tau_numeric;  // quadrature along the generator loops
  MobiusMap map1, map_tau;         // Riccati transports along the same loops
  double error = 0.0;
};

EuclideanMonodromy euclidean_monodromy(const WeierstrassContext& ctx, cplx gamma,
                                       const MonodromyOptions& opts = {});

}  // namespace torusmono
