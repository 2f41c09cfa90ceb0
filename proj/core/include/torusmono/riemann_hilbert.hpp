#pragma once

#include <array>

#include "torusmono/weierstrass.hpp"

namespace torusmono {

/// A point of the affine bundle A0 of rank-one connections on the torus.
///
/// Main chart: (u0, c) with u0 outside the lattice; the connection is
/// dz/z = (A_{u0}(u) + c) du. Zero chart: (u0, c0) with u0 in a small disk
/// about the origin, glued by c0 = c + 1/u0. A Zero point with u0 = 0 is
/// the connection dz/z = c0 du on the trivial bundle.
struct A0Point {
  enum class Chart { Main, Zero };

  Chart chart = Chart::Zero;
  cplx u0{};
  cplx c{};  // c in the Main chart, c0 in the Zero chart

  static A0Point main(cplx u0, cplx c) { return {Chart::Main, u0, c}; }
  static A0Point zero(cplx c0, cplx u0 = {}) { return {Chart::Zero, u0, c0}; }
  bool is_main() const { return chart == Chart::Main; }
};

struct MonodromyPair {
  cplx x{1.0}, y{1.0};
};

/// Chart radii, in units of min(1, |tau|): outputs of the group law with
/// |u0| below `switch_radius` are returned in the Zero chart, and chart
/// transitions are allowed on the annulus [switch_radius, outer_radius].
struct ChartRadii {
  double switch_radius = 0.05;
  double outer_radius = 0.2;
};

/// Exponents (log x, log y) of the monodromy:
///   Main: (-u0 eta1 + zeta(u0) + c, -u0 eta_tau + zeta(u0) tau + c tau)
///   Zero: (-u0 eta1 + zeta~(u0) + c0, ...), zeta~ = zeta - 1/u.
/// Throws ChartError for a Main point within the pole guard of the lattice.
std::array<cplx, 2> rh_exponents(const WeierstrassContext& ctx, const A0Point& p);

MonodromyPair rh_map(const WeierstrassContext& ctx, const A0Point& p);

enum class ChartDirection { ToZero, ToMain };

/// c0 = c + 1/u0 (ToZero) or its inverse, with u0 taken as its
/// representative nearest the origin. Throws ChartError off the annulus.
A0Point chart_transition(const WeierstrassContext& ctx, const A0Point& p, ChartDirection dir,
                         const ChartRadii& radii = {});

struct RhJacobian {
  // rows: log x, log y; columns: d/du0, d/dc
  std::array<std::array<cplx, 2>, 2> entries{};
  double sigma_max = 0.0, sigma_min = 0.0;
};

/// Fourth-order central-difference Jacobian of the exponents in the Main
/// chart. Throws PreconditionError off the Main chart and PoleError if the
/// stencil touches the lattice.
RhJacobian rh_jacobian(const WeierstrassContext& ctx, const A0Point& p, double h = 1e-3);

/// The same Jacobian in closed form: [[-eta1 - wp(u0), 1], [-eta_tau - tau wp(u0), tau]].
RhJacobian rh_jacobian_exact(const WeierstrassContext& ctx, const A0Point& p);

struct InverseOptions {
  int max_iterations = 50;
  double tolerance = 1e-13;
  ChartRadii radii{};
};

struct InverseResult {
  A0Point point;
  int iterations = 0;
  double residual = 0.0;    // |exponents(point) - target exponents| on the seed's branch
  bool unitary_target = false;  // |x| = |y| = 1
};

/// Newton iteration on the exponents, with the branch of log fixed by the
/// seed. Switches to the Zero chart when an iterate enters the switch disk.
/// Throws ConvergenceError after max_iterations.
InverseResult rh_inverse(const WeierstrassContext& ctx, const MonodromyPair& target,
                         const A0Point& seed, const InverseOptions& opts = {});

enum class OutputChart { Auto, ForceMain };

/// (wp'(u2) - wp'(u1)) / (2 (wp(u2) - wp(u1))), with the limit
/// wp''(u1) / (2 wp'(u1)) when u1 = u2 mod the lattice.
cplx group_law_correction(const WeierstrassContext& ctx, cplx u1, cplx u2);

/// Tensor product of two rank-one connections: u3 = u1 + u2 and
/// c3 = c1 + c2 - group_law_correction(u1, u2). When u3 falls in the
/// switch disk the result is returned in the Zero chart (c0 computed from
/// the regular part of zeta, exactly c1 + c2 when u3 is a lattice point).
/// ForceMain with u3 on the lattice throws ChartError.
A0Point group_law(const WeierstrassContext& ctx, const A0Point& p1, const A0Point& p2,
                  OutputChart out = OutputChart::Auto, const ChartRadii& radii = {});

/// max |M(p1) M(p2) / M(p3) - 1| over both generators.
double group_law_residual(const WeierstrassContext& ctx, const A0Point& p1, const A0Point& p2,
                          const A0Point& p3);

/// f(u) = [wp'(u) - wp'(u1) - s (wp(u) - wp(u1))] / (wp(u) - wp(u3)),
/// s = (wp'(u2) - wp'(u1)) / (wp(u2) - wp(u1)); divisor [u1] + [u2] - [u3] - [0].
cplx divisor_function(const WeierstrassContext& ctx, cplx u1, cplx u2, cplx u3, cplx u);

struct DivisorWitness {
  cplx f{};          // divisor_function value
  cplx log_derivative{};  // f'/f, analytic
  cplx residual{};   // f'/f - [A_{u1} + A_{u2} - A_{u3} + c1 + c2 - c3]
};

/// Evaluates f and the residual of its logarithmic derivative against the
/// combination of connection forms. Throws PoleError near the divisor.
DivisorWitness divisor_witness(const WeierstrassContext& ctx, cplx u1, cplx u2, cplx u3, cplx u);

}  // namespace torusmono
