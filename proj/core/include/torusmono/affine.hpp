#pragma once

#include <functional>
#include <utility>

#include "torusmono/mobius.hpp"

namespace torusmono {

/// Affine structure on C / (Z + tau Z) with developing map f_c.
struct AffineStructure {
  cplx tau{0.0, 1.0};
  cplx c{0.0};

  /// Coefficient of du^2 of the associated quadratic differential, -c^2/2.
  cplx quadratic_differential() const { return -0.5 * c * c; }
};

/// f_c(u) = (exp(c u) - 1) / c, continued holomorphically to f_0(u) = u.
/// Small |c u| uses the entire series u + c u^2 / 2 + c^2 u^3 / 6 + ...
cplx developing_map(cplx c, cplx u);

/// Generators 1 and tau act by z -> exp(c gamma) z + f_c(gamma).
AffinePair affine_monodromy(const AffineStructure& s);

/// Monodromy coordinates in B1; c = 0 gives (1, 1, [1 : tau]).
B1Point monodromy_to_b1(const AffineStructure& s, double tol = 1e-14);

/// Affine pair obtained by numerically continuing f_c from `base` along the
/// straight segments to base + 1 and base + tau (ODE f'' = c f') and fitting
/// z -> a z + b to the endpoint data.
AffinePair continued_monodromy(const AffineStructure& s, cplx base = {0.1, 0.05},
                               double tol = 1e-13);

/// The two structures (tau, 2 pi i (m tau' + n) / (tau' - tau)) and
/// (tau', 2 pi i (m tau + n) / (tau' - tau)) sharing one monodromy.
std::pair<AffineStructure, AffineStructure> noninjective_pair(cplx tau, cplx tau2, long m, long n);

using HolomorphicFn = std::function<cplx(cplx)>;

/// (f''/f')' - (f''/f')^2 / 2 from fourth-order central differences with
/// step h in [1e-6, 1e-2]. Throws CriticalPointError when f'(u) ~ 0.
cplx schwarzian_numeric(const HolomorphicFn& f, cplx u, double h = 5e-3);

/// S(f o g)(u) - [S(f)(g(u)) g'(u)^2 + S(g)(u)].
cplx schwarzian_composition_residual(const HolomorphicFn& f, const HolomorphicFn& g, cplx u,
                                     double h = 5e-3);

/// z1 / z2 where z'' + (phi / 2) z = 0, z1(0) = 0, z1'(0) = 1, z2(0) = 1,
/// z2'(0) = 0, integrated along [0, v]. Its Schwarzian is phi. Throws
/// PoleError if z2(v) vanishes.
cplx ratio_of_linear_solutions(cplx phi, cplx v);

}  // namespace torusmono
