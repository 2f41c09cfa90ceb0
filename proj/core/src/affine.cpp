#include "torusmono/affine.hpp"

#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "ode.hpp"

namespace torusmono {

cplx developing_map(cplx c, cplx u) {
  cplx w = c * u;
  if (std::abs(w) < 0.5) {
    // (e^w - 1)/w = sum w^k / (k+1)!
    cplx term{1.0}, sum{1.0};
    for (int k = 1; k < 40 && std::abs(term) > 1e-18; ++k) {
      term *= w / static_cast<double>(k + 1);
      sum += term;
    }
    return u * sum;
  }
  return (std::exp(w) - 1.0) / c;
}

AffinePair affine_monodromy(const AffineStructure& s) {
  return {std::exp(s.c), developing_map(s.c, 1.0), std::exp(s.c * s.tau),
          developing_map(s.c, s.tau)};
}

B1Point monodromy_to_b1(const AffineStructure& s, double tol) {
  if (s.c == cplx{}) return {1.0, 1.0, normalize_direction(1.0, s.tau)};
  AffinePair p = affine_monodromy(s);
  if (std::max(std::abs(p.b1), std::abs(p.b_tau)) <= tol)
    throw DegeneracyError("degenerate B1 direction for c = " + to_string(s.c) +
                          ": both translation parts vanish");
  return b1_from_affine_pair(p, tol);
}

AffinePair continued_monodromy(const AffineStructure& s, cplx base, double tol) {
  auto continue_to = [&](cplx period) {
    PathSpec path = make_polyline({base, base + period}, {}, s.tau, false, 1e-3);
    detail::State<2> y{developing_map(s.c, base), std::exp(s.c * base)};
    const detail::State<2> y0 = y;
    // f'' = c f'
    auto rhs = [&](cplx, const detail::State<2>& st, detail::State<2>& d) {
      d[0] = st[1];
      d[1] = s.c * st[1];
    };
    y = detail::transport_along(path, y, rhs, tol, 0.25);
    cplx a = y[1] / y0[1];
    return std::pair{a, y[0] - a * y0[0]};
  };
  auto [a1, b1] = continue_to(1.0);
  auto [at, bt] = continue_to(s.tau);
  return {a1, b1, at, bt};
}

std::pair<AffineStructure, AffineStructure> noninjective_pair(cplx tau, cplx tau2, long m, long n) {
  if (m == 0 && n == 0) throw PreconditionError("noninjective_pair needs (m, n) != (0, 0)");
  if (!(tau.imag() > 0.0) || !(tau2.imag() > 0.0))
    throw DomainError("noninjective_pair needs Im tau > 0 and Im tau' > 0");
  if (tau == tau2) throw PreconditionError("noninjective_pair needs tau != tau'");
  cplx dm = static_cast<double>(m), dn = static_cast<double>(n);
  cplx denom = tau2 - tau;
  return {AffineStructure{tau, two_pi_i * (dm * tau2 + dn) / denom},
          AffineStructure{tau2, two_pi_i * (dm * tau + dn) / denom}};
}

namespace {

struct Derivatives {
  cplx d1, d2, d3;
};

Derivatives stencil(const HolomorphicFn& f, cplx u, cplx h) {
  cplx fm3 = f(u - 3.0 * h), fm2 = f(u - 2.0 * h), fm1 = f(u - h), f0 = f(u);
  cplx fp1 = f(u + h), fp2 = f(u + 2.0 * h), fp3 = f(u + 3.0 * h);
  Derivatives d;
  d.d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
  d.d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
  d.d3 = (-fp3 + 8.0 * fp2 - 13.0 * fp1 + 13.0 * fm1 - 8.0 * fm2 + fm3) / (8.0 * h * h * h);
  return d;
}

// For holomorphic f the stencil error terms carry powers of the complex
// step, so averaging over the directions e^{i k pi/4}, k = 0..3, cancels the
// h^4 and h^6 terms.
Derivatives central_differences(const HolomorphicFn& f, cplx u, double h) {
  Derivatives out{};
  for (int k = 0; k < 4; ++k) {
    Derivatives d = stencil(f, u, std::polar(h, k * pi / 4.0));
    out.d1 += 0.25 * d.d1;
    out.d2 += 0.25 * d.d2;
    out.d3 += 0.25 * d.d3;
  }
  return out;
}

}  // namespace

cplx schwarzian_numeric(const HolomorphicFn& f, cplx u, double h) {
  if (!(h >= 1e-6 && h <= 1e-2)) throw PreconditionError("Schwarzian step must lie in [1e-6, 1e-2]");
  Derivatives d = central_differences(f, u, h);
  double scale = std::max(1.0, std::abs(f(u)));
  if (std::abs(d.d1) <= 1e-10 * scale)
    throw CriticalPointError("f'(u) vanishes at u = " + to_string(u) +
                             "; the Schwarzian is undefined there");
  cplx r = d.d2 / d.d1;
  return d.d3 / d.d1 - 1.5 * r * r;
}

cplx schwarzian_composition_residual(const HolomorphicFn& f, const HolomorphicFn& g, cplx u,
                                     double h) {
  HolomorphicFn fg = [&](cplx z) { return f(g(z)); };
  cplx gp = central_differences(g, u, h).d1;
  return schwarzian_numeric(fg, u, h) -
         (schwarzian_numeric(f, g(u), h) * gp * gp + schwarzian_numeric(g, u, h));
}

cplx ratio_of_linear_solutions(cplx phi, cplx v) {
  namespace ode = boost::numeric::odeint;
  using S = detail::State<4>;
  // Fixed step count keeps the result a smooth function of v, which the
  // finite-difference Schwarzian relies on.
  constexpr int kSteps = 512;
  S y{cplx{0.0}, cplx{1.0}, cplx{1.0}, cplx{0.0}};
  auto rhs = [&](const S& s, S& d, double) {
    d[0] = v * s[1];
    d[1] = -v * 0.5 * phi * s[0];
    d[2] = v * s[3];
    d[3] = -v * 0.5 * phi * s[2];
  };
  ode::integrate_n_steps(ode::runge_kutta4<S>(), rhs, y, 0.0, 1.0 / kSteps, kSteps);
  if (std::abs(y[2]) <= 1e-8 * std::max(1.0, std::abs(y[0])))
    throw PoleError("developing map z1/z2 has a pole at v = " + to_string(v), v);
  return y[0] / y[2];
}

}  // namespace torusmono
