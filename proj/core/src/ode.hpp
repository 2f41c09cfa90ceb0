#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "torusmono/path.hpp"

namespace torusmono::detail {

template <std::size_t N>
using State = std::array<cplx, N>;

/// Integrates dY/dz = rhs(z, Y) along every piece of `path` with an
/// adaptive Dormand-Prince 5(4) stepper in the real parameter t. `after`
/// is invoked on the state after each panel (e.g. for renormalization).
template <std::size_t N, class Rhs, class After>
State<N> transport_along(const PathSpec& path, State<N> y, Rhs rhs, double tol, double max_panel,
                         After after) {
  namespace ode = boost::numeric::odeint;
  for (const PathPiece& piece : path.pieces) {
    double len = piece.length();
    if (len == 0.0) continue;
    int panels = std::max(1, static_cast<int>(std::ceil(len / max_panel)));
    auto system = [&](const State<N>& s, State<N>& ds, double t) {
      cplx z = piece.point(t);
      cplx dz = piece.derivative(t);
      rhs(z, s, ds);
      for (auto& v : ds) v *= dz;
    };
    for (int k = 0; k < panels; ++k) {
      double t0 = static_cast<double>(k) / panels, t1 = static_cast<double>(k + 1) / panels;
      auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<State<N>>());
      std::size_t steps =
          ode::integrate_adaptive(stepper, system, y, t0, t1, (t1 - t0) / 8.0);
      if (steps > 200000)
        throw IntegrationError("ODE transport needed an excessive number of steps on [" +
                               std::to_string(t0) + ", " + std::to_string(t1) + "]");
      for (const auto& v : y)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
          throw IntegrationError("ODE transport diverged on parameter interval [" +
                                 std::to_string(t0) + ", " + std::to_string(t1) + "]");
      after(y);
    }
  }
  return y;
}

template <std::size_t N, class Rhs>
State<N> transport_along(const PathSpec& path, State<N> y, Rhs rhs, double tol, double max_panel) {
  return transport_along(path, y, rhs, tol, max_panel, [](State<N>&) {});
}

}  // namespace torusmono::detail
