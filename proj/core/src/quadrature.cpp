#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "torusmono/path.hpp"

namespace torusmono {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;

struct Panel {
  cplx kronrod;
  double error;
};

// Kronrod nodes at even indices coincide with the 7 Gauss nodes.
template <class G>
Panel gk15(const G& g, double a, double b) {
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  cplx f0 = g(mid);
  cplx k = wk[0] * f0, gs = wg[0] * f0;
  for (std::size_t i = 1; i < xk.size(); ++i) {
    cplx s = g(mid - half * xk[i]) + g(mid + half * xk[i]);
    k += wk[i] * s;
    if (i % 2 == 0) gs += wg[i / 2] * s;
  }
  return {k * half, std::abs((k - gs) * half)};
}

template <class G>
void integrate_panel(const G& g, double a, double b, double tol_density, int depth,
                     const QuadratureOptions& opts, QuadratureResult& out) {
  Panel p = gk15(g, a, b);
  double allowed = std::max(tol_density * (b - a), 1e-15 * std::abs(p.kronrod));
  if (!opts.adaptive || p.error <= allowed) {
    out.value += p.kronrod;
    out.error += p.error;
    ++out.panels;
    return;
  }
  if (depth >= opts.max_depth)
    throw IntegrationError("quadrature step size underflow on parameter interval [" +
                           std::to_string(a) + ", " + std::to_string(b) + "]");
  double m = 0.5 * (a + b);
  integrate_panel(g, a, m, tol_density, depth + 1, opts, out);
  integrate_panel(g, m, b, tol_density, depth + 1, opts, out);
}

}  // namespace

QuadratureResult integrate_along(const PathSpec& path, const std::function<cplx(cplx)>& f,
                                 const QuadratureOptions& opts) {
  QuadratureResult out;
  double total = std::max(path.length(), 1e-300);
  for (const PathPiece& piece : path.pieces) {
    double len = piece.length();
    if (len == 0.0) continue;
    auto g = [&](double t) { return f(piece.point(t)) * piece.derivative(t); };
    int n = std::max(1, static_cast<int>(std::ceil(len / opts.max_panel)));
    // Tolerance per unit of parameter, so that the piece receives its
    // share of the global budget in proportion to its length.
    double density = opts.tolerance * len / total;
    for (int i = 0; i < n; ++i)
      integrate_panel(g, static_cast<double>(i) / n, static_cast<double>(i + 1) / n, density, 0,
                      opts, out);
  }
  return out;
}

}  // namespace torusmono
