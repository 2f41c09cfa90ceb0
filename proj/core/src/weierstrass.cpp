#include "torusmono/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace torusmono {

std::array<double, 2> Lattice::coordinates(cplx u) const {
  double t = u.imag() / tau.imag();
  double s = u.real() - t * tau.real();
  return {s, t};
}

namespace {

constexpr int kMaxTerms = 4000;

// sum_{n>=1} n^k q^n / (1 - q^n)
cplx lambert(cplx q, int k, int terms) {
  cplx sum{}, qn{1.0};
  for (int n = 1; n <= terms; ++n) {
    qn *= q;
    sum += std::pow(static_cast<double>(n), k) * qn / (1.0 - qn);
  }
  return sum;
}

}  // namespace

WeierstrassContext WeierstrassContext::make(cplx tau, double accuracy) {
  if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag()))
    throw DomainError("lattice parameter must satisfy Im tau > 0, got tau = " + to_string(tau));
  if (!(accuracy >= 1e-14 && accuracy <= 1e-6))
    throw DomainError("accuracy must lie in [1e-14, 1e-6]");

  WeierstrassContext ctx;
  ctx.lattice_ = Lattice{tau};
  ctx.accuracy_ = accuracy;
  ctx.degraded_ = tau.imag() < kMinImagTau;
  ctx.q_ = std::exp(two_pi_i * tau);

  // Tail of every series is bounded by n^5 |q|^(n - 1/2); stop far below
  // the accuracy target so truncation never dominates rounding.
  double aq = std::abs(ctx.q_);
  double target = accuracy * 1e-6;
  int n = 1;
  while (std::pow(static_cast<double>(n + 1), 5) * std::pow(aq, n + 0.5) > target) {
    if (++n > kMaxTerms)
      throw PrecisionError("q-series needs more than " + std::to_string(kMaxTerms) +
                           " terms for tau = " + to_string(tau));
  }
  ctx.terms_ = n;

  const cplx q = ctx.q_;
  cplx e2 = 1.0 - 24.0 * lambert(q, 1, n);
  cplx e4 = 1.0 + 240.0 * lambert(q, 3, n);
  cplx e6 = 1.0 - 504.0 * lambert(q, 5, n);
  ctx.eta1_ = pi * pi / 3.0 * e2;
  ctx.g2_ = 4.0 * std::pow(pi, 4) / 3.0 * e4;
  ctx.g3_ = 8.0 * std::pow(pi, 6) / 27.0 * e6;
  // Computed from the series itself rather than from the Legendre relation,
  // which then serves as an independent consistency check.
  ctx.eta_tau_ = 2.0 * ctx.zeta_series(0.5 * tau);

  auto& c = ctx.laurent_;
  c[0] = ctx.g2_ / 20.0;
  c[1] = ctx.g3_ / 28.0;
  for (std::size_t k = 3; k <= c.size(); ++k) {
    cplx s{};
    for (std::size_t m = 1; m <= k - 2; ++m) s += c[m - 1] * c[k - 2 - m];
    c[k - 1] = 3.0 / ((2.0 * k + 3.0) * (k - 2.0)) * s;
  }
  return ctx;
}

double WeierstrassContext::legendre_residual() const {
  return std::abs(eta1_ * tau() - eta_tau_ - two_pi_i);
}

Reduction WeierstrassContext::reduce(cplx u) const {
  auto [s, t] = lattice_.coordinates(u);
  long m = static_cast<long>(std::floor(s + 0.5));
  long n = static_cast<long>(std::floor(t + 0.5));
  return {u - lattice_.point(m, n), m, n};
}

cplx WeierstrassContext::nearest_lattice_point(cplx u) const {
  Reduction r = reduce(u);
  cplx best = lattice_.point(r.m, r.n);
  double dist = std::abs(r.reduced);
  for (long i = -1; i <= 1; ++i)
    for (long j = -1; j <= 1; ++j) {
      cplx w = lattice_.point(i, j);
      if (std::abs(r.reduced - w) < dist) {
        dist = std::abs(r.reduced - w);
        best = lattice_.point(r.m + i, r.n + j);
      }
    }
  return best;
}

double WeierstrassContext::lattice_distance(cplx u) const {
  return std::abs(u - nearest_lattice_point(u));
}

std::array<cplx, 3> WeierstrassContext::half_periods() const {
  return {cplx{0.5}, 0.5 * tau(), 0.5 * (1.0 + tau())};
}

void WeierstrassContext::guard(cplx u, const char* fn) const {
  cplx w = nearest_lattice_point(u);
  if (std::abs(u - w) < kPoleGuard)
    throw PoleError(std::string(fn) + ": argument " + to_string(u) +
                        " lies within the pole guard of lattice point " + to_string(w),
                    w);
}

// With x = q^n z and y = q^n / z (z = exp(2 pi i v)) the n-th pair of
// terms corresponds to the shifted arguments v + n tau and v - n tau.

cplx WeierstrassContext::zeta_series(cplx v) const {
  cplx z = std::exp(two_pi_i * v);
  cplx sum = eta1_ * v + pi * std::cos(pi * v) / std::sin(pi * v);
  cplx qn{1.0}, acc{};
  for (int n = 1; n <= terms_; ++n) {
    qn *= q_;
    cplx x = qn * z, y = qn / z;
    acc += y / (1.0 - y) - x / (1.0 - x);
  }
  return sum + two_pi_i * acc;
}

cplx WeierstrassContext::wp_series(cplx v) const {
  cplx z = std::exp(two_pi_i * v);
  cplx s = std::sin(pi * v);
  cplx head = pi * pi / (s * s) - eta1_;
  cplx qn{1.0}, acc{};
  for (int n = 1; n <= terms_; ++n) {
    qn *= q_;
    cplx x = qn * z, y = qn / z;
    acc += x / ((1.0 - x) * (1.0 - x)) + y / ((1.0 - y) * (1.0 - y));
  }
  return head + two_pi_i * two_pi_i * acc;
}

cplx WeierstrassContext::wp_prime_series(cplx v) const {
  cplx z = std::exp(two_pi_i * v);
  cplx s = std::sin(pi * v);
  cplx head = -2.0 * pi * pi * pi * std::cos(pi * v) / (s * s * s);
  cplx qn{1.0}, acc{};
  for (int n = 1; n <= terms_; ++n) {
    qn *= q_;
    cplx x = qn * z, y = qn / z;
    acc += x * (1.0 + x) / std::pow(1.0 - x, 3) - y * (1.0 + y) / std::pow(1.0 - y, 3);
  }
  return head + two_pi_i * two_pi_i * two_pi_i * acc;
}

cplx WeierstrassContext::sigma_series(cplx v) const {
  cplx z = std::exp(two_pi_i * v);
  cplx prod = std::exp(0.5 * eta1_ * v * v) * std::sin(pi * v) / pi;
  cplx qn{1.0};
  for (int n = 1; n <= terms_; ++n) {
    qn *= q_;
    cplx x = qn * z, y = qn / z;
    prod *= (1.0 - x) * (1.0 - y) / ((1.0 - qn) * (1.0 - qn));
  }
  return prod;
}

cplx WeierstrassContext::wp(cplx u) const {
  guard(u, "wp");
  return wp_series(reduce(u).reduced);
}

cplx WeierstrassContext::wp_prime(cplx u) const {
  guard(u, "wp_prime");
  return wp_prime_series(reduce(u).reduced);
}

cplx WeierstrassContext::wp_second(cplx u) const {
  cplx p = wp(u);
  return 6.0 * p * p - 0.5 * g2_;
}

cplx WeierstrassContext::zeta(cplx u) const {
  guard(u, "zeta");
  Reduction r = reduce(u);
  return zeta_series(r.reduced) + eta(r.m, r.n);
}

cplx WeierstrassContext::sigma(cplx u) const {
  Reduction r = reduce(u);
  if (r.m == 0 && r.n == 0) return sigma_series(u);
  cplx lambda = lattice_.point(r.m, r.n);
  double sign = ((r.m + r.n + r.m * r.n) % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(eta(r.m, r.n) * (r.reduced + 0.5 * lambda)) *
         sigma_series(r.reduced);
}

namespace {

double shortest_period(cplx tau) {
  return std::min({1.0, std::abs(tau), std::abs(1.0 + tau), std::abs(1.0 - tau)});
}

}  // namespace

cplx WeierstrassContext::wp_regular(cplx u) const {
  if (std::abs(u) < 0.15 * shortest_period(tau())) {
    cplx u2 = u * u, pw = u2, sum{};
    for (const cplx& ck : laurent_) {
      sum += ck * pw;
      pw *= u2;
    }
    return sum;
  }
  return wp(u) - 1.0 / (u * u);
}

cplx WeierstrassContext::zeta_regular(cplx u) const {
  if (std::abs(u) < 0.15 * shortest_period(tau())) {
    // zeta(u) = 1/u - sum_k c_k u^{2k+1} / (2k + 1)
    cplx u2 = u * u, pw = u * u2, sum{};
    for (std::size_t k = 1; k <= laurent_.size(); ++k) {
      sum += laurent_[k - 1] * pw / (2.0 * k + 1.0);
      pw *= u2;
    }
    return -sum;
  }
  return zeta(u) - 1.0 / u;
}

cplx zeta_identity_residual(const WeierstrassContext& ctx, cplx u, cplx u0) {
  constexpr double kClearance = 1e-3;
  for (cplx w : {u, u0, u - u0, u + u0}) {
    cplx p = ctx.nearest_lattice_point(w);
    if (std::abs(w - p) < kClearance)
      throw PoleError("zeta identity: configuration too close to the lattice", p);
  }
  cplx lhs = (ctx.wp_prime(u) + ctx.wp_prime(u0)) / (2.0 * (ctx.wp(u) - ctx.wp(u0)));
  cplx rhs = ctx.zeta(u - u0) - ctx.zeta(u) + ctx.zeta(u0);
  return lhs - rhs;
}

}  // namespace torusmono
