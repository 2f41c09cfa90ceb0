#pragma once

#include <array>

#include "torusmono/types.hpp"

namespace torusmono {

/// Lattice Z + tau Z with Im tau > 0.
struct Lattice {
  cplx tau;

  /// Coordinates (s, t) with u = s + t tau.
  std::array<double, 2> coordinates(cplx u) const;
  cplx point(double s, double t) const { return s + t * tau; }
  cplx point(long m, long n) const { return static_cast<double>(m) + static_cast<double>(n) * tau; }
};

/// u = reduced + m + n tau, reduced in the parallelogram centred at 0.
struct Reduction {
  cplx reduced;
  long m = 0;
  long n = 0;
};

/// Immutable evaluation engine for the Weierstrass functions of Z + tau Z.
///
/// Evaluation uses the trigonometric q-series (q = exp(2 pi i tau)) after
/// reducing the argument into the parallelogram centred at the origin;
/// the truncation order is picked from |q| so the neglected tail is far
/// below the requested accuracy. Accuracy statements hold at distance
/// >= 1e-3 from the lattice. Lattices with Im tau < 0.2 are accepted but
/// flagged as degraded.
class WeierstrassContext {
 public:
  static constexpr double kPoleGuard = 1e-6;
  static constexpr double kMinImagTau = 0.2;

  /// Throws DomainError for Im tau <= 0 or accuracy outside
  /// [1e-14, 1e-6], PrecisionError if the series would need too many terms.
  static WeierstrassContext make(cplx tau, double accuracy = 1e-12);

  const Lattice& lattice() const { return lattice_; }
  cplx tau() const { return lattice_.tau; }
  cplx g2() const { return g2_; }
  cplx g3() const { return g3_; }
  /// Quasi-periods: zeta(u + 1) = zeta(u) + eta1, zeta(u + tau) = zeta(u) + eta_tau.
  cplx eta1() const { return eta1_; }
  cplx eta_tau() const { return eta_tau_; }
  /// Quasi-period of the lattice vector m + n tau.
  cplx eta(long m, long n) const {
    return static_cast<double>(m) * eta1_ + static_cast<double>(n) * eta_tau_;
  }
  cplx nome() const { return q_; }
  int truncation() const { return terms_; }
  double accuracy() const { return accuracy_; }
  bool degraded() const { return degraded_; }

  /// |eta1 tau - eta_tau - 2 pi i|.
  double legendre_residual() const;

  Reduction reduce(cplx u) const;
  cplx nearest_lattice_point(cplx u) const;
  double lattice_distance(cplx u) const;
  /// 1/2, tau/2, (1 + tau)/2.
  std::array<cplx, 3> half_periods() const;

  // The meromorphic functions throw PoleError within kPoleGuard of the
  // lattice; sigma is entire and never throws.
  cplx wp(cplx u) const;
  cplx wp_prime(cplx u) const;
  /// 6 wp^2 - g2 / 2.
  cplx wp_second(cplx u) const;
  cplx zeta(cplx u) const;
  cplx sigma(cplx u) const;
  /// zeta(u) - 1/u, holomorphic near the origin (value 0 at u = 0).
  cplx zeta_regular(cplx u) const;
  /// wp(u) - 1/u^2, holomorphic near the origin.
  cplx wp_regular(cplx u) const;

 private:
  WeierstrassContext() = default;

  void guard(cplx u, const char* fn) const;
  cplx zeta_series(cplx v) const;
  cplx wp_series(cplx v) const;
  cplx wp_prime_series(cplx v) const;
  cplx sigma_series(cplx v) const;

  Lattice lattice_{cplx{0.0, 1.0}};
  cplx q_{};
  cplx g2_{}, g3_{};
  cplx eta1_{}, eta_tau_{};
  std::array<cplx, 12> laurent_{};  // wp = 1/u^2 + sum_k laurent_[k-1] u^{2k}
  int terms_ = 0;
  double accuracy_ = 1e-12;
  bool degraded_ = false;
};

/// LHS - RHS of (wp'(u) + wp'(u0)) / (2 (wp(u) - wp(u0))) =
/// zeta(u - u0) - zeta(u) + zeta(u0). Requires u, u0, u - u0, u + u0 to
/// stay 1e-3 away from the lattice (PoleError otherwise).
cplx zeta_identity_residual(const WeierstrassContext& ctx, cplx u, cplx u0);

}  // namespace torusmono
