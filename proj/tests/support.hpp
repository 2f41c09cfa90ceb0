#pragma once

#include <complex>
#include <random>

#include <doctest.h>

#include "torusmono/types.hpp"
#include "torusmono/weierstrass.hpp"

namespace testing_support {

using torusmono::cplx;

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(977 + salt); }

/// Uniform point of the parallelogram centred at 0 at least `clear` away
/// from the lattice.
inline cplx cell_point(std::mt19937_64& g, const torusmono::WeierstrassContext& ctx,
                       double clear = 0.0) {
  std::uniform_real_distribution<double> d(-0.5, 0.5);
  for (;;) {
    cplx u = ctx.lattice().point(d(g), d(g));
    if (ctx.lattice_distance(u) >= clear) return u;
  }
}

inline cplx random_complex(std::mt19937_64& g, double radius) {
  std::uniform_real_distribution<double> d(-radius, radius);
  return {d(g), d(g)};
}

inline const cplx kLattices[] = {cplx{0.0, 1.0}, cplx{0.5, 1.0}, std::polar(1.0, torusmono::pi / 3.0)};

}  // namespace testing_support
