#include "torusmono/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "torusmono/affine.hpp"
#include "torusmono/bundle.hpp"
#include "torusmono/mobius.hpp"
#include "torusmono/riccati.hpp"
#include "torusmono/riemann_hilbert.hpp"
#include "torusmono/weierstrass.hpp"

namespace torusmono {

namespace {

const std::vector<cplx>& test_lattices() {
  static const std::vector<cplx> taus = {cplx{0.0, 1.0}, cplx{0.5, 1.0},
                                         std::polar(1.0, pi / 3.0)};
  return taus;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Keeps the largest residual and a description of where it occurred.
struct Worst {
  double value = 0.0;
  std::string where;
  int cases = 0;
  bool failed = false;

  void update(double v, const std::string& at) {
    ++cases;
    if (!std::isfinite(v)) v = std::numeric_limits<double>::infinity();
    if (v >= value || where.empty()) {
      value = std::max(value, v);
      where = at;
    }
  }
  void error(const std::string& at, const std::exception& e) {
    ++cases;
    failed = true;
    value = std::numeric_limits<double>::infinity();
    where = at + ": " + e.what();
  }
};

std::string at_tau(cplx tau) { return "tau=" + to_string(tau); }

cplx uniform_cell_point(std::mt19937_64& rng, cplx tau) {
  std::uniform_real_distribution<double> d(-0.5, 0.5);
  double s = d(rng), t = d(rng);
  return Lattice{tau}.point(s, t);
}

double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Exponent distance modulo 2 pi i: a chart-free distance on A0 since the
// monodromy map is injective.
double a0_distance(const WeierstrassContext& ctx, const A0Point& p, const A0Point& q) {
  auto e = rh_exponents(ctx, p), f = rh_exponents(ctx, q);
  double d = 0.0;
  for (int k = 0; k < 2; ++k) {
    cplx diff = e[k] - f[k];
    double im = std::remainder(diff.imag(), 2.0 * pi);
    d = std::max(d, std::abs(cplx{diff.real(), im}));
  }
  return d;
}

std::vector<cplx> grid_u0(cplx tau, int n) {
  std::vector<cplx> out;
  Lattice lat{tau};
  for (int i = 0; i < n; ++i) {
    double s = -0.4 + 0.8 * (i + 0.5) / n + 0.037;
    double t = 0.41 - 0.8 * (i + 0.5) / n + 0.013;
    cplx u = lat.point(s, t);
    // keep clear of the origin and of the half periods, where +-u0 collide
    if (std::abs(u) < 0.12) u += 0.15;
    out.push_back(u);
  }
  return out;
}

std::vector<cplx> grid_c(int n) {
  std::vector<cplx> out;
  for (int j = 0; j < n; ++j) {
    double x = -1.0 + 2.0 * (j + 0.5) / n;
    out.emplace_back(x, (j % 2 == 0 ? 0.6 : -0.4) * (1.0 - 0.3 * x));
  }
  return out;
}

// Criterion 1 -----------------------------------------------------------------

void weierstrass_kernel(const VerifyOptions& opts, Worst& w) {
  std::mt19937_64 rng(opts.seed);
  for (cplx tau : test_lattices()) {
    auto ctx = WeierstrassContext::make(tau);
    w.update(ctx.legendre_residual() / 1e-10, at_tau(tau) + " legendre");
    int ode = 0, ident = 0;
    while (ode < 100) {
      cplx u = uniform_cell_point(rng, tau);
      if (ctx.lattice_distance(u) < 0.25) continue;
      ++ode;
      cplx p = ctx.wp(u), dp = ctx.wp_prime(u);
      double r = std::abs(dp * dp - (4.0 * p * p * p - ctx.g2() * p - ctx.g3()));
      w.update(r / 1e-10, at_tau(tau) + " ode u=" + to_string(u));
    }
    while (ident < 100) {
      cplx u = uniform_cell_point(rng, tau), u0 = uniform_cell_point(rng, tau);
      bool clear = true;
      for (cplx x : {u, u0, u - u0, u + u0}) clear = clear && ctx.lattice_distance(x) >= 0.1;
      if (!clear) continue;
      ++ident;
      double r = std::abs(zeta_identity_residual(ctx, u, u0));
      w.update(r / 1e-9, at_tau(tau) + " zeta identity u=" + to_string(u) + " u0=" + to_string(u0));
    }
  }
}

// Criterion 2 -----------------------------------------------------------------

void monodromy_cross(const VerifyOptions& opts, Worst& w) {
  for (cplx tau : test_lattices()) {
    auto ctx = WeierstrassContext::make(tau);
    for (cplx u0 : grid_u0(tau, opts.grid))
      for (cplx c : grid_c(opts.grid)) {
        std::string at = at_tau(tau) + " u0=" + to_string(u0) + " c=" + to_string(c);
        try {
          MonodromyResult num = monodromy_numeric(ctx, {u0, c});
          MonodromyPair closed = rh_map(ctx, A0Point::main(u0, c));
          double r = std::max(std::abs(num.x / closed.x - 1.0), std::abs(num.y / closed.y - 1.0));
          w.update(r / opts.monodromy_tol, at);
        } catch (const Error& e) {
          w.error(at, e);
        }
      }
  }
}

// Criterion 3 -----------------------------------------------------------------

void apparent_singularities(const VerifyOptions& opts, Worst& w) {
  for (cplx tau : test_lattices()) {
    auto ctx = WeierstrassContext::make(tau);
    auto cs = grid_c(opts.grid);
    for (cplx u0 : grid_u0(tau, opts.grid)) {
      cplx c = cs[static_cast<std::size_t>(std::abs(u0.real()) * 10) % cs.size()];
      double sep = std::min({ctx.lattice_distance(u0), ctx.lattice_distance(2.0 * u0)});
      double r = std::min(0.05, 0.3 * sep);
      for (auto [center, residue] : {std::pair{cplx{0.0}, -1.0}, std::pair{u0, 1.0}}) {
        std::string at = at_tau(tau) + " u0=" + to_string(u0) + " loop about " + to_string(center);
        try {
          TransportResult t = transport_linear(ctx, {u0, c}, make_circle(center, r));
          double res = std::max(std::abs(t.multiplier - 1.0),
                                std::abs(t.log_multiplier / two_pi_i - residue) * 2.0 * pi);
          w.update(res / 1e-8, at);
        } catch (const Error& e) {
          w.error(at, e);
        }
      }
    }
  }
}

// Criterion 4 -----------------------------------------------------------------

void affine_map(const VerifyOptions& opts, Worst& w) {
  std::mt19937_64 rng(opts.seed + 4);
  std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.7, 1.5), cc(-1.5, 1.5);
  for (int k = 0; k < 20; ++k) {
    AffineStructure s{cplx{re(rng), im(rng)}, cplx{cc(rng), cc(rng)}};
    std::string at = at_tau(s.tau) + " c=" + to_string(s.c);
    try {
      AffinePair exact = affine_monodromy(s);
      AffinePair cont = continued_monodromy(s);
      double r = std::max({rel_err(cont.a1, exact.a1), rel_err(cont.b1, exact.b1),
                           rel_err(cont.a_tau, exact.a_tau), rel_err(cont.b_tau, exact.b_tau)});
      // closed forms e^{c gamma}, (e^{c gamma} - 1) / c
      for (auto [a, b, gamma] : {std::tuple{exact.a1, exact.b1, cplx{1.0}},
                                 std::tuple{exact.a_tau, exact.b_tau, s.tau}}) {
        r = std::max(r, rel_err(a, std::exp(s.c * gamma)));
        r = std::max(r, rel_err(b, (std::exp(s.c * gamma) - 1.0) / s.c));
      }
      r = std::max(r, b1_distance(monodromy_to_b1(s), b1_from_affine_pair(cont)));
      w.update(r / 1e-8, at + " monodromy");

      cplx u{0.21, -0.13};
      cplx sch = schwarzian_numeric([&](cplx z) { return developing_map(s.c, z); }, u);
      w.update(std::abs(sch - s.quadratic_differential()) / 1e-6, at + " schwarzian");
    } catch (const Error& e) {
      w.error(at, e);
    }
  }
}

// Criterion 5 -----------------------------------------------------------------

void non_injectivity(const VerifyOptions& opts, Worst& w) {
  std::mt19937_64 rng(opts.seed + 5);
  std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.6, 1.6);
  std::uniform_int_distribution<long> mn(-2, 2);
  int done = 0;
  while (done < 10) {
    cplx tau{re(rng), im(rng)}, tau2{re(rng), im(rng)};
    long m = mn(rng), n = mn(rng);
    if ((m == 0 && n == 0) || std::abs(tau2 - tau) < 0.5) continue;
    ++done;
    std::string at = at_tau(tau) + " tau'=" + to_string(tau2) + " m=" + std::to_string(m) +
                     " n=" + std::to_string(n);
    try {
      auto [s1, s2] = noninjective_pair(tau, tau2, m, n);
      w.update(b1_distance(monodromy_to_b1(s1), monodromy_to_b1(s2)) / 1e-8, at);
    } catch (const Error& e) {
      w.error(at, e);
    }
  }
}

// Criterion 6 -----------------------------------------------------------------

void local_diffeo(const VerifyOptions& opts, Worst& w) {
  for (cplx tau : test_lattices()) {
    auto ctx = WeierstrassContext::make(tau);
    for (cplx u0 : grid_u0(tau, opts.grid))
      for (cplx c : grid_c(opts.grid)) {
        std::string at = at_tau(tau) + " u0=" + to_string(u0) + " c=" + to_string(c);
        try {
          RhJacobian j = rh_jacobian(ctx, A0Point::main(u0, c));
          // sigma_min must exceed 1e-6: a ratio above 1 fails
          w.update(1e-6 / j.sigma_min, at + " sigma_min=" + fmt(j.sigma_min));
          double col = std::max(std::abs(j.entries[0][1] - 1.0), std::abs(j.entries[1][1] - tau));
          w.update(col / 1e-10, at + " c-column");
        } catch (const Error& e) {
          w.error(at, e);
        }
      }
  }
}

// Criterion 7 -----------------------------------------------------------------

A0Point random_main(std::mt19937_64& rng, const WeierstrassContext& ctx) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  cplx u;
  do u = uniform_cell_point(rng, ctx.tau());
  while (ctx.lattice_distance(u) < 0.05);
  return A0Point::main(u, cplx{c(rng), c(rng)});
}

void group_law_suite(const VerifyOptions& opts, Worst& w) {
  std::mt19937_64 rng(opts.seed + 7);
  std::uniform_real_distribution<double> cd(-1.0, 1.0);
  for (cplx tau : test_lattices()) {
    auto ctx = WeierstrassContext::make(tau);
    std::vector<std::pair<A0Point, A0Point>> pairs;
    for (cplx h : ctx.half_periods()) {
      pairs.push_back({A0Point::main(h, 0.3), A0Point::main(h, -0.1)});     // sum on the lattice
      pairs.push_back({A0Point::main(h, 0.2), random_main(rng, ctx)});
    }
    A0Point a = random_main(rng, ctx);
    pairs.push_back({a, A0Point::main(-a.u0 + 1e-4, 0.4)});            // product near the zero chart
    pairs.push_back({a, A0Point::main(-a.u0 + 1.0 + tau + 0.03, 0.1)});  // near-lattice sum, shifted
    pairs.push_back({a, A0Point::main(a.u0 + 1e-9, -0.2)});            // near-diagonal
    pairs.push_back({a, A0Point::main(a.u0, 0.5)});                    // doubling
    pairs.push_back({a, A0Point::zero(0.7)});                          // trivial-bundle factor
    pairs.push_back({A0Point::zero(-0.3, 0.02), a});                   // zero chart with u0 != 0
    while (pairs.size() < 25) pairs.push_back({random_main(rng, ctx), random_main(rng, ctx)});

    for (const auto& [p1, p2] : pairs) {
      std::string at = at_tau(tau) + " u1=" + to_string(p1.u0) + " u2=" + to_string(p2.u0);
      try {
        A0Point p3 = group_law(ctx, p1, p2);
        w.update(group_law_residual(ctx, p1, p2, p3) / 1e-6, at + " homomorphism");
      } catch (const Error& e) {
        w.error(at, e);
      }
    }

    // identity and associativity
    for (int k = 0; k < 10; ++k) {
      A0Point p = random_main(rng, ctx), q = random_main(rng, ctx), r = random_main(rng, ctx);
      std::string at = at_tau(tau) + " triple " + std::to_string(k);
      try {
        A0Point e = A0Point::zero(0.0);
        double id = std::max(a0_distance(ctx, group_law(ctx, p, e), p),
                             a0_distance(ctx, group_law(ctx, e, p), p));
        if (!group_law(ctx, p, e).is_main() || std::abs(group_law(ctx, p, e).c - p.c) > 1e-12)
          id = std::max(id, 1.0);
        w.update(id / 1e-5, at + " identity");
        A0Point left = group_law(ctx, group_law(ctx, p, q), r);
        A0Point right = group_law(ctx, p, group_law(ctx, q, r));
        w.update(a0_distance(ctx, left, right) / 1e-5, at + " associativity");
      } catch (const Error& e) {
        w.error(at, e);
      }
    }
  }
}

// Criterion 8 -----------------------------------------------------------------

void euclidean_family(const VerifyOptions&, Worst& w) {
  for (cplx tau : test_lattices()) {
    auto ctx = WeierstrassContext::make(tau);
    for (int k = 0; k < 10; ++k) {
      cplx gamma{-2.0 + 0.45 * k, 0.3 * std::sin(1.3 * k)};
      std::string at = at_tau(tau) + " gamma=" + to_string(gamma);
      try {
        EuclideanMonodromy m = euclidean_monodromy(ctx, gamma);
        double r = std::abs(m.b_tau_numeric - tau * m.b1_numeric - two_pi_i);
        r = std::max(r, std::abs(m.b_tau - tau * m.b1 - two_pi_i));
        w.update(r / 1e-8, at + " legendre");

        // Riccati transports are translations z -> z + b with multiplier 1.
        double mult = 0.0;
        for (auto [map, b] : {std::pair{m.map1, m.b1_numeric}, std::pair{m.map_tau, m.b_tau_numeric}}) {
          MobiusMap n = map.normalized();
          cplx d = n.d;
          mult = std::max({mult, std::abs(n.a / d - 1.0), std::abs(n.c / d)});
          mult = std::max(mult, rel_err(n.b / d, b));
        }
        w.update(mult / 1e-8, at + " translation part");

        RepClass rep = classify_commuting_pair(m.map1, m.map_tau);
        SuspensionClassification cls = classify_suspension(rep, tau);
        bool ok = rep.tag == RepTag::Euclidean && cls.bundle.tag == RuledBundleClass::Tag::P0;
        w.update(ok ? 0.0 : 2.0, at + " class " + std::string(to_string(rep.tag)) + " -> " +
                                     cls.bundle.to_string());
      } catch (const Error& e) {
        w.error(at, e);
      }
    }
  }
}

// Criterion 9 -----------------------------------------------------------------

void bundle_calculus(const VerifyOptions& opts, Worst& w) {
  long mismatches = 0;
  std::string first;
  auto note = [&](bool ok, const std::string& what) {
    ++w.cases;
    if (!ok) {
      ++mismatches;
      if (first.empty()) first = what;
    }
  };

  for (int g = 0; g <= 6; ++g)
    for (int d = 0; d <= 6; ++d)
      for (int e = -6; e <= 10; ++e)
        for (long n = -10; n <= 10; ++n) {
          long t = tangency_count({g, e}, d, n);
          note(t == 2 * n - e - 2 + 2 * g + d, "tangency g=" + std::to_string(g) +
                                                   " d=" + std::to_string(d) +
                                                   " e=" + std::to_string(e) + " n=" + std::to_string(n));
        }

  for (int g = 2; g <= 6; ++g) {
    RigiditySolution s = poincare_rigidity(g);
    note(!s.torus_case && s.unique() && s.e == 2 * g - 2 && s.n == 0,
         "rigidity g=" + std::to_string(g));
  }
  note(poincare_rigidity(1).torus_case, "rigidity torus marker");

  const cplx tau{0.0, 1.0}, u0{0.3, 0.2};
  using Tag = RuledBundleClass::Tag;
  note(case_analysis_second_elm(QLocation::SpecialPoint, u0, tau).tag == Tag::Trivial, "case 0");
  note(case_analysis_second_elm(QLocation::GenericOffFiber, u0, tau)
           .same_as(RuledBundleClass::line_bundle_bar(u0, tau)),
       "case 1");
  note(case_analysis_second_elm(QLocation::SameFiberGeneric, u0, tau).tag == Tag::P0, "case 2");
  note(case_analysis_second_elm(QLocation::OnSigmaInfinity, u0, tau)
           .same_as(RuledBundleClass::decomposable(-2)),
       "case 3");

  std::mt19937_64 rng(opts.seed + 9);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> len(1, 12);
  for (int trial = 0; trial < 200; ++trial) {
    long self = std::uniform_int_distribution<long>(-5, 5)(rng);
    DivisorOnCurve div;
    int k = len(rng);
    for (int i = 0; i < k; ++i) {
      long before = self;
      self = elm_section_effect(coin(rng), self);
      note(((before - self) % 2 + 2) % 2 == 1, "section parity trial " + std::to_string(trial));
      long deg_before = div.degree();
      div = elm_on_line_bundle(div, cplx{0.1 * i, 0.05}, coin(rng) ? SectionKind::Zero
                                                                  : SectionKind::Infinity);
      int e_before = RuledBundleClass::decomposable(deg_before).e();
      int e_after = class_of_divisor(div, tau).e();
      note((e_before - e_after) % 2 != 0, "e parity trial " + std::to_string(trial));
    }
  }
  w.value = static_cast<double>(mismatches);
  w.where = first.empty() ? "all exact checks agree" : "first mismatch: " + first;
}

// Criterion 10 ----------------------------------------------------------------

void scalar_ode(const VerifyOptions&, Worst& w) {
  for (int k = 0; k < 10; ++k) {
    cplx phi = std::polar(0.4 + 0.35 * k, 0.7 * k);
    cplx v{0.25, 0.1};
    std::string at = "phi=" + to_string(phi);
    try {
      cplx s = schwarzian_numeric([&](cplx z) { return ratio_of_linear_solutions(phi, z); }, v);
      w.update(std::abs(s - phi) / 1e-5, at);
    } catch (const Error& e) {
      w.error(at, e);
    }
  }
}

struct Spec {
  const char* name;
  double threshold;
  double time_limit;
  std::function<void(const VerifyOptions&, Worst&)> run;
  bool normalized;  // residuals were divided by the threshold
};

Spec spec_for(int id, const VerifyOptions& opts) {
  switch (id) {
    case 1: return {"Weierstrass kernel", 1.0, 5.0, weierstrass_kernel, true};
    case 2: return {"monodromy cross-validation", opts.monodromy_tol, 60.0, monodromy_cross, true};
    case 3: return {"apparent singularities", 1e-8, 0.0, apparent_singularities, true};
    case 4: return {"affine-structure monodromy and Schwarzian", 1.0, 0.0, affine_map, true};
    case 5: return {"non-injectivity of the affine monodromy", 1e-8, 0.0, non_injectivity, true};
    case 6: return {"local diffeomorphism of the monodromy map", 1.0, 0.0, local_diffeo, true};
    case 7: return {"group law", 1.0, 0.0, group_law_suite, true};
    case 8: return {"euclidean family", 1.0, 0.0, euclidean_family, true};
    case 9: return {"bundle calculus", 0.0, 1.0, bundle_calculus, false};
    case 10: return {"scalar ODE correspondence", 1e-5, 0.0, scalar_ode, true};
    default: throw PreconditionError("no acceptance criterion " + std::to_string(id));
  }
}

}  // namespace

const char* to_string(Suite s) {
  switch (s) {
    case Suite::Weierstrass: return "weierstrass";
    case Suite::Monodromy: return "monodromy";
    case Suite::Rh: return "rh";
    case Suite::Groups: return "groups";
    case Suite::Bundles: return "bundles";
    case Suite::All: return "all";
  }
  return "?";
}

Suite suite_from_string(const std::string& name) {
  for (Suite s : {Suite::Weierstrass, Suite::Monodromy, Suite::Rh, Suite::Groups, Suite::Bundles,
                  Suite::All})
    if (name == to_string(s)) return s;
  throw PreconditionError("unknown suite '" + name + "'");
}

std::vector<int> suite_criteria(Suite s) {
  switch (s) {
    case Suite::Weierstrass: return {1};
    case Suite::Monodromy: return {2, 3, 8};
    case Suite::Rh: return {6, 7};
    case Suite::Groups: return {4, 5, 10};
    case Suite::Bundles: return {9};
    case Suite::All: return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  }
  return {};
}

CriterionResult run_criterion(int id, const VerifyOptions& opts) {
  if (opts.grid < 1) throw PreconditionError("grid must be positive");
  Spec spec = spec_for(id, opts);
  Worst w;
  auto t0 = std::chrono::steady_clock::now();
  try {
    spec.run(opts, w);
  } catch (const std::exception& e) {
    w.error("unexpected", e);
  }
  auto t1 = std::chrono::steady_clock::now();

  CriterionResult r;
  r.id = id;
  r.name = spec.name;
  r.threshold = spec.threshold;
  r.mixed_bounds = spec.normalized && spec.threshold == 1.0;
  // Residuals scaled by their own bound come back in units of the bound.
  r.worst = spec.normalized ? w.value * spec.threshold : w.value;
  r.cases = w.cases;
  r.seconds = std::chrono::duration<double>(t1 - t0).count();
  r.time_limit = spec.time_limit;
  r.detail = w.where;
  bool within = spec.normalized ? w.value <= 1.0 : w.value <= spec.threshold;
  bool in_time = spec.time_limit <= 0.0 || r.seconds < spec.time_limit;
  r.passed = !w.failed && within && in_time;
  if (!in_time) r.detail += " (runtime " + fmt(r.seconds) + " s over " + fmt(spec.time_limit) + " s)";
  return r;
}

std::vector<CriterionResult> run_suite(Suite s, const VerifyOptions& opts) {
  std::vector<CriterionResult> out;
  for (int id : suite_criteria(s)) out.push_back(run_criterion(id, opts));
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << "): ";
  if (r.mixed_bounds)
    os << "worst residual/bound " << fmt(r.worst) << " <= 1";
  else
    os << "worst " << fmt(r.worst) << " <= " << fmt(r.threshold);
  os << ", " << r.cases << " cases, " << fmt(r.seconds) << " s";
  if (r.time_limit > 0.0) os << " (limit " << fmt(r.time_limit) << " s)";
  if (!r.passed) os << "; " << r.detail;
  return os.str();
}

}  // namespace torusmono
