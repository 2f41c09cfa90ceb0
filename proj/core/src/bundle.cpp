#include "torusmono/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace torusmono {

bool within_nagata_bound(const SurfaceContext& ctx) {
  return -ctx.g <= ctx.e && ctx.e <= 2 * ctx.g - 2;
}

long intersect(const SurfaceContext& ctx, HomologyClass h1, HomologyClass h2) {
  return h1.m * h2.n + h2.m * h1.n - static_cast<long>(ctx.e) * h1.m * h2.m;
}

HomologyClass tangent_bundle_class(int g, int d) {
  if (g < 0 || d < 0) throw PreconditionError("genus and number of invariant fibres must be >= 0");
  return {0, 2L - 2L * g - d};
}

long tangency_count(const SurfaceContext& ctx, int d, long section_n) {
  HomologyClass sigma{1, section_n};
  return intersect(ctx, sigma, sigma) - intersect(ctx, tangent_bundle_class(ctx.g, d), sigma);
}

RigiditySolution poincare_rigidity(int g) {
  if (g < 1) throw PreconditionError("rigidity needs genus >= 1");
  RigiditySolution out;
  if (g == 1) {
    out.torus_case = true;
    return out;
  }
  for (int e = -g; e <= 2 * g - 2; ++e) {
    SurfaceContext ctx{g, e};
    if (tangency_count(ctx, 0, 0) < 0) continue;  // sigma0 itself
    for (long n = 0; n <= 4L * g; ++n) {
      if (tangency_count(ctx, 0, n) != 0) continue;
      if (out.solutions == 0) {
        out.e = e;
        out.n = n;
      }
      ++out.solutions;
    }
  }
  return out;
}

long elm_section_effect(bool passes_through_center, long self_int) {
  return passes_through_center ? self_int - 1 : self_int + 1;
}

namespace {

bool point_less(cplx a, cplx b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

}  // namespace

DivisorOnCurve DivisorOnCurve::point(cplx x, long mult) {
  DivisorOnCurve d;
  d.add(x, mult);
  return d;
}

DivisorOnCurve& DivisorOnCurve::add(cplx x, long mult) {
  auto it = std::find_if(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first == x; });
  if (it != terms_.end()) {
    it->second += mult;
    if (it->second == 0) terms_.erase(it);
  } else if (mult != 0) {
    terms_.emplace_back(x, mult);
    std::sort(terms_.begin(), terms_.end(),
              [](const auto& a, const auto& b) { return point_less(a.first, b.first); });
  }
  return *this;
}

DivisorOnCurve DivisorOnCurve::operator+(const DivisorOnCurve& other) const {
  DivisorOnCurve out = *this;
  for (const auto& [x, m] : other.terms_) out.add(x, m);
  return out;
}

DivisorOnCurve DivisorOnCurve::operator-(const DivisorOnCurve& other) const {
  DivisorOnCurve out = *this;
  for (const auto& [x, m] : other.terms_) out.add(x, -m);
  return out;
}

bool DivisorOnCurve::operator==(const DivisorOnCurve& other) const {
  return terms_ == other.terms_;
}

long DivisorOnCurve::degree() const {
  long d = 0;
  for (const auto& t : terms_) d += t.second;
  return d;
}

cplx DivisorOnCurve::abel_jacobi_sum() const {
  cplx s{};
  for (const auto& [x, m] : terms_) s += static_cast<double>(m) * x;
  return s;
}

std::string DivisorOnCurve::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [x, m] : terms_) {
    if (!first) os << (m < 0 ? " - " : " + ");
    else if (m < 0) os << "-";
    first = false;
    long a = std::labs(m);
    if (a != 1) os << a;
    os << "[" << torusmono::to_string(x) << "]";
  }
  return os.str();
}

DivisorOnCurve elm_on_line_bundle(const DivisorOnCurve& d, cplx x, SectionKind section) {
  DivisorOnCurve out = d;
  out.add(x, section == SectionKind::Zero ? -1 : 1);
  return out;
}

namespace {

std::array<double, 2> half_open_coords(cplx u, cplx tau) {
  auto [s, t] = Lattice{tau}.coordinates(u);
  s -= std::floor(s + 0.5);
  t -= std::floor(t + 0.5);
  return {s, t};
}

}  // namespace

cplx canonical_pm(cplx u, cplx tau) {
  auto a = half_open_coords(u, tau);
  auto b = half_open_coords(-u, tau);
  bool take_a = a[1] > b[1] || (a[1] == b[1] && a[0] >= b[0]);
  auto& c = take_a ? a : b;
  return Lattice{tau}.point(c[0], c[1]);
}

RuledBundleClass RuledBundleClass::line_bundle_bar(cplx u0, cplx tau) {
  return {Tag::LineBundleBar, canonical_pm(u0, tau), 0};
}

int RuledBundleClass::e() const {
  switch (tag) {
    case Tag::Pminus1:
      return -1;
    case Tag::DecomposableDeg:
      return static_cast<int>(std::labs(degree));
    default:
      return 0;
  }
}

bool RuledBundleClass::same_as(const RuledBundleClass& other, double tol) const {
  if (tag != other.tag) return false;
  if (tag == Tag::LineBundleBar) return std::abs(point - other.point) <= tol;
  if (tag == Tag::DecomposableDeg) return degree == other.degree;
  return true;
}

const char* to_string(RuledBundleClass::Tag tag) {
  switch (tag) {
    case RuledBundleClass::Tag::Trivial:
      return "Trivial";
    case RuledBundleClass::Tag::LineBundleBar:
      return "LineBundleBar";
    case RuledBundleClass::Tag::P0:
      return "P0";
    case RuledBundleClass::Tag::Pminus1:
      return "Pminus1";
    case RuledBundleClass::Tag::DecomposableDeg:
      return "DecomposableDeg";
  }
  return "?";
}

std::string RuledBundleClass::to_string() const {
  std::string s = torusmono::to_string(tag);
  if (tag == Tag::LineBundleBar) s += "(" + torusmono::to_string(point) + ")";
  if (tag == Tag::DecomposableDeg) s += "(" + std::to_string(degree) + ")";
  return s;
}

RuledBundleClass class_of_divisor(const DivisorOnCurve& d, cplx tau, double tol) {
  long deg = d.degree();
  if (deg != 0) return RuledBundleClass::decomposable(deg);
  cplx s = d.abel_jacobi_sum();
  auto c = half_open_coords(s, tau);
  cplx reduced = Lattice{tau}.point(c[0], c[1]);
  // The half-open reduction can land on a corner; compare with the nearest
  // lattice neighbours too.
  double dist = std::abs(reduced);
  for (long i = -1; i <= 1; ++i)
    for (long j = -1; j <= 1; ++j) dist = std::min(dist, std::abs(reduced - Lattice{tau}.point(i, j)));
  if (dist <= tol) return RuledBundleClass::trivial();
  return RuledBundleClass::line_bundle_bar(s, tau);
}

const char* to_string(QLocation loc) {
  switch (loc) {
    case QLocation::SpecialPoint:
      return "special_point";
    case QLocation::GenericOffFiber:
      return "generic_off_fiber";
    case QLocation::SameFiberGeneric:
      return "same_fiber_generic";
    case QLocation::OnSigmaInfinity:
      return "on_sigma_infinity";
  }
  return "?";
}

RuledBundleClass case_analysis_second_elm(QLocation loc, cplx u0, cplx tau) {
  // First step: elm of the trivial bundle at a point of the zero section over 0.
  const cplx origin{};
  DivisorOnCurve first = elm_on_line_bundle({}, origin, SectionKind::Zero);

  auto needs_u0 = [&] {
    if (class_of_divisor(DivisorOnCurve::point(u0) - DivisorOnCurve::point(origin), tau).tag ==
        RuledBundleClass::Tag::Trivial)
      throw PreconditionError("this case needs u0 away from the fibre over 0");
  };

  switch (loc) {
    case QLocation::SpecialPoint:
      // The special point sits over 0 on the section blown down by the first step.
      return class_of_divisor(elm_on_line_bundle(first, origin, SectionKind::Infinity), tau);
    case QLocation::GenericOffFiber:
      needs_u0();
      return class_of_divisor(elm_on_line_bundle(first, u0, SectionKind::Infinity), tau);
    case QLocation::SameFiberGeneric:
      // Centre on neither section: no split line bundle survives, the
      // undecomposable bundle of even type.
      return RuledBundleClass::p0();
    case QLocation::OnSigmaInfinity:
      needs_u0();
      return class_of_divisor(elm_on_line_bundle(first, u0, SectionKind::Zero), tau);
  }
  throw PreconditionError("unknown location");
}

namespace {

SuspensionClassification classify_linear(const RepClass& rep, cplx tau, double tol,
                                         const WeierstrassContext* ctx) {
  constexpr int kSearch = 50;
  if (rep.first == cplx{} || rep.second == cplx{})
    throw DomainError("linear multipliers must be nonzero");
  cplx w = (tau * std::log(rep.first) - std::log(rep.second)) / two_pi_i;

  Lattice lat{tau};
  auto [s, t] = lat.coordinates(w);
  cplx best{};
  double dist = std::abs(w);
  // Start near the rounded coordinates and stay inside the bounded box.
  long k0 = std::clamp(std::lround(s), -static_cast<long>(kSearch), static_cast<long>(kSearch));
  long l0 = std::clamp(std::lround(t), -static_cast<long>(kSearch), static_cast<long>(kSearch));
  for (long k = std::max(-kSearch + 0L, k0 - 2); k <= std::min(kSearch + 0L, k0 + 2); ++k)
    for (long l = std::max(-kSearch + 0L, l0 - 2); l <= std::min(kSearch + 0L, l0 + 2); ++l) {
      cplx p = lat.point(k, l);
      if (std::abs(w - p) < dist) {
        dist = std::abs(w - p);
        best = p;
      }
    }

  SuspensionClassification out;
  out.lattice_offset = w;
  out.nearest_lattice_point = best;
  out.distance = dist;

  RuledBundleClass bar = RuledBundleClass::line_bundle_bar(-w, tau);
  if (dist > tol && dist <= 10.0 * tol)
    throw AmbiguityError("lattice membership undecided at tol " + std::to_string(tol) +
                         ": distance " + std::to_string(dist) + " to " + to_string(best) +
                         "; candidates Trivial or " + bar.to_string());
  if (dist <= tol) {
    out.bundle = RuledBundleClass::trivial();
  } else {
    out.bundle = bar;
  }
  if (ctx) {
    // Seed with the exact u0 from the offset and solve for c.
    MonodromyPair target{rep.first, rep.second};
    A0Point seed = dist <= tol ? A0Point::zero(std::log(rep.first)) : A0Point::main(-w, 0.0);
    if (seed.is_main() && ctx->lattice_distance(seed.u0) < 0.05) {
      cplx v = seed.u0 - ctx->nearest_lattice_point(seed.u0);
      seed = A0Point::zero(0.0, v);
    }
    out.connection = rh_inverse(*ctx, target, seed).point;
  }
  return out;
}

}  // namespace

SuspensionClassification classify_suspension(const RepClass& rep, cplx tau, double tol,
                                             const WeierstrassContext* ctx) {
  SuspensionClassification out;
  switch (rep.tag) {
    case RepTag::Trivial:
      out.bundle = RuledBundleClass::trivial();
      return out;
    case RepTag::Linear:
      return classify_linear(rep, tau, tol, ctx);
    case RepTag::Euclidean: {
      double scale = std::abs(rep.first) + std::abs(rep.second);
      if (scale == 0.0) {
        out.bundle = RuledBundleClass::trivial();
        return out;
      }
      out.distance = std::abs(rep.second - tau * rep.first) / scale;
      out.bundle = out.distance <= tol ? RuledBundleClass::trivial() : RuledBundleClass::p0();
      return out;
    }
    case RepTag::Dihedral:
      out.bundle = RuledBundleClass::pminus1();
      return out;
  }
  return out;
}

}  // namespace torusmono
