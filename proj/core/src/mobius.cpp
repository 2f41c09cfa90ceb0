#include "torusmono/mobius.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace torusmono {

double chordal_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
  if (p.infinite && q.infinite) return 0.0;
  if (p.infinite) return 1.0 / std::sqrt(1.0 + std::norm(q.value));
  if (q.infinite) return 1.0 / std::sqrt(1.0 + std::norm(p.value));
  return std::abs(p.value - q.value) /
         (std::sqrt(1.0 + std::norm(p.value)) * std::sqrt(1.0 + std::norm(q.value)));
}

std::string to_string(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << z.real() << ", " << z.imag() << ')';
  return os.str();
}

namespace {

double max_modulus(const MobiusMap& m) {
  return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
}

std::array<cplx, 4> entries(const MobiusMap& m) { return {m.a, m.b, m.c, m.d}; }

}  // namespace

MobiusMap MobiusMap::normalized() const {
  double s = max_modulus(*this);
  if (s == 0.0) throw DegeneracyError("Mobius map with all coefficients zero");
  return {a / s, b / s, c / s, d / s};
}

MobiusMap MobiusMap::from_coefficients(cplx a, cplx b, cplx c, cplx d) {
  MobiusMap m = MobiusMap{a, b, c, d}.normalized();
  if (std::abs(m.det()) < kDetTolerance)
    throw DegeneracyError("Mobius map is degenerate: |ad - bc| = " +
                          std::to_string(std::abs(m.det())));
  return m;
}

MobiusMap MobiusMap::affine(cplx multiplier, cplx translation) {
  return from_coefficients(multiplier, translation, 0.0, 1.0);
}

MobiusMap MobiusMap::inverse() const { return from_coefficients(d, -b, -c, a); }

ProjectivePoint MobiusMap::operator()(const ProjectivePoint& z) const {
  if (z.infinite) {
    if (c == cplx{}) return ProjectivePoint::infinity();
    return ProjectivePoint::finite(a / c);
  }
  cplx den = c * z.value + d;
  if (den == cplx{}) return ProjectivePoint::infinity();
  return ProjectivePoint::finite((a * z.value + b) / den);
}

MobiusMap compose(const MobiusMap& f, const MobiusMap& g) {
  return MobiusMap::from_coefficients(f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d,
                                      f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d);
}

ProjectivePoint apply(const MobiusMap& f, const ProjectivePoint& z) { return f(z); }

namespace {

double minor_defect(const MobiusMap& f, const MobiusMap& g) {
  auto x = entries(f.normalized());
  auto y = entries(g.normalized());
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      worst = std::max(worst, std::abs(x[i] * y[j] - x[j] * y[i]));
  return worst;
}

}  // namespace

bool same_projective(const MobiusMap& f, const MobiusMap& g, double tol) {
  return minor_defect(f, g) <= tol;
}

double commutator_defect(const MobiusMap& f, const MobiusMap& g) {
  return minor_defect(compose(f, g), compose(g, f));
}

bool is_identity(const MobiusMap& f, double tol) {
  return same_projective(f, MobiusMap::identity(), tol);
}

std::array<cplx, 2> normalize_direction(cplx first, cplx second) {
  double s = std::max(std::abs(first), std::abs(second));
  if (s == 0.0) throw DegeneracyError("homogeneous pair [0:0]");
  // Exact 1 on the dominant entry; ties go to the first slot.
  if (std::abs(first) >= std::abs(second)) return {cplx{1.0}, second / first};
  return {first / second, cplx{1.0}};
}

B1Point b1_from_affine_pair(const AffinePair& p, double tol) {
  if (std::max(std::abs(p.b1), std::abs(p.b_tau)) <= tol)
    throw DegeneracyError(
        "linear representation (b1 = b_tau = 0) is excluded from B1");
  return {p.a1, p.a_tau, normalize_direction(p.b1, p.b_tau)};
}

double b1_distance(const B1Point& p, const B1Point& q) {
  auto rel = [](cplx x, cplx y) { return std::abs(x - y) / std::max(1.0, std::abs(x)); };
  auto u = normalize_direction(p.bdir[0], p.bdir[1]);
  auto v = normalize_direction(q.bdir[0], q.bdir[1]);
  double cross = std::abs(u[0] * v[1] - u[1] * v[0]);
  return std::max({rel(p.a1, q.a1), rel(p.a_tau, q.a_tau), cross});
}

const char* to_string(RepTag tag) {
  switch (tag) {
    case RepTag::Trivial: return "trivial";
    case RepTag::Linear: return "linear";
    case RepTag::Euclidean: return "euclidean";
    case RepTag::Dihedral: return "dihedral";
  }
  return "?";
}

namespace {

enum class Kind { Identity, Parabolic, Semisimple };

// tr^2/det - 4 is the scale-free discriminant: zero exactly for parabolic
// (and identity) elements.
cplx discriminant(const MobiusMap& m) { return m.trace() * m.trace() / m.det() - 4.0; }

Kind kind_of(const MobiusMap& m, double tol) {
  if (is_identity(m, tol)) return Kind::Identity;
  double disc = std::abs(discriminant(m));
  if (disc <= tol) return Kind::Parabolic;
  if (disc < std::sqrt(tol))
    throw AmbiguityError("eigenvalue separation " + std::to_string(disc) +
                         " is too small to decide parabolic vs semisimple");
  return Kind::Semisimple;
}

ProjectivePoint point_of(cplx x, cplx y) {
  if (std::abs(y) <= 1e-14 * std::abs(x)) return ProjectivePoint::infinity();
  return ProjectivePoint::finite(x / y);
}

// Eigenvector for eigenvalue lambda, taken from whichever row of
// (M - lambda) is better conditioned.
ProjectivePoint eigen_point(const MobiusMap& m, cplx lambda) {
  cplx x1 = m.b, y1 = lambda - m.a;
  cplx x2 = lambda - m.d, y2 = m.c;
  if (std::abs(x1) + std::abs(y1) >= std::abs(x2) + std::abs(y2)) return point_of(x1, y1);
  return point_of(x2, y2);
}

std::array<ProjectivePoint, 2> fixed_points(const MobiusMap& m) {
  cplx tr = m.trace();
  cplx root = std::sqrt(tr * tr - 4.0 * m.det());
  cplx l1 = 0.5 * (tr + root), l2 = 0.5 * (tr - root);
  if (std::abs(l1) < std::abs(l2)) std::swap(l1, l2);
  return {eigen_point(m, l1), eigen_point(m, l2)};
}

// Sends p to 0 and q to infinity.
MobiusMap sending_to_zero_and_infinity(ProjectivePoint p, ProjectivePoint q) {
  if (p.infinite) return MobiusMap::from_coefficients(0.0, 1.0, 1.0, -q.value);
  if (q.infinite) return MobiusMap::from_coefficients(1.0, -p.value, 0.0, 1.0);
  return MobiusMap::from_coefficients(1.0, -p.value, 1.0, -q.value);
}

MobiusMap sending_to_infinity(ProjectivePoint p) {
  if (p.infinite) return MobiusMap::identity();
  return MobiusMap::from_coefficients(0.0, 1.0, 1.0, -p.value);
}

MobiusMap conjugate(const MobiusMap& c, const MobiusMap& f) {
  return compose(compose(c, f), c.inverse());
}

bool fixes(const MobiusMap& g, const ProjectivePoint& p, double tol) {
  return chordal_distance(g(p), p) <= tol;
}

}  // namespace

RepClass classify_commuting_pair(const MobiusMap& f, const MobiusMap& g, double tol) {
  if (commutator_defect(f, g) > tol)
    throw PreconditionError("maps do not commute in PGL(2,C): defect " +
                            std::to_string(commutator_defect(f, g)));

  Kind kf = kind_of(f, tol);
  Kind kg = kind_of(g, tol);
  if (kf == Kind::Identity && kg == Kind::Identity) return {RepTag::Trivial, 1.0, 1.0, {}};

  // Reference element: the first non-identity generator.
  const MobiusMap& ref = kf != Kind::Identity ? f : g;
  const MobiusMap& other = kf != Kind::Identity ? g : f;
  Kind kref = kf != Kind::Identity ? kf : kg;
  Kind kother = kf != Kind::Identity ? kg : kf;
  double fp_tol = std::sqrt(tol);

  if (kref == Kind::Parabolic) {
    if (kother == Kind::Semisimple)
      throw PreconditionError("parabolic and semisimple elements cannot commute");
    auto p = fixed_points(ref)[0];
    if (kother == Kind::Parabolic && !fixes(other, p, fp_tol))
      throw PreconditionError("parabolic generators with distinct fixed points");
    MobiusMap conj = sending_to_infinity(p);
    auto translation = [&](const MobiusMap& m) {
      MobiusMap t = conjugate(conj, m);
      return t.b / t.d;
    };
    return {RepTag::Euclidean, translation(f), translation(g), conj};
  }

  auto fp = fixed_points(ref);
  // Prefer infinity as the point sent to infinity so that maps already in
  // normal form z -> a z keep the identity conjugator.
  if (fp[0].infinite) std::swap(fp[0], fp[1]);

  if (kother == Kind::Parabolic)
    throw PreconditionError("semisimple and parabolic elements cannot commute");
  if (kother == Kind::Identity || (fixes(other, fp[0], fp_tol) && fixes(other, fp[1], fp_tol))) {
    MobiusMap conj = sending_to_zero_and_infinity(fp[0], fp[1]);
    auto multiplier = [&](const MobiusMap& m) {
      MobiusMap t = conjugate(conj, m);
      return t.a / t.d;
    };
    return {RepTag::Linear, multiplier(f), multiplier(g), conj};
  }

  // The other generator swaps the fixed points: only the Klein four-group
  // <-z, 1/z> survives, so both generators are involutions.
  bool swaps = chordal_distance(other(fp[0]), fp[1]) <= fp_tol &&
               chordal_distance(other(fp[1]), fp[0]) <= fp_tol;
  bool involutions = std::abs(ref.trace() * ref.trace() / ref.det()) <= fp_tol &&
                     std::abs(other.trace() * other.trace() / other.det()) <= fp_tol;
  if (!swaps || !involutions)
    throw PreconditionError("generators neither share nor swap their fixed points");

  MobiusMap conj = sending_to_zero_and_infinity(fp[0], fp[1]);
  MobiusMap h = conjugate(conj, other);  // z -> k / z
  cplx k = h.b / h.c;
  cplx s = std::sqrt(k);
  conj = compose(MobiusMap::from_coefficients(1.0, 0.0, 0.0, s), conj);
  // Generator order is preserved: the slot values record which of (f, g)
  // became -z (value -1) and which became 1/z (value 0 for "inversion").
  auto label = [&](const MobiusMap& m) {
    MobiusMap t = conjugate(conj, m);
    return std::abs(t.c) < std::abs(t.a) ? cplx{-1.0} : cplx{0.0};
  };
  return {RepTag::Dihedral, label(f), label(g), conj};
}

}  // namespace torusmono
