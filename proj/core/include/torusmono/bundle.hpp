#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torusmono/mobius.hpp"
#include "torusmono/riemann_hilbert.hpp"

namespace torusmono {

/// Ruled surface over a curve of genus g with invariant
/// e = -min(sigma . sigma) over holomorphic sections.
struct SurfaceContext {
  int g = 0;
  int e = 0;
};

/// Nagata: -g <= e <= 2g - 2 for undecomposable bundles.
bool within_nagata_bound(const SurfaceContext& ctx);

/// m sigma0 + n f.
struct HomologyClass {
  long m = 0;
  long n = 0;
};

/// m1 n2 + m2 n1 - e m1 m2, from sigma0^2 = -e, f^2 = 0, sigma0 . f = 1.
long intersect(const SurfaceContext& ctx, HomologyClass h1, HomologyClass h2);

/// Class (2 - 2g - d) f of the tangent bundle of a Riccati foliation with
/// d invariant fibres. Throws PreconditionError for g < 0 or d < 0.
HomologyClass tangent_bundle_class(int g, int d);

/// Tangencies between the foliation and the section sigma0 + n f:
/// sigma^2 - T . sigma = 2n - e - 2 + 2g + d (genus taken from ctx).
long tangency_count(const SurfaceContext& ctx, int d, long section_n);

struct RigiditySolution {
  bool torus_case = false;  // g = 1: no constraint system, the torus is handled analytically
  int e = 0;
  long n = 0;
  int solutions = 0;  // number of admissible (e, n) found by the search
  bool unique() const { return solutions == 1; }
};

/// Solves Tang(sigma) = 0 together with Tang(sigma0) = 2g - 2 - e >= 0 over
/// sections with n >= 0 and e in the Nagata range. g = 1 returns the torus
/// marker; g < 1 throws PreconditionError.
RigiditySolution poincare_rigidity(int g);

/// Self-intersection of a section after one elementary transformation.
long elm_section_effect(bool passes_through_center, long self_int);

enum class SectionKind { Zero, Infinity };

/// Formal integer combination of points of the curve C / (Z + tau Z).
/// Points are compared exactly, so callers pass canonical representatives.
class DivisorOnCurve {
 public:
  DivisorOnCurve() = default;
  static DivisorOnCurve point(cplx x, long mult = 1);

  DivisorOnCurve& add(cplx x, long mult);
  DivisorOnCurve operator+(const DivisorOnCurve& other) const;
  DivisorOnCurve operator-(const DivisorOnCurve& other) const;
  bool operator==(const DivisorOnCurve& other) const;

  long degree() const;
  /// Sum of mult * x in C (the Abel-Jacobi image before reduction).
  cplx abel_jacobi_sum() const;
  const std::vector<std::pair<cplx, long>>& terms() const { return terms_; }
  std::string to_string() const;

 private:
  std::vector<std::pair<cplx, long>> terms_;  // sorted, nonzero multiplicities
};

/// elm on the bundle of O(D) centred on the zero (resp. infinity) section
/// over x: D - [x] (resp. D + [x]).
DivisorOnCurve elm_on_line_bundle(const DivisorOnCurve& d, cplx x, SectionKind section);

struct RuledBundleClass {
  enum class Tag { Trivial, LineBundleBar, P0, Pminus1, DecomposableDeg };

  Tag tag = Tag::Trivial;
  cplx point{};  // LineBundleBar: canonical representative of {u0, -u0}
  long degree = 0;  // DecomposableDeg

  static RuledBundleClass trivial() { return {}; }
  static RuledBundleClass line_bundle_bar(cplx u0, cplx tau);
  static RuledBundleClass p0() { return {Tag::P0, {}, 0}; }
  static RuledBundleClass pminus1() { return {Tag::Pminus1, {}, 0}; }
  static RuledBundleClass decomposable(long d) { return {Tag::DecomposableDeg, {}, d}; }

  int e() const;
  bool same_as(const RuledBundleClass& other, double tol = 1e-9) const;
  std::string to_string() const;
};

const char* to_string(RuledBundleClass::Tag tag);

/// Representative of {u, -u} mod the lattice: both are reduced to the
/// parallelogram s, t in [-1/2, 1/2) and the larger (t, s) is kept.
cplx canonical_pm(cplx u, cplx tau);

/// Bundle of O(D) over C / (Z + tau Z): trivial, a degree-zero line bundle
/// identified up to inverse, or decomposable of nonzero degree.
RuledBundleClass class_of_divisor(const DivisorOnCurve& d, cplx tau, double tol = 1e-10);

/// Position of the second elementary transformation on the bundle of
/// O(-[0]): the special point, a generic point over u0, a point on the
/// fibre over 0, or a point of the infinity section over u0.
enum class QLocation { SpecialPoint, GenericOffFiber, SameFiberGeneric, OnSigmaInfinity };

const char* to_string(QLocation loc);

/// Bookkeeping of the two-step construction starting from the trivial
/// bundle. u0 (nonzero mod the lattice) is used by the off-fibre cases.
RuledBundleClass case_analysis_second_elm(QLocation loc, cplx u0, cplx tau);

struct SuspensionClassification {
  RuledBundleClass bundle;
  // Linear case: w = (tau log a1 - log a_tau) / (2 pi i) and its nearest
  // point in the bounded lattice search.
  std::optional<cplx> lattice_offset;
  std::optional<cplx> nearest_lattice_point;
  double distance = 0.0;
  std::optional<A0Point> connection;  // recovered by rh_inverse when a context is given
};

/// Ruled surface of the suspension of a commuting pair in normal form.
///  Linear    : trivial iff the multipliers are (e^c, e^{c tau}); otherwise
///              the flat line bundle class of u0 = -w.
///  Euclidean : trivial iff (b1, b_tau) is proportional to (1, tau); else P0.
///  Dihedral  : P_{-1}.
/// The lattice test searches |k|, |l| <= 50; a distance in (tol, 10 tol]
/// throws AmbiguityError naming both candidates.
SuspensionClassification classify_suspension(const RepClass& rep, cplx tau, double tol = 1e-9,
                                             const WeierstrassContext* ctx = nullptr);

}  // namespace torusmono
