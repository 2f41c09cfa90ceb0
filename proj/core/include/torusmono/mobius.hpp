#pragma once

#include <array>

#include "torusmono/types.hpp"

namespace torusmono {

/// z -> (a z + b) / (c z + d), kept normalized so the largest entry has
/// modulus one. Two maps are the same element of PGL(2,C) iff their
/// normalized matrices agree up to a unimodular scalar.
struct MobiusMap {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static MobiusMap identity() { return {}; }
  /// Builds and normalizes; throws DegeneracyError if ad - bc vanishes.
  static MobiusMap from_coefficients(cplx a, cplx b, cplx c, cplx d);
  static MobiusMap affine(cplx multiplier, cplx translation);

  cplx det() const { return a * d - b * c; }
  cplx trace() const { return a + d; }
  MobiusMap normalized() const;
  MobiusMap inverse() const;
  ProjectivePoint operator()(const ProjectivePoint& z) const;
};

inline constexpr double kDetTolerance = 1e-14;
inline constexpr double kMobiusEqualityTolerance = 1e-10;

/// f o g.
MobiusMap compose(const MobiusMap& f, const MobiusMap& g);
ProjectivePoint apply(const MobiusMap& f, const ProjectivePoint& z);

/// Equality in PGL(2,C): every 2x2 minor of the pair of coefficient
/// vectors vanishes (after normalization) within tol.
bool same_projective(const MobiusMap& f, const MobiusMap& g,
                     double tol = kMobiusEqualityTolerance);

/// Scale-free commutator size: max minor between f o g and g o f.
double commutator_defect(const MobiusMap& f, const MobiusMap& g);

bool is_identity(const MobiusMap& f, double tol = kMobiusEqualityTolerance);

/// Generators (z -> a1 z + b1, z -> a_tau z + b_tau) attached to the
/// periods 1 and tau of the torus.
struct AffinePair {
  cplx a1{1.0}, b1{0.0};
  cplx a_tau{1.0}, b_tau{0.0};

  /// (a1 - 1) b_tau - (a_tau - 1) b1, the commutation constraint.
  cplx commutation_residual() const { return (a1 - 1.0) * b_tau - (a_tau - 1.0) * b1; }
  MobiusMap first() const { return MobiusMap::affine(a1, b1); }
  MobiusMap second() const { return MobiusMap::affine(a_tau, b_tau); }
};

/// Coordinates (a1, a_tau, [b1 : b_tau]) of a non-linear affine
/// representation modulo affine conjugacy.
struct B1Point {
  cplx a1{1.0}, a_tau{1.0};
  std::array<cplx, 2> bdir{cplx{1.0}, cplx{0.0}};

  cplx constraint_residual() const {
    return (a1 - 1.0) * bdir[1] - (a_tau - 1.0) * bdir[0];
  }
};

/// Rescales a homogeneous pair so the larger-modulus entry equals 1.
std::array<cplx, 2> normalize_direction(cplx first, cplx second);

/// Throws DegeneracyError (excluded linear representation) if both
/// translation parts are below tol.
B1Point b1_from_affine_pair(const AffinePair& p, double tol = 1e-14);

/// Distance used to compare B1 points: relative difference of the
/// multipliers and the cross-ratio defect of the normalized directions.
double b1_distance(const B1Point& p, const B1Point& q);

enum class RepTag { Trivial, Linear, Euclidean, Dihedral };

const char* to_string(RepTag tag);

/// Normal form of an abelian subgroup of PGL(2,C) generated by two maps.
///  Linear    : conjugator * f * conjugator^-1 = z -> first * z, same for g.
///  Euclidean : conjugated maps are z -> z + first, z -> z + second.
///  Dihedral  : conjugated maps are z -> -z and z -> 1/z; first/second
///              hold -1 for the generator sent to -z and 0 for the one
///              sent to 1/z.
/// Parabolic vs semisimple is decided by |tr^2/det - 4| <= tol; values in
/// (tol, sqrt(tol)) throw AmbiguityError. Fixed points are compared with
/// tolerance sqrt(tol).
struct RepClass {
  RepTag tag = RepTag::Trivial;
  cplx first{1.0}, second{1.0};
  MobiusMap conjugator;
};

RepClass classify_commuting_pair(const MobiusMap& f, const MobiusMap& g,
                                 double tol = 1e-10);

}  // namespace torusmono
