#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "torusmono/types.hpp"

namespace torusmono {

/// A straight segment or a circular arc, parametrized by t in [0, 1].
struct PathPiece {
  enum class Kind { Line, Arc };

  Kind kind = Kind::Line;
  cplx from{}, to{};           // Line
  cplx center{};               // Arc
  double radius = 0.0;         // Arc
  double theta0 = 0.0, theta1 = 0.0;  // Arc, angle swept linearly in t

  static PathPiece line(cplx a, cplx b);
  static PathPiece arc(cplx center, double radius, double theta0, double theta1);

  cplx point(double t) const;
  cplx derivative(double t) const;  // dz/dt
  double length() const;
  cplx start() const { return point(0.0); }
  cplx end() const { return point(1.0); }
};

/// Side on which a detour passes a pole lying on the straight route.
/// CounterClockwise keeps the pole on the left of the detour (the arc
/// winds counterclockwise about it); Clockwise is the mirror image.
enum class DetourSide { CounterClockwise, Clockwise };

/// A pole-avoiding polyline: the requested vertices, the poles declared
/// (together with all their lattice translates when a lattice is given)
/// and the pieces actually traversed after semicircular detours.
struct PathSpec {
  std::vector<cplx> vertices;
  std::vector<cplx> poles;  // representatives; translated by the lattice
  cplx tau{0.0, 1.0};
  bool periodic_poles = false;
  double clearance = 0.0;
  std::vector<PathPiece> pieces;

  cplx start() const { return pieces.front().start(); }
  cplx end() const { return pieces.back().end(); }
  double length() const;
  /// Smallest distance from the traversed route to any declared pole.
  double min_distance_to_poles() const;
};

/// Polyline through `vertices` keeping distance >= clearance from every
/// pole (and its lattice translates when periodic_poles). Throws
/// GeometryError if detours cannot achieve the clearance.
PathSpec make_polyline(const std::vector<cplx>& vertices, const std::vector<cplx>& poles,
                       cplx tau, bool periodic_poles, double clearance,
                       DetourSide side = DetourSide::CounterClockwise);

/// Positively oriented circle, starting and ending at center + radius.
PathSpec make_circle(cplx center, double radius);

/// Generator loops base -> base + 1 and base -> base + tau avoiding all
/// lattice translates of `poles`. Throws GeometryError if the base point
/// is closer than 2 * clearance to a pole translate.
std::pair<PathSpec, PathSpec> period_loops(cplx tau, const std::vector<cplx>& poles, cplx base,
                                           double clearance,
                                           DetourSide side = DetourSide::CounterClockwise);

struct QuadratureOptions {
  double tolerance = 1e-12;  // absolute, distributed over the path length
  double max_panel = 0.25;   // initial panel length
  bool adaptive = true;
  int max_depth = 40;
};

struct QuadratureResult {
  cplx value{};
  double error = 0.0;  // sum of |Kronrod - Gauss| over accepted panels
  int panels = 0;
};

/// Integral of f(z) dz along the path by 7/15-point Gauss-Kronrod panels.
/// Throws IntegrationError when bisection underflows (unresolved
/// singularity on or near the route).
QuadratureResult integrate_along(const PathSpec& path, const std::function<cplx(cplx)>& f,
                                 const QuadratureOptions& opts = {});

}  // namespace torusmono
