#include <algorithm>
#include <cmath>
#include <limits>

#include "torusmono/path.hpp"

namespace torusmono {

PathPiece PathPiece::line(cplx a, cplx b) {
  PathPiece p;
  p.kind = Kind::Line;
  p.from = a;
  p.to = b;
  return p;
}

PathPiece PathPiece::arc(cplx center, double radius, double theta0, double theta1) {
  PathPiece p;
  p.kind = Kind::Arc;
  p.center = center;
  p.radius = radius;
  p.theta0 = theta0;
  p.theta1 = theta1;
  return p;
}

cplx PathPiece::point(double t) const {
  if (kind == Kind::Line) return from + t * (to - from);
  return center + std::polar(radius, theta0 + t * (theta1 - theta0));
}

cplx PathPiece::derivative(double t) const {
  if (kind == Kind::Line) return to - from;
  double th = theta0 + t * (theta1 - theta0);
  return cplx{0.0, theta1 - theta0} * std::polar(radius, th);
}

double PathPiece::length() const {
  if (kind == Kind::Line) return std::abs(to - from);
  return radius * std::abs(theta1 - theta0);
}

namespace {

double distance_to_piece(const PathPiece& piece, cplx w) {
  if (piece.kind == PathPiece::Kind::Line) {
    cplx ab = piece.to - piece.from;
    double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(w - piece.from);
    double t = std::clamp(std::real((w - piece.from) * std::conj(ab)) / len2, 0.0, 1.0);
    return std::abs(w - piece.point(t));
  }
  double lo = std::min(piece.theta0, piece.theta1), hi = std::max(piece.theta0, piece.theta1);
  double ang = std::arg(w - piece.center);
  // Bring the angle into [lo, lo + 2 pi).
  ang = lo + std::fmod(std::fmod(ang - lo, 2 * pi) + 2 * pi, 2 * pi);
  if (ang <= hi) return std::abs(piece.radius - std::abs(w - piece.center));
  return std::min(std::abs(w - piece.start()), std::abs(w - piece.end()));
}

// Pole translates whose lattice coordinates fall in the box around
// [zmin, zmax] enlarged by `margin`.
std::vector<cplx> poles_near(const std::vector<cplx>& poles, cplx tau, bool periodic,
                             cplx zmin, cplx zmax, double margin) {
  std::vector<cplx> out;
  if (!periodic) {
    for (cplx p : poles)
      if (p.real() >= zmin.real() - margin && p.real() <= zmax.real() + margin &&
          p.imag() >= zmin.imag() - margin && p.imag() <= zmax.imag() + margin)
        out.push_back(p);
    return out;
  }
  double lo_t = (zmin.imag() - margin) / tau.imag(), hi_t = (zmax.imag() + margin) / tau.imag();
  for (cplx p : poles) {
    long n0 = static_cast<long>(std::floor(lo_t - p.imag() / tau.imag())) - 1;
    long n1 = static_cast<long>(std::ceil(hi_t - p.imag() / tau.imag())) + 1;
    for (long n = n0; n <= n1; ++n) {
      cplx base = p + static_cast<double>(n) * tau;
      long m0 = static_cast<long>(std::floor(zmin.real() - margin - base.real())) - 1;
      long m1 = static_cast<long>(std::ceil(zmax.real() + margin - base.real())) + 1;
      for (long m = m0; m <= m1; ++m) {
        cplx w = base + static_cast<double>(m);
        if (w.real() >= zmin.real() - margin && w.real() <= zmax.real() + margin &&
            w.imag() >= zmin.imag() - margin && w.imag() <= zmax.imag() + margin)
          out.push_back(w);
      }
    }
  }
  return out;
}

struct Detour {
  double lo, hi;                // interval along the segment
  std::vector<cplx> poles;      // poles it has to clear
};

void append_segment(std::vector<PathPiece>& pieces, cplx a, cplx b, const std::vector<cplx>& near,
                    double clearance, DetourSide side) {
  double len = std::abs(b - a);
  if (len == 0.0) return;
  cplx dir = (b - a) / len;
  std::vector<Detour> detours;
  for (cplx w : near) {
    cplx local = (w - a) * std::conj(dir);
    double along = local.real(), across = local.imag();
    if (std::abs(across) >= clearance) continue;
    if (along <= -clearance || along >= len + clearance) continue;
    double r = clearance + std::abs(across);
    detours.push_back({along - r, along + r, {w}});
  }
  std::sort(detours.begin(), detours.end(),
            [](const Detour& x, const Detour& y) { return x.lo < y.lo; });

  // Merge overlapping detours into one semicircle that still clears every
  // pole it encloses; growing a circle can swallow the next interval, so
  // iterate until stable.
  std::vector<Detour> merged;
  for (const Detour& d : detours) {
    if (!merged.empty() && d.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, d.hi);
      merged.back().poles.insert(merged.back().poles.end(), d.poles.begin(), d.poles.end());
    } else {
      merged.push_back(d);
    }
    for (bool grown = true; grown;) {
      grown = false;
      Detour& m = merged.back();
      double mid = 0.5 * (m.lo + m.hi), r = 0.5 * (m.hi - m.lo);
      cplx c = a + mid * dir;
      for (cplx w : m.poles) {
        double need = std::abs(w - c) + clearance;
        if (need > r + 1e-15) {
          r = need;
          grown = true;
        }
      }
      m.lo = mid - r;
      m.hi = mid + r;
      if (merged.size() >= 2 && merged[merged.size() - 2].hi >= m.lo) {
        Detour last = m;
        merged.pop_back();
        merged.back().hi = std::max(merged.back().hi, last.hi);
        merged.back().lo = std::min(merged.back().lo, last.lo);
        merged.back().poles.insert(merged.back().poles.end(), last.poles.begin(), last.poles.end());
        grown = true;
      }
    }
  }

  double heading = std::arg(dir);
  double cursor = 0.0;
  for (const Detour& d : merged) {
    if (d.lo < 0.0 || d.hi > len)
      throw GeometryError("pole too close to a path vertex to insert a detour of clearance " +
                          std::to_string(clearance));
    if (d.lo > cursor) pieces.push_back(PathPiece::line(a + cursor * dir, a + d.lo * dir));
    double mid = 0.5 * (d.lo + d.hi), r = 0.5 * (d.hi - d.lo);
    double end = side == DetourSide::CounterClockwise ? heading + 2 * pi : heading;
    pieces.push_back(PathPiece::arc(a + mid * dir, r, heading + pi, end));
    cursor = d.hi;
  }
  if (cursor < len) pieces.push_back(PathPiece::line(a + cursor * dir, b));
}

}  // namespace

double PathSpec::length() const {
  double s = 0.0;
  for (const auto& p : pieces) s += p.length();
  return s;
}

double PathSpec::min_distance_to_poles() const {
  double best = std::numeric_limits<double>::infinity();
  for (const PathPiece& piece : pieces) {
    cplx lo, hi;
    if (piece.kind == PathPiece::Kind::Line) {
      lo = {std::min(piece.from.real(), piece.to.real()), std::min(piece.from.imag(), piece.to.imag())};
      hi = {std::max(piece.from.real(), piece.to.real()), std::max(piece.from.imag(), piece.to.imag())};
    } else {
      lo = piece.center - cplx{piece.radius, piece.radius};
      hi = piece.center + cplx{piece.radius, piece.radius};
    }
    double margin = std::isfinite(best) ? best : 1.0;
    for (cplx w : poles_near(poles, tau, periodic_poles, lo, hi, margin))
      best = std::min(best, distance_to_piece(piece, w));
  }
  return best;
}

PathSpec make_polyline(const std::vector<cplx>& vertices, const std::vector<cplx>& poles,
                       cplx tau, bool periodic_poles, double clearance, DetourSide side) {
  if (vertices.size() < 2) throw GeometryError("a polyline needs at least two vertices");
  if (!(clearance > 0.0)) throw GeometryError("clearance must be positive");
  PathSpec path;
  path.vertices = vertices;
  path.poles = poles;
  path.tau = tau;
  path.periodic_poles = periodic_poles;
  path.clearance = clearance;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    cplx a = vertices[i], b = vertices[i + 1];
    cplx lo{std::min(a.real(), b.real()), std::min(a.imag(), b.imag())};
    cplx hi{std::max(a.real(), b.real()), std::max(a.imag(), b.imag())};
    auto near = poles_near(poles, tau, periodic_poles, lo, hi, 2.0 * clearance);
    append_segment(path.pieces, a, b, near, clearance, side);
  }
  double d = path.min_distance_to_poles();
  if (d < clearance * (1.0 - 1e-9))
    throw GeometryError("no admissible path: route passes within " + std::to_string(d) +
                        " of a pole (clearance " + std::to_string(clearance) + ")");
  return path;
}

PathSpec make_circle(cplx center, double radius) {
  PathSpec path;
  path.vertices = {center + radius};
  path.clearance = radius;
  path.pieces.push_back(PathPiece::arc(center, radius, 0.0, 2 * pi));
  return path;
}

std::pair<PathSpec, PathSpec> period_loops(cplx tau, const std::vector<cplx>& poles, cplx base,
                                           double clearance, DetourSide side) {
  auto near = poles_near(poles, tau, true, base, base, 2.0 * clearance);
  for (cplx w : near)
    if (std::abs(w - base) < 2.0 * clearance)
      throw GeometryError("base point " + to_string(base) + " is closer than 2 x clearance to pole " +
                          to_string(w));
  return {make_polyline({base, base + 1.0}, poles, tau, true, clearance, side),
          make_polyline({base, base + tau}, poles, tau, true, clearance, side)};
}

}  // namespace torusmono
