#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace torusmono {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx two_pi_i{0.0, 2.0 * std::numbers::pi};

/// A point of the Riemann sphere. Infinity is a dedicated marker and never
/// encoded as a large finite value.
struct ProjectivePoint {
  cplx value{};
  bool infinite = false;

  static ProjectivePoint finite(cplx z) { return {z, false}; }
  static ProjectivePoint infinity() { return {cplx{}, true}; }

  bool operator==(const ProjectivePoint&) const = default;
};

/// Chordal distance on the sphere, in [0, 1].
double chordal_distance(const ProjectivePoint& p, const ProjectivePoint& q);

// Error hierarchy. Every numeric or domain failure raised by the library
// derives from Error so the CLI can map it onto a single exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DegeneracyError : public Error {
 public:
  using Error::Error;
};

class AmbiguityError : public Error {
 public:
  using Error::Error;
};

class PrecisionError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

class ChartError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class CriticalPointError : public Error {
 public:
  using Error::Error;
};

/// Raised when an evaluation point falls inside the guard disk of a pole.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, cplx pole) : Error(what), pole_(pole) {}
  cplx pole() const noexcept { return pole_; }

 private:
  cplx pole_;
};

std::string to_string(cplx z);

}  // namespace torusmono
