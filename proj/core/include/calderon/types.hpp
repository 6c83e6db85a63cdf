#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace calderon {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr Complex kI{0.0, 1.0};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

/// Complex-valued 2-vector, used for gradients of complex fields.
struct CVec2 {
  Complex x;
  Complex y;
};

inline Complex dot(CVec2 g, Vec2 v) { return g.x * v.x + g.y * v.y; }

// Error hierarchy. Callers that map errors to exit codes distinguish
// numerical failures (singular systems, coincident nodes) from bad input.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class GeometryError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Unreadable input files, unwritable outputs.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace calderon
