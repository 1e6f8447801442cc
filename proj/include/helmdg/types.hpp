#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace helmdg {

using Complex = std::complex<double>;
using Index = std::int64_t;
using ComplexVector = std::vector<Complex>;

inline constexpr Complex I{0.0, 1.0};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr bool operator==(const Vec2&) const = default;
};

using Point2 = Vec2;

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
/// Counterclockwise rotation by 90 degrees.
constexpr Vec2 rotate_ccw(Vec2 a) { return {-a.y, a.x}; }

/// Complex 2-vector, e.g. the gradient of a complex field.
struct CVec2 {
  Complex x{};
  Complex y{};

  CVec2 operator+(const CVec2& o) const { return {x + o.x, y + o.y}; }
  CVec2 operator-(const CVec2& o) const { return {x - o.x, y - o.y}; }
  CVec2 operator*(Complex s) const { return {x * s, y * s}; }
};

inline Complex dot(const CVec2& a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm_sq(const CVec2& a) { return std::norm(a.x) + std::norm(a.y); }

/// Thrown for out-of-range construction parameters (mesh sizes, wave numbers, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MalformedMesh : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Selects the serial reference kernels or the OpenMP kernels. Both produce
/// bit-identical results; the serial path is the one tests treat as reference.
enum class Execution { serial, parallel };

}  // namespace helmdg
