#pragma once

// Lorentz factor/force/power, consumed proper time, the energy
// pixel-velocity product, spacetime intervals, observation-scope
// products, and body-comparison arithmetic.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "biovi/detail/text.hpp"
#include "biovi/prekinematics.hpp"  // ZeroArea
#include "biovi/quantity.hpp"

namespace biovi {

class SuperluminalInput : public Error {
 public:
  using Error::Error;
};
class NegativeRadicand : public Error {
 public:
  NegativeRadicand(const std::string& msg, std::size_t sample_index)
      : Error(msg + " (sample " + std::to_string(sample_index) + ")"), index_(sample_index) {}
  std::size_t sample_index() const { return index_; }

 private:
  std::size_t index_;
};
class EmptyPath : public Error {
 public:
  using Error::Error;
};
class WeightSumError : public Error {
 public:
  using Error::Error;
};
class EmptySamples : public Error {
 public:
  using Error::Error;
};
class ZeroInterval : public Error {
 public:
  using Error::Error;
};
class ZeroVolume : public Error {
 public:
  using Error::Error;
};
class ZeroBaseline : public Error {
 public:
  using Error::Error;
};
class FormatError : public Error {
 public:
  FormatError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
};

// gamma = 1/sqrt(1 - v^2/c^2), defined on [0, c).
inline double lorentz_factor(double v) {
  if (v < 0.0) throw Error("speed must be non-negative");
  const double beta = v / constants::c;
  if (beta >= 1.0) throw SuperluminalInput("lorentz_factor requires v < c");
  return 1.0 / std::sqrt(1.0 - beta * beta);
}

struct ForcePower {
  Vec3 force;    // N
  double power;  // W
};

// F = q(E + v x B); the delivered power q E.v never sees B.
inline ForcePower lorentz_force_power(double q, const Vec3& E, const Vec3& B, const Vec3& v) {
  return {(E + v.cross(B)) * q, q * E.dot(v)};
}

// One discretization node of the consumption path integral.
struct PathSample {
  double t_q = 0.0;     // s
  double x_q = 0.0;     // m
  double lambda = 0.0;  // m
  double t_hnu = 0.0;   // s
  double t_cons = 1.0;  // s
  double v_rgb = 0.0;   // m/s
  double weight = 1.0;  // dimensionless, >= 0
};

inline double proper_time_radicand(const PathSample& s) {
  const double c2 = constants::c * constants::c;
  return s.t_q * s.t_q - s.x_q * s.x_q / c2 -
         (s.lambda * s.lambda * s.t_hnu * s.t_hnu) / (c2 * s.t_cons * s.t_cons) -
         s.t_q * s.v_rgb * s.v_rgb / c2;
}

// tau = sum_i w_i sqrt(radicand_i); the weights must form a partition
// of unity (1e-12 tolerance).
inline double consumed_proper_time(const std::vector<PathSample>& path) {
  if (path.empty()) throw EmptyPath("path must contain at least one sample");
  double wsum = 0.0;
  for (const auto& s : path) wsum += s.weight;
  if (std::abs(wsum - 1.0) > 1e-12)
    throw WeightSumError("path weights sum to " + std::to_string(wsum) + ", expected 1");
  double tau = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    double rad = proper_time_radicand(path[i]);
    if (rad < 0.0) throw NegativeRadicand("negative radicand in proper-time sum", i);
    tau += path[i].weight * std::sqrt(rad);
  }
  return tau;
}

// E * v_rgb, landing on kg m^3 s^-3.
inline Quantity energy_pixel_product(double energy_joules, double v_rgb) {
  Quantity e{energy_joules, parse_dimension("J")};
  Quantity v{v_rgb, parse_dimension("m s^-1")};
  return e * v;
}

enum class IntervalConvention { Paper, Eta };

// Paper convention: s^2 = c^2 t^2 - r^2. Eta applies diag(-1,1,1,1) to
// (ct, x, y, z), the exact negation. The optional additive term admits
// the paper's arbitrary constant folded into r^2.
inline double spacetime_interval(double t, double r, IntervalConvention conv,
                                 double additive_constant = 0.0) {
  const double c = constants::c;
  double paper = c * c * t * t - (r * r + additive_constant);
  return conv == IntervalConvention::Paper ? paper : -paper;
}

struct ScopeSample {
  double s;   // m
  double dx;  // m
};

// (4 pi r^2 / 2) * sum s_i^2 dx_i, hemisphere factor times Riemann sum.
inline Quantity scope_area(double r, const std::vector<ScopeSample>& samples) {
  if (r <= 0.0) throw ZeroArea("radius must be positive");
  if (samples.empty()) throw EmptySamples("scope_area needs at least one sample");
  double sum = 0.0;
  for (const auto& s : samples) sum += s.s * s.s * s.dx;
  return {2.0 * std::numbers::pi * r * r * sum, Dimension::base(Dimension::kMeter, 5)};
}

// The paired quantity (V/s^2, V s^2); the right member exceeds the left
// by s^4 at the Dimension level.
struct ScopeProduct {
  Quantity left;
  Quantity right;
};

inline ScopeProduct scope_product(double volume, double s) {
  if (s == 0.0) throw ZeroInterval("scope interval s must be nonzero");
  Quantity V{volume, Dimension::base(Dimension::kMeter, 3)};
  Quantity S{s, Dimension::base(Dimension::kMeter)};
  Quantity s2 = S * S;
  return {V / s2, V * s2};
}

// Leibniz differential pair (2 pi r, 2 n pi s^{2n-1}).
struct ScopeDifferential {
  double d_r;
  double d_s;
};

inline ScopeDifferential scope_differential(double r, double s, int n) {
  if (n < 1) throw Error("differential order n must be >= 1");
  return {2.0 * std::numbers::pi * r,
          2.0 * n * std::numbers::pi * std::pow(s, 2 * n - 1)};
}

inline Quantity observation_density(double mass_kg, double volume_m3) {
  if (volume_m3 == 0.0) throw ZeroVolume("vicinity volume must be positive");
  return {mass_kg / volume_m3, parse_dimension("kg m^-3")};
}

struct RatioPercent {
  double ratio;       // small/mean(big) * 100
  double complement;  // 100 - ratio, exactly
};

// Ranges compare against the arithmetic midpoint.
inline RatioPercent body_ratio_percent(const Quantity& small_value, const Quantity& big_lo,
                                       const Quantity& big_hi) {
  if (small_value.dim() != big_lo.dim() || big_lo.dim() != big_hi.dim())
    throw DimensionMismatch("body comparison requires matching dimensions: [" +
                            format(small_value.dim()) + "] vs [" + format(big_lo.dim()) + "]");
  double mid = 0.5 * (big_lo.magnitude() + big_hi.magnitude());
  if (mid == 0.0) throw ZeroBaseline("comparison baseline is zero");
  double ratio = small_value.magnitude() / mid * 100.0;
  return {ratio, 100.0 - ratio};
}

inline RatioPercent body_ratio_percent(const Quantity& small_value, const Quantity& big_value) {
  return body_ratio_percent(small_value, big_value, big_value);
}

enum class BodyKind { Small, Giant };

struct Body {
  std::string label;
  BodyKind kind = BodyKind::Small;
  double mass_kg = 0.0;
  double size_m = 0.0;
  double lifespan_s = 0.0;
  double volume_m3 = 0.0;
  bool visually_utilized = false;
};

inline void validate(const Body& b) {
  if (!(b.mass_kg > 0.0 && b.size_m > 0.0 && b.lifespan_s > 0.0 && b.volume_m3 > 0.0))
    throw Error("body '" + b.label + "' requires strictly positive physical fields");
}

// The small partner must sit at least two orders of magnitude below the
// giant in size.
inline bool comparable_pair(const Body& small_body, const Body& giant_body) {
  validate(small_body);
  validate(giant_body);
  return small_body.size_m * 100.0 <= giant_body.size_m;
}

// Proper-time telescoping: tau = t_giant - sum(increments), the "cons"
// remainder reported as-is.
struct TelescopedTime {
  double tau;
  double consumed_remainder;
};

inline TelescopedTime telescoped_proper_time(double t_giant,
                                             const std::vector<double>& increments) {
  double sum = 0.0;
  for (double d : increments) sum += d;
  return {t_giant - sum, sum};
}

// Congruent bodies leave no proper-time gap (tolerance 1e-9 * t_giant).
inline bool congruent_bodies(double tau, double t_giant) {
  return std::abs(tau) <= 1e-9 * std::abs(t_giant);
}

// CSV header: label,kind,mass_kg,size_m,lifespan_s,volume_m3,visual
inline std::vector<Body> load_bodies_csv(std::istream& in) {
  std::vector<Body> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = detail::trim(line);
    if (sv.empty()) continue;
    if (lineno == 1) {
      if (sv != "label,kind,mass_kg,size_m,lifespan_s,volume_m3,visual")
        throw FormatError("unexpected body CSV header", 1, 1);
      continue;
    }
    auto cells = detail::split(sv, ',');
    if (cells.size() != 7)
      throw FormatError("expected 7 cells, got " + std::to_string(cells.size()), lineno, 1);
    Body b;
    b.label = std::string(detail::trim(cells[0]));
    std::string_view kind = detail::trim(cells[1]);
    if (kind == "small") b.kind = BodyKind::Small;
    else if (kind == "giant") b.kind = BodyKind::Giant;
    else throw FormatError("kind must be 'small' or 'giant'", lineno, 2);
    try {
      b.mass_kg = detail::parse_double(detail::trim(cells[2]));
      b.size_m = detail::parse_double(detail::trim(cells[3]));
      b.lifespan_s = detail::parse_double(detail::trim(cells[4]));
      b.volume_m3 = detail::parse_double(detail::trim(cells[5]));
    } catch (const std::exception&) {
      throw FormatError("malformed numeric cell", lineno, 3);
    }
    std::string_view vis = detail::trim(cells[6]);
    if (vis == "1") b.visually_utilized = true;
    else if (vis == "0") b.visually_utilized = false;
    else throw FormatError("visual flag must be 1 or 0", lineno, 7);
    validate(b);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace biovi
