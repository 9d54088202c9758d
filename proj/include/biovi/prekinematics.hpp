#pragma once

// Consumption calculus: consumed distance/time, bendable wavelengths,
// anticipated phase velocity, motion-stretch, and worldline grading.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "biovi/quantity.hpp"

namespace biovi {

class NegativeSpeed : public Error {
 public:
  using Error::Error;
};
class ZeroFrequency : public Error {
 public:
  using Error::Error;
};
class ZeroConsumedTime : public Error {
 public:
  using Error::Error;
};
class ZeroVelocity : public Error {
 public:
  using Error::Error;
};
class ZeroWavelength : public Error {
 public:
  using Error::Error;
};
class ZeroTime : public Error {
 public:
  using Error::Error;
};
class ZeroMetricCoefficient : public Error {
 public:
  using Error::Error;
};
class ZeroArea : public Error {
 public:
  using Error::Error;
};
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

enum class ConsumptionRegime { ConsumedZero, ConsumingPossible };

// Newtonian time, consumed time, and the small increment epsilon.
// The regime follows the sign of t_cons - t: once consumed time catches
// up with the clock, no distance is consumed.
struct ConsumptionState {
  ConsumptionState(double t_seconds, double t_cons_seconds, double eps)
      : t(t_seconds), t_cons(t_cons_seconds), epsilon(eps) {
    if (!(eps > 0.0 && eps < 1.0))
      throw Error("epsilon must lie strictly in (0, 1), got " + std::to_string(eps));
    regime = (t_cons >= t) ? ConsumptionRegime::ConsumedZero : ConsumptionRegime::ConsumingPossible;
  }

  double t;
  double t_cons;
  double epsilon;
  ConsumptionRegime regime;
};

// x_cons = v_rgb * t_cons, collapsing to exactly zero once t_cons >= t.
inline Quantity consumed_distance(double v_rgb, const ConsumptionState& state) {
  if (v_rgb < 0.0) throw NegativeSpeed("pixel velocity must be non-negative");
  const Dimension meters = Dimension::base(Dimension::kMeter);
  if (state.regime == ConsumptionRegime::ConsumedZero) return {0.0, meters};
  return {v_rgb * state.t_cons, meters};
}

// lambda_bend = v_w * t / (nu * t_cons); equals v_w / nu when t = t_cons.
inline Quantity bendable_wavelength(double v_w, double t, double nu, double t_cons) {
  if (nu == 0.0) throw ZeroFrequency("frequency must be positive");
  if (t_cons == 0.0) throw ZeroConsumedTime("consumed time must be positive");
  return {v_w * t / (nu * t_cons), Dimension::base(Dimension::kMeter)};
}

struct PhaseVelocity {
  double abs_vp;   // |v_p| = c^2 / v
  double full_vp;  // v_p = |v_p| + c
  double c_cons;   // c - v, the consumed fraction of c
};

inline PhaseVelocity anticipated_phase_velocity(double v) {
  if (v == 0.0) throw ZeroVelocity("speed must be positive");
  if (v < 0.0) throw NegativeSpeed("speed must be positive");
  const double c = constants::c;
  return {c * c / v, c * c / v + c, c - v};
}

inline Quantity wavenumber_modulus(double lambda) {
  if (lambda == 0.0) throw ZeroWavelength("wavelength must be positive");
  return {std::abs(1.0 / lambda), Dimension::base(Dimension::kMeter, -1)};
}

// x_k = v_k * x * y * cos(theta) / (c^2 * dt); theta in radians.
inline Quantity motion_stretch(double v_k, double x_mag, double y_mag, double theta_rad,
                               double dt) {
  if (dt == 0.0) throw ZeroTime("dt must be positive");
  const double c = constants::c;
  return {v_k * x_mag * y_mag * std::cos(theta_rad) / (c * c * dt),
          Dimension::base(Dimension::kMeter)};
}

enum class TimeMode { UnitTime, PlanckProduct };
enum class AngleKind { Cosine, Sine };

// x_K = x_cons * x * y * trig(theta) / (2 g D), D = c^2 * 1s or c^2 * t * t_P.
// The sine flag serves the cross-product-magnitude variant.
inline Quantity motion_stretch_general(double x_cons, double x_mag, double y_mag,
                                       double theta_rad, double g, TimeMode time_mode,
                                       double t = 0.0, AngleKind angle = AngleKind::Cosine) {
  if (g == 0.0) throw ZeroMetricCoefficient("metric coefficient g must be nonzero");
  const double c = constants::c;
  double denom_time;
  if (time_mode == TimeMode::UnitTime) {
    denom_time = 1.0;
  } else {
    if (t <= 0.0) throw ZeroTime("planck_product mode requires t > 0");
    denom_time = t * constants::t_P;
  }
  double trig = (angle == AngleKind::Cosine) ? std::cos(theta_rad) : std::sin(theta_rad);
  return {x_cons * x_mag * y_mag * trig / (2.0 * g * c * c * denom_time),
          Dimension::base(Dimension::kMeter)};
}

// Sum of interior angles of a geodesic triangle at constant curvature.
inline double geodesic_triangle_sum(double curvature, double area) {
  return std::numbers::pi + curvature * area;
}

enum class WorldlineKind { Timelike, Spacelike, Lightlike };

struct WorldlineClass {
  WorldlineKind kind;
  std::optional<double> ds_squared;
  std::optional<double> consumed_length;  // sqrt(|ds^2|), meters
};

// |v - c|/c < 1e-12 counts as lightlike.
inline constexpr double kLightlikeTolerance = 1e-12;

inline WorldlineClass worldline_classify(double v, std::optional<double> ds_sq_cons = {}) {
  if (v < 0.0) throw NegativeSpeed("speed must be non-negative");
  const double c = constants::c;
  WorldlineKind kind;
  if (std::abs(v - c) / c < kLightlikeTolerance) kind = WorldlineKind::Lightlike;
  else if (v < c) kind = WorldlineKind::Timelike;
  else kind = WorldlineKind::Spacelike;
  WorldlineClass out{kind, ds_sq_cons, {}};
  if (ds_sq_cons) out.consumed_length = std::sqrt(std::abs(*ds_sq_cons));
  return out;
}

// Generalized cross product in R^{n+1}: n row vectors with the basis row
// placed last, expanded by cofactors along that row.
struct CrossConstruction {
  std::vector<std::vector<double>> rows;  // the n input vectors, basis row implied last
  std::vector<double> wedge;              // length n+1
};

namespace detail {

inline double determinant(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (m[pivot][col] == 0.0) return 0.0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = m[r][col] / m[col][col];
      for (std::size_t c2 = col; c2 < n; ++c2) m[r][c2] -= f * m[col][c2];
    }
  }
  return det;
}

}  // namespace detail

inline CrossConstruction generalized_cross_matrix(const std::vector<std::vector<double>>& vectors) {
  const std::size_t n = vectors.size();
  if (n < 2) throw ShapeMismatch("need at least 2 vectors");
  for (const auto& v : vectors)
    if (v.size() != n + 1)
      throw ShapeMismatch("each of the " + std::to_string(n) + " vectors must have length " +
                          std::to_string(n + 1));
  CrossConstruction out{vectors, std::vector<double>(n + 1, 0.0)};
  // Basis row is row n+1 (last); the cofactor sign there is (-1)^{(n+1)+(i+1)}.
  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<std::vector<double>> minor(n, std::vector<double>(n));
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c2 = 0; c2 <= n; ++c2) {
        if (c2 == i) continue;
        minor[r][cc++] = vectors[r][c2];
      }
    }
    double sign = ((n + i) % 2 == 0) ? 1.0 : -1.0;
    out.wedge[i] = sign * detail::determinant(std::move(minor));
  }
  return out;
}

struct PostKinematicFrequency {
  Quantity nu_post;               // Hz
  std::optional<Quantity> delta;  // nu_post - nu_pre, Hz
};

// nu_post = c^2 * (1 s) / chi^2.
inline PostKinematicFrequency post_kinematic_frequency(double chi_squared,
                                                       std::optional<double> nu_pre = {}) {
  if (chi_squared == 0.0) throw ZeroArea("effective area must be positive");
  const double c = constants::c;
  const Dimension hz = Dimension::base(Dimension::kSecond, -1);
  Quantity nu_post{c * c / chi_squared, hz};
  PostKinematicFrequency out{nu_post, {}};
  if (nu_pre) out.delta = Quantity{nu_post.magnitude() - *nu_pre, hz};
  return out;
}

}  // namespace biovi
