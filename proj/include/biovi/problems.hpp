#pragma once

// Worked-problem solvers. Strict mode reproduces the printed
// intermediates (including the 3.77e-7 m^2 effective area and the
// truncated 5.3912e-44 s time step); recomputed mode derives every
// intermediate from first principles.

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "biovi/detail/text.hpp"
#include "biovi/photometry.hpp"
#include "biovi/prekinematics.hpp"
#include "biovi/quantity.hpp"
#include "biovi/relativity.hpp"

namespace biovi {

class UnknownProblem : public Error {
 public:
  using Error::Error;
};

enum class ProblemMode { StrictPaper, Recomputed };

inline const char* to_string(ProblemMode m) {
  return m == ProblemMode::StrictPaper ? "strict-paper" : "recomputed";
}

struct SampleProblemResult {
  std::string problem_id;
  // Insertion order matters for CSV output, so keep a vector of pairs.
  std::vector<std::pair<std::string, Quantity>> named_values;
  ProblemMode mode = ProblemMode::StrictPaper;

  const Quantity& at(const std::string& label) const {
    for (const auto& [k, v] : named_values)
      if (k == label) return v;
    throw Error("no value labelled '" + label + "' in problem " + problem_id);
  }
};

namespace detail {

// Shared inputs across the worked problems.
struct ProblemInputs {
  double v_rgb = 0.1;                      // m/s
  double x_pixel = 0.023e-2;               // 0.023 cm in m
  double x_displaced = 0.01;               // m
  double y_pixel = 0.4318e-3;              // 0.4318 mm in m
  double theta_deg = 95.0;                 // degrees
  double pixel_frame = 0.377e-3;           // 0.377 mm in m
  double cavity_d = 1.6264e-35;            // m
  double cavity_theta_deg = 10.0;          // degrees
  double t_P_paper = 5.3912e-44;           // the truncated printed step, s

  double delta_x() const { return x_pixel - x_displaced; }  // -9.77e-3 m
  double theta_rad() const { return theta_deg * std::numbers::pi / 180.0; }
  double cavity_theta_rad() const { return cavity_theta_deg * std::numbers::pi / 180.0; }
};

}  // namespace detail

// Effective pixel-frame area: strict mode keeps the printed 3.77e-7
// m^2; recomputed mode squares the actual hypotenuse.
inline double effective_chi_squared(ProblemMode mode) {
  if (mode == ProblemMode::StrictPaper) return 3.77e-7;
  detail::ProblemInputs in;
  const double half_d = in.cavity_d / 2.0;
  const double chi = std::sqrt(half_d * half_d + in.pixel_frame * in.pixel_frame);
  return chi * chi;
}

inline SampleProblemResult run_sample_problem(const std::string& id,
                                              ProblemMode mode = ProblemMode::StrictPaper) {
  detail::ProblemInputs in;
  const double c = constants::c;
  SampleProblemResult out;
  out.problem_id = id;
  out.mode = mode;
  auto put = [&](const std::string& label, double mag, const char* unit) {
    out.named_values.emplace_back(label, Quantity{mag, parse_dimension(unit)});
  };

  if (id == "2.1a") {
    Quantity xk = motion_stretch(in.v_rgb, in.delta_x(), in.y_pixel, in.theta_rad(), 1.0);
    out.named_values.emplace_back("x_k", xk);
    return out;
  }
  if (id == "2.1b") {
    const double hyp = in.delta_x() / std::cos(in.theta_rad());
    Quantity xk = motion_stretch(in.v_rgb, in.delta_x(), in.y_pixel, in.theta_rad(), 1.0);
    const double area = in.delta_x() * in.y_pixel * std::cos(in.theta_rad());
    put("hypotenuse", hyp, "m");
    put("total", hyp + xk.magnitude(), "m");
    put("area", area, "m^2");
    return out;
  }
  if (id == "2.2a") {
    PhaseVelocity pv = anticipated_phase_velocity(in.v_rgb);
    put("abs_vp", pv.abs_vp, "m s^-1");
    put("full_vp", pv.full_vp, "m s^-1");
    put("c_cons", pv.c_cons, "m s^-1");
    return out;
  }
  if (id == "2.2b") {
    PhaseVelocity pv = anticipated_phase_velocity(in.v_rgb);
    const double half_d = in.cavity_d / 2.0;
    const double t_step = (mode == ProblemMode::StrictPaper) ? in.t_P_paper : constants::t_P;
    // x_k = v_p |x| |y| sin(theta) / (c^2 t_P); v_p enters as |v_p|.
    const double xk =
        pv.abs_vp * half_d * half_d * std::sin(in.cavity_theta_rad()) / (c * c * t_step);
    put("x_k", xk, "m");
    put("nu_second_photon", c / xk, "Hz");
    return out;
  }
  if (id == "2.2c") {
    PhaseVelocity pv = anticipated_phase_velocity(in.v_rgb);
    const double t_step = (mode == ProblemMode::StrictPaper) ? in.t_P_paper : constants::t_P;
    // Cavity frequency: nu = c^3 t_P / (v_p d^2).
    const double nu_cavity = c * c * c * t_step / (pv.abs_vp * in.cavity_d * in.cavity_d);
    put("nu_cavity", nu_cavity, "Hz");
    put("E", constants::h * nu_cavity, "J");
    // Observed frequency after 1 s: nu = c^3 u(t) / (v_p chi^2).
    const double chi2 = effective_chi_squared(mode);
    const double nu_obs = c * c * c * 1.0 / (pv.abs_vp * chi2);
    put("nu_obs", nu_obs, "Hz");
    Quantity beta = energy_pixel_product(constants::h * nu_obs, in.v_rgb);
    out.named_values.emplace_back("beta", beta);
    PostKinematicFrequency post = post_kinematic_frequency(chi2, nu_obs);
    out.named_values.emplace_back("nu_post", post.nu_post);
    out.named_values.emplace_back("delta_K", *post.delta);
    return out;
  }
  throw UnknownProblem("unknown problem id '" + id + "'");
}

inline const std::vector<std::string>& known_problem_ids() {
  static const std::vector<std::string> ids{"2.1a", "2.1b", "2.2a", "2.2b", "2.2c"};
  return ids;
}

// Flat record CSV: problem_id,label,magnitude,unit,mode
inline void serialize_problem_csv(const SampleProblemResult& r, std::ostream& out,
                                  bool header = true) {
  if (header) out << "problem_id,label,magnitude,unit,mode\n";
  for (const auto& [label, q] : r.named_values)
    out << r.problem_id << ',' << label << ',' << detail::format_double(q.magnitude()) << ','
        << format(q.dim()) << ',' << to_string(r.mode) << '\n';
}

}  // namespace biovi
