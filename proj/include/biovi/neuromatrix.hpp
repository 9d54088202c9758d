#pragma once

// Three-grade pulse perceptron: activations, threshold firing, the
// delta learning rule, yield efficiency, the 3x3 product-ratio matrix,
// and Gaussian density/convolution.

#include <array>
#include <cmath>
#include <cstddef>
#include <istream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "biovi/detail/text.hpp"
#include "biovi/prekinematics.hpp"  // ShapeMismatch
#include "biovi/quantity.hpp"
#include "biovi/relativity.hpp"  // FormatError

namespace biovi {

class ZeroGradeOneSum : public Error {
 public:
  using Error::Error;
};
class ZeroClassSum : public Error {
 public:
  using Error::Error;
};

// Grade 1 = biovielectroluminescent, 2 = biovielectrical,
// 3 = chemical-electrical. Grade tags, never exponents.
enum class PulseClass : int { Grade1 = 1, Grade2 = 2, Grade3 = 3 };

struct ClassSums {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
};

struct ClassThresholds {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
};

enum class Activation { Sigmoid, Step };

// Step is right-continuous: step(0) = 1.
inline double activation(double x, Activation kind) {
  if (kind == Activation::Sigmoid) return 1.0 / (1.0 + std::exp(-x));
  return x < 0.0 ? 0.0 : 1.0;
}

struct FireTriple {
  bool g1 = false;
  bool g2 = false;
  bool g3 = false;
};

// Grade g fires iff s_g >= theta_g; each grade is independent.
inline FireTriple fire_check(const ClassSums& sums, const ClassThresholds& th) {
  return {sums.s1 >= th.theta1, sums.s2 >= th.theta2, sums.s3 >= th.theta3};
}

// w' = w + x (desired - actual); learning rate folded in by the caller.
inline double delta_update(double w, double x, int desired, int actual,
                           double learning_rate = 1.0) {
  return w + learning_rate * x * (desired - actual);
}

struct YieldEfficiency {
  double y2;  // percent
  double y3;  // percent
};

inline YieldEfficiency yield_efficiency(const ClassSums& sums) {
  if (sums.s1 == 0.0) throw ZeroGradeOneSum("grade-1 sum is zero");
  return {sums.s2 * 100.0 / sums.s1, sums.s3 * 100.0 / sums.s1};
}

using Matrix3 = std::array<std::array<double, 3>, 3>;

// With a = s3, b = s2, c = s1: [[b, a, ab/c], [c, ac/b, a], [bc/a, c, b]].
// Each raw entry is a pairwise product divided by a class sum.
inline Matrix3 product_ratio_matrix(const ClassSums& sums) {
  const double a = sums.s3, b = sums.s2, c = sums.s1;
  if (c == 0.0) throw ZeroClassSum("grade-1 sum is zero");
  if (b == 0.0) throw ZeroClassSum("grade-2 sum is zero");
  if (a == 0.0) throw ZeroClassSum("grade-3 sum is zero");
  return {{{b, a, a * b / c}, {c, a * c / b, a}, {b * c / a, c, b}}};
}

struct GaussianParams {
  GaussianParams(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
    if (!(sigma_ > 0.0)) throw Error("sigma must be strictly positive");
  }

  double mu;
  double sigma;
};

inline double gaussian_density(const GaussianParams& p, double x) {
  const double z = (x - p.mu) / p.sigma;
  return std::exp(-0.5 * z * z) / (std::sqrt(2.0 * std::numbers::pi) * p.sigma);
}

// Convolution of independent normals: means add, variances add.
inline GaussianParams gaussian_convolve(const GaussianParams& a, const GaussianParams& b) {
  return {a.mu + b.mu, std::sqrt(a.sigma * a.sigma + b.sigma * b.sigma)};
}

// A single threshold unit trained by the delta rule; the bias rides
// along as a fixed extra input of 1.
struct TruthRow {
  std::vector<double> inputs;
  int desired = 0;  // 0 or 1
};

struct ThresholdUnit {
  std::vector<double> weights;  // last weight is the bias
  double learning_rate = 1.0;

  int predict(const std::vector<double>& inputs) const {
    double s = weights.back();
    for (std::size_t i = 0; i < inputs.size(); ++i) s += weights[i] * inputs[i];
    return activation(s, Activation::Step) >= 1.0 ? 1 : 0;
  }
};

struct TrainResult {
  ThresholdUnit unit;
  std::size_t epochs = 0;
  bool converged = false;
};

inline TrainResult train_threshold_unit(const std::vector<TruthRow>& table,
                                        std::size_t max_epochs = 100,
                                        double learning_rate = 1.0) {
  if (table.empty()) throw Error("empty training table");
  const std::size_t n = table.front().inputs.size();
  for (const auto& row : table)
    if (row.inputs.size() != n) throw ShapeMismatch("ragged truth table");
  TrainResult out;
  out.unit.weights.assign(n + 1, 0.0);
  out.unit.learning_rate = learning_rate;
  for (std::size_t epoch = 1; epoch <= max_epochs; ++epoch) {
    std::size_t errors = 0;
    for (const auto& row : table) {
      int actual = out.unit.predict(row.inputs);
      if (actual != row.desired) {
        ++errors;
        for (std::size_t i = 0; i < n; ++i)
          out.unit.weights[i] =
              delta_update(out.unit.weights[i], row.inputs[i], row.desired, actual, learning_rate);
        out.unit.weights[n] =
            delta_update(out.unit.weights[n], 1.0, row.desired, actual, learning_rate);
      }
    }
    out.epochs = epoch;
    if (errors == 0) {
      out.converged = true;
      break;
    }
  }
  return out;
}

// CSV header: x1,x2,...,xn,desired
inline std::vector<TruthRow> load_truth_table_csv(std::istream& in) {
  std::vector<TruthRow> out;
  std::string line;
  std::size_t lineno = 0;
  std::size_t n_inputs = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = detail::trim(line);
    if (sv.empty()) continue;
    auto cells = detail::split(sv, ',');
    if (lineno == 1) {
      if (cells.size() < 2 || detail::trim(cells.back()) != "desired")
        throw FormatError("truth-table header must end with 'desired'", 1, cells.size());
      n_inputs = cells.size() - 1;
      continue;
    }
    if (cells.size() != n_inputs + 1)
      throw FormatError("expected " + std::to_string(n_inputs + 1) + " cells", lineno, 1);
    TruthRow row;
    try {
      for (std::size_t i = 0; i < n_inputs; ++i)
        row.inputs.push_back(detail::parse_double(detail::trim(cells[i])));
    } catch (const std::exception&) {
      throw FormatError("malformed numeric cell", lineno, 1);
    }
    std::string_view d = detail::trim(cells.back());
    if (d == "0") row.desired = 0;
    else if (d == "1") row.desired = 1;
    else throw FormatError("desired must be 0 or 1", lineno, n_inputs + 1);
    out.push_back(std::move(row));
  }
  if (out.empty()) throw FormatError("truth table has no data rows", lineno, 1);
  return out;
}

}  // namespace biovi
