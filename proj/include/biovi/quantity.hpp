#pragma once

// Dimensional-analysis core: checked arithmetic on dimensioned magnitudes,
// a unit-expression parser/formatter, and physical constants.

#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "biovi/detail/text.hpp"

namespace biovi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};
class DivisionByZero : public Error {
 public:
  using Error::Error;
};
class ExponentOverflow : public Error {
 public:
  using Error::Error;
};
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};
class UnknownUnit : public Error {
 public:
  using Error::Error;
};
class UnknownConstant : public Error {
 public:
  using Error::Error;
};

// Dimension mismatches are hard errors in Checked mode; PaperFaithful
// downgrades them to warnings so the paper's own unit-bending arithmetic
// can be reproduced.
enum class Mode { Checked, PaperFaithful };

inline Mode default_mode() {
  if (const char* env = std::getenv("BIOVI_MODE")) {
    std::string_view v(env);
    if (v == "paper-faithful") return Mode::PaperFaithful;
    if (v == "checked") return Mode::Checked;
  }
  return Mode::Checked;
}

// Integer exponents over the SI base dimensions plus steradian.
class Dimension {
 public:
  static constexpr int kMeter = 0;
  static constexpr int kKilogram = 1;
  static constexpr int kSecond = 2;
  static constexpr int kAmpere = 3;
  static constexpr int kKelvin = 4;
  static constexpr int kMole = 5;
  static constexpr int kCandela = 6;
  static constexpr int kSteradian = 7;

  static constexpr int kMinExp = -12;
  static constexpr int kMaxExp = 12;

  constexpr Dimension() = default;
  constexpr explicit Dimension(std::array<int, 8> exps) : e_(exps) {}

  static constexpr Dimension dimensionless() { return Dimension{}; }
  static constexpr Dimension base(int index, int power = 1) {
    Dimension d;
    d.e_[static_cast<std::size_t>(index)] = power;
    return d;
  }

  constexpr int exponent(int index) const { return e_[static_cast<std::size_t>(index)]; }
  constexpr const std::array<int, 8>& exponents() const { return e_; }

  constexpr bool is_dimensionless() const {
    for (int x : e_)
      if (x != 0) return false;
    return true;
  }

  Dimension operator*(const Dimension& o) const {
    Dimension r;
    for (std::size_t i = 0; i < 8; ++i) r.e_[i] = checked(e_[i] + o.e_[i]);
    return r;
  }
  Dimension operator/(const Dimension& o) const {
    Dimension r;
    for (std::size_t i = 0; i < 8; ++i) r.e_[i] = checked(e_[i] - o.e_[i]);
    return r;
  }
  Dimension pow(int k) const {
    Dimension r;
    for (std::size_t i = 0; i < 8; ++i) r.e_[i] = checked(e_[i] * k);
    return r;
  }

  // Steradian is a tracked pseudo-dimension; dropping it must be asked for.
  Dimension erase_steradian() const {
    Dimension r = *this;
    r.e_[kSteradian] = 0;
    return r;
  }

  bool operator==(const Dimension& o) const = default;

 private:
  static int checked(int v) {
    if (v < kMinExp || v > kMaxExp)
      throw ExponentOverflow("dimension exponent " + std::to_string(v) + " outside [-12, 12]");
    return v;
  }

  std::array<int, 8> e_{};
};

// Canonical base form, e.g. "kg m^3 s^-3". Dimensionless formats as "1".
inline std::string format(const Dimension& d) {
  static constexpr std::array<std::pair<int, const char*>, 8> order{{
      {Dimension::kKilogram, "kg"},
      {Dimension::kMeter, "m"},
      {Dimension::kSecond, "s"},
      {Dimension::kAmpere, "A"},
      {Dimension::kKelvin, "K"},
      {Dimension::kMole, "mol"},
      {Dimension::kCandela, "cd"},
      {Dimension::kSteradian, "sr"},
  }};
  std::string out;
  for (auto [idx, sym] : order) {
    int e = d.exponent(idx);
    if (e == 0) continue;
    if (!out.empty()) out += ' ';
    out += sym;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

// A unit symbol resolves to a dimension plus a magnitude scale (prefixes,
// gram, and derived units are folded into the scale/dimension pair).
struct UnitFactor {
  Dimension dim;
  double scale = 1.0;
};

namespace detail {

inline bool lookup_symbol(std::string_view sym, UnitFactor& out) {
  using D = Dimension;
  auto b = [](int i, int p = 1) { return D::base(i, p); };
  if (sym == "m") out = {b(D::kMeter), 1.0};
  else if (sym == "kg") out = {b(D::kKilogram), 1.0};
  else if (sym == "g") out = {b(D::kKilogram), 1e-3};
  else if (sym == "s") out = {b(D::kSecond), 1.0};
  else if (sym == "A") out = {b(D::kAmpere), 1.0};
  else if (sym == "K") out = {b(D::kKelvin), 1.0};
  else if (sym == "mol") out = {b(D::kMole), 1.0};
  else if (sym == "cd") out = {b(D::kCandela), 1.0};
  else if (sym == "sr") out = {b(D::kSteradian), 1.0};
  else if (sym == "N") out = {b(D::kKilogram) * b(D::kMeter) * b(D::kSecond, -2), 1.0};
  else if (sym == "J") out = {b(D::kKilogram) * b(D::kMeter, 2) * b(D::kSecond, -2), 1.0};
  else if (sym == "W") out = {b(D::kKilogram) * b(D::kMeter, 2) * b(D::kSecond, -3), 1.0};
  else if (sym == "V")
    out = {b(D::kKilogram) * b(D::kMeter, 2) * b(D::kSecond, -3) * b(D::kAmpere, -1), 1.0};
  else if (sym == "C") out = {b(D::kAmpere) * b(D::kSecond), 1.0};
  else if (sym == "T") out = {b(D::kKilogram) * b(D::kSecond, -2) * b(D::kAmpere, -1), 1.0};
  else if (sym == "Hz") out = {b(D::kSecond, -1), 1.0};
  else if (sym == "lm") out = {b(D::kCandela) * b(D::kSteradian), 1.0};
  else return false;
  return true;
}

inline bool lookup_prefix(char c, double& scale) {
  switch (c) {
    case 'm': scale = 1e-3; return true;
    case 'c': scale = 1e-2; return true;
    case 'k': scale = 1e3; return true;
    case 'M': scale = 1e6; return true;
    case 'G': scale = 1e9; return true;
    default: return false;
  }
}

// Prefixes are only admitted on m, g, s and Hz.
inline bool prefixable(std::string_view base) {
  return base == "m" || base == "g" || base == "s" || base == "Hz";
}

inline UnitFactor resolve_symbol(std::string_view sym, std::size_t offset) {
  UnitFactor f;
  if (lookup_symbol(sym, f)) return f;
  double prefix_scale;
  if (sym.size() >= 2 && lookup_prefix(sym.front(), prefix_scale)) {
    std::string_view rest = sym.substr(1);
    if (prefixable(rest) && lookup_symbol(rest, f)) {
      f.scale *= prefix_scale;
      return f;
    }
  }
  throw UnknownUnit("unknown unit symbol '" + std::string(sym) + "' at byte " +
                    std::to_string(offset));
}

inline int parse_exponent(std::string_view text, std::size_t offset) {
  int v{};
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size())
    throw ParseError("malformed exponent '" + std::string(text) + "'", offset);
  return v;
}

}  // namespace detail

// Grammar: unit-expr := term (WS term)*, term := symbol ("^" signed-int)?
// Whitespace-separated product only; negative exponents via ^-n.
inline UnitFactor parse_unit(std::string_view text) {
  UnitFactor result;
  std::size_t pos = 0;
  bool saw_term = false;
  while (pos < text.size()) {
    if (text[pos] == ' ') {
      ++pos;
      continue;
    }
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view term = text.substr(pos, end - pos);
    std::string_view sym = term;
    int exp = 1;
    if (auto caret = term.find('^'); caret != std::string_view::npos) {
      sym = term.substr(0, caret);
      if (caret + 1 >= term.size()) throw ParseError("missing exponent after '^'", pos + caret);
      exp = detail::parse_exponent(term.substr(caret + 1), pos + caret + 1);
    }
    if (sym.empty()) throw ParseError("empty unit term", pos);
    UnitFactor f = detail::resolve_symbol(sym, pos);
    result.dim = result.dim * f.dim.pow(exp);
    result.scale *= std::pow(f.scale, exp);
    saw_term = true;
    pos = end;
  }
  if (!saw_term) throw ParseError("empty unit expression", 0);
  return result;
}

inline Dimension parse_dimension(std::string_view text) { return parse_unit(text).dim; }

// A real magnitude paired with a Dimension. Non-finite magnitudes are
// rejected at construction.
class Quantity {
 public:
  Quantity() = default;
  Quantity(double magnitude, Dimension dim) : mag_(magnitude), dim_(dim) {
    if (!std::isfinite(magnitude))
      throw Error("quantity magnitude must be finite, got " + std::to_string(magnitude));
  }

  static Quantity dimensionless(double v) { return {v, Dimension::dimensionless()}; }

  double magnitude() const { return mag_; }
  const Dimension& dim() const { return dim_; }

  Quantity operator*(const Quantity& o) const { return {mag_ * o.mag_, dim_ * o.dim_}; }
  Quantity operator*(double s) const { return {mag_ * s, dim_}; }
  Quantity operator/(const Quantity& o) const {
    if (o.mag_ == 0.0) throw DivisionByZero("division by zero quantity");
    return {mag_ / o.mag_, dim_ / o.dim_};
  }
  Quantity pow(int k) const { return {std::pow(mag_, k), dim_.pow(k)}; }

  // Only defined when every exponent is even; no rational dimensions.
  Quantity sqrt() const {
    for (int e : dim_.exponents())
      if (e % 2 != 0) throw DimensionMismatch("sqrt of quantity with odd exponent in " + format(dim_));
    Dimension half;
    std::array<int, 8> exps{};
    for (std::size_t i = 0; i < 8; ++i) exps[i] = dim_.exponents()[i] / 2;
    return {std::sqrt(mag_), Dimension(exps)};
  }

  Quantity erase_steradian() const { return {mag_, dim_.erase_steradian()}; }

 private:
  double mag_ = 0.0;
  Dimension dim_{};
};

inline Quantity add(const Quantity& a, const Quantity& b, Mode mode = Mode::Checked,
                    std::vector<std::string>* warnings = nullptr) {
  if (a.dim() != b.dim()) {
    std::string msg = "dimension mismatch: [" + format(a.dim()) + "] vs [" + format(b.dim()) + "]";
    if (mode == Mode::Checked) throw DimensionMismatch(msg);
    if (warnings) warnings->push_back(msg);
  }
  return {a.magnitude() + b.magnitude(), a.dim()};
}

inline Quantity sub(const Quantity& a, const Quantity& b, Mode mode = Mode::Checked,
                    std::vector<std::string>* warnings = nullptr) {
  return add(a, {-b.magnitude(), b.dim()}, mode, warnings);
}

enum class CombineOp { Multiply, Divide, Power };

inline Quantity combine(const Quantity& a, const Quantity& b, CombineOp op, int power_k = 1) {
  switch (op) {
    case CombineOp::Multiply: return a * b;
    case CombineOp::Divide: return a / b;
    case CombineOp::Power: return a.pow(power_k);
  }
  throw Error("unreachable combine op");
}

// Quantity literal like "0.023 cm" or "6.626068e-34 J s"; prefix scales
// fold into the magnitude.
inline Quantity parse_quantity(std::string_view text) {
  std::string_view t = detail::trim(text);
  std::size_t split = t.find(' ');
  if (split == std::string_view::npos)
    return Quantity::dimensionless(biovi::detail::parse_double(t));
  double mag = biovi::detail::parse_double(t.substr(0, split));
  UnitFactor f = parse_unit(t.substr(split + 1));
  return {mag * f.scale, f.dim};
}

namespace constants {

inline const Quantity& speed_of_light() {
  static const Quantity q{299'792'458.0, parse_dimension("m s^-1")};
  return q;
}
inline const Quantity& planck() {
  static const Quantity q{6.626068e-34, parse_dimension("J s")};
  return q;
}
inline const Quantity& dirac() {
  static const Quantity q{6.626068e-34 / (2.0 * std::numbers::pi), parse_dimension("J s")};
  return q;
}
inline const Quantity& planck_time() {
  static const Quantity q{5.39121e-44, parse_dimension("s")};
  return q;
}
inline const Quantity& planck_length() {
  static const Quantity q{1.61624e-35, parse_dimension("m")};
  return q;
}
inline const Quantity& gravitational() {
  static const Quantity q{6.67430e-11, parse_dimension("m^3 kg^-1 s^-2")};
  return q;
}

inline constexpr double c = 299'792'458.0;
inline constexpr double h = 6.626068e-34;
inline constexpr double t_P = 5.39121e-44;
inline constexpr double l_P = 1.61624e-35;

}  // namespace constants

inline Quantity constant(std::string_view name) {
  if (name == "c") return constants::speed_of_light();
  if (name == "h") return constants::planck();
  if (name == "hbar") return constants::dirac();
  if (name == "t_P") return constants::planck_time();
  if (name == "l_P") return constants::planck_length();
  if (name == "G") return constants::gravitational();
  throw UnknownConstant("unknown constant '" + std::string(name) + "'");
}

}  // namespace biovi
