#pragma once

// Append-only pulse ledger and its derived summary: per-grade sums with
// compensated accumulation, threshold verdicts, per-record kappa
// triples, yield percentages, and per-grade Gaussian fits.

#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "biovi/detail/text.hpp"
#include "biovi/neuromatrix.hpp"
#include "biovi/quantity.hpp"

namespace biovi {

class NonMonotonicDir : public Error {
 public:
  using Error::Error;
};
class EmptyLedger : public Error {
 public:
  using Error::Error;
};

// One row of the pulse database: a data index, the three weighted
// inputs (grade order 3, 2, 1 as in the table layout), and the three
// boolean outputs.
struct PulseRecord {
  std::uint64_t dir = 0;
  double in3 = 0.0;
  double in2 = 0.0;
  double in1 = 0.0;
  bool out3 = false;
  bool out2 = false;
  bool out1 = false;

  bool operator==(const PulseRecord&) const = default;
};

class Ledger {
 public:
  void append(const PulseRecord& record) {
    if (!records_.empty() && record.dir <= records_.back().dir)
      throw NonMonotonicDir("dir " + std::to_string(record.dir) + " does not exceed last dir " +
                            std::to_string(records_.back().dir));
    records_.push_back(record);
  }

  const std::vector<PulseRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  bool operator==(const Ledger&) const = default;

 private:
  std::vector<PulseRecord> records_;
};

namespace detail {

// Kahan compensated accumulator; keeps the fold-additivity property
// inside 1e-12 even for long, badly scaled streams.
class KahanSum {
 public:
  void add(double v) {
    double y = v - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace detail

// kappa triple of one record: pairwise products over the opposite
// input, mirroring the product-ratio construction at record scale.
struct KappaTriple {
  std::uint64_t dir;
  double k1;  // in3 * in2 / in1
  double k2;  // in3 * in1 / in2
  double k3;  // in2 * in1 / in3
};

inline KappaTriple kappa_of(const PulseRecord& r) {
  if (r.in1 == 0.0) throw ZeroClassSum("grade-1 input is zero at dir " + std::to_string(r.dir));
  if (r.in2 == 0.0) throw ZeroClassSum("grade-2 input is zero at dir " + std::to_string(r.dir));
  if (r.in3 == 0.0) throw ZeroClassSum("grade-3 input is zero at dir " + std::to_string(r.dir));
  return {r.dir, r.in3 * r.in2 / r.in1, r.in3 * r.in1 / r.in2, r.in2 * r.in1 / r.in3};
}

struct GaussianFit {
  double mu;
  std::optional<double> sigma;  // absent below two samples
};

struct LedgerSummary {
  std::size_t count = 0;
  ClassSums sums;           // per-grade compensated sums
  FireTriple verdicts;      // sum_g >= theta_g
  double mean_dir = 0.0;
  std::vector<KappaTriple> kappas;
  ClassSums kappa_sums;     // per-grade kappa column sums
  ClassSums kappa_means;
  YieldEfficiency yields{0.0, 0.0};
  GaussianFit fit1{0.0, {}};
  GaussianFit fit2{0.0, {}};
  GaussianFit fit3{0.0, {}};
};

namespace detail {

inline GaussianFit fit_gaussian(const std::vector<double>& xs) {
  KahanSum s;
  for (double x : xs) s.add(x);
  const double n = static_cast<double>(xs.size());
  GaussianFit fit{s.value() / n, {}};
  if (xs.size() >= 2) {
    KahanSum sq;
    for (double x : xs) sq.add((x - fit.mu) * (x - fit.mu));
    fit.sigma = std::sqrt(sq.value() / (n - 1.0));  // unbiased sample variance
  }
  return fit;
}

}  // namespace detail

inline LedgerSummary summarize(const Ledger& ledger, const ClassThresholds& thresholds) {
  if (ledger.empty()) throw EmptyLedger("cannot summarize an empty ledger");
  LedgerSummary out;
  out.count = ledger.size();
  detail::KahanSum s1, s2, s3, dirsum, k1, k2, k3;
  std::vector<double> x1, x2, x3;
  for (const auto& r : ledger.records()) {
    s1.add(r.in1);
    s2.add(r.in2);
    s3.add(r.in3);
    dirsum.add(static_cast<double>(r.dir));
    x1.push_back(r.in1);
    x2.push_back(r.in2);
    x3.push_back(r.in3);
    KappaTriple k = kappa_of(r);
    out.kappas.push_back(k);
    k1.add(k.k1);
    k2.add(k.k2);
    k3.add(k.k3);
  }
  out.sums = {s1.value(), s2.value(), s3.value()};
  out.verdicts = fire_check(out.sums, thresholds);
  out.mean_dir = dirsum.value() / static_cast<double>(out.count);
  out.kappa_sums = {k1.value(), k2.value(), k3.value()};
  const double n = static_cast<double>(out.count);
  out.kappa_means = {out.kappa_sums.s1 / n, out.kappa_sums.s2 / n, out.kappa_sums.s3 / n};
  out.yields = yield_efficiency(out.sums);
  out.fit1 = detail::fit_gaussian(x1);
  out.fit2 = detail::fit_gaussian(x2);
  out.fit3 = detail::fit_gaussian(x3);
  return out;
}

inline constexpr const char* kLedgerHeader = "dir,in3,in2,in1,out3,out2,out1";

inline void serialize_csv(const Ledger& ledger, std::ostream& out) {
  out << kLedgerHeader << '\n';
  for (const auto& r : ledger.records()) {
    out << r.dir << ',' << detail::format_double(r.in3) << ',' << detail::format_double(r.in2)
        << ',' << detail::format_double(r.in1) << ',' << (r.out3 ? '1' : '0') << ','
        << (r.out2 ? '1' : '0') << ',' << (r.out1 ? '1' : '0') << '\n';
  }
}

inline std::string serialize_csv(const Ledger& ledger) {
  std::ostringstream os;
  serialize_csv(ledger, os);
  return os.str();
}

inline Ledger load_ledger_csv(std::istream& in) {
  Ledger ledger;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = detail::trim(line);
    if (sv.empty()) continue;
    if (lineno == 1) {
      if (sv != kLedgerHeader) throw FormatError("unexpected ledger header", 1, 1);
      continue;
    }
    auto cells = detail::split(sv, ',');
    if (cells.size() != 7)
      throw FormatError("expected 7 cells, got " + std::to_string(cells.size()), lineno, 1);
    PulseRecord r;
    try {
      r.dir = static_cast<std::uint64_t>(std::stoull(std::string(detail::trim(cells[0]))));
    } catch (const std::exception&) {
      throw FormatError("malformed dir cell", lineno, 1);
    }
    try {
      r.in3 = detail::parse_double(detail::trim(cells[1]));
      r.in2 = detail::parse_double(detail::trim(cells[2]));
      r.in1 = detail::parse_double(detail::trim(cells[3]));
    } catch (const std::exception&) {
      throw FormatError("malformed numeric cell", lineno, 2);
    }
    auto parse_bool = [&](std::string_view cell, std::size_t col) {
      std::string_view t = detail::trim(cell);
      if (t == "1") return true;
      if (t == "0") return false;
      throw FormatError("boolean cell must be 1 or 0", lineno, col);
    };
    r.out3 = parse_bool(cells[4], 5);
    r.out2 = parse_bool(cells[5], 6);
    r.out1 = parse_bool(cells[6], 7);
    try {
      ledger.append(r);
    } catch (const NonMonotonicDir& e) {
      throw FormatError(e.what(), lineno, 1);
    }
  }
  return ledger;
}

inline Ledger load_ledger_csv(const std::string& bytes) {
  std::istringstream is(bytes);
  return load_ledger_csv(is);
}

// Structured text mirroring the summary table's row order: per-record
// kappa rows, then the sum row, then the mean row.
inline std::string serialize_summary(const LedgerSummary& s) {
  std::ostringstream os;
  auto fd = [](double v) { return detail::format_double(v); };
  os << "records: " << s.count << '\n';
  os << "dir mean: " << fd(s.mean_dir) << '\n';
  for (const auto& k : s.kappas)
    os << "kappa[" << k.dir << "]: " << fd(k.k3) << ' ' << fd(k.k2) << ' ' << fd(k.k1) << '\n';
  os << "sum: " << fd(s.kappa_sums.s3) << ' ' << fd(s.kappa_sums.s2) << ' ' << fd(s.kappa_sums.s1)
     << '\n';
  os << "mean: " << fd(s.kappa_means.s3) << ' ' << fd(s.kappa_means.s2) << ' '
     << fd(s.kappa_means.s1) << '\n';
  os << "grade sums: " << fd(s.sums.s3) << ' ' << fd(s.sums.s2) << ' ' << fd(s.sums.s1) << '\n';
  os << "verdicts: " << (s.verdicts.g3 ? 1 : 0) << ' ' << (s.verdicts.g2 ? 1 : 0) << ' '
     << (s.verdicts.g1 ? 1 : 0) << '\n';
  os << "yield: y2=" << fd(s.yields.y2) << "% y3=" << fd(s.yields.y3) << "%\n";
  auto fit_line = [&](const char* tag, const GaussianFit& f) {
    os << "fit " << tag << " (cumulative): mu=" << fd(f.mu);
    if (f.sigma) os << " sigma=" << fd(*f.sigma);
    else os << " sigma=absent";
    os << '\n';
  };
  fit_line("grade3", s.fit3);
  fit_line("grade2", s.fit2);
  fit_line("grade1", s.fit1);
  return os.str();
}

}  // namespace biovi
