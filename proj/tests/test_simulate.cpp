#include "biovi/simulate.hpp"
#include "doctest.h"

using namespace biovi;

namespace {

std::array<GaussianParams, 3> default_params() {
  return {GaussianParams{1.0, 0.2}, GaussianParams{2.0, 0.3}, GaussianParams{3.0, 0.4}};
}

}  // namespace

TEST_CASE("same seed gives byte-identical ledgers") {
  auto params = default_params();
  ClassThresholds th{0.5, 0.5, 0.5};
  SimulationResult a = simulate_stream(500, 0xFEEDu, params, th);
  SimulationResult b = simulate_stream(500, 0xFEEDu, params, th);
  CHECK(serialize_csv(a.ledger) == serialize_csv(b.ledger));

  SimulationResult c = simulate_stream(500, 0xBEEFu, params, th);
  CHECK(serialize_csv(c.ledger) != serialize_csv(a.ledger));
}

TEST_CASE("n = 0 is rejected") {
  CHECK_THROWS_AS(simulate_stream(0, 1u, default_params(), {0, 0, 0}), InvalidParams);
}

TEST_CASE("thresholds far below the mean fire almost surely") {
  auto params = default_params();
  // theta below mu - 6 sigma for every grade.
  ClassThresholds th{1.0 - 6.5 * 0.2, 2.0 - 6.5 * 0.3, 3.0 - 6.5 * 0.4};
  SimulationResult r = simulate_stream(10000, 7u, params, th);
  std::size_t fired1 = 0, fired2 = 0, fired3 = 0;
  for (const auto& rec : r.ledger.records()) {
    fired1 += rec.out1;
    fired2 += rec.out2;
    fired3 += rec.out3;
  }
  CHECK(static_cast<double>(fired1) / 10000.0 > 0.999);
  CHECK(static_cast<double>(fired2) / 10000.0 > 0.999);
  CHECK(static_cast<double>(fired3) / 10000.0 > 0.999);
}

TEST_CASE("normal source matches its parameters") {
  rng::NormalSource src(99u);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double x = src.next(5.0, 2.0);
    sum += x;
    sq += x * x;
  }
  double mean = sum / n;
  double var = sq / n - mean * mean;
  CHECK(mean == doctest::Approx(5.0).epsilon(0.01));
  CHECK(var == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("yield ranking orders grades by percentage share") {
  // Grade-3 inputs dominate, grade-2 smallest.
  std::array<GaussianParams, 3> params{GaussianParams{2.0, 0.01}, GaussianParams{1.0, 0.01},
                                       GaussianParams{4.0, 0.01}};
  SimulationResult r = simulate_stream(2000, 5u, params, {0, 0, 0});
  CHECK(r.summary.yields.y3 > 100.0);
  CHECK(r.summary.yields.y2 < 100.0);
  CHECK(r.yield_ranking == std::array<int, 3>{3, 1, 2});
}

TEST_CASE("summary comes from the simulated ledger") {
  SimulationResult r = simulate_stream(50, 1234u, default_params(), {0, 0, 0});
  LedgerSummary again = summarize(r.ledger, {0, 0, 0});
  CHECK(r.summary.sums.s1 == again.sums.s1);
  CHECK(r.summary.sums.s2 == again.sums.s2);
  CHECK(r.summary.sums.s3 == again.sums.s3);
  CHECK(r.ledger.size() == 50);
}
