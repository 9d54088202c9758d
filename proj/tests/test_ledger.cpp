#include <random>
#include <sstream>

#include "biovi/ledger.hpp"
#include "doctest.h"

using namespace biovi;

namespace {

Ledger random_ledger(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.1, 10.0);
  std::bernoulli_distribution flip(0.5);
  Ledger l;
  std::uint64_t dir = 0;
  for (std::size_t i = 0; i < n; ++i) {
    dir += 1 + rng() % 3;
    l.append({dir, u(rng), u(rng), u(rng), flip(rng), flip(rng), flip(rng)});
  }
  return l;
}

}  // namespace

TEST_CASE("append is monotone in dir") {
  Ledger l;
  l.append({1, 0.5, 0.3, 0.9, true, false, true});
  CHECK(l.size() == 1);
  CHECK_THROWS_AS(l.append({1, 1.0, 1.0, 1.0, false, false, false}), NonMonotonicDir);
  CHECK_THROWS_AS(l.append({0, 1.0, 1.0, 1.0, false, false, false}), NonMonotonicDir);
  l.append({2, 1.0, 1.0, 1.0, false, false, false});
  CHECK(l.size() == 2);
  // Prior records never change.
  CHECK(l.records()[0].in1 == doctest::Approx(0.9));
}

TEST_CASE("summarize") {
  Ledger l;
  for (std::uint64_t d = 1; d <= 3; ++d) l.append({d, 1.0, 1.0, 1.0, true, true, true});
  LedgerSummary s = summarize(l, {2.0, 2.0, 2.0});
  CHECK(s.sums.s1 == doctest::Approx(3.0));
  CHECK(s.sums.s2 == doctest::Approx(3.0));
  CHECK(s.sums.s3 == doctest::Approx(3.0));
  CHECK(s.verdicts.g1);
  CHECK(s.verdicts.g2);
  CHECK(s.verdicts.g3);
  CHECK(s.mean_dir == doctest::Approx(2.0));
  CHECK(s.yields.y2 == doctest::Approx(100.0));
  REQUIRE(s.fit1.sigma.has_value());
  CHECK(*s.fit1.sigma == doctest::Approx(0.0).scale(1.0));

  CHECK_THROWS_AS(summarize(Ledger{}, {0.0, 0.0, 0.0}), EmptyLedger);
}

TEST_CASE("single-record sigma is absent, not zero") {
  Ledger l;
  l.append({1, 0.5, 0.25, 0.75, true, true, true});
  LedgerSummary s = summarize(l, {0.0, 0.0, 0.0});
  CHECK_FALSE(s.fit1.sigma.has_value());
  CHECK_FALSE(s.fit2.sigma.has_value());
  CHECK_FALSE(s.fit3.sigma.has_value());
  CHECK(s.fit1.mu == doctest::Approx(0.75));
}

TEST_CASE("yield row matches the module-level function") {
  Ledger l;
  l.append({1, 4.0, 1.0, 2.0, true, true, true});
  LedgerSummary s = summarize(l, {0.0, 0.0, 0.0});
  CHECK(s.yields.y2 == doctest::Approx(50.0));
  CHECK(s.yields.y3 == doctest::Approx(200.0));
}

TEST_CASE("kappa triples mirror the product-ratio construction") {
  Ledger l;
  l.append({1, 2.0, 3.0, 6.0, true, true, true});  // in3=2, in2=3, in1=6
  LedgerSummary s = summarize(l, {0.0, 0.0, 0.0});
  REQUIRE(s.kappas.size() == 1);
  CHECK(s.kappas[0].k1 == doctest::Approx(1.0));   // 2*3/6
  CHECK(s.kappas[0].k2 == doctest::Approx(4.0));   // 2*6/3
  CHECK(s.kappas[0].k3 == doctest::Approx(9.0));   // 3*6/2

  Ledger zero;
  zero.append({1, 0.0, 1.0, 1.0, true, true, true});
  CHECK_THROWS_AS(summarize(zero, {0.0, 0.0, 0.0}), ZeroClassSum);
}

TEST_CASE("csv serialization") {
  Ledger l;
  l.append({1, 0.5, 0.3, 0.9, true, false, true});
  std::string csv = serialize_csv(l);
  CHECK(csv == "dir,in3,in2,in1,out3,out2,out1\n1,0.5,0.3,0.9,1,0,1\n");

  CHECK_THROWS_AS(load_ledger_csv(std::string("bad,header\n")), FormatError);
  CHECK_THROWS_AS(load_ledger_csv(std::string(kLedgerHeader) + "\n1,0.5,0.3,0.9,1,0,maybe\n"),
                  FormatError);
  CHECK_THROWS_AS(load_ledger_csv(std::string(kLedgerHeader) + "\n1,a,0.3,0.9,1,0,1\n"),
                  FormatError);
  CHECK_THROWS_AS(load_ledger_csv(std::string(kLedgerHeader) + "\n1,0.5,0.3,0.9,1,0\n"),
                  FormatError);
}

TEST_CASE("csv round trip (property)") {
  std::mt19937_64 rng(51u);
  std::uniform_int_distribution<std::size_t> len(1, 20);
  for (int i = 0; i < 500; ++i) {
    Ledger l = random_ledger(rng, len(rng));
    Ledger back = load_ledger_csv(serialize_csv(l));
    CHECK(back == l);
    // Re-serialization is byte-identical.
    CHECK(serialize_csv(back) == serialize_csv(l));
  }
}

TEST_CASE("long append run re-serializes prior records unchanged") {
  std::mt19937_64 rng(52u);
  Ledger l = random_ledger(rng, 1000);
  std::string first = serialize_csv(l);
  Ledger reloaded = load_ledger_csv(first);
  CHECK(serialize_csv(reloaded) == first);
}

TEST_CASE("summarize is a pure fold (property)") {
  std::mt19937_64 rng(53u);
  std::uniform_int_distribution<std::size_t> len(1, 15);
  ClassThresholds th{0.0, 0.0, 0.0};
  for (int i = 0; i < 500; ++i) {
    Ledger a = random_ledger(rng, len(rng));
    Ledger b = random_ledger(rng, len(rng));
    Ledger ab;
    for (const auto& r : a.records()) ab.append(r);
    std::uint64_t offset = a.records().back().dir;
    for (const auto& r : b.records()) {
      PulseRecord shifted = r;
      shifted.dir += offset;
      ab.append(shifted);
    }
    LedgerSummary sa = summarize(a, th);
    LedgerSummary sb = summarize(b, th);
    LedgerSummary sab = summarize(ab, th);
    CHECK(sab.sums.s1 == doctest::Approx(sa.sums.s1 + sb.sums.s1).epsilon(1e-12));
    CHECK(sab.sums.s2 == doctest::Approx(sa.sums.s2 + sb.sums.s2).epsilon(1e-12));
    CHECK(sab.sums.s3 == doctest::Approx(sa.sums.s3 + sb.sums.s3).epsilon(1e-12));
  }
}

TEST_CASE("structured summary text mirrors the table row order") {
  Ledger l;
  l.append({1, 2.0, 3.0, 6.0, true, true, true});
  l.append({2, 2.0, 3.0, 6.0, true, true, true});
  std::string text = serialize_summary(summarize(l, {1.0, 1.0, 1.0}));
  auto pos_kappa = text.find("kappa[1]");
  auto pos_sum = text.find("\nsum:");
  auto pos_mean = text.find("\nmean:");
  REQUIRE(pos_kappa != std::string::npos);
  REQUIRE(pos_sum != std::string::npos);
  REQUIRE(pos_mean != std::string::npos);
  CHECK(pos_kappa < pos_sum);
  CHECK(pos_sum < pos_mean);
  CHECK(text.find("cumulative") != std::string::npos);
}
