#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cnot_forge/harness.hpp"

using namespace cnot_forge;

TEST_CASE("summary statistics") {
  const BenchRecord r =
      detail::summarize("x", 4, {3, 1, 2, 2}, 0, 0.0);
  CHECK(r.trials == 4);
  CHECK(r.min == 1);
  CHECK(r.max == 3);
  CHECK(r.mean == doctest::Approx(2.0));
  CHECK(r.median == doctest::Approx(2.0));
  // sample standard deviation of {1, 2, 2, 3}
  CHECK(r.stddev == doctest::Approx(std::sqrt(2.0 / 3.0)));

  const BenchRecord single = detail::summarize("x", 4, {7}, 0, 0.0);
  CHECK(single.min == 7);
  CHECK(single.max == 7);
  CHECK(single.mean == 7);
  CHECK(single.stddev == 0);
}

TEST_CASE("method comparison produces verified rows") {
  const auto records = run_table1({4, 6}, 5, 11, 40, 2);
  REQUIRE(records.size() == 6);
  for (const BenchRecord& r : records) {
    CHECK(r.trials == 5);
    CHECK(r.min >= 0);
    CHECK(r.max >= r.min);
    CHECK(r.mean >= r.min);
    CHECK(r.mean <= r.max);
  }
  CHECK(records[0].method == "aecm");
  CHECK(records[1].method == "algorithm1");
  CHECK(records[2].method == "mcg");
  CHECK(records[0].n == 4);
  CHECK(records[3].n == 6);
}

TEST_CASE("line cap drops the exhaustive-scan rows") {
  const auto records = run_table1({6}, 2, 11, 5, 1);
  REQUIRE(records.size() == 2);
  CHECK(records[0].method == "aecm");
  CHECK(records[1].method == "algorithm1");
}

TEST_CASE("hit rates on the identity alone are perfect") {
  const DistanceTable t5 = build_distance_table(5);
  const HitRates r = hit_rates_for({BitMatrix::identity(5)}, t5);
  CHECK(r.samples == 1);
  CHECK(r.mcg_rate() == 1.0);
  CHECK(r.aecm_rate() == 1.0);
  CHECK(r.algorithm1_rate() == 1.0);
  CHECK(r.mcg_nonconvergent == 0);
}

TEST_CASE("sampled hit rates are ordered and bounded") {
  const DistanceTable t5 = build_distance_table(5);
  const HitRates r = run_hit_rates(200, 17, t5, 2);
  CHECK(r.samples == 200);
  CHECK(r.mcg_hits >= r.aecm_hits);
  CHECK(r.aecm_hits > r.algorithm1_hits);
  CHECK(r.mcg_rate() <= 1.0);
}

TEST_CASE("gl5 sampling is deterministic and invertible") {
  const auto a = sample_gl5(20, 23);
  const auto b = sample_gl5(20, 23);
  REQUIRE(a.size() == 20);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(a[i].invertible());
  }
}

TEST_CASE("probabilistic-variant rows") {
  const auto [mcgp, aecmp] = run_table3(8, 29, 2);
  CHECK(mcgp.method == "mcgp");
  CHECK(aecmp.method == "aecmp");
  CHECK(mcgp.trials == 8);
  CHECK(mcgp.n == 16);
  CHECK(mcgp.mean < aecmp.mean);  // exhaustive scan wins on this instance
  CHECK(mcgp.min >= 40);
  CHECK(aecmp.max <= 120);
}

TEST_CASE("csv and markdown rendering") {
  BenchRecord r;
  r.method = "aecm";
  r.n = 8;
  r.trials = 2;
  r.mean = 20.5;
  r.median = 20.5;
  r.min = 20;
  r.max = 21;
  const std::string csv = to_csv({r});
  CHECK(csv.find("method,n,trials,mean,median,min,max,stddev,"
                 "nonconvergent,seconds") == 0);
  CHECK(csv.find("aecm,8,2,20.5,20.5,20,21,0,0,0") != std::string::npos);
  const std::string md = to_markdown({r});
  CHECK(md.find("| aecm | 8 | 2 |") != std::string::npos);
}

TEST_CASE("bundled 16x16 test function is invertible") {
  const BitMatrix m = fixtures::bench16x16();
  CHECK(m.size() == 16);
  CHECK(m.invertible());
  CHECK(cost_eq1(m, m.inverted()) > 0);
}
