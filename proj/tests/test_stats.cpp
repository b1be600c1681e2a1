#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lceval/errors.hpp"
#include "lceval/model_metrics.hpp"
#include "lceval/stats.hpp"

using namespace lceval;
using namespace lceval::stats;

namespace {

// Published reference panel: six models' benchmark accuracy against their
// readability-score error.
const std::vector<double> kMmlu6 = {85.9, 87.0, 86.0, 86.0, 88.7, 90.8};
const std::vector<double> kLixErr6 = {19.72, 10.42, 20.9, 18.64, 9.2, 7.4};
const std::vector<double> kMmlu5 = {85.9, 87.0, 86.0, 88.7, 90.8};
const std::vector<double> kAddDiff1 = {1.02, 0.66, 0.88, 0.97, 0.64};

// Student-t density, for the integration oracle.
double t_density(double x, int df) {
  const double a = std::lgamma((df + 1) / 2.0) - std::lgamma(df / 2.0);
  const double norm = std::exp(a) / std::sqrt(df * M_PI);
  return norm * std::pow(1.0 + x * x / df, -(df + 1) / 2.0);
}

// Two-tailed p independent of the incomplete-beta code path: closed forms
// for df 1 and 2 (their tails decay too slowly to truncate), Simpson
// integration of the density for everything else.
double t_two_tailed_by_integration(double t, int df) {
  const double lo = std::fabs(t);
  if (df == 1) return 1.0 - 2.0 / M_PI * std::atan(lo);
  if (df == 2) return 1.0 - lo / std::sqrt(2.0 + lo * lo);
  const double hi = lo + 40.0 + 400.0 / df;
  const int steps = 200000;
  const double h = (hi - lo) / steps;
  double sum = t_density(lo, df) + t_density(hi, df);
  for (int i = 1; i < steps; ++i) {
    const double x = lo + h * i;
    sum += t_density(x, df) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return std::min(1.0, 2.0 * sum * h / 3.0);
}

}  // namespace

TEST_SUITE_BEGIN("stats");

TEST_CASE("pearson: the six-model reference panel") {
  CorrelationResult r = pearson(kMmlu6, kLixErr6);
  CHECK(r.n == 6);
  CHECK(r.r == doctest::Approx(-0.875).epsilon(0.0015));
  CHECK(std::fabs(r.t_statistic) == doctest::Approx(3.610).epsilon(0.001));
  // exact two-tailed value; the commonly cited rounded figure is 0.026
  CHECK(r.p_two_tailed == doctest::Approx(0.0226).epsilon(0.03));
  CHECK(r.p_two_tailed > 0.020);
  CHECK(r.p_two_tailed < 0.027);
  CHECK(r.significant());
}

TEST_CASE("pearson: the five-model dependency panel") {
  CorrelationResult r = pearson(kMmlu5, kAddDiff1);
  CHECK(r.r == doctest::Approx(-0.519).epsilon(0.002));
  CHECK(r.p_two_tailed == doctest::Approx(0.370).epsilon(0.02));
  CHECK_FALSE(r.significant());
}

TEST_CASE("pearson: perfect linearity declares p = 0") {
  CorrelationResult r = pearson(std::vector<double>{1, 2, 3},
                                std::vector<double>{2, 4, 6});
  CHECK(r.r == doctest::Approx(1.0));
  CHECK(r.p_two_tailed == 0.0);
}

TEST_CASE("pearson: errors") {
  std::vector<double> two = {1, 2};
  CHECK_THROWS_AS(pearson(two, two), Error);
  std::vector<double> flat = {5, 5, 5, 5};
  std::vector<double> varying = {1, 2, 3, 4};
  try {
    pearson(flat, varying);
    FAIL("expected ZeroVariance");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroVariance);
  }
}

TEST_CASE("pearson: symmetry and scale/shift invariance") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-10, 10);
  for (int round = 0; round < 50; ++round) {
    const int n = 3 + static_cast<int>(rng() % 20);
    std::vector<double> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = dist(rng);
      ys[i] = dist(rng);
    }
    CorrelationResult a = pearson(xs, ys);
    CorrelationResult b = pearson(ys, xs);
    CHECK(a.r == doctest::Approx(b.r).epsilon(1e-12));
    CHECK(a.p_two_tailed == doctest::Approx(b.p_two_tailed).epsilon(1e-12));

    std::vector<double> scaled(xs);
    for (double& v : scaled) v = 3.5 * v + 11.0;
    CorrelationResult c = pearson(scaled, ys);
    CHECK(c.r == doctest::Approx(a.r).epsilon(1e-12));

    for (double& v : scaled) v = -v;
    CorrelationResult d = pearson(scaled, ys);
    CHECK(d.r == doctest::Approx(-a.r).epsilon(1e-12));
    CHECK(d.p_two_tailed == doctest::Approx(a.p_two_tailed).epsilon(1e-9));
  }
}

TEST_CASE("t kernel: exact values and the integration oracle") {
  CHECK(student_t_two_tailed_p(0.0, 4) == 1.0);
  CHECK(student_t_two_tailed_p(0.0, 17) == 1.0);
  CHECK(student_t_two_tailed_p(2.776, 4) == doctest::Approx(0.0500).epsilon(0.01));
  CHECK(std::fabs(student_t_two_tailed_p(2.776, 4) - 0.0500) < 0.0005);
  CHECK(std::fabs(student_t_two_tailed_p(3.610, 4) - 0.02255) < 0.0005);

  // incomplete-beta route vs numeric integration of the density
  for (int df : {1, 2, 4, 7, 15, 30}) {
    for (double t : {0.3, 1.0, 2.0, 3.61, 5.0}) {
      const double via_beta = student_t_two_tailed_p(t, df);
      const double via_integral = t_two_tailed_by_integration(t, df);
      CHECK_MESSAGE(std::fabs(via_beta - via_integral) < 5e-6,
                    "df=" << df << " t=" << t << " beta=" << via_beta
                          << " integral=" << via_integral);
    }
  }
}

TEST_CASE("t kernel: monotone decreasing in |t|") {
  std::mt19937_64 rng(20250809);
  std::uniform_real_distribution<double> t_dist(0.0, 12.0);
  for (int round = 0; round < 1000; ++round) {
    const int df = 1 + static_cast<int>(rng() % 40);
    double t1 = t_dist(rng), t2 = t_dist(rng);
    if (t1 > t2) std::swap(t1, t2);
    const double p1 = student_t_two_tailed_p(t1, df);
    const double p2 = student_t_two_tailed_p(t2, df);
    REQUIRE(p1 >= p2 - 1e-12);
    REQUIRE(p2 > 0.0);
    REQUIRE(p1 <= 1.0);
    // symmetry in the sign of t
    REQUIRE(student_t_two_tailed_p(-t1, df) ==
            doctest::Approx(p1).epsilon(1e-12));
  }
}

TEST_CASE("mae: basics") {
  std::vector<double> a = {40, 50};
  std::vector<double> b = {45, 55};
  MaeResult r = mean_abs_error(a, b);
  CHECK(r.mae == doctest::Approx(5.0));
  CHECK(r.pairs_used == 2);
  CHECK(r.excluded == 0);

  MaeResult zero = mean_abs_error(a, a);
  CHECK(zero.mae == 0.0);
}

TEST_CASE("mae: pairwise deletion with exclusion counts") {
  std::vector<std::optional<double>> truth = {40.0, 50.0, 60.0};
  std::vector<std::optional<double>> reported = {45.0, std::nullopt, 63.0};
  MaeResult r = mean_abs_error(truth, reported);
  CHECK(r.mae == doctest::Approx(4.0));
  CHECK(r.pairs_used == 2);
  CHECK(r.excluded == 1);

  std::vector<std::optional<double>> none = {std::nullopt, std::nullopt,
                                             std::nullopt};
  try {
    mean_abs_error(truth, none);
    FAIL("expected NoPairs");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoPairs);
  }
}

TEST_CASE("mae: triangle sanity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-100, 100);
  for (int round = 0; round < 100; ++round) {
    const int n = 1 + static_cast<int>(rng() % 10);
    std::vector<double> x(n), y(n), z(n);
    for (int i = 0; i < n; ++i) {
      x[i] = dist(rng);
      y[i] = dist(rng);
      z[i] = dist(rng);
    }
    const double xz = mean_abs_error(x, z).mae;
    const double xy = mean_abs_error(x, y).mae;
    const double yz = mean_abs_error(y, z).mae;
    CHECK(xz <= xy + yz + 1e-9);
  }
}

TEST_CASE("model metrics: perfect records give zero everywhere") {
  std::vector<harness::EvalRecord> records;
  for (int i = 0; i < 4; ++i) {
    harness::EvalRecord r;
    r.item_id = "i" + std::to_string(i);
    r.model_id = "m";
    r.true_lix = 40.0 + i;
    r.reported_lix = 40.0 + i;
    r.gold_add = 2.0;
    r.model_tree_add = 2.0;
    r.reported_add = 2.0;
    records.push_back(r);
  }
  ModelMetrics m = aggregate_model_metrics(records);
  CHECK(m.lix_error->mae == 0.0);
  CHECK(m.add_diff_1->mae == 0.0);
  CHECK(m.add_diff_2->mae == 0.0);
}

TEST_CASE("model metrics: constructed fixture lands add_diff_2 at 0.12") {
  // ten items whose |tree ADD - reported ADD| gaps average exactly 0.12
  const std::vector<double> gaps = {0.10, 0.20, 0.05, 0.15, 0.10,
                                    0.20, 0.05, 0.15, 0.10, 0.10};
  std::vector<harness::EvalRecord> records;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    harness::EvalRecord r;
    r.item_id = "i" + std::to_string(i);
    r.model_id = "o1-mini-analog";
    r.true_lix = 40;
    r.reported_lix = 42;
    r.gold_add = 2.5;
    r.model_tree_add = 2.0 + 0.01 * static_cast<double>(i);
    r.reported_add = *r.model_tree_add + (i % 2 == 0 ? gaps[i] : -gaps[i]);
    records.push_back(r);
  }
  ModelMetrics m = aggregate_model_metrics(records);
  CHECK(m.record_count == 10);
  CHECK(m.add_diff_2->mae == doctest::Approx(0.12).epsilon(1e-12));
}

TEST_CASE("model metrics: missing reported values are excluded per metric") {
  std::vector<harness::EvalRecord> records;
  for (int i = 0; i < 3; ++i) {
    harness::EvalRecord r;
    r.item_id = "i" + std::to_string(i);
    r.model_id = "m";
    r.true_lix = 40.0;
    r.reported_lix = i == 1 ? std::optional<double>() : 44.0;
    r.gold_add = 2.0;
    r.model_tree_add = 2.5;
    r.reported_add = std::nullopt;  // model never reported an average
    records.push_back(r);
  }
  ModelMetrics m = aggregate_model_metrics(records);
  CHECK(m.lix_error->mae == doctest::Approx(4.0));
  CHECK(m.lix_error->pairs_used == 2);
  CHECK(m.lix_error->excluded == 1);
  CHECK(m.add_diff_1->mae == doctest::Approx(0.5));
  CHECK_FALSE(m.add_diff_2.has_value());  // NoPairs propagated independently
}

TEST_SUITE_END();
