#include <catch2/catch_amalgamated.hpp>

#include "amrp/fixtures.hpp"
#include "amrp/rng.hpp"
#include "amrp/topsis.hpp"

using namespace amrp;

TEST_CASE("normalization matches the worked rows", "[recommend]") {
  const auto dm = reference_decision_matrix();
  const auto r = topsis_normalize(dm);
  CHECK(std::abs(r[0][0] - 0.1714) <= 1e-3);
  CHECK(std::abs(r[0][1] - 0.1754) <= 1e-3);
  CHECK(std::abs(r[0][2] - 0.1796) <= 1e-3);

  DecisionMatrix simple;
  simple.x = {{3.0}, {4.0}};
  const auto rs = topsis_normalize(simple);
  CHECK(rs[0][0] == 0.6);
  CHECK(rs[1][0] == 0.8);

  DecisionMatrix eye;
  eye.x = {{1.0, 0.0}, {0.0, 1.0}};
  const auto re = topsis_normalize(eye);
  CHECK(re[0][0] == 1.0);
  CHECK(re[1][1] == 1.0);
  CHECK(re[0][1] == 0.0);

  DecisionMatrix zerocol;
  zerocol.x = {{1.0, 0.0}, {2.0, 0.0}};
  try {
    topsis_normalize(zerocol);
    FAIL("expected ZeroColumn");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::zero_column);
  }
}

TEST_CASE("normalized columns have unit Euclidean norm", "[recommend]") {
  Rng rng(7);
  DecisionMatrix dm;
  dm.x.assign(12, std::vector<double>(4));
  for (auto& row : dm.x)
    for (auto& v : row) v = rng.uniform(0.1, 5.0);
  const auto r = topsis_normalize(dm);
  for (std::size_t j = 0; j < 4; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r[i][j] * r[i][j];
    CHECK(std::abs(std::sqrt(s) - 1.0) <= 1e-9);
  }
}

TEST_CASE("weighting matches the worked rows and validates input", "[recommend]") {
  const WorkedExampleExpectations exp;
  const auto dm = reference_decision_matrix();
  const auto r = topsis_normalize(dm);
  const auto v = topsis_apply_weights(r, exp.weights);
  CHECK(std::abs(v[0][0] - 0.06859) <= 1e-4);
  CHECK(std::abs(v[0][1] - 0.05262) <= 1e-4);
  CHECK(std::abs(v[0][2] - 0.05388) <= 1e-4);

  // uniform weights divide the normalized matrix by n
  Matrix eye = {{1.0, 0.0}, {0.0, 1.0}};
  const auto vu = topsis_apply_weights(eye, {1.0, 1.0});
  CHECK(vu[0][0] == 0.5);
  CHECK(vu[1][1] == 0.5);

  CHECK_THROWS_AS(topsis_apply_weights(eye, {0.5}), Error);
  try {
    topsis_apply_weights(eye, {1.0, 0.0});
    FAIL("expected NonPositiveWeight");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_positive_weight);
  }
}

TEST_CASE("scoring reproduces the worked ideal points and closeness", "[recommend]") {
  const WorkedExampleExpectations exp;
  const auto res = topsis_rank(reference_decision_matrix(), exp.weights);

  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(std::abs(res.ideal_best[j] - exp.ideal_best[j]) <= exp.tolerance);
    CHECK(std::abs(res.ideal_worst[j] - exp.ideal_worst[j]) <= exp.tolerance);
  }
  // the first alternative equals the ideal: S+ = 0, S- near 0.0690, C = 1
  CHECK(res.sep_best[0] <= 1e-12);
  CHECK(std::abs(res.sep_worst[0] - exp.sep_worst_first_row) <= exp.tolerance);
  CHECK(res.closeness[0] == 1.0);
  // the second alternative is the ideal-worst pattern: C = 0
  CHECK(res.closeness[1] <= 1e-12);
}

TEST_CASE("any norm-consistent matrix reproduces the worked numbers", "[recommend]") {
  // shuffling rows below the first one preserves the column value multisets,
  // hence the column norms, the ideal points and the first row's chain
  const WorkedExampleExpectations exp;
  Rng rng(37);
  for (int rep = 0; rep < 50; ++rep) {
    auto dm = reference_decision_matrix();
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t i = dm.x.size() - 1; i > 1; --i) {
        const std::size_t k = 1 + rng.below(i);
        std::swap(dm.x[i][j], dm.x[k][j]);
      }
    }
    const auto res = topsis_rank(dm, exp.weights);
    for (std::size_t j = 0; j < 3; ++j) {
      REQUIRE(std::abs(res.normalized[0][j] - exp.normalized_first_row[j]) <= exp.tolerance);
      REQUIRE(std::abs(res.weighted[0][j] - exp.weighted_first_row[j]) <= exp.tolerance);
      REQUIRE(std::abs(res.ideal_best[j] - exp.ideal_best[j]) <= exp.tolerance);
      REQUIRE(std::abs(res.ideal_worst[j] - exp.ideal_worst[j]) <= exp.tolerance);
    }
    REQUIRE(std::abs(res.sep_worst[0] - exp.sep_worst_first_row) <= exp.tolerance);
    REQUIRE(res.closeness[0] == 1.0);
  }
}

namespace {

// straight-line reimplementation of the whole chain from the definitions
std::vector<std::size_t> brute_force_ranking(const Matrix& x, const std::vector<double>& w) {
  const std::size_t m = x.size(), n = x[0].size();
  double wsum = 0.0;
  for (double v : w) wsum += v;
  Matrix v(m, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    double norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) norm += x[i][j] * x[i][j];
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < m; ++i) v[i][j] = (w[j] / wsum) * x[i][j] / norm;
  }
  std::vector<double> c(m);
  for (std::size_t i = 0; i < m; ++i) {
    double sp = 0.0, sm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double hi = -1e300, lo = 1e300;
      for (std::size_t r = 0; r < m; ++r) {
        hi = std::max(hi, v[r][j]);
        lo = std::min(lo, v[r][j]);
      }
      sp += (hi - v[i][j]) * (hi - v[i][j]);
      sm += (lo - v[i][j]) * (lo - v[i][j]);
    }
    c[i] = std::sqrt(sm) / (std::sqrt(sp) + std::sqrt(sm));
  }
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (c[a] != c[b]) return c[a] > c[b];
    return a < b;
  });
  return order;
}

}  // namespace

TEST_CASE("ranking equals the brute-force recomputation", "[recommend]") {
  Rng rng(13);
  for (int rep = 0; rep < 200; ++rep) {
    DecisionMatrix dm;
    dm.x.assign(3, std::vector<double>(2));
    for (auto& row : dm.x)
      for (auto& v : row) v = rng.uniform(0.05, 3.0);
    std::vector<double> w = {rng.uniform(0.1, 1.0), rng.uniform(0.1, 1.0)};
    const auto res = topsis_rank(dm, w);
    CHECK(res.ranking == brute_force_ranking(dm.x, w));
  }
}

TEST_CASE("column rescaling does not change the ranking", "[recommend]") {
  Rng rng(19);
  for (int rep = 0; rep < 100; ++rep) {
    DecisionMatrix dm;
    dm.x.assign(8, std::vector<double>(3));
    for (auto& row : dm.x)
      for (auto& v : row) v = rng.uniform(0.05, 4.0);
    const std::vector<double> w = {0.4, 0.3, 0.3};
    const auto base = topsis_rank(dm, w);

    DecisionMatrix scaled = dm;
    const std::size_t col = rng.below(3);
    const double factor = rng.uniform(0.2, 9.0);
    for (auto& row : scaled.x) row[col] *= factor;
    CHECK(topsis_rank(scaled, w).ranking == base.ranking);
  }
}

TEST_CASE("two-alternative closeness values sum to one", "[recommend]") {
  Rng rng(23);
  for (int rep = 0; rep < 100; ++rep) {
    DecisionMatrix dm;
    dm.x.assign(2, std::vector<double>(3));
    for (auto& row : dm.x)
      for (auto& v : row) v = rng.uniform(0.05, 4.0);
    const auto res = topsis_rank(dm, {0.4, 0.3, 0.3});
    CHECK(std::abs(res.closeness[0] + res.closeness[1] - 1.0) <= 1e-12);
  }
}

TEST_CASE("rank_foods honours dominance, degeneracy and k", "[recommend]") {
  DecisionMatrix dm;
  dm.x = {{2.0, 2.0, 2.0}, {1.0, 1.0, 1.0}, {1.0, 2.0, 1.0}};
  auto out = rank_foods(dm, {0.4, 0.3, 0.3}, 2);
  REQUIRE(out.top.size() == 2);
  CHECK(out.top[0].row == 0);
  CHECK(out.top[0].closeness == 1.0);

  DecisionMatrix same;
  same.x = {{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
  out = rank_foods(same, {0.5, 0.5}, 3);
  for (const auto& r : out.full.closeness) CHECK(r == 0.5);
  CHECK(out.full.ranking == std::vector<std::size_t>{0, 1, 2});

  out = rank_foods(dm, {0.4, 0.3, 0.3}, 10);
  CHECK(out.k_clamped);
  CHECK(out.top.size() == 3);
}
