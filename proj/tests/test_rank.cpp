#include <doctest.h>

#include <cmath>

#include "ordolex/rank.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace ordolex;

namespace {

Eigen::MatrixXd column_matrix(const std::vector<std::vector<double>>& rows) {
  Eigen::MatrixXd X(static_cast<long>(rows.size()), static_cast<long>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      X(static_cast<long>(i), static_cast<long>(j)) = rows[i][j];
    }
  }
  return X;
}

std::vector<std::string> feature_names(int k) {
  std::vector<std::string> names;
  for (int j = 0; j < k; ++j) names.push_back("f" + std::to_string(j));
  return names;
}

}  // namespace

TEST_CASE("build_pairs alternates orientation and balances labels") {
  const FeatureVector ref{1.0, 10.0};
  const std::vector<FeatureVector> three = {{2, 12}, {3, 13}, {4, 14}};
  const auto pairs3 = build_pairs(ref, three, "s");
  REQUIRE(pairs3.size() == 3);
  CHECK(pairs3[0].label == 1);
  CHECK(pairs3[1].label == 0);
  CHECK(pairs3[2].label == 1);
  CHECK(pairs3[0].delta.cl_last == doctest::Approx(-1.0));   // ref - var
  CHECK(pairs3[1].delta.cl_last == doctest::Approx(2.0));    // var - ref
  CHECK(pairs3[0].delta.total_dl == doctest::Approx(-2.0));

  const std::vector<FeatureVector> four = {{2, 12}, {3, 13}, {4, 14}, {5, 15}};
  const auto pairs4 = build_pairs(ref, four, "s");
  std::vector<int> labels;
  for (const auto& p : pairs4) labels.push_back(p.label);
  CHECK(labels == std::vector<int>{1, 0, 1, 0});

  // antisymmetry: pair k and its flipped twin carry negated deltas
  for (std::size_t k = 0; k < pairs4.size(); ++k) {
    const double direct = pairs4[k].delta.cl_last;
    const double flipped = pairs4[k].label == 1 ? ref.cl_last - four[k].cl_last
                                                : four[k].cl_last - ref.cl_last;
    CHECK(direct == doctest::Approx(flipped));
  }

  // balance holds for every group size
  for (int n_variants = 1; n_variants <= 9; ++n_variants) {
    std::vector<FeatureVector> variants(n_variants, FeatureVector{2, 2});
    const auto pairs = build_pairs(ref, variants, "s");
    int ones = 0;
    for (const auto& p : pairs) ones += p.label;
    CHECK(std::abs(2 * ones - n_variants) <= 1);
  }
}

TEST_CASE("a feature independent of the labels gets a zero coefficient") {
  const Eigen::MatrixXd X = column_matrix({{-1}, {1}, {-1}, {1}});
  const ModelFit fit = fit_logistic(X, feature_names(1), {0, 1, 1, 0});
  REQUIRE(fit.converged);
  CHECK(std::abs(fit.coefficients(1)) < 1e-6);
  CHECK(std::abs(fit.coefficients(0)) < 1e-6);
}

TEST_CASE("irls matches the dense grid oracle on one-feature data") {
  // overlapping labels at x = -1 and x = 2 keep the likelihood bounded
  const std::vector<std::vector<double>> rows = {{-2}, {-1}, {-1}, {1}, {2}, {2}};
  const std::vector<int> y = {0, 0, 1, 1, 1, 0};

  const ModelFit fit = fit_logistic(column_matrix(rows), feature_names(1), y);
  REQUIRE(fit.converged);
  const std::vector<double> oracle = testsupport::oracle_logistic_fit(rows, y);
  CHECK(std::abs(fit.coefficients(0) - oracle[0]) < 1e-6);
  CHECK(std::abs(fit.coefficients(1) - oracle[1]) < 1e-6);
}

TEST_CASE("irls matches the dense grid oracle on two-feature data") {
  // contradictory duplicates at (-1,-1) and (1,1) rule out separation
  const std::vector<std::vector<double>> rows = {{-2, 1},  {-1, -1}, {-1, -1}, {0, 2},
                                                 {1, 1},   {1, 1},   {2, -2},  {2, 2},
                                                 {0.5, 0}, {-0.5, -0.5}};
  const std::vector<int> y = {0, 1, 0, 1, 1, 0, 0, 1, 1, 0};

  const ModelFit fit = fit_logistic(column_matrix(rows), feature_names(2), y);
  REQUIRE(fit.converged);
  CHECK(fit.iterations < 100);
  const std::vector<double> oracle = testsupport::oracle_logistic_fit(rows, y);
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(fit.coefficients(j) - oracle[j]) < 1e-6);
  }
}

TEST_CASE("separable data trips the guard instead of looping") {
  const Eigen::MatrixXd X = column_matrix({{-2}, {-1}, {1}, {2}});
  const ModelFit fit = fit_logistic(X, feature_names(1), {0, 0, 1, 1});
  CHECK_FALSE(fit.converged);
  CHECK(fit.guard_tripped);
  CHECK(std::abs(fit.coefficients(1)) <= 1e6 * 10);  // bounded, not divergent
}

TEST_CASE("rank-deficient designs name the collinear column") {
  const Eigen::MatrixXd X = column_matrix({{1, 2}, {2, 4}, {3, 6}, {-1, -2}});
  try {
    fit_logistic(X, {"alpha", "beta"}, {0, 1, 0, 1});
    FAIL("expected collinearity error");
  } catch (const Error& e) {
    CHECK(e.code() == "collinear");
    CHECK(std::string(e.what()).find("beta") != std::string::npos);
  }
}

TEST_CASE("converged fits sit at a stationary point of the likelihood") {
  Rng rng(90210);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::vector<double>> rows;
    std::vector<int> y;
    for (int i = 0; i < 60; ++i) {
      const double x1 = static_cast<double>(rng.below(9)) - 4.0;
      const double x2 = static_cast<double>(rng.below(9)) - 4.0;
      rows.push_back({x1, x2});
      const double eta = 0.4 * x1 - 0.3 * x2;
      y.push_back(rng.below(1000) < static_cast<std::uint64_t>(1000.0 / (1.0 + std::exp(-eta)))
                      ? 1
                      : 0);
    }
    const ModelFit fit = fit_logistic(column_matrix(rows), feature_names(2), y);
    REQUIRE(fit.converged);

    // recompute the score by hand at the reported optimum
    double max_score = 0;
    for (int j = 0; j < 3; ++j) {
      double score = 0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const double eta =
            fit.coefficients(0) + fit.coefficients(1) * rows[i][0] + fit.coefficients(2) * rows[i][1];
        const double mu = 1.0 / (1.0 + std::exp(-eta));
        score += (y[i] - mu) * (j == 0 ? 1.0 : rows[i][j - 1]);
      }
      max_score = std::max(max_score, std::abs(score));
    }
    CHECK(max_score < 1e-8);
  }
}

TEST_CASE("label flips negate every coefficient; orientation flips negate the intercept") {
  const std::vector<std::vector<double>> rows = {{-2, 1},  {-1, -1}, {0, 2},  {1, 1},
                                                 {2, -2},  {2, 2},   {-1, 1}, {1, -1}};
  const std::vector<int> y = {0, 1, 1, 1, 0, 1, 0, 0};
  const Eigen::MatrixXd X = column_matrix(rows);
  const ModelFit fit = fit_logistic(X, feature_names(2), y);
  REQUIRE(fit.converged);

  std::vector<int> flipped;
  for (int label : y) flipped.push_back(1 - label);

  // y -> 1-y: all coefficients negate
  const ModelFit label_flip = fit_logistic(X, feature_names(2), flipped);
  for (int j = 0; j < 3; ++j) {
    CHECK(label_flip.coefficients(j) == doctest::Approx(-fit.coefficients(j)).epsilon(1e-7));
  }

  // delta -> -delta with y -> 1-y (pair orientation flip): intercept negates,
  // slopes stay
  const ModelFit orientation_flip = fit_logistic(-X, feature_names(2), flipped);
  CHECK(orientation_flip.coefficients(0) == doctest::Approx(-fit.coefficients(0)).epsilon(1e-7));
  for (int j = 1; j < 3; ++j) {
    CHECK(orientation_flip.coefficients(j) == doctest::Approx(fit.coefficients(j)).epsilon(1e-7));
  }
}

TEST_CASE("grouped folds partition the groups evenly") {
  std::vector<std::string> groups;
  for (int i = 0; i < 20; ++i) groups.push_back("g" + std::to_string(i));
  const std::vector<int> folds = assign_folds(groups, 10, 42);
  std::vector<int> sizes(10, 0);
  for (int f : folds) ++sizes[f];
  for (int size : sizes) CHECK(size == 2);

  CHECK_THROWS_AS(assign_folds({"a", "b"}, 10, 1), Error);
}

TEST_CASE("cross-validation on strictly dominated data is perfect") {
  std::vector<PairRecord> pairs;
  Rng rng(7);
  for (int g = 0; g < 30; ++g) {
    const std::string sent_id = "g" + std::to_string(g);
    std::vector<FeatureVector> variants;
    for (int v = 0; v < 4; ++v) {
      variants.push_back({5.0 + static_cast<double>(rng.below(5)),
                          20.0 + static_cast<double>(rng.below(10))});
    }
    const FeatureVector reference{1.0 + static_cast<double>(rng.below(2)), 10.0};
    const auto group = build_pairs(reference, variants, sent_id);
    pairs.insert(pairs.end(), group.begin(), group.end());
  }
  const CVReport report = cross_validate(pairs, {Feature::cl_last}, 10, 99);
  REQUIRE(report.fold_accuracies.size() == 10);
  CHECK(report.mean_accuracy == doctest::Approx(100.0));
  for (std::uint8_t correct : report.per_item_correct) CHECK(correct == 1);

  CHECK_THROWS_AS(cross_validate(pairs, {Feature::cl_last}, 31, 99), Error);
}

TEST_CASE("mcnemar: exact branch, asymptotic branch, degenerate input") {
  const McNemarResult symmetric = mcnemar_test(10, 10);
  CHECK(symmetric.exact);
  CHECK(symmetric.p_value == doctest::Approx(1.0));

  const McNemarResult fifteen_five = mcnemar_test(15, 5);
  CHECK(fifteen_five.exact);
  CHECK(std::abs(fifteen_five.p_value - 0.0414) < 1e-4);
  CHECK(std::abs(fifteen_five.p_value - testsupport::oracle_binomial_two_tailed(15, 5)) < 1e-12);

  const McNemarResult large = mcnemar_test(100, 50);
  CHECK_FALSE(large.exact);
  CHECK(large.statistic == doctest::Approx(16.00666667).epsilon(1e-9));
  CHECK(large.p_value == doctest::Approx(6.3e-5).epsilon(0.02));
  CHECK(std::abs(large.p_value - testsupport::oracle_chi_square_df1_tail(large.statistic)) <
        1e-9);

  const McNemarResult undefined = mcnemar_test(0, 0);
  CHECK_FALSE(undefined.defined);
  CHECK(undefined.p_value == doctest::Approx(1.0));

  // orientation symmetry
  CHECK(mcnemar_test(5, 15).p_value == doctest::Approx(mcnemar_test(15, 5).p_value));
}

TEST_CASE("vif: orthogonal, correlated, single, and collinear designs") {
  // exactly orthogonal centered columns
  const Eigen::MatrixXd orthogonal =
      column_matrix({{1, 1}, {-1, 1}, {1, -1}, {-1, -1}});
  const VifResult o = vif(orthogonal);
  CHECK(o.values[0] == doctest::Approx(1.0));
  CHECK(o.values[1] == doctest::Approx(1.0));

  // r = 0.7 built from orthogonal unit vectors
  Eigen::VectorXd base(4), ortho(4);
  base << -3, -1, 1, 3;
  ortho << 1, -1, -1, 1;
  base.normalize();
  ortho.normalize();
  Eigen::MatrixXd correlated(4, 2);
  correlated.col(0) = base;
  correlated.col(1) = 0.7 * base + std::sqrt(1.0 - 0.49) * ortho;
  const VifResult c = vif(correlated);
  CHECK(c.values[0] == doctest::Approx(1.0 / 0.51).epsilon(1e-9));
  CHECK(c.values[1] == doctest::Approx(1.0 / 0.51).epsilon(1e-9));

  const VifResult single = vif(column_matrix({{1}, {2}, {3}}));
  CHECK(single.values == std::vector<double>{1.0});

  const VifResult collinear = vif(column_matrix({{1, 2}, {2, 4}, {3, 6}, {4, 8}}));
  CHECK(collinear.capped[0] == 1);
  CHECK(collinear.capped[1] == 1);
  CHECK(collinear.values[0] >= 1e12);
}

TEST_CASE("alternation-balanced corpora fit a near-zero intercept") {
  const auto corpus = testsupport::make_corpus(
      120, {.min_constituents = 2, .max_constituents = 4, .least_effort_reference = true},
      314159);
  std::vector<PairRecord> pairs;
  for (const Sentence& s : corpus) {
    const DepTree tree = build_tree(s);
    const ClauseLayout layout = extract_layout(tree);
    const int n = layout.n_constituents();
    Rng rng(stable_seed(314159, s.sent_id, "variants"));
    const VariantRecord ref = realize(tree, layout, identity_order(n));
    std::vector<FeatureVector> variants;
    for (const Permutation& order : enumerate_or_sample(n, 24, rng)) {
      const VariantRecord v = realize(tree, layout, order);
      variants.push_back({static_cast<double>(v.cl_last), static_cast<double>(v.total_dl)});
    }
    const auto group = build_pairs(
        {static_cast<double>(ref.cl_last), static_cast<double>(ref.total_dl)}, variants,
        s.sent_id);
    pairs.insert(pairs.end(), group.begin(), group.end());
  }

  std::vector<double> column;
  std::vector<int> labels;
  for (const PairRecord& p : pairs) {
    column.push_back(p.delta.cl_last);
    labels.push_back(p.label);
  }
  Eigen::MatrixXd X(static_cast<long>(pairs.size()), 1);
  const std::vector<double> z = zscore(column);
  for (std::size_t i = 0; i < z.size(); ++i) X(static_cast<long>(i), 0) = z[i];

  const ModelFit fit = fit_logistic(X, {"cl_last"}, labels);
  REQUIRE(fit.converged);
  CHECK(std::abs(fit.coefficients(0)) < 0.05);
  CHECK(fit.coefficients(1) < 0.0);  // references carry the shorter last constituent
  CHECK(fit.p_values(1) < 0.001);
}
