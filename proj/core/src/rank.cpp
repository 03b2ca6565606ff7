#include "ordolex/rank.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "ordolex/rng.hpp"

namespace ordolex {

std::string to_string(Feature f) {
  return f == Feature::cl_last ? "cl_last" : "total_dl";
}

std::vector<PairRecord> build_pairs(const FeatureVector& reference,
                                    const std::vector<FeatureVector>& variants,
                                    const std::string& sent_id) {
  if (variants.empty()) throw Error("domain", "need at least one variant to build pairs");
  std::vector<PairRecord> pairs;
  pairs.reserve(variants.size());
  for (std::size_t k = 0; k < variants.size(); ++k) {
    PairRecord p;
    p.sent_id = sent_id;
    if (k % 2 == 0) {
      p.delta = reference - variants[k];
      p.label = 1;
    } else {
      p.delta = variants[k] - reference;
      p.label = 0;
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

namespace {

double two_sided_normal_p(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

double chi_square_df1_survival(double x) { return std::erfc(std::sqrt(x / 2.0)); }

double sigmoid(double eta) { return 1.0 / (1.0 + std::exp(-eta)); }

// First column index that adds nothing to the rank of its predecessors.
int first_dependent_column(const Eigen::MatrixXd& D) {
  for (int j = 0; j < D.cols(); ++j) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(D.leftCols(j + 1));
    if (qr.rank() < j + 1) return j;
  }
  return -1;
}

}  // namespace

ModelFit fit_logistic(const Eigen::MatrixXd& X, const std::vector<std::string>& names,
                      const std::vector<int>& y, const FitOptions& options) {
  const long n = X.rows();
  if (n < 2) throw Error("domain", "need at least two rows to fit");
  if (static_cast<long>(y.size()) != n) throw Error("domain", "label count mismatch");
  if (static_cast<long>(names.size()) != X.cols()) {
    throw Error("domain", "feature name count mismatch");
  }

  ModelFit fit;
  Eigen::MatrixXd D;
  if (options.intercept) {
    D.resize(n, X.cols() + 1);
    D.col(0).setOnes();
    D.rightCols(X.cols()) = X;
    fit.feature_names.push_back("(intercept)");
  } else {
    D = X;
  }
  fit.feature_names.insert(fit.feature_names.end(), names.begin(), names.end());
  const long p = D.cols();

  {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(D);
    if (qr.rank() < p) {
      const int j = first_dependent_column(D);
      throw Error("collinear", "design column '" + fit.feature_names[j < 0 ? 0 : j] +
                                   "' is collinear with the preceding columns");
    }
  }

  Eigen::VectorXd yv(n);
  for (long i = 0; i < n; ++i) yv(i) = y[i] ? 1.0 : 0.0;

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd mu(n), weights(n);
  fit.converged = false;

  for (int iteration = 0;; ++iteration) {
    const Eigen::VectorXd eta = D * beta;
    for (long i = 0; i < n; ++i) mu(i) = sigmoid(eta(i));
    const Eigen::VectorXd score = D.transpose() * (yv - mu);

    fit.iterations = iteration;
    if (score.cwiseAbs().maxCoeff() < options.tol) {
      fit.converged = true;
      break;
    }
    if (iteration >= options.max_iter) break;

    for (long i = 0; i < n; ++i) weights(i) = std::max(mu(i) * (1.0 - mu(i)), 1e-10);
    const Eigen::MatrixXd fisher = D.transpose() * weights.asDiagonal() * D;
    const Eigen::VectorXd step = fisher.ldlt().solve(score);
    if (!step.allFinite()) break;

    beta += step;
    if (beta.cwiseAbs().maxCoeff() > options.coef_guard) {
      fit.guard_tripped = true;
      break;
    }
  }

  fit.coefficients = beta;
  fit.log_likelihood = 0.0;
  for (long i = 0; i < n; ++i) {
    const double m = std::clamp(sigmoid(D.row(i).dot(beta)), 1e-300, 1.0 - 1e-16);
    fit.log_likelihood += y[i] ? std::log(m) : std::log1p(-m);
  }

  // Completely separated data also drives the score below tol: every fitted
  // probability saturates at its label and the coefficients run off along the
  // separating direction. A finite optimum always leaves some observation
  // fitted strictly inside (0, 1).
  if (fit.converged) {
    bool all_saturated = true;
    for (long i = 0; i < n && all_saturated; ++i) {
      const double m = sigmoid(D.row(i).dot(beta));
      const double miss = y[i] ? 1.0 - m : m;
      if (miss > 1e-6) all_saturated = false;
    }
    if (all_saturated) {
      fit.converged = false;
      fit.guard_tripped = true;
    }
  }

  fit.std_errors = Eigen::VectorXd::Constant(p, std::numeric_limits<double>::quiet_NaN());
  fit.z_scores = fit.std_errors;
  fit.p_values = fit.std_errors;
  if (fit.converged) {
    for (long i = 0; i < n; ++i) {
      const double m = sigmoid(D.row(i).dot(beta));
      weights(i) = std::max(m * (1.0 - m), 1e-10);
    }
    const Eigen::MatrixXd fisher = D.transpose() * weights.asDiagonal() * D;
    const Eigen::MatrixXd covariance =
        fisher.ldlt().solve(Eigen::MatrixXd::Identity(p, p));
    for (long j = 0; j < p; ++j) {
      fit.std_errors(j) = std::sqrt(std::max(covariance(j, j), 0.0));
      fit.z_scores(j) = fit.coefficients(j) / fit.std_errors(j);
      fit.p_values(j) = two_sided_normal_p(fit.z_scores(j));
    }
  }
  return fit;
}

std::vector<int> assign_folds(const std::vector<std::string>& group_ids, int k,
                              std::uint64_t seed) {
  if (k < 2) throw Error("domain", "need at least two folds");
  if (static_cast<int>(group_ids.size()) < k) {
    throw Error("fewer-groups-than-folds",
                "have " + std::to_string(group_ids.size()) + " groups but " +
                    std::to_string(k) + " folds");
  }
  std::vector<int> position(group_ids.size());
  for (std::size_t i = 0; i < position.size(); ++i) position[i] = static_cast<int>(i);
  Rng rng(seed);
  rng.shuffle(position);

  std::vector<int> fold_of_group(group_ids.size());
  for (std::size_t i = 0; i < position.size(); ++i) {
    fold_of_group[position[i]] = static_cast<int>(i) % k;
  }
  return fold_of_group;
}

CVReport cross_validate(const std::vector<PairRecord>& pairs,
                        const std::vector<Feature>& features, int k, std::uint64_t seed,
                        const FitOptions& options) {
  if (pairs.empty()) throw Error("domain", "no pairs to cross-validate");

  // Group ids in order of first appearance; all pairs of a group share a fold.
  std::vector<std::string> group_ids;
  std::vector<int> group_of_pair(pairs.size());
  std::unordered_map<std::string, int> group_index;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [it, inserted] =
        group_index.try_emplace(pairs[i].sent_id, static_cast<int>(group_ids.size()));
    if (inserted) group_ids.push_back(pairs[i].sent_id);
    group_of_pair[i] = it->second;
  }

  const std::vector<int> fold_of_group = assign_folds(group_ids, k, seed);

  std::vector<std::string> names;
  for (Feature f : features) names.push_back(to_string(f));

  CVReport report;
  report.per_item_correct.assign(pairs.size(), 0);

  for (int fold = 0; fold < k; ++fold) {
    std::vector<std::size_t> train, test;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      (fold_of_group[group_of_pair[i]] == fold ? test : train).push_back(i);
    }
    if (test.empty()) {
      report.fold_accuracies.push_back(0.0);
      continue;
    }

    // Z-scoring parameters come from the training pairs only.
    std::vector<ZParams> z;
    for (Feature f : features) {
      std::vector<double> column;
      column.reserve(train.size());
      for (std::size_t i : train) column.push_back(pairs[i].delta.get(f));
      z.push_back(fit_zscore(column));
    }

    Eigen::MatrixXd X(static_cast<long>(train.size()), static_cast<long>(features.size()));
    std::vector<int> y;
    y.reserve(train.size());
    for (std::size_t row = 0; row < train.size(); ++row) {
      for (std::size_t col = 0; col < features.size(); ++col) {
        X(static_cast<long>(row), static_cast<long>(col)) =
            z[col].apply(pairs[train[row]].delta.get(features[col]));
      }
      y.push_back(pairs[train[row]].label);
    }
    const ModelFit fit = fit_logistic(X, names, y, options);

    long correct = 0;
    for (std::size_t i : test) {
      double eta = fit.feature_names.front() == "(intercept)" ? fit.coefficients(0) : 0.0;
      const long offset = fit.feature_names.front() == "(intercept)" ? 1 : 0;
      for (std::size_t col = 0; col < features.size(); ++col) {
        eta += fit.coefficients(offset + static_cast<long>(col)) *
               z[col].apply(pairs[i].delta.get(features[col]));
      }
      const int predicted = eta >= 0.0 ? 1 : 0;  // probability >= 0.5 predicts class 1
      if (predicted == pairs[i].label) {
        ++correct;
        report.per_item_correct[i] = 1;
      }
    }
    report.fold_accuracies.push_back(100.0 * static_cast<double>(correct) /
                                     static_cast<double>(test.size()));
  }

  double sum = 0.0;
  for (double a : report.fold_accuracies) sum += a;
  report.mean_accuracy = sum / static_cast<double>(report.fold_accuracies.size());
  return report;
}

McNemarResult mcnemar_test(long long b, long long c) {
  if (b < 0 || c < 0) throw Error("domain", "discordant counts must be non-negative");
  McNemarResult result;
  const long long n = b + c;
  if (n == 0) {
    result.defined = false;
    result.exact = true;
    result.p_value = 1.0;
    return result;
  }
  if (n < 25) {
    // Exact two-tailed binomial at p = 1/2; counts are small enough for
    // exact 64-bit binomial coefficients.
    result.exact = true;
    const long long tail = std::min(b, c);
    long double cumulative = 0.0L;
    unsigned long long coefficient = 1;  // C(n, 0)
    for (long long i = 0; i <= tail; ++i) {
      if (i > 0) coefficient = coefficient * (n - i + 1) / i;
      cumulative += static_cast<long double>(coefficient);
    }
    const long double p = std::ldexp(cumulative, static_cast<int>(1 - n));  // 2 * cum / 2^n
    result.p_value = static_cast<double>(std::min(p, 1.0L));
    return result;
  }
  const double diff = std::abs(static_cast<double>(b - c)) - 1.0;  // continuity correction
  result.statistic = diff * diff / static_cast<double>(n);
  result.p_value = chi_square_df1_survival(result.statistic);
  return result;
}

VifResult vif(const Eigen::MatrixXd& columns) {
  const long p = columns.cols();
  const long n = columns.rows();
  if (p < 1) throw Error("domain", "vif needs at least one column");
  if (n < 3) throw Error("domain", "vif needs at least three rows");

  constexpr double kCap = 1e12;
  VifResult result;
  if (p == 1) {
    result.values = {1.0};
    result.capped = {0};
    return result;
  }

  for (long j = 0; j < p; ++j) {
    const Eigen::VectorXd target = columns.col(j);
    const double mean = target.mean();
    const double total_ss = (target.array() - mean).square().sum();
    if (total_ss == 0.0) throw Error("domain", "vif column " + std::to_string(j) + " is constant");

    Eigen::MatrixXd aux(n, p);  // intercept + the other columns
    aux.col(0).setOnes();
    long out = 1;
    for (long other = 0; other < p; ++other) {
      if (other == j) continue;
      aux.col(out++) = columns.col(other);
    }
    const Eigen::VectorXd coefficients = aux.colPivHouseholderQr().solve(target);
    const double residual_ss = (target - aux * coefficients).squaredNorm();
    const double r_squared = 1.0 - residual_ss / total_ss;
    if (r_squared >= 1.0 - 1e-12) {
      result.values.push_back(kCap);
      result.capped.push_back(1);
    } else {
      result.values.push_back(1.0 / (1.0 - r_squared));
      result.capped.push_back(0);
    }
  }
  return result;
}

}  // namespace ordolex
