#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "ordolex/stats.hpp"

namespace ordolex {

enum class Feature { cl_last, total_dl };
std::string to_string(Feature f);

struct FeatureVector {
  double cl_last = 0.0;
  double total_dl = 0.0;

  double get(Feature f) const { return f == Feature::cl_last ? cl_last : total_dl; }
  friend FeatureVector operator-(const FeatureVector& a, const FeatureVector& b) {
    return {a.cl_last - b.cl_last, a.total_dl - b.total_dl};
  }
};

// One training row of the pairwise ranking transformation: the difference
// between the feature vectors of an ordered (first, second) sentence pair.
// label is 1 iff the first member is the reference.
struct PairRecord {
  std::string sent_id;
  FeatureVector delta;
  int label = 0;
};

// Ordered pairs alternate orientation starting reference-first: pair k is
// (reference, variant_k) with label 1 for even k and (variant_k, reference)
// with label 0 for odd k, so per-group label counts differ by at most one.
std::vector<PairRecord> build_pairs(const FeatureVector& reference,
                                    const std::vector<FeatureVector>& variants,
                                    const std::string& sent_id);

struct FitOptions {
  bool intercept = true;
  int max_iter = 100;
  double tol = 1e-8;        // convergence: max |score| below this
  double coef_guard = 1e6;  // separable data: stop once any |coefficient| exceeds this
};

struct ModelFit {
  std::vector<std::string> feature_names;  // "(intercept)" first when present
  Eigen::VectorXd coefficients;
  Eigen::VectorXd std_errors;  // from the inverse Fisher information at the optimum
  Eigen::VectorXd z_scores;
  Eigen::VectorXd p_values;  // two-sided Wald
  double log_likelihood = 0.0;
  int iterations = 0;
  bool converged = false;
  bool guard_tripped = false;
};

// Binomial log-likelihood maximization with a logit link via iteratively
// reweighted least squares. X holds one row per observation, one column per
// feature (no intercept column; FitOptions adds it). Throws
// Error("collinear") naming the offending column on a rank-deficient design.
// Separable data trips the coefficient guard and returns converged = false.
ModelFit fit_logistic(const Eigen::MatrixXd& X, const std::vector<std::string>& names,
                      const std::vector<int>& y, const FitOptions& options = {});

struct CVReport {
  std::vector<double> fold_accuracies;  // percent, one per fold
  double mean_accuracy = 0.0;           // mean of fold accuracies
  std::vector<std::uint8_t> per_item_correct;  // indexed by input pair order
};

// Deterministic fold assignment: seeded shuffle of the group ids, then
// round-robin. Returns fold index per group. Throws
// Error("fewer-groups-than-folds") when there are fewer groups than folds.
std::vector<int> assign_folds(const std::vector<std::string>& group_ids, int k,
                              std::uint64_t seed);

// Grouped k-fold cross-validation: all pairs sharing a sent_id stay in one
// fold. Z-scoring parameters are fitted on the training pairs of each fold
// and applied to its test pairs. A test pair counts as correct when
// sign(w . delta + intercept) matches the label (score >= 0 predicts 1).
CVReport cross_validate(const std::vector<PairRecord>& pairs,
                        const std::vector<Feature>& features, int k, std::uint64_t seed,
                        const FitOptions& options = {});

struct McNemarResult {
  double statistic = 0.0;  // chi-square statistic; 0 for the exact branch
  double p_value = 1.0;
  bool exact = false;    // exact binomial branch (b + c < 25)
  bool defined = true;   // false when b + c == 0 (p reported as 1)
};

// b = items only model A got right, c = items only model B got right.
// Exact two-tailed binomial at p=0.5 for b+c < 25, else chi-square with
// continuity correction (|b-c|-1)^2/(b+c), df 1.
McNemarResult mcnemar_test(long long b, long long c);

struct VifResult {
  std::vector<double> values;
  std::vector<std::uint8_t> capped;  // perfect collinearity, value is the cap sentinel
};

// VIF_j = 1 / (1 - R^2_j), R^2_j from least-squares regression of column j on
// the remaining columns plus an intercept. A single column yields {1.0}.
VifResult vif(const Eigen::MatrixXd& columns);

}  // namespace ordolex
