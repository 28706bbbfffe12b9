#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "eegpipe/rng.hpp"

namespace eegpipe {

enum class SplitCriterion {
  Gini,     // 1 - sum p^2
  Entropy,  // -sum p log2 p
};

struct TreeParams {
  SplitCriterion criterion{SplitCriterion::Gini};
  int max_depth{-1};  // -1 = unlimited
  int min_samples_split{2};
  int min_samples_leaf{1};
  int max_features{-1};  // -1 = all; else a per-split random subset
};

// CART classifier on dense labels 0..K-1. Splits are "x[feature] <= threshold
// goes left" with thresholds at midpoints of consecutive sorted unique
// values; the first best (feature ascending, threshold ascending) wins. Leaf
// label = weighted majority, ties toward the lower label.
class DecisionTree {
 public:
  // weights: per-sample, non-negative, used by boosting; pass empty for
  // uniform. rng drives the per-split feature subset when max_features < F.
  void fit(const Eigen::MatrixXd& X, const std::vector<int>& y,
           const std::vector<double>& weights, int num_classes, const TreeParams& params,
           Rng& rng);

  int predict_one(const Eigen::VectorXd& x) const;
  std::vector<int> predict(const Eigen::MatrixXd& X) const;

 private:
  struct Node {
    int feature{-1};  // -1 = leaf
    double threshold{0.0};
    int left{-1};
    int right{-1};
    int label{0};
  };

  int build(const Eigen::MatrixXd& X, const std::vector<int>& y,
            const std::vector<double>& w, const std::vector<int>& idx, int depth,
            const TreeParams& params, int num_classes, Rng& rng);

  std::vector<Node> nodes_;
};

double gini_impurity(const std::vector<double>& class_weights, double total);
double entropy_impurity(const std::vector<double>& class_weights, double total);

}  // namespace eegpipe
