#include "eegpipe/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eegpipe/error.hpp"

namespace eegpipe {

double gini_impurity(const std::vector<double>& class_weights, double total) {
  if (total <= 0.0) return 0.0;
  double sum_sq = 0.0;
  for (double w : class_weights) {
    const double p = w / total;
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

double entropy_impurity(const std::vector<double>& class_weights, double total) {
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double w : class_weights) {
    if (w <= 0.0) continue;
    const double p = w / total;
    h -= p * std::log2(p);
  }
  return h;
}

namespace {

double impurity(SplitCriterion c, const std::vector<double>& cw, double total) {
  return c == SplitCriterion::Gini ? gini_impurity(cw, total) : entropy_impurity(cw, total);
}

int majority_label(const std::vector<double>& cw) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(cw.size()); ++k)
    if (cw[k] > cw[best]) best = k;  // strict: ties stay at the lower label
  return best;
}

}  // namespace

void DecisionTree::fit(const Eigen::MatrixXd& X, const std::vector<int>& y,
                       const std::vector<double>& weights, int num_classes,
                       const TreeParams& params, Rng& rng) {
  if (static_cast<std::size_t>(X.rows()) != y.size())
    raise(ErrorCode::DimensionMismatch, "tree fit: X/y row mismatch");
  if (!weights.empty() && weights.size() != y.size())
    raise(ErrorCode::DimensionMismatch, "tree fit: weight length mismatch");

  std::vector<double> w = weights;
  if (w.empty()) w.assign(y.size(), 1.0);

  std::vector<int> idx(y.size());
  std::iota(idx.begin(), idx.end(), 0);

  nodes_.clear();
  build(X, y, w, idx, 0, params, num_classes, rng);
}

int DecisionTree::build(const Eigen::MatrixXd& X, const std::vector<int>& y,
                        const std::vector<double>& w, const std::vector<int>& idx, int depth,
                        const TreeParams& params, int num_classes, Rng& rng) {
  std::vector<double> cw(static_cast<std::size_t>(num_classes), 0.0);
  double total = 0.0;
  for (int i : idx) {
    cw[static_cast<std::size_t>(y[static_cast<std::size_t>(i)])] += w[static_cast<std::size_t>(i)];
    total += w[static_cast<std::size_t>(i)];
  }

  const int node_index = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{});
  nodes_[node_index].label = majority_label(cw);

  const double node_impurity = impurity(params.criterion, cw, total) * total;
  const bool depth_capped = params.max_depth >= 0 && depth >= params.max_depth;
  if (node_impurity <= 0.0 || depth_capped ||
      static_cast<int>(idx.size()) < params.min_samples_split)
    return node_index;

  const Eigen::Index F = X.cols();
  std::vector<int> features;
  if (params.max_features > 0 && params.max_features < F) {
    // Random per-split subset, sorted so the first-best scan order stays
    // feature-ascending.
    for (std::size_t f :
         rng.sample_indices(static_cast<std::size_t>(F),
                            static_cast<std::size_t>(params.max_features)))
      features.push_back(static_cast<int>(f));
    std::sort(features.begin(), features.end());
  } else {
    features.resize(static_cast<std::size_t>(F));
    std::iota(features.begin(), features.end(), 0);
  }

  // First best split wins: features ascending, thresholds ascending.
  int best_feature = -1;
  double best_threshold = 0.0;
  double best_child_impurity = node_impurity - 1e-12;

  std::vector<std::pair<double, int>> order;  // (value, sample index)
  std::vector<double> left_cw(static_cast<std::size_t>(num_classes));
  for (int f : features) {
    order.clear();
    for (int i : idx) order.emplace_back(X(i, f), i);
    std::sort(order.begin(), order.end());

    std::fill(left_cw.begin(), left_cw.end(), 0.0);
    double left_total = 0.0;
    for (std::size_t pos = 0; pos + 1 < order.size(); ++pos) {
      const int i = order[pos].second;
      left_cw[static_cast<std::size_t>(y[static_cast<std::size_t>(i)])] +=
          w[static_cast<std::size_t>(i)];
      left_total += w[static_cast<std::size_t>(i)];

      if (order[pos].first == order[pos + 1].first) continue;  // no boundary here
      const long n_left = static_cast<long>(pos) + 1;
      const long n_right = static_cast<long>(order.size()) - n_left;
      if (n_left < params.min_samples_leaf || n_right < params.min_samples_leaf) continue;

      std::vector<double> right_cw(cw);
      for (std::size_t k = 0; k < right_cw.size(); ++k) right_cw[k] -= left_cw[k];
      const double child =
          impurity(params.criterion, left_cw, left_total) * left_total +
          impurity(params.criterion, right_cw, total - left_total) * (total - left_total);
      if (child < best_child_impurity) {
        best_child_impurity = child;
        best_feature = f;
        best_threshold = (order[pos].first + order[pos + 1].first) / 2.0;
      }
    }
  }

  if (best_feature < 0) return node_index;  // nothing reduces impurity

  std::vector<int> left_idx, right_idx;
  for (int i : idx)
    (X(i, best_feature) <= best_threshold ? left_idx : right_idx).push_back(i);

  nodes_[node_index].feature = best_feature;
  nodes_[node_index].threshold = best_threshold;
  const int left = build(X, y, w, left_idx, depth + 1, params, num_classes, rng);
  nodes_[node_index].left = left;
  const int right = build(X, y, w, right_idx, depth + 1, params, num_classes, rng);
  nodes_[node_index].right = right;
  return node_index;
}

int DecisionTree::predict_one(const Eigen::VectorXd& x) const {
  int node = 0;
  while (nodes_[static_cast<std::size_t>(node)].feature >= 0) {
    const Node& n = nodes_[static_cast<std::size_t>(node)];
    node = x[n.feature] <= n.threshold ? n.left : n.right;
  }
  return nodes_[static_cast<std::size_t>(node)].label;
}

std::vector<int> DecisionTree::predict(const Eigen::MatrixXd& X) const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(X.rows()));
  for (Eigen::Index i = 0; i < X.rows(); ++i) out.push_back(predict_one(X.row(i).transpose()));
  return out;
}

}  // namespace eegpipe
