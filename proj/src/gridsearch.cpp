#include "eegpipe/gridsearch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <thread>

#include "eegpipe/rng.hpp"
#include "eegpipe/text.hpp"

namespace eegpipe {

ParamGrid default_param_grid() {
  ParamGrid g;
  g.rows.push_back(
      {ClassifierKind::RandomForest,
       {{"max_depth", {3, 5, 8, ParamValue{}}},
        {"max_features", {1, 3, 4}},
        {"min_samples_split", {2, 3, 4}},
        {"min_samples_leaf", {1, 3, 10}},
        {"bootstrap", {true, false}},
        {"criterion", {"gini", "entropy"}},
        {"n_estimators", {10, 20, 50, 100, 200}}}});
  g.rows.push_back({ClassifierKind::AdaBoost,
                    {{"learning_rate", {0.01, 0.1, 1}}, {"n_estimators", {10, 20, 50, 100}}}});
  g.rows.push_back({ClassifierKind::DecisionTree,
                    {{"max_depth", {3, 5, 8, ParamValue{}}},
                     {"min_samples_split", {2, 3, 4}},
                     {"min_samples_leaf", {1, 3, 10, 20, 30}}}});
  g.rows.push_back({ClassifierKind::GaussianProcess, {{"warm_start", {true, false}}}});
  g.rows.push_back({ClassifierKind::Mlp,
                    {{"alpha", {0.0001, 0.001, 0.01}},
                     {"learning_rate_init", {0.001, 0.01, 0.1, 0.5}},
                     {"momentum", {0.9, 0.99, 0.999}},
                     {"solver", {"lbfgs", "sgd", "adam"}},
                     {"activation", {"logistic", "tanh", "relu"}},
                     {"hidden_layer_sizes", {4, 8, 10}}}});
  g.rows.push_back({ClassifierKind::Knn,
                    {{"n_neighbors", {2, 3, 5}}, {"algorithm", {"ball_tree", "kd_tree", "brute"}}}});
  g.rows.push_back({ClassifierKind::GaussianNb, {{"priors", {ParamValue{}}}}});
  g.rows.push_back({ClassifierKind::Qda,
                    {{"priors", {ParamValue{}}}, {"reg_param", {0.0, 0.01, 0.1, 0.9}}}});
  g.rows.push_back({ClassifierKind::SvmRbf,
                    {{"C", {0.1, 0.5, 1.0}}, {"gamma", {0.1, 0.5, 1.0, 2.0, 3.0, "auto"}}}});
  g.rows.push_back(
      {ClassifierKind::SvmLinear,
       {{"C", {0.001, 0.005, 0.01, 0.025, 0.05, 0.1, 0.25, 0.5, 1.0}}}});
  return g;
}

std::vector<ClassifierSpec> expand_grid(const ParamGrid& g) {
  std::vector<ClassifierSpec> out;
  for (const GridRow& row : g.rows) {
    for (const auto& [key, values] : row.values)
      if (values.empty())
        raise(ErrorCode::InvalidGrid,
              "empty value list for '" + key + "' of " + std::string(kind_name(row.kind)));

    // Odometer over the declared parameter order, last parameter fastest.
    std::vector<std::size_t> at(row.values.size(), 0);
    bool done = false;
    while (!done) {
      ClassifierSpec spec;
      spec.kind = row.kind;
      for (std::size_t p = 0; p < row.values.size(); ++p)
        spec.params[row.values[p].first] = row.values[p].second[at[p]];
      out.push_back(std::move(spec));

      done = true;
      for (std::size_t p = row.values.size(); p-- > 0;) {
        if (++at[p] < row.values[p].second.size()) {
          done = false;
          break;
        }
        at[p] = 0;
      }
    }
  }
  return out;
}

std::vector<int> stratified_folds(const std::vector<int>& y, int k, std::uint64_t seed) {
  const int S = static_cast<int>(y.size());
  if (k < 2 || k > S) raise(ErrorCode::InvalidConfig, "fold count must lie in [2, sample count]");

  std::map<int, std::vector<int>> by_class;  // label ascending -> indices ascending
  for (int i = 0; i < S; ++i) by_class[y[static_cast<std::size_t>(i)]].push_back(i);
  for (const auto& [label, idx] : by_class)
    if (static_cast<int>(idx.size()) < k)
      raise(ErrorCode::ClassTooSmall, "class " + std::to_string(label) + " has " +
                                          std::to_string(idx.size()) + " samples, need >= " +
                                          std::to_string(k));

  Rng rng(seed);
  std::vector<int> fold(static_cast<std::size_t>(S), 0);
  // The dealing counter carries across classes so global fold sizes stay
  // within one of each other, not just within-class counts.
  int counter = 0;
  for (auto& [label, idx] : by_class) {
    rng.shuffle(idx);
    for (int i : idx) fold[static_cast<std::size_t>(i)] = counter++ % k;
  }
  return fold;
}

namespace {

std::vector<int> plain_folds(std::size_t count, int k, std::uint64_t seed) {
  std::vector<int> idx(count);
  for (std::size_t i = 0; i < count; ++i) idx[i] = static_cast<int>(i);
  Rng rng(seed);
  rng.shuffle(idx);
  std::vector<int> fold(count, 0);
  int counter = 0;
  for (int i : idx) fold[static_cast<std::size_t>(i)] = counter++ % k;
  return fold;
}

}  // namespace

CandidateResult cross_val_score(const ClassifierSpec& spec, const Dataset& d,
                                const CvConfig& cv) {
  CandidateResult result;
  result.spec = spec;

  std::vector<int> fold;
  try {
    fold = cv.stratified ? stratified_folds(d.y, cv.k, cv.seed)
                         : plain_folds(d.y.size(), cv.k, cv.seed);
  } catch (const Error& e) {
    result.status = CandidateStatus::Failed;
    result.error = e.code();
    result.error_message = e.what();
    return result;
  }

  const std::uint64_t spec_hash = fnv1a64(spec.text());
  for (int f = 0; f < cv.k; ++f) {
    Dataset train, test;
    std::vector<int> test_truth;
    std::vector<Eigen::Index> train_rows, test_rows;
    for (std::size_t i = 0; i < d.y.size(); ++i)
      (fold[i] == f ? test_rows : train_rows).push_back(static_cast<Eigen::Index>(i));

    train.X.resize(static_cast<Eigen::Index>(train_rows.size()), d.X.cols());
    for (std::size_t i = 0; i < train_rows.size(); ++i) {
      train.X.row(static_cast<Eigen::Index>(i)) = d.X.row(train_rows[i]);
      train.y.push_back(d.y[static_cast<std::size_t>(train_rows[i])]);
    }
    test.X.resize(static_cast<Eigen::Index>(test_rows.size()), d.X.cols());
    for (std::size_t i = 0; i < test_rows.size(); ++i) {
      test.X.row(static_cast<Eigen::Index>(i)) = d.X.row(test_rows[i]);
      test_truth.push_back(d.y[static_cast<std::size_t>(test_rows[i])]);
    }

    try {
      const TrainedModel model =
          fit(spec, train, derive_seed(cv.seed, {spec_hash, static_cast<std::uint64_t>(f)}));
      result.fold_scores.push_back(accuracy(test_truth, model.predict(test.X)));
    } catch (const Error& e) {
      result.status = CandidateStatus::Failed;
      result.error = e.code();
      result.error_message = e.what();
      result.fold_scores.clear();
      return result;
    }
  }

  double mean = 0.0;
  for (double s : result.fold_scores) mean += s;
  mean /= static_cast<double>(result.fold_scores.size());
  double var = 0.0;
  for (double s : result.fold_scores) var += (s - mean) * (s - mean);
  var /= static_cast<double>(result.fold_scores.size());
  result.mean_score = mean;
  result.std_score = std::sqrt(var);
  return result;
}

SearchResult grid_search(const Dataset& d, const ParamGrid& g, const CvConfig& cv,
                         int threads) {
  const std::vector<ClassifierSpec> specs = expand_grid(g);

  SearchResult result;
  result.ranked.resize(specs.size());

  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(std::max<std::size_t>(specs.size(), 1)));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      result.ranked[i] = cross_val_score(specs[i], d, cv);
    }
  };

  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::sort(result.ranked.begin(), result.ranked.end(),
            [](const CandidateResult& a, const CandidateResult& b) {
              if (a.status != b.status) return a.status == CandidateStatus::Ok;
              if (a.mean_score != b.mean_score) return a.mean_score > b.mean_score;
              return a.spec.text() < b.spec.text();
            });
  return result;
}

void write_report_csv(const SearchResult& r, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::IoFailure, "cannot write " + path.string());
  out << "rank,kind,spec,mean_score,std_score,fold_scores,status\n";
  int rank = 1;
  for (const CandidateResult& c : r.ranked) {
    out << rank++ << ',' << kind_name(c.spec.kind) << ",\"" << c.spec.text() << "\",";
    if (c.status == CandidateStatus::Ok) {
      out << format_double(c.mean_score) << ',' << format_double(c.std_score) << ",\"";
      for (std::size_t i = 0; i < c.fold_scores.size(); ++i) {
        if (i) out << ';';
        out << format_double(c.fold_scores[i]);
      }
      out << "\",ok\n";
    } else {
      out << ",,\"\",failed:" << (c.error ? error_code_name(*c.error) : "unknown") << '\n';
    }
  }
  if (!out) raise(ErrorCode::IoFailure, "write failed: " + path.string());
}

}  // namespace eegpipe
