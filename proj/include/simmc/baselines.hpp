// Non-neural reference predictors: a TF-IDF action classifier over per-action
// centroid vectors and a TF-IDF retrieval scorer over candidate pools.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <simmc/text.hpp>

namespace simmc::baselines {

class BaselineError : public std::runtime_error {
 public:
  explicit BaselineError(const std::string& msg) : std::runtime_error(msg) {}
};

using SparseVec = std::map<int, double>;

struct TfidfIndex {
  std::map<std::string, int> vocab;          // token -> id
  std::vector<double> idf;                   // by token id
  std::map<std::string, SparseVec> centroids;  // action -> mean tf-idf vector

  // tf-idf vector of a query; unseen tokens are dropped
  SparseVec vectorize(const std::string& utterance) const {
    std::map<int, double> tf;
    for (const auto& tok : text::tokenize(utterance)) {
      auto it = vocab.find(tok);
      if (it != vocab.end()) tf[it->second] += 1.0;
    }
    SparseVec v;
    for (const auto& [id, c] : tf) v[id] = c * idf[id];
    return v;
  }
};

inline double dot(const SparseVec& a, const SparseVec& b) {
  double s = 0.0;
  for (const auto& [id, va] : a) {
    auto it = b.find(id);
    if (it != b.end()) s += va * it->second;
  }
  return s;
}

inline double norm(const SparseVec& v) { return std::sqrt(dot(v, v)); }

inline double cosine(const SparseVec& a, const SparseVec& b) {
  double na = norm(a), nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

struct TrainExample {
  std::string utterance;
  std::string action;
};

// idf = ln((N+1)/(df+1)) + 1, so a token in every document gets idf 1.
inline TfidfIndex build_index(const std::vector<TrainExample>& train) {
  if (train.empty()) throw BaselineError("empty train split");
  TfidfIndex index;
  std::vector<int> df;
  for (const auto& ex : train) {
    std::set<std::string> seen;
    for (const auto& tok : text::tokenize(ex.utterance)) {
      if (!seen.insert(tok).second) continue;
      auto [it, inserted] =
          index.vocab.emplace(tok, static_cast<int>(index.vocab.size()));
      if (inserted) df.push_back(0);
      df[it->second]++;
    }
  }
  double n = static_cast<double>(train.size());
  index.idf.resize(df.size());
  for (size_t i = 0; i < df.size(); ++i)
    index.idf[i] = std::log((n + 1.0) / (df[i] + 1.0)) + 1.0;

  std::map<std::string, int> counts;
  for (const auto& ex : train) {
    auto v = index.vectorize(ex.utterance);
    auto& c = index.centroids[ex.action];
    for (const auto& [id, w] : v) c[id] += w;
    counts[ex.action]++;
  }
  for (auto& [action, c] : index.centroids)
    for (auto& [id, w] : c) w /= counts[action];
  return index;
}

// Cosine to each action centroid, softmax-normalized. An empty or fully
// out-of-vocabulary utterance scores 0 everywhere and yields the uniform
// distribution.
inline std::map<std::string, double> classify_action(
    const std::string& utterance, const TfidfIndex& index) {
  auto q = index.vectorize(utterance);
  std::map<std::string, double> scores;
  double max_s = -1e30;
  for (const auto& [action, c] : index.centroids) {
    double s = cosine(q, c);
    scores[action] = s;
    max_s = std::max(max_s, s);
  }
  double z = 0.0;
  for (auto& [action, s] : scores) {
    s = std::exp(s - max_s);
    z += s;
  }
  for (auto& [action, s] : scores) s /= z;
  return scores;
}

struct CandidatePool {
  std::vector<std::string> candidates;  // size 100
  int ground_truth = 0;                 // index into candidates
};

// 99 distractors sampled without replacement from the distinct assistant
// utterances (excluding the ground truth), plus the ground truth itself.
inline std::vector<CandidatePool> build_pools(
    const std::vector<std::string>& gold_responses,
    const std::vector<std::string>& corpus_responses, std::uint64_t seed) {
  std::vector<std::string> distinct(corpus_responses);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  if (distinct.size() < 100)
    throw BaselineError("need at least 100 distinct assistant utterances");
  std::mt19937_64 rng(seed);
  std::vector<CandidatePool> pools;
  for (const auto& gold : gold_responses) {
    std::vector<const std::string*> others;
    others.reserve(distinct.size());
    for (const auto& s : distinct)
      if (s != gold) others.push_back(&s);
    if (others.size() < 99)
      throw BaselineError("need at least 99 distinct distractors");
    // partial Fisher-Yates: draw 99 without replacement
    CandidatePool pool;
    for (int i = 0; i < 99; ++i) {
      std::uniform_int_distribution<size_t> pick(i, others.size() - 1);
      std::swap(others[i], others[pick(rng)]);
      pool.candidates.push_back(*others[i]);
    }
    std::uniform_int_distribution<int> pos(0, 99);
    pool.ground_truth = pos(rng);
    pool.candidates.insert(pool.candidates.begin() + pool.ground_truth, gold);
    pools.push_back(std::move(pool));
  }
  return pools;
}

struct Ranking {
  std::vector<int> order;       // candidate indices, best first
  std::vector<double> scores;   // cosine per candidate, pool order
  int ground_truth_rank = 100;  // 1-based
};

// Descending cosine to the context vector; the ground truth loses all ties
// (it is ordered after every tied distractor).
inline Ranking rank_candidates(const std::string& context,
                               const CandidatePool& pool,
                               const TfidfIndex& index) {
  auto q = index.vectorize(context);
  Ranking r;
  r.scores.reserve(pool.candidates.size());
  for (const auto& c : pool.candidates)
    r.scores.push_back(cosine(q, index.vectorize(c)));
  r.order.resize(pool.candidates.size());
  for (size_t i = 0; i < r.order.size(); ++i) r.order[i] = static_cast<int>(i);
  std::stable_sort(r.order.begin(), r.order.end(), [&](int a, int b) {
    if (r.scores[a] != r.scores[b]) return r.scores[a] > r.scores[b];
    // pessimistic: any tied distractor outranks the ground truth
    return (a != pool.ground_truth) && (b == pool.ground_truth);
  });
  for (size_t i = 0; i < r.order.size(); ++i)
    if (r.order[i] == pool.ground_truth)
      r.ground_truth_rank = static_cast<int>(i) + 1;
  return r;
}

}  // namespace simmc::baselines
