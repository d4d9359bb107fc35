// Multimodal fusion and action prediction: a bag-of-embeddings utterance
// encoder, tanh context embedding, scaled dot-product attention fusion, a
// softmax action head plus per-attribute sigmoid heads, analytic gradients,
// and a seeded Adam trainer with value clipping.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <simmc/environment.hpp>
#include <simmc/text.hpp>

namespace simmc::fusion {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using json = nlohmann::json;

class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// Configuration

struct ModelConfig {
  int d_w = 32;          // word-embedding size
  int d_h = 32;          // hidden size; fused width is 2*d_h
  int d_f = 16;          // tag / value feature width; unit width d_m = 2*d_f
  int value_buckets = 256;
  int min_count = 5;     // vocabulary threshold
  double learning_rate = 1e-4;
  double clip = 1.0;     // per-value gradient clip bound
  std::vector<std::string> actions;
  std::vector<std::string> attribute_heads;
  std::vector<std::string> tags = {"left",     "center",   "right",
                                   "focused",  "current",  "memory_0",
                                   "memory_1", "memory_2", "info"};

  int d_m() const { return 2 * d_f; }
  void check() const {
    if (d_w < 1 || d_h < 1 || d_f < 1 || value_buckets < 1)
      throw ModelError("all sizes must be >= 1");
    if (actions.empty()) throw ModelError("empty action set");
  }
};

// ---------------------------------------------------------------------------
// Vocabulary (token id 0 is the reserved unknown)

struct Vocabulary {
  std::map<std::string, int> ids;

  int size() const { return static_cast<int>(ids.size()) + 1; }
  int id_of(const std::string& tok) const {
    auto it = ids.find(tok);
    return it == ids.end() ? 0 : it->second;
  }
  std::vector<int> encode(const std::string& utterance) const {
    std::vector<int> out;
    for (const auto& t : text::tokenize(utterance)) out.push_back(id_of(t));
    return out;
  }
};

inline Vocabulary build_vocab(const std::vector<std::string>& utterances,
                              int min_count) {
  std::map<std::string, int> counts;
  for (const auto& u : utterances)
    for (const auto& t : text::tokenize(u)) counts[t]++;
  Vocabulary v;
  for (const auto& [tok, c] : counts)  // lexicographic order: deterministic ids
    if (c >= min_count) v.ids.emplace(tok, static_cast<int>(v.ids.size()) + 1);
  return v;
}

// ---------------------------------------------------------------------------
// Context featurization

inline int value_bucket(const std::string& value, int buckets) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : value) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return static_cast<int>(h % static_cast<std::uint64_t>(buckets));
}

struct UnitFeature {
  int tag_id = 0;
  std::vector<int> value_ids;  // hashed attribute-value buckets
};

inline std::vector<std::string> item_value_strings(const env::CatalogItem& it) {
  std::vector<std::string> out = {"id=" + it.id, "type=" + it.type};
  for (const auto& [k, v] : it.attributes.items())
    out.push_back(k + "=" + (v.is_string() ? v.get<std::string>() : v.dump()));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<UnitFeature> featurize(const env::ActionContext& actx,
                                          const env::Catalog& catalog,
                                          const ModelConfig& cfg) {
  auto tag_id = [&](const std::string& tag) {
    auto it = std::find(cfg.tags.begin(), cfg.tags.end(), tag);
    return it == cfg.tags.end() ? 0
                                : static_cast<int>(it - cfg.tags.begin());
  };
  std::vector<UnitFeature> out;
  if (actx.is_info) {
    for (const auto& [attr, value] : actx.info_units) {
      UnitFeature f;
      f.tag_id = tag_id("info");
      f.value_ids.push_back(
          value_bucket(attr + "=" + value, cfg.value_buckets));
      out.push_back(f);
    }
  } else {
    for (const auto& unit : actx.ctx.units) {
      UnitFeature f;
      f.tag_id = tag_id(unit.tag);
      if (unit.item_id) {
        auto it = std::find_if(
            catalog.items.begin(), catalog.items.end(),
            [&](const env::CatalogItem& c) { return c.id == *unit.item_id; });
        if (it != catalog.items.end())
          for (const auto& s : item_value_strings(*it))
            f.value_ids.push_back(value_bucket(s, cfg.value_buckets));
      }
      out.push_back(f);
    }
  }
  if (out.empty()) out.push_back(UnitFeature{});
  return out;
}

// ---------------------------------------------------------------------------
// Parameters (also used as the gradient container)

struct ModelParams {
  Matrix E;       // vocab x d_w word embeddings
  Matrix W_enc;   // d_w x d_h encoder projection
  Matrix T;       // n_tags x d_f tag embeddings
  Matrix V;       // value_buckets x d_f hashed value embeddings
  Matrix W_c;     // d_m x d_h context projection
  RowVector b_c;  // d_h
  RowVector theta;  // 1 x 2*d_h action-head query
  Matrix W_a;     // 2*d_h x |actions|
  RowVector b_a;  // |actions|
  Matrix W_t;     // 2*d_h x n_attribute_heads
  RowVector b_t;  // n_attribute_heads

  std::vector<Matrix*> matrices() {
    return {&E, &W_enc, &T, &V, &W_c, &W_a, &W_t};
  }
  std::vector<RowVector*> rows() { return {&b_c, &theta, &b_a, &b_t}; }
  std::vector<const Matrix*> matrices() const {
    return {&E, &W_enc, &T, &V, &W_c, &W_a, &W_t};
  }
  std::vector<const RowVector*> rows() const {
    return {&b_c, &theta, &b_a, &b_t};
  }

  static ModelParams zeros(const ModelConfig& cfg, int vocab_size) {
    ModelParams p;
    p.E = Matrix::Zero(vocab_size, cfg.d_w);
    p.W_enc = Matrix::Zero(cfg.d_w, cfg.d_h);
    p.T = Matrix::Zero(static_cast<int>(cfg.tags.size()), cfg.d_f);
    p.V = Matrix::Zero(cfg.value_buckets, cfg.d_f);
    p.W_c = Matrix::Zero(cfg.d_m(), cfg.d_h);
    p.b_c = RowVector::Zero(cfg.d_h);
    p.theta = RowVector::Zero(2 * cfg.d_h);
    p.W_a = Matrix::Zero(2 * cfg.d_h, static_cast<int>(cfg.actions.size()));
    p.b_a = RowVector::Zero(static_cast<int>(cfg.actions.size()));
    p.W_t = Matrix::Zero(2 * cfg.d_h,
                         static_cast<int>(cfg.attribute_heads.size()));
    p.b_t = RowVector::Zero(static_cast<int>(cfg.attribute_heads.size()));
    return p;
  }

  static ModelParams init(const ModelConfig& cfg, int vocab_size,
                          std::uint64_t seed) {
    ModelParams p = zeros(cfg, vocab_size);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 0.08);
    for (Matrix* m : p.matrices())
      for (Eigen::Index j = 0; j < m->cols(); ++j)
        for (Eigen::Index i = 0; i < m->rows(); ++i) (*m)(i, j) = n(rng);
    for (RowVector* r : p.rows())
      for (Eigen::Index i = 0; i < r->size(); ++i) (*r)(i) = n(rng);
    return p;
  }
};

// ---------------------------------------------------------------------------
// Forward pieces

inline Matrix encode_utterance(const std::vector<int>& token_ids,
                               const ModelParams& p) {
  std::vector<int> ids = token_ids.empty() ? std::vector<int>{0} : token_ids;
  Matrix x(static_cast<Eigen::Index>(ids.size()), p.E.cols());
  for (size_t i = 0; i < ids.size(); ++i)
    x.row(static_cast<Eigen::Index>(i)) = p.E.row(ids[i]);
  return x * p.W_enc;
}

inline Matrix unit_matrix(const std::vector<UnitFeature>& units,
                          const ModelParams& p) {
  Eigen::Index d_f = p.T.cols();
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(units.size()), 2 * d_f);
  for (size_t i = 0; i < units.size(); ++i) {
    auto r = static_cast<Eigen::Index>(i);
    m.block(r, 0, 1, d_f) = p.T.row(units[i].tag_id);
    if (!units[i].value_ids.empty()) {
      RowVector mean = RowVector::Zero(d_f);
      for (int id : units[i].value_ids) mean += p.V.row(id);
      m.block(r, d_f, 1, d_f) = mean / double(units[i].value_ids.size());
    }
  }
  return m;
}

inline Matrix embed_context(const Matrix& m, const ModelParams& p) {
  if (m.cols() != p.W_c.rows()) throw ModelError("context width mismatch");
  return ((m * p.W_c).rowwise() + p.b_c).array().tanh().matrix();
}

// Softmax(Q K^T / sqrt(d)) V; optionally exposes the attention weights.
inline Matrix attend(const Matrix& q, const Matrix& k, const Matrix& v,
                     Matrix* weights_out = nullptr) {
  if (q.cols() != k.cols() || k.rows() != v.rows())
    throw ModelError("attention shape mismatch");
  Matrix s = q * k.transpose() / std::sqrt(static_cast<double>(q.cols()));
  Matrix a(s.rows(), s.cols());
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    RowVector row = s.row(i);
    double mx = row.maxCoeff();
    row = (row.array() - mx).exp();
    a.row(i) = row / row.sum();
  }
  if (weights_out) *weights_out = a;
  return a * v;
}

inline Matrix fuse(const Matrix& u, const Matrix& m_tilde,
                   Matrix* weights_out = nullptr) {
  if (u.cols() != m_tilde.cols()) throw ModelError("fuse width mismatch");
  Matrix m = attend(u, m_tilde, m_tilde, weights_out);
  Matrix fused(u.rows(), 2 * u.cols());
  fused << u, m;
  return fused;
}

struct Prediction {
  std::vector<double> action_probs;
  std::vector<double> attribute_probs;
};

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

inline Prediction predict_from_q(const RowVector& q, const ModelParams& p) {
  RowVector logits = q * p.W_a + p.b_a;
  double mx = logits.maxCoeff();
  RowVector e = (logits.array() - mx).exp();
  e /= e.sum();
  Prediction out;
  out.action_probs.assign(e.data(), e.data() + e.size());
  if (p.W_t.cols() > 0) {
    RowVector z = q * p.W_t + p.b_t;
    for (Eigen::Index i = 0; i < z.size(); ++i)
      out.attribute_probs.push_back(sigmoid(z(i)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Examples and the full forward/backward pass

struct Example {
  std::vector<int> token_ids;
  std::vector<UnitFeature> units;
  int action = 0;
  std::vector<double> attr_targets;  // one 0/1 per configured attribute head
  // Heads supervised on this example (the gold action's argument schema).
  // Heads outside the mask contribute neither loss nor gradient.
  std::vector<double> attr_mask;

  double mask_of(size_t k) const {
    return k < attr_mask.size() ? attr_mask[k]
                                : (k < attr_targets.size() ? 1.0 : 0.0);
  }
  double target_of(size_t k) const {
    return k < attr_targets.size() ? attr_targets[k] : 0.0;
  }
};

struct ForwardCache {
  std::vector<int> ids;
  Matrix x, u, m_raw, m_tilde, a1, m_att, fused, a2;
  RowVector q;
  Prediction pred;
};

inline ForwardCache forward(const Example& ex, const ModelParams& p) {
  ForwardCache c;
  c.ids = ex.token_ids.empty() ? std::vector<int>{0} : ex.token_ids;
  c.x.resize(static_cast<Eigen::Index>(c.ids.size()), p.E.cols());
  for (size_t i = 0; i < c.ids.size(); ++i)
    c.x.row(static_cast<Eigen::Index>(i)) = p.E.row(c.ids[i]);
  c.u = c.x * p.W_enc;
  c.m_raw = unit_matrix(ex.units, p);
  c.m_tilde = embed_context(c.m_raw, p);
  c.m_att = attend(c.u, c.m_tilde, c.m_tilde, &c.a1);
  c.fused.resize(c.u.rows(), 2 * c.u.cols());
  c.fused << c.u, c.m_att;
  Matrix q = attend(p.theta, c.fused, c.fused, &c.a2);
  c.q = q.row(0);
  c.pred = predict_from_q(c.q, p);
  return c;
}

inline Prediction predict(const Example& ex, const ModelParams& p) {
  return forward(ex, p).pred;
}

inline double loss_of(const Prediction& pred, const Example& ex) {
  double l = -std::log(std::max(pred.action_probs[ex.action], 1e-300));
  for (size_t k = 0; k < pred.attribute_probs.size(); ++k) {
    double s = std::clamp(pred.attribute_probs[k], 1e-12, 1.0 - 1e-12);
    double y = ex.target_of(k);
    l += -ex.mask_of(k) * (y * std::log(s) + (1.0 - y) * std::log(1.0 - s));
  }
  return l;
}

namespace detail {

// Given dOut for out = softmax(Q K^T / sqrt(d)) V and the cached weights A,
// accumulate dQ, dK, dV.
inline void attend_backward(const Matrix& q, const Matrix& k, const Matrix& v,
                            const Matrix& a, const Matrix& d_out, Matrix& dq,
                            Matrix& dk, Matrix& dv) {
  dv += a.transpose() * d_out;
  Matrix da = d_out * v.transpose();
  Vector rowdot = (da.array() * a.array()).rowwise().sum();
  Matrix ds =
      (a.array() * (da.array().colwise() - rowdot.array())).matrix();
  double scale = 1.0 / std::sqrt(static_cast<double>(q.cols()));
  dq += ds * k * scale;
  dk += ds.transpose() * q * scale;
}

}  // namespace detail

// Mean loss over the batch and its gradient w.r.t. every parameter.
inline double grad(const std::vector<Example>& batch, const ModelParams& p,
                   ModelParams& g) {
  if (batch.empty()) throw ModelError("empty batch");
  double total = 0.0;
  double inv = 1.0 / static_cast<double>(batch.size());
  for (const auto& ex : batch) {
    ForwardCache c = forward(ex, p);
    total += loss_of(c.pred, ex);

    Eigen::Index n_a = p.b_a.size();
    RowVector d_logits(n_a);
    for (Eigen::Index i = 0; i < n_a; ++i)
      d_logits(i) = (c.pred.action_probs[i] - (i == ex.action ? 1.0 : 0.0)) *
                    inv;
    RowVector dq = d_logits * p.W_a.transpose();
    g.W_a += c.q.transpose() * d_logits;
    g.b_a += d_logits;
    if (p.W_t.cols() > 0) {
      RowVector dz(p.W_t.cols());
      for (Eigen::Index k = 0; k < p.W_t.cols(); ++k) {
        size_t ks = static_cast<size_t>(k);
        dz(k) = ex.mask_of(ks) *
                (c.pred.attribute_probs[k] - ex.target_of(ks)) * inv;
      }
      dq += dz * p.W_t.transpose();
      g.W_t += c.q.transpose() * dz;
      g.b_t += dz;
    }

    // q = attend(theta, fused, fused)
    Matrix d_theta = Matrix::Zero(1, p.theta.size());
    Matrix d_fused = Matrix::Zero(c.fused.rows(), c.fused.cols());
    Matrix d_fused_v = Matrix::Zero(c.fused.rows(), c.fused.cols());
    detail::attend_backward(p.theta, c.fused, c.fused, c.a2, dq, d_theta,
                            d_fused, d_fused_v);
    d_fused += d_fused_v;
    g.theta += d_theta.row(0);

    // fused = [u ; m_att]
    Eigen::Index d_h = c.u.cols();
    Matrix du = d_fused.leftCols(d_h);
    Matrix dm_att = d_fused.rightCols(d_h);

    // m_att = attend(u, m_tilde, m_tilde)
    Matrix dmt = Matrix::Zero(c.m_tilde.rows(), c.m_tilde.cols());
    Matrix dmt_v = Matrix::Zero(c.m_tilde.rows(), c.m_tilde.cols());
    detail::attend_backward(c.u, c.m_tilde, c.m_tilde, c.a1, dm_att, du, dmt,
                            dmt_v);
    dmt += dmt_v;

    // m_tilde = tanh(m_raw W_c + b_c)
    Matrix dz_c =
        (dmt.array() * (1.0 - c.m_tilde.array().square())).matrix();
    g.W_c += c.m_raw.transpose() * dz_c;
    g.b_c += dz_c.colwise().sum();
    Matrix dm_raw = dz_c * p.W_c.transpose();

    // m_raw rows: [tag embedding ; mean of value embeddings]
    Eigen::Index d_f = p.T.cols();
    for (size_t i = 0; i < ex.units.size(); ++i) {
      auto r = static_cast<Eigen::Index>(i);
      g.T.row(ex.units[i].tag_id) += dm_raw.block(r, 0, 1, d_f);
      if (!ex.units[i].value_ids.empty()) {
        double w = 1.0 / static_cast<double>(ex.units[i].value_ids.size());
        for (int id : ex.units[i].value_ids)
          g.V.row(id) += dm_raw.block(r, d_f, 1, d_f) * w;
      }
    }
    if (ex.units.empty()) g.T.row(0) += dm_raw.block(0, 0, 1, d_f);

    // u = x W_enc; x rows are embedding lookups
    g.W_enc += c.x.transpose() * du;
    Matrix dx = du * p.W_enc.transpose();
    for (size_t i = 0; i < c.ids.size(); ++i)
      g.E.row(c.ids[i]) += dx.row(static_cast<Eigen::Index>(i));
  }
  return total * inv;
}

// ---------------------------------------------------------------------------
// Training: Adam with per-value gradient clipping, early stopping on dev
// action accuracy, fully deterministic in the seed.

struct TrainConfig {
  int max_steps = 500;
  int eval_every = 25;
  int patience = 8;  // eval rounds without dev improvement before stopping
};

struct LogEntry {
  int step;
  double loss;
  double dev_accuracy;
};

inline double action_accuracy(const std::vector<Example>& examples,
                              const ModelParams& p) {
  if (examples.empty()) return 0.0;
  int hit = 0;
  for (const auto& ex : examples) {
    auto pred = predict(ex, p);
    int best = 0;
    for (size_t i = 1; i < pred.action_probs.size(); ++i)
      if (pred.action_probs[i] > pred.action_probs[best])
        best = static_cast<int>(i);
    // pessimistic ties: count only a strict argmax
    bool strict = true;
    for (size_t i = 0; i < pred.action_probs.size(); ++i)
      if (static_cast<int>(i) != ex.action &&
          pred.action_probs[i] >= pred.action_probs[ex.action])
        strict = false;
    if (strict && best == ex.action) ++hit;
  }
  return static_cast<double>(hit) / examples.size();
}

struct TrainResult {
  ModelParams params;
  std::vector<LogEntry> log;
};

inline TrainResult train(const std::vector<Example>& train_split,
                         const std::vector<Example>& dev_split,
                         const ModelConfig& cfg, int vocab_size,
                         std::uint64_t seed,
                         const TrainConfig& tc = TrainConfig{}) {
  if (train_split.empty()) throw ModelError("empty train split");
  cfg.check();
  TrainResult out;
  out.params = ModelParams::init(cfg, vocab_size, seed);
  ModelParams m1 = ModelParams::zeros(cfg, vocab_size);
  ModelParams m2 = ModelParams::zeros(cfg, vocab_size);
  ModelParams best = out.params;
  double best_dev = -1.0;
  int stale = 0;
  const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

  for (int step = 1; step <= tc.max_steps; ++step) {
    ModelParams g = ModelParams::zeros(cfg, vocab_size);
    double loss = grad(train_split, out.params, g);

    auto gm = g.matrices();
    auto pm = out.params.matrices();
    auto m1m = m1.matrices();
    auto m2m = m2.matrices();
    double bc1 = 1.0 - std::pow(beta1, step);
    double bc2 = 1.0 - std::pow(beta2, step);
    for (size_t i = 0; i < gm.size(); ++i) {
      Matrix gi = gm[i]->cwiseMax(-cfg.clip).cwiseMin(cfg.clip);
      *m1m[i] = beta1 * *m1m[i] + (1 - beta1) * gi;
      *m2m[i] = beta2 * *m2m[i] + (1 - beta2) * gi.cwiseProduct(gi);
      *pm[i] -= (cfg.learning_rate * (m1m[i]->array() / bc1) /
                 ((m2m[i]->array() / bc2).sqrt() + eps))
                    .matrix();
    }
    auto gr = g.rows();
    auto pr = out.params.rows();
    auto m1r = m1.rows();
    auto m2r = m2.rows();
    for (size_t i = 0; i < gr.size(); ++i) {
      RowVector gi = gr[i]->cwiseMax(-cfg.clip).cwiseMin(cfg.clip);
      *m1r[i] = beta1 * *m1r[i] + (1 - beta1) * gi;
      *m2r[i] = beta2 * *m2r[i] + (1 - beta2) * gi.cwiseProduct(gi);
      *pr[i] -= (cfg.learning_rate * (m1r[i]->array() / bc1) /
                 ((m2r[i]->array() / bc2).sqrt() + eps))
                    .matrix();
    }

    bool eval_now = step % tc.eval_every == 0 || step == tc.max_steps;
    double dev_acc = -1.0;
    if (eval_now) {
      dev_acc = dev_split.empty()
                    ? action_accuracy(train_split, out.params)
                    : action_accuracy(dev_split, out.params);
      if (dev_acc > best_dev) {
        best_dev = dev_acc;
        best = out.params;
        stale = 0;
      } else if (++stale >= tc.patience) {
        out.log.push_back({step, loss, dev_acc});
        break;
      }
    }
    out.log.push_back({step, loss, dev_acc});
  }
  out.params = best_dev >= 0 ? best : out.params;
  return out;
}

// ---------------------------------------------------------------------------
// Model file: config + vocabulary + full-precision parameter arrays

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j) {
  Matrix m(static_cast<Eigen::Index>(j.size()),
           j.empty() ? 0 : static_cast<Eigen::Index>(j[0].size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      m(i, k) = j[i][k].get<double>();
  return m;
}

inline json model_to_json(const ModelConfig& cfg, const Vocabulary& vocab,
                          const ModelParams& p) {
  json j;
  j["config"] = {{"d_w", cfg.d_w},
                 {"d_h", cfg.d_h},
                 {"d_f", cfg.d_f},
                 {"value_buckets", cfg.value_buckets},
                 {"min_count", cfg.min_count},
                 {"learning_rate", cfg.learning_rate},
                 {"clip", cfg.clip},
                 {"actions", cfg.actions},
                 {"attribute_heads", cfg.attribute_heads},
                 {"tags", cfg.tags}};
  j["vocabulary"] = vocab.ids;
  const char* names[] = {"E", "W_enc", "T", "V", "W_c", "W_a", "W_t"};
  auto mats = p.matrices();
  for (size_t i = 0; i < mats.size(); ++i)
    j["params"][names[i]] = matrix_to_json(*mats[i]);
  const char* rnames[] = {"b_c", "theta", "b_a", "b_t"};
  auto rows = p.rows();
  for (size_t i = 0; i < rows.size(); ++i) {
    json arr = json::array();
    for (Eigen::Index k = 0; k < rows[i]->size(); ++k)
      arr.push_back((*rows[i])(k));
    j["params"][rnames[i]] = arr;
  }
  return j;
}

inline void model_from_json(const json& j, ModelConfig& cfg, Vocabulary& vocab,
                            ModelParams& p) {
  const json& c = j.at("config");
  cfg.d_w = c.at("d_w");
  cfg.d_h = c.at("d_h");
  cfg.d_f = c.at("d_f");
  cfg.value_buckets = c.at("value_buckets");
  cfg.min_count = c.at("min_count");
  cfg.learning_rate = c.at("learning_rate");
  cfg.clip = c.at("clip");
  cfg.actions = c.at("actions").get<std::vector<std::string>>();
  cfg.attribute_heads =
      c.at("attribute_heads").get<std::vector<std::string>>();
  cfg.tags = c.at("tags").get<std::vector<std::string>>();
  vocab.ids = j.at("vocabulary").get<std::map<std::string, int>>();
  const json& pj = j.at("params");
  p.E = matrix_from_json(pj.at("E"));
  p.W_enc = matrix_from_json(pj.at("W_enc"));
  p.T = matrix_from_json(pj.at("T"));
  p.V = matrix_from_json(pj.at("V"));
  p.W_c = matrix_from_json(pj.at("W_c"));
  p.W_a = matrix_from_json(pj.at("W_a"));
  p.W_t = matrix_from_json(pj.at("W_t"));
  auto row = [&](const char* name) {
    const json& a = pj.at(name);
    RowVector r(static_cast<Eigen::Index>(a.size()));
    for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = a[i].get<double>();
    return r;
  };
  p.b_c = row("b_c");
  p.theta = row("theta");
  p.b_a = row("b_a");
  p.b_t = row("b_t");
}

}  // namespace simmc::fusion
