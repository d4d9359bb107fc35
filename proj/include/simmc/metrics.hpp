// Evaluation suite: action prediction (accuracy, perplexity, attribute
// accuracy), response scoring (BLEU-4, retrieval metrics), and dialog state
// tracking (intent/slot/coref F1), with report serialization.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <simmc/environment.hpp>
#include <simmc/label_lang.hpp>
#include <simmc/text.hpp>

namespace simmc::metrics {

using json = nlohmann::json;

class MetricError : public std::runtime_error {
 public:
  explicit MetricError(const std::string& msg) : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// Gold argument slots: a flat "key=value" view of an ApiCall's arguments.

inline void flatten_args_into(const std::string& prefix, const json& v,
                              std::vector<std::string>& out) {
  if (v.is_object()) {
    for (const auto& [k, sub] : v.items())
      flatten_args_into(prefix.empty() ? k : prefix + "." + k, sub, out);
  } else if (v.is_array()) {
    for (const auto& e : v)
      out.push_back(prefix + "=" +
                    (e.is_string() ? e.get<std::string>() : e.dump()));
  } else {
    out.push_back(prefix + "=" +
                  (v.is_string() ? v.get<std::string>() : v.dump()));
  }
}

inline std::vector<std::string> argument_slots(const env::ApiCall& call) {
  std::vector<std::string> out;
  flatten_args_into("", call.arguments, out);
  return out;
}

// ---------------------------------------------------------------------------
// Task 1: structural action prediction

struct GoldAction {
  env::ApiCall call;
};

struct ActionPrediction {
  std::map<std::string, double> distribution;      // action -> probability
  std::vector<std::string> attribute_predictions;  // predicted "key=value" slots
};

struct ActionReport {
  double accuracy = 0.0;
  double perplexity = 1.0;
  double attribute_accuracy = 0.0;
  std::map<std::string, std::map<std::string, int>> confusion;  // gold -> pred
};

inline ActionReport action_metrics(const std::vector<GoldAction>& gold,
                                   const std::vector<ActionPrediction>& pred) {
  if (gold.size() != pred.size())
    throw MetricError("gold/prediction round counts differ");
  if (gold.empty()) throw MetricError("no rounds to score");
  ActionReport rep;
  double log_sum = 0.0;
  int correct = 0;
  long attr_total = 0, attr_hit = 0;
  for (size_t i = 0; i < gold.size(); ++i) {
    const auto& dist = pred[i].distribution;
    double mass = 0.0;
    for (const auto& [a, p] : dist) {
      if (p < 0.0) throw MetricError("negative probability");
      mass += p;
    }
    if (std::abs(mass - 1.0) > 1e-6)
      throw MetricError("action distribution does not sum to 1");

    const std::string& g = gold[i].call.action;
    double pg = dist.count(g) ? dist.at(g) : 0.0;
    log_sum += std::log(std::max(pg, 1e-12));

    // pessimistic ties: gold counts only as a strict argmax
    bool strict = dist.count(g) != 0;
    std::string best_other;
    double best_other_p = -1.0;
    for (const auto& [a, p] : dist) {
      if (a == g) continue;
      if (p >= pg) strict = false;
      if (p > best_other_p) {
        best_other_p = p;
        best_other = a;
      }
    }
    std::string predicted = strict ? g : best_other;
    if (strict) ++correct;
    rep.confusion[g][predicted]++;

    std::set<std::string> predicted_slots(pred[i].attribute_predictions.begin(),
                                          pred[i].attribute_predictions.end());
    for (const auto& slot : argument_slots(gold[i].call)) {
      ++attr_total;
      if (predicted_slots.count(slot)) ++attr_hit;
    }
  }
  rep.accuracy = static_cast<double>(correct) / gold.size();
  rep.perplexity = std::exp(-log_sum / gold.size());
  rep.attribute_accuracy =
      attr_total == 0 ? 1.0 : static_cast<double>(attr_hit) / attr_total;
  return rep;
}

// ---------------------------------------------------------------------------
// Task 2: BLEU-4 and retrieval

// Corpus-level BLEU with uniform 1..4-gram weights, brevity penalty, and
// add-one smoothing on the n >= 2 precisions.
inline double bleu4(const std::vector<std::string>& references,
                    const std::vector<std::string>& hypotheses) {
  if (references.size() != hypotheses.size())
    throw MetricError("reference/hypothesis counts differ");
  long match[5] = {0, 0, 0, 0, 0};
  long total[5] = {0, 0, 0, 0, 0};
  long ref_len = 0, hyp_len = 0;
  for (size_t i = 0; i < references.size(); ++i) {
    auto ref = text::tokenize(references[i]);
    auto hyp = text::tokenize(hypotheses[i]);
    ref_len += static_cast<long>(ref.size());
    hyp_len += static_cast<long>(hyp.size());
    for (int n = 1; n <= 4; ++n) {
      std::map<std::vector<std::string>, long> ref_counts;
      for (size_t j = 0; j + n <= ref.size(); ++j)
        ref_counts[{ref.begin() + j, ref.begin() + j + n}]++;
      std::map<std::vector<std::string>, long> hyp_counts;
      for (size_t j = 0; j + n <= hyp.size(); ++j)
        hyp_counts[{hyp.begin() + j, hyp.begin() + j + n}]++;
      for (const auto& [gram, c] : hyp_counts) {
        total[n] += c;
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) match[n] += std::min(c, it->second);
      }
    }
  }
  if (hyp_len == 0) return 0.0;
  double log_p = 0.0;
  for (int n = 1; n <= 4; ++n) {
    double p;
    if (n == 1)
      p = total[1] == 0 ? 0.0
                        : static_cast<double>(match[1]) / total[1];
    else
      p = static_cast<double>(match[n] + 1) / (total[n] + 1);
    if (p <= 0.0) return 0.0;
    log_p += 0.25 * std::log(p);
  }
  double bp = hyp_len >= ref_len
                  ? 1.0
                  : std::exp(1.0 - static_cast<double>(ref_len) / hyp_len);
  return bp * std::exp(log_p);
}

struct RetrievalReport {
  double recall1 = 0.0;
  double recall5 = 0.0;
  double recall10 = 0.0;
  double mean_rank = 1.0;
  double mrr = 1.0;
};

inline RetrievalReport retrieval_metrics(const std::vector<int>& ranks) {
  if (ranks.empty()) throw MetricError("no ranks to score");
  RetrievalReport rep;
  double sum = 0.0, rr = 0.0;
  long r1 = 0, r5 = 0, r10 = 0;
  for (int r : ranks) {
    if (r < 1 || r > 100) throw MetricError("rank outside [1,100]");
    if (r <= 1) ++r1;
    if (r <= 5) ++r5;
    if (r <= 10) ++r10;
    sum += r;
    rr += 1.0 / r;
  }
  double n = static_cast<double>(ranks.size());
  rep.recall1 = r1 / n;
  rep.recall5 = r5 / n;
  rep.recall10 = r10 / n;
  rep.mean_rank = sum / n;
  rep.mrr = rr / n;
  return rep;
}

// ---------------------------------------------------------------------------
// Task 3: dialog state tracking

struct DstReport {
  double intent_precision = 0.0, intent_recall = 0.0, intent_f1 = 0.0;
  double slot_precision = 0.0, slot_recall = 0.0, slot_f1 = 0.0;
  double coref_precision = 0.0, coref_recall = 0.0, coref_f1 = 0.0;
};

namespace detail {

struct PrfCounts {
  long tp = 0, fp = 0, fn = 0;
  void add(const std::multiset<std::string>& gold,
           const std::multiset<std::string>& pred) {
    std::multiset<std::string> inter;
    std::set_intersection(gold.begin(), gold.end(), pred.begin(), pred.end(),
                          std::inserter(inter, inter.begin()));
    tp += static_cast<long>(inter.size());
    fp += static_cast<long>(pred.size() - inter.size());
    fn += static_cast<long>(gold.size() - inter.size());
  }
  double precision() const { return tp + fp == 0 ? 0.0 : double(tp) / (tp + fp); }
  double recall() const { return tp + fn == 0 ? 0.0 : double(tp) / (tp + fn); }
  double f1() const {
    double p = precision(), r = recall();
    return p + r == 0.0 ? 0.0 : 2 * p * r / (p + r);
  }
};

inline std::multiset<std::string> intent_keys(const label::BeliefFrame& f) {
  std::multiset<std::string> out;
  for (const auto& in : f.intents) out.insert(in.str());
  return out;
}

inline std::multiset<std::string> slot_keys(const label::BeliefFrame& f) {
  std::multiset<std::string> out;
  for (const auto& s : f.slots) {
    std::string intent = s.intent_index >= 0 &&
                                 s.intent_index < int(f.intents.size())
                             ? f.intents[s.intent_index].str()
                             : "?";
    out.insert(intent + "\x1f" + s.name + "\x1f" + text::normalize_span(s.value));
  }
  return out;
}

inline std::multiset<std::string> coref_keys(const label::BeliefFrame& f) {
  std::multiset<std::string> out;
  for (const auto& c : f.coref) out.insert(c.object_type + "\x1f" + c.item_id);
  return out;
}

}  // namespace detail

inline DstReport dst_metrics(const std::vector<label::BeliefFrame>& gold,
                             const std::vector<label::BeliefFrame>& pred) {
  if (gold.size() != pred.size())
    throw MetricError("gold/prediction round counts differ");
  detail::PrfCounts intents, slots, coref;
  for (size_t i = 0; i < gold.size(); ++i) {
    intents.add(detail::intent_keys(gold[i]), detail::intent_keys(pred[i]));
    slots.add(detail::slot_keys(gold[i]), detail::slot_keys(pred[i]));
    coref.add(detail::coref_keys(gold[i]), detail::coref_keys(pred[i]));
  }
  DstReport rep;
  rep.intent_precision = intents.precision();
  rep.intent_recall = intents.recall();
  rep.intent_f1 = intents.f1();
  rep.slot_precision = slots.precision();
  rep.slot_recall = slots.recall();
  rep.slot_f1 = slots.f1();
  rep.coref_precision = coref.precision();
  rep.coref_recall = coref.recall();
  rep.coref_f1 = coref.f1();
  return rep;
}

// ---------------------------------------------------------------------------
// Report document

inline double round6(double v) { return std::round(v * 1e6) / 1e6; }

inline json to_json(const ActionReport& r) {
  json conf = json::object();
  for (const auto& [g, row] : r.confusion) {
    conf[g] = json::object();
    for (const auto& [p, c] : row) conf[g][p] = c;
  }
  return {{"accuracy", round6(r.accuracy)},
          {"perplexity", round6(r.perplexity)},
          {"attribute_accuracy", round6(r.attribute_accuracy)},
          {"confusion", conf}};
}

inline json to_json(const RetrievalReport& r) {
  return {{"recall@1", round6(r.recall1)},
          {"recall@5", round6(r.recall5)},
          {"recall@10", round6(r.recall10)},
          {"mean_rank", round6(r.mean_rank)},
          {"mrr", round6(r.mrr)}};
}

inline json to_json(const DstReport& r) {
  return {{"intent_precision", round6(r.intent_precision)},
          {"intent_recall", round6(r.intent_recall)},
          {"intent_f1", round6(r.intent_f1)},
          {"slot_precision", round6(r.slot_precision)},
          {"slot_recall", round6(r.slot_recall)},
          {"slot_f1", round6(r.slot_f1)},
          {"coref_precision", round6(r.coref_precision)},
          {"coref_recall", round6(r.coref_recall)},
          {"coref_f1", round6(r.coref_f1)}};
}

// ---------------------------------------------------------------------------
// Minimal structural schema check (type/properties/required/items subset)

inline void check_schema(const json& doc, const json& schema,
                         const std::string& where = "$") {
  std::string type = schema.value("type", "");
  auto fail = [&](const std::string& msg) {
    throw MetricError("schema violation at " + where + ": " + msg);
  };
  if (type == "object") {
    if (!doc.is_object()) fail("expected object");
    for (const auto& req : schema.value("required", json::array()))
      if (!doc.contains(req.get<std::string>()))
        fail("missing required property " + req.get<std::string>());
    if (schema.contains("properties"))
      for (const auto& [k, sub] : schema["properties"].items())
        if (doc.contains(k)) check_schema(doc[k], sub, where + "." + k);
  } else if (type == "array") {
    if (!doc.is_array()) fail("expected array");
    if (schema.contains("items"))
      for (size_t i = 0; i < doc.size(); ++i)
        check_schema(doc[i], schema["items"],
                     where + "[" + std::to_string(i) + "]");
  } else if (type == "number") {
    if (!doc.is_number()) fail("expected number");
  } else if (type == "integer") {
    if (!doc.is_number_integer()) fail("expected integer");
  } else if (type == "string") {
    if (!doc.is_string()) fail("expected string");
  } else if (type == "boolean") {
    if (!doc.is_boolean()) fail("expected boolean");
  }
}

}  // namespace simmc::metrics
