#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <simmc/io.hpp>
#include <simmc/metrics.hpp>

using namespace simmc::metrics;
using simmc::env::ApiCall;
using simmc::label::BeliefCoref;
using simmc::label::BeliefFrame;
using simmc::label::BeliefSlot;
using simmc::label::IntentLabel;

static GoldAction gold(const std::string& action, json args = json::object()) {
  return GoldAction{ApiCall{action, std::move(args)}};
}

static ActionPrediction onehot(const std::string& action,
                               const std::vector<std::string>& vocab) {
  ActionPrediction p;
  for (const auto& a : vocab) p.distribution[a] = a == action ? 1.0 : 0.0;
  return p;
}

static const std::vector<std::string> kActions = {
    "SearchFurniture", "FocusOnFurniture", "RotateFurniture",
    "NavigateCarousel", "AddToCart",        "SpecifyInfo",
    "None"};

TEST_CASE("uniform distribution over 7 actions gives perplexity 7") {
  std::vector<GoldAction> g;
  std::vector<ActionPrediction> p;
  for (int i = 0; i < 10; ++i) {
    g.push_back(gold(kActions[i % kActions.size()]));
    ActionPrediction pr;
    for (const auto& a : kActions) pr.distribution[a] = 1.0 / 7.0;
    p.push_back(pr);
  }
  auto rep = action_metrics(g, p);
  CHECK(rep.perplexity == Catch::Approx(7.0).margin(1e-9));
  CHECK(rep.accuracy == 0.0);  // seven-way ties are pessimistic misses
}

TEST_CASE("gold probabilities 0.5 and 0.25 give perplexity sqrt(8)") {
  std::vector<GoldAction> g = {gold("AddToCart"), gold("SpecifyInfo")};
  ActionPrediction p1;
  p1.distribution = {{"AddToCart", 0.5}, {"None", 0.5}};
  ActionPrediction p2;
  p2.distribution = {{"SpecifyInfo", 0.25}, {"None", 0.75}};
  auto rep = action_metrics(g, {p1, p2});
  CHECK(rep.perplexity == Catch::Approx(2.8284271247461903).margin(1e-6));
}

TEST_CASE("one-hot gold predictions: accuracy 1, perplexity 1") {
  std::vector<GoldAction> g;
  std::vector<ActionPrediction> p;
  for (int i = 0; i < 14; ++i) {
    const auto& a = kActions[i % kActions.size()];
    g.push_back(gold(a));
    p.push_back(onehot(a, kActions));
  }
  auto rep = action_metrics(g, p);
  CHECK(rep.accuracy == 1.0);
  CHECK(rep.perplexity == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("perplexity of hard-zero predictions is floored, not infinite") {
  std::vector<GoldAction> g = {gold("AddToCart")};
  ActionPrediction p;
  p.distribution = {{"None", 1.0}, {"AddToCart", 0.0}};
  auto rep = action_metrics(g, {p});
  CHECK(std::isfinite(rep.perplexity));
  CHECK(rep.perplexity == Catch::Approx(1e12).epsilon(1e-6));
}

TEST_CASE("attribute accuracy is micro exact-match over gold argument slots") {
  std::vector<GoldAction> g = {
      gold("SpecifyInfo", {{"attributes", json::array({"price", "color"})}}),
      gold("SearchFurniture", {{"query", {{"type", "SOFA"}}}})};
  ActionPrediction p1 = onehot("SpecifyInfo", kActions);
  p1.attribute_predictions = {"attributes=price"};  // misses color
  ActionPrediction p2 = onehot("SearchFurniture", kActions);
  p2.attribute_predictions = {"query.type=SOFA"};
  auto rep = action_metrics(g, {p1, p2});
  CHECK(rep.attribute_accuracy == Catch::Approx(2.0 / 3.0));
}

TEST_CASE("confusion rows sum to gold counts; accuracy + off-diagonal = 1") {
  std::mt19937 rng(7);
  std::vector<GoldAction> g;
  std::vector<ActionPrediction> p;
  std::map<std::string, int> gold_counts;
  for (int i = 0; i < 200; ++i) {
    const auto& ga = kActions[rng() % kActions.size()];
    g.push_back(gold(ga));
    gold_counts[ga]++;
    p.push_back(onehot(kActions[rng() % kActions.size()], kActions));
  }
  auto rep = action_metrics(g, p);
  long off_diag = 0, total = 0;
  for (const auto& [ga, row] : rep.confusion) {
    long row_sum = 0;
    for (const auto& [pa, c] : row) {
      row_sum += c;
      total += c;
      if (pa != ga) off_diag += c;
    }
    CHECK(row_sum == gold_counts[ga]);
  }
  CHECK(total == 200);
  CHECK(rep.accuracy + static_cast<double>(off_diag) / 200 ==
        Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("action_metrics rejects bad input") {
  CHECK_THROWS_AS(action_metrics({}, {}), MetricError);
  CHECK_THROWS_AS(
      action_metrics({gold("None")}, std::vector<ActionPrediction>{}),
      MetricError);
  ActionPrediction bad;
  bad.distribution = {{"None", 0.5}};  // mass != 1
  CHECK_THROWS_AS(action_metrics({gold("None")}, {bad}), MetricError);
}

TEST_CASE("bleu4 of identical corpora is 1") {
  std::vector<std::string> refs = {"show me brown tables please",
                                   "here is a green dress for you"};
  CHECK(bleu4(refs, refs) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("bleu4 of empty hypotheses is 0") {
  CHECK(bleu4({"a b c d"}, {""}) == 0.0);
}

TEST_CASE("bleu4 hand-computed oracle") {
  // p1 = 5/5, p2 = (3+1)/(4+1), p3 = (1+1)/(3+1), p4 = (0+1)/(2+1),
  // BP = exp(1 - 6/5)
  double score = bleu4({"the cat sat on the mat"}, {"the cat on the mat"});
  CHECK(score == Catch::Approx(0.49473859088183875).margin(1e-9));
}

TEST_CASE("bleu4 is invariant under corpus permutation") {
  std::vector<std::string> refs = {"a b c d e", "x y z w", "the red sofa"};
  std::vector<std::string> hyps = {"a b c e", "x y w", "the red couch"};
  double s1 = bleu4(refs, hyps);
  std::vector<std::string> refs2 = {refs[2], refs[0], refs[1]};
  std::vector<std::string> hyps2 = {hyps[2], hyps[0], hyps[1]};
  CHECK(s1 == Catch::Approx(bleu4(refs2, hyps2)).margin(1e-12));
}

TEST_CASE("bleu4 rejects misaligned corpora") {
  CHECK_THROWS_AS(bleu4({"a"}, {"a", "b"}), MetricError);
}

TEST_CASE("retrieval: all ranks 1") {
  auto rep = retrieval_metrics(std::vector<int>(5, 1));
  CHECK(rep.recall1 == 1.0);
  CHECK(rep.recall10 == 1.0);
  CHECK(rep.mean_rank == 1.0);
  CHECK(rep.mrr == 1.0);
}

TEST_CASE("retrieval: ranks [1, 100]") {
  auto rep = retrieval_metrics({1, 100});
  CHECK(rep.recall1 == Catch::Approx(0.5));
  CHECK(rep.mean_rank == Catch::Approx(50.5));
  CHECK(rep.mrr == Catch::Approx(0.505));
}

TEST_CASE("retrieval fold matches brute-force recomputation") {
  std::mt19937 rng(11);
  std::vector<int> ranks;
  for (int i = 0; i < 500; ++i)
    ranks.push_back(1 + static_cast<int>(rng() % 100));
  auto rep = retrieval_metrics(ranks);
  // independent recomputation
  double mean = 0, mrr = 0;
  int r1 = 0, r5 = 0, r10 = 0;
  for (int r : ranks) {
    mean += r;
    mrr += 1.0 / r;
    r1 += r == 1;
    r5 += r <= 5;
    r10 += r <= 10;
  }
  CHECK(rep.mean_rank == Catch::Approx(mean / ranks.size()).margin(1e-12));
  CHECK(rep.mrr == Catch::Approx(mrr / ranks.size()).margin(1e-12));
  CHECK(rep.recall1 == Catch::Approx(double(r1) / ranks.size()));
  CHECK(rep.recall5 == Catch::Approx(double(r5) / ranks.size()));
  CHECK(rep.recall10 == Catch::Approx(double(r10) / ranks.size()));
  CHECK(rep.recall1 <= rep.recall5);
  CHECK(rep.recall5 <= rep.recall10);
  CHECK(rep.mean_rank >= 1.0);
  CHECK(rep.mean_rank <= 100.0);
  CHECK(rep.mrr >= 0.01);
  CHECK(rep.mrr <= 1.0);
}

TEST_CASE("retrieval rejects out-of-range ranks") {
  CHECK_THROWS_AS(retrieval_metrics({0}), MetricError);
  CHECK_THROWS_AS(retrieval_metrics({101}), MetricError);
  CHECK_THROWS_AS(retrieval_metrics({}), MetricError);
}

static BeliefFrame frame(
    const std::vector<std::string>& intents,
    const std::vector<BeliefSlot>& slots = {},
    const std::vector<BeliefCoref>& coref = {}) {
  BeliefFrame f;
  for (const auto& s : intents) {
    IntentLabel in;
    // "DA:ASK:GET:DRESS.price" -> fields
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
      if (c == ':') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    in.dialog_act = parts[1];
    in.activity = parts[2];
    auto dot = parts[3].find('.');
    in.object = parts[3].substr(0, dot);
    if (dot != std::string::npos) in.attribute = parts[3].substr(dot + 1);
    f.intents.push_back(in);
  }
  f.slots = slots;
  f.coref = coref;
  return f;
}

TEST_CASE("dst: predictions equal gold give F1 1") {
  std::vector<BeliefFrame> g = {
      frame({"DA:ASK:GET:DRESS.price"}, {{0, "O.color", "Hunter Green"}},
            {{0, "DRESS", "DRESS_4"}}),
      frame({"DA:REQUEST:ADD_TO_CART:SOFA"})};
  auto rep = dst_metrics(g, g);
  CHECK(rep.intent_f1 == 1.0);
  CHECK(rep.slot_f1 == 1.0);
  CHECK(rep.coref_f1 == 1.0);
}

TEST_CASE("dst: dropping one of every two gold slots") {
  std::vector<BeliefFrame> g, p;
  for (int i = 0; i < 10; ++i) {
    g.push_back(frame({"DA:INFORM:GET:TABLE"},
                      {{0, "O.color", "brown"}, {0, "O.material", "oak"}}));
    p.push_back(frame({"DA:INFORM:GET:TABLE"}, {{0, "O.color", "brown"}}));
  }
  auto rep = dst_metrics(g, p);
  CHECK(rep.slot_recall == Catch::Approx(0.5));
  CHECK(rep.slot_precision == Catch::Approx(1.0));
  CHECK(rep.slot_f1 == Catch::Approx(2.0 / 3.0));
  CHECK(rep.intent_f1 == 1.0);
}

TEST_CASE("dst: span matching normalizes case and punctuation") {
  auto g = frame({"DA:INFORM:GET:TABLE"}, {{0, "O.color", "Hunter Green."}});
  auto p = frame({"DA:INFORM:GET:TABLE"}, {{0, "O.color", "hunter green"}});
  auto rep = dst_metrics({g}, {p});
  CHECK(rep.slot_f1 == 1.0);
}

TEST_CASE("dst: precision and recall swap when gold and predicted swap") {
  std::vector<BeliefFrame> g = {
      frame({"DA:INFORM:GET:TABLE", "DA:ASK:GET:CHAIR"},
            {{0, "O.color", "brown"}, {0, "O.price", "$12"}},
            {{0, "TABLE", "TABLE_2"}})};
  std::vector<BeliefFrame> p = {
      frame({"DA:INFORM:GET:TABLE"},
            {{0, "O.color", "brown"}, {0, "O.material", "oak"},
             {0, "O.price", "$13"}},
            {{0, "TABLE", "TABLE_2"}, {0, "CHAIR", "CHAIR_1"}})};
  auto a = dst_metrics(g, p);
  auto b = dst_metrics(p, g);
  CHECK(a.intent_precision == Catch::Approx(b.intent_recall));
  CHECK(a.intent_recall == Catch::Approx(b.intent_precision));
  CHECK(a.slot_precision == Catch::Approx(b.slot_recall));
  CHECK(a.slot_recall == Catch::Approx(b.slot_precision));
  CHECK(a.coref_precision == Catch::Approx(b.coref_recall));
  CHECK(a.coref_recall == Catch::Approx(b.coref_precision));
}

TEST_CASE("dst: slot F1 decreases monotonically with corruption rate") {
  std::mt19937 rng(3);
  std::vector<BeliefFrame> g;
  for (int i = 0; i < 200; ++i)
    g.push_back(frame({"DA:INFORM:GET:TABLE"},
                      {{0, "O.color", "color" + std::to_string(i)},
                       {0, "O.price", "price" + std::to_string(i)}}));
  auto corrupt = [&](double rho, unsigned seed) {
    std::mt19937 r(seed);
    std::uniform_real_distribution<double> u(0, 1);
    auto p = g;
    for (auto& f : p)
      for (auto& s : f.slots)
        if (u(r) < rho) s.value += " xq";
    return p;
  };
  double prev = 1.1;
  for (double rho : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    auto rep = dst_metrics(g, corrupt(rho, 99));
    CHECK(rep.slot_f1 < prev + 1e-12);
    prev = rep.slot_f1;
  }
}

TEST_CASE("dst rejects misaligned rounds") {
  CHECK_THROWS_AS(dst_metrics({BeliefFrame{}}, {}), MetricError);
}

TEST_CASE("report serialization round-trips with 6-decimal values") {
  auto rep = retrieval_metrics({1, 100});
  json j = to_json(rep);
  CHECK(j["recall@1"] == 0.5);
  CHECK(j["mean_rank"] == 50.5);
  CHECK(j["mrr"] == 0.505);
  json j2 = json::parse(j.dump());
  CHECK(j2 == j);

  std::vector<GoldAction> g = {gold("None")};
  ActionPrediction p = onehot("None", kActions);
  json ja = to_json(action_metrics(g, {p}));
  CHECK(ja["accuracy"] == 1.0);
  CHECK(ja["perplexity"] == 1.0);
  CHECK(ja["confusion"]["None"]["None"] == 1);
}

TEST_CASE("full report validates against the shipped schema") {
  json schema = json::parse(
      simmc::io::slurp(simmc::io::data_dir() + "/schemas/report.json"));
  auto act = action_metrics({gold("None")}, {onehot("None", kActions)});
  auto ret = retrieval_metrics({1, 100});
  auto dst = dst_metrics({BeliefFrame{}}, {BeliefFrame{}});
  json report = {
      {"domain", "furniture"},
      {"split", "testdev"},
      {"tasks",
       {{"action_prediction", to_json(act)},
        {"response_generation",
         {{"bleu4", round6(bleu4({"a b c d"}, {"a b c d"}))},
          {"retrieval", to_json(ret)}}},
        {"state_tracking", to_json(dst)}}}};
  CHECK_NOTHROW(check_schema(report, schema));

  json broken = report;
  broken["tasks"]["action_prediction"].erase("accuracy");
  CHECK_THROWS_AS(check_schema(broken, schema), MetricError);
  json wrong_type = report;
  wrong_type["domain"] = 7;
  CHECK_THROWS_AS(check_schema(wrong_type, schema), MetricError);
}
