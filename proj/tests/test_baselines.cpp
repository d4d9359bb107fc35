#include <catch2/catch_amalgamated.hpp>

#include <simmc/baselines.hpp>

using namespace simmc::baselines;

static const std::vector<TrainExample> kToyTrain = {
    {"red sofa", "A"}, {"red table", "B"}, {"blue table lamp", "B"}};

TEST_CASE("idf of a token present in every document is 1") {
  auto index = build_index(
      {{"red sofa", "A"}, {"red table", "B"}, {"red lamp", "B"}});
  CHECK(index.idf[index.vocab.at("red")] == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("unseen query tokens are ignored") {
  auto index = build_index(kToyTrain);
  auto v = index.vectorize("red zeppelin");
  REQUIRE(v.size() == 1);
  CHECK(v.count(index.vocab.at("red")) == 1);
}

TEST_CASE("3-document toy index matches hand-computed weights") {
  auto index = build_index(kToyTrain);
  // N = 3; idf = ln((N+1)/(df+1)) + 1
  CHECK(index.idf[index.vocab.at("red")] ==
        Catch::Approx(1.2876820724517808).margin(1e-12));  // df = 2
  CHECK(index.idf[index.vocab.at("sofa")] ==
        Catch::Approx(1.6931471805599454).margin(1e-12));  // df = 1
  // centroid A is doc 1 itself; centroid B averages docs 2 and 3
  const auto& ca = index.centroids.at("A");
  CHECK(ca.at(index.vocab.at("red")) == Catch::Approx(1.2876820724517808));
  CHECK(ca.at(index.vocab.at("sofa")) == Catch::Approx(1.6931471805599454));
  const auto& cb = index.centroids.at("B");
  CHECK(cb.at(index.vocab.at("red")) ==
        Catch::Approx(1.2876820724517808 / 2));
  CHECK(cb.at(index.vocab.at("table")) == Catch::Approx(1.2876820724517808));

  auto dist = classify_action("red sofa", index);
  CHECK(dist.at("A") == Catch::Approx(0.6882284341021454).margin(1e-9));
  CHECK(dist.at("B") == Catch::Approx(0.31177156589785465).margin(1e-9));
}

TEST_CASE("utterance identical to a single-class doc picks that class") {
  auto index = build_index(kToyTrain);
  auto dist = classify_action("red sofa", index);
  CHECK(dist.at("A") > dist.at("B"));
  double mass = 0;
  for (const auto& [a, p] : dist) mass += p;
  CHECK(mass == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("empty utterance yields the uniform distribution") {
  auto index = build_index(kToyTrain);
  auto dist = classify_action("", index);
  CHECK(dist.at("A") == Catch::Approx(0.5));
  CHECK(dist.at("B") == Catch::Approx(0.5));
}

TEST_CASE("argmax is invariant under df-preserving token renaming") {
  std::vector<TrainExample> renamed;
  for (const auto& ex : kToyTrain) {
    std::string u;
    for (const auto& t : simmc::text::tokenize(ex.utterance)) {
      if (!u.empty()) u += ' ';
      u += "tok" + t;
    }
    renamed.push_back({u, ex.action});
  }
  auto a = classify_action("red sofa", build_index(kToyTrain));
  auto b = classify_action("tokred toksofa", build_index(renamed));
  auto argmax = [](const std::map<std::string, double>& d) {
    return std::max_element(d.begin(), d.end(), [](auto& x, auto& y) {
             return x.second < y.second;
           })->first;
  };
  CHECK(argmax(a) == argmax(b));
  CHECK(a.at("A") == Catch::Approx(b.at("A")).margin(1e-12));
}

TEST_CASE("build_index rejects an empty corpus") {
  CHECK_THROWS_AS(build_index({}), BaselineError);
}

static std::vector<std::string> response_corpus() {
  std::vector<std::string> out;
  for (int i = 0; i < 150; ++i)
    out.push_back("here is assistant response number " + std::to_string(i));
  return out;
}

TEST_CASE("pools have size 100 with the ground truth exactly once") {
  auto corpus = response_corpus();
  auto pools = build_pools({corpus[3], corpus[17]}, corpus, 42);
  REQUIRE(pools.size() == 2);
  for (size_t i = 0; i < pools.size(); ++i) {
    const auto& p = pools[i];
    CHECK(p.candidates.size() == 100);
    const std::string& gold = i == 0 ? corpus[3] : corpus[17];
    CHECK(p.candidates[p.ground_truth] == gold);
    CHECK(std::count(p.candidates.begin(), p.candidates.end(), gold) == 1);
    std::set<std::string> distinct(p.candidates.begin(), p.candidates.end());
    CHECK(distinct.size() == 100);  // sampled without replacement
  }
}

TEST_CASE("same seed gives identical pools; different seed differs") {
  auto corpus = response_corpus();
  auto a = build_pools({corpus[0]}, corpus, 7);
  auto b = build_pools({corpus[0]}, corpus, 7);
  auto c = build_pools({corpus[0]}, corpus, 8);
  CHECK(a[0].candidates == b[0].candidates);
  CHECK(a[0].ground_truth == b[0].ground_truth);
  CHECK(a[0].candidates != c[0].candidates);
}

TEST_CASE("build_pools rejects corpora with under 100 distinct responses") {
  std::vector<std::string> tiny(200, "same line");
  CHECK_THROWS_AS(build_pools({"same line"}, tiny, 1), BaselineError);
}

TEST_CASE("ground truth duplicating the context ranks first") {
  auto corpus = response_corpus();
  auto index = build_index({{"unrelated training text", "A"},
                            {"here is assistant response number 5", "B"}});
  auto pools = build_pools({corpus[5]}, corpus, 3);
  auto r = rank_candidates(corpus[5], pools[0], index);
  CHECK(r.ground_truth_rank == 1);
}

TEST_CASE("all-zero scores give ground-truth rank 100") {
  auto corpus = response_corpus();
  auto index = build_index({{"vocabulary disjoint from responses", "A"}});
  auto pools = build_pools({corpus[9]}, corpus, 5);
  auto r = rank_candidates("query with no shared tokens either", pools[0],
                           index);
  CHECK(r.ground_truth_rank == 100);
}

TEST_CASE("toy 4-candidate pool matches a hand-computed ranking") {
  // Index built from the candidates themselves so every token is known and
  // has idf 1 offsets; ranking reduces to token-overlap cosine.
  auto index = build_index({{"green velvet sofa today", "A"},
                            {"green sofa here", "A"},
                            {"velvet chair", "A"},
                            {"blue lamp", "A"}});
  CandidatePool pool;
  pool.candidates = {"green sofa here", "velvet chair",
                     "green velvet sofa today", "blue lamp"};
  pool.ground_truth = 2;
  auto r = rank_candidates("green velvet sofa", pool, index);
  // candidate 2 shares all three query tokens, 0 shares two, 1 one, 3 none
  CHECK(r.order[0] == 2);
  CHECK(r.order[1] == 0);
  CHECK(r.order[2] == 1);
  CHECK(r.order[3] == 3);
  CHECK(r.ground_truth_rank == 1);
  CHECK(r.scores[2] > r.scores[0]);
  CHECK(r.scores[0] > r.scores[1]);
  CHECK(r.scores[1] > r.scores[3]);
}

TEST_CASE("rank_candidates returns a permutation with rank in [1,100]") {
  auto corpus = response_corpus();
  auto index = build_index({{"here is assistant response number 12", "A"},
                            {"something else entirely", "B"}});
  auto pools = build_pools({corpus[12], corpus[40]}, corpus, 21);
  for (const auto& pool : pools) {
    auto r = rank_candidates("assistant response number twelve", pool, index);
    std::set<int> seen(r.order.begin(), r.order.end());
    CHECK(seen.size() == 100);
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == 99);
    CHECK(r.ground_truth_rank >= 1);
    CHECK(r.ground_truth_rank <= 100);
    CHECK(r.order[r.ground_truth_rank - 1] == pool.ground_truth);
  }
}

TEST_CASE("pessimistic ties: tied distractors always outrank the truth") {
  CandidatePool pool;
  for (int i = 0; i < 100; ++i)
    pool.candidates.push_back("identical text");
  pool.ground_truth = 37;
  auto index = build_index({{"identical text", "A"}});
  auto r = rank_candidates("identical text", pool, index);
  CHECK(r.ground_truth_rank == 100);  // all scores tie; truth loses every tie
}
