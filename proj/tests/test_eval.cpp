#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "embalign/eval.hpp"
#include "oracles.hpp"

using namespace embalign;

namespace {

GoldAlignment sure_only(std::vector<Edge> s) { return GoldAlignment::make(std::move(s), {}); }

PairAlignment pred(std::size_t le, std::size_t lf, std::initializer_list<Edge> e,
                   std::string id = {}) {
  return {std::move(id), AlignmentSet(le, lf, e), {}};
}

void check_bounds(const ScoreReport& r) {
  CHECK(r.precision >= 0.0);
  CHECK(r.precision <= 1.0);
  CHECK(r.recall >= 0.0);
  CHECK(r.recall <= 1.0);
  CHECK(r.f1 >= 0.0);
  CHECK(r.f1 <= 1.0);
  CHECK(r.aer >= 0.0);
  CHECK(r.aer <= 1.0);
}

}  // namespace

TEST_SUITE_BEGIN("eval");

TEST_CASE("gold construction puts sure edges into possible") {
  const auto g = GoldAlignment::make({{0, 0}}, {{1, 2}});
  CHECK(g.sure.size() == 1);
  CHECK(g.possible.size() == 2);
  CHECK(g.sure.is_subset_of(g.possible));
}

TEST_CASE("score examples") {
  SUBCASE("perfect alignment") {
    const auto g = sure_only({{0, 0}, {1, 1}});
    const auto r = score(AlignmentSet(2, 2, {{0, 0}, {1, 1}}), g);
    CHECK(r.precision == 1.0);
    CHECK(r.recall == 1.0);
    CHECK(r.f1 == 1.0);
    CHECK(r.aer == 0.0);
  }
  SUBCASE("half recall") {
    const auto r = score(AlignmentSet(2, 2, {{0, 0}}), sure_only({{0, 0}, {1, 1}}));
    CHECK(r.precision == 1.0);
    CHECK(r.recall == 0.5);
    CHECK(r.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(r.aer == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }
  SUBCASE("disjoint from P") {
    const auto g = GoldAlignment::make({{0, 0}}, {{1, 1}});
    const auto r = score(AlignmentSet(2, 2, {{0, 1}, {1, 0}}), g);
    CHECK(r.precision == 0.0);
    CHECK(r.recall == 0.0);
    CHECK(r.f1 == 0.0);
    CHECK(r.aer == 1.0);
  }
  SUBCASE("possible edges count for precision only") {
    const auto g = GoldAlignment::make({{0, 0}}, {{1, 1}});
    const auto r = score(AlignmentSet(2, 2, {{0, 0}, {1, 1}}), g);
    CHECK(r.precision == 1.0);
    CHECK(r.recall == 1.0);
    // 1 - (1 + 2) / (2 + 1)
    CHECK(r.aer == 0.0);
  }
  SUBCASE("empty prediction") {
    const auto r = score(AlignmentSet(2, 2), sure_only({{0, 0}}));
    CHECK(r.precision == 0.0);
    CHECK(r.f1 == 0.0);
    CHECK(r.aer == 1.0);
  }
  SUBCASE("gold without sure edges") {
    CHECK_THROWS_AS(score(AlignmentSet(2, 2, {{0, 0}}), GoldAlignment::make({}, {{0, 0}})), Error);
  }
}

TEST_CASE("AER equals 1 - F1 when S = P; bounds hold everywhere") {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> len(1, 8);
  for (int t = 0; t < 500; ++t) {
    const std::size_t le = len(rng), lf = len(rng);
    const auto a = oracle::random_alignment(rng, le, lf, 0.3);
    auto s = oracle::random_alignment(rng, le, lf, 0.3);
    if (s.empty()) s.insert({0, 0});
    const auto g = GoldAlignment::make(s.edges(), {});
    const auto r = score(a, g);
    check_bounds(r);
    CHECK(std::abs(r.aer - (1.0 - r.f1)) <= 1e-12);

    const auto p_extra = oracle::random_alignment(rng, le, lf, 0.2);
    check_bounds(score(a, GoldAlignment::make(s.edges(), p_extra.edges())));
  }
}

TEST_CASE("adding a sure edge never lowers recall; adding a non-P edge never raises precision") {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 300; ++t) {
    const std::size_t le = 6, lf = 5;
    auto s = oracle::random_alignment(rng, le, lf, 0.3);
    if (s.empty()) s.insert({1, 1});
    const auto p = oracle::random_alignment(rng, le, lf, 0.2);
    const auto g = GoldAlignment::make(s.edges(), p.edges());
    auto a = oracle::random_alignment(rng, le, lf, 0.2);
    const auto before = score(a, g);

    auto with_sure = a;
    with_sure.insert(s.edges().front());
    CHECK(score(with_sure, g).recall >= before.recall);

    for (std::uint32_t i = 0; i < le; ++i) {
      for (std::uint32_t j = 0; j < lf; ++j) {
        if (g.possible.contains({i, j}) || a.contains({i, j})) continue;
        auto with_wrong = a;
        with_wrong.insert({i, j});
        CHECK(score(with_wrong, g).precision <= before.precision);
      }
    }
  }
}

TEST_CASE("corpus score micro-averages counts") {
  const auto g = sure_only({{0, 0}});
  const std::vector<GoldAlignment> one{g};
  const std::vector<PairAlignment> p1{pred(1, 1, {{0, 0}})};

  SUBCASE("single pair equals score") {
    const auto r = corpus_score(p1, one);
    const auto direct = score(p1[0].edges, g);
    CHECK(r.precision == direct.precision);
    CHECK(r.aer == direct.aer);
  }
  SUBCASE("duplicated pairs give the same ratios") {
    const std::vector<PairAlignment> p{pred(2, 2, {{0, 0}, {1, 0}}), pred(2, 2, {{0, 0}, {1, 0}})};
    const std::vector<GoldAlignment> gs{g, g};
    const auto twice = corpus_score(p, gs);
    const auto once = corpus_score(std::span(p).first(1), std::span(gs).first(1));
    CHECK(twice.precision == once.precision);
    CHECK(twice.recall == once.recall);
    CHECK(twice.f1 == once.f1);
    CHECK(twice.aer == once.aer);
  }
  SUBCASE("perfect pair plus empty pair") {
    const std::vector<PairAlignment> p{pred(1, 1, {{0, 0}}), pred(1, 1, {})};
    const std::vector<GoldAlignment> gs{g, g};
    const auto r = corpus_score(p, gs);
    CHECK(r.recall == 0.5);
    CHECK(r.precision == 1.0);
  }
  SUBCASE("missing gold names the pair") {
    const std::vector<PairAlignment> p{pred(1, 1, {{0, 0}}, "first"), pred(1, 1, {}, "second")};
    try {
      corpus_score(p, one);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("second") != std::string::npos);
    }
  }
  SUBCASE("mismatched ids") {
    auto gi = g;
    gi.pair_id = "other";
    const std::vector<GoldAlignment> gs{gi};
    const std::vector<PairAlignment> p{pred(1, 1, {{0, 0}}, "mine")};
    CHECK_THROWS_AS(corpus_score(p, gs), Error);
  }
}

TEST_CASE("frequency bins") {
  const std::vector<std::vector<std::string>> src{{"the", "zyzzyva"}};
  const std::vector<std::vector<std::string>> tgt{{"die", "selten"}};
  const FrequencyTable freq{{"the", 1000}, {"die", 900}, {"zyzzyva", 5}, {"selten", 1000}};
  const std::vector<GoldAlignment> gold{GoldAlignment::make({{0, 0}, {1, 1}}, {{0, 1}})};
  const std::vector<PairAlignment> p{pred(2, 2, {{0, 0}, {1, 1}, {1, 0}})};
  const double inf = std::numeric_limits<double>::infinity();

  SUBCASE("a single unbounded bin equals the corpus score") {
    const auto bins = frequency_bin_scores(p, gold, src, tgt, freq, {{0.0, inf}});
    REQUIRE(bins.size() == 1);
    const auto whole = corpus_score(p, gold);
    CHECK(bins[0].report.counts == whole.counts);
    CHECK(bins[0].report.f1 == whole.f1);
  }
  SUBCASE("edges go to the bin of their rarer word") {
    const auto bins = frequency_bin_scores(p, gold, src, tgt, freq, bins_from_bounds({0, 10, inf}));
    REQUIRE(bins.size() == 2);
    // (1,1): min(5, 1000) -> rare; (1,0): min(5, 900) -> rare; (0,0) frequent.
    CHECK(bins[0].report.counts.predicted == 2);
    CHECK(bins[0].report.counts.sure == 1);
    CHECK(bins[1].report.counts.predicted == 1);
    CHECK(bins[1].report.counts.sure == 1);
    // (0,1) possible edge: min(1000, 1000) -> frequent.
    CHECK(bins[1].report.counts.possible == 2);
    CHECK(bins[0].label == "[0,10)");
    CHECK(bins[1].label == "[10,inf)");
  }
  SUBCASE("missing words count as frequency zero; empty bins are flagged") {
    const auto bins = frequency_bin_scores(p, gold, src, tgt, FrequencyTable{},
                                           bins_from_bounds({0, 1, inf}));
    CHECK(bins[0].report.counts.predicted == 3);
    CHECK(bins[1].report.empty());
    CHECK(bins[1].report.f1 == 0.0);
  }
  SUBCASE("counts over bins sum to corpus totals") {
    const auto bins = frequency_bin_scores(p, gold, src, tgt, freq,
                                           bins_from_bounds({0, 3, 10, 950, 2000, inf}));
    ScoreCounts sum;
    for (const auto& b : bins) sum += b.report.counts;
    CHECK(sum == corpus_score(p, gold).counts);
  }
  SUBCASE("unsorted or overlapping bins") {
    CHECK_THROWS_AS(bins_from_bounds({0, 10, 5}), Error);
    CHECK_THROWS_AS(frequency_bin_scores(p, gold, src, tgt, freq, {{0, 10}, {5, inf}}), Error);
    CHECK_THROWS_AS(frequency_bin_scores(p, gold, src, tgt, freq, {{10, inf}, {0, 10}}), Error);
  }
}

TEST_CASE("tag bins") {
  const std::vector<GoldAlignment> gold{GoldAlignment::make({{0, 0}, {1, 1}}, {})};
  const std::vector<PairAlignment> p{pred(2, 2, {{0, 0}, {1, 0}})};

  SUBCASE("one shared tag equals the corpus score") {
    const std::vector<std::vector<std::string>> st{{"X", "X"}}, tt{{"X", "X"}};
    const auto bins = tag_bin_scores(p, gold, st, tt);
    REQUIRE(bins.size() == 1);
    CHECK(bins[0].report.counts == corpus_score(p, gold).counts);
  }
  SUBCASE("an edge counts under both endpoint tags") {
    const std::vector<std::vector<std::string>> st{{"DET", "NOUN"}}, tt{{"DET", "NOUN"}};
    const auto bins = tag_bin_scores(p, gold, st, tt);
    REQUIRE(bins.size() == 2);
    CHECK(bins[0].label == "DET");
    CHECK(bins[1].label == "NOUN");
    // (1,0) has NOUN on the source side and DET on the target side.
    CHECK(bins[0].report.counts.predicted == 2);
    CHECK(bins[1].report.counts.predicted == 1);
    CHECK(bins[0].report.counts.sure == 1);
    CHECK(bins[1].report.counts.sure == 1);
  }
  SUBCASE("a tag on no token gives an empty report") {
    const std::vector<std::vector<std::string>> st{{"X", "X"}}, tt{{"X", "X"}};
    const auto bins = tag_bin_scores(p, gold, st, tt, {"VERB"});
    REQUIRE(bins.size() == 1);
    CHECK(bins[0].report.empty());
  }
  SUBCASE("length mismatch") {
    const std::vector<std::vector<std::string>> st{{"X"}}, tt{{"X", "X"}};
    CHECK_THROWS_AS(tag_bin_scores(p, gold, st, tt), Error);
  }
}

TEST_SUITE_END();
