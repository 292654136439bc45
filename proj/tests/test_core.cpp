#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "embalign/similarity.hpp"
#include "oracles.hpp"

using namespace embalign;

namespace {

EmbeddingMatrix rows(std::initializer_list<std::initializer_list<double>> r) {
  return EmbeddingMatrix(Matrix::from_rows(r));
}

EmbeddingMatrix random_embeddings(std::mt19937_64& rng, std::size_t n, std::size_t d) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(n * d);
  for (auto& x : v) x = g(rng);
  return EmbeddingMatrix(n, d, std::move(v));
}

}  // namespace

TEST_SUITE_BEGIN("core");

TEST_CASE("matrix types validate their invariants") {
  CHECK_THROWS_AS(SimilarityMatrix::from_rows({{0.5, 1.5}}), Error);
  CHECK_THROWS_AS(SimilarityMatrix::from_rows({{-0.1}}), Error);
  CHECK_THROWS_AS(EmbeddingMatrix(1, 1, {NAN}), Error);
  CHECK_THROWS_AS(EmbeddingMatrix(0, 3, {}), Error);
  CHECK_THROWS_AS(Matrix(2, 2, std::vector<double>{1.0}), Error);
}

TEST_CASE("cosine similarity matrix") {
  SUBCASE("identical unit vectors") {
    const auto s = cosine_similarity_matrix(rows({{1, 0}}), rows({{1, 0}}));
    CHECK(s(0, 0) == 1.0);
  }
  SUBCASE("orthogonal vectors map to the midpoint") {
    const auto s = cosine_similarity_matrix(rows({{1, 0}}), rows({{0, 1}}));
    CHECK(s(0, 0) == 0.5);
  }
  SUBCASE("opposite vectors map to zero") {
    const auto s = cosine_similarity_matrix(rows({{1, 0}}), rows({{-1, 0}}));
    CHECK(s(0, 0) == 0.0);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(cosine_similarity_matrix(rows({{1, 0}}), rows({{1, 0, 0}})), Error);
  }
  SUBCASE("zero-norm rows give zero similarity and a warning") {
    std::vector<std::string> warnings;
    const auto s = cosine_similarity_matrix(rows({{0, 0}, {1, 1}}), rows({{1, 1}, {0, 0}}),
                                            [&](const std::string& m) { warnings.push_back(m); });
    CHECK(s(0, 0) == 0.0);
    CHECK(s(0, 1) == 0.0);
    CHECK(s(1, 1) == 0.0);
    CHECK(s(1, 0) == doctest::Approx(1.0));
    REQUIRE(warnings.size() == 2);
    CHECK(warnings[0].find("source") != std::string::npos);
  }
}

TEST_CASE("cosine similarity: swapping arguments transposes") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_embeddings(rng, 1 + t % 6, 5);
    const auto b = random_embeddings(rng, 1 + (t * 7) % 5, 5);
    const auto ab = cosine_similarity_matrix(a, b);
    const auto ba = cosine_similarity_matrix(b, a);
    for (std::size_t i = 0; i < ab.rows(); ++i)
      for (std::size_t j = 0; j < ab.cols(); ++j) CHECK(std::abs(ab(i, j) - ba(j, i)) <= 1e-6);
  }
}

TEST_CASE("cosine similarity: scaling a source row keeps its argmax") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_embeddings(rng, 4, 6);
    const auto b = random_embeddings(rng, 5, 6);
    std::vector<double> scaled = a.matrix().values();
    const double c = scale(rng);
    for (std::size_t k = 0; k < 6; ++k) scaled[k] *= c;  // row 0
    const auto s1 = cosine_similarity_matrix(a, b);
    const auto s2 = cosine_similarity_matrix(EmbeddingMatrix(4, 6, scaled), b);
    const auto r1 = s1.row(0);
    const auto r2 = s2.row(0);
    CHECK(std::max_element(r1.begin(), r1.end()) - r1.begin() ==
          std::max_element(r2.begin(), r2.end()) - r2.begin());
  }
}

TEST_CASE("distortion prior") {
  const auto s = SimilarityMatrix::from_rows({{0.8, 0.6}, {0.4, 0.2}});
  SUBCASE("kappa 0 is the identity") { CHECK(apply_distortion(s, 0.0) == s); }
  SUBCASE("equal relative positions are untouched") {
    const auto d = apply_distortion(s, 0.5);
    CHECK(d(0, 0) == 0.8);
    CHECK(d(1, 1) == 0.2);
  }
  SUBCASE("off-diagonal factor 0.875 for 2x2 at kappa 0.5") {
    const auto ones = SimilarityMatrix(Matrix(2, 2, 1.0));
    const auto d = apply_distortion(ones, 0.5);
    CHECK(d(0, 1) == doctest::Approx(0.875).epsilon(1e-15));
    CHECK(d(1, 0) == doctest::Approx(0.875).epsilon(1e-15));
  }
  SUBCASE("kappa out of range") { CHECK_THROWS_AS(apply_distortion(s, 1.5), Error); }
}

TEST_CASE("distortion strictly shrinks entries off the relative diagonal") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 30; ++t) {
    const std::size_t le = 1 + t % 7;
    const std::size_t lf = 1 + (t * 3) % 5;
    auto s = oracle::random_similarity(rng, le, lf);
    const auto d = apply_distortion(s, 0.7);
    for (std::size_t i = 0; i < le; ++i) {
      for (std::size_t j = 0; j < lf; ++j) {
        CHECK(d(i, j) >= 0.0);
        CHECK(d(i, j) <= 1.0);
        // Compare relative positions exactly via cross-multiplication.
        if ((i + 1) * lf == (j + 1) * le) {
          CHECK(d(i, j) == s(i, j));
        } else {
          CHECK(d(i, j) < s(i, j));
        }
      }
    }
  }
}

TEST_CASE("subword pooling") {
  SUBCASE("single-subword words are unchanged") {
    const auto e = rows({{1, 2}, {3, 4}});
    CHECK(pool_subword_to_word(e, {{0, 1}, {1, 2}}) == e);
  }
  SUBCASE("two-row span averages to the midpoint") {
    const auto out = pool_subword_to_word(rows({{1, 0}, {0, 1}}), {{0, 2}});
    CHECK(out(0, 0) == 0.5);
    CHECK(out(0, 1) == 0.5);
  }
  SUBCASE("identical rows pool to themselves") {
    const double v = 0.1;
    const auto out = pool_subword_to_word(rows({{v, -v}, {v, -v}, {v, -v}}), {{0, 3}});
    CHECK(out(0, 0) == v);
    CHECK(out(0, 1) == -v);
  }
  SUBCASE("invalid spans") {
    CHECK_THROWS_AS(pool_subword_to_word(rows({{1}, {2}}), {{0, 0}, {0, 2}}), Error);
    CHECK_THROWS_AS(pool_subword_to_word(rows({{1}, {2}}), {{0, 1}}), Error);
  }
}

TEST_CASE("pooled values stay within the componentwise range of their span") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 50; ++t) {
    const auto e = random_embeddings(rng, 6, 4);
    const WordSpans spans{{0, 3}, {3, 4}, {4, 6}};
    const auto out = pool_subword_to_word(e, spans);
    for (std::size_t w = 0; w < spans.size(); ++w) {
      for (std::size_t k = 0; k < 4; ++k) {
        double lo = e(spans[w].start, k);
        double hi = lo;
        for (std::size_t r = spans[w].start; r < spans[w].end; ++r) {
          lo = std::min(lo, e(r, k));
          hi = std::max(hi, e(r, k));
        }
        CHECK(out(w, k) >= lo);
        CHECK(out(w, k) <= hi);
      }
    }
  }
}

TEST_CASE("extraction config defaults and validation") {
  ExtractionConfig cfg;
  CHECK(cfg.n_max == 2);
  CHECK(cfg.alpha == 0.9);
  CHECK(cfg.kappa == 0.5);
  CHECK(cfg.null_percentile == 95.0);
  CHECK_NOTHROW(cfg.validate());
  cfg.alpha = 1.1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.null_percentile = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.n_max = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("sentence pair invariants") {
  TokenizedSentencePair p{"p1", {"a", "b"}, {"x"}, WordSpans{{0, 2}}, std::nullopt};
  CHECK_NOTHROW(p.validate());
  p.src_word_spans = WordSpans{{0, 1}, {2, 2}};
  CHECK_THROWS_AS(p.validate(), Error);
  p.src_word_spans.reset();
  p.tgt_tokens.clear();
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_SUITE_END();
