#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "embalign/alignment.hpp"
#include "embalign/extract.hpp"

namespace embalign {

/// Gold standard for one sentence pair. `sure` is always a subset of
/// `possible`.
struct GoldAlignment {
  std::string pair_id;
  AlignmentSet sure;
  AlignmentSet possible;
  int index_base = 1;

  /// Builds a gold alignment, inserting every sure edge into `possible`.
  static GoldAlignment make(std::vector<Edge> sure, std::vector<Edge> possible_only,
                            std::string pair_id = {});
};

/// Raw overlap counts. Summing counts and then taking ratios gives the
/// micro-averaged corpus score.
struct ScoreCounts {
  std::uint64_t predicted = 0;         // |A|
  std::uint64_t sure = 0;              // |S|
  std::uint64_t possible = 0;          // |P|
  std::uint64_t predicted_sure = 0;    // |A ∩ S|
  std::uint64_t predicted_possible = 0;  // |A ∩ P|

  ScoreCounts& operator+=(const ScoreCounts& o);
  bool operator==(const ScoreCounts&) const = default;
};

struct ScoreReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double aer = 1.0;
  ScoreCounts counts;

  /// No predicted and no gold edges at all.
  bool empty() const { return counts.predicted == 0 && counts.possible == 0; }

  /// Ratios from counts. |A| = 0 gives precision 0; |S| = 0 gives recall 0;
  /// an empty report has f1 = 0 and aer = 1.
  static ScoreReport from_counts(const ScoreCounts& c);
};

ScoreCounts count_overlap(const AlignmentSet& predicted, const GoldAlignment& gold);

/// Scores one alignment. Throws Error when the gold has no sure edges.
ScoreReport score(const AlignmentSet& predicted, const GoldAlignment& gold);

/// Micro-averaged score over a corpus. Pairs are matched by position; a gold
/// with a non-empty id must carry the same id as its prediction. Throws
/// Error naming the first pair without gold, and when |S| is 0 corpus-wide.
ScoreReport corpus_score(std::span<const PairAlignment> predicted,
                         std::span<const GoldAlignment> golds);

/// Half-open frequency bin [lower, upper).
struct FrequencyBin {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

/// Consecutive bins from boundaries b0 < b1 < ... < bk. Throws Error when
/// fewer than two boundaries are given or they are not strictly increasing.
std::vector<FrequencyBin> bins_from_bounds(const std::vector<double>& bounds);

struct BinReport {
  std::string label;
  ScoreReport report;
};

using FrequencyTable = std::unordered_map<std::string, std::uint64_t>;

/// Scores per frequency bin. Each edge of A, S and P goes to the bin that
/// holds min(freq(source word), freq(target word)); words missing from the
/// table count as frequency 0. Throws Error on unsorted or overlapping bins.
std::vector<BinReport> frequency_bin_scores(
    std::span<const PairAlignment> predicted, std::span<const GoldAlignment> golds,
    std::span<const std::vector<std::string>> src_words,
    std::span<const std::vector<std::string>> tgt_words, const FrequencyTable& freq,
    const std::vector<FrequencyBin>& bins);

/// Scores per tag, restricting A, S and P to edges where at least one
/// endpoint carries the tag. An edge whose endpoints carry two different
/// tags counts under both. With `tags` empty every observed tag is
/// reported, sorted.
std::vector<BinReport> tag_bin_scores(std::span<const PairAlignment> predicted,
                                      std::span<const GoldAlignment> golds,
                                      std::span<const std::vector<std::string>> src_tags,
                                      std::span<const std::vector<std::string>> tgt_tags,
                                      const std::vector<std::string>& tags = {});

}  // namespace embalign
