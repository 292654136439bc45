#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "embalign/eval.hpp"
#include "embalign/extract.hpp"
#include "embalign/io.hpp"
#include "embalign/similarity.hpp"
#include "embalign/types.hpp"

namespace embalign {

/// One sentence pair ready for extraction: the similarity matrix at the
/// alignment level plus the span maps needed to lift the result to words.
struct PreparedPair {
  std::string id;
  SimilarityMatrix similarity;
  std::optional<WordSpans> src_spans;
  std::optional<WordSpans> tgt_spans;
};

struct PreparedCorpus {
  Level level = Level::word;
  std::vector<PreparedPair> pairs;
};

struct RunOptions {
  ExtractionConfig config;
  /// Alignment level. Defaults to the level of the embedding files. Word
  /// level on subword files mean-pools subword vectors into words first.
  std::optional<Level> level;
  unsigned workers = 1;
  WarningSink warn;
};

/// Pairs up source and target sentences and builds their similarity
/// matrices. Throws Error naming the first divergent id when the two files
/// disagree, or when the requested level is not available.
PreparedCorpus prepare_corpus(const EmbeddingFile& src, const EmbeddingFile& tgt,
                              const RunOptions& options);

/// Runs extraction on every pair (in parallel when workers > 1), applies the
/// corpus-level null filter when enabled and converts subword alignments to
/// word alignments. Output is independent of the worker count.
CorpusAlignmentRun align_corpus(const PreparedCorpus& corpus, const ExtractionConfig& cfg,
                                unsigned workers = 1);

struct CorpusResult {
  CorpusAlignmentRun run;
  std::optional<ScoreReport> report;
};

/// End to end: prepare, align, optionally score against `golds`.
CorpusResult run_corpus(const EmbeddingFile& src, const EmbeddingFile& tgt,
                        const RunOptions& options,
                        std::span<const GoldAlignment> golds = {});

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

enum class SweepAxis { layer, method, n_max, alpha, kappa, null_percentile, dist, null };

SweepAxis parse_sweep_axis(std::string_view name);
std::string_view to_string(SweepAxis axis);

/// Returns `cfg` with the field named by `axis` set to `value`. Sweeping
/// kappa enables distortion; sweeping the null percentile enables the null
/// filter. The layer axis leaves the config untouched.
ExtractionConfig apply_axis(ExtractionConfig cfg, SweepAxis axis, const std::string& value);

struct SweepRow {
  std::string value;
  ExtractionConfig config;
  ScoreReport report;
};

/// One row per value of a configuration axis, all on the same corpus.
std::vector<SweepRow> sweep(SweepAxis axis, const std::vector<std::string>& values,
                            const PreparedCorpus& corpus, const ExtractionConfig& base,
                            std::span<const GoldAlignment> golds, unsigned workers = 1);

/// One row per layer; `load` supplies the prepared corpus for a layer value.
std::vector<SweepRow> sweep_layers(
    const std::vector<std::string>& layers,
    const std::function<PreparedCorpus(const std::string&)>& load,
    const ExtractionConfig& cfg, std::span<const GoldAlignment> golds, unsigned workers = 1);

std::vector<std::string> config_csv_columns();
std::vector<std::string> config_csv_fields(const ExtractionConfig& cfg);

void write_score_csv(std::ostream& out, const ExtractionConfig& cfg, Level level,
                     const ScoreReport& report);
void write_sweep_csv(std::ostream& out, SweepAxis axis, Level level,
                     std::span<const SweepRow> rows);
void write_bins_csv(std::ostream& out, std::string_view kind,
                    std::span<const BinReport> bins);

}  // namespace embalign
