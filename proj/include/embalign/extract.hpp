#pragma once

#include <string>
#include <vector>

#include "embalign/alignment.hpp"
#include "embalign/matrix.hpp"
#include "embalign/similarity.hpp"
#include "embalign/types.hpp"

namespace embalign {

/// Mutual-argmax alignment. Edge (i,j) is kept iff j is the argmax of row i
/// and i is the argmax of column j. Each scan keeps the smallest index among
/// ties. Rows and columns that are entirely zero never receive an edge.
AlignmentSet argmax_align(const SimilarityMatrix& s);

/// Iterated argmax. Each round rescales S by a mask that leaves pairs of
/// unaligned tokens alone, zeroes pairs whose tokens are both aligned, and
/// multiplies the rest by `alpha`; the mutual argmaxes of the masked matrix
/// are added to the alignment. A token may end up with several edges.
AlignmentSet itermax_align(const SimilarityMatrix& s, int n_max, double alpha);

/// Maximum-weight maximal matching. Returns exactly min(l_e, l_f) edges
/// (zero-weight edges included). Deterministic for a fixed input.
AlignmentSet match_align(const SimilarityMatrix& s);

/// Entropy of a non-negative distribution after normalizing it to sum 1,
/// divided by log(n). Returns 0 for n <= 1 or a zero-sum input.
double normalized_entropy(std::span<const double> weights);

/// min(row-entropy of S at i, column-entropy of S at j), both normalized.
double edge_entropy(const SimilarityMatrix& s, Edge e);

/// Alignment of one sentence pair together with the entropy statistic of
/// each edge (parallel to `edges.edges()`; empty when not recorded).
struct PairAlignment {
  std::string pair_id;
  AlignmentSet edges;
  std::vector<double> edge_entropy;

  bool operator==(const PairAlignment&) const = default;
};

/// Per-pair alignments of a whole corpus, in corpus order.
struct CorpusAlignmentRun {
  std::vector<PairAlignment> pairs;

  std::size_t edge_count() const;
};

/// Records the entropy statistic for every edge of `pair`.
void record_entropies(PairAlignment& pair, const SimilarityMatrix& s);

/// Nearest-rank percentile of `values`, `percentile` in (0,100].
double nearest_rank_percentile(std::vector<double> values, double percentile);

/// Corpus-level null-word filter. tau is the nearest-rank `percentile` of
/// the recorded entropy statistic over every edge in the corpus; edges with
/// a statistic above tau are removed. Every pair must carry entropies.
CorpusAlignmentRun null_filter(const CorpusAlignmentRun& run, double percentile);

/// Applies distortion (when enabled) and the configured method. Entropies
/// are recorded when the null filter is enabled; filtering itself happens
/// at corpus level.
PairAlignment align_pair(const SimilarityMatrix& s, const ExtractionConfig& cfg,
                         std::string pair_id = {});

PairAlignment align_pair(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt,
                         const ExtractionConfig& cfg, std::string pair_id = {},
                         const WarningSink& warn = {});

}  // namespace embalign
