#pragma once

#include <functional>
#include <string>

#include "embalign/matrix.hpp"
#include "embalign/types.hpp"

namespace embalign {

/// Receives non-fatal diagnostics. An empty sink writes to stderr.
using WarningSink = std::function<void(const std::string&)>;

void emit_warning(const WarningSink& sink, const std::string& message);

/// S_ij = (cos(src_i, tgt_j) + 1) / 2, clamped to [0,1].
///
/// A zero-norm row on either side gets similarity 0 against everything and
/// a warning is sent to `warn`. Throws Error on a dimension mismatch.
SimilarityMatrix cosine_similarity_matrix(const EmbeddingMatrix& src,
                                          const EmbeddingMatrix& tgt,
                                          const WarningSink& warn = {});

/// Multiplies S by the positional prior
///   P_ij = 1 - kappa * ((i+1)/l_e - (j+1)/l_f)^2
/// so that tokens at the same relative position are untouched and the
/// strongest penalty is (1 - kappa).
SimilarityMatrix apply_distortion(const SimilarityMatrix& s, double kappa);

/// Averages subword rows into one row per word span.
EmbeddingMatrix pool_subword_to_word(const EmbeddingMatrix& e, const WordSpans& spans);

}  // namespace embalign
