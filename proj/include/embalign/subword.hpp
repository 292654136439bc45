#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "embalign/alignment.hpp"
#include "embalign/types.hpp"

namespace embalign {

/// Lifts a subword alignment to words: two words are aligned if any of
/// their subwords are. Throws Error if an edge falls outside every span.
AlignmentSet convert_subword_to_word(const AlignmentSet& subword_alignment,
                                     const WordSpans& src_spans,
                                     const WordSpans& tgt_spans);

/// Builds spans from the number of pieces each word was split into.
WordSpans spans_from_piece_counts(const std::vector<std::size_t>& pieces_per_word,
                                  std::size_t subword_count);

/// Builds spans from a per-subword word index (the "word_ids" form emitted
/// by most tokenizers). Indices must be non-decreasing and contiguous from 0.
WordSpans spans_from_word_ids(const std::vector<std::size_t>& word_ids,
                              std::size_t word_count);

/// Validates and normalizes externally supplied spans against the word and
/// subword sequences. Errors name the offending index.
WordSpans build_word_spans(const std::vector<std::string>& word_tokens,
                           const std::vector<std::string>& subword_tokens,
                           const WordSpans& hints);

}  // namespace embalign
