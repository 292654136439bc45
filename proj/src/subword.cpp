#include "embalign/subword.hpp"

#include <string>

#include "embalign/matrix.hpp"

namespace embalign {
namespace {

std::vector<std::uint32_t> owner_table(const WordSpans& spans) {
  const std::size_t covered = spans.empty() ? 0 : spans.back().end;
  validate_spans(spans, covered);
  std::vector<std::uint32_t> owner(covered);
  for (std::size_t w = 0; w < spans.size(); ++w)
    for (std::size_t t = spans[w].start; t < spans[w].end; ++t)
      owner[t] = static_cast<std::uint32_t>(w);
  return owner;
}

}  // namespace

AlignmentSet convert_subword_to_word(const AlignmentSet& subword_alignment,
                                     const WordSpans& src_spans, const WordSpans& tgt_spans) {
  const auto src_owner = owner_table(src_spans);
  const auto tgt_owner = owner_table(tgt_spans);
  std::vector<Edge> words;
  words.reserve(subword_alignment.size());
  for (const auto& e : subword_alignment) {
    if (e.src >= src_owner.size()) {
      throw Error("source subword " + std::to_string(e.src) + " is outside all word spans");
    }
    if (e.tgt >= tgt_owner.size()) {
      throw Error("target subword " + std::to_string(e.tgt) + " is outside all word spans");
    }
    words.push_back({src_owner[e.src], tgt_owner[e.tgt]});
  }
  return AlignmentSet(src_spans.size(), tgt_spans.size(), std::move(words));
}

WordSpans spans_from_piece_counts(const std::vector<std::size_t>& pieces_per_word,
                                  std::size_t subword_count) {
  WordSpans spans;
  spans.reserve(pieces_per_word.size());
  std::size_t start = 0;
  for (std::size_t pieces : pieces_per_word) {
    spans.push_back({start, start + pieces});
    start += pieces;
  }
  validate_spans(spans, subword_count);
  return spans;
}

WordSpans spans_from_word_ids(const std::vector<std::size_t>& word_ids,
                              std::size_t word_count) {
  WordSpans spans;
  spans.reserve(word_count);
  for (std::size_t t = 0; t < word_ids.size(); ++t) {
    const std::size_t w = word_ids[t];
    if (w + 1 == spans.size()) {
      spans.back().end = t + 1;
    } else if (w == spans.size()) {
      spans.push_back({t, t + 1});
    } else {
      throw Error("subword " + std::to_string(t) + " maps to word " + std::to_string(w) +
                  " out of order");
    }
  }
  if (spans.size() != word_count) {
    throw Error("word ids cover " + std::to_string(spans.size()) + " words, expected " +
                std::to_string(word_count));
  }
  return spans;
}

WordSpans build_word_spans(const std::vector<std::string>& word_tokens,
                           const std::vector<std::string>& subword_tokens,
                           const WordSpans& hints) {
  if (hints.size() != word_tokens.size()) {
    throw Error("got " + std::to_string(hints.size()) + " spans for " +
                std::to_string(word_tokens.size()) + " words");
  }
  validate_spans(hints, subword_tokens.size());
  return hints;
}

}  // namespace embalign
