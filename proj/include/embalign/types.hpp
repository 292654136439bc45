#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace embalign {

/// Half-open range [start, end) of subword indices belonging to one word.
struct WordSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start; }
  bool contains(std::size_t i) const { return i >= start && i < end; }
  bool operator==(const WordSpan&) const = default;
};

using WordSpans = std::vector<WordSpan>;

/// Throws Error unless `spans` are non-empty, sorted, disjoint and cover
/// exactly [0, token_count).
void validate_spans(const WordSpans& spans, std::size_t token_count);

struct TokenizedSentencePair {
  std::string pair_id;
  std::vector<std::string> src_tokens;
  std::vector<std::string> tgt_tokens;
  std::optional<WordSpans> src_word_spans;
  std::optional<WordSpans> tgt_word_spans;

  void validate() const;
};

enum class Method { argmax, itermax, match };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);

struct ExtractionConfig {
  Method method = Method::argmax;
  int n_max = 2;
  double alpha = 0.9;
  double kappa = 0.5;
  bool dist_enabled = false;
  bool null_enabled = false;
  double null_percentile = 95.0;

  /// Throws Error when a field is out of range.
  void validate() const;
};

}  // namespace embalign
