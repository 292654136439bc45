#include "embalign/types.hpp"

#include <cmath>

#include "embalign/matrix.hpp"

namespace embalign {

void validate_spans(const WordSpans& spans, std::size_t token_count) {
  std::size_t expected = 0;
  for (std::size_t w = 0; w < spans.size(); ++w) {
    const auto& s = spans[w];
    if (s.end <= s.start) {
      throw Error("word " + std::to_string(w) + ": empty span [" + std::to_string(s.start) +
                  "," + std::to_string(s.end) + ")");
    }
    if (s.start < expected) {
      throw Error("word " + std::to_string(w) + ": span overlaps previous word at subword " +
                  std::to_string(s.start));
    }
    if (s.start > expected) {
      throw Error("word " + std::to_string(w) + ": coverage gap at subword " +
                  std::to_string(expected));
    }
    expected = s.end;
  }
  if (expected != token_count) {
    throw Error("spans cover " + std::to_string(expected) + " subwords, expected " +
                std::to_string(token_count));
  }
}

void TokenizedSentencePair::validate() const {
  if (src_tokens.empty() || tgt_tokens.empty()) {
    throw Error("pair " + pair_id + ": empty token sequence");
  }
  if (src_word_spans) validate_spans(*src_word_spans, src_tokens.size());
  if (tgt_word_spans) validate_spans(*tgt_word_spans, tgt_tokens.size());
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::argmax: return "argmax";
    case Method::itermax: return "itermax";
    case Method::match: return "match";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "argmax") return Method::argmax;
  if (name == "itermax") return Method::itermax;
  if (name == "match") return Method::match;
  throw Error("unknown method '" + std::string(name) + "'");
}

void ExtractionConfig::validate() const {
  if (n_max < 1) throw Error("n_max must be >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("alpha must be in [0,1]");
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw Error("kappa must be in [0,1]");
  if (!(null_percentile > 0.0 && null_percentile <= 100.0)) {
    throw Error("null percentile must be in (0,100]");
  }
}

}  // namespace embalign
