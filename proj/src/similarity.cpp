#include "embalign/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

namespace embalign {
namespace {

std::vector<double> row_norms(const EmbeddingMatrix& e) {
  std::vector<double> norms(e.rows());
  for (std::size_t i = 0; i < e.rows(); ++i) {
    double sq = 0.0;
    for (double v : e.row(i)) sq += v * v;
    norms[i] = std::sqrt(sq);
  }
  return norms;
}

void warn_zero_rows(const std::vector<double>& norms, std::string_view side,
                    const WarningSink& warn) {
  std::ostringstream msg;
  bool any = false;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    if (norms[i] > 0.0) continue;
    msg << (any ? "," : "") << i;
    any = true;
  }
  if (any) {
    emit_warning(warn, std::string(side) + " rows with zero norm get similarity 0: " +
                           msg.str());
  }
}

}  // namespace

void emit_warning(const WarningSink& sink, const std::string& message) {
  if (sink) {
    sink(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

SimilarityMatrix cosine_similarity_matrix(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt,
                                          const WarningSink& warn) {
  if (src.dim() != tgt.dim()) {
    throw Error("embedding dimension mismatch: " + std::to_string(src.dim()) + " vs " +
                std::to_string(tgt.dim()));
  }
  const auto src_norm = row_norms(src);
  const auto tgt_norm = row_norms(tgt);
  warn_zero_rows(src_norm, "source", warn);
  warn_zero_rows(tgt_norm, "target", warn);

  Matrix s(src.rows(), tgt.rows());
  for (std::size_t i = 0; i < src.rows(); ++i) {
    if (src_norm[i] == 0.0) continue;
    const auto a = src.row(i);
    for (std::size_t j = 0; j < tgt.rows(); ++j) {
      if (tgt_norm[j] == 0.0) continue;
      const auto b = tgt.row(j);
      double dot = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) dot += a[k] * b[k];
      const double cos = dot / (src_norm[i] * tgt_norm[j]);
      s(i, j) = std::clamp((cos + 1.0) / 2.0, 0.0, 1.0);
    }
  }
  return SimilarityMatrix(std::move(s));
}

SimilarityMatrix apply_distortion(const SimilarityMatrix& s, double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw Error("kappa must be in [0,1]");
  const double le = static_cast<double>(s.rows());
  const double lf = static_cast<double>(s.cols());
  Matrix out(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j) {
      const double d = static_cast<double>(i + 1) / le - static_cast<double>(j + 1) / lf;
      out(i, j) = s(i, j) * (1.0 - kappa * d * d);
    }
  }
  return SimilarityMatrix(std::move(out));
}

EmbeddingMatrix pool_subword_to_word(const EmbeddingMatrix& e, const WordSpans& spans) {
  validate_spans(spans, e.rows());
  const std::size_t d = e.dim();
  Matrix out(spans.size(), d);
  for (std::size_t w = 0; w < spans.size(); ++w) {
    const auto& span = spans[w];
    auto dst = out.row(w);
    for (std::size_t k = 0; k < d; ++k) {
      double sum = 0.0;
      double lo = e(span.start, k);
      double hi = lo;
      for (std::size_t t = span.start; t < span.end; ++t) {
        sum += e(t, k);
        lo = std::min(lo, e(t, k));
        hi = std::max(hi, e(t, k));
      }
      // Rounding in the sum must not push the mean outside the pooled range.
      dst[k] = std::clamp(sum / static_cast<double>(span.size()), lo, hi);
    }
  }
  return EmbeddingMatrix(std::move(out));
}

}  // namespace embalign
