#include "embalign/extract.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace embalign {
namespace {

bool all_zero(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

// Hungarian algorithm (potentials form) minimizing total cost for an n x m
// cost matrix with n <= m. Returns the column assigned to every row.
std::vector<std::size_t> solve_assignment(const Matrix& cost) {
  const std::size_t n = cost.rows();
  const std::size_t m = cost.cols();
  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based; index 0 is the virtual root.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> owner(m + 1, 0), way(m + 1, 0);

  for (std::size_t i = 1; i <= n; ++i) {
    owner[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = owner[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> col_of_row(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (owner[j] != 0) col_of_row[owner[j] - 1] = j - 1;
  }
  return col_of_row;
}

}  // namespace

AlignmentSet argmax_align(const SimilarityMatrix& s) {
  const std::size_t le = s.rows();
  const std::size_t lf = s.cols();
  AlignmentSet out(le, lf);
  if (le == 0 || lf == 0) return out;

  std::vector<std::size_t> row_best(le, 0);
  std::vector<char> row_zero(le, 0);
  for (std::size_t i = 0; i < le; ++i) {
    const auto r = s.row(i);
    row_best[i] = static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
    row_zero[i] = all_zero(r);
  }

  std::vector<std::size_t> col_best(lf, 0);
  std::vector<char> col_zero(lf, 1);
  for (std::size_t j = 0; j < lf; ++j) {
    double best = s(0, j);
    for (std::size_t i = 0; i < le; ++i) {
      const double x = s(i, j);
      if (x != 0.0) col_zero[j] = 0;
      if (x > best) {
        best = x;
        col_best[j] = i;
      }
    }
  }

  for (std::size_t i = 0; i < le; ++i) {
    const std::size_t j = row_best[i];
    if (row_zero[i] || col_zero[j] || col_best[j] != i) continue;
    out.insert({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
  }
  return out;
}

AlignmentSet itermax_align(const SimilarityMatrix& s, int n_max, double alpha) {
  if (n_max < 1) throw Error("itermax: n_max must be >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("itermax: alpha must be in [0,1]");
  const std::size_t le = s.rows();
  const std::size_t lf = s.cols();
  AlignmentSet aligned(le, lf);

  for (int n = 0; n < n_max; ++n) {
    std::vector<char> src_aligned(le, 0), tgt_aligned(lf, 0);
    for (const auto& e : aligned) {
      src_aligned[e.src] = 1;
      tgt_aligned[e.tgt] = 1;
    }
    Matrix masked(le, lf);
    for (std::size_t i = 0; i < le; ++i) {
      for (std::size_t j = 0; j < lf; ++j) {
        double mask = alpha;
        if (!src_aligned[i] && !tgt_aligned[j]) {
          mask = 1.0;
        } else if (src_aligned[i] && tgt_aligned[j]) {
          mask = 0.0;
        }
        masked(i, j) = s(i, j) * mask;
      }
    }
    bool grew = false;
    for (const auto& e : argmax_align(SimilarityMatrix(std::move(masked)))) {
      grew |= aligned.insert(e);
    }
    // An unchanged alignment yields the same mask, so later rounds add nothing.
    if (!grew) break;
  }
  return aligned;
}

AlignmentSet match_align(const SimilarityMatrix& s) {
  const std::size_t le = s.rows();
  const std::size_t lf = s.cols();
  AlignmentSet out(le, lf);
  if (le == 0 || lf == 0) return out;

  const bool transpose = le > lf;
  const Matrix weights = transpose ? s.matrix().transposed() : s.matrix();
  Matrix cost(weights.rows(), weights.cols());
  for (std::size_t i = 0; i < weights.rows(); ++i)
    for (std::size_t j = 0; j < weights.cols(); ++j) cost(i, j) = -weights(i, j);

  const auto col_of_row = solve_assignment(cost);
  for (std::size_t r = 0; r < col_of_row.size(); ++r) {
    const auto a = static_cast<std::uint32_t>(r);
    const auto b = static_cast<std::uint32_t>(col_of_row[r]);
    out.insert(transpose ? Edge{b, a} : Edge{a, b});
  }
  return out;
}

double normalized_entropy(std::span<const double> weights) {
  const std::size_t n = weights.size();
  if (n <= 1) return 0.0;
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) return 0.0;
  double h = 0.0;
  for (double w : weights) {
    if (w <= 0.0) continue;
    const double p = w / total;
    h -= p * std::log(p);
  }
  return std::clamp(h / std::log(static_cast<double>(n)), 0.0, 1.0);
}

double edge_entropy(const SimilarityMatrix& s, Edge e) {
  std::vector<double> column(s.rows());
  for (std::size_t i = 0; i < s.rows(); ++i) column[i] = s(i, e.tgt);
  return std::min(normalized_entropy(s.row(e.src)), normalized_entropy(column));
}

std::size_t CorpusAlignmentRun::edge_count() const {
  std::size_t n = 0;
  for (const auto& p : pairs) n += p.edges.size();
  return n;
}

void record_entropies(PairAlignment& pair, const SimilarityMatrix& s) {
  pair.edge_entropy.clear();
  pair.edge_entropy.reserve(pair.edges.size());
  for (const auto& e : pair.edges) pair.edge_entropy.push_back(edge_entropy(s, e));
}

double nearest_rank_percentile(std::vector<double> values, double percentile) {
  if (values.empty()) throw Error("percentile of an empty set");
  if (!(percentile > 0.0 && percentile <= 100.0)) {
    throw Error("percentile must be in (0,100]");
  }
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(percentile * n / 100.0));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

CorpusAlignmentRun null_filter(const CorpusAlignmentRun& run, double percentile) {
  std::vector<double> all;
  all.reserve(run.edge_count());
  for (const auto& p : run.pairs) {
    if (p.edge_entropy.size() != p.edges.size()) {
      throw Error("pair " + p.pair_id + ": entropy statistics were not recorded");
    }
    all.insert(all.end(), p.edge_entropy.begin(), p.edge_entropy.end());
  }
  if (all.empty()) return run;
  const double tau = nearest_rank_percentile(std::move(all), percentile);

  CorpusAlignmentRun out;
  out.pairs.reserve(run.pairs.size());
  for (const auto& p : run.pairs) {
    PairAlignment kept{p.pair_id, AlignmentSet(p.edges.src_len(), p.edges.tgt_len()), {}};
    for (std::size_t k = 0; k < p.edges.size(); ++k) {
      if (p.edge_entropy[k] > tau) continue;
      kept.edges.insert(p.edges.edges()[k]);
      kept.edge_entropy.push_back(p.edge_entropy[k]);
    }
    out.pairs.push_back(std::move(kept));
  }
  return out;
}

PairAlignment align_pair(const SimilarityMatrix& s, const ExtractionConfig& cfg,
                         std::string pair_id) {
  cfg.validate();
  const SimilarityMatrix scored = cfg.dist_enabled ? apply_distortion(s, cfg.kappa) : s;
  PairAlignment out;
  out.pair_id = std::move(pair_id);
  switch (cfg.method) {
    case Method::argmax: out.edges = argmax_align(scored); break;
    case Method::itermax: out.edges = itermax_align(scored, cfg.n_max, cfg.alpha); break;
    case Method::match: out.edges = match_align(scored); break;
  }
  if (cfg.null_enabled) record_entropies(out, scored);
  return out;
}

PairAlignment align_pair(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt,
                         const ExtractionConfig& cfg, std::string pair_id,
                         const WarningSink& warn) {
  return align_pair(cosine_similarity_matrix(src, tgt, warn), cfg, std::move(pair_id));
}

}  // namespace embalign
