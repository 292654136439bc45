#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "embalign/matrix.hpp"

namespace embalign {

/// An alignment edge between source token `src` and target token `tgt`.
/// Ordering is row-major: by source index, then target index.
struct Edge {
  std::uint32_t src = 0;
  std::uint32_t tgt = 0;

  auto operator<=>(const Edge&) const = default;
};

/// A set of alignment edges for one sentence pair of known lengths.
///
/// Edges are kept sorted row-major and unique, so iteration order and any
/// serialized form are deterministic.
class AlignmentSet {
 public:
  AlignmentSet() = default;
  AlignmentSet(std::size_t src_len, std::size_t tgt_len)
      : src_len_(src_len), tgt_len_(tgt_len) {}
  AlignmentSet(std::size_t src_len, std::size_t tgt_len, std::initializer_list<Edge> edges);
  AlignmentSet(std::size_t src_len, std::size_t tgt_len, std::vector<Edge> edges);

  std::size_t src_len() const { return src_len_; }
  std::size_t tgt_len() const { return tgt_len_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  /// Inserts an edge; returns false if it was already present.
  /// Throws Error when the edge is out of range.
  bool insert(Edge e);
  bool contains(Edge e) const;

  const std::vector<Edge>& edges() const { return edges_; }
  auto begin() const { return edges_.begin(); }
  auto end() const { return edges_.end(); }

  AlignmentSet transposed() const;

  /// True when every edge of this set is in `other`.
  bool is_subset_of(const AlignmentSet& other) const;

  /// Same lengths and same edges.
  bool operator==(const AlignmentSet&) const = default;

 private:
  std::size_t src_len_ = 0;
  std::size_t tgt_len_ = 0;
  std::vector<Edge> edges_;
};

AlignmentSet set_union(const AlignmentSet& a, const AlignmentSet& b);
AlignmentSet set_intersection(const AlignmentSet& a, const AlignmentSet& b);

/// Sum of S over the edges of `a`.
double alignment_weight(const AlignmentSet& a, const SimilarityMatrix& s);

}  // namespace embalign
