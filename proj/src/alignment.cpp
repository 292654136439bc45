#include "embalign/alignment.hpp"

#include <algorithm>
#include <iterator>
#include <string>

namespace embalign {
namespace {

void check_edge(const Edge& e, std::size_t src_len, std::size_t tgt_len) {
  if (e.src >= src_len || e.tgt >= tgt_len) {
    throw Error("alignment edge " + std::to_string(e.src) + "-" + std::to_string(e.tgt) +
                " outside " + std::to_string(src_len) + "x" + std::to_string(tgt_len));
  }
}

void check_same_shape(const AlignmentSet& a, const AlignmentSet& b) {
  if (a.src_len() != b.src_len() || a.tgt_len() != b.tgt_len()) {
    throw Error("alignment dimension mismatch: " + std::to_string(a.src_len()) + "x" +
                std::to_string(a.tgt_len()) + " vs " + std::to_string(b.src_len()) + "x" +
                std::to_string(b.tgt_len()));
  }
}

}  // namespace

AlignmentSet::AlignmentSet(std::size_t src_len, std::size_t tgt_len,
                           std::initializer_list<Edge> edges)
    : AlignmentSet(src_len, tgt_len, std::vector<Edge>(edges)) {}

AlignmentSet::AlignmentSet(std::size_t src_len, std::size_t tgt_len, std::vector<Edge> edges)
    : src_len_(src_len), tgt_len_(tgt_len), edges_(std::move(edges)) {
  for (const auto& e : edges_) check_edge(e, src_len_, tgt_len_);
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool AlignmentSet::insert(Edge e) {
  check_edge(e, src_len_, tgt_len_);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it != edges_.end() && *it == e) return false;
  edges_.insert(it, e);
  return true;
}

bool AlignmentSet::contains(Edge e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

AlignmentSet AlignmentSet::transposed() const {
  std::vector<Edge> t;
  t.reserve(edges_.size());
  for (const auto& e : edges_) t.push_back({e.tgt, e.src});
  return AlignmentSet(tgt_len_, src_len_, std::move(t));
}

bool AlignmentSet::is_subset_of(const AlignmentSet& other) const {
  return std::includes(other.edges_.begin(), other.edges_.end(), edges_.begin(), edges_.end());
}

AlignmentSet set_union(const AlignmentSet& a, const AlignmentSet& b) {
  check_same_shape(a, b);
  std::vector<Edge> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return AlignmentSet(a.src_len(), a.tgt_len(), std::move(out));
}

AlignmentSet set_intersection(const AlignmentSet& a, const AlignmentSet& b) {
  check_same_shape(a, b);
  std::vector<Edge> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return AlignmentSet(a.src_len(), a.tgt_len(), std::move(out));
}

double alignment_weight(const AlignmentSet& a, const SimilarityMatrix& s) {
  double w = 0.0;
  for (const auto& e : a) w += s(e.src, e.tgt);
  return w;
}

}  // namespace embalign
