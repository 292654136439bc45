#include "embalign/symmetrize.hpp"

#include <array>
#include <utility>

namespace embalign {
namespace {

// Horizontal and vertical neighbors first, then diagonals.
constexpr std::array<std::pair<int, int>, 8> kNeighbors{{
    {-1, 0}, {0, -1}, {1, 0}, {0, 1}, {-1, -1}, {-1, 1}, {1, -1}, {1, 1}}};

}  // namespace

AlignmentSet intersect(const AlignmentSet& fwd, const AlignmentSet& bwd) {
  return set_intersection(fwd, bwd);
}

AlignmentSet grow_diag_final_and(const AlignmentSet& fwd, const AlignmentSet& bwd) {
  const AlignmentSet united = set_union(fwd, bwd);
  AlignmentSet out = set_intersection(fwd, bwd);
  const auto le = static_cast<long>(out.src_len());
  const auto lf = static_cast<long>(out.tgt_len());

  std::vector<char> src_aligned(out.src_len(), 0), tgt_aligned(out.tgt_len(), 0);
  auto add = [&](Edge e) {
    out.insert(e);
    src_aligned[e.src] = 1;
    tgt_aligned[e.tgt] = 1;
  };
  for (const auto& e : out) {
    src_aligned[e.src] = 1;
    tgt_aligned[e.tgt] = 1;
  }

  bool added = true;
  while (added) {
    added = false;
    for (long i = 0; i < le; ++i) {
      for (long j = 0; j < lf; ++j) {
        const Edge here{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
        if (!out.contains(here)) continue;
        for (const auto& [di, dj] : kNeighbors) {
          const long ni = i + di;
          const long nj = j + dj;
          if (ni < 0 || nj < 0 || ni >= le || nj >= lf) continue;
          const Edge cand{static_cast<std::uint32_t>(ni), static_cast<std::uint32_t>(nj)};
          if (out.contains(cand) || !united.contains(cand)) continue;
          if (src_aligned[cand.src] && tgt_aligned[cand.tgt]) continue;
          add(cand);
          added = true;
        }
      }
    }
  }

  for (const auto& e : united) {
    if (!src_aligned[e.src] && !tgt_aligned[e.tgt]) add(e);
  }
  return out;
}

}  // namespace embalign
