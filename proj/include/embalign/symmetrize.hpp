#pragma once

#include "embalign/alignment.hpp"

namespace embalign {

/// Edges present in both directions. Both inputs use (source, target)
/// orientation. Throws Error when the sentence lengths differ.
AlignmentSet intersect(const AlignmentSet& fwd, const AlignmentSet& bwd);

/// grow-diag-final-and.
///
/// Starts from the intersection. The grow step repeatedly scans current
/// edges row-major and adds union edges in their 8-neighborhood whenever
/// the new edge's source or target token is still unaligned, until nothing
/// changes. The final-and step then adds, row-major, every remaining union
/// edge whose source and target tokens are both unaligned.
AlignmentSet grow_diag_final_and(const AlignmentSet& fwd, const AlignmentSet& bwd);

}  // namespace embalign
