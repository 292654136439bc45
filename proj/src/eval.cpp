#include "embalign/eval.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace embalign {
namespace {

std::size_t extent_src(const std::vector<Edge>& edges) {
  std::size_t n = 0;
  for (const auto& e : edges) n = std::max<std::size_t>(n, e.src + 1);
  return n;
}

std::size_t extent_tgt(const std::vector<Edge>& edges) {
  std::size_t n = 0;
  for (const auto& e : edges) n = std::max<std::size_t>(n, e.tgt + 1);
  return n;
}

void check_pairing(std::span<const PairAlignment> predicted,
                   std::span<const GoldAlignment> golds) {
  for (std::size_t k = 0; k < predicted.size(); ++k) {
    if (k >= golds.size()) {
      throw Error("missing gold alignment for pair '" + predicted[k].pair_id + "'");
    }
    if (!golds[k].pair_id.empty() && !predicted[k].pair_id.empty() &&
        golds[k].pair_id != predicted[k].pair_id) {
      throw Error("missing gold alignment for pair '" + predicted[k].pair_id +
                  "' (gold at that position is '" + golds[k].pair_id + "')");
    }
  }
}

// Adds the counts of the edges selected by `bucket_of` into per-bucket
// totals. `bucket_of` returns the buckets an edge belongs to.
template <typename BucketFn>
void accumulate(const AlignmentSet& predicted, const GoldAlignment& gold,
                std::vector<ScoreCounts>& totals, BucketFn bucket_of) {
  for (const auto& e : predicted) {
    for (std::size_t b : bucket_of(e)) {
      ++totals[b].predicted;
      if (gold.sure.contains(e)) ++totals[b].predicted_sure;
      if (gold.possible.contains(e)) ++totals[b].predicted_possible;
    }
  }
  for (const auto& e : gold.sure)
    for (std::size_t b : bucket_of(e)) ++totals[b].sure;
  for (const auto& e : gold.possible)
    for (std::size_t b : bucket_of(e)) ++totals[b].possible;
}

std::string format_bound(double x) {
  if (std::isinf(x)) return "inf";
  std::ostringstream out;
  out << x;
  return out.str();
}

}  // namespace

GoldAlignment GoldAlignment::make(std::vector<Edge> sure, std::vector<Edge> possible_only,
                                  std::string pair_id) {
  std::vector<Edge> possible = possible_only;
  possible.insert(possible.end(), sure.begin(), sure.end());
  const std::size_t src_len = extent_src(possible);
  const std::size_t tgt_len = extent_tgt(possible);
  GoldAlignment g;
  g.pair_id = std::move(pair_id);
  g.sure = AlignmentSet(src_len, tgt_len, std::move(sure));
  g.possible = AlignmentSet(src_len, tgt_len, std::move(possible));
  return g;
}

ScoreCounts& ScoreCounts::operator+=(const ScoreCounts& o) {
  predicted += o.predicted;
  sure += o.sure;
  possible += o.possible;
  predicted_sure += o.predicted_sure;
  predicted_possible += o.predicted_possible;
  return *this;
}

ScoreReport ScoreReport::from_counts(const ScoreCounts& c) {
  ScoreReport r;
  r.counts = c;
  const auto a = static_cast<double>(c.predicted);
  const auto s = static_cast<double>(c.sure);
  r.precision = c.predicted > 0 ? static_cast<double>(c.predicted_possible) / a : 0.0;
  r.recall = c.sure > 0 ? static_cast<double>(c.predicted_sure) / s : 0.0;
  const double pr = r.precision + r.recall;
  r.f1 = pr > 0.0 ? 2.0 * r.precision * r.recall / pr : 0.0;
  r.aer = (c.predicted + c.sure) > 0
              ? 1.0 - static_cast<double>(c.predicted_sure + c.predicted_possible) / (a + s)
              : 1.0;
  return r;
}

ScoreCounts count_overlap(const AlignmentSet& predicted, const GoldAlignment& gold) {
  ScoreCounts c;
  c.predicted = predicted.size();
  c.sure = gold.sure.size();
  c.possible = gold.possible.size();
  for (const auto& e : predicted) {
    if (gold.sure.contains(e)) ++c.predicted_sure;
    if (gold.possible.contains(e)) ++c.predicted_possible;
  }
  return c;
}

ScoreReport score(const AlignmentSet& predicted, const GoldAlignment& gold) {
  if (gold.sure.empty()) throw Error("gold alignment has no sure edges");
  return ScoreReport::from_counts(count_overlap(predicted, gold));
}

ScoreReport corpus_score(std::span<const PairAlignment> predicted,
                         std::span<const GoldAlignment> golds) {
  check_pairing(predicted, golds);
  ScoreCounts total;
  for (std::size_t k = 0; k < predicted.size(); ++k) {
    total += count_overlap(predicted[k].edges, golds[k]);
  }
  if (total.sure == 0) throw Error("gold standard has no sure edges");
  return ScoreReport::from_counts(total);
}

std::vector<FrequencyBin> bins_from_bounds(const std::vector<double>& bounds) {
  if (bounds.size() < 2) throw Error("need at least two bin boundaries");
  std::vector<FrequencyBin> bins;
  for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
    if (!(bounds[k] < bounds[k + 1])) {
      throw Error("bin boundaries must be strictly increasing");
    }
    bins.push_back({bounds[k], bounds[k + 1]});
  }
  return bins;
}

std::vector<BinReport> frequency_bin_scores(
    std::span<const PairAlignment> predicted, std::span<const GoldAlignment> golds,
    std::span<const std::vector<std::string>> src_words,
    std::span<const std::vector<std::string>> tgt_words, const FrequencyTable& freq,
    const std::vector<FrequencyBin>& bins) {
  for (std::size_t b = 0; b < bins.size(); ++b) {
    if (!(bins[b].lower < bins[b].upper)) throw Error("empty or inverted frequency bin");
    if (b > 0 && bins[b].lower < bins[b - 1].upper) {
      throw Error("frequency bins are unsorted or overlapping");
    }
  }
  check_pairing(predicted, golds);
  if (src_words.size() < predicted.size() || tgt_words.size() < predicted.size()) {
    throw Error("token sequences missing for some sentence pairs");
  }

  auto frequency = [&](const std::string& w) -> double {
    auto it = freq.find(w);
    return it == freq.end() ? 0.0 : static_cast<double>(it->second);
  };

  std::vector<ScoreCounts> totals(bins.size());
  for (std::size_t k = 0; k < predicted.size(); ++k) {
    const auto& src = src_words[k];
    const auto& tgt = tgt_words[k];
    auto bucket_of = [&](const Edge& e) {
      std::vector<std::size_t> out;
      if (e.src >= src.size() || e.tgt >= tgt.size()) {
        throw Error("pair '" + predicted[k].pair_id + "': edge outside token sequence");
      }
      const double f = std::min(frequency(src[e.src]), frequency(tgt[e.tgt]));
      for (std::size_t b = 0; b < bins.size(); ++b) {
        if (f >= bins[b].lower && f < bins[b].upper) {
          out.push_back(b);
          break;
        }
      }
      return out;
    };
    accumulate(predicted[k].edges, golds[k], totals, bucket_of);
  }

  std::vector<BinReport> out;
  for (std::size_t b = 0; b < bins.size(); ++b) {
    out.push_back({"[" + format_bound(bins[b].lower) + "," + format_bound(bins[b].upper) + ")",
                   ScoreReport::from_counts(totals[b])});
  }
  return out;
}

std::vector<BinReport> tag_bin_scores(std::span<const PairAlignment> predicted,
                                      std::span<const GoldAlignment> golds,
                                      std::span<const std::vector<std::string>> src_tags,
                                      std::span<const std::vector<std::string>> tgt_tags,
                                      const std::vector<std::string>& tags) {
  check_pairing(predicted, golds);
  if (src_tags.size() < predicted.size() || tgt_tags.size() < predicted.size()) {
    throw Error("tag sequences missing for some sentence pairs");
  }
  for (std::size_t k = 0; k < predicted.size(); ++k) {
    const auto& a = predicted[k].edges;
    if (src_tags[k].size() != a.src_len() || tgt_tags[k].size() != a.tgt_len()) {
      throw Error("pair '" + predicted[k].pair_id + "': tag sequence length mismatch (" +
                  std::to_string(src_tags[k].size()) + "/" + std::to_string(a.src_len()) +
                  " source, " + std::to_string(tgt_tags[k].size()) + "/" +
                  std::to_string(a.tgt_len()) + " target)");
    }
  }

  std::vector<std::string> labels = tags;
  if (labels.empty()) {
    std::set<std::string> seen;
    for (std::size_t k = 0; k < predicted.size(); ++k) {
      seen.insert(src_tags[k].begin(), src_tags[k].end());
      seen.insert(tgt_tags[k].begin(), tgt_tags[k].end());
    }
    labels.assign(seen.begin(), seen.end());
  }
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t b = 0; b < labels.size(); ++b) index.emplace(labels[b], b);

  std::vector<ScoreCounts> totals(labels.size());
  for (std::size_t k = 0; k < predicted.size(); ++k) {
    const auto& st = src_tags[k];
    const auto& tt = tgt_tags[k];
    auto bucket_of = [&](const Edge& e) {
      std::vector<std::size_t> out;
      if (e.src >= st.size() || e.tgt >= tt.size()) {
        throw Error("pair '" + predicted[k].pair_id + "': gold edge outside tag sequence");
      }
      if (auto it = index.find(st[e.src]); it != index.end()) out.push_back(it->second);
      if (tt[e.tgt] != st[e.src]) {
        if (auto it = index.find(tt[e.tgt]); it != index.end()) out.push_back(it->second);
      }
      return out;
    };
    accumulate(predicted[k].edges, golds[k], totals, bucket_of);
  }

  std::vector<BinReport> out;
  for (std::size_t b = 0; b < labels.size(); ++b) {
    out.push_back({labels[b], ScoreReport::from_counts(totals[b])});
  }
  return out;
}

}  // namespace embalign
