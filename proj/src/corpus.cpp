#include "embalign/corpus.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <exception>
#include <ostream>
#include <thread>

#include "embalign/subword.hpp"

namespace embalign {
namespace {

// Runs fn(k) for k in [0, n). Results must be written to per-index slots;
// the first failing index (lowest k) determines the rethrown exception.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        fn(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

EmbeddingMatrix at_level(const EmbeddedSentence& s, Level file_level, Level level,
                         std::string_view side) {
  if (level == file_level) return s.vectors;
  if (level == Level::word) return pool_subword_to_word(s.vectors, *s.word_spans);
  throw Error(std::string(side) + " embeddings are word level; subword alignment needs a "
                                  "subword-level file");
}

double parse_real(const std::string& v) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw Error("bad number '" + v + "'");
  return x;
}

bool parse_flag(const std::string& v) {
  if (v == "1" || v == "on" || v == "true") return true;
  if (v == "0" || v == "off" || v == "false") return false;
  throw Error("bad flag value '" + v + "'");
}

std::string number(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

SweepRow evaluate(std::string value, const ExtractionConfig& cfg, const PreparedCorpus& corpus,
                  std::span<const GoldAlignment> golds, unsigned workers) {
  cfg.validate();
  const auto run = align_corpus(corpus, cfg, workers);
  return {std::move(value), cfg, corpus_score(run.pairs, golds)};
}

}  // namespace

PreparedCorpus prepare_corpus(const EmbeddingFile& src, const EmbeddingFile& tgt,
                              const RunOptions& options) {
  if (src.header.dim != tgt.header.dim) {
    throw Error("embedding dim mismatch between source (" + std::to_string(src.header.dim) +
                ") and target (" + std::to_string(tgt.header.dim) + ")");
  }
  const std::size_t n = std::min(src.sentences.size(), tgt.sentences.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (src.sentences[k].id != tgt.sentences[k].id) {
      throw Error("sentence id mismatch at pair " + std::to_string(k) + ": source '" +
                  src.sentences[k].id + "' vs target '" + tgt.sentences[k].id + "'");
    }
  }
  if (src.sentences.size() != tgt.sentences.size()) {
    const auto& extra = src.sentences.size() > n ? src.sentences[n] : tgt.sentences[n];
    throw Error("sentence id mismatch: '" + extra.id + "' has no counterpart");
  }

  PreparedCorpus corpus;
  corpus.level = options.level.value_or(src.header.level);
  corpus.pairs.resize(n);
  parallel_for(n, options.workers, [&](std::size_t k) {
    const auto& s = src.sentences[k];
    const auto& t = tgt.sentences[k];
    auto& out = corpus.pairs[k];
    out.id = s.id;
    const auto src_vectors = at_level(s, src.header.level, corpus.level, "source");
    const auto tgt_vectors = at_level(t, tgt.header.level, corpus.level, "target");
    const std::string id = s.id;
    WarningSink warn = [&](const std::string& msg) {
      emit_warning(options.warn, "pair '" + id + "': " + msg);
    };
    out.similarity = cosine_similarity_matrix(src_vectors, tgt_vectors, warn);
    if (corpus.level == Level::subword) {
      out.src_spans = s.word_spans;
      out.tgt_spans = t.word_spans;
    }
  });
  return corpus;
}

CorpusAlignmentRun align_corpus(const PreparedCorpus& corpus, const ExtractionConfig& cfg,
                                unsigned workers) {
  cfg.validate();
  CorpusAlignmentRun run;
  run.pairs.resize(corpus.pairs.size());
  parallel_for(corpus.pairs.size(), workers, [&](std::size_t k) {
    const auto& p = corpus.pairs[k];
    run.pairs[k] = align_pair(p.similarity, cfg, p.id);
  });

  if (cfg.null_enabled) run = null_filter(run, cfg.null_percentile);

  if (corpus.level == Level::subword) {
    for (std::size_t k = 0; k < run.pairs.size(); ++k) {
      const auto& p = corpus.pairs[k];
      auto& out = run.pairs[k];
      out.edges = convert_subword_to_word(out.edges, *p.src_spans, *p.tgt_spans);
      out.edge_entropy.clear();
    }
  }
  return run;
}

CorpusResult run_corpus(const EmbeddingFile& src, const EmbeddingFile& tgt,
                        const RunOptions& options, std::span<const GoldAlignment> golds) {
  options.config.validate();
  const auto corpus = prepare_corpus(src, tgt, options);
  CorpusResult result{align_corpus(corpus, options.config, options.workers), std::nullopt};
  if (!golds.empty()) result.report = corpus_score(result.run.pairs, golds);
  return result;
}

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "layer") return SweepAxis::layer;
  if (name == "method") return SweepAxis::method;
  if (name == "n_max" || name == "n-max") return SweepAxis::n_max;
  if (name == "alpha") return SweepAxis::alpha;
  if (name == "kappa") return SweepAxis::kappa;
  if (name == "null_percentile" || name == "null-percentile") return SweepAxis::null_percentile;
  if (name == "dist") return SweepAxis::dist;
  if (name == "null") return SweepAxis::null;
  throw Error("unknown sweep axis '" + std::string(name) + "'");
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::layer: return "layer";
    case SweepAxis::method: return "method";
    case SweepAxis::n_max: return "n_max";
    case SweepAxis::alpha: return "alpha";
    case SweepAxis::kappa: return "kappa";
    case SweepAxis::null_percentile: return "null_percentile";
    case SweepAxis::dist: return "dist";
    case SweepAxis::null: return "null";
  }
  return "?";
}

ExtractionConfig apply_axis(ExtractionConfig cfg, SweepAxis axis, const std::string& value) {
  switch (axis) {
    case SweepAxis::layer: break;
    case SweepAxis::method: cfg.method = parse_method(value); break;
    case SweepAxis::n_max: {
      int n = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw Error("bad n_max '" + value + "'");
      }
      cfg.n_max = n;
      break;
    }
    case SweepAxis::alpha: cfg.alpha = parse_real(value); break;
    case SweepAxis::kappa:
      cfg.kappa = parse_real(value);
      cfg.dist_enabled = true;
      break;
    case SweepAxis::null_percentile:
      cfg.null_percentile = parse_real(value);
      cfg.null_enabled = true;
      break;
    case SweepAxis::dist: cfg.dist_enabled = parse_flag(value); break;
    case SweepAxis::null: cfg.null_enabled = parse_flag(value); break;
  }
  return cfg;
}

std::vector<SweepRow> sweep(SweepAxis axis, const std::vector<std::string>& values,
                            const PreparedCorpus& corpus, const ExtractionConfig& base,
                            std::span<const GoldAlignment> golds, unsigned workers) {
  if (axis == SweepAxis::layer) throw Error("layer sweeps need one corpus per layer");
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (const auto& v : values) {
    rows.push_back(evaluate(v, apply_axis(base, axis, v), corpus, golds, workers));
  }
  return rows;
}

std::vector<SweepRow> sweep_layers(
    const std::vector<std::string>& layers,
    const std::function<PreparedCorpus(const std::string&)>& load, const ExtractionConfig& cfg,
    std::span<const GoldAlignment> golds, unsigned workers) {
  std::vector<SweepRow> rows;
  rows.reserve(layers.size());
  for (const auto& layer : layers) rows.push_back(evaluate(layer, cfg, load(layer), golds, workers));
  return rows;
}

std::vector<std::string> config_csv_columns() {
  return {"method", "n_max", "alpha", "kappa", "dist", "null", "null_percentile"};
}

std::vector<std::string> config_csv_fields(const ExtractionConfig& cfg) {
  return {std::string(to_string(cfg.method)),
          std::to_string(cfg.n_max),
          number(cfg.alpha),
          number(cfg.kappa),
          cfg.dist_enabled ? "1" : "0",
          cfg.null_enabled ? "1" : "0",
          number(cfg.null_percentile)};
}

namespace {

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

void write_score_csv(std::ostream& out, const ExtractionConfig& cfg, Level level,
                     const ScoreReport& report) {
  write_csv_row(out, concat(concat({"level"}, config_csv_columns()),
                            concat({"averaging"}, score_csv_columns())));
  write_csv_row(out, concat(concat({std::string(to_string(level))}, config_csv_fields(cfg)),
                            concat({"micro"}, score_csv_fields(report))));
}

void write_sweep_csv(std::ostream& out, SweepAxis axis, Level level,
                     std::span<const SweepRow> rows) {
  write_csv_row(out, concat(concat({"axis", "value", "level"}, config_csv_columns()),
                            concat({"averaging"}, score_csv_columns())));
  for (const auto& r : rows) {
    write_csv_row(out, concat(concat({std::string(to_string(axis)), r.value,
                                      std::string(to_string(level))},
                                     config_csv_fields(r.config)),
                              concat({"micro"}, score_csv_fields(r.report))));
  }
}

void write_bins_csv(std::ostream& out, std::string_view kind, std::span<const BinReport> bins) {
  write_csv_row(out, concat({"kind", "bin", "empty"}, score_csv_columns()));
  for (const auto& b : bins) {
    write_csv_row(out, concat({std::string(kind), b.label, b.report.empty() ? "1" : "0"},
                              score_csv_fields(b.report)));
  }
}

}  // namespace embalign
