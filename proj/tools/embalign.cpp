// Command line front end: align, score, symmetrize, sweep, bins.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "embalign/corpus.hpp"
#include "embalign/eval.hpp"
#include "embalign/io.hpp"
#include "embalign/symmetrize.hpp"

namespace {

using namespace embalign;

struct ConfigFlags {
  std::string method = "argmax";
  int n_max = 2;
  double alpha = 0.9;
  double kappa = 0.5;
  bool dist = false;
  bool null = false;
  double null_percentile = 95.0;
  std::string level;
  unsigned workers = 1;

  void add_to(CLI::App* app) {
    app->add_option("--method", method, "argmax | itermax | match")
        ->check(CLI::IsMember({"argmax", "itermax", "match"}))
        ->capture_default_str();
    app->add_option("--n-max", n_max, "Itermax iterations")->capture_default_str();
    app->add_option("--alpha", alpha, "Itermax discount")->capture_default_str();
    app->add_option("--kappa", kappa, "distortion strength")->capture_default_str();
    app->add_flag("--dist", dist, "apply the distortion prior");
    app->add_flag("--null", null, "apply the null-word entropy filter");
    app->add_option("--null-percentile", null_percentile, "entropy threshold percentile")
        ->capture_default_str();
    app->add_option("--level", level, "word | subword (default: level of the files)")
        ->check(CLI::IsMember({"word", "subword"}));
    app->add_option("--workers", workers, "worker threads")->capture_default_str();
  }

  ExtractionConfig config() const {
    ExtractionConfig cfg;
    cfg.method = parse_method(method);
    cfg.n_max = n_max;
    cfg.alpha = alpha;
    cfg.kappa = kappa;
    cfg.dist_enabled = dist;
    cfg.null_enabled = null;
    cfg.null_percentile = null_percentile;
    cfg.validate();
    return cfg;
  }

  RunOptions options() const {
    RunOptions o;
    o.config = config();
    if (!level.empty()) o.level = parse_level(level);
    o.workers = workers;
    return o;
  }
};

// Either a file or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw Error("cannot write " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string substitute(std::string pattern, const std::string& value) {
  const auto pos = pattern.find("{}");
  if (pos != std::string::npos) pattern.replace(pos, 2, value);
  return pattern;
}

std::vector<PairAlignment> as_pairs(std::vector<AlignmentSet> sets) {
  std::vector<PairAlignment> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.push_back({{}, std::move(s), {}});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word alignment from embedding similarity matrices"};
  app.require_subcommand(1);

  // align
  auto* align = app.add_subcommand("align", "align a corpus of embedded sentence pairs");
  ConfigFlags align_flags;
  std::string src_path, tgt_path, gold_path, out_path = "-", report_path;
  int gold_base = 1;
  align_flags.add_to(align);
  align->add_option("--src", src_path, "source embedding file")->required();
  align->add_option("--tgt", tgt_path, "target embedding file")->required();
  align->add_option("--gold", gold_path, "gold alignment file (Pharaoh with 'p' marker)");
  align->add_option("--gold-base", gold_base, "index base of the gold file")
      ->check(CLI::IsMember({0, 1}))
      ->capture_default_str();
  align->add_option("--out", out_path, "alignment output, 0-based Pharaoh")->capture_default_str();
  align->add_option("--report", report_path, "score CSV output (default: stdout)");

  // score
  auto* score_cmd = app.add_subcommand("score", "score an alignment file against gold");
  std::string pred_path;
  int pred_base = 0;
  std::string score_out = "-";
  score_cmd->add_option("--alignments", pred_path, "predicted alignments")->required();
  score_cmd->add_option("--base", pred_base, "index base of the predictions")
      ->check(CLI::IsMember({0, 1}))
      ->capture_default_str();
  score_cmd->add_option("--gold", gold_path, "gold alignment file")->required();
  score_cmd->add_option("--gold-base", gold_base)->check(CLI::IsMember({0, 1}))->capture_default_str();
  score_cmd->add_option("--out", score_out, "CSV output")->capture_default_str();

  // symmetrize
  auto* sym = app.add_subcommand("symmetrize", "combine forward and backward alignments");
  std::string fwd_path, bwd_path, mode = "gdfa", sym_out = "-";
  bool transpose_bwd = false;
  int sym_base = 0;
  sym->add_option("--fwd", fwd_path, "forward alignments (source-target)")->required();
  sym->add_option("--bwd", bwd_path, "backward alignments")->required();
  sym->add_flag("--transpose-bwd", transpose_bwd, "backward file is target-source oriented");
  sym->add_option("--mode", mode, "gdfa | intersect")
      ->check(CLI::IsMember({"gdfa", "intersect"}))
      ->capture_default_str();
  sym->add_option("--base", sym_base, "index base of both inputs")
      ->check(CLI::IsMember({0, 1}))
      ->capture_default_str();
  sym->add_option("--out", sym_out, "output, 0-based Pharaoh")->capture_default_str();

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "score one configuration axis over values");
  ConfigFlags sweep_flags;
  std::string axis_name, values_list, sweep_out = "-";
  sweep_flags.add_to(sweep_cmd);
  sweep_cmd->add_option("--axis", axis_name,
                        "layer | method | n_max | alpha | kappa | null_percentile | dist | null")
      ->required();
  sweep_cmd->add_option("--values", values_list, "comma separated axis values")->required();
  sweep_cmd->add_option("--src", src_path, "source embeddings; '{}' is replaced by the layer")
      ->required();
  sweep_cmd->add_option("--tgt", tgt_path, "target embeddings; '{}' is replaced by the layer")
      ->required();
  sweep_cmd->add_option("--gold", gold_path)->required();
  sweep_cmd->add_option("--gold-base", gold_base)->check(CLI::IsMember({0, 1}))->capture_default_str();
  sweep_cmd->add_option("--out", sweep_out, "CSV output")->capture_default_str();

  // bins
  auto* bins_cmd = app.add_subcommand("bins", "scores per frequency bin or per tag");
  std::string kind, src_text, tgt_text, freq_path, bounds_list, tags_list, bins_out = "-";
  bins_cmd->add_option("--kind", kind, "freq | tag")
      ->check(CLI::IsMember({"freq", "tag"}))
      ->required();
  bins_cmd->add_option("--alignments", pred_path, "predicted word alignments")->required();
  bins_cmd->add_option("--base", pred_base)->check(CLI::IsMember({0, 1}))->capture_default_str();
  bins_cmd->add_option("--gold", gold_path)->required();
  bins_cmd->add_option("--gold-base", gold_base)->check(CLI::IsMember({0, 1}))->capture_default_str();
  bins_cmd->add_option("--src-text", src_text,
                       "freq: source words; tag: source tags (one sentence per line)")
      ->required();
  bins_cmd->add_option("--tgt-text", tgt_text, "freq: target words; tag: target tags")
      ->required();
  bins_cmd->add_option("--freq", freq_path, "'<word> <count>' table (freq)");
  bins_cmd->add_option("--bounds", bounds_list, "bin boundaries, e.g. 0,10,100,inf (freq)");
  bins_cmd->add_option("--tags", tags_list, "tags to report (tag; default: all)");
  bins_cmd->add_option("--out", bins_out, "CSV output")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (align->parsed()) {
      auto options = align_flags.options();
      const auto src = read_embeddings(src_path);
      const auto tgt = read_embeddings(tgt_path);
      std::vector<GoldAlignment> golds;
      if (!gold_path.empty()) golds = read_gold(gold_path, gold_base);
      if (!golds.empty() && report_path.empty() && (out_path.empty() || out_path == "-")) {
        throw Error("--report is required when alignments go to stdout");
      }
      const auto result = run_corpus(src, tgt, options, golds);
      {
        Output out(out_path);
        write_alignments(out.stream(), result.run.pairs);
      }
      if (result.report) {
        Output report(report_path);
        write_score_csv(report.stream(), options.config,
                        options.level.value_or(src.header.level), *result.report);
      }
    } else if (score_cmd->parsed()) {
      const auto pred = as_pairs(read_alignments(pred_path, pred_base));
      const auto golds = read_gold(gold_path, gold_base);
      Output out(score_out);
      write_csv_row(out.stream(), [] {
        auto cols = score_csv_columns();
        cols.insert(cols.begin(), "averaging");
        return cols;
      }());
      auto fields = score_csv_fields(corpus_score(pred, golds));
      fields.insert(fields.begin(), "micro");
      write_csv_row(out.stream(), fields);
    } else if (sym->parsed()) {
      auto fwd = read_alignments(fwd_path, sym_base);
      auto bwd = read_alignments(bwd_path, sym_base);
      if (fwd.size() != bwd.size()) {
        throw Error("forward and backward files have different line counts");
      }
      std::vector<AlignmentSet> out_sets;
      for (std::size_t k = 0; k < fwd.size(); ++k) {
        const AlignmentSet b = transpose_bwd ? bwd[k].transposed() : bwd[k];
        // Lengths are unknown in Pharaoh files; use the joint extent.
        const std::size_t le = std::max(fwd[k].src_len(), b.src_len());
        const std::size_t lf = std::max(fwd[k].tgt_len(), b.tgt_len());
        const AlignmentSet f2(le, lf, fwd[k].edges());
        const AlignmentSet b2(le, lf, b.edges());
        out_sets.push_back(mode == "gdfa" ? grow_diag_final_and(f2, b2) : intersect(f2, b2));
      }
      Output out(sym_out);
      write_alignments(out.stream(), std::span<const AlignmentSet>(out_sets));
    } else if (sweep_cmd->parsed()) {
      const auto options = sweep_flags.options();
      const auto axis = parse_sweep_axis(axis_name);
      const auto values = split_list(values_list);
      const auto golds = read_gold(gold_path, gold_base);
      std::vector<SweepRow> rows;
      Level level = Level::word;
      auto load = [&](const std::string& layer) {
        const auto src = read_embeddings(substitute(src_path, layer));
        const auto tgt = read_embeddings(substitute(tgt_path, layer));
        auto corpus = prepare_corpus(src, tgt, options);
        level = corpus.level;
        return corpus;
      };
      if (axis == SweepAxis::layer) {
        rows = sweep_layers(values, load, options.config, golds, options.workers);
      } else {
        const auto corpus = load("");
        rows = sweep(axis, values, corpus, options.config, golds, options.workers);
      }
      Output out(sweep_out);
      write_sweep_csv(out.stream(), axis, level, rows);
    } else if (bins_cmd->parsed()) {
      const auto pred = as_pairs(read_alignments(pred_path, pred_base));
      const auto golds = read_gold(gold_path, gold_base);
      const auto src_side = read_token_lines(src_text);
      const auto tgt_side = read_token_lines(tgt_text);
      // Prediction lengths come from the token files.
      std::vector<PairAlignment> sized;
      for (std::size_t k = 0; k < pred.size(); ++k) {
        if (k >= src_side.size() || k >= tgt_side.size()) {
          throw Error("fewer token lines than alignment lines");
        }
        sized.push_back({{}, AlignmentSet(src_side[k].size(), tgt_side[k].size(),
                                          pred[k].edges.edges()), {}});
      }
      std::vector<BinReport> bins;
      if (kind == "freq") {
        if (freq_path.empty() || bounds_list.empty()) {
          throw Error("--freq and --bounds are required for frequency bins");
        }
        std::vector<double> bounds;
        for (const auto& b : split_list(bounds_list)) {
          bounds.push_back(b == "inf" ? std::numeric_limits<double>::infinity() : std::stod(b));
        }
        bins = frequency_bin_scores(sized, golds, src_side, tgt_side,
                                    read_frequency_table(freq_path), bins_from_bounds(bounds));
      } else {
        bins = tag_bin_scores(sized, golds, src_side, tgt_side, split_list(tags_list));
      }
      Output out(bins_out);
      write_bins_csv(out.stream(), kind, bins);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
