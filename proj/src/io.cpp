#include "embalign/io.hpp"

#include <array>
#include <cctype>
#include <bit>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace embalign {
namespace {

constexpr std::array<char, 4> kBinaryMagic{'E', 'M', 'B', 'F'};
constexpr std::array<char, 4> kTextMagic{'#', 'e', 'm', 'b'};
// Upper bound on any single length field; guards allocations on corrupt input.
constexpr std::uint32_t kMaxLength = 1u << 26;

// --- binary primitives ------------------------------------------------------

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                              static_cast<char>((v >> 16) & 0xff),
                              static_cast<char>((v >> 24) & 0xff)};
  out.write(b.data(), b.size());
}

void put_f32(std::ostream& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }

void put_string(std::ostream& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

// Returns false on a clean EOF before the first byte; throws on a partial read.
bool get_bytes(std::istream& in, char* dst, std::size_t n, const std::string& context) {
  in.read(dst, static_cast<std::streamsize>(n));
  const auto got = static_cast<std::size_t>(in.gcount());
  if (got == n) return true;
  if (got == 0) return false;
  throw FormatError("truncated record " + context);
}

std::uint32_t need_u32(std::istream& in, const std::string& context) {
  std::array<unsigned char, 4> b{};
  if (!get_bytes(in, reinterpret_cast<char*>(b.data()), 4, context)) {
    throw FormatError("truncated record " + context);
  }
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint32_t need_length(std::istream& in, const std::string& context) {
  const std::uint32_t n = need_u32(in, context);
  if (n > kMaxLength) throw FormatError("implausible length field " + context);
  return n;
}

std::string need_string(std::istream& in, const std::string& context) {
  std::string s(need_length(in, context), '\0');
  if (!s.empty() && !get_bytes(in, s.data(), s.size(), context)) {
    throw FormatError("truncated record " + context);
  }
  return s;
}

// --- text primitives --------------------------------------------------------

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string format_float(float v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

bool has_space(std::string_view s) {
  for (char c : s)
    if (std::isspace(static_cast<unsigned char>(c))) return true;
  return false;
}

std::string sentence_context(const std::string& id) { return "in sentence '" + id + "'"; }

}  // namespace

std::string_view to_string(Level level) {
  return level == Level::word ? "word" : "subword";
}

Level parse_level(std::string_view name) {
  if (name == "word") return Level::word;
  if (name == "subword") return Level::subword;
  throw Error("unknown level '" + std::string(name) + "'");
}

// --- EmbeddingReader ----------------------------------------------------------

EmbeddingReader::EmbeddingReader(const std::filesystem::path& path)
    : file_(path, std::ios::binary) {
  if (!file_) throw Error("cannot open " + path.string());
  in_ = &file_;
  read_header();
}

EmbeddingReader::EmbeddingReader(std::istream& in) : in_(&in) { read_header(); }

void EmbeddingReader::read_header() {
  std::array<char, 4> magic{};
  in_->read(magic.data(), magic.size());
  if (in_->gcount() != 4) throw FormatError("missing embedding file header");

  if (magic == kBinaryMagic) {
    encoding_ = Encoding::binary;
    const std::string ctx = "in header";
    header_.version = need_u32(*in_, ctx);
    header_.dim = need_u32(*in_, ctx);
    const std::uint32_t level = need_u32(*in_, ctx);
    if (level > 1) throw FormatError("unknown level code " + std::to_string(level));
    header_.level = level == 0 ? Level::word : Level::subword;
  } else if (magic == kTextMagic) {
    encoding_ = Encoding::text;
    std::string rest;
    std::getline(*in_, rest);
    line_no_ = 1;
    const auto f = split_ws(rest);
    // The magic consumed "#emb"; the first field is the trailing "f".
    if (f.size() != 4 || f[0] != "f" || !parse_number(f[1], header_.version) ||
        !parse_number(f[2], header_.dim)) {
      throw FormatError("malformed text header");
    }
    try {
      header_.level = parse_level(f[3]);
    } catch (const Error&) {
      throw FormatError("malformed text header: level '" + std::string(f[3]) + "'");
    }
  } else {
    throw FormatError("not an embedding file (bad magic)");
  }
  if (header_.version != kEmbeddingFormatVersion) {
    throw FormatError("unsupported embedding format version " +
                      std::to_string(header_.version));
  }
  if (header_.dim == 0) throw FormatError("embedding dim must be positive");
}

std::optional<EmbeddedSentence> EmbeddingReader::next() {
  auto s = encoding_ == Encoding::binary ? next_binary() : next_text();
  if (s) check(*s);
  return s;
}

std::optional<EmbeddedSentence> EmbeddingReader::next_binary() {
  std::array<char, 4> first{};
  if (!get_bytes(*in_, first.data(), 4, "at start of sentence")) return std::nullopt;
  std::uint32_t id_len = 0;
  for (int b = 3; b >= 0; --b) id_len = (id_len << 8) | static_cast<unsigned char>(first[b]);
  if (id_len > kMaxLength) throw FormatError("implausible sentence id length");

  EmbeddedSentence s;
  s.id.assign(id_len, '\0');
  if (id_len > 0 && !get_bytes(*in_, s.id.data(), id_len, "in sentence id")) {
    throw FormatError("truncated record in sentence id");
  }
  const std::string ctx = sentence_context(s.id);

  const std::uint32_t count = need_length(*in_, ctx);
  if (count == 0) throw FormatError("no tokens " + ctx);
  s.tokens.reserve(count);
  for (std::uint32_t t = 0; t < count; ++t) s.tokens.push_back(need_string(*in_, ctx));

  if (header_.level == Level::subword) {
    const std::uint32_t words = need_length(*in_, ctx);
    WordSpans spans(words);
    for (auto& sp : spans) {
      sp.start = need_u32(*in_, ctx);
      sp.end = need_u32(*in_, ctx);
    }
    s.word_spans = std::move(spans);
  }

  const std::size_t n = static_cast<std::size_t>(count) * header_.dim;
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = static_cast<double>(std::bit_cast<float>(need_u32(*in_, ctx)));
    if (!std::isfinite(values[k])) throw FormatError("non-finite value " + ctx);
  }
  s.vectors = EmbeddingMatrix(count, header_.dim, std::move(values));
  return s;
}

std::optional<EmbeddedSentence> EmbeddingReader::next_text() {
  std::string line;
  auto next_line = [&](const std::string& ctx) {
    while (std::getline(*in_, line)) {
      ++line_no_;
      if (!split_ws(line).empty()) return true;
    }
    if (!ctx.empty()) throw FormatError("truncated record " + ctx);
    return false;
  };
  auto fail = [&](const std::string& what, const std::string& ctx) {
    return FormatError(what + " " + ctx + " (line " + std::to_string(line_no_) + ")");
  };

  if (!next_line("")) return std::nullopt;
  auto f = split_ws(line);
  std::size_t count = 0;
  if (f.size() != 3 || f[0] != "sentence" || !parse_number(f[2], count)) {
    throw fail("expected 'sentence <id> <count>'", "");
  }
  EmbeddedSentence s;
  s.id = std::string(f[1]);
  const std::string ctx = sentence_context(s.id);
  if (count == 0) throw fail("no tokens", ctx);

  next_line(ctx);
  f = split_ws(line);
  if (f.empty() || f[0] != "tokens" || f.size() != count + 1) {
    throw fail("expected " + std::to_string(count) + " tokens", ctx);
  }
  for (std::size_t t = 1; t < f.size(); ++t) s.tokens.emplace_back(f[t]);

  if (header_.level == Level::subword) {
    next_line(ctx);
    f = split_ws(line);
    if (f.empty() || f[0] != "spans") throw fail("expected spans", ctx);
    WordSpans spans;
    for (std::size_t k = 1; k < f.size(); ++k) {
      const auto colon = f[k].find(':');
      WordSpan sp;
      if (colon == std::string_view::npos || !parse_number(f[k].substr(0, colon), sp.start) ||
          !parse_number(f[k].substr(colon + 1), sp.end)) {
        throw fail("malformed span '" + std::string(f[k]) + "'", ctx);
      }
      spans.push_back(sp);
    }
    s.word_spans = std::move(spans);
  }

  std::vector<double> values;
  values.reserve(count * header_.dim);
  for (std::size_t r = 0; r < count; ++r) {
    next_line(ctx);
    f = split_ws(line);
    if (f.size() != header_.dim) {
      throw fail("dim mismatch: row has " + std::to_string(f.size()) + " values, expected " +
                     std::to_string(header_.dim),
                 ctx);
    }
    for (auto field : f) {
      float v = 0.0f;
      if (!parse_number(field, v)) throw fail("bad number '" + std::string(field) + "'", ctx);
      if (!std::isfinite(v)) throw fail("non-finite value", ctx);
      values.push_back(static_cast<double>(v));
    }
  }
  s.vectors = EmbeddingMatrix(count, header_.dim, std::move(values));
  return s;
}

void EmbeddingReader::check(const EmbeddedSentence& s) const {
  const std::string ctx = sentence_context(s.id);
  if (s.vectors.dim() != header_.dim) throw FormatError("dim mismatch " + ctx);
  if (s.vectors.rows() != s.tokens.size()) throw FormatError("row count mismatch " + ctx);
  if (header_.level == Level::subword) {
    if (!s.word_spans) throw FormatError("missing word spans " + ctx);
    try {
      validate_spans(*s.word_spans, s.tokens.size());
    } catch (const FormatError&) {
      throw;
    } catch (const Error& e) {
      throw FormatError(std::string(e.what()) + " " + ctx);
    }
  } else if (s.word_spans) {
    throw FormatError("word spans in a word-level file " + ctx);
  }
}

EmbeddingFile read_embeddings(std::istream& in) {
  EmbeddingReader reader(in);
  EmbeddingFile file{reader.header(), {}};
  while (auto s = reader.next()) file.sentences.push_back(std::move(*s));
  return file;
}

EmbeddingFile read_embeddings(const std::filesystem::path& path) {
  EmbeddingReader reader(path);
  EmbeddingFile file{reader.header(), {}};
  while (auto s = reader.next()) file.sentences.push_back(std::move(*s));
  return file;
}

void write_embeddings(std::ostream& out, const EmbeddingFile& file, Encoding encoding) {
  const auto& h = file.header;
  for (const auto& s : file.sentences) {
    if (s.vectors.dim() != h.dim) throw Error("dim mismatch in sentence '" + s.id + "'");
    if (s.vectors.rows() != s.tokens.size()) {
      throw Error("row count mismatch in sentence '" + s.id + "'");
    }
    if (s.word_spans.has_value() != (h.level == Level::subword)) {
      throw Error("word spans must be present iff level is subword ('" + s.id + "')");
    }
  }

  if (encoding == Encoding::binary) {
    out.write(kBinaryMagic.data(), kBinaryMagic.size());
    put_u32(out, h.version);
    put_u32(out, h.dim);
    put_u32(out, h.level == Level::word ? 0 : 1);
    for (const auto& s : file.sentences) {
      put_string(out, s.id);
      put_u32(out, static_cast<std::uint32_t>(s.tokens.size()));
      for (const auto& t : s.tokens) put_string(out, t);
      if (s.word_spans) {
        put_u32(out, static_cast<std::uint32_t>(s.word_spans->size()));
        for (const auto& sp : *s.word_spans) {
          put_u32(out, static_cast<std::uint32_t>(sp.start));
          put_u32(out, static_cast<std::uint32_t>(sp.end));
        }
      }
      for (double v : s.vectors.matrix().values()) put_f32(out, static_cast<float>(v));
    }
    return;
  }

  out << "#embf " << h.version << ' ' << h.dim << ' ' << to_string(h.level) << '\n';
  for (const auto& s : file.sentences) {
    if (s.id.empty() || has_space(s.id)) {
      throw Error("text encoding needs a non-empty id without whitespace");
    }
    out << "sentence " << s.id << ' ' << s.tokens.size() << '\n';
    out << "tokens";
    for (const auto& t : s.tokens) {
      if (t.empty() || has_space(t)) {
        throw Error("text encoding cannot hold token '" + t + "' in sentence '" + s.id + "'");
      }
      out << ' ' << t;
    }
    out << '\n';
    if (s.word_spans) {
      out << "spans";
      for (const auto& sp : *s.word_spans) out << ' ' << sp.start << ':' << sp.end;
      out << '\n';
    }
    for (std::size_t r = 0; r < s.vectors.rows(); ++r) {
      const auto row = s.vectors.row(r);
      for (std::size_t k = 0; k < row.size(); ++k) {
        out << (k ? " " : "") << format_float(static_cast<float>(row[k]));
      }
      out << '\n';
    }
  }
}

void write_embeddings(const std::filesystem::path& path, const EmbeddingFile& file,
                      Encoding encoding) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_embeddings(out, file, encoding);
}

// --- Pharaoh ---------------------------------------------------------------

namespace {

struct ParsedItem {
  Edge edge;
  bool possible = false;
};

ParsedItem parse_item(std::string_view item, int index_base, std::size_t line_no) {
  const auto sep = item.find_first_of("-p");
  long a = 0;
  long b = 0;
  if (sep == std::string_view::npos || !parse_number(item.substr(0, sep), a) ||
      !parse_number(item.substr(sep + 1), b) || a - index_base < 0 || b - index_base < 0) {
    throw FormatError("line " + std::to_string(line_no) + ": malformed alignment item '" +
                      std::string(item) + "'");
  }
  return {{static_cast<std::uint32_t>(a - index_base), static_cast<std::uint32_t>(b - index_base)},
          item[sep] == 'p'};
}

void check_base(int index_base) {
  if (index_base != 0 && index_base != 1) throw Error("index base must be 0 or 1");
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

}  // namespace

GoldAlignment parse_gold_line(std::string_view line, int index_base, std::size_t line_no) {
  check_base(index_base);
  std::vector<Edge> sure;
  std::vector<Edge> possible;
  for (auto item : split_ws(line)) {
    const auto parsed = parse_item(item, index_base, line_no);
    (parsed.possible ? possible : sure).push_back(parsed.edge);
  }
  GoldAlignment g = GoldAlignment::make(std::move(sure), std::move(possible));
  g.index_base = index_base;
  return g;
}

std::vector<GoldAlignment> read_gold(std::istream& in, int index_base) {
  std::vector<GoldAlignment> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    out.push_back(parse_gold_line(line, index_base, line_no));
  }
  return out;
}

std::vector<GoldAlignment> read_gold(const std::filesystem::path& path, int index_base) {
  auto in = open_input(path);
  return read_gold(in, index_base);
}

std::vector<AlignmentSet> read_alignments(
    std::istream& in, int index_base,
    std::span<const std::pair<std::size_t, std::size_t>> lengths) {
  check_base(index_base);
  std::vector<AlignmentSet> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<Edge> edges;
    std::size_t le = 0;
    std::size_t lf = 0;
    for (auto item : split_ws(line)) {
      const auto parsed = parse_item(item, index_base, line_no);
      if (parsed.possible) {
        throw FormatError("line " + std::to_string(line_no) +
                          ": possible marker in a plain alignment file");
      }
      edges.push_back(parsed.edge);
      le = std::max<std::size_t>(le, parsed.edge.src + 1);
      lf = std::max<std::size_t>(lf, parsed.edge.tgt + 1);
    }
    if (out.size() < lengths.size()) {
      const auto [src_len, tgt_len] = lengths[out.size()];
      if (le > src_len || lf > tgt_len) {
        throw FormatError("line " + std::to_string(line_no) + ": index exceeds sentence length");
      }
      le = src_len;
      lf = tgt_len;
    }
    out.emplace_back(le, lf, std::move(edges));
  }
  return out;
}

std::vector<AlignmentSet> read_alignments(
    const std::filesystem::path& path, int index_base,
    std::span<const std::pair<std::size_t, std::size_t>> lengths) {
  auto in = open_input(path);
  return read_alignments(in, index_base, lengths);
}

std::string format_alignment(const AlignmentSet& a) {
  std::string out;
  for (const auto& e : a) {
    if (!out.empty()) out += ' ';
    out += std::to_string(e.src);
    out += '-';
    out += std::to_string(e.tgt);
  }
  return out;
}

void write_alignments(std::ostream& out, std::span<const PairAlignment> run) {
  for (const auto& p : run) out << format_alignment(p.edges) << '\n';
}

void write_alignments(std::ostream& out, std::span<const AlignmentSet> alignments) {
  for (const auto& a : alignments) out << format_alignment(a) << '\n';
}

void write_alignments(const std::filesystem::path& path, std::span<const PairAlignment> run) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_alignments(out, run);
}

void write_gold(std::ostream& out, std::span<const GoldAlignment> golds, int index_base) {
  check_base(index_base);
  for (const auto& g : golds) {
    bool first = true;
    for (const auto& e : g.possible) {
      out << (first ? "" : " ") << e.src + index_base << (g.sure.contains(e) ? '-' : 'p')
          << e.tgt + index_base;
      first = false;
    }
    out << '\n';
  }
}

// --- side inputs ---------------------------------------------------------------

std::vector<std::vector<std::string>> read_token_lines(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    auto& toks = out.emplace_back();
    for (auto t : split_ws(line)) toks.emplace_back(t);
  }
  return out;
}

FrequencyTable read_frequency_table(const std::filesystem::path& path) {
  auto in = open_input(path);
  FrequencyTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto f = split_ws(line);
    if (f.empty()) continue;
    std::uint64_t count = 0;
    if (f.size() != 2 || !parse_number(f[1], count)) {
      throw FormatError("line " + std::to_string(line_no) + ": expected '<word> <count>'");
    }
    table[std::string(f[0])] += count;
  }
  return table;
}

// --- CSV -------------------------------------------------------------------------

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> score_csv_columns() {
  return {"precision", "recall", "f1", "aer", "n_pred", "n_sure", "n_possible",
          "n_pred_sure", "n_pred_possible"};
}

std::vector<std::string> score_csv_fields(const ScoreReport& r) {
  const auto& c = r.counts;
  return {format_double(r.precision),
          format_double(r.recall),
          format_double(r.f1),
          format_double(r.aer),
          std::to_string(c.predicted),
          std::to_string(c.sure),
          std::to_string(c.possible),
          std::to_string(c.predicted_sure),
          std::to_string(c.predicted_possible)};
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) out << ',';
    out << csv_escape(fields[k]);
  }
  out << "\r\n";
}

}  // namespace embalign
