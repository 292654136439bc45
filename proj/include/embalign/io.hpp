#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "embalign/alignment.hpp"
#include "embalign/eval.hpp"
#include "embalign/extract.hpp"
#include "embalign/matrix.hpp"
#include "embalign/types.hpp"

namespace embalign {

/// Malformed or inconsistent input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Embedding files
//
// Binary (canonical), all integers u32 little-endian, floats IEEE f32 LE:
//
//   "EMBF" version dim level(0 = word, 1 = subword)
//   per sentence:
//     id_len id_bytes
//     token_count { token_len token_bytes }*
//     [subword only] word_count { start end }*
//     token_count * dim floats, row-major
//
// Text (debug form), one record per line:
//
//   #embf <version> <dim> <word|subword>
//   sentence <id> <token_count>
//   tokens <tok>...
//   spans <start>:<end>...          (subword only)
//   <dim floats>                    (token_count lines)
//
// Readers detect the encoding from the first four bytes.
// ---------------------------------------------------------------------------

enum class Level { word, subword };
std::string_view to_string(Level level);
Level parse_level(std::string_view name);

enum class Encoding { binary, text };

inline constexpr std::uint32_t kEmbeddingFormatVersion = 1;

struct EmbeddingFileHeader {
  std::uint32_t version = kEmbeddingFormatVersion;
  std::uint32_t dim = 0;
  Level level = Level::word;

  bool operator==(const EmbeddingFileHeader&) const = default;
};

/// One side of a sentence pair as stored in an embedding file.
struct EmbeddedSentence {
  std::string id;
  std::vector<std::string> tokens;
  std::optional<WordSpans> word_spans;
  EmbeddingMatrix vectors;

  bool operator==(const EmbeddedSentence&) const = default;
};

/// Streaming reader. Validates every record against the header: constant
/// dim, spans present iff level is subword, finite values. Errors carry the
/// sentence id.
class EmbeddingReader {
 public:
  explicit EmbeddingReader(const std::filesystem::path& path);
  explicit EmbeddingReader(std::istream& in);

  const EmbeddingFileHeader& header() const { return header_; }
  Encoding encoding() const { return encoding_; }

  /// Next sentence, or nullopt at end of file.
  std::optional<EmbeddedSentence> next();

 private:
  void read_header();
  std::optional<EmbeddedSentence> next_binary();
  std::optional<EmbeddedSentence> next_text();
  void check(const EmbeddedSentence& s) const;

  std::ifstream file_;
  std::istream* in_ = nullptr;
  EmbeddingFileHeader header_;
  Encoding encoding_ = Encoding::binary;
  std::size_t line_no_ = 0;
};

struct EmbeddingFile {
  EmbeddingFileHeader header;
  std::vector<EmbeddedSentence> sentences;
};

EmbeddingFile read_embeddings(const std::filesystem::path& path);
EmbeddingFile read_embeddings(std::istream& in);

void write_embeddings(std::ostream& out, const EmbeddingFile& file,
                      Encoding encoding = Encoding::binary);
void write_embeddings(const std::filesystem::path& path, const EmbeddingFile& file,
                      Encoding encoding = Encoding::binary);

// ---------------------------------------------------------------------------
// Pharaoh alignment files: one line per sentence pair, whitespace separated
// "i-j" (sure) or "ipj" (possible) items.
// ---------------------------------------------------------------------------

/// Parses one gold line. `index_base` is 0 or 1; `line_no` only feeds
/// error messages.
GoldAlignment parse_gold_line(std::string_view line, int index_base,
                              std::size_t line_no = 0);

std::vector<GoldAlignment> read_gold(std::istream& in, int index_base = 1);
std::vector<GoldAlignment> read_gold(const std::filesystem::path& path, int index_base = 1);

/// Reads plain "i-j" alignment lines. Sentence lengths are taken from
/// `lengths` when given, otherwise inferred as max index + 1.
std::vector<AlignmentSet> read_alignments(
    std::istream& in, int index_base = 0,
    std::span<const std::pair<std::size_t, std::size_t>> lengths = {});
std::vector<AlignmentSet> read_alignments(
    const std::filesystem::path& path, int index_base = 0,
    std::span<const std::pair<std::size_t, std::size_t>> lengths = {});

/// "i-j" items, 0-based, row-major, single spaces.
std::string format_alignment(const AlignmentSet& a);

void write_alignments(std::ostream& out, std::span<const PairAlignment> run);
void write_alignments(std::ostream& out, std::span<const AlignmentSet> alignments);
void write_alignments(const std::filesystem::path& path, std::span<const PairAlignment> run);

/// Inverse of read_gold at the given base: sure edges as "i-j", possible-only
/// edges as "ipj".
void write_gold(std::ostream& out, std::span<const GoldAlignment> golds, int index_base = 0);

// ---------------------------------------------------------------------------
// Plain text side inputs
// ---------------------------------------------------------------------------

/// One whitespace-tokenized line per sentence (tokens or tags).
std::vector<std::vector<std::string>> read_token_lines(const std::filesystem::path& path);

/// "<word> <count>" per line.
FrequencyTable read_frequency_table(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// CSV reports
// ---------------------------------------------------------------------------

/// RFC 4180 quoting: fields containing a comma, quote or newline are quoted.
std::string csv_escape(std::string_view field);

/// Column names for the ScoreReport part of every CSV row.
std::vector<std::string> score_csv_columns();
std::vector<std::string> score_csv_fields(const ScoreReport& r);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace embalign
