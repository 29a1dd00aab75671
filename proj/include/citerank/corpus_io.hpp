#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "citerank/model.hpp"

namespace citerank {

enum class CorpusFormat { Csv, Jsonl };

CorpusFormat parse_corpus_format(std::string_view name);

/// Malformed input; line() is 1-based and counts the header.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// CSV with a header row: paper_id, doc_type, subject_categories
/// (semicolon-separated), journal_metric (may be empty), c1..cT. Fields may
/// be double-quoted. The horizon is the number of c columns; when `horizon` is
/// given it must match.
Corpus read_csv(std::istream& in, std::optional<int> horizon = std::nullopt);

/// One JSON object per line with the same field names. Citations come either
/// as a "yearly_citations" array or as "c1".."cT" members; categories as an
/// array or a semicolon-separated string; journal_metric may be null/absent.
Corpus read_jsonl(std::istream& in, std::optional<int> horizon = std::nullopt);

/// Throws std::runtime_error when the file cannot be opened.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format, std::optional<int> horizon = std::nullopt);

void write_csv(const Corpus& corpus, std::ostream& out);
void write_jsonl(const Corpus& corpus, std::ostream& out);

}  // namespace citerank
