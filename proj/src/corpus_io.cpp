#include "citerank/corpus_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

namespace citerank {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw ParseError(line_no, "unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_categories(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(';', start);
    const auto part = trim(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (!part.empty()) out.emplace_back(part);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::int64_t parse_count(std::string_view text, std::size_t line_no, std::string_view column) {
  text = trim(text);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError(line_no, fmt::format("column {}: '{}' is not an integer", column, text));
  }
  if (value < 0) throw ParseError(line_no, fmt::format("column {}: negative citation count {}", column, value));
  return value;
}

std::optional<double> parse_metric(std::string_view text, std::size_t line_no) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(text), &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    if (!(v >= 0.0)) throw ParseError(line_no, fmt::format("journal_metric {} is negative", v));
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(line_no, fmt::format("journal_metric '{}' is not a number", text));
  }
}

bool blank(const std::string& line) { return trim(line).empty(); }

void check_horizon(std::optional<int> expected, int found, std::size_t line_no) {
  if (expected && *expected != found) {
    throw ParseError(line_no, fmt::format("input has {} yearly columns, horizon is {}", found, *expected));
  }
}

Corpus finish(std::vector<PaperRecord> records, int horizon) {
  if (records.empty()) throw ParseError(1, "no paper records");
  return validate_corpus(std::move(records), horizon);
}

}  // namespace

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "csv" || name == "CSV") return CorpusFormat::Csv;
  if (name == "jsonl" || name == "JSONL") return CorpusFormat::Jsonl;
  throw std::invalid_argument("unknown corpus format '" + std::string(name) + "'");
}

Corpus read_csv(std::istream& in, std::optional<int> horizon) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header row");
  const auto header = split_csv_line(line, 1);
  constexpr std::string_view kFixed[] = {"paper_id", "doc_type", "subject_categories", "journal_metric"};
  if (header.size() < std::size(kFixed) + 1) throw ParseError(1, "header needs paper_id, doc_type, subject_categories, journal_metric, c1..cT");
  for (std::size_t i = 0; i < std::size(kFixed); ++i) {
    if (trim(header[i]) != kFixed[i]) throw ParseError(1, fmt::format("column {} must be '{}'", i + 1, kFixed[i]));
  }
  const int years = static_cast<int>(header.size() - std::size(kFixed));
  for (int t = 1; t <= years; ++t) {
    if (trim(header[std::size(kFixed) + static_cast<std::size_t>(t) - 1]) != fmt::format("c{}", t)) {
      throw ParseError(1, fmt::format("expected column 'c{}'", t));
    }
  }
  check_horizon(horizon, years, 1);

  std::vector<PaperRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto fields = split_csv_line(line, line_no);
    if (fields.size() != header.size()) {
      throw ParseError(line_no, fmt::format("expected {} fields, found {}", header.size(), fields.size()));
    }
    PaperRecord rec;
    rec.paper_id = std::string(trim(fields[0]));
    rec.doc_type = std::string(trim(fields[1]));
    rec.subject_categories = split_categories(fields[2]);
    rec.journal_metric = parse_metric(fields[3], line_no);
    rec.yearly_citations.reserve(static_cast<std::size_t>(years));
    for (int t = 1; t <= years; ++t) {
      rec.yearly_citations.push_back(
          parse_count(fields[std::size(kFixed) + static_cast<std::size_t>(t) - 1], line_no, fmt::format("c{}", t)));
    }
    if (rec.paper_id.empty()) throw ParseError(line_no, "empty paper_id");
    if (rec.subject_categories.empty()) throw ParseError(line_no, "no subject categories");
    records.push_back(std::move(rec));
  }
  return finish(std::move(records), years);
}

Corpus read_jsonl(std::istream& in, std::optional<int> horizon) {
  std::vector<PaperRecord> records;
  std::optional<int> years = horizon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, e.what());
    }
    if (!obj.is_object()) throw ParseError(line_no, "expected a JSON object");

    PaperRecord rec;
    try {
      rec.paper_id = obj.at("paper_id").get<std::string>();
      rec.doc_type = obj.at("doc_type").get<std::string>();
      const auto& cats = obj.at("subject_categories");
      if (cats.is_string()) {
        rec.subject_categories = split_categories(cats.get<std::string>());
      } else {
        rec.subject_categories = cats.get<std::vector<std::string>>();
      }
      if (auto it = obj.find("journal_metric"); it != obj.end() && !it->is_null()) {
        rec.journal_metric = it->get<double>();
      }
      if (auto it = obj.find("yearly_citations"); it != obj.end()) {
        rec.yearly_citations = it->get<std::vector<std::int64_t>>();
      } else {
        for (int t = 1;; ++t) {
          auto c = obj.find(fmt::format("c{}", t));
          if (c == obj.end()) break;
          rec.yearly_citations.push_back(c->get<std::int64_t>());
        }
      }
    } catch (const json::exception& e) {
      throw ParseError(line_no, e.what());
    }
    if (rec.yearly_citations.empty()) throw ParseError(line_no, "no citation counts");
    for (std::size_t t = 0; t < rec.yearly_citations.size(); ++t) {
      if (rec.yearly_citations[t] < 0) {
        throw ParseError(line_no, fmt::format("c{}: negative citation count {}", t + 1, rec.yearly_citations[t]));
      }
    }
    if (rec.journal_metric && !(*rec.journal_metric >= 0.0)) throw ParseError(line_no, "negative journal_metric");
    const int found = static_cast<int>(rec.yearly_citations.size());
    if (!years) years = found;
    check_horizon(years, found, line_no);
    records.push_back(std::move(rec));
  }
  return finish(std::move(records), years.value_or(0));
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format, std::optional<int> horizon) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file " + path.string());
  return format == CorpusFormat::Csv ? read_csv(in, horizon) : read_jsonl(in, horizon);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join_categories(const std::vector<std::string>& cats) {
  std::string out;
  for (std::size_t i = 0; i < cats.size(); ++i) {
    if (i) out.push_back(';');
    out += cats[i];
  }
  return out;
}

}  // namespace

void write_csv(const Corpus& corpus, std::ostream& out) {
  out << "paper_id,doc_type,subject_categories,journal_metric";
  for (int t = 1; t <= corpus.horizon(); ++t) out << ",c" << t;
  out << '\n';
  for (const auto& p : corpus.papers()) {
    out << csv_field(p.paper_id) << ',' << csv_field(p.doc_type) << ',' << csv_field(join_categories(p.subject_categories))
        << ',';
    if (p.journal_metric) out << fmt::format("{}", *p.journal_metric);
    for (auto c : p.yearly_citations) out << ',' << c;
    out << '\n';
  }
}

void write_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const auto& p : corpus.papers()) {
    json obj = {{"paper_id", p.paper_id},
                {"doc_type", p.doc_type},
                {"subject_categories", p.subject_categories},
                {"journal_metric", p.journal_metric ? json(*p.journal_metric) : json(nullptr)},
                {"yearly_citations", p.yearly_citations}};
    out << obj.dump() << '\n';
  }
}

}  // namespace citerank
