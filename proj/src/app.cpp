#include "citerank/app.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "citerank/longitudinal.hpp"
#include "citerank/refsets.hpp"

namespace citerank {

namespace {

using nlohmann::ordered_json;

constexpr std::string_view kCommands[] = {"rank", "compare", "timeline", "units", "generate"};

std::string fixed4(double v) { return fmt::format("{:.4f}", v); }

// 10 -> "10", 2.5 -> "2.5"
std::string threshold_label(double x) { return fmt::format("{}", x); }

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

class Emitter {
 public:
  Emitter(const RunConfig& config, RunResult& result) : config_(config), result_(result), hash_(config.hash()) {}

  void table(const std::string& file, std::string_view approach, std::string_view threshold,
             const std::vector<std::string>& columns, const std::vector<std::vector<std::string>>& rows) {
    std::string text = fmt::format("# command={} approach={} threshold={} config={}\n", config_.command, approach,
                                   threshold, hash_);
    text += join(columns);
    for (const auto& row : rows) text += join(row);
    emit(file, text);
  }

  void emit(const std::string& file, const std::string& content) {
    const auto path = config_.out_dir / file;
    write_atomically(path, content);
    result_.files.push_back(path);
  }

  const std::string& hash() const { return hash_; }

 private:
  static std::string join(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line.push_back('\t');
      line += cells[i];
    }
    line.push_back('\n');
    return line;
  }

  const RunConfig& config_;
  RunResult& result_;
  std::string hash_;
};

Corpus obtain_corpus(const RunConfig& config) {
  if (config.input) return load_corpus(*config.input, config.format, config.horizon);
  SyntheticParams params = *config.generate;
  params.seed = config.seed;
  if (config.horizon) params.horizon = *config.horizon;
  return generate_synthetic(params);
}

ApproachSpec spec_for(const RunConfig& config, Approach approach, std::optional<double> threshold = std::nullopt) {
  auto spec = ApproachSpec::make(approach, threshold);
  spec.tie_rule = config.ties;
  spec.boundary_rule = config.boundary;
  return spec;
}

// One entry per score approach, and one per threshold for CWTS.
struct Variant {
  ApproachSpec spec;
  std::string label;
};

std::vector<Variant> variants(const RunConfig& config) {
  std::vector<Variant> out;
  for (Approach a : config.approaches) {
    if (a == Approach::Cwts) {
      for (double x : config.thresholds) out.push_back({spec_for(config, a, x), "CWTS_x" + threshold_label(x)});
    } else {
      out.push_back({spec_for(config, a), std::string(to_string(a))});
    }
  }
  return out;
}

void emit_exclusions(Emitter& emit, const ExclusionReport& report) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : report.dropped_sets) rows.push_back({"set", to_string(s.key), std::to_string(s.size)});
  for (const auto& p : report.dropped_papers) rows.push_back({"paper", p.paper_id, p.reason});
  emit.table("exclusions.tsv", "all", "none", {"kind", "id", "detail"}, rows);
}

int resolve_year(const RunConfig& config, const Corpus& corpus) {
  const int year = config.year.value_or(corpus.horizon());
  if (year < 1 || year > corpus.horizon()) {
    throw std::invalid_argument(fmt::format("--year {} outside 1..{}", year, corpus.horizon()));
  }
  return year;
}

void run_rank(const RunConfig& config, const Corpus& corpus, const ReferenceSets& refs, Emitter& emit) {
  const int year = resolve_year(config, corpus);
  for (const auto& v : variants(config)) {
    const auto matrix = scores_by_year(corpus, refs.sets, v.spec, config.threads);
    const auto column = matrix.year_column(year);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(matrix.rows());
    for (std::size_t r = 0; r < matrix.rows(); ++r) rows.push_back({matrix.paper_ids()[r], fixed4(column[r])});
    const auto threshold = v.spec.class_threshold ? threshold_label(*v.spec.class_threshold) : "none";
    emit.table("rank_" + v.label + ".tsv", to_string(v.spec.approach), threshold,
               {"paper_id", v.spec.approach == Approach::Cwts ? "mean_p" : "score"}, rows);
  }
}

void run_compare(const RunConfig& config, const Corpus& corpus, const ReferenceSets& refs, Emitter& emit) {
  const int year = resolve_year(config, corpus);
  const ReferenceSet* chosen = nullptr;
  if (config.compare_set) {
    for (const auto& s : refs.sets) {
      if (to_string(s.key) == *config.compare_set) chosen = &s;
    }
    if (!chosen) throw std::invalid_argument("no surviving reference set '" + *config.compare_set + "'");
  } else {
    for (const auto& s : refs.sets) {
      if (!chosen || s.size() > chosen->size()) chosen = &s;
    }
  }

  std::vector<std::string> columns{"paper_id", "cites"};
  std::vector<std::vector<double>> scores;
  for (Approach a : config.approaches) {
    if (!is_score_approach(a)) continue;
    columns.emplace_back(to_string(a));
    scores.push_back(score_set_members(*chosen, corpus, spec_for(config, a), year));
  }

  std::vector<std::size_t> order(chosen->size());
  std::vector<std::int64_t> cites(chosen->size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    order[k] = k;
    cites[k] = cumulative_citations(corpus[chosen->members[k]], year);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cites[a] > cites[b]; });

  std::vector<std::vector<std::string>> rows;
  for (std::size_t k : order) {
    std::vector<std::string> row{chosen->member_ids[k], std::to_string(cites[k])};
    for (const auto& col : scores) row.push_back(fixed4(col[k]));
    rows.push_back(std::move(row));
  }
  emit.table("compare.tsv", "all", "none", columns, rows);
}

void run_timeline(const RunConfig& config, const Corpus& corpus, const ReferenceSets& refs, Emitter& emit) {
  for (Approach a : config.approaches) {
    if (a == Approach::Cwts) {
      for (double x : config.thresholds) {
        const auto matrix = scores_by_year(corpus, refs.sets, spec_for(config, a, x), config.threads);
        const auto expected = class_count_series(matrix, x, config.boundary);
        const auto thresholded = cwts_threshold_count_series(matrix);
        const auto persist = persistence_series(matrix, x, config.boundary);
        std::vector<std::vector<std::string>> rows;
        for (std::size_t t = 0; t < expected.size(); ++t) {
          rows.push_back({std::to_string(t + 1), fixed4(expected[t]), fixed4(thresholded[t]), fixed4(persist.counts[t]),
                          fixed4(persist.percents[t])});
        }
        emit.table("timeline_CWTS_x" + threshold_label(x) + ".tsv", "CWTS", threshold_label(x),
                   {"year", "expected_count_sum_p", "count_p_ge_0.5", "persist_count", "persist_percent"}, rows);
      }
      continue;
    }
    const auto matrix = scores_by_year(corpus, refs.sets, spec_for(config, a), config.threads);
    for (double x : config.thresholds) {
      const auto counts = class_count_series(matrix, x, config.boundary);
      const auto persist = persistence_series(matrix, x, config.boundary);
      std::vector<std::vector<std::string>> rows;
      for (std::size_t t = 0; t < counts.size(); ++t) {
        rows.push_back({std::to_string(t + 1), fixed4(counts[t]), fixed4(persist.counts[t]), fixed4(persist.percents[t])});
      }
      emit.table(fmt::format("timeline_{}_x{}.tsv", to_string(a), threshold_label(x)), to_string(a),
                 threshold_label(x), {"year", "count", "persist_count", "persist_percent"}, rows);
    }
  }
}

void run_units(const RunConfig& config, const Corpus& corpus, const ReferenceSets& refs, Emitter& emit,
               std::ostream& log) {
  std::vector<ScoreMatrix> matrices;
  for (Approach a : config.approaches) {
    if (!is_score_approach(a)) {
      log << "units: CWTS yields class fractions, not unit scores; skipped\n";
      continue;
    }
    matrices.push_back(scores_by_year(corpus, refs.sets, spec_for(config, a), config.threads));
  }
  if (matrices.empty()) return;
  const auto& pool = matrices.front().paper_ids();
  for (std::size_t size : config.unit_sizes) {
    // One draw per size, shared by every approach.
    const auto units = sample_units(pool, size, config.samples, config.seed ^ (0x9e3779b97f4a7c15ULL * size));
    for (const auto& matrix : matrices) {
      const auto series = correlation_series_with_gaps(units, matrix);
      std::vector<std::vector<std::string>> rows;
      for (std::size_t t = 0; t < series.size(); ++t) {
        rows.push_back({std::to_string(t + 1), series[t] ? fixed4(*series[t]) : "NA"});
      }
      const auto name = to_string(matrix.spec().approach);
      emit.table(fmt::format("units_{}_n{}.tsv", name, size), name, "none", {"year", "spearman"}, rows);
    }
  }
}

}  // namespace

void RunConfig::validate() const {
  if (std::find(std::begin(kCommands), std::end(kCommands), command) == std::end(kCommands)) {
    throw std::invalid_argument("unknown subcommand '" + command + "'");
  }
  if (input.has_value() == generate.has_value()) {
    throw std::invalid_argument("give exactly one of --input and --generate");
  }
  if (generate) generate->validate();
  if (approaches.empty()) throw std::invalid_argument("no approaches selected");
  if (min_size == 0) throw std::invalid_argument("--min-size must be at least 1");
  if (thresholds.empty()) throw std::invalid_argument("no thresholds given");
  for (double x : thresholds) {
    if (!(x > 0.0 && x <= 100.0)) throw std::invalid_argument(fmt::format("threshold {} outside (0, 100]", x));
  }
  if (horizon && *horizon < 1) throw std::invalid_argument("--horizon must be at least 1");
  for (std::size_t s : unit_sizes) {
    if (s == 0) throw std::invalid_argument("unit sizes must be positive");
  }
  if (command == "units" && samples < 2) throw std::invalid_argument("--samples must be at least 2");
}

std::string RunConfig::to_json() const {
  ordered_json j;
  j["command"] = command;
  if (input) {
    j["input"] = input->generic_string();
    j["format"] = format == CorpusFormat::Csv ? "csv" : "jsonl";
  } else if (generate) {
    j["generate"] = {{"fields", generate->fields},
                     {"papers_per_field", generate->papers_per_field},
                     {"horizon", horizon.value_or(generate->horizon)},
                     {"mean_rate", generate->mean_rate},
                     {"skew", generate->skew},
                     {"field_spread", generate->field_spread},
                     {"max_peak_year", generate->max_peak_year},
                     {"uncited_share", generate->uncited_share},
                     {"multi_category_share", generate->multi_category_share},
                     {"review_share", generate->review_share}};
  }
  auto names = ordered_json::array();
  for (Approach a : approaches) names.push_back(std::string(to_string(a)));
  j["approaches"] = names;
  j["min_size"] = min_size;
  j["thresholds"] = thresholds;
  j["horizon"] = horizon ? ordered_json(*horizon) : ordered_json(nullptr);
  j["unit_sizes"] = unit_sizes;
  j["samples"] = samples;
  j["seed"] = seed;
  j["boundary"] = std::string(to_string(boundary));
  j["ties"] = std::string(to_string(ties));
  j["year"] = year ? ordered_json(*year) : ordered_json(nullptr);
  j["compare_set"] = compare_set ? ordered_json(*compare_set) : ordered_json(nullptr);
  return j.dump(2);
}

std::string RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_json()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

RunResult run(const RunConfig& config, std::ostream& log) {
  config.validate();
  std::filesystem::create_directories(config.out_dir);

  RunResult result;
  Emitter emit(config, result);
  emit.emit("config.json", config.to_json() + "\n");

  const Corpus corpus = obtain_corpus(config);
  log << fmt::format("corpus: {} papers, horizon {}\n", corpus.size(), corpus.horizon());

  if (config.command == "generate") {
    std::ostringstream text;
    if (config.format == CorpusFormat::Csv) {
      write_csv(corpus, text);
      emit.emit("corpus.csv", text.str());
    } else {
      write_jsonl(corpus, text);
      emit.emit("corpus.jsonl", text.str());
    }
    return result;
  }

  const auto refs = build_reference_sets(corpus, config.min_size);
  emit_exclusions(emit, refs.report);
  log << fmt::format("reference sets: {} kept, {} dropped; {} papers excluded\n", refs.sets.size(),
                     refs.report.dropped_sets.size(), refs.report.dropped_papers.size());
  if (refs.sets.empty()) throw std::runtime_error("no reference set reaches --min-size; nothing to score");

  if (config.command == "rank") {
    run_rank(config, corpus, refs, emit);
  } else if (config.command == "compare") {
    run_compare(config, corpus, refs, emit);
  } else if (config.command == "timeline") {
    run_timeline(config, corpus, refs, emit);
  } else {
    run_units(config, corpus, refs, emit, log);
  }
  return result;
}

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

SyntheticParams parse_generate(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw std::invalid_argument("--generate expects FIELDSxPAPERS, e.g. 3x500");
  SyntheticParams params;
  try {
    std::size_t used = 0;
    params.fields = std::stoul(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument(text);
    params.papers_per_field = std::stoul(text.substr(x + 1), &used);
    if (used != text.size() - x - 1) throw std::invalid_argument(text);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("--generate expects FIELDSxPAPERS, e.g. 3x500; got '" + text + "'");
  }
  return params;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Percentile and rank normalization of citation impact"};
  RunConfig config;
  SyntheticParams gen;

  std::string input, format = "csv", generate, approaches, thresholds, unit_sizes, boundary = "INCLUSIVE",
                     ties = "AVERAGE", out_dir = "out", compare_set;
  std::optional<int> horizon, year;

  app.add_option("command", config.command, "rank | compare | timeline | units | generate")->required();
  app.add_option("--input", input, "Corpus file");
  app.add_option("--format", format, "csv or jsonl")->capture_default_str();
  app.add_option("--generate", generate, "Synthetic corpus FIELDSxPAPERS, e.g. 3x500");
  app.add_option("--approaches", approaches, "Comma list of P_LOW,P_INC,HAZEN,INCITES,SCIMAGO,P100,CWTS");
  app.add_option("--min-size", config.min_size, "Smallest reference set kept")->capture_default_str();
  app.add_option("--thresholds", thresholds, "Comma list of top-x% classes (default 50,10,5,1)");
  app.add_option("--horizon", horizon, "Years per paper (generator default 10)");
  app.add_option("--unit-sizes", unit_sizes, "Comma list of research unit sizes (default 50,100,500,1000)");
  app.add_option("--samples", config.samples, "Research units per size")->capture_default_str();
  app.add_option("--seed", config.seed, "Seed for generation and sampling")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--boundary", boundary, "INCLUSIVE or STRICT")->capture_default_str();
  app.add_option("--ties", ties, "AVERAGE, MIN or MAX")->capture_default_str();
  app.add_option("--year", year, "Year scored by rank/compare (default: horizon)");
  app.add_option("--set", compare_set, "Reference set for compare, as category|doc_type");
  app.add_option("--threads", config.threads, "Worker threads (0 = all cores)");
  app.add_option("--uncited-share", gen.uncited_share, "Generator: share of never-cited papers")->capture_default_str();
  app.add_option("--multi-share", gen.multi_category_share, "Generator: share of papers with two categories")
      ->capture_default_str();
  app.add_option("--skew", gen.skew, "Generator: lognormal sigma of citation rates")->capture_default_str();
  app.add_option("--field-spread", gen.field_spread, "Generator: log-range of field citation levels")
      ->capture_default_str();
  app.add_option("--review-share", gen.review_share, "Generator: share of reviews")->capture_default_str();
  app.add_option("--mean-rate", gen.mean_rate, "Generator: mean yearly citations at peak")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (!input.empty()) config.input = input;
    config.format = parse_corpus_format(format);
    if (!generate.empty()) {
      auto params = parse_generate(generate);
      gen.fields = params.fields;
      gen.papers_per_field = params.papers_per_field;
      config.generate = gen;
    }
    if (!approaches.empty()) {
      config.approaches.clear();
      for (const auto& name : split_list(approaches)) config.approaches.push_back(parse_approach(name));
    }
    if (!thresholds.empty()) {
      config.thresholds.clear();
      for (const auto& t : split_list(thresholds)) config.thresholds.push_back(std::stod(t));
    }
    if (!unit_sizes.empty()) {
      config.unit_sizes.clear();
      for (const auto& s : split_list(unit_sizes)) config.unit_sizes.push_back(std::stoul(s));
    }
    config.horizon = horizon;
    config.year = year;
    if (!compare_set.empty()) config.compare_set = compare_set;
    config.out_dir = out_dir;
    config.boundary = parse_boundary_rule(boundary);
    config.ties = parse_tie_rule(ties);

    const auto result = run(config, err);
    for (const auto& f : result.files) out << f.generic_string() << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 1;
}

}  // namespace citerank
