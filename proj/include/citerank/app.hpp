#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "citerank/corpus_io.hpp"
#include "citerank/model.hpp"
#include "citerank/synthetic.hpp"

namespace citerank {

/// Everything one CLI invocation needs. Defaults are the ones echoed into
/// config.json when the user does not override them.
struct RunConfig {
  std::string command;  // rank | compare | timeline | units | generate

  std::optional<std::filesystem::path> input;
  CorpusFormat format = CorpusFormat::Csv;
  std::optional<SyntheticParams> generate;

  std::vector<Approach> approaches{Approach::Hazen, Approach::InCites, Approach::SCImago, Approach::P100,
                                   Approach::Cwts};
  std::size_t min_size = 100;
  std::vector<double> thresholds{50.0, 10.0, 5.0, 1.0};
  std::optional<int> horizon;
  std::vector<std::size_t> unit_sizes{50, 100, 500, 1000};
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "out";
  BoundaryRule boundary = BoundaryRule::Inclusive;
  TieRule ties = TieRule::Average;

  /// Year scored by `rank` and `compare`; defaults to the horizon.
  std::optional<int> year;
  /// Reference set shown by `compare` ("category|doc_type"); defaults to the
  /// largest surviving set.
  std::optional<std::string> compare_set;
  unsigned threads = 0;

  /// Throws std::invalid_argument naming the offending setting.
  void validate() const;

  /// Canonical JSON echo of every setting except out_dir and threads.
  std::string to_json() const;
  /// 16 hex digits of FNV-1a over to_json().
  std::string hash() const;
};

struct RunResult {
  std::vector<std::filesystem::path> files;
};

/// Executes one subcommand and writes its outputs under config.out_dir.
/// Every file is written to a temporary name and renamed into place.
/// Errors propagate as exceptions.
RunResult run(const RunConfig& config, std::ostream& log);

/// Parses argv into a RunConfig, runs it, and maps errors to a nonzero exit
/// status with a message on `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace citerank
