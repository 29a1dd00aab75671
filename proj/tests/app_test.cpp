#include "citerank/app.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "worked_examples.hpp"

namespace citerank {
namespace {

namespace fs = std::filesystem;

using Table = std::vector<std::vector<std::string>>;

class AppTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("citerank_app_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int cli(std::vector<std::string> args, const fs::path& out_dir) {
    args.insert(args.begin(), "citerank");
    args.push_back("--out");
    args.push_back(out_dir.string());
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return cli_main(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  // Data rows of a TSV output, header comment and column row removed.
  static Table read_tsv(const fs::path& path, std::string* header = nullptr) {
    std::ifstream in(path);
    EXPECT_TRUE(in) << path;
    Table rows;
    std::string line;
    std::getline(in, line);
    if (header) *header = line;
    std::getline(in, line);  // column names
    while (std::getline(in, line)) {
      std::vector<std::string> row;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, '\t')) row.push_back(cell);
      rows.push_back(row);
    }
    return rows;
  }

  static std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(AppTest, CompareMatchesRoundedExample) {
  const auto csv = dir_ / "example_b.csv";
  {
    std::ofstream out(csv);
    out << "paper_id,doc_type,subject_categories,journal_metric,c1\n";
    for (std::size_t i = 0; i < fixtures::kExampleB.size(); ++i) {
      out << "p" << i << ",article,X,," << fixtures::kExampleB[i] << "\n";
    }
  }
  ASSERT_EQ(cli({"compare", "--input", csv.string(), "--min-size", "1", "--approaches", "P100,HAZEN,CWTS"}, dir_ / "o"),
            0)
      << err_.str();
  const auto rows = read_tsv(dir_ / "o" / "compare.tsv");
  ASSERT_EQ(rows.size(), fixtures::kExampleB.size());
  for (const auto& row : rows) {
    ASSERT_EQ(row.size(), 4u);  // CWTS carries no score column
    EXPECT_NEAR(std::stod(row[2]), fixtures::example_b_rounded(std::stoll(row[1])), 0.35) << row[0];
  }
  EXPECT_EQ(rows.front()[1], "130");
  EXPECT_EQ(rows.back()[1], "0");
}

TEST_F(AppTest, RankCoversSurvivorsAndWritesSidecars) {
  ASSERT_EQ(cli({"rank", "--generate", "3x150", "--horizon", "4", "--min-size", "100", "--multi-share", "0.2",
                 "--review-share", "0.2", "--thresholds", "10"},
                dir_ / "o"),
            0)
      << err_.str();
  const auto exclusions = read_tsv(dir_ / "o" / "exclusions.tsv");
  std::size_t dropped_papers = 0;
  for (const auto& r : exclusions) dropped_papers += r[0] == "paper" ? 1 : 0;
  EXPECT_GT(dropped_papers, 0u);  // review sets are below 100

  for (const char* name : {"rank_HAZEN.tsv", "rank_INCITES.tsv", "rank_SCIMAGO.tsv", "rank_P100.tsv",
                           "rank_CWTS_x10.tsv"}) {
    std::string header;
    const auto rows = read_tsv(dir_ / "o" / name, &header);
    EXPECT_EQ(rows.size() + dropped_papers, 450u) << name;
    EXPECT_EQ(header.rfind("# command=rank", 0), 0u) << header;
  }
  EXPECT_TRUE(fs::exists(dir_ / "o" / "config.json"));
  EXPECT_NE(out_.str().find("config.json"), std::string::npos);
}

TEST_F(AppTest, FullClassCoversEveryPaper) {
  ASSERT_EQ(cli({"timeline", "--generate", "2x120", "--horizon", "3", "--thresholds", "100", "--approaches",
                 "HAZEN,INCITES,P100"},
                dir_ / "o"),
            0)
      << err_.str();
  for (const char* name : {"timeline_HAZEN_x100.tsv", "timeline_INCITES_x100.tsv", "timeline_P100_x100.tsv"}) {
    const auto rows = read_tsv(dir_ / "o" / name);
    ASSERT_EQ(rows.size(), 3u);
    for (const auto& r : rows) {
      EXPECT_EQ(r[1], "240.0000") << name;
      EXPECT_EQ(r[3], "100.0000") << name;
    }
  }
}

TEST_F(AppTest, UnitsConvergeAtFinalYear) {
  ASSERT_EQ(cli({"units", "--generate", "3x200", "--unit-sizes", "50", "--samples", "100", "--approaches",
                 "HAZEN,CWTS"},
                dir_ / "o"),
            0)
      << err_.str();
  const auto rows = read_tsv(dir_ / "o" / "units_HAZEN_n50.tsv");
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows.back()[1], "1.0000");
  EXPECT_FALSE(fs::exists(dir_ / "o" / "units_CWTS_n50.tsv"));
}

TEST_F(AppTest, ByteIdenticalReruns) {
  const std::vector<std::string> args{"timeline", "--generate", "3x150", "--thresholds", "10,1", "--seed", "7"};
  ASSERT_EQ(cli(args, dir_ / "a"), 0) << err_.str();
  ASSERT_EQ(cli(args, dir_ / "b"), 0) << err_.str();
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir_ / "a")) {
    EXPECT_EQ(slurp(e.path()), slurp(dir_ / "b" / e.path().filename())) << e.path().filename();
    ++files;
  }
  EXPECT_EQ(files, 2u + 4u * 2u + 2u);  // config, exclusions, 4 score approaches x 2, CWTS x 2

  auto other = args;
  other[6] = "8";
  ASSERT_EQ(cli(other, dir_ / "c"), 0);
  EXPECT_NE(slurp(dir_ / "a" / "config.json"), slurp(dir_ / "c" / "config.json"));
}

TEST_F(AppTest, GenerateThenReadBack) {
  ASSERT_EQ(cli({"generate", "--generate", "2x50", "--horizon", "5"}, dir_ / "g"), 0) << err_.str();
  ASSERT_EQ(cli({"rank", "--input", (dir_ / "g" / "corpus.csv").string(), "--min-size", "10", "--approaches", "P100"},
                dir_ / "o"),
            0)
      << err_.str();
  EXPECT_EQ(read_tsv(dir_ / "o" / "rank_P100.tsv").size(), 100u);
}

TEST_F(AppTest, ErrorsExitNonzero) {
  EXPECT_NE(cli({"bogus", "--generate", "2x10"}, dir_ / "o"), 0);
  EXPECT_NE(cli({"rank"}, dir_ / "o"), 0);
  EXPECT_NE(cli({"rank", "--generate", "2x10", "--input", "x.csv"}, dir_ / "o"), 0);
  EXPECT_NE(cli({"rank", "--generate", "2by10"}, dir_ / "o"), 0);
  EXPECT_NE(cli({"rank", "--generate", "2x10", "--approaches", "FOO"}, dir_ / "o"), 0);
  EXPECT_NE(cli({"rank", "--generate", "2x10", "--thresholds", "0"}, dir_ / "o"), 0);
  EXPECT_NE(cli({"rank", "--generate", "2x10", "--ties", "MEDIAN"}, dir_ / "o"), 0);
  EXPECT_NE(cli({"rank", "--generate", "2x10"}, dir_ / "o"), 0);  // every set below 100
  EXPECT_FALSE(err_.str().empty());
  EXPECT_NE(cli({"rank", "--input", (dir_ / "missing.csv").string()}, dir_ / "o"), 0);

  const auto bad = dir_ / "bad.csv";
  {
    std::ofstream out(bad);
    out << "paper_id,doc_type,subject_categories,journal_metric,c1,c2\nA,article,X,,1,-2\n";
  }
  EXPECT_NE(cli({"rank", "--input", bad.string(), "--min-size", "1"}, dir_ / "o"), 0);
  EXPECT_NE(err_.str().find("line 2"), std::string::npos) << err_.str();
}

TEST(RunConfig, HashTracksSettings) {
  RunConfig a;
  a.command = "rank";
  a.generate = SyntheticParams{};
  auto b = a;
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(a.hash().size(), 16u);
  b.ties = TieRule::Min;
  EXPECT_NE(a.hash(), b.hash());
  b = a;
  b.out_dir = "elsewhere";
  EXPECT_EQ(a.hash(), b.hash());
}

}  // namespace
}  // namespace citerank
