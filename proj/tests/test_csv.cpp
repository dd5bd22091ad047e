#include <gtest/gtest.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "hemo1d/presets.hpp"
#include "hemo1d/scenario.hpp"

using namespace hemo;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("hemo1d_csv_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(Csv, RoundTripIsBitExact) {
  TempDir d;
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::uint64_t> bits;
  Table t{{"x", "A", "Au", "u", "p", "alpha"}, {}};
  for (int i = 0; i < 500; ++i) {
    std::vector<double> row;
    for (int k = 0; k < 6; ++k) {
      double v;
      do {
        const std::uint64_t b = bits(rng);
        std::memcpy(&v, &b, sizeof v);
      } while (!std::isfinite(v));
      row.push_back(v);
    }
    t.rows.push_back(row);
  }
  t.rows.push_back({0.0, -0.0, std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max(),
                    0.1, 1.0 / 3.0});
  const fs::path p = d.path() / "sub" / "t.csv";  // parent created on demand
  write_csv(p, t);
  const Table r = read_csv(p);
  ASSERT_EQ(r.header, t.header);
  ASSERT_EQ(r.rows.size(), t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    for (std::size_t k = 0; k < 6; ++k) EXPECT_TRUE(same_bits(r.rows[i][k], t.rows[i][k])) << i << "," << k;
  EXPECT_EQ(r.values("p").size(), t.rows.size());
  EXPECT_THROW(r.column("q"), IoError);
}

TEST(Csv, MetadataRoundTrip) {
  TempDir d;
  const fs::path p = d.path() / "m.csv";
  const Metadata m{{"scenario", "rp2b"}, {"t", "0.007"}, {"note", "a = b, with spaces"}};
  write_metadata(p, m);
  EXPECT_TRUE(fs::exists(d.path() / "m.csv.meta"));
  EXPECT_EQ(read_metadata(p), m);
  EXPECT_THROW(write_metadata(p, {{"bad\nkey", "v"}}), IoError);
  EXPECT_THROW(write_metadata(p, {{"k", "two\nlines"}}), IoError);
}

TEST(Csv, MalformedFilesAreRejected) {
  TempDir d;
  auto put = [&](const std::string& name, const std::string& text) {
    std::ofstream(d.path() / name) << text;
    return d.path() / name;
  };
  EXPECT_THROW(read_csv(put("empty.csv", "")), IoError);
  EXPECT_THROW(read_csv(put("ragged.csv", "a,b\n1,2\n3\n")), IoError);
  EXPECT_THROW(read_csv(put("text.csv", "a,b\n1,x\n")), IoError);
  EXPECT_THROW(read_csv(d.path() / "missing.csv"), IoError);
  EXPECT_THROW(read_metadata(d.path() / "missing.csv"), IoError);
  EXPECT_THROW(write_csv(d.path() / "w.csv", Table{{"a", "b"}, {{1.0}}}), IoError);
}

TEST(Csv, UnwritablePathsRaiseIoError) {
  TempDir d;
  const fs::path file = d.path() / "plain";
  std::ofstream(file) << "x";
  // a regular file where a directory is needed
  EXPECT_THROW(write_csv(file / "out.csv", Table{{"a"}, {{1.0}}}), IoError);
  EXPECT_THROW(write_metadata(file / "out.csv", {{"k", "v"}}), IoError);
  EXPECT_THROW(write_csv(d.path(), Table{{"a"}, {{1.0}}}), IoError);  // a directory, not a file
}

TEST(Csv, EnvironmentOverridesTheOutputDirectory) {
  ::unsetenv(kOutDirEnv);
  EXPECT_EQ(output_dir("from_config"), fs::path("from_config"));
  ::setenv(kOutDirEnv, "/tmp/elsewhere", 1);
  EXPECT_EQ(output_dir("from_config"), fs::path("/tmp/elsewhere"));
  ::setenv(kOutDirEnv, "", 1);  // empty counts as unset
  EXPECT_EQ(output_dir("from_config"), fs::path("from_config"));
  ::unsetenv(kOutDirEnv);
}

TEST(Csv, RunOutputsHaveTheDocumentedLayout) {
  TempDir d;
  SimConfig c = rp_config(2, 'b');
  c.t_end = 2e-4;
  const RunResult r = run_scenario(c);
  const auto files = write_outputs(r, d.path());
  ASSERT_EQ(files.size(), 1u + c.probes.size());

  const Table prof = read_csv(d.path() / "rp2b_profile.csv");
  EXPECT_EQ(prof.header, (std::vector<std::string>{"x", "A", "Au", "u", "p", "alpha"}));
  ASSERT_EQ(prof.rows.size(), static_cast<std::size_t>(c.nx));
  for (const auto& row : prof.rows) {
    EXPECT_NEAR(row[3], row[2] / row[1], 1e-15 * (1.0 + std::abs(row[3])));
    EXPECT_GT(row[5], 0.0);
  }
  EXPECT_NEAR(prof.rows.front()[0], 0.5 * c.L / c.nx, 1e-15);

  for (const auto& p : c.probes) {
    const fs::path path = d.path() / ("rp2b_probe_" + p.name + ".csv");
    const Table t = read_csv(path);
    EXPECT_EQ(t.header, (std::vector<std::string>{"t", "A", "Au", "u", "p", "alpha"}));
    EXPECT_EQ(t.rows.size(), static_cast<std::size_t>(r.steps) + 1);  // initial row included
    EXPECT_EQ(t.rows.front()[0], 0.0);
    EXPECT_NEAR(t.rows.back()[0], c.t_end, 1e-15);
    const Metadata m = read_metadata(path);
    EXPECT_EQ(m.at("kind"), "probe");
    EXPECT_EQ(m.at("probe"), p.name);
  }
  const Metadata m = read_metadata(d.path() / "rp2b_profile.csv");
  EXPECT_EQ(m.at("scenario"), "rp2b");
  EXPECT_EQ(m.at("kind"), "profile");
  EXPECT_EQ(m.at("nx"), "100");
  EXPECT_EQ(m.at("cfg.tract.2.E0"), "24444000 Pa");
  // the resolved config reads back to the same run
  const SimConfig back = load_config((d.path() / "rp2b.resolved.cfg").string());
  EXPECT_EQ(to_text(back), to_text(c));
}
