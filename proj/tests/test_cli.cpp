#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "edfn/cli.hpp"

using namespace edfn;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "edfn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("edfn-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kK33 = R"({"forbidden": ["EFz_"]})";

}  // namespace

TEST_F(Cli, GValueExact) {
  auto crg = file("p3.crg", to_text(make_path_crg(3)));
  auto r = run({"g-value", "--crg", crg, "--p", "1/4", "--exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["g"], "3/10");
  EXPECT_EQ(j["mode"], "exact");
  EXPECT_TRUE(j["unique"].get<bool>());
}

TEST_F(Cli, CoreCheck) {
  auto crg = file("k12.crg", to_text(make_kwb(1, 2)));
  auto r = run({"core-check", "--crg", crg, "--p", "1/4", "--exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(r.out)["p_core"].get<bool>());
  EXPECT_EQ(run({"core-check", "--crg", crg, "--p", "0"}).code, 1);
}

TEST_F(Cli, EmbedStarIntoTwoWhites) {
  auto crg = file("k20.crg", to_text(make_kwb(2, 0)));
  auto r = run({"embed", "--graph", emit_graph6(star_graph(4)), "--crg", crg});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["embeds"].get<bool>());
  EXPECT_EQ(j["witness"].size(), 5u);

  auto spec = file("k33.json", kK33);
  auto k12 = file("k12.crg", to_text(make_kwb(1, 2)));
  auto v = nlohmann::json::parse(run({"embed", "--spec", spec, "--crg", k12}).out);
  EXPECT_FALSE(v["embeds"].get<bool>());
  EXPECT_TRUE(v.contains("property_hash"));
}

TEST_F(Cli, EnvelopeWritesCsvAndJson) {
  auto spec = file("k33.json", kK33);
  auto out = path("curve.csv");
  auto r = run({"envelope", "--spec", spec, "--grid", "256", "--out", out, "--white", "1", "--black", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(slurp(out));
  std::string line;
  std::size_t rows = 0, comments = 0;
  bool header = false;
  while (std::getline(csv, line)) {
    if (line.rfind("#", 0) == 0) ++comments;
    else if (line == "p,value,attainer_ids") header = true;
    else ++rows;
  }
  EXPECT_TRUE(header);
  EXPECT_EQ(comments, 1u);
  EXPECT_EQ(rows, 256u);
  auto j = nlohmann::json::parse(slurp(path("curve.json")));
  EXPECT_EQ(j["points"].size(), 256u);
  EXPECT_EQ(j["bounds"]["max_black"], 3u);
  EXPECT_EQ(j["property_hash"], family_hash(family_from_json(nlohmann::json::parse(kK33))));
}

TEST_F(Cli, DeterministicAcrossThreadCounts) {
  auto spec = file("k33.json", kK33);
  auto a = run({"envelope", "--spec", spec, "--grid", "64", "--threads", "1"});
  auto b = run({"envelope", "--spec", spec, "--grid", "64", "--threads", "4"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto c = run({"enumerate", "--spec", spec, "--white", "2", "--black", "3", "--threads", "3"});
  auto d = run({"enumerate", "--spec", spec, "--white", "2", "--black", "3", "--threads", "1"});
  EXPECT_EQ(c.out, d.out);
}

TEST_F(Cli, QCurveExact) {
  auto spec = file("k33.json", kK33);
  auto r = run({"q-curve", "--spec", spec, "--p", "1/4", "--exact", "--json", path("q.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(slurp(path("q.json")));
  EXPECT_EQ(j["points"][0]["value_exact"], "3/20");
  EXPECT_TRUE(j["window_complete"].get<bool>());
}

TEST_F(Cli, PathboundProbeSymmetrySlope) {
  auto pb = run({"pathbound", "--max-total", "5", "--exact"});
  ASSERT_EQ(pb.code, 0) << pb.err;
  EXPECT_TRUE(nlohmann::json::parse(pb.out)["all_ok"].get<bool>());

  auto probe = run({"probe", "--path-catalog", "40", "--target", "0.25", "--approach", "0.30,0.27,0.26,0.255"});
  ASSERT_EQ(probe.code, 0) << probe.err;
  auto pj = nlohmann::json::parse(probe.out);
  EXPECT_EQ(pj["label"], "within cataloged window");
  EXPECT_TRUE(pj["attainer_size_grows_toward_target"].get<bool>());

  auto spec = file("k33.json", kK33);
  auto sym = run({"symmetry", "--spec", spec, "--p", "1/3,2/5", "--exact", "--white", "1", "--black", "2"});
  ASSERT_EQ(sym.code, 0) << sym.err;
  EXPECT_EQ(nlohmann::json::parse(sym.out)["max_entry_residual"], "0");

  auto slope = run({"slope-demo", "--spec", spec, "--probes", "0.001,0.5", "--white", "1", "--black", "3"});
  ASSERT_EQ(slope.code, 0) << slope.err;
  auto sj = nlohmann::json::parse(slope.out);
  EXPECT_FALSE(sj["rows"][1]["small_p_regime"].get<bool>());
}

TEST_F(Cli, DistExactAndBlowup) {
  auto tri = file("k3.json", R"({"forbidden": ["Bw"]})");
  auto d = run({"dist-exact", "--spec", tri, "--graph", emit_graph6(complete_graph(5))});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(nlohmann::json::parse(d.out)["dist"], "2/5");
  auto m = run({"dist-exact", "--spec", tri, "--n", "5", "--p", "1"});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_EQ(nlohmann::json::parse(m.out)["max_dist"], "2/5");

  auto crg = file("p3.crg", to_text(make_path_crg(3)));
  auto b = run({"blowup-degree", "--crg", crg, "--p", "1/4", "--exact"});
  ASSERT_EQ(b.code, 0) << b.err;
  auto bj = nlohmann::json::parse(b.out);
  EXPECT_EQ(bj["rows"].size(), 3u);
  EXPECT_EQ(bj["g"], "3/10");
}

TEST_F(Cli, ExitCodes) {
  auto crg = file("p3.crg", to_text(make_path_crg(3)));
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  EXPECT_EQ(run({"g-value", "--crg", crg, "--p", "1/4", "--bogus"}).code, 2);
  EXPECT_EQ(run({"g-value", "--crg", crg, "--p", "0.25", "--exact"}).code, 2);
  EXPECT_EQ(run({"g-value", "--crg", path("missing.crg"), "--p", "1/4"}).code, 2);
  EXPECT_EQ(run({"g-value", "--crg", crg, "--p", "5/4"}).code, 1);

  auto bad_crg = file("bad.crg", "3\nBXB\ngw\ng\n");
  auto r = run({"g-value", "--crg", bad_crg, "--p", "1/4"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("vertex colour"), std::string::npos);

  auto bad_spec = file("bad.json", R"({"families": [{"type": "cycles_ge"}]})");
  auto s = run({"enumerate", "--spec", bad_spec});
  EXPECT_EQ(s.code, 2);
  EXPECT_NE(s.err.find("families[0].m"), std::string::npos);

  auto anti = file("anti.json", R"({"forbidden": ["B?"]})");
  EXPECT_EQ(run({"q-curve", "--spec", anti, "--p", "0.1"}).code, 1);
}

#ifdef EDFN_CLI_PATH
TEST_F(Cli, ProcessExitCodes) {
  const std::string bin = EDFN_CLI_PATH;
  auto crg = file("p3.crg", to_text(make_path_crg(3)));
  auto status = [&](const std::string& args) {
    int s = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  EXPECT_EQ(status("g-value --crg " + crg + " --p 1/4 --exact"), 0);
  EXPECT_EQ(status("g-value --crg " + crg + " --p 2"), 1);
  EXPECT_EQ(status("g-value --nope"), 2);
  EXPECT_EQ(status("--help"), 0);
}
#endif
