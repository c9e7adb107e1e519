#include "distspace/cli.hpp"
#include "distspace/io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

namespace fs = std::filesystem;
using distspace::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path workdir() {
  const auto dir = fs::temp_directory_path() / "distspace_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& content) {
  const auto p = workdir() / name;
  distspace::io::write_file_atomic(p.string(), content);
  return p.string();
}

std::string last_line(const std::string& s) {
  auto t = s;
  while (!t.empty() && t.back() == '\n') t.pop_back();
  return t.substr(t.rfind('\n') + 1);
}

}  // namespace

TEST(Cli, CheckExitCodes) {
  const auto good = write("two_fold.json",
                          R"({"n": 4, "distances": {"0,1": 1, "0,2": 1.58114, "1,2": 0.70710,)"
                          R"( "0,3": 0.87228, "1,3": 1.32698, "2,3": 1.54551}})");
  EXPECT_EQ(invoke({"--tol-structural", "1e-4", "check", good, "-d", "2"}).code, 0);
  const auto bad = write("bad.json", R"({"n": 3, "distances": {"0,1": 1, "0,2": 1, "1,2": 5}})");
  const auto r = invoke({"check", bad, "-d", "2", "-o", (workdir() / "bad_report.json").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(fs::exists(workdir() / "bad_report.json"));
  EXPECT_EQ(invoke({"check", (workdir() / "nope.json").string()}).code, 1);
  const auto malformed = write("malformed.json", R"({"n": 3, "distances": {"0,1": 1}})");
  const auto m = invoke({"check", malformed});
  EXPECT_EQ(m.code, 1);
  EXPECT_NE(m.err.find("0,2"), std::string::npos);
}

TEST(Cli, EmbedWritesConfiguration) {
  const auto tri = write("tri.json", R"({"n": 3, "distances": {"0,1": 3, "0,2": 4, "1,2": 5}})");
  const auto out = (workdir() / "tri_points.json").string();
  EXPECT_EQ(invoke({"embed", tri, "-d", "2", "-o", out}).code, 0);
  const auto c = distspace::io::load_configuration(out);
  EXPECT_EQ(c.size(), 3);
}

TEST(Cli, DegeneratePrintsOrderLast) {
  const auto three = write("three_fold.json", R"({"values": [1, 1.581144, 0.70710, 1.34371, 0.37267, 0.68718]})");
  const auto r = invoke({"degenerate", three, "-d", "2", "--printed-precision"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(last_line(r.out), "k = 3");

  const auto tet = write("tet.json", R"({"values": [1, 1.01, 1.02, 1.03, 1.04, 1.05]})");
  const auto s = invoke({"degenerate", tet, "-d", "3", "--simplex", "-o", (workdir() / "tet_classes.json").string()});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(last_line(s.out), "k = 30");
  const auto j = distspace::io::parse_json(distspace::io::read_file((workdir() / "tet_classes.json").string()));
  EXPECT_EQ(j["order"], 30);

  const auto generic = write("generic.json", R"({"values": [1.013, 0.987, 1.031, 0.972, 1.044, 0.958]})");
  const auto g = invoke({"degenerate", generic, "-d", "3"});
  EXPECT_EQ(last_line(g.out), "k = 30");
}

TEST(Cli, DegenerateBudgetExit) {
  const auto six = write("six.json", R"({"values": [1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0, 2.1, 2.2, 2.3, 2.4, 2.5]})");
  const auto out = (workdir() / "partial.json").string();
  const auto r = invoke({"--budget", "20", "degenerate", six, "-d", "3", "-o", out});
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(fs::exists(out));
  EXPECT_EQ(last_line(r.out).substr(0, 4), "k = ");
}

TEST(Cli, ConstructAndCircuits) {
  const auto out = (workdir() / "kite.json").string();
  const auto family = (workdir() / "family.csv").string();
  EXPECT_EQ(invoke({"construct", "kite-trapezoid", "--x", "0.75", "-o", out, "--family-csv", family}).code, 0);
  const auto j = distspace::io::parse_json(distspace::io::read_file(out));
  const auto trap = write("trap.json", j["trapezoid"].dump());
  const auto r = invoke({"circuits", trap});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("distinct lengths: 3"), std::string::npos);
  EXPECT_EQ(invoke({"construct", "kite-trapezoid", "--x", "0.5"}).code, 1);
  EXPECT_EQ(invoke({"construct", "kite-trapezoid", "--x", "0.5", "--boundary"}).code, 0);
}

TEST(Cli, SymmetricSeedFromEnvironment) {
  const auto a = invoke({"--seed", "5", "construct", "symmetric", "-d", "3", "--random"});
  const auto b = invoke({"--seed", "5", "construct", "symmetric", "-d", "3", "--random"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  setenv("DISTSPACE_SEED", "5", 1);
  const auto c = invoke({"--seed", "9", "construct", "symmetric", "-d", "3", "--random"});
  unsetenv("DISTSPACE_SEED");
  EXPECT_EQ(c.out, a.out);
}

TEST(Cli, LatticeSpectrumAndReconstruct) {
  const auto basis = write("square.json", R"({"dimension": 2, "vectors": [[1, 0], [0, 1]]})");
  const auto csv = (workdir() / "square_spectrum.csv").string();
  EXPECT_EQ(invoke({"lattice", "spectrum", basis, "--cutoff", "2.2", "-o", csv}).code, 0);
  EXPECT_EQ(distspace::io::read_file(csv).substr(0, 23), "distance,multiplicity\n1");
  const auto r = invoke({"lattice", "reconstruct", csv, "-d", "2", "--cutoff", "2.2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"vectors\""), std::string::npos);
}

TEST(Cli, ReproduceFigures) {
  const auto dir = (workdir() / "figures").string();
  for (const std::string fig : {"fig1", "fig2", "fig5", "fig6", "fig7", "fig8"}) {
    const auto r = invoke({"reproduce", fig, "--out-dir", dir});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_EQ(r.out.substr(0, 5), "PASS ");
    EXPECT_TRUE(fs::exists(fs::path(dir) / (fig + ".json")));
  }
  EXPECT_EQ(invoke({"reproduce", "fig3"}).code, 1);
}

TEST(Cli, DeterministicOutputsAndManifest) {
  const auto d1 = (workdir() / "det1").string();
  const auto d2 = (workdir() / "det2").string();
  const auto m1 = (workdir() / "m1.json").string();
  const auto m2 = (workdir() / "m2.json").string();
  invoke({"--manifest", m1, "reproduce", "fig6", "--out-dir", d1});
  invoke({"--manifest", m2, "reproduce", "fig6", "--out-dir", d1});
  invoke({"reproduce", "fig6", "--out-dir", d2});
  using distspace::io::read_file;
  EXPECT_EQ(read_file(d1 + "/fig6.json"), read_file(d2 + "/fig6.json"));
  EXPECT_EQ(read_file(d1 + "/fig6_coords.csv"), read_file(d2 + "/fig6_coords.csv"));
  EXPECT_EQ(read_file(m1), read_file(m2));
  const auto j = distspace::io::parse_json(read_file(m1));
  EXPECT_EQ(j["command"], "reproduce");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, BinaryRuns) {
  const std::string cmd = std::string(DISTSPACE_CLI_PATH) + " reproduce fig5 --out-dir " +
                          (workdir() / "binary").string() + " > /dev/null";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
}
