#include "distspace/errors.hpp"
#include "distspace/geometry.hpp"
#include "distspace/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace distspace;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "distspace_io_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Io, ConfigurationRoundTrip) {
  PointConfiguration c(2, std::vector<std::vector<double>>{{0, 0}, {0.1, 1.0 / 3.0}, {-2, 5e-17}});
  const auto j = io::to_json(c);
  const auto back = io::configuration_from_json(io::parse_json(j.dump()));
  EXPECT_EQ(back.flattened(), c.flattened());
}

TEST(Io, AssignmentRoundTripJsonAndCsv) {
  const auto d = DistanceAssignment::from_incremental(4, std::vector<double>{1, 1.58114, 0.7071, 0.87228, 1.32698, 1.54551});
  const auto j = io::to_json(d);
  EXPECT_TRUE(j["distances"].contains("0,1"));
  EXPECT_TRUE(io::assignment_from_json(j).matrix() == d.matrix());
  const auto csv = io::distances_csv(d);
  EXPECT_EQ(csv.substr(0, 15), "i,j,distance\n0,");
  EXPECT_TRUE(io::assignment_from_csv(csv).matrix() == d.matrix());
}

TEST(Io, AssignmentErrorsNameTheKey) {
  try {
    io::assignment_from_json(io::parse_json(R"({"n": 3, "distances": {"0,1": 1, "0,2": 1}})"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("1,2"), std::string::npos);
  }
  try {
    io::assignment_from_json(io::parse_json(R"({"distances": {}})"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("\"n\""), std::string::npos);
  }
  try {
    io::assignment_from_json(io::parse_json(R"({"n": 2, "distances": {"0,1": "x"}})"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("distances.0,1"), std::string::npos);
  }
  EXPECT_THROW(io::parse_json("{"), ParseError);
  EXPECT_THROW(io::assignment_from_json(io::parse_json(R"({"n": 2, "distances": {"0,5": 1}})")), ParseError);
}

TEST(Io, MultisetForms) {
  EXPECT_EQ(io::multiset_from_json(io::parse_json("[3, 4, 5]")).values(), (std::vector<double>{3, 4, 5}));
  EXPECT_EQ(io::multiset_from_json(io::parse_json(R"({"values": [5, 4, 3]})")).values(),
            (std::vector<double>{3, 4, 5}));
  EXPECT_EQ(io::multiset_from_json(io::parse_json(R"({"multiset": [1, 1, 1]})")).size(), 3U);
  EXPECT_EQ(io::multiset_from_csv("distance\n1\n2\n3\n").values(), (std::vector<double>{1, 2, 3}));
  EXPECT_THROW(io::multiset_from_json(io::parse_json(R"({"values": [1, 2]})")), ParseError);
  EXPECT_THROW(io::multiset_from_csv("1\nabc\n2\n"), ParseError);
}

TEST(Io, SpectrumCsvRoundTrip) {
  LatticeSpectrum s;
  s.cutoff = 2.0;
  s.distances = {1.0, std::sqrt(2.0)};
  s.multiplicities = {4, 4};
  const auto back = io::spectrum_from_csv(io::spectrum_csv(s), 2.0);
  EXPECT_EQ(back.distances, s.distances);
  EXPECT_EQ(back.multiplicities, s.multiplicities);
}

TEST(Io, BasisJson) {
  const auto b = io::basis_from_json(io::parse_json(R"({"dimension": 2, "vectors": [[1, 0], [0, 2]]})"));
  EXPECT_DOUBLE_EQ(b.vectors()(1, 1), 2.0);
  EXPECT_THROW(io::basis_from_json(io::parse_json(R"({"dimension": 2, "vectors": [[1, 0]]})")), ParseError);
  EXPECT_THROW(io::basis_from_json(io::parse_json(R"({"dimension": 2, "vectors": [[1, 0], [2, 0]]})")), ParseError);
}

TEST(Io, ReportJsonFields) {
  const auto bad = DistanceAssignment::from_incremental(3, std::vector<double>{1, 1, 5});
  const auto j = io::to_json(realizability_check(bad, 2));
  EXPECT_FALSE(j["realizable"].get<bool>());
  EXPECT_EQ(j["failed_condition"]["kind"], "simplex-inequality");
}

TEST(Io, AtomicWriteAndLoaders) {
  const auto path = scratch("assign.json");
  io::write_file_atomic(path.string(), R"({"n": 3, "distances": {"0,1": 3, "0,2": 4, "1,2": 5}})");
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  EXPECT_DOUBLE_EQ(io::load_assignment(path.string())(1, 2), 5.0);
  EXPECT_THROW(io::load_assignment(scratch("missing.json").string()), ParseError);
  const auto csv = scratch("multiset.csv");
  io::write_file_atomic(csv.string(), "3\n4\n5\n");
  EXPECT_EQ(io::load_multiset(csv.string()).size(), 3U);
}

TEST(Io, CoordinatesCsv) {
  PointConfiguration a(2, std::vector<std::vector<double>>{{0, 0}, {1, 0}});
  const auto csv = io::coordinates_csv({{"a", a}});
  EXPECT_EQ(csv, "config,point,x0,x1\na,0,0,0\na,1,1,0\n");
}
