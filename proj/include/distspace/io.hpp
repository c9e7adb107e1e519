#pragma once

#include "distspace/analysis.hpp"
#include "distspace/degeneracy.hpp"
#include "distspace/geometry.hpp"
#include "distspace/lattice.hpp"
#include "distspace/types.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace distspace::io {

using Json = nlohmann::ordered_json;

/// Throws ParseError when the file cannot be read.
std::string read_file(const std::string& path);

/// Writes to a sibling temporary file and renames it into place, so a failed
/// run never leaves a partial file behind.
void write_file_atomic(const std::string& path, const std::string& content);

Json parse_json(const std::string& text, const std::string& source = "input");

// JSON schemas. Pair keys are "i,j" with 0-based point indices.

Json to_json(const PointConfiguration& config);
PointConfiguration configuration_from_json(const Json& j);

Json to_json(const DistanceAssignment& dists);
/// Accepts {"n", "distances": {"i,j": v}} or {"matrix": [[...]]}.
DistanceAssignment assignment_from_json(const Json& j, Boundary coincident = Boundary::strict);

Json to_json(const DistanceMultiset& multiset);
/// Accepts {"values": [...]}, {"multiset": [...]} or a bare array.
DistanceMultiset multiset_from_json(const Json& j);

Json to_json(const FeasibilityReport& report);
Json to_json(const DegeneracyClassSet& classes);
Json to_json(const CircuitReport& report);
Json to_json(const LatticeBasis& basis);
LatticeBasis basis_from_json(const Json& j);
Json to_json(const LatticeSpectrum& spectrum);

// CSV.

/// "i,j,distance" rows in row-major pair order.
std::string distances_csv(const DistanceAssignment& dists);
DistanceAssignment assignment_from_csv(const std::string& text,
                                       Boundary coincident = Boundary::strict);
/// One value per row, optional "distance" header.
DistanceMultiset multiset_from_csv(const std::string& text);
/// "distance,multiplicity".
std::string spectrum_csv(const LatticeSpectrum& spectrum);
LatticeSpectrum spectrum_from_csv(const std::string& text, double cutoff);
/// "config,point,x0,x1,..." for one or more labeled configurations.
std::string coordinates_csv(const std::vector<std::pair<std::string, PointConfiguration>>& configs);

// File helpers that pick the format from the extension (.csv vs JSON).

DistanceAssignment load_assignment(const std::string& path,
                                   Boundary coincident = Boundary::strict);
DistanceMultiset load_multiset(const std::string& path);
PointConfiguration load_configuration(const std::string& path);

}  // namespace distspace::io
