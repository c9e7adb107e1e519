#include "distspace/cli.hpp"

#include "distspace/analysis.hpp"
#include "distspace/congruence.hpp"
#include "distspace/constructions.hpp"
#include "distspace/degeneracy.hpp"
#include "distspace/errors.hpp"
#include "distspace/figures.hpp"
#include "distspace/geometry.hpp"
#include "distspace/io.hpp"
#include "distspace/lattice.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>

namespace distspace::cli {

namespace {

using io::Json;

struct Globals {
  double tol_structural = kStructuralTol;
  double tol_printed = kPrintedTol;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultEnumerationBudget;
  bool serial = false;
  std::string manifest_path;
};

// Record of one invocation; written with --manifest.
struct Manifest {
  std::string command;
  Json inputs = Json::array();
  Json parameters = Json::object();
  Json outputs = Json::array();

  Json to_json(const Globals& g) const {
    Json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["parameters"] = parameters;
    j["tolerances"] = {{"structural", g.tol_structural}, {"printed", g.tol_printed}};
    j["budget"] = g.budget;
    j["execution"] = g.serial ? "serial" : "parallel";
    j["outputs"] = outputs;
    j["seed"] = g.seed;
    return j;
  }
};

struct Context {
  Globals globals;
  Manifest manifest;
  std::ostream& out;
  std::ostream& err;

  Execution execution() const { return globals.serial ? Execution::serial : Execution::parallel; }

  void write(const std::string& path, const std::string& content) {
    io::write_file_atomic(path, content);
    manifest.outputs.push_back(path);
  }
};

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

bool is_csv(const std::string& path) { return std::filesystem::path(path).extension() == ".csv"; }

void print_or_write(Context& ctx, const std::string& path, const std::string& content) {
  if (path.empty()) {
    ctx.out << content;
  } else {
    ctx.write(path, content);
  }
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string input;
  int d = 2;
  std::string output;
  bool allow_coincident = false;
};

int cmd_check(Context& ctx, const CheckArgs& a) {
  ctx.manifest.inputs.push_back(a.input);
  ctx.manifest.parameters = {{"d", a.d}, {"allow_coincident", a.allow_coincident}};
  const auto dists =
      io::load_assignment(a.input, a.allow_coincident ? Boundary::inclusive : Boundary::strict);
  const auto report = realizability_check(dists, a.d, ctx.globals.tol_structural);
  if (a.output.empty()) {
    ctx.out << dump(io::to_json(report));
  } else {
    ctx.write(a.output, dump(io::to_json(report)));
  }
  if (report.realizable) {
    ctx.out << "realizable in R^" << a.d << "\n";
    return kExitOk;
  }
  const auto& f = *report.failed_condition;
  ctx.out << "not realizable in R^" << a.d << ": " << to_string(f.kind) << " at index "
          << f.index << " (value " << f.value << ")\n";
  return kExitNegative;
}

struct EmbedArgs {
  std::string input;
  int d = 2;
  std::string output;
  bool strict = false;
  bool allow_coincident = false;
};

int cmd_embed(Context& ctx, const EmbedArgs& a) {
  ctx.manifest.inputs.push_back(a.input);
  ctx.manifest.parameters = {{"d", a.d}, {"strict", a.strict}};
  const auto dists =
      io::load_assignment(a.input, a.allow_coincident ? Boundary::inclusive : Boundary::strict);
  try {
    const auto config = embed(dists, a.d, ctx.globals.tol_structural,
                              a.strict ? Boundary::strict : Boundary::inclusive);
    print_or_write(ctx, a.output, dump(io::to_json(config)));
    return kExitOk;
  } catch (const RealizabilityError& e) {
    ctx.err << e.what() << "\n";
    return kExitNegative;
  }
}

struct DegenerateArgs {
  std::string input;
  int d = 2;
  std::string output;
  bool simplex = false;
  bool printed_precision = false;
};

int cmd_degenerate(Context& ctx, const DegenerateArgs& a) {
  ctx.manifest.inputs.push_back(a.input);
  ctx.manifest.parameters = {{"d", a.d}, {"simplex", a.simplex},
                             {"printed_precision", a.printed_precision}};
  const auto multiset = io::load_multiset(a.input);
  EnumerationOptions opts;
  opts.tol = a.printed_precision ? ctx.globals.tol_printed : ctx.globals.tol_structural;
  opts.budget = ctx.globals.budget;
  opts.execution = ctx.execution();
  const auto classes = a.simplex ? enumerate_simplex_classes(multiset, a.d, opts)
                                 : enumerate_assemblies(multiset, a.d, opts);
  if (!a.output.empty()) ctx.write(a.output, dump(io::to_json(classes)));

  ctx.out << "points: " << multiset.point_count() << ", distances: " << multiset.size()
          << ", dimension: " << a.d << "\n";
  ctx.out << "tolerance: " << opts.tol << ", evaluations: " << classes.evaluations << "\n";
  if (a.simplex && a.d >= 2) ctx.out << "upper bound kmax = " << kmax_simplex(a.d) << "\n";
  if (!classes.complete) {
    ctx.out << "budget exhausted after " << classes.evaluations << " evaluations; explored "
            << fixed(100.0 * classes.explored_fraction, 2) << "% of the assignment tree\n";
  }
  ctx.out << "k = " << classes.order() << "\n";
  return classes.complete ? kExitOk : kExitBudget;
}

struct KiteArgs {
  double x = 0.75;
  bool boundary = false;
  std::string output;
  std::string csv;
  std::string family_csv;
  double x_min = 0.5;
  double x_max = 2.0;
  double step = 0.05;
};

Json kite_json(const KiteTrapezoidPair& p) {
  Json j;
  j["x"] = p.x;
  j["edge_lengths"] = {{"a", p.edge_lengths[0]}, {"b", p.edge_lengths[1]},
                       {"c", p.edge_lengths[2]}, {"d", p.edge_lengths[3]}};
  j["kite"] = io::to_json(p.kite);
  j["trapezoid"] = io::to_json(p.trapezoid);
  j["kite_pattern"] = p.kite_pattern;
  j["trapezoid_pattern"] = p.trapezoid_pattern;
  return j;
}

int cmd_kite(Context& ctx, const KiteArgs& a) {
  ctx.manifest.parameters = {{"x", a.x}, {"boundary", a.boundary}};
  const auto pair = kite_trapezoid(a.x, a.boundary ? Boundary::inclusive : Boundary::strict,
                                   ctx.globals.tol_structural);
  print_or_write(ctx, a.output, dump(kite_json(pair)));
  if (!a.csv.empty()) {
    ctx.write(a.csv, io::coordinates_csv({{"kite", pair.kite}, {"trapezoid", pair.trapezoid}}));
  }
  if (!a.family_csv.empty()) {
    ctx.manifest.parameters["family"] = {{"x_min", a.x_min}, {"x_max", a.x_max}, {"step", a.step}};
    ctx.write(a.family_csv, kite_trapezoid_family_csv(a.x_min, a.x_max, a.step));
  }
  return kExitOk;
}

struct SymmetricArgs {
  int d = 2;
  bool random = false;
  std::string output;
  std::string csv;
};

Json symmetric_json(const SymmetricTwoFold& s) {
  Json j;
  j["primary"] = io::to_json(s.primary);
  j["dual"] = io::to_json(s.dual);
  j["multisets_equal"] = s.multisets_equal;
  j["congruent"] = s.congruent;
  return j;
}

int cmd_symmetric(Context& ctx, const SymmetricArgs& a) {
  ctx.manifest.parameters = {{"d", a.d}, {"random", a.random}};
  const auto params =
      a.random ? random_symmetric_params(a.d, ctx.globals.seed) : default_symmetric_params(a.d);
  const auto pair = symmetric_two_fold(params, ctx.globals.tol_structural);
  print_or_write(ctx, a.output, dump(symmetric_json(pair)));
  if (!a.csv.empty()) {
    ctx.write(a.csv, io::coordinates_csv({{"primary", pair.primary}, {"dual", pair.dual}}));
  }
  return kExitOk;
}

struct CircuitArgs {
  std::string input;
  double length_tol = -1.0;
  long long limit = 100000;
  std::string output;
};

int cmd_circuits(Context& ctx, const CircuitArgs& a) {
  ctx.manifest.inputs.push_back(a.input);
  ctx.manifest.parameters = {{"length_tol", a.length_tol}, {"limit", a.limit}};
  const auto config = io::load_configuration(a.input);
  CircuitOptions opts;
  if (a.length_tol >= 0.0) opts.length_tol = a.length_tol;
  opts.listing_limit = a.limit;
  opts.execution = ctx.execution();
  const auto report = hamiltonian_circuits(config, opts);
  if (!a.output.empty()) ctx.write(a.output, dump(io::to_json(report)));
  ctx.out << "circuits: " << report.circuit_count << "\n";
  ctx.out << "distinct lengths: " << report.distinct_length_count() << "\n";
  ctx.out << "shortest: " << fixed(report.shortest.length, 9) << " via";
  for (int v : report.shortest.order) ctx.out << ' ' << v;
  ctx.out << "\n";
  return kExitOk;
}

struct SpectrumArgs {
  std::string input;
  double cutoff = 0.0;
  std::string output;
};

int cmd_spectrum(Context& ctx, const SpectrumArgs& a) {
  ctx.manifest.inputs.push_back(a.input);
  ctx.manifest.parameters = {{"cutoff", a.cutoff}};
  const auto basis = io::basis_from_json(io::parse_json(io::read_file(a.input), a.input));
  const auto spectrum = lattice_distance_spectrum(basis, a.cutoff, ctx.execution());
  const bool json = !a.output.empty() && !is_csv(a.output);
  print_or_write(ctx, a.output,
                 json ? dump(io::to_json(spectrum)) : io::spectrum_csv(spectrum));
  return kExitOk;
}

struct ReconstructArgs {
  std::string input;
  int d = 2;
  double cutoff = 0.0;
  std::string output;
};

int cmd_reconstruct(Context& ctx, const ReconstructArgs& a) {
  ctx.manifest.inputs.push_back(a.input);
  ctx.manifest.parameters = {{"d", a.d}, {"cutoff", a.cutoff}};
  const std::string text = io::read_file(a.input);
  LatticeSpectrum spectrum;
  if (is_csv(a.input)) {
    spectrum = io::spectrum_from_csv(text, 0.0);
    if (spectrum.distances.empty()) throw ParseError(a.input + ": spectrum has no rows");
    spectrum.cutoff = a.cutoff > 0.0 ? a.cutoff : spectrum.distances.back();
  } else {
    const Json j = io::parse_json(text, a.input);
    if (!j.is_object() || !j.contains("cutoff")) throw ParseError("missing key \"cutoff\"");
    if (!j.contains("distances")) throw ParseError("missing key \"distances\"");
    if (!j.contains("multiplicities")) throw ParseError("missing key \"multiplicities\"");
    try {
      spectrum.cutoff = j["cutoff"].get<double>();
      spectrum.distances = j["distances"].get<std::vector<double>>();
      spectrum.multiplicities = j["multiplicities"].get<std::vector<long>>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("spectrum JSON: ") + e.what());
    }
    if (a.cutoff > 0.0) spectrum.cutoff = a.cutoff;
  }
  try {
    const auto cell = reconstruct_cell(spectrum, a.d, ctx.globals.tol_structural);
    print_or_write(ctx, a.output, dump(io::to_json(cell.basis)));
    ctx.out << "validated cells: " << cell.validated.size() << " (distance sets tried: "
            << cell.candidates_tried << ")\n";
    return kExitOk;
  } catch (const ReconstructionError& e) {
    ctx.err << e.what() << "\n";
    return kExitNegative;
  }
}

// ---------------------------------------------------------------------------
// Figure reproduction

struct ReproduceArgs {
  std::string figure;
  std::string out_dir = ".";
  double x = 0.75;
};

std::string path_in(const ReproduceArgs& a, const std::string& name) {
  return (std::filesystem::path(a.out_dir) / name).string();
}

int verdict(Context& ctx, const std::string& figure, bool pass, const std::string& detail) {
  ctx.out << (pass ? "PASS " : "FAIL ") << figure << ": " << detail << "\n";
  return pass ? kExitOk : kExitNegative;
}

int reproduce_fig1(Context& ctx, const ReproduceArgs& a) {
  const double tol = ctx.globals.tol_structural;
  const auto pair = kite_trapezoid(a.x, Boundary::inclusive, tol);
  const auto dk = pairwise_distances(pair.kite, tol, Boundary::inclusive);
  const auto dt = pairwise_distances(pair.trapezoid, tol, Boundary::inclusive);
  const bool same = multiset_equal(dk.multiset(), dt.multiset(), 1e-12).equal;
  const bool noncongruent = !congruent(dk, dt, tol);
  const bool triangles_differ =
      !multiset_equal(triangle_multiset(pair.kite), triangle_multiset(pair.trapezoid), tol).equal;
  Json j = kite_json(pair);
  j["multisets_equal"] = same;
  j["congruent"] = !noncongruent;
  j["triangle_multisets_equal"] = !triangles_differ;
  ctx.write(path_in(a, "fig1.json"), dump(j));
  ctx.write(path_in(a, "fig1_coords.csv"),
            io::coordinates_csv({{"kite", pair.kite}, {"trapezoid", pair.trapezoid}}));
  ctx.write(path_in(a, "fig1_family.csv"), kite_trapezoid_family_csv(0.5, 2.0, 0.05));
  const bool boundary = a.x <= 0.5;
  const bool pass = same && (boundary || (noncongruent && triangles_differ));
  return verdict(ctx, "fig1",
                 pass, "x = " + fixed(a.x, 4) + ", a = " + fixed(pair.edge_lengths[0]) +
                           ", b = " + fixed(pair.edge_lengths[1]) + ", c = " +
                           fixed(pair.edge_lengths[2]) + ", multisets equal = " +
                           (same ? "yes" : "no") + ", non-congruent = " +
                           (noncongruent ? "yes" : "no") + ", triangles differ = " +
                           (triangles_differ ? "yes" : "no"));
}

int reproduce_fig2(Context& ctx, const ReproduceArgs& a) {
  std::vector<double> xs = {0.6, 0.7, 0.8, 0.9};
  if (std::find(xs.begin(), xs.end(), a.x) == xs.end()) xs.insert(xs.begin(), a.x);
  bool pass = true;
  std::ostringstream csv;
  csv << "x,shape,circuits,distinct,shortest\n";
  Json j = Json::array();
  std::string detail;
  for (double x : xs) {
    const auto pair = kite_trapezoid(x, Boundary::strict, ctx.globals.tol_structural);
    CircuitOptions opts;
    opts.execution = ctx.execution();
    const auto rk = hamiltonian_circuits(pair.kite, opts);
    const auto rt = hamiltonian_circuits(pair.trapezoid, opts);
    const bool ok = rt.distinct_length_count() == 3 && rk.distinct_length_count() == 2 &&
                    rt.shortest.length < rk.shortest.length;
    if (x > 0.5 && x < 1.0) pass = pass && ok;
    csv << x << ",kite," << rk.circuit_count << ',' << rk.distinct_length_count() << ','
        << fixed(rk.shortest.length, 12) << "\n";
    csv << x << ",trapezoid," << rt.circuit_count << ',' << rt.distinct_length_count() << ','
        << fixed(rt.shortest.length, 12) << "\n";
    j.push_back({{"x", x}, {"kite", io::to_json(rk)}, {"trapezoid", io::to_json(rt)}});
    if (x == a.x) {
      detail = "x = " + fixed(x, 4) + ", trapezoid circuits = " +
               std::to_string(rt.distinct_length_count()) + ", kite circuits = " +
               std::to_string(rk.distinct_length_count()) + ", shortest " +
               fixed(rt.shortest.length) + " (trapezoid) vs " + fixed(rk.shortest.length) +
               " (kite)";
    }
  }
  ctx.write(path_in(a, "fig2.json"), dump(j));
  ctx.write(path_in(a, "fig2_circuits.csv"), csv.str());
  return verdict(ctx, "fig2", pass, detail + "; sampled x = 0.6..0.9");
}

int reproduce_constrained(Context& ctx, const ReproduceArgs& a, const std::string& figure,
                          const figures::PrintedRoot& printed) {
  RootSearchOptions opts;
  opts.structural_tol = ctx.globals.tol_structural;
  opts.execution = ctx.execution();
  const auto roots = solve_constrained_all(printed.system, opts);
  const RootInfo* root = figures::closest_root(roots, printed.printed_unknowns);

  Json j;
  Json list = Json::array();
  for (const auto& r : roots) {
    list.push_back({{"unknowns", r.solution.unknowns},
                    {"residual", r.solution.residual},
                    {"configurations", r.configuration_count},
                    {"multiple_root", r.multiple_root}});
  }
  j["roots"] = std::move(list);
  j["printed_unknowns"] = printed.printed_unknowns;

  if (root == nullptr) {
    ctx.write(path_in(a, figure + ".json"), dump(j));
    return verdict(ctx, figure, false, "no root found");
  }
  double gap = 0.0;
  for (std::size_t i = 0; i < printed.printed_unknowns.size(); ++i) {
    gap = std::max(gap, std::abs(root->solution.unknowns[i] - printed.printed_unknowns[i]));
  }
  EnumerationOptions eopts;
  eopts.tol = ctx.globals.tol_structural;
  eopts.budget = ctx.globals.budget;
  eopts.execution = ctx.execution();
  const auto classes =
      enumerate_assemblies(figures::sextuple_multiset(root->solution.slots), 2, eopts);
  j["solution"] = root->solution.slots;
  j["classes"] = io::to_json(classes);
  ctx.write(path_in(a, figure + ".json"), dump(j));
  std::vector<std::pair<std::string, PointConfiguration>> labeled;
  for (int i = 0; i < classes.order(); ++i) {
    labeled.emplace_back("class" + std::to_string(i), classes.classes[static_cast<std::size_t>(i)]);
  }
  ctx.write(path_in(a, figure + "_coords.csv"), io::coordinates_csv(labeled));

  std::string detail;
  const auto& names = printed.system.unknowns;
  for (std::size_t i = 0; i < names.size(); ++i) {
    detail += "d" + std::to_string(names[i] + 1) + " = " + fixed(root->solution.unknowns[i], 5) +
              " (printed " + fixed(printed.printed_unknowns[i], 5) + "), ";
  }
  detail += "k = " + std::to_string(classes.order()) + " (printed " +
            std::to_string(printed.printed_k) + ")";
  const bool pass = gap <= ctx.globals.tol_printed && classes.order() == printed.printed_k;
  return verdict(ctx, figure, pass, detail);
}

int reproduce_symmetric(Context& ctx, const ReproduceArgs& a, const std::string& figure, int d) {
  const auto pair = symmetric_two_fold(default_symmetric_params(d), ctx.globals.tol_structural);
  const bool triangles_differ = !multiset_equal(triangle_multiset(pair.primary),
                                                triangle_multiset(pair.dual),
                                                ctx.globals.tol_structural)
                                     .equal;
  Json j = symmetric_json(pair);
  j["triangle_multisets_equal"] = !triangles_differ;
  ctx.write(path_in(a, figure + ".json"), dump(j));
  ctx.write(path_in(a, figure + "_coords.csv"),
            io::coordinates_csv({{"primary", pair.primary}, {"dual", pair.dual}}));
  const bool pass = pair.multisets_equal && !pair.congruent && triangles_differ;
  return verdict(ctx, figure, pass,
                 "d = " + std::to_string(d) + ", points = " + std::to_string(pair.primary.size()) +
                     ", multisets equal = " + (pair.multisets_equal ? "yes" : "no") +
                     ", non-congruent = " + (!pair.congruent ? "yes" : "no") +
                     ", triangles differ = " + (triangles_differ ? "yes" : "no"));
}

int cmd_reproduce(Context& ctx, const ReproduceArgs& a) {
  ctx.manifest.parameters = {{"figure", a.figure}, {"x", a.x}, {"out_dir", a.out_dir}};
  if (a.figure == "fig1") return reproduce_fig1(ctx, a);
  if (a.figure == "fig2") return reproduce_fig2(ctx, a);
  if (a.figure == "fig5") return reproduce_constrained(ctx, a, "fig5", figures::two_fold_planar());
  if (a.figure == "fig6") return reproduce_constrained(ctx, a, "fig6", figures::three_fold_planar());
  if (a.figure == "fig7") return reproduce_symmetric(ctx, a, "fig7", 2);
  if (a.figure == "fig8") return reproduce_symmetric(ctx, a, "fig8", 3);
  ctx.err << "unknown figure \"" << a.figure << "\"; expected one of:";
  for (const auto& name : figures::kFigureNames) ctx.err << ' ' << name;
  ctx.err << "\n";
  return kExitUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distance-space tools: realizability, degeneracy enumeration, constructions, "
               "circuits and lattice spectra"};
  app.name("distspace");
  app.require_subcommand(1);

  Globals g;
  app.add_option("--tol-structural", g.tol_structural, "Structural tolerance (relative)")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-printed,--tol-paper", g.tol_printed, "Tolerance for printed reference values")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized constructions");
  app.add_option("--budget", g.budget, "Enumeration evaluation budget");
  app.add_flag("--serial", g.serial, "Use the serial reference kernels");
  app.add_option("--manifest", g.manifest_path, "Write a run manifest JSON to this path");

  CheckArgs check;
  auto* sc = app.add_subcommand("check", "Realizability report for a distance file");
  sc->add_option("input", check.input, "Distance file (.json or .csv)")->required();
  sc->add_option("-d,--dimension", check.d, "Target dimension")->check(CLI::PositiveNumber);
  sc->add_option("-o,--output", check.output, "Report JSON path");
  sc->add_flag("--allow-coincident", check.allow_coincident, "Accept zero distances");

  EmbedArgs emb;
  auto* se = app.add_subcommand("embed", "Coordinates from a realizable distance file");
  se->add_option("input", emb.input)->required();
  se->add_option("-d,--dimension", emb.d)->check(CLI::PositiveNumber);
  se->add_option("-o,--output", emb.output);
  se->add_flag("--strict", emb.strict, "Reject a degenerate reference simplex");
  se->add_flag("--allow-coincident", emb.allow_coincident);

  DegenerateArgs deg;
  auto* sd = app.add_subcommand("degenerate", "Non-congruent configurations sharing a multiset");
  sd->add_option("input", deg.input, "Multiset file (.json or .csv)")->required();
  sd->add_option("-d,--dimension", deg.d)->check(CLI::PositiveNumber);
  sd->add_option("-o,--output", deg.output, "Class set JSON path");
  sd->add_flag("--simplex", deg.simplex, "Require n = d + 1 and report the class bound");
  sd->add_flag("--printed-precision", deg.printed_precision,
               "Use --tol-printed for inputs printed to five decimals");

  auto* scon = app.add_subcommand("construct", "Degenerate-pair generators");
  scon->require_subcommand(1);
  KiteArgs kite;
  auto* sk = scon->add_subcommand("kite-trapezoid", "Kite and trapezoid with equal distances");
  sk->add_option("--x", kite.x, "Family parameter, x > 1/2");
  sk->add_flag("--boundary", kite.boundary, "Allow the collapsed case x = 1/2");
  sk->add_option("-o,--output", kite.output);
  sk->add_option("--csv", kite.csv, "Coordinates CSV path");
  sk->add_option("--family-csv", kite.family_csv, "Edge lengths over a range of x");
  sk->add_option("--x-min", kite.x_min);
  sk->add_option("--x-max", kite.x_max);
  sk->add_option("--step", kite.step);
  SymmetricArgs sym;
  auto* ss = scon->add_subcommand("symmetric", "Centrally symmetric two-fold pair");
  ss->add_option("-d,--dimension", sym.d)->check(CLI::Range(2, 16));
  ss->add_flag("--random", sym.random, "Random parameters from --seed");
  ss->add_option("-o,--output", sym.output);
  ss->add_option("--csv", sym.csv);

  CircuitArgs circ;
  auto* scirc = app.add_subcommand("circuits", "Hamiltonian circuit statistics");
  scirc->add_option("input", circ.input, "Configuration JSON")->required();
  scirc->add_option("--length-tol", circ.length_tol, "Absolute grouping tolerance");
  scirc->add_option("--limit", circ.limit, "Largest circuit count listed individually");
  scirc->add_option("-o,--output", circ.output);

  auto* slat = app.add_subcommand("lattice", "Lattice distance spectra");
  slat->require_subcommand(1);
  SpectrumArgs spec;
  auto* ssp = slat->add_subcommand("spectrum", "Distance shells up to a cutoff");
  ssp->add_option("input", spec.input, "Basis JSON")->required();
  ssp->add_option("--cutoff", spec.cutoff)->required()->check(CLI::PositiveNumber);
  ssp->add_option("-o,--output", spec.output, "CSV (.csv) or JSON path");
  ReconstructArgs rec;
  auto* srec = slat->add_subcommand("reconstruct", "Fundamental cell from a spectrum");
  srec->add_option("input", rec.input, "Spectrum CSV or JSON")->required();
  srec->add_option("-d,--dimension", rec.d)->check(CLI::Range(1, 3));
  srec->add_option("--cutoff", rec.cutoff, "Cutoff of a CSV spectrum (default: last shell)");
  srec->add_option("-o,--output", rec.output, "Basis JSON path");

  ReproduceArgs repro;
  auto* srep = app.add_subcommand("reproduce", "Regenerate a figure's data with a PASS/FAIL line");
  srep->add_option("figure", repro.figure, "fig1, fig2, fig5, fig6, fig7 or fig8")->required();
  srep->add_option("--out-dir", repro.out_dir);
  srep->add_option("--x", repro.x, "Family parameter for fig1 and fig2");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (const char* env = std::getenv("DISTSPACE_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const auto value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      err << "error: DISTSPACE_SEED must be a nonnegative integer\n";
      return kExitUsage;
    }
    g.seed = value;
  }

  Context ctx{g, {}, out, err};
  int code = kExitUsage;
  try {
    if (sc->parsed()) {
      ctx.manifest.command = "check";
      code = cmd_check(ctx, check);
    } else if (se->parsed()) {
      ctx.manifest.command = "embed";
      code = cmd_embed(ctx, emb);
    } else if (sd->parsed()) {
      ctx.manifest.command = "degenerate";
      code = cmd_degenerate(ctx, deg);
    } else if (sk->parsed()) {
      ctx.manifest.command = "construct kite-trapezoid";
      code = cmd_kite(ctx, kite);
    } else if (ss->parsed()) {
      ctx.manifest.command = "construct symmetric";
      code = cmd_symmetric(ctx, sym);
    } else if (scirc->parsed()) {
      ctx.manifest.command = "circuits";
      code = cmd_circuits(ctx, circ);
    } else if (ssp->parsed()) {
      ctx.manifest.command = "lattice spectrum";
      code = cmd_spectrum(ctx, spec);
    } else if (srec->parsed()) {
      ctx.manifest.command = "lattice reconstruct";
      code = cmd_reconstruct(ctx, rec);
    } else if (srep->parsed()) {
      ctx.manifest.command = "reproduce";
      code = cmd_reproduce(ctx, repro);
    }
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (!g.manifest_path.empty()) {
    try {
      io::write_file_atomic(g.manifest_path, dump(ctx.manifest.to_json(g)));
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  return code;
}

}  // namespace distspace::cli
