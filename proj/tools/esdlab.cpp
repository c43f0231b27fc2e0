// esdlab command-line tool.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 domain error (separable input, degenerate or unsolvable problem).

#include "esdlab/channel.hpp"
#include "esdlab/entanglement.hpp"
#include "esdlab/errors.hpp"
#include "esdlab/extremal.hpp"
#include "esdlab/io.hpp"
#include "esdlab/mcstats.hpp"
#include "esdlab/robustness.hpp"
#include "esdlab/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using namespace esdlab;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kDomain = 3 };

// 12 significant digits, as in the CSV output.
double rounded(double x) { return std::stod(format_number(x)); }

int cmd_measure(const std::string& path) {
  const StateInput in = read_state_file(path);
  const DensityMatrix& rho = in.state;
  const BlochData b = bloch_vectors(rho);
  json out;
  out["C"] = rounded(concurrence(rho));
  out["N"] = rounded(negativity(rho));
  out["S_L"] = rounded(linear_entropy(rho));
  out["r1_len"] = rounded(b.r1_len);
  out["r2_len"] = rounded(b.r2_len);
  out["delta_r"] = rounded(b.delta_r);
  std::cout << out.dump() << '\n';
  return kOk;
}

int cmd_scrit(const std::string& path, double delta, const std::string& method) {
  const StateInput in = read_state_file(path);
  const bool use_ansatz = method == "ansatz" || (method == "auto" && in.ansatz.has_value());
  if (use_ansatz && !in.ansatz) throw InvalidArgument("--method ansatz needs an {\"r\", \"theta\"} state");
  const RobustnessResult r = use_ansatz ? s_crit_ansatz(*in.ansatz, delta) : s_crit_numeric(in.state, delta);
  json out;
  out["delta"] = delta;
  out["s_crit"] = rounded(r.s_crit);
  out["robustness"] = rounded(r.robustness);
  out["method"] = to_string(r.method);
  out["residual"] = r.residual;
  std::cout << out.dump() << '\n';
  return kOk;
}

// Writes to `path`, or stdout when it is empty or "-".
template <class F>
void emit(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidArgument("cannot write " + path);
  write(os);
}

int cmd_family(Kind kind, Measure measure, double delta, int grid, FamilyGrid spacing,
               const std::string& out) {
  const auto points = family(kind, measure, delta, grid, spacing);
  emit(out, [&](std::ostream& os) { write_family_csv(os, points); });
  return kOk;
}

std::string delta_tag(double delta) {
  std::ostringstream os;
  os << "delta" << std::setprecision(6) << delta;
  return os.str();
}

int cmd_mc(double delta, std::uint64_t seed, long long count, SpectrumMode mode, double mix, int bins,
           const std::string& out_dir) {
  if (count <= 0) throw InvalidArgument("--count must be positive");
  RandomSpec spec{seed, static_cast<std::size_t>(count), mode, mix};
  spec.validate();
  const Ensemble e = run_ensemble(spec, delta);
  fs::create_directories(out_dir);
  const std::string tag = delta_tag(delta);
  json summary;
  summary["delta"] = delta;
  summary["seed"] = seed;
  summary["count"] = count;
  summary["kept"] = e.records.size();
  summary["discarded"] = e.discarded;
  summary["flagged"] = e.flagged;
  std::vector<std::string> files;

  auto write_file = [&](const std::string& name, auto&& write) {
    const fs::path p = fs::path(out_dir) / name;
    emit(p.string(), write);
    files.push_back(p.string());
  };
  write_file("ensemble_" + tag + ".csv",
             [&](std::ostream& os) { write_ensemble_csv(os, e.records); });

  struct Binned {
    const char* name;
    std::vector<std::pair<BinKey, Quantity>> series;
  };
  const std::vector<Binned> outputs = {
      {"measures_vs_robustness",
       {{BinKey::Robustness, Quantity::C}, {BinKey::Robustness, Quantity::N},
        {BinKey::Robustness, Quantity::SL}}},
      {"mixedness_vs_rtilde", {{BinKey::RTildeC, Quantity::SL}, {BinKey::RTildeN, Quantity::SL}}},
      {"asymmetry_vs_rtilde", {{BinKey::RTildeC, Quantity::DeltaR}, {BinKey::RTildeN, Quantity::DeltaR}}},
  };
  if (!e.records.empty()) {
    for (const auto& out : outputs) {
      std::vector<LabeledSeries> series;
      for (auto [key, q] : out.series) {
        try {
          series.push_back({std::string(to_string(key)) + ":" + to_string(q),
                            binned_averages(e.records, key, bins, q)});
        } catch (const InvalidArgument& err) {
          std::cerr << "warning: " << out.name << " " << to_string(key) << ": " << err.what() << '\n';
        }
      }
      write_file(std::string(out.name) + "_" + tag + ".csv",
                 [&](std::ostream& os) { write_binned_csv(os, delta, series); });
    }
  }
  summary["files"] = files;
  std::cout << summary.dump(2) << '\n';
  return kOk;
}

void print_report(const SuiteReport& rep) {
  std::printf("suite: %s\n", rep.suite.c_str());
  std::printf("%-32s %8s %8s %12s %10s  %s\n", "check", "cases", "failures", "worst", "tol", "worst case");
  for (const auto& c : rep.checks) {
    std::printf("%-32s %8zu %8zu %12.4e %10.1e  %s\n", c.name.c_str(), c.cases, c.failures, c.worst,
                c.tolerance, c.worst_case.c_str());
  }
  std::printf("%s\n", rep.passed() ? "PASS" : "FAIL");
}

int cmd_verify(const std::string& suite, std::uint64_t seed, long long count) {
  if (count <= 0) throw InvalidArgument("--count must be positive");
  SuiteReport rep;
  if (suite == "factorization")
    rep = verify_factorization(seed, static_cast<std::size_t>(count));
  else if (suite == "quasifidelity")
    rep = verify_quasifidelity();
  else
    rep = verify_envelope(seed, static_cast<std::size_t>(count));
  print_report(rep);
  return rep.passed() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement sudden death and robustness of two-qubit states"};
  app.require_subcommand(1);

  std::string state_path;
  double delta = 0.0;

  auto* measure = app.add_subcommand("measure", "Concurrence, negativity, linear entropy, Bloch lengths");
  measure->add_option("state", state_path, "JSON state file")->required();

  std::string method = "auto";
  auto* scrit = app.add_subcommand("scrit", "Critical noise parameter and robustness");
  scrit->add_option("state", state_path, "JSON state file")->required();
  scrit->add_option("--delta", delta, "Nonuniformity in [0, 1]")->required()->check(CLI::Range(0.0, 1.0));
  scrit->add_option("--method", method, "auto | numeric | ansatz")
      ->check(CLI::IsMember({"auto", "numeric", "ansatz"}));

  const std::map<std::string, Kind> kinds{{"mres", Kind::MRES}, {"mfes", Kind::MFES}, {"quasi", Kind::QuasiMFES}};
  const std::map<std::string, Measure> measures{{"c", Measure::Concurrence}, {"n", Measure::Negativity}};
  Kind kind = Kind::MRES;
  Measure which = Measure::Concurrence;
  int grid = 20;
  std::string out_path;
  auto* fam = app.add_subcommand("family", "Extremal family curve as CSV");
  fam->add_option("--kind", kind, "mres | mfes | quasi")->required()->transform(CLI::CheckedTransformer(kinds));
  fam->add_option("--measure", which, "c | n")->required()->transform(CLI::CheckedTransformer(measures));
  fam->add_option("--delta", delta, "Nonuniformity in [0, 1]")->required()->check(CLI::Range(0.0, 1.0));
  fam->add_option("--grid", grid, "Number of points")->check(CLI::PositiveNumber);
  const std::map<std::string, FamilyGrid> spacings{{"robustness", FamilyGrid::Robustness},
                                                   {"entanglement", FamilyGrid::Entanglement}};
  FamilyGrid spacing = FamilyGrid::Robustness;
  fam->add_option("--param", spacing, "Grid variable: robustness | entanglement")
      ->transform(CLI::CheckedTransformer(spacings));
  fam->add_option("--out", out_path, "Output CSV (default stdout)");

  std::uint64_t seed = 1;
  long long count = 20000;
  const std::map<std::string, SpectrumMode> modes{{"simplex", SpectrumMode::UniformSimplex},
                                                  {"alpha", SpectrumMode::AlphaAngles}};
  SpectrumMode mode = SpectrumMode::AlphaAngles;
  double mix = 0.0;
  int bins = kDefaultBins;
  std::string out_dir = ".";
  auto* mc = app.add_subcommand("mc", "Random-state ensemble and binned averages");
  mc->add_option("--delta", delta, "Nonuniformity in [0, 1]")->required()->check(CLI::Range(0.0, 1.0));
  mc->add_option("--seed", seed, "Ensemble seed");
  mc->add_option("--count", count, "Number of draws");
  mc->add_option("--mode", mode, "simplex | alpha")->transform(CLI::CheckedTransformer(modes));
  mc->add_option("--mix", mix, "Upper bound of the ansatz mixing weight (0 disables)")
      ->check(CLI::Range(0.0, 1.0));
  mc->add_option("--bins", bins, "Bins per series")->check(CLI::PositiveNumber);
  mc->add_option("--out", out_dir, "Output directory");

  std::string suite;
  long long verify_count = 0;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "envelope | factorization | quasifidelity")
      ->required()
      ->check(CLI::IsMember({"envelope", "factorization", "quasifidelity"}));
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--count", verify_count, "Cases (factorization: 200, envelope: 20000)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*measure) return cmd_measure(state_path);
    if (*scrit) return cmd_scrit(state_path, delta, method);
    if (*fam) return cmd_family(kind, which, delta, grid, spacing, out_path);
    if (*mc) return cmd_mc(delta, seed, count, mode, mix, bins, out_dir);
    if (*verify) {
      if (verify->count("--count") == 0) verify_count = suite == "envelope" ? 20000 : 200;
      return cmd_verify(suite, seed, verify_count);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidState& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  }
  return kUsage;
}
