#pragma once

// Random-state ensembles under a given channel and the statistics drawn
// from them: binned averages, envelope checks against the extremal
// families, rank correlation.

#include "esdlab/extremal.hpp"
#include "esdlab/qstate.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace esdlab {

struct EnsembleRecord {
  std::uint64_t seed = 0;
  std::size_t index = 0;
  double delta = 0.0;
  double concurrence = 0.0;
  double negativity = 0.0;
  double linear_entropy = 0.0;
  double delta_r = 0.0;
  double robustness = 0.0;  // NaN when the critical point could not be found
  std::optional<double> r_tilde_c;
  std::optional<double> r_tilde_n;
  // Extremal robustness at this record's concurrence / negativity; NaN when
  // the extremal solver failed.
  RobustnessBounds bounds_c;
  RobustnessBounds bounds_n;
  // Empty when every field was computed; otherwise the failure reasons,
  // separated by "; ".
  std::string flag;

  bool flagged() const { return !flag.empty(); }
};

// Worker count: ESDLAB_THREADS when set to a positive integer, otherwise
// the hardware concurrency.
unsigned worker_count();

struct Ensemble {
  std::vector<EnsembleRecord> records;  // index order
  std::size_t discarded = 0;            // separable draws
  std::size_t flagged = 0;
};

// Draws spec.count states, drops the separable ones (negativity <= 1e-9)
// and evaluates the rest under `delta`. threads = 0 means worker_count().
Ensemble run_ensemble(const RandomSpec& spec, double delta, unsigned threads = 0);

// Fills every derived field of a record for state rho.
EnsembleRecord evaluate_record(const DensityMatrix& rho, double delta);

enum class BinKey { Robustness, RTildeC, RTildeN };
enum class Quantity { C, N, SL, DeltaR };

const char* to_string(BinKey k);
const char* to_string(Quantity q);

struct BinnedSeries {
  BinKey key = BinKey::Robustness;
  Quantity quantity = Quantity::C;
  std::vector<double> bin_edges;  // ascending, size n_bins + 1
  std::vector<std::optional<double>> means;
  std::vector<std::size_t> counts;
  std::vector<std::optional<double>> stderrs;  // needs two or more samples

  std::size_t size() const { return counts.size(); }
  double center(std::size_t k) const { return 0.5 * (bin_edges[k] + bin_edges[k + 1]); }
};

inline constexpr int kDefaultBins = 25;

// Equal-width bins over the observed range of the key. Records whose key is
// absent or not finite are skipped.
BinnedSeries binned_averages(const std::vector<EnsembleRecord>& records, BinKey key,
                             int n_bins = kDefaultBins, Quantity quantity = Quantity::C);

struct EnvelopeViolation {
  std::uint64_t seed = 0;
  std::size_t index = 0;
  double entanglement = 0.0;
  double robustness = 0.0;
  double lower = 0.0;  // R of the MFES
  double upper = 0.0;  // R of the MRES
  double excess = 0.0;  // distance outside [lower - tol, upper + tol]
};

struct EnvelopeReport {
  Measure measure = Measure::Concurrence;
  double delta = 0.0;
  double tol = 0.0;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // records without robustness or bounds
  std::size_t violations = 0;
  std::vector<EnvelopeViolation> worst;  // largest excess first

  double violation_fraction() const {
    return checked == 0 ? 0.0 : static_cast<double>(violations) / checked;
  }
};

inline constexpr double kEnvelopeTol = 1e-6;

// Checks R_MFES - tol <= R <= R_MRES + tol for each record. Bounds stored in
// a record are used when the record was evaluated at `delta`; otherwise
// they are recomputed.
EnvelopeReport envelope_check(const std::vector<EnsembleRecord>& records, double delta,
                              Measure measure, double tol = kEnvelopeTol,
                              std::size_t max_worst = 10);

struct Correlation {
  double rho = 0.0;
  double p_value = 1.0;  // two-sided
  std::size_t n = 0;
};

// Spearman rank correlation with average ranks for ties; p-value from the
// t approximation with n - 2 degrees of freedom.
Correlation spearman(const std::vector<double>& x, const std::vector<double>& y);

// Spearman correlation of bin centers against bin means over the bins with
// at least `min_count` records, optionally restricted to centers below
// `key_max`.
Correlation trend(const BinnedSeries& s, std::size_t min_count = 1,
                  double key_max = std::numeric_limits<double>::infinity());

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;  // asymptotic
};

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace esdlab
