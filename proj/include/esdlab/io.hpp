#pragma once

// JSON state files and the versioned CSV tables the command-line tool
// writes.
//
// A state file holds either a 4x4 row-major array of [re, im] pairs in the
// basis (|00>, |01>, |10>, |11>), or an ansatz point {"r": .., "theta": ..}.

#include "esdlab/errors.hpp"
#include "esdlab/extremal.hpp"
#include "esdlab/mcstats.hpp"
#include "esdlab/qstate.hpp"

#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace esdlab {

// Malformed input. line() is 1-based, 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct StateInput {
  DensityMatrix state;
  std::optional<AnsatzParams> ansatz;  // set for the {"r", "theta"} form
};

StateInput parse_state_json(std::string_view text);
StateInput read_state_file(const std::string& path);

std::string state_to_json(const DensityMatrix& rho, int indent = -1);
std::string ansatz_to_json(const AnsatzParams& p);

inline constexpr const char* kSchemaLine = "# esdlab-schema v1";

// 12 significant digits, '.' separator.
std::string format_number(double x);

// Schema comment, header row, then rows. Cells with commas or quotes are
// quoted.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& columns);

  CsvWriter& cell(double x);
  CsvWriter& cell(const std::optional<double>& x);  // empty when absent
  template <std::integral T>
  CsvWriter& cell(T x) {
    if constexpr (std::is_signed_v<T>)
      return integer(std::to_string(static_cast<long long>(x)));
    else
      return integer(std::to_string(static_cast<unsigned long long>(x)));
  }
  CsvWriter& cell(const std::string& s);
  CsvWriter& cell(const char* s) { return cell(std::string(s)); }
  void end_row();

 private:
  void sep();
  CsvWriter& integer(const std::string& digits);
  std::ostream& os_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

// delta,kind,measure,r,theta,entanglement,robustness
void write_family_csv(std::ostream& os, const std::vector<ExtremalPoint>& points);

// seed,index,delta,concurrence,negativity,linear_entropy,delta_r,robustness,
// r_tilde_c,r_tilde_n,flag
void write_ensemble_csv(std::ostream& os, const std::vector<EnsembleRecord>& records);

struct LabeledSeries {
  std::string label;
  BinnedSeries series;
};

// series,delta,bin_key,quantity,bin_lo,bin_hi,bin_center,count,mean,stderr
void write_binned_csv(std::ostream& os, double delta, const std::vector<LabeledSeries>& series);

}  // namespace esdlab
