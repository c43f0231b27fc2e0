#include "esdlab/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace esdlab {

using nlohmann::json;

ParseError::ParseError(const std::string& what, int line)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

int line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  int line = 1;
  for (std::size_t i = 0; i < offset; ++i)
    if (text[i] == '\n') ++line;
  return line;
}

// Line of the opening bracket of matrix entry (row, col), or of the row
// itself when col < 0. Falls back to line 1 when the text has a different
// shape than expected.
int line_of_entry(std::string_view text, int row, int col) {
  int depth = 0, rows_seen = -1, cols_seen = -1, line = 1;
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '\n') ++line;
    if (in_string) {
      if (ch == '\\') ++i;
      else if (ch == '"') in_string = false;
      continue;
    }
    if (ch == '"') {
      in_string = true;
    } else if (ch == '[') {
      ++depth;
      if (depth == 2) {
        ++rows_seen;
        cols_seen = -1;
        if (rows_seen == row && col < 0) return line;
      } else if (depth == 3) {
        ++cols_seen;
        if (rows_seen == row && cols_seen == col) return line;
      }
    } else if (ch == ']') {
      --depth;
    }
  }
  return 1;
}

int line_of_key(std::string_view text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  return pos == std::string_view::npos ? 1 : line_of_offset(text, pos);
}

double as_number(const json& v, const std::string& what, int line) {
  if (!v.is_number()) throw ParseError(what + " must be a number", line);
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(what + " must be finite", line);
  return x;
}

StateInput parse_ansatz(const json& doc, std::string_view text) {
  for (const auto& [k, v] : doc.items())
    if (k != "r" && k != "theta") throw ParseError("unexpected key \"" + k + "\"", line_of_key(text, k));
  for (const char* k : {"r", "theta"})
    if (!doc.contains(k)) throw ParseError(std::string("missing key \"") + k + "\"", 1);
  AnsatzParams p;
  p.r = as_number(doc["r"], "\"r\"", line_of_key(text, "r"));
  p.theta = as_number(doc["theta"], "\"theta\"", line_of_key(text, "theta"));
  try {
    p.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), line_of_key(text, std::abs(p.r - 0.5) > 0.5 ? "r" : "theta"));
  }
  return {make_ansatz(p), p};
}

StateInput parse_matrix(const json& doc, std::string_view text) {
  if (doc.size() != 4)
    throw ParseError("density matrix must have 4 rows, got " + std::to_string(doc.size()), 1);
  Matrix4c m;
  for (int i = 0; i < 4; ++i) {
    const json& row = doc[i];
    if (!row.is_array() || row.size() != 4)
      throw ParseError("row " + std::to_string(i) + " must be an array of 4 [re, im] pairs",
                       line_of_entry(text, i, -1));
    for (int j = 0; j < 4; ++j) {
      const json& z = row[j];
      const int line = line_of_entry(text, i, j);
      const std::string where = "entry (" + std::to_string(i) + ", " + std::to_string(j) + ")";
      if (!z.is_array() || z.size() != 2) throw ParseError(where + " must be a [re, im] pair", line);
      m(i, j) = {as_number(z[0], where + " real part", line),
                 as_number(z[1], where + " imaginary part", line)};
    }
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > kHermitianTol)
        throw ParseError("matrix is not Hermitian at entry (" + std::to_string(i) + ", " +
                             std::to_string(j) + ")",
                         line_of_entry(text, i, j));
  try {
    return {DensityMatrix(m), std::nullopt};
  } catch (const InvalidState& e) {
    throw ParseError(std::string("invalid density matrix: ") + e.what(), 0);
  }
}

}  // namespace

StateInput parse_state_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError(std::string("malformed JSON: ") + e.what(), line_of_offset(text, byte));
  }
  if (doc.is_object()) return parse_ansatz(doc, text);
  if (doc.is_array()) return parse_matrix(doc, text);
  throw ParseError("expected a 4x4 matrix or an {\"r\", \"theta\"} object", 1);
}

StateInput read_state_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open state file " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_state_json(ss.str());
}

std::string state_to_json(const DensityMatrix& rho, int indent) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back({rho(i, j).real(), rho(i, j).imag()});
    rows.push_back(row);
  }
  return rows.dump(indent);
}

std::string ansatz_to_json(const AnsatzParams& p) {
  return json{{"r", p.r}, {"theta", p.theta}}.dump();
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& columns)
    : os_(os), columns_(columns.size()) {
  os_ << kSchemaLine << '\n';
  for (const auto& c : columns) cell(c);
  end_row();
}

void CsvWriter::sep() {
  if (filled_ == columns_) throw Error("CsvWriter: too many cells in row");
  if (filled_++ > 0) os_ << ',';
}

CsvWriter& CsvWriter::cell(double x) {
  sep();
  os_ << format_number(x);
  return *this;
}

CsvWriter& CsvWriter::cell(const std::optional<double>& x) {
  sep();
  if (x) os_ << format_number(*x);
  return *this;
}

CsvWriter& CsvWriter::integer(const std::string& digits) {
  sep();
  os_ << digits;
  return *this;
}

CsvWriter& CsvWriter::cell(const std::string& s) {
  sep();
  if (s.find_first_of(",\"\n") == std::string::npos) {
    os_ << s;
    return *this;
  }
  os_ << '"';
  for (char ch : s) {
    if (ch == '"') os_ << '"';
    os_ << ch;
  }
  os_ << '"';
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) throw Error("CsvWriter: row has too few cells");
  os_ << '\n';
  filled_ = 0;
}

void write_family_csv(std::ostream& os, const std::vector<ExtremalPoint>& points) {
  CsvWriter w(os, {"delta", "kind", "measure", "r", "theta", "entanglement", "robustness"});
  for (const auto& p : points) {
    w.cell(p.delta).cell(to_string(p.kind)).cell(to_string(p.measure)).cell(p.params.r);
    w.cell(p.params.theta).cell(p.entanglement).cell(p.robustness);
    w.end_row();
  }
}

void write_ensemble_csv(std::ostream& os, const std::vector<EnsembleRecord>& records) {
  CsvWriter w(os, {"seed", "index", "delta", "concurrence", "negativity", "linear_entropy",
                   "delta_r", "robustness", "r_tilde_c", "r_tilde_n", "flag"});
  for (const auto& r : records) {
    w.cell(r.seed).cell(r.index).cell(r.delta).cell(r.concurrence).cell(r.negativity);
    w.cell(r.linear_entropy).cell(r.delta_r);
    w.cell(std::isfinite(r.robustness) ? std::optional<double>(r.robustness) : std::nullopt);
    w.cell(r.r_tilde_c).cell(r.r_tilde_n).cell(r.flag);
    w.end_row();
  }
}

void write_binned_csv(std::ostream& os, double delta, const std::vector<LabeledSeries>& series) {
  CsvWriter w(os, {"series", "delta", "bin_key", "quantity", "bin_lo", "bin_hi", "bin_center",
                   "count", "mean", "stderr"});
  for (const auto& ls : series) {
    const BinnedSeries& s = ls.series;
    for (std::size_t k = 0; k < s.size(); ++k) {
      w.cell(ls.label).cell(delta).cell(to_string(s.key)).cell(to_string(s.quantity));
      w.cell(s.bin_edges[k]).cell(s.bin_edges[k + 1]).cell(s.center(k)).cell(s.counts[k]);
      w.cell(s.means[k]).cell(s.stderrs[k]);
      w.end_row();
    }
  }
}

}  // namespace esdlab
