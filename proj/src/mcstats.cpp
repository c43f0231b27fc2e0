#include "esdlab/mcstats.hpp"

#include "esdlab/entanglement.hpp"
#include "esdlab/errors.hpp"
#include "esdlab/robustness.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <thread>

namespace esdlab {

namespace {

constexpr double kSeparableNegativity = 1e-9;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

void add_flag(EnsembleRecord& r, const std::string& what) {
  if (!r.flag.empty()) r.flag += "; ";
  r.flag += what;
}

bool finite_bounds(const RobustnessBounds& b) { return std::isfinite(b.mres) && std::isfinite(b.mfes); }

// Bounds and normalized robustness for one measure.
void fill_measure(EnsembleRecord& rec, Measure m) {
  const double value = m == Measure::Concurrence ? rec.concurrence : rec.negativity;
  RobustnessBounds& bounds = m == Measure::Concurrence ? rec.bounds_c : rec.bounds_n;
  std::optional<double>& tilde = m == Measure::Concurrence ? rec.r_tilde_c : rec.r_tilde_n;
  const std::string tag = std::string("r_tilde_") + (m == Measure::Concurrence ? "c" : "n");
  bounds = {kNaN, kNaN};
  if (!(value > 0.0)) {
    add_flag(rec, tag + ": zero entanglement");
    return;
  }
  try {
    bounds = robustness_bounds(m, std::min(value, 1.0), rec.delta);
  } catch (const Error& e) {
    bounds = {kNaN, kNaN};
    add_flag(rec, tag + ": " + e.what());
    return;
  }
  if (!std::isfinite(rec.robustness)) return;
  try {
    const NormalizedRobustness nr = normalize_robustness(rec.robustness, bounds.mres, bounds.mfes);
    tilde = nr.value;
    if (nr.out_of_range) add_flag(rec, tag + ": clipped");
  } catch (const Error& e) {
    add_flag(rec, tag + ": " + e.what());
  }
}

}  // namespace

unsigned worker_count() {
  if (const char* env = std::getenv("ESDLAB_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

EnsembleRecord evaluate_record(const DensityMatrix& rho, double delta) {
  EnsembleRecord rec;
  rec.delta = delta;
  const Measures ms = measures(rho);
  rec.concurrence = ms.concurrence;
  rec.negativity = ms.negativity;
  rec.linear_entropy = linear_entropy(rho);
  rec.delta_r = bloch_vectors(rho).delta_r;
  try {
    rec.robustness = s_crit_numeric(rho, delta).robustness;
  } catch (const Error& e) {
    rec.robustness = kNaN;
    add_flag(rec, std::string("robustness: ") + e.what());
  }
  fill_measure(rec, Measure::Concurrence);
  fill_measure(rec, Measure::Negativity);
  return rec;
}

Ensemble run_ensemble(const RandomSpec& spec, double delta, unsigned threads) {
  spec.validate();
  if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidArgument("delta must lie in [0, 1]");
  if (threads == 0) threads = worker_count();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(spec.count, 1)));

  // Slot per index; workers pull indices from a shared counter and the
  // merge walks the slots in order.
  std::vector<std::optional<EnsembleRecord>> slots(spec.count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < spec.count; i = next++) {
      const DensityMatrix rho = random_state(spec, i);
      if (negativity(rho) <= kSeparableNegativity) continue;
      EnsembleRecord rec = evaluate_record(rho, delta);
      rec.seed = spec.seed;
      rec.index = i;
      slots[i] = std::move(rec);
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  Ensemble out;
  for (auto& slot : slots) {
    if (!slot) {
      ++out.discarded;
      continue;
    }
    if (slot->flagged()) ++out.flagged;
    out.records.push_back(std::move(*slot));
  }
  return out;
}

const char* to_string(BinKey k) {
  switch (k) {
    case BinKey::Robustness: return "robustness";
    case BinKey::RTildeC: return "r_tilde_c";
    case BinKey::RTildeN: return "r_tilde_n";
  }
  return "?";
}

const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::C: return "concurrence";
    case Quantity::N: return "negativity";
    case Quantity::SL: return "linear_entropy";
    case Quantity::DeltaR: return "delta_r";
  }
  return "?";
}

namespace {

std::optional<double> key_of(const EnsembleRecord& r, BinKey k) {
  std::optional<double> v;
  switch (k) {
    case BinKey::Robustness: v = r.robustness; break;
    case BinKey::RTildeC: v = r.r_tilde_c; break;
    case BinKey::RTildeN: v = r.r_tilde_n; break;
  }
  if (v && !std::isfinite(*v)) v.reset();
  return v;
}

double quantity_of(const EnsembleRecord& r, Quantity q) {
  switch (q) {
    case Quantity::C: return r.concurrence;
    case Quantity::N: return r.negativity;
    case Quantity::SL: return r.linear_entropy;
    case Quantity::DeltaR: return r.delta_r;
  }
  return kNaN;
}

}  // namespace

BinnedSeries binned_averages(const std::vector<EnsembleRecord>& records, BinKey key, int n_bins,
                             Quantity quantity) {
  if (n_bins < 1) throw InvalidArgument("binned_averages: n_bins must be positive");
  BinnedSeries out;
  out.key = key;
  out.quantity = quantity;

  std::vector<std::pair<double, double>> pts;
  for (const auto& r : records)
    if (auto k = key_of(r, key)) pts.emplace_back(*k, quantity_of(r, quantity));
  if (pts.empty()) throw InvalidArgument("binned_averages: no records carry this key");

  auto [mn, mx] = std::minmax_element(pts.begin(), pts.end());
  double lo = mn->first;
  double hi = mx->first;
  if (hi <= lo) hi = lo + 1.0;  // single distinct key value
  const std::size_t n = static_cast<std::size_t>(n_bins);
  out.bin_edges.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) out.bin_edges[k] = lo + (hi - lo) * k / n;
  out.bin_edges[n] = hi;

  std::vector<double> sum(n, 0.0), sum2(n, 0.0);
  out.counts.assign(n, 0);
  for (const auto& [k, v] : pts) {
    auto b = static_cast<std::size_t>((k - lo) / (hi - lo) * n);
    b = std::min(b, n - 1);
    ++out.counts[b];
    sum[b] += v;
    sum2[b] += v * v;
  }
  out.means.resize(n);
  out.stderrs.resize(n);
  for (std::size_t b = 0; b < n; ++b) {
    const auto c = static_cast<double>(out.counts[b]);
    if (c == 0) continue;
    const double mean = sum[b] / c;
    out.means[b] = mean;
    if (c >= 2) {
      const double var = std::max(0.0, (sum2[b] - c * mean * mean) / (c - 1.0));
      out.stderrs[b] = std::sqrt(var / c);
    }
  }
  return out;
}

EnvelopeReport envelope_check(const std::vector<EnsembleRecord>& records, double delta,
                              Measure measure, double tol, std::size_t max_worst) {
  EnvelopeReport rep;
  rep.measure = measure;
  rep.delta = delta;
  rep.tol = tol;
  std::vector<EnvelopeViolation> all;
  for (const auto& r : records) {
    const double value = measure == Measure::Concurrence ? r.concurrence : r.negativity;
    if (!std::isfinite(r.robustness) || !(value > 0.0)) {
      ++rep.skipped;
      continue;
    }
    RobustnessBounds b = measure == Measure::Concurrence ? r.bounds_c : r.bounds_n;
    if (r.delta != delta || !finite_bounds(b)) {
      try {
        b = robustness_bounds(measure, std::min(value, 1.0), delta);
      } catch (const Error&) {
        ++rep.skipped;
        continue;
      }
    }
    ++rep.checked;
    const double excess = std::max(b.mfes - tol - r.robustness, r.robustness - b.mres - tol);
    if (excess > 0.0) {
      ++rep.violations;
      all.push_back({r.seed, r.index, value, r.robustness, b.mfes, b.mres, excess});
    }
  }
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.excess > b.excess; });
  if (all.size() > max_worst) all.resize(max_worst);
  rep.worst = std::move(all);
  return rep;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> rank(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
    i = j + 1;
  }
  return rank;
}

}  // namespace

Correlation spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("spearman: size mismatch");
  Correlation out;
  out.n = x.size();
  if (out.n < 3) throw InvalidArgument("spearman: need at least three pairs");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / out.n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / out.n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < out.n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw Degenerate("spearman: constant input");
  out.rho = sxy / std::sqrt(sxx * syy);
  const double dof = static_cast<double>(out.n) - 2.0;
  const double one_minus = 1.0 - out.rho * out.rho;
  if (one_minus <= 0.0) {
    out.p_value = 0.0;
  } else {
    const double t = std::abs(out.rho) * std::sqrt(dof / one_minus);
    boost::math::students_t dist(dof);
    out.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
  }
  return out;
}

Correlation trend(const BinnedSeries& s, std::size_t min_count, double key_max) {
  std::vector<double> x, y;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s.counts[k] < std::max<std::size_t>(min_count, 1) || !s.means[k]) continue;
    if (s.center(k) >= key_max) continue;
    x.push_back(s.center(k));
    y.push_back(*s.means[k]);
  }
  return spearman(x, y);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  KsResult out;
  out.statistic = d;
  // Kolmogorov tail with the usual small-sample correction of the argument.
  const double ne = std::sqrt(na * nb / (na + nb));
  const double lambda = (ne + 0.12 + 0.11 / ne) * d;
  if (lambda < 0.2) return out;  // series converges slowly; p is 1 to working precision
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  out.p_value = std::clamp(sum, 0.0, 1.0);
  return out;
}

}  // namespace esdlab
