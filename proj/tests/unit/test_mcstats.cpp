#include "esdlab/errors.hpp"
#include "esdlab/io.hpp"
#include "esdlab/mcstats.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

using namespace esdlab;

namespace {

std::string ensemble_csv(const Ensemble& e) {
  std::ostringstream os;
  write_ensemble_csv(os, e.records);
  return os.str();
}

// Distance of each record's normalized concurrence robustness to the nearer
// of the two extremal families.
// fraction of all draws, separable ones included, that land within `band`
// (absolute robustness) of either extremal boundary
double near_boundary_rate(const Ensemble& e, Measure m, double band) {
  std::size_t near = 0;
  for (const auto& r : e.records) {
    const auto& b = m == Measure::Concurrence ? r.bounds_c : r.bounds_n;
    if (!std::isfinite(b.mres) || !std::isfinite(b.mfes)) continue;
    near += std::min(b.mres - r.robustness, r.robustness - b.mfes) < band;
  }
  return static_cast<double>(near) / static_cast<double>(e.records.size() + e.discarded);
}

}  // namespace

TEST_SUITE("mcstats") {
  TEST_CASE("run_ensemble: 1000 draws at delta = 0") {
    const Ensemble e = run_ensemble({1, 1000, SpectrumMode::UniformSimplex, 0.0}, 0.0);
    CHECK(e.records.size() + e.discarded == 1000);
    CHECK(e.records.size() > 100);
    std::size_t prev = 0;
    for (const auto& r : e.records) {
      REQUIRE(std::isfinite(r.robustness));
      REQUIRE(r.robustness >= 0.0);
      REQUIRE(r.robustness <= kBellRobustness + 1e-6);
      REQUIRE(r.negativity > 1e-9);
      REQUIRE(r.seed == 1);
      REQUIRE(r.delta == 0.0);
      REQUIRE((r.index > prev || &r == &e.records.front()));
      prev = r.index;
      REQUIRE(std::isfinite(r.concurrence));
      REQUIRE(std::isfinite(r.linear_entropy));
      REQUIRE(std::isfinite(r.delta_r));
    }
    for (Measure m : {Measure::Concurrence, Measure::Negativity}) {
      const EnvelopeReport rep = envelope_check(e.records, 0.0, m);
      CHECK(rep.checked + rep.skipped == e.records.size());
      CHECK(rep.violations == 0);
      CHECK(rep.violation_fraction() == 0.0);
    }
  }

  TEST_CASE("records match a direct evaluation of the same state") {
    const RandomSpec spec{4, 50, SpectrumMode::AlphaAngles, 0.0};
    const Ensemble e = run_ensemble(spec, 0.5);
    REQUIRE(!e.records.empty());
    const EnsembleRecord& r = e.records.front();
    const DensityMatrix rho = random_state(spec, r.index);
    CHECK(r.concurrence == concurrence(rho));
    CHECK(r.negativity == negativity(rho));
    CHECK(r.robustness == doctest::Approx(s_crit_numeric(rho, 0.5).robustness));
    REQUIRE(r.r_tilde_c);
    CHECK(*r.r_tilde_c == doctest::Approx(normalized_robustness(rho, 0.5, Measure::Concurrence).value));
  }

  TEST_CASE("identical specs give byte-identical CSV output") {
    const RandomSpec spec{9, 300, SpectrumMode::AlphaAngles, 0.05};
    const std::string a = ensemble_csv(run_ensemble(spec, 0.5));
    const std::string b = ensemble_csv(run_ensemble(spec, 0.5));
    CHECK(a == b);
    CHECK(a.rfind(kSchemaLine, 0) == 0);
  }

  TEST_CASE("output does not depend on the worker count") {
    const RandomSpec spec{10, 200, SpectrumMode::UniformSimplex, 0.0};
    const std::string one = ensemble_csv(run_ensemble(spec, 0.3, 1));
    CHECK(one == ensemble_csv(run_ensemble(spec, 0.3, 3)));
    CHECK(one == ensemble_csv(run_ensemble(spec, 0.3, 8)));
  }

  TEST_CASE("worker_count honours ESDLAB_THREADS") {
    ::setenv("ESDLAB_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    ::setenv("ESDLAB_THREADS", "junk", 1);
    CHECK(worker_count() >= 1);
    ::unsetenv("ESDLAB_THREADS");
    CHECK(worker_count() >= 1);
  }

  TEST_CASE("envelope_check catches a record above the MRES") {
    const Ensemble e = run_ensemble({2, 200, SpectrumMode::UniformSimplex, 0.0}, 0.0);
    std::vector<EnsembleRecord> records = e.records;
    EnsembleRecord fake = records.front();
    fake.index = 999999;
    fake.robustness = fake.bounds_c.mres + 1e-3;
    records.push_back(fake);
    const EnvelopeReport rep = envelope_check(records, 0.0, Measure::Concurrence);
    CHECK(rep.violations == 1);
    REQUIRE(rep.worst.size() == 1);
    CHECK(rep.worst.front().index == 999999);
    CHECK(rep.worst.front().excess == doctest::Approx(1e-3 - kEnvelopeTol).epsilon(1e-6));

    // recomputed bounds catch it too
    EnsembleRecord stale = fake;
    stale.delta = 0.7;
    stale.bounds_c = {};
    const EnvelopeReport again = envelope_check({stale}, 0.0, Measure::Concurrence);
    CHECK(again.violations == 1);

    EnsembleRecord below = records.front();
    below.robustness = below.bounds_n.mfes - 1e-4;
    CHECK(envelope_check({below}, 0.0, Measure::Negativity).violations == 1);
  }

  TEST_CASE("binned_averages: shape and empty bins") {
    const Ensemble e = run_ensemble({3, 400, SpectrumMode::AlphaAngles, 0.0}, 0.0);
    const BinnedSeries s = binned_averages(e.records, BinKey::Robustness, 25, Quantity::C);
    REQUIRE(s.bin_edges.size() == 26);
    REQUIRE(s.means.size() == 25);
    REQUIRE(s.stderrs.size() == 25);
    CHECK(std::is_sorted(s.bin_edges.begin(), s.bin_edges.end()));
    std::size_t total = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      total += s.counts[k];
      CHECK(s.means[k].has_value() == (s.counts[k] > 0));
      if (s.counts[k] < 2) CHECK_FALSE(s.stderrs[k].has_value());
    }
    CHECK(total == e.records.size());

    // a handful of records spread over a wide range leaves gaps
    std::vector<EnsembleRecord> sparse(3);
    sparse[0].robustness = 0.0;
    sparse[1].robustness = 0.01;
    sparse[2].robustness = 0.4;
    const BinnedSeries g = binned_averages(sparse, BinKey::Robustness, 10, Quantity::SL);
    CHECK(g.counts[0] == 2);
    CHECK(g.counts[5] == 0);
    CHECK_FALSE(g.means[5].has_value());
    CHECK(g.counts[9] == 1);

    CHECK_THROWS_AS(binned_averages({}, BinKey::Robustness), InvalidArgument);
    CHECK_THROWS_AS(binned_averages(sparse, BinKey::RTildeC), InvalidArgument);
  }

  TEST_CASE("spearman: reference values") {
    const Correlation up = spearman({1, 2, 3, 4, 5}, {2, 4, 8, 16, 32});
    CHECK(up.rho == doctest::Approx(1.0));
    CHECK(up.n == 5);
    const Correlation down = spearman({1, 2, 3, 4, 5}, {5, 3, 2, 1, 0});
    CHECK(down.rho == doctest::Approx(-1.0));
    // ties get average ranks: x ranks 1 2.5 2.5 4 5, y ranks 1 2 3 4 5
    const Correlation tie = spearman({1, 2, 2, 3, 4}, {1, 2, 3, 4, 5});
    CHECK(tie.rho == doctest::Approx(0.9746794344808963).epsilon(1e-12));
    CHECK(tie.p_value == doctest::Approx(0.004818230468198566).epsilon(1e-9));
    // sum d^2 = 36: rho = 1 - 6 * 36 / 990
    const Correlation mid = spearman({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, {2, 1, 4, 3, 9, 5, 6, 10, 8, 7});
    CHECK(mid.rho == doctest::Approx(0.7818181818181817).epsilon(1e-12));
    CHECK(mid.p_value == doctest::Approx(0.007547007781067878).epsilon(1e-9));
    CHECK_THROWS_AS(spearman({1, 2}, {1, 2}), InvalidArgument);
    CHECK_THROWS_AS(spearman({1, 2, 3}, {1, 1, 1}), Degenerate);
  }

  TEST_CASE("ks_two_sample") {
    std::vector<double> a, b, c;
    for (int i = 0; i < 500; ++i) {
      a.push_back(i / 500.0);
      b.push_back((i + 0.5) / 500.0);
      c.push_back(0.3 + i / 500.0);
    }
    CHECK(ks_two_sample(a, a).statistic == 0.0);
    CHECK(ks_two_sample(a, b).p_value > 0.99);
    const KsResult shifted = ks_two_sample(a, c);
    CHECK(shifted.statistic == doctest::Approx(0.3).epsilon(1e-2));
    CHECK(shifted.p_value < 1e-10);
  }

  TEST_CASE("the alpha-angle ensemble crowds the extremal boundaries") {
    // per draw, not per entangled draw: conditioned on entanglement the
    // normalized positions of the two ensembles are about the same
    for (double delta : {0.0, 0.5}) {
      const Ensemble alpha = run_ensemble({5, 3000, SpectrumMode::AlphaAngles, 0.0}, delta);
      const Ensemble simplex = run_ensemble({5, 3000, SpectrumMode::UniformSimplex, 0.0}, delta);
      for (Measure m : {Measure::Concurrence, Measure::Negativity}) {
        CAPTURE(delta);
        CAPTURE(to_string(m));
        CHECK(near_boundary_rate(alpha, m, 0.005) > 1.5 * near_boundary_rate(simplex, m, 0.005));
      }
    }
  }

  TEST_CASE("robustness trends at delta = 0") {
    const Ensemble e = run_ensemble({7, 20000, SpectrumMode::AlphaAngles, 0.0}, 0.0);
    const Correlation c = trend(binned_averages(e.records, BinKey::Robustness, 25, Quantity::C));
    const Correlation sl = trend(binned_averages(e.records, BinKey::Robustness, 25, Quantity::SL));
    CHECK(c.rho > 0.95);
    CHECK(c.p_value < 0.01);
    CHECK(sl.rho < -0.9);
    CHECK(sl.p_value < 0.01);

    // the two normalized robustness measures pull the mixedness in
    // opposite directions
    const Correlation tc = trend(binned_averages(e.records, BinKey::RTildeC, 25, Quantity::SL));
    const Correlation tn = trend(binned_averages(e.records, BinKey::RTildeN, 25, Quantity::SL));
    CHECK(tc.rho < 0.0);
    CHECK(tn.rho > 0.0);
    CHECK(tc.p_value < 0.01);
    CHECK(tn.p_value < 0.01);
  }

  TEST_CASE("trend honours min_count and key_max") {
    BinnedSeries s;
    s.bin_edges = {0, 1, 2, 3, 4, 5};
    s.counts = {5, 5, 1, 5, 5};
    s.means = {1.0, 2.0, 100.0, 4.0, 3.0};
    s.stderrs.assign(5, std::nullopt);
    CHECK(trend(s, 2, 4.0).rho == doctest::Approx(1.0));
    CHECK(trend(s, 2).n == 4);
    CHECK(trend(s, 1).n == 5);
  }

  TEST_CASE("weighted-mixture ensembles evaluate") {
    const Ensemble e = run_ensemble({6, 200, SpectrumMode::UniformSimplex, 0.05}, 0.5);
    // mostly ansatz states, so most draws are entangled
    CHECK(e.records.size() > 150);
    for (Measure m : {Measure::Concurrence, Measure::Negativity})
      CHECK(envelope_check(e.records, 0.5, m).violations == 0);
  }

  TEST_CASE("invalid arguments") {
    CHECK_THROWS_AS(run_ensemble({1, 10, SpectrumMode::UniformSimplex, 0.0}, 1.5), InvalidArgument);
    CHECK_THROWS_AS(run_ensemble({1, 0, SpectrumMode::UniformSimplex, 0.0}, 0.5), InvalidArgument);
    CHECK(std::string(to_string(BinKey::RTildeN)) == "r_tilde_n");
    CHECK(std::string(to_string(Quantity::SL)) == "linear_entropy");
  }
}
