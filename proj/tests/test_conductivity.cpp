#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "latticecond/conductivity.hpp"

using namespace latticecond;

namespace {

// Synthetic BandData with prescribed band means and momentum sums.
BandData synthetic_bands(std::vector<double> means, std::vector<double> pis) {
  BandData bd;
  bd.band_mean_energy = std::move(means);
  bd.band_momentum_sum = std::move(pis);
  return bd;
}

ConductivityCurve staircase_curve(const std::vector<double>& levels,
                                  int pts_per_plateau, double noise_frac,
                                  unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> jitter(-noise_frac, noise_frac);
  ConductivityCurve c;
  double e = 0.0;
  for (double lvl : levels)
    for (int i = 0; i < pts_per_plateau; ++i) {
      c.efield_values.push_back(e += 0.1);
      c.sigma_over_alpha.push_back(lvl * (1.0 + jitter(rng)));
      c.n_bands_included.push_back(0);
    }
  return c;
}

}  // namespace

TEST_CASE("sigma_xy sums Pi over bands below the Fermi level") {
  const BandData bd = synthetic_bands({-10.0, -5.0, 0.0, 5.0}, {1.5, -0.5, 2.0, 7.0});
  CHECK(sigma_xy(bd, -20.0) == 0.0);  // empty sum
  CHECK(sigma_xy(bd, -7.0) == 1.5);
  CHECK(sigma_xy(bd, -1.0) == Catch::Approx(1.0));
  // additivity: one more band included adds exactly its Pi
  CHECK(sigma_xy(bd, 2.0) == Catch::Approx(sigma_xy(bd, -1.0) + 2.0));
  int n = 0;
  sigma_xy(bd, 2.0, &n);
  CHECK(n == 3);
}

TEST_CASE("sigma_xy errors when the Fermi level exceeds all band means") {
  const BandData bd = synthetic_bands({-10.0, -5.0}, {1.0, 1.0});
  CHECK_THROWS_AS(sigma_xy(bd, 0.0), InsufficientBandsError);
}

TEST_CASE("a band tied with the Fermi level is excluded") {
  const BandData bd = synthetic_bands({-10.0, -5.0, 0.0}, {1.0, 2.0, 4.0});
  int ties = 0;
  CHECK(sigma_xy(bd, -5.0, nullptr, &ties) == 1.0);
  CHECK(ties == 1);
}

TEST_CASE("raising the Fermi level never removes a band") {
  const BandData bd =
      synthetic_bands({-10.0, -5.0, -1.0, 3.0}, {1.0, 2.0, 3.0, 4.0});
  int prev = -1;
  for (double fermi : {-12.0, -8.0, -3.0, 0.0, 2.9}) {
    int n = 0;
    sigma_xy(bd, fermi, &n);
    CHECK(n >= prev);
    prev = n;
  }
}

TEST_CASE("estimate_sigma0 on the documented three-level example") {
  ConductivityCurve c = staircase_curve({13.8, 27.5, 41.3}, 5, 0.0, 1);
  const Sigma0Estimate est = estimate_sigma0({c});
  CHECK(est.sigma0_over_alpha == Catch::Approx(13.77).margin(0.05));
  REQUIRE(est.assignments.size() == 1);
  CHECK(est.assignments[0] == std::vector<long>{1, 2, 3});
}

TEST_CASE("estimate_sigma0 rejects all-zero curves") {
  ConductivityCurve c = staircase_curve({0.0}, 10, 0.0, 2);
  CHECK_THROWS_AS(estimate_sigma0({c}), NoPlateauError);
}

TEST_CASE("unit recovery from noisy synthetic staircases") {
  std::mt19937 rng(42u);
  std::uniform_real_distribution<double> unit_dist(0.5, 50.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double u = unit_dist(rng);
    ConductivityCurve c =
        staircase_curve({u, 2 * u, 3 * u, 5 * u}, 8, 0.003, 100 + trial);
    const Sigma0Estimate est = estimate_sigma0({c});
    CHECK(std::abs(est.sigma0_over_alpha - u) <= 0.02 * u);
  }
}

TEST_CASE("plateaus are flat within 1% and jumps separate them") {
  ConductivityCurve c = staircase_curve({5.0, 10.0, 20.0}, 6, 0.002, 7);
  const auto plats = find_plateaus(c);
  REQUIRE(plats.size() == 3);
  const auto jumps = detect_jumps(c.efield_values, c.sigma_over_alpha);
  REQUIRE(jumps.size() == 2);
  CHECK(jumps[0] == Catch::Approx(c.efield_values[6]));
  CHECK(jumps[1] == Catch::Approx(c.efield_values[12]));
  for (const auto& pl : plats) {
    double lo = 1e300, hi = -1e300;
    for (size_t i = pl.first; i <= pl.last; ++i) {
      lo = std::min(lo, c.sigma_over_alpha[i]);
      hi = std::max(hi, c.sigma_over_alpha[i]);
    }
    CHECK(hi - lo <= 0.01 * std::abs(pl.level) + 1e-12);
  }
}

TEST_CASE("zero-field extrapolation recovers a linear intercept") {
  ConductivityCurve c;
  for (double e : {0.0, 0.1, 0.2, 0.3, 0.4}) {
    c.efield_values.push_back(e);
    c.sigma_over_alpha.push_back(7.0 + 3.0 * e);
    c.n_bands_included.push_back(1);
  }
  CHECK(extrapolate_zero_field(c) == Catch::Approx(7.0).margin(1e-12));
}

TEST_CASE("sweep at desk scale: flat zero curve below all bands") {
  ModelParams p;
  p.lambda = 1.0;
  p.Ux = p.Uy = 10.0;
  p.N = 2;
  p.Q = 5;
  p.J = 5;
  const SweepResult sr = sweep(p, {0.0, 0.5, 1.0}, {-1e6}, 3, 2);
  REQUIRE(sr.curves.size() == 1);
  for (double s : sr.curves[0].sigma_over_alpha) CHECK(s == 0.0);
  for (int n : sr.curves[0].n_bands_included) CHECK(n == 0);
  CHECK(sr.curves[0].jump_locations.empty());
}

TEST_CASE("sweep validates its field grid") {
  ModelParams p;
  p.lambda = 1.0;
  p.Q = p.J = 3;
  p.N = 2;
  CHECK_THROWS_AS(sweep(p, {}, {0.0}, 2), InvalidParameterError);
  CHECK_THROWS_AS(sweep(p, {1.0, 0.5}, {0.0}, 2), InvalidParameterError);
}
