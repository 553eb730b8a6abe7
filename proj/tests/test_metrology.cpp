// Copyright 2026 The ThermoQFI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include "oracles.hpp"
#include "thermoqfi/errors.hpp"
#include "thermoqfi/metrology.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace thermoqfi;

namespace {

// Root of u tanh(u) = 2 by bisection; the TLS optimum is T = w0 / (2u).
double tls_optimum_u() {
  double lo = 1.0, hi = 3.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * std::tanh(mid) < 2.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double sech2(double x) {
  const double c = std::cosh(x);
  return 1.0 / (c * c);
}

// Fisher information of a diagonal family from its populations.
double classical_fisher(const std::vector<double>& p, const std::vector<double>& dp) {
  double f = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) f += dp[i] * dp[i] / p[i];
  return f;
}

ProbeFamily n1_family(const ThermometerParams& p) {
  return [p](double t) { return probe_state_n1(p, t); };
}

}  // namespace

TEST_SUITE("metrology") {

TEST_CASE("qubit QFI") {
  const DensityMatrix rho(ProbeState2x2{0.3, 0.2}.matrix());
  CHECK(qfi_qubit(rho, Operator::Zero(2, 2)) == 0.0);

  const double w0 = 0.7;
  for (double t : {0.05, 0.2, 1.0, 5.0}) {
    const DensityMatrix tls = thermal_tls(w0, t).density();
    Operator d = Operator::Zero(2, 2);
    const double dchi = -w0 / (2 * t * t) * sech2(w0 / (2 * t));
    d(0, 0) = -0.5 * dchi;
    d(1, 1) = 0.5 * dchi;
    const double ref = w0 * w0 * sech2(w0 / (2 * t)) / (4 * std::pow(t, 4));
    CHECK(qfi_qubit(tls, d) == doctest::Approx(ref).epsilon(1e-8));
  }

  Operator nh = Operator::Zero(2, 2);
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(qfi_qubit(rho, nh), ArgumentError);
  CHECK_THROWS_AS(qfi_qubit(DensityMatrix::maximally_mixed(4), Operator::Zero(4, 4)), ShapeError);
}

TEST_CASE("SLD QFI") {
  // I/2 with d rho = h sx: two off-diagonal terms 2 h^2 / 1.
  const double h = 0.37;
  CHECK(qfi_sld(DensityMatrix::maximally_mixed(2), h * oracle::sx()) == doctest::Approx(4 * h * h));

  const std::vector<double> p{0.5, 0.3, 0.2};
  const std::vector<double> dp{0.1, -0.04, -0.06};
  Operator rho = Operator::Zero(3, 3), d = Operator::Zero(3, 3);
  for (int i = 0; i < 3; ++i) {
    rho(i, i) = p[static_cast<std::size_t>(i)];
    d(i, i) = dp[static_cast<std::size_t>(i)];
  }
  CHECK(qfi_sld(DensityMatrix(rho), d) == doctest::Approx(classical_fisher(p, dp)).epsilon(1e-12));

  std::mt19937_64 rng(53);
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix r(oracle::random_density(rng, 2));
    const Operator dr = oracle::random_hermitian(rng, 2);
    const Operator traceless = dr - 0.5 * dr.trace() * Operator::Identity(2, 2);
    CHECK(std::abs(qfi_qubit(r, traceless) - qfi_sld(r, traceless)) < 1e-9);
  }

  // Near-pure state: the qubit formula hands over to the SLD sum.
  Operator pure = Operator::Zero(2, 2);
  pure(0, 0) = 1.0 - 1e-14;
  pure(1, 1) = 1e-14;
  const Operator dpure = 0.1 * oracle::sx();
  CHECK(qfi_qubit(DensityMatrix(pure), dpure) == doctest::Approx(qfi_sld(DensityMatrix(pure), dpure)));
  CHECK(std::isfinite(qfi_qubit(DensityMatrix(pure), dpure)));
}

TEST_CASE("temperature derivative") {
  const StateFamily constant = [](double) { return DensityMatrix::maximally_mixed(2); };
  CHECK(oracle::max_abs(d_rho_dT(constant, 0.3)) == 0.0);

  const double w0 = 0.5;
  for (double t : {0.02, 0.1, 0.7}) {
    const Operator d = d_rho_dT(as_state_family([w0](double x) { return thermal_tls(w0, x); }), t);
    const double ref = w0 / (4 * t * t) * sech2(w0 / (2 * t));
    CHECK(d(0, 0).real() == doctest::Approx(ref).epsilon(1e-6));
    CHECK(d(1, 1).real() == doctest::Approx(-ref).epsilon(1e-6));
  }

  // Halving the step leaves the refined derivative in place.
  const ThermometerParams p{1.0, {0.04}, {0.04}};
  const StateFamily fam = as_state_family(n1_family(p));
  const double t = 0.05;
  const Operator refined = d_rho_dT(fam, t);
  const double h = derivative_step(t);
  const Operator halved = (fam(t + 0.5 * h).matrix() - fam(t - 0.5 * h).matrix()) / h;
  CHECK(oracle::max_abs(refined - halved) / oracle::max_abs(refined) < 1e-6);

  CHECK(derivative_step(1.0) == doctest::Approx(1e-4));
  CHECK(derivative_step(1e-4) == doctest::Approx(1e-7));

  const StateFamily broken = [](double x) {
    if (x > 0.5) throw DerivativeFailure("outside");
    return DensityMatrix::maximally_mixed(2);
  };
  CHECK_THROWS_AS(d_rho_dT(broken, 0.5), DerivativeFailure);
}

TEST_CASE("thermal TLS QFI and the optimal-temperature constant") {
  CHECK(qfi_thermal_tls(0.7, 0.2) == doctest::Approx(0.49 * sech2(1.75) / (4 * 0.0016)));
  CHECK(qfi_thermal_tls(1.0, 1e-3) == 0.0);

  const double u = tls_optimum_u();
  CHECK(gamma_constant() == doctest::Approx(1.0 / (2.0 * u)).epsilon(1e-10));
  CHECK(gamma_constant() == doctest::Approx(0.2421).epsilon(1e-4));

  // 2g = tanh(1/g) puts its root at twice the maximizer of the closed form.
  const double gl = gamma_literal();
  CHECK(2.0 * gl == doctest::Approx(std::tanh(1.0 / gl)).epsilon(1e-12));
  CHECK(gl == doctest::Approx(0.4842).epsilon(1e-4));
  CHECK(gl == doctest::Approx(2.0 * gamma_constant()).epsilon(1e-10));

  // One local maximum on [1e-3, 10].
  const std::vector<double> grid = temperature_grid(1e-3, 10.0, 2000);
  int maxima = 0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double a = qfi_thermal_tls(1.0, grid[i - 1]);
    const double b = qfi_thermal_tls(1.0, grid[i]);
    const double c = qfi_thermal_tls(1.0, grid[i + 1]);
    if (b > a && b > c) ++maxima;
  }
  CHECK(maxima == 1);

  // Scale covariance: the stationary point of log F for w0 = 0.04.
  const double w0 = 0.04;
  const double tstar = w0 * gamma_constant();
  const double slope = -4.0 / tstar + w0 / (tstar * tstar) * std::tanh(w0 / (2 * tstar));
  CHECK(std::abs(slope * tstar) < 1e-8);
}

TEST_CASE("weak-coupling approximation, one ancilla") {
  const ThermometerParams free{1.0, {0.04}, {0.0}};
  CHECK(qfi_approx_n1(free, 0.1) == doctest::Approx(qfi_thermal_tls(1.0, 0.1)).epsilon(1e-15));

  // Peaks of the approximation sit at gamma w1 and gamma wp.
  const ThermometerParams p{1.0, {0.04}, {0.01}};
  QfiCurve c;
  c.temps = temperature_grid(1e-3, 3.0, 400);
  for (double t : c.temps) {
    c.qfi.push_back(qfi_approx_n1(p, t));
    c.coherence.push_back(0.0);
    c.rel_error.push_back(relative_error_bound(t, c.qfi.back()));
  }
  const auto peaks = find_peaks(c, [&](double t) { return qfi_approx_n1(p, t); });
  REQUIRE(peaks.size() == 2);
  const double g = gamma_constant();
  CHECK(peaks[0].temperature == doctest::Approx(g * 0.04).epsilon(0.01));
  CHECK(peaks[1].temperature == doctest::Approx(g * 1.0).epsilon(0.01));

  // Its low-T term is theta^2/2 times the TLS QFI at w1. The exact curve
  // carries sin^2(theta) instead, so the two differ by a factor near 2 at
  // the low-T peak.
  const ProbeFamily fam = n1_family(p);
  const double exact_low = qfi_at(fam, peaks[0].temperature).qfi;
  const double theta = std::atan(0.02);
  const double ratio = peaks[0].qfi / exact_low;
  CHECK(ratio == doctest::Approx(0.5 * theta * theta / (std::sin(theta) * std::sin(theta))).epsilon(0.02));
}

TEST_CASE("weak-coupling approximation, global state") {
  const double wp = 1.0, w1 = 0.02;
  const GlobalApproxTerms zero = qfi_approx_global_terms(wp, w1, 0.0, 0.1);
  CHECK(zero.low == 0.0);
  CHECK(zero.high == doctest::Approx(qfi_thermal_tls(wp, 0.1)).epsilon(1e-14));
  const GlobalApproxTerms tiny = qfi_approx_global_terms(wp, w1, 1e-8, 0.1);
  CHECK(tiny.low < 1e-10);

  // sinh^6/sinh^4 = sinh^2, which only grows as T falls: no low-T peak.
  const GlobalApproxTerms t1 = qfi_approx_global_terms(wp, w1, 0.02, 0.01);
  const GlobalApproxTerms t2 = qfi_approx_global_terms(wp, w1, 0.02, 0.005);
  CHECK(t1.low == doctest::Approx(8 * 0.0004 * 0.0004 * std::pow(std::sinh(1.0), 2) / 1e-8).epsilon(1e-12));
  CHECK(t2.low > t1.low);
  CHECK(std::isfinite(qfi_approx_global(wp, w1, 0.02, 1e-3)));
}

TEST_CASE("qfi at a point") {
  const double w0 = 0.3;
  const ProbeFamily tls = [w0](double t) { return thermal_tls(w0, t); };
  const QfiPoint pt = qfi_at(tls, 0.08);
  CHECK(pt.coherence == 0.0);
  CHECK(pt.qfi == doctest::Approx(qfi_thermal_tls(w0, 0.08)).epsilon(1e-7));
  CHECK(pt.rel_error == doctest::Approx(1.0 / (0.08 * std::sqrt(qfi_thermal_tls(w0, 0.08)))).epsilon(1e-7));

  const double t1 = gamma_constant() * 0.04;
  double last = -1.0;
  for (double g : {0.01, 0.02, 0.03, 0.04}) {
    const double c = qfi_at(n1_family(ThermometerParams{1.0, {0.04}, {g}}), t1).coherence;
    CHECK(c > last);
    last = c;
  }

  const double tls_bound = qfi_at(ProbeFamily([](double t) { return thermal_tls(1.0, t); }), 0.02).rel_error;
  const double anc_bound = qfi_at(n1_family(ThermometerParams{1.0, {0.04}, {0.01}}), 0.02).rel_error;
  CHECK(std::isfinite(anc_bound));
  CHECK(tls_bound >= 10.0 * anc_bound);

  CHECK(relative_error_bound(0.1, 0.0) == std::numeric_limits<double>::max());
}

TEST_CASE("grids and curves") {
  const auto g = temperature_grid(1e-3, 10.0, 5);
  CHECK(g.front() == 1e-3);
  CHECK(g.back() == 10.0);
  CHECK(g[2] == doctest::Approx(0.1));
  const auto lin = temperature_grid(1.0, 2.0, 3, GridKind::kLinear);
  CHECK(lin[1] == doctest::Approx(1.5));
  CHECK_THROWS_AS(temperature_grid(1.0, 2.0, 2), ArgumentError);
  CHECK_THROWS_AS(temperature_grid(2.0, 1.0, 5), ArgumentError);
  CHECK_THROWS_AS(temperature_grid(0.0, 1.0, 5), DomainError);

  const ProbeFamily fam = n1_family(ThermometerParams{1.0, {0.04}, {0.02}});
  const auto temps = temperature_grid(1e-3, 3.0, 64);
  const QfiCurve serial = qfi_curve(fam, temps, 1);
  const QfiCurve threaded = qfi_curve(fam, temps, 4);
  CHECK(serial.qfi == threaded.qfi);
  CHECK(serial.coherence == threaded.coherence);
  for (std::size_t i = 0; i < temps.size(); ++i) {
    if (serial.qfi[i] > 0) CHECK(serial.rel_error[i] == doctest::Approx(1.0 / (temps[i] * std::sqrt(serial.qfi[i]))));
  }

  QfiCurve bad = serial;
  std::swap(bad.temps[0], bad.temps[1]);
  CHECK_THROWS_AS(bad.check(), ArgumentError);
  bad = serial;
  bad.qfi.pop_back();
  CHECK_THROWS_AS(bad.check(), ShapeError);

  const ProbeFamily failing = [](double t) -> ProbeState2x2 {
    if (t > 1.0) throw NumericalFailure("boom");
    return thermal_tls(1.0, t);
  };
  CHECK_THROWS_AS(qfi_curve(failing, temps, 3), NumericalFailure);
}

TEST_CASE("peak search") {
  const double w0 = 0.5;
  const ProbeFamily tls = [w0](double t) { return thermal_tls(w0, t); };
  const QfiCurve c = qfi_curve(tls, temperature_grid(1e-3, 10.0, 400), 1);
  const auto peaks = find_peaks(c, [&](double t) { return qfi_at(tls, t).qfi; });
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0].temperature == doctest::Approx(gamma_constant() * w0).epsilon(0.005));
  const auto coarse = find_peaks(c);
  REQUIRE(coarse.size() == 1);
  CHECK(coarse[0].temperature == doctest::Approx(gamma_constant() * w0).epsilon(0.005));

  const ThermometerParams p{1.0, {0.04}, {0.04}};
  const ProbeFamily fam = n1_family(p);
  const QfiCurve c2 = qfi_curve(fam, temperature_grid(1e-3, 3.0, 400), 1);
  const auto two = find_peaks(c2, [&](double t) { return qfi_at(fam, t).qfi; });
  REQUIRE(two.size() == 2);
  CHECK(two[0].temperature == doctest::Approx(gamma_constant() * 0.04).epsilon(0.05));
  CHECK(two[1].temperature == doctest::Approx(gamma_constant()).epsilon(0.1));

  // Hand-made curves: a 0.5% bump is not a peak, a 5% bump is.
  QfiCurve h;
  h.temps = {1, 2, 3, 4, 5, 6, 7};
  h.qfi = {1.0, 2.0, 1.0, 1.004, 1.0, 1.5, 1.0};
  h.coherence.assign(7, 0.0);
  for (std::size_t i = 0; i < 7; ++i) h.rel_error.push_back(relative_error_bound(h.temps[i], h.qfi[i]));
  CHECK(find_peaks(h).size() == 2);
  h.qfi[3] = 1.05;
  CHECK(find_peaks(h).size() == 3);
  h.qfi = {1, 2, 3, 4, 5, 6, 7};
  CHECK(find_peaks(h).empty());
  h.qfi = {1.0, 2.0, 1.0, 1.05, 1.0, 1.5, 1.0};
  h.qfi_noise = {0, 0, 0, 0.2, 0, 0, 0};
  CHECK(find_peaks(h).size() == 2);
}

TEST_CASE("difference noise on near-pure states") {
  // Two identical ancillas, global Gibbs state: below T ~ 1.5e-3 the probe
  // is pure to 1e-14 and differences of rho are pure rounding.
  const ProbeFamily fam = [](double t) { return global_gibbs_probe_identical(1.0, 0.03, 0.01, 2, t); };
  const QfiPoint cold = qfi_at(fam, 1.2e-3);
  CHECK(cold.noise > cold.qfi);
  const QfiPoint warm = qfi_at(fam, 8e-3);
  CHECK(warm.noise < 1e-6 * warm.qfi);

  QfiCurve c = qfi_curve(fam, temperature_grid(1e-3, 3.0, 400), 1);
  const auto gated = find_peaks(c);
  REQUIRE(gated.size() == 2);
  CHECK(gated[0].temperature > 5e-3);
  c.qfi_noise.clear();
  const auto raw = find_peaks(c);
  CHECK(raw.size() > 2);
  CHECK(raw[0].temperature < 2e-3);
}

TEST_CASE("power-law fit") {
  std::vector<double> n, f;
  for (int k = 2; k <= 10; ++k) {
    n.push_back(k);
    f.push_back(0.5 * k * k * k);
  }
  const ScalingFit fit = scaling_fit(n, f);
  CHECK(fit.exponent == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.prefactor == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0));

  std::vector<double> noisy = f;
  noisy[3] *= 1.3;
  CHECK(scaling_fit(n, noisy).r_squared < 1.0);

  const std::vector<double> three{1, 2, 3};
  CHECK_THROWS_AS(scaling_fit(three, three), ArgumentError);
  std::vector<double> neg = f;
  neg[0] = -1.0;
  CHECK_THROWS_AS(scaling_fit(n, neg), DomainError);
}

}  // TEST_SUITE
