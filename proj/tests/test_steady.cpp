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
#include "thermoqfi/dynamics.hpp"
#include "thermoqfi/errors.hpp"
#include "thermoqfi/steady.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace thermoqfi;

namespace {

// Tr_ancillas[U rho~ U^dagger] from independently assembled pieces.
Operator transformed_probe(const ThermometerParams& p, double t) {
  const DressedFrame f = dressed_frame(p);
  Operator rho = Operator::Identity(1, 1);
  for (double w : p.omega_k) rho = oracle::kron(rho, oracle::thermal_qubit(w, t));
  rho = oracle::kron(rho, oracle::thermal_qubit(f.omega, t));
  const Operator u = oracle::dressing(f.theta);
  return oracle::trace_to_last(u * rho * u.adjoint());
}

Operator dense_global_probe(const ThermometerParams& p, double t) {
  return oracle::trace_to_last(oracle::gibbs(oracle::hamiltonian(p.omega_p, p.omega_k, p.g_k), t));
}

double distance(const ProbeState2x2& s, const Operator& m) { return oracle::max_abs(s.matrix() - m); }

}  // namespace

TEST_SUITE("steady") {

TEST_CASE("probe state container") {
  const ProbeState2x2 s{0.3, 0.4};
  CHECK(s.matrix()(0, 0).real() == doctest::Approx(0.35));
  CHECK(s.matrix()(1, 1).real() == doctest::Approx(0.65));
  CHECK(s.matrix()(0, 1).real() == doctest::Approx(0.2));
  CHECK(s.coherence() == doctest::Approx(0.2));
  CHECK(s.bloch_norm() == doctest::Approx(0.5));
  const ProbeState2x2 back = ProbeState2x2::from_density(s.density());
  CHECK(back.chi == doctest::Approx(0.3));
  CHECK(back.c == doctest::Approx(0.4));

  Operator complex_coh = 0.5 * Operator::Identity(2, 2);
  complex_coh(0, 1) = Complex(0.0, 0.1);
  complex_coh(1, 0) = Complex(0.0, -0.1);
  CHECK_THROWS_AS(ProbeState2x2::from_density(DensityMatrix(complex_coh)), ArgumentError);
}

TEST_CASE("dressed product state") {
  const ThermometerParams p{1.0, {0.04}, {0.04}};
  const DressedFrame f = dressed_frame(p);
  const DensityMatrix hot = dressed_product_state(p, f, 1e10);
  CHECK(oracle::max_abs(hot.matrix() - Operator::Identity(4, 4) / 4.0) < 1e-8);

  const double t = 0.1;
  const double om = std::sqrt(1.0064);
  const std::vector<int> dims{2, 2};
  const Operator probe = partial_trace(dressed_product_state(p, f, t), dims, {1}).matrix();
  CHECK(probe(0, 0).real() == doctest::Approx(0.5 * (1.0 - std::tanh(om / 0.2))).epsilon(1e-13));
  CHECK(probe(1, 1).real() == doctest::Approx(0.5 * (1.0 + std::tanh(om / 0.2))).epsilon(1e-13));

  CHECK(trace_distance(dressed_product_state(p, f, t), numerical_dressed_steady_state(p, t)) < 1e-7);
  CHECK_THROWS_AS(dressed_product_state(p, f, 0.0), DomainError);
}

TEST_CASE("one-ancilla probe state") {
  const ThermometerParams free{1.0, {0.04}, {0.0}};
  const ProbeState2x2 s0 = probe_state_n1(free, 0.2);
  CHECK(s0.c == 0.0);
  CHECK(s0.chi == doctest::Approx(std::tanh(1.0 / 0.4)));

  const ThermometerParams p{1.0, {0.04}, {0.04}};
  const double th = std::atan(0.08);
  const ProbeState2x2 cold = probe_state_n1(p, 1e-6);
  CHECK(cold.chi == doctest::Approx(std::cos(th)).epsilon(1e-14));
  CHECK(cold.c == doctest::Approx(std::sin(th)).epsilon(1e-14));

  const ProbeState2x2 s = probe_state_n1(p, 0.02);
  CHECK(distance(s, transformed_probe(p, 0.02)) < 1e-10);
  CHECK(oracle::max_abs(probe_state_by_transformation(p, 0.02).matrix() - transformed_probe(p, 0.02)) < 1e-12);

  CHECK_THROWS_AS(probe_state_n1(ThermometerParams{1.0, {0.1, 0.2}, {0.01, 0.01}}, 0.1), UnsupportedModelError);
}

TEST_CASE("two-ancilla probe state") {
  const ThermometerParams free{1.0, {0.2, 0.3}, {0.0, 0.0}};
  const ProbeState2x2 s0 = probe_state_n2(free, 0.3);
  CHECK(s0.c == 0.0);
  // The two-ancilla frequency sqrt(wp^2 + 4 s^2) + sqrt(wp^2 - 4 s^2) is 2 wp at s = 0.
  CHECK(two_ancilla_probe_frequency(free) == 2.0);
  CHECK(s0.chi == doctest::Approx(std::tanh(2.0 / 0.6)).epsilon(1e-14));

  const ThermometerParams sym{1.0, {0.2, 0.2}, {0.05, 0.05}};
  const auto th = mixing_angles(sym);
  CHECK(th[0] == th[1]);
  CHECK(distance(probe_state_n2(sym, 0.1), transformed_probe(sym, 0.1)) < 1e-10);

  const ThermometerParams fig4{0.26, {0.09, 0.17}, {0.003, 0.05}};
  CHECK(distance(probe_state_n2(fig4, 0.05), transformed_probe(fig4, 0.05)) < 1e-10);
  // Very low temperature: the scaled form stays finite.
  const ProbeState2x2 cold = probe_state_n2(fig4, 1e-4);
  CHECK(std::isfinite(cold.c));
  CHECK(distance(cold, transformed_probe(fig4, 1e-4)) < 1e-10);
}

TEST_CASE("global gibbs probe") {
  const ThermometerParams free{1.0, {0.02}, {0.0}};
  const ProbeState2x2 g0 = global_gibbs_probe(free, 0.1);
  CHECK(g0.c == doctest::Approx(0.0));
  CHECK(g0.chi == doctest::Approx(std::tanh(1.0 / 0.2)));

  const ThermometerParams p{1.0, {0.02}, {0.02}};
  CHECK(distance(global_gibbs_probe(p, 0.01), dense_global_probe(p, 0.01)) < 1e-10);
  CHECK(oracle::max_abs(global_gibbs_probe_dense(p, 0.01).matrix() - dense_global_probe(p, 0.01)) < 1e-10);

  const ThermometerParams mixed{0.8, {0.05, 0.3, 0.11}, {0.02, -0.04, 0.07}};
  CHECK(!has_identical_ancillas(mixed));
  CHECK(distance(global_gibbs_probe(mixed, 0.07), dense_global_probe(mixed, 0.07)) < 1e-10);

  const ThermometerParams four{1.0, {0.03, 0.03, 0.03, 0.03}, {0.01, 0.01, 0.01, 0.01}};
  CHECK(has_identical_ancillas(four));
  for (double t : {1e-3, 0.01, 0.3, 4.0}) {
    CHECK(distance(global_gibbs_probe(four, t), dense_global_probe(four, t)) < 1e-10);
  }
}

TEST_CASE("identical-ancilla fast path at ten ancillas") {
  const int n = 10;
  const ThermometerParams p{1.0, std::vector<double>(n, 0.03), std::vector<double>(n, 0.01)};
  for (double t : {0.004, 0.05}) {
    const ProbeState2x2 fast = global_gibbs_probe_identical(1.0, 0.03, 0.01, n, t);
    CHECK(oracle::max_abs(fast.matrix() - global_gibbs_probe_dense(p, t).matrix()) < 1e-10);
  }
}

TEST_CASE("one-ancilla global closed form") {
  const ThermometerParams p{1.0, {0.02}, {0.02}};
  for (double t : {0.005, 0.02, 0.3}) {
    const ProbeState2x2 dense = ProbeState2x2::from_density(DensityMatrix(dense_global_probe(p, t)));
    const ProbeState2x2 norm = global_gibbs_probe_n1_closed_form(p, t, GlobalPopulationForm::kNormalized);
    CHECK(std::abs(norm.chi - dense.chi) < 1e-12);
    CHECK(std::abs(norm.c - dense.c) < 1e-12);
  }
  // The literal population prefactor leaves the physical range for W' > 1.
  const ThermometerParams strong{1.0, {0.02}, {0.3}};
  const ProbeState2x2 lit = global_gibbs_probe_n1_closed_form(strong, 0.01, GlobalPopulationForm::kLiteral);
  CHECK(lit.chi > 1.0);
}

TEST_CASE("dipole-dipole probe") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.05, 1.5);
  for (int i = 0; i < 10; ++i) {
    const ProbeState2x2 s = dd_probe_state(u(rng), u(rng), 0.1 * u(rng), 0.1 * u(rng));
    CHECK(s.chi == 0.0);
    CHECK(s.c == 0.0);
  }
  CHECK(dd_probe_state(1.0, 0.4, 0.05, 1e9).chi == 0.0);

  // Mapping the dressed product state back to the local basis gives the
  // probe marginal of the dipole-dipole Gibbs state: no coherence, but the
  // populations are those of the Gibbs state.
  const double wp = 1.0, w1 = 0.4, g = 0.05, t = 0.3;
  const DensityMatrix back = dd_probe_state_by_transformation(wp, w1, g, t);
  const Operator gibbs = oracle::gibbs(build_dd_hamiltonian(wp, w1, g), t);
  const Operator ref = oracle::trace_to_last(gibbs);
  CHECK(oracle::max_abs(back.matrix() - ref) < 1e-12);
  CHECK(std::abs(back(0, 1)) < 1e-15);
}

TEST_CASE("DM probe") {
  const DmModelParams dm = make_dm_params(0.5, 1.0, 0.1);
  const ProbeState2x2 s = dm_probe_state(dm, 0.3);
  CHECK(s.c == 0.0);
  const Operator m = s.matrix();
  CHECK(std::abs((m(0, 0) + m(1, 1)).real() - 1.0) < 1e-12);

  // B10 populations coincide with the DM Gibbs marginal.
  for (double t : {0.05, 0.3, 2.0}) {
    const Operator ref = oracle::trace_to_last(oracle::gibbs(build_dm_hamiltonian(1.0, 0.5, 0.1), t));
    CHECK(oracle::max_abs(dm_probe_state(dm, t).matrix() - ref) < 1e-12);
  }

  // g = 0 with resonant qubits: thermal TLS at wp.
  const ProbeState2x2 tls = dm_probe_state(make_dm_params(1.0, 1.0, 0.0), 0.4);
  CHECK(tls.chi == doctest::Approx(std::tanh(1.0 / 0.8)).epsilon(1e-13));

  // Deep cold: exponents near 1e3 must not overflow.
  const ProbeState2x2 cold = dm_probe_state(dm, 1e-3);
  CHECK(std::isfinite(cold.chi));
  CHECK(std::abs(cold.chi) <= 1.0);
}

}  // TEST_SUITE
