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

#include "thermoqfi/metrology.hpp"

#include "thermoqfi/errors.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <limits>
#include <string>
#include <thread>

namespace thermoqfi {

namespace {

constexpr double kNegativeQfiTolerance = 1e-12;

double clamp_qfi(double f) {
  if (!std::isfinite(f)) throw NumericalFailure("QFI is not finite");
  if (f < -kNegativeQfiTolerance) throw NumericalFailure("negative QFI " + std::to_string(f));
  return std::max(f, 0.0);
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be positive");
}

// sech(x) without overflow in cosh.
double sech(double x) {
  const double e = std::exp(-std::abs(x));
  return 2.0 * e / (1.0 + e * e);
}

// log sinh(x) for x > 0.
double log_sinh(double x) { return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0); }

}  // namespace

double qfi_qubit(const DensityMatrix& rho, const Operator& drho) {
  if (rho.dim() != 2 || drho.rows() != 2 || drho.cols() != 2) {
    throw ShapeError("qfi_qubit needs 2x2 operands");
  }
  if (!is_hermitian(drho, kDefaultPolicy.hermiticity)) throw ArgumentError("drho is not Hermitian");
  const Operator& r = rho.matrix();
  const double det = (r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0)).real();
  if (det < kNearPureDeterminant) return qfi_sld(rho, drho);
  const Operator rd = r * drho;
  const double f = (drho * drho).trace().real() + (rd * rd).trace().real() / det;
  return clamp_qfi(f);
}

double qfi_sld(const DensityMatrix& rho, const Operator& drho, double cutoff) {
  if (drho.rows() != rho.dim() || drho.cols() != rho.dim()) throw ShapeError("drho dimension");
  if (!is_hermitian(drho, kDefaultPolicy.hermiticity)) throw ArgumentError("drho is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Operator> es(rho.matrix());
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Operator d = es.eigenvectors().adjoint() * drho * es.eigenvectors();
  double f = 0.0;
  for (Eigen::Index j = 0; j < lam.size(); ++j) {
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
      const double s = lam(j) + lam(k);
      if (s > cutoff) f += 2.0 * std::norm(d(j, k)) / s;
    }
  }
  return clamp_qfi(f);
}

double derivative_step(double temperature) {
  require_positive(temperature, "temperature");
  return std::min(std::max(1e-7, 1e-4 * temperature), 0.5 * temperature);
}

Operator d_rho_dT(const StateFamily& family, double temperature, bool richardson) {
  const double h = derivative_step(temperature);
  auto central = [&](double step) -> Operator {
    return (family(temperature + step).matrix() - family(temperature - step).matrix()) / (2.0 * step);
  };
  Operator d = central(h);
  if (richardson) d = (4.0 * central(0.5 * h) - d) / 3.0;
  if (!all_finite(d)) throw DerivativeFailure("non-finite entries at T = " + std::to_string(temperature));
  // States are normalized, so the derivative is traceless; drop the rounding residue.
  d -= (d.trace() / static_cast<double>(d.rows())) * Operator::Identity(d.rows(), d.cols());
  return hermitize(d);
}

double qfi_thermal_tls(double omega0, double temperature) {
  require_positive(temperature, "temperature");
  const double s = sech(omega0 / (2.0 * temperature));
  const double t2 = temperature * temperature;
  return omega0 * omega0 * s * s / (4.0 * t2 * t2);
}

double gamma_constant() {
  // Bracketed maximization, then a root polish of d log F / dT, which is
  // -4/T + tanh(1/2T)/T^2 for w0 = 1.
  const auto bits = std::numeric_limits<double>::digits;
  const auto coarse = boost::math::tools::brent_find_minima(
      [](double t) { return -qfi_thermal_tls(1.0, t); }, 1e-3, 10.0, bits);
  auto slope = [](double t) { return -4.0 * t + std::tanh(0.5 / t); };
  std::uintmax_t iters = 200;
  const auto root = boost::math::tools::toms748_solve(
      slope, 0.9 * coarse.first, 1.1 * coarse.first, boost::math::tools::eps_tolerance<double>(bits),
      iters);
  return 0.5 * (root.first + root.second);
}

double gamma_literal() {
  const auto bits = std::numeric_limits<double>::digits;
  std::uintmax_t iters = 200;
  const auto root = boost::math::tools::toms748_solve(
      [](double g) { return 2.0 * g - std::tanh(1.0 / g); }, 0.1, 1.0,
      boost::math::tools::eps_tolerance<double>(bits), iters);
  return 0.5 * (root.first + root.second);
}

double qfi_approx_n1(const ThermometerParams& p, double temperature) {
  p.validate();
  if (p.n_ancilla() != 1) throw UnsupportedModelError("qfi_approx_n1 needs one ancilla");
  const double theta = mixing_angles(p)[0];
  return qfi_thermal_tls(p.omega_p, temperature) +
         0.5 * theta * theta * qfi_thermal_tls(p.omega_k[0], temperature);
}

GlobalApproxTerms qfi_approx_global_terms(double omega_p, double omega_1, double g,
                                          double temperature) {
  require_positive(temperature, "temperature");
  require_positive(omega_p, "omega_p");
  require_positive(omega_1, "omega_1");
  const double t4 = std::pow(temperature, 4);
  const double x = omega_1 / (2.0 * temperature);
  GlobalApproxTerms out;
  if (g != 0.0) {
    // sinh^6 / sinh^4 taken in log form so large x does not overflow first.
    out.low = 8.0 * g * g * omega_1 * omega_1 * std::exp(6.0 * log_sinh(x) - 4.0 * log_sinh(x)) / t4;
  }
  const double y = omega_p / (2.0 * temperature);
  const double s = sech(y);
  out.high = omega_p * omega_p * s * s / (4.0 * t4 * (1.0 + 2.0 * g * g * (1.0 + std::cosh(y))));
  return out;
}

double qfi_approx_global(double omega_p, double omega_1, double g, double temperature) {
  return qfi_approx_global_terms(omega_p, omega_1, g, temperature).total();
}

double relative_error_bound(double temperature, double qfi) {
  if (!(qfi > 0.0)) return std::numeric_limits<double>::max();
  return 1.0 / (temperature * std::sqrt(qfi));
}

QfiPoint qfi_at(const StateFamily& family, double temperature) {
  require_positive(temperature, "temperature");
  const DensityMatrix rho = family(temperature);
  const Operator drho = d_rho_dT(family, temperature);
  QfiPoint out;
  out.qfi = rho.dim() == 2 ? qfi_qubit(rho, drho) : qfi_sld(rho, drho);
  out.coherence = rho.dim() == 2 ? std::abs(rho(0, 1)) : 0.0;
  out.rel_error = relative_error_bound(temperature, out.qfi);
  const double dd = 3.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, max_abs(rho.matrix())) /
                    derivative_step(temperature);
  const double lam = std::max(hermitian_eigenvalues(rho.matrix()).minCoeff(), 0.5 * kSldCutoff);
  out.noise = dd * dd / lam;
  return out;
}

StateFamily as_state_family(ProbeFamily family) {
  return [f = std::move(family)](double t) { return f(t).density(); };
}

QfiPoint qfi_at(const ProbeFamily& family, double temperature) {
  return qfi_at(as_state_family(family), temperature);
}

void QfiCurve::check() const {
  const std::size_t n = temps.size();
  if (qfi.size() != n || coherence.size() != n || rel_error.size() != n ||
      (!qfi_noise.empty() && qfi_noise.size() != n)) {
    throw ShapeError("curve columns differ in length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(temps[i] > 0.0)) throw ArgumentError("non-positive temperature in curve");
    if (i > 0 && !(temps[i] > temps[i - 1])) throw ArgumentError("temperatures not ascending");
    if (!(qfi[i] >= 0.0) || !(coherence[i] >= 0.0) || !(rel_error[i] > 0.0)) {
      throw ArgumentError("curve entry out of range");
    }
  }
}

std::vector<double> temperature_grid(double t_min, double t_max, int n_points, GridKind kind) {
  require_positive(t_min, "t_min");
  require_positive(t_max, "t_max");
  if (!(t_min < t_max)) throw ArgumentError("t_min must be below t_max");
  if (n_points < 3) throw ArgumentError("need at least 3 grid points");
  std::vector<double> out(static_cast<std::size_t>(n_points));
  const double a = kind == GridKind::kLog ? std::log(t_min) : t_min;
  const double b = kind == GridKind::kLog ? std::log(t_max) : t_max;
  for (int i = 0; i < n_points; ++i) {
    const double u = a + (b - a) * i / (n_points - 1);
    out[static_cast<std::size_t>(i)] = kind == GridKind::kLog ? std::exp(u) : u;
  }
  out.front() = t_min;
  out.back() = t_max;
  return out;
}

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("THERMOQFI_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

QfiCurve qfi_curve(const StateFamily& family, std::span<const double> temps, int threads) {
  QfiCurve curve;
  curve.temps.assign(temps.begin(), temps.end());
  const std::size_t n = temps.size();
  curve.qfi.resize(n);
  curve.coherence.resize(n);
  curve.rel_error.resize(n);
  curve.qfi_noise.resize(n);

  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(
      static_cast<std::size_t>(resolve_thread_count(threads)), std::max<std::size_t>(n, 1)));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::size_t w) {
    try {
      for (std::size_t i = w; i < n; i += workers) {
        const QfiPoint pt = qfi_at(family, temps[i]);
        curve.qfi[i] = pt.qfi;
        curve.coherence[i] = pt.coherence;
        curve.rel_error[i] = pt.rel_error;
        curve.qfi_noise[i] = pt.noise;
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  curve.check();
  return curve;
}

QfiCurve qfi_curve(const ProbeFamily& family, std::span<const double> temps, int threads) {
  return qfi_curve(as_state_family(family), temps, threads);
}

std::vector<Peak> find_peaks(const QfiCurve& curve, const std::function<double(double)>& qfi_fn,
                             const PeakOptions& options) {
  curve.check();
  const std::vector<double>& f = curve.qfi;
  const std::size_t n = f.size();
  if (n < 3) return {};
  const double top = *std::max_element(f.begin(), f.end());
  if (!(top > 0.0)) return {};

  // Candidate interior maxima; a flat top counts once, at its first sample.
  std::vector<std::size_t> cand;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(f[i] > f[i - 1])) continue;
    std::size_t j = i;
    while (j + 1 < n && f[j + 1] == f[i]) ++j;
    const bool resolved = curve.qfi_noise.empty() || f[i] > options.noise_factor * curve.qfi_noise[i];
    if (j + 1 < n && f[j + 1] < f[i] && f[i] > options.floor * top && resolved) cand.push_back(i);
    i = j;
  }

  // Drop the weakest maximum that lacks prominence until all remaining pass.
  for (;;) {
    std::ptrdiff_t worst = -1;
    double worst_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < cand.size(); ++k) {
      const std::size_t lo = k == 0 ? 0 : cand[k - 1];
      const std::size_t hi = k + 1 == cand.size() ? n - 1 : cand[k + 1];
      const double left = *std::min_element(f.begin() + static_cast<std::ptrdiff_t>(lo),
                                            f.begin() + static_cast<std::ptrdiff_t>(cand[k]));
      const double right = *std::min_element(f.begin() + static_cast<std::ptrdiff_t>(cand[k]) + 1,
                                             f.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
      const double base = std::max(left, right);
      const double ratio = f[cand[k]] / std::max(base, std::numeric_limits<double>::min());
      if (ratio < 1.0 + options.prominence && ratio < worst_ratio) {
        worst_ratio = ratio;
        worst = static_cast<std::ptrdiff_t>(k);
      }
    }
    if (worst < 0) break;
    cand.erase(cand.begin() + worst);
  }

  std::vector<Peak> peaks;
  const std::vector<double>& t = curve.temps;
  for (std::size_t i : cand) {
    const double u0 = std::log(t[i - 1]);
    const double u1 = std::log(t[i]);
    const double u2 = std::log(t[i + 1]);
    Peak pk{t[i], f[i]};
    if (qfi_fn) {
      const int bits = std::max(
          8, static_cast<int>(std::ceil(-std::log2(options.refine_tolerance / std::max(1.0, std::abs(u1))))));
      const auto best = boost::math::tools::brent_find_minima(
          [&](double u) { return -qfi_fn(std::exp(u)); }, u0, u2, std::min(bits, 52));
      if (-best.second >= pk.qfi) pk = {std::exp(best.first), -best.second};
    } else {
      const double num = (u1 - u0) * (u1 - u0) * (f[i] - f[i + 1]) - (u1 - u2) * (u1 - u2) * (f[i] - f[i - 1]);
      const double den = (u1 - u0) * (f[i] - f[i + 1]) - (u1 - u2) * (f[i] - f[i - 1]);
      if (den != 0.0) {
        const double um = u1 - 0.5 * num / den;
        if (um > u0 && um < u2) {
          const double l0 = (um - u1) * (um - u2) / ((u0 - u1) * (u0 - u2));
          const double l1 = (um - u0) * (um - u2) / ((u1 - u0) * (u1 - u2));
          const double l2 = (um - u0) * (um - u1) / ((u2 - u0) * (u2 - u1));
          pk = {std::exp(um), l0 * f[i - 1] + l1 * f[i] + l2 * f[i + 1]};
        }
      }
    }
    peaks.push_back(pk);
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& a, const Peak& b) { return a.temperature < b.temperature; });
  return peaks;
}

ScalingFit scaling_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw ShapeError("scaling fit needs paired data");
  if (xs.size() < 4) throw ArgumentError("scaling fit needs at least 4 points");
  const auto n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw DomainError("scaling fit needs positive data");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
    sx += lx.back();
    sy += ly.back();
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("scaling fit needs distinct abscissae");
  ScalingFit fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  double ss_res = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (my + fit.exponent * (lx[i] - mx));
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

}  // namespace thermoqfi
