// oracle.hpp — finite-k classical statistical mechanics, used as ground truth.
//
// For a finite spectrum the classical partition function at Boltzmann scale k
// is Z = sum_n exp(-F_n/(kT)) with F_n = E_n - T S_n (degeneracies enter as
// g_n = exp(S_n/k)).  Everything here is evaluated in log space with the
// maximum exponent shifted out, so exponents of magnitude ~1e6 are fine and
// probabilities underflow gracefully instead of overflowing.
//
// tropical_limit_estimate drives a decreasing k schedule through a chosen
// classical quantity and reports the final value, an empirical convergence
// order, and a Richardson-style extrapolation.  Below k ~ 1e-4 subdominant
// terms underflow entirely in 64-bit floating point and the classical value
// is already exact to machine precision; that is why the default schedule
// stops there.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "tropic/errors.hpp"
#include "tropic/spectrum.hpp"

namespace tropic {

namespace detail {

inline void check_oracle_args(double k, double temperature) {
  if (!(k > 0)) throw BadArgumentError("k must be positive");
  if (temperature == 0.0)
    throw ZeroTemperatureError("classical quantities are undefined at T = 0");
}

// Shifted exponents x_n = -F_n/(kT) - max_m x_m (all <= 0).
inline std::vector<double> shifted_exponents(const Spectrum<double>& s, double k,
                                             double temperature, double* shift) {
  std::vector<double> xs(s.size());
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < s.size(); ++n) {
    xs[n] = -s.free_energy(n, temperature) / (k * temperature);
    m = std::max(m, xs[n]);
  }
  for (double& x : xs) x -= m;
  *shift = m;
  return xs;
}

}  // namespace detail

// ln Z by max-shifted summation: ln Z = M + ln sum_n exp(-F_n/(kT) - M).
inline double log_partition(const Spectrum<double>& s, double k,
                            double temperature) {
  detail::check_oracle_args(k, temperature);
  double shift = 0.0;
  std::vector<double> xs = detail::shifted_exponents(s, k, temperature, &shift);
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x);
  return shift + std::log(sum);
}

// F(k, T) = -kT ln Z.
inline double classical_free_energy(const Spectrum<double>& s, double k,
                                    double temperature) {
  return -k * temperature * log_partition(s, k, temperature);
}

// Level probabilities W_n = exp(-F_n/(kT) - ln Z); they sum to one.
inline std::vector<double> classical_level_prob(const Spectrum<double>& s,
                                                double k, double temperature) {
  detail::check_oracle_args(k, temperature);
  double shift = 0.0;
  std::vector<double> xs = detail::shifted_exponents(s, k, temperature, &shift);
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x);
  std::vector<double> w(xs.size());
  for (std::size_t n = 0; n < xs.size(); ++n) w[n] = std::exp(xs[n]) / sum;
  return w;
}

// Classical entropy through the thermodynamic identity S = (<E> - F)/T.
inline double classical_entropy(const Spectrum<double>& s, double k,
                                double temperature) {
  std::vector<double> w = classical_level_prob(s, k, temperature);
  double e_avg = 0.0;
  for (std::size_t n = 0; n < s.size(); ++n) e_avg += w[n] * s.level(n).energy;
  return (e_avg - classical_free_energy(s, k, temperature)) / temperature;
}

// The same entropy as the Gibbs average -k <ln w> over states,
//   S = sum_n W_n S_n - k sum_n W_n ln W_n,
// kept as an independent route for cross-checking the closed form above.
inline double classical_entropy_gibbs(const Spectrum<double>& s, double k,
                                      double temperature) {
  detail::check_oracle_args(k, temperature);
  double shift = 0.0;
  std::vector<double> xs = detail::shifted_exponents(s, k, temperature, &shift);
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x);
  const double log_sum = std::log(sum);
  double entropy = 0.0;
  for (std::size_t n = 0; n < xs.size(); ++n) {
    double log_wn = xs[n] - log_sum;  // ln W_n <= 0
    double wn = std::exp(log_wn);
    entropy += wn * s.level(n).entropy - k * wn * log_wn;  // wn ln wn -> 0
  }
  return entropy;
}

struct OracleReport {
  double k = 0;
  double temperature = 0;
  double log_Z = 0;
  double free_energy = 0;
  std::vector<double> level_prob;
  double entropy = 0;
};

inline OracleReport oracle_report(const Spectrum<double>& s, double k,
                                  double temperature) {
  OracleReport r;
  r.k = k;
  r.temperature = temperature;
  r.log_Z = log_partition(s, k, temperature);
  r.free_energy = -k * temperature * r.log_Z;
  r.level_prob = classical_level_prob(s, k, temperature);
  r.entropy = classical_entropy(s, k, temperature);
  return r;
}

enum class OracleQuantity { free_energy, entropy, level_log_prob, state_log_prob };

struct TropicalLimitEstimate {
  double estimate = 0;      // value at the smallest k
  double extrapolated = 0;  // Richardson extrapolation with the fitted order
  double rate = 0;          // empirical order p of the k -> 0 convergence
  bool converged = true;    // differences shrink monotonically at the tail
  std::vector<double> values;
};

// Default geometric schedule 1e-1, 5e-2, ..., down to ~2e-4 (ratio 1/2).
inline std::vector<double> default_k_schedule() {
  std::vector<double> ks;
  for (double k = 1e-1; k >= 1e-4; k *= 0.5) ks.push_back(k);
  return ks;
}

// Evaluates the requested classical quantity along a strictly decreasing
// k schedule (for log-probabilities: k times the log of the probability).
inline TropicalLimitEstimate tropical_limit_estimate(
    const Spectrum<double>& s, double temperature, OracleQuantity quantity,
    const std::vector<double>& k_schedule, std::size_t level_index = 0) {
  if (k_schedule.size() < 3)
    throw BadArgumentError("k schedule needs at least 3 points");
  for (std::size_t i = 0; i < k_schedule.size(); ++i) {
    if (!(k_schedule[i] > 0)) throw BadArgumentError("k schedule must be positive");
    if (i > 0 && !(k_schedule[i] < k_schedule[i - 1]))
      throw BadArgumentError("k schedule must be strictly decreasing");
  }
  if ((quantity == OracleQuantity::level_log_prob ||
       quantity == OracleQuantity::state_log_prob) &&
      level_index >= s.size())
    throw BadIndexError("level index " + std::to_string(level_index) +
                        " out of range");

  TropicalLimitEstimate result;
  result.values.reserve(k_schedule.size());
  for (double k : k_schedule) {
    double v = 0;
    switch (quantity) {
      case OracleQuantity::free_energy:
        v = classical_free_energy(s, k, temperature);
        break;
      case OracleQuantity::entropy:
        v = classical_entropy(s, k, temperature);
        break;
      case OracleQuantity::level_log_prob:
      case OracleQuantity::state_log_prob: {
        double log_w = -s.free_energy(level_index, temperature) / (k * temperature) -
                       log_partition(s, k, temperature);
        v = k * log_w;
        if (quantity == OracleQuantity::state_log_prob)
          v -= s.level(level_index).entropy;
        break;
      }
    }
    result.values.push_back(v);
  }

  const std::size_t m = result.values.size();
  result.estimate = result.values.back();
  result.extrapolated = result.estimate;
  const double d_prev = result.values[m - 2] - result.values[m - 3];
  const double d_last = result.values[m - 1] - result.values[m - 2];
  double scale = std::max(1.0, std::fabs(result.estimate));
  const double floor = 1e-14 * scale;
  if (std::fabs(d_last) <= floor && std::fabs(d_prev) <= floor) {
    // Subdominant terms underflowed; the limit is already exact.
    result.rate = std::numeric_limits<double>::infinity();
    result.converged = true;
    return result;
  }
  result.converged = std::fabs(d_last) <= std::fabs(d_prev) + floor;
  if (std::fabs(d_last) > floor && std::fabs(d_prev) > floor) {
    double k_ratio = k_schedule[m - 3] / k_schedule[m - 2];
    result.rate = std::log(std::fabs(d_prev) / std::fabs(d_last)) / std::log(k_ratio);
    double growth = std::pow(k_schedule[m - 2] / k_schedule[m - 1], result.rate);
    if (std::isfinite(growth) && growth > 1.0)
      result.extrapolated = result.values[m - 1] + d_last / (growth - 1.0);
  } else {
    result.rate = std::numeric_limits<double>::infinity();
  }
  return result;
}

}  // namespace tropic
