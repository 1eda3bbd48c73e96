// observables.hpp — equilibrium observables in the degenerate-level limit.
//
// At a generic temperature exactly one level line achieves the envelope; the
// system then sits in that level: S_tr = S_n0, E_tr = E_n0, and the level
// log-probabilities W_n = (F_tr - F_n)/T are zero for the winner and negative
// elsewhere.  At a singular temperature m >= 2 lines tie; entropy and energy
// take the arithmetic mean over the tying set (the classical probabilities
// split 1/m each in the limit) and the envelope kinks.
//
// Two log-probability scales appear:
//   level_log_prob  W_n = (F_tr - F_n)/T        (probability of energy E_n)
//   state_log_prob  w_n = -S_n + (F_tr - F_n)/T (probability of one state)
// normalized tropically: max_n W_n = 0 and max_n (S_n + w_n) = 0.  For levels
// with negative entropy w_n can exceed 0; the report flags that instead of
// rejecting, since such spectra are legitimate inputs.

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "tropic/envelope.hpp"
#include "tropic/errors.hpp"
#include "tropic/numbers.hpp"
#include "tropic/spectrum.hpp"

namespace tropic {

template <NumberKind R>
struct LevelRecord {
  std::size_t index;
  R free_energy;               // F_n(T)
  R level_log_prob;            // W_n, always <= 0
  R state_log_prob;            // w_n = W_n - S_n
  bool state_log_prob_positive;  // w_n > 0 (possible when S_n < 0)
};

template <NumberKind R>
struct ObservablesReport {
  R temperature;
  R free_energy;  // F_tr
  R entropy;      // S_tr
  R energy;       // E_tr
  bool singular;  // two or more levels tie at this temperature
  std::vector<std::size_t> minimizing_set;
  std::vector<LevelRecord<R>> levels;
};

namespace detail {

template <NumberKind R>
void check_domain(const PiecewiseLinear<R>& env, const R& temperature) {
  if (temperature == R(0) || !env.contains(temperature))
    throw OutOfDomainError("temperature " + to_string(temperature) +
                           " is outside the " + domain_name(env.domain()) +
                           " half-line");
}

}  // namespace detail

// W_n = (F_tr(T) - F_n(T))/T.  Zero exactly when n ties for the envelope.
template <NumberKind R>
R level_log_prob(const Spectrum<R>& s, const PiecewiseLinear<R>& env,
                 const R& temperature, std::size_t n) {
  detail::check_domain(env, temperature);
  return (env.eval(temperature) - s.free_energy(n, temperature)) / temperature;
}

// w_n = -S_n + (F_tr(T) - F_n(T))/T.  For the unique envelope level this is
// -S_n0: the level entropy read off as a log-probability.
template <NumberKind R>
R state_log_prob(const Spectrum<R>& s, const PiecewiseLinear<R>& env,
                 const R& temperature, std::size_t n) {
  return level_log_prob(s, env, temperature, n) - s.level(n).entropy;
}

template <NumberKind R>
ObservablesReport<R> observables_at(const Spectrum<R>& s,
                                    const PiecewiseLinear<R>& env,
                                    const R& temperature) {
  detail::check_domain(env, temperature);

  ObservablesReport<R> report;
  report.temperature = temperature;
  report.free_energy = env.eval(temperature);
  report.minimizing_set = minimizing_set(s, temperature);
  report.singular = report.minimizing_set.size() >= 2;

  // Generic point: the winning level's S and E.  Singular point: arithmetic
  // means over the tying set (each member carries classical weight 1/m there).
  R entropy_sum(0), energy_sum(0);
  for (std::size_t n : report.minimizing_set) {
    entropy_sum += s.level(n).entropy;
    energy_sum += s.level(n).energy;
  }
  const R count(static_cast<int>(report.minimizing_set.size()));
  report.entropy = entropy_sum / count;
  report.energy = energy_sum / count;

  report.levels.reserve(s.size());
  for (std::size_t n = 0; n < s.size(); ++n) {
    LevelRecord<R> rec;
    rec.index = n;
    rec.free_energy = s.free_energy(n, temperature);
    rec.level_log_prob = (report.free_energy - rec.free_energy) / temperature;
    rec.state_log_prob = rec.level_log_prob - s.level(n).entropy;
    rec.state_log_prob_positive = rec.state_log_prob > R(0);
    report.levels.push_back(std::move(rec));
  }
  return report;
}

// Log-probability gap W_i - W_k = (F_k - F_i)/T = (S_k - S_i)(T*_ik/T - 1).
// Vanishes linearly as T approaches the transition temperature of i and k.
template <NumberKind R>
R log_prob_gap(const Spectrum<R>& s, const R& temperature, std::size_t i,
               std::size_t k) {
  if (temperature == R(0))
    throw ZeroTemperatureError("log-probability gap is undefined at T = 0");
  const Level<R>& li = s.level(i);
  const Level<R>& lk = s.level(k);
  if (number_traits<R>::tie_equal(li.entropy, lk.entropy))
    throw ParallelLevelsError(
        "levels " + std::to_string(i) + " and " + std::to_string(k) +
        " have equal entropy; the gap has no finite transition temperature");
  R gap = (level_free_energy(lk, temperature) - level_free_energy(li, temperature)) /
          temperature;
  if constexpr (number_traits<R>::exact) {
    // Same quantity through the transition-temperature identity.
    R t_star = (li.energy - lk.energy) / (li.entropy - lk.entropy);
    R via_identity = (lk.entropy - li.entropy) * (t_star / temperature - R(1));
    if (via_identity != gap)
      throw Error("observables.internal",
                  "gap identity violated (internal inconsistency)");
  }
  return gap;
}

// First subleading term of the level log-probability at a temperature where
// the envelope is achieved by exactly m levels: -k ln m (zero for m = 1).
inline double subleading_level_logprob(int m, double k) {
  if (m < 1) throw BadArgumentError("multiplicity must be >= 1");
  if (!(k > 0)) throw BadArgumentError("k must be positive");
  return -k * std::log(static_cast<double>(m));
}

// Entropy in the zero-temperature limit from either side: the lowest-energy
// level's entropy as T -> 0+ (the residual entropy), the highest-energy
// level's entropy as T -> 0-.
template <NumberKind R>
R residual_entropy(const Spectrum<R>& s, Domain side) {
  return side == Domain::positive ? s.level(0).entropy
                                  : s.level(s.size() - 1).entropy;
}

}  // namespace tropic
