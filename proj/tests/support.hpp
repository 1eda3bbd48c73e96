// support.hpp — shared helpers for the test suites: deterministic random
// spectra, reference computations kept independent of the library's envelope
// path, and a stable two-term log-sum-exp.

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "tropic/tropic.hpp"

namespace support {

using tropic::Level;
using tropic::Rational;
using tropic::Spectrum;

inline std::mt19937& rng() {
  static std::mt19937 gen(0x5eed5);
  return gen;
}

inline Rational random_rational(std::mt19937& gen, int num_range, int den_max) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_max);
  return Rational(num(gen), den(gen));
}

// Strictly positive rational in (0, hi].
inline Rational random_positive_rational(std::mt19937& gen, int num_range,
                                         int den_max) {
  std::uniform_int_distribution<int> num(1, num_range);
  std::uniform_int_distribution<int> den(1, den_max);
  return Rational(num(gen), den(gen));
}

// Random spectrum with n levels: energies distinct, entropies unrestricted
// (parallel lines can and do occur).
inline Spectrum<Rational> random_spectrum(std::mt19937& gen, std::size_t n) {
  std::set<Rational> energies;
  while (energies.size() < n) energies.insert(random_rational(gen, 24, 8));
  std::vector<Level<Rational>> levels;
  for (const Rational& e : energies)
    levels.push_back({e, random_rational(gen, 24, 8)});
  return Spectrum<Rational>::make(std::move(levels));
}

// Random spectrum with pairwise distinct entropies (every pairwise transition
// temperature is finite).
inline Spectrum<Rational> random_spectrum_distinct_entropies(std::mt19937& gen,
                                                             std::size_t n) {
  std::set<Rational> energies, entropies;
  while (energies.size() < n) energies.insert(random_rational(gen, 24, 8));
  while (entropies.size() < n) entropies.insert(random_rational(gen, 24, 8));
  std::vector<Rational> s_list(entropies.begin(), entropies.end());
  std::shuffle(s_list.begin(), s_list.end(), gen);
  std::vector<Level<Rational>> levels;
  std::size_t i = 0;
  for (const Rational& e : energies) levels.push_back({e, s_list[i++]});
  return Spectrum<Rational>::make(std::move(levels));
}

// Reference value computed straight from the definition, independent of the
// envelope construction: min over levels of E - T*S for T > 0, max for T < 0.
template <tropic::NumberKind R>
R brute_force_free_energy(const Spectrum<R>& s, const R& temperature) {
  R best = s.level(0).energy - temperature * s.level(0).entropy;
  for (std::size_t n = 1; n < s.size(); ++n) {
    R f = s.level(n).energy - temperature * s.level(n).entropy;
    if (temperature > R(0) ? f < best : f > best) best = f;
  }
  return best;
}

inline double log_sum_exp2(double a, double b) {
  double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

}  // namespace support
