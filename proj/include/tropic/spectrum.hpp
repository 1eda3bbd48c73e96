// spectrum.hpp — validated energy-level spectra.
//
// A Level pairs an energy E with a level entropy S (the rescaled logarithm of
// the level degeneracy, finite by construction).  A Spectrum is a nonempty
// sequence of levels with strictly increasing energies; levels are sorted on
// construction, so index 0 is always the lowest-energy level.  Energies are
// not required to be positive: spectra unbounded below are meaningful inputs
// and validation enforces only strict ordering.
//
// The level free energy F_n(T) = E_n - T*S_n is the affine-in-temperature
// building block for everything downstream.

#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "tropic/errors.hpp"
#include "tropic/numbers.hpp"

namespace tropic {

template <NumberKind R>
struct Level {
  R energy;
  R entropy;

  friend bool operator==(const Level& a, const Level& b) {
    return a.energy == b.energy && a.entropy == b.entropy;
  }
};

// F_n(T) = E_n - T*S_n.  T = 0 is allowed (F_n(0) = E_n) and the sign of T is
// unrestricted.
template <NumberKind R>
R level_free_energy(const Level<R>& level, const R& temperature) {
  return level.energy - temperature * level.entropy;
}

template <NumberKind R>
class Spectrum {
 public:
  using value_type = Level<R>;

  // Validates and canonicalizes (sorts by energy).  Throws EmptySpectrumError,
  // NonFiniteValueError, or DuplicateEnergyError.
  static Spectrum make(std::vector<Level<R>> levels) {
    if (levels.empty()) throw EmptySpectrumError();
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (!number_traits<R>::finite(levels[i].energy) ||
          !number_traits<R>::finite(levels[i].entropy))
        throw NonFiniteValueError("level " + std::to_string(i) +
                                  " has a non-finite entry");
    }
    std::stable_sort(levels.begin(), levels.end(),
                     [](const Level<R>& a, const Level<R>& b) {
                       return a.energy < b.energy;
                     });
    for (std::size_t i = 1; i < levels.size(); ++i) {
      if (levels[i - 1].energy == levels[i].energy)
        throw DuplicateEnergyError("levels " + std::to_string(i - 1) + " and " +
                                   std::to_string(i) +
                                   " share energy " +
                                   to_string(levels[i].energy));
    }
    return Spectrum(std::move(levels));
  }

  std::size_t size() const { return levels_.size(); }

  const Level<R>& level(std::size_t n) const {
    if (n >= levels_.size())
      throw BadIndexError("level index " + std::to_string(n) + " out of range (" +
                          std::to_string(levels_.size()) + " levels)");
    return levels_[n];
  }

  const std::vector<Level<R>>& levels() const { return levels_; }

  auto begin() const { return levels_.begin(); }
  auto end() const { return levels_.end(); }

  R free_energy(std::size_t n, const R& temperature) const {
    return level_free_energy(level(n), temperature);
  }

  friend bool operator==(const Spectrum& a, const Spectrum& b) {
    return a.levels_ == b.levels_;
  }

 private:
  explicit Spectrum(std::vector<Level<R>> levels) : levels_(std::move(levels)) {}

  std::vector<Level<R>> levels_;
};

template <NumberKind R>
Spectrum<R> make_spectrum(std::vector<Level<R>> levels) {
  return Spectrum<R>::make(std::move(levels));
}

// Lossless conversion to the floating kind (for the finite-k oracle).
inline Spectrum<double> to_floating(const Spectrum<Rational>& s) {
  std::vector<Level<double>> levels;
  levels.reserve(s.size());
  for (const auto& lv : s)
    levels.push_back({number_traits<Rational>::to_double(lv.energy),
                      number_traits<Rational>::to_double(lv.entropy)});
  return Spectrum<double>::make(std::move(levels));
}

inline const Spectrum<double>& to_floating(const Spectrum<double>& s) { return s; }

}  // namespace tropic
