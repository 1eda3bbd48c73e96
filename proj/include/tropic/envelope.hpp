// envelope.hpp — the free-energy envelope over temperature.
//
// Each level contributes an affine line F_n(T) = E_n - S_n*T.  On the
// positive half-line the equilibrium free energy is the lower envelope of
// those lines (pointwise minimum, concave); on the negative half-line it is
// the upper envelope (pointwise maximum, convex).  The envelope is piecewise
// linear with at most one piece per level; its kinks are the transition
// temperatures, where two or more level lines tie.
//
// Construction sorts lines by slope and runs a monotone hull stack in
// O(n log n); parallel lines (equal entropy) never cross, so only the one
// that can win on the given half-line is kept.  The full-line envelope is
// then clipped at T = 0, and at each surviving breakpoint the complete set of
// tying levels is recomputed by a direct scan, so concurrent triples (or
// worse) are reported in full.
//
// Exact number kind: all comparisons and breakpoints are exact rationals.
// Floating kind: ties use the documented relative tolerance, and jump
// classification near ties may differ from exact mode.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tropic/errors.hpp"
#include "tropic/numbers.hpp"
#include "tropic/spectrum.hpp"

namespace tropic {

enum class Domain { positive, negative };

inline const char* domain_name(Domain d) {
  return d == Domain::positive ? "positive" : "negative";
}

// Transition temperature of two distinct levels: T* = (E_i - E_k)/(S_i - S_k),
// symmetric in its arguments.  Parallel lines (S_i = S_k) never cross at a
// finite temperature; that case returns an empty optional (T* = +inf).
template <NumberKind R>
std::optional<R> transition_temperature(const Level<R>& a, const Level<R>& b) {
  if (a == b)
    throw IdenticalLevelsError("transition temperature of a level with itself");
  if (number_traits<R>::tie_equal(a.entropy, b.entropy)) return std::nullopt;
  return (a.energy - b.energy) / (a.entropy - b.entropy);
}

// Latent heat of the transition between two levels: q_ik = T*_ik (S_i - S_k)
// = E_i - E_k.  Defined for parallel levels too (the energy difference).
template <NumberKind R>
R latent_heat(const Level<R>& a, const Level<R>& b) {
  return a.energy - b.energy;
}

// Indices of all levels attaining min_n F_n/T at the given temperature
// (equivalently: min F_n for T > 0, max F_n for T < 0).  Sorted ascending.
template <NumberKind R>
std::vector<std::size_t> minimizing_set(const Spectrum<R>& s, const R& temperature) {
  if (temperature == R(0))
    throw ZeroTemperatureError("minimizing set is undefined at T = 0");
  const bool want_min = temperature > R(0);
  R best = s.free_energy(0, temperature);
  for (std::size_t n = 1; n < s.size(); ++n) {
    R f = s.free_energy(n, temperature);
    if (want_min ? f < best : f > best) best = std::move(f);
  }
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < s.size(); ++n)
    if (number_traits<R>::tie_equal(s.free_energy(n, temperature), best))
      out.push_back(n);
  return out;
}

template <NumberKind R>
struct Breakpoint {
  R temperature;
  std::vector<std::size_t> minimizing_set;  // every level tying there
};

template <NumberKind R>
class PiecewiseLinear {
 public:
  Domain domain() const { return domain_; }

  std::size_t piece_count() const { return piece_levels_.size(); }

  // Level index owning the i-th open segment (ascending temperature).
  std::size_t piece_level(std::size_t i) const { return piece_levels_.at(i); }

  const std::vector<std::size_t>& piece_levels() const { return piece_levels_; }

  std::size_t breakpoint_count() const { return breakpoints_.size(); }

  const Breakpoint<R>& breakpoint(std::size_t i) const { return breakpoints_.at(i); }

  const std::vector<Breakpoint<R>>& breakpoints() const { return breakpoints_; }

  // Open-interval bounds of segment i; an empty optional marks the unbounded
  // end of the half-line (+inf on the positive domain, -inf on the negative).
  std::pair<std::optional<R>, std::optional<R>> piece_bounds(std::size_t i) const {
    std::optional<R> lo, hi;
    if (i > 0)
      lo = breakpoints_[i - 1].temperature;
    else if (domain_ == Domain::positive)
      lo = R(0);
    if (i + 1 < piece_levels_.size())
      hi = breakpoints_[i].temperature;
    else if (domain_ == Domain::negative)
      hi = R(0);
    return {lo, hi};
  }

  const Level<R>& level(std::size_t n) const { return levels_[n]; }

  bool contains(const R& temperature) const {
    return domain_ == Domain::positive ? temperature > R(0) : temperature < R(0);
  }

  // Segment (or right-adjacent segment of a breakpoint) covering T.
  std::size_t piece_index_at(const R& temperature) const {
    std::size_t lo = 0, hi = breakpoints_.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (temperature < breakpoints_[mid].temperature)
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  }

  // Envelope value at T.  Continuous across breakpoints.
  R eval(const R& temperature) const {
    if (temperature == R(0) || !contains(temperature))
      throw OutOfDomainError("temperature " + to_string(temperature) +
                             " is outside the " + domain_name(domain_) +
                             " half-line");
    const Level<R>& lv = levels_[piece_levels_[piece_index_at(temperature)]];
    return level_free_energy(lv, temperature);
  }

 private:
  template <NumberKind S>
  friend PiecewiseLinear<S> build_envelope(const Spectrum<S>&, Domain);

  Domain domain_;
  std::vector<Level<R>> levels_;  // copy of the spectrum, index-aligned
  std::vector<std::size_t> piece_levels_;
  std::vector<Breakpoint<R>> breakpoints_;
};

namespace detail {

template <NumberKind R>
struct EnvelopeLine {
  R slope;      // -S_n
  R intercept;  // E_n
  std::size_t index;
};

// Middle line of three (slopes strictly decreasing) contributes no open
// segment iff its crossing with the next line is not to the right of its
// crossing with the previous one.  Cross-multiplied: both denominators are
// positive by the slope ordering.
template <NumberKind R>
bool middle_line_useless(const EnvelopeLine<R>& a, const EnvelopeLine<R>& b,
                         const EnvelopeLine<R>& c) {
  return (c.intercept - b.intercept) * (a.slope - b.slope) <=
         (b.intercept - a.intercept) * (b.slope - c.slope);
}

// Lower envelope over the whole real line.  Returns the hull lines ordered by
// ascending abscissa (slopes strictly decreasing) plus the crossing abscissae
// between consecutive hull lines.
template <NumberKind R>
std::pair<std::vector<EnvelopeLine<R>>, std::vector<R>> lower_envelope(
    std::vector<EnvelopeLine<R>> lines) {
  std::sort(lines.begin(), lines.end(),
            [](const EnvelopeLine<R>& x, const EnvelopeLine<R>& y) {
              if (x.slope != y.slope) return x.slope > y.slope;
              return x.intercept < y.intercept;
            });
  // Parallel lines: only the lowest can appear in a pointwise minimum.
  std::vector<EnvelopeLine<R>> kept;
  kept.reserve(lines.size());
  for (auto& ln : lines)
    if (kept.empty() || !number_traits<R>::tie_equal(kept.back().slope, ln.slope))
      kept.push_back(std::move(ln));

  std::vector<EnvelopeLine<R>> hull;
  hull.reserve(kept.size());
  for (auto& ln : kept) {
    while (hull.size() >= 2 &&
           middle_line_useless(hull[hull.size() - 2], hull.back(), ln))
      hull.pop_back();
    hull.push_back(std::move(ln));
  }

  std::vector<R> crossings;
  crossings.reserve(hull.size() > 0 ? hull.size() - 1 : 0);
  for (std::size_t i = 0; i + 1 < hull.size(); ++i)
    crossings.push_back((hull[i + 1].intercept - hull[i].intercept) /
                        (hull[i].slope - hull[i + 1].slope));
  return {std::move(hull), std::move(crossings)};
}

}  // namespace detail

// The free-energy envelope of a spectrum on one temperature half-line: the
// lower envelope of the level lines for Domain::positive, the upper envelope
// for Domain::negative.  Levels that never achieve the envelope on that
// half-line are absent from the segments (they can still appear in breakpoint
// minimizing sets when they tie there).
template <NumberKind R>
PiecewiseLinear<R> build_envelope(const Spectrum<R>& s, Domain domain) {
  const bool upper = (domain == Domain::negative);

  std::vector<detail::EnvelopeLine<R>> lines;
  lines.reserve(s.size());
  for (std::size_t n = 0; n < s.size(); ++n) {
    R slope = -s.level(n).entropy;
    R intercept = s.level(n).energy;
    // Upper envelope = negated lower envelope of negated lines.
    if (upper) {
      slope = -slope;
      intercept = -intercept;
    }
    lines.push_back({std::move(slope), std::move(intercept), n});
  }

  auto [hull, crossings] = detail::lower_envelope(std::move(lines));

  // Clip the full-line envelope to the open half-line.
  PiecewiseLinear<R> env;
  env.domain_ = domain;
  env.levels_ = s.levels();
  const R zero(0);
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const bool has_lo = i > 0;
    const bool has_hi = i < crossings.size();
    bool keep;
    if (domain == Domain::positive)
      keep = !has_hi || crossings[i] > zero;  // segment reaches past 0
    else
      keep = !has_lo || crossings[i - 1] < zero;
    if (!keep) continue;
    env.piece_levels_.push_back(hull[i].index);
    if (has_hi && (domain == Domain::positive ? crossings[i] > zero
                                              : crossings[i] < zero)) {
      Breakpoint<R> bp;
      bp.temperature = crossings[i];
      bp.minimizing_set = minimizing_set(s, bp.temperature);
      env.breakpoints_.push_back(std::move(bp));
    }
  }
  return env;
}

// Envelope value at T via the spec'd operation name.
template <NumberKind R>
R eval_free_energy(const PiecewiseLinear<R>& env, const R& temperature) {
  return env.eval(temperature);
}

}  // namespace tropic
