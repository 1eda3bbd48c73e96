// limits.hpp — limiting temperatures for infinite level spectra.
//
// An infinite spectrum is given lazily: an explicit head of levels plus
// affine tail rules E_n = e0 + e1*n, S_n = s0 + s1*n (e1 > 0, so energies
// increase with the index).  Bounded-below spectra are indexed n >= 1;
// spectra unbounded below add a second tail running toward n -> -inf.
//
// Equilibrium at temperature T requires min_n F_n/T to exist.  Along an
// affine tail F_n/T is affine in n with slope (e1 - T*s1)/T, so existence is
// decided by a sign: a tail whose F_n/T decreases without bound certifies
// divergence (no equilibrium), and the temperature at which the sign flips is
// the limiting temperature of that tail.  For a growing-entropy upper tail
// this is T_S+ = lim E_n/S_n: equilibrium holds for 0 < T < T_S+ and fails
// above.  For a negative-entropy lower tail, T_S- = lim E_n/S_n bounds
// equilibrium from below.  Behavior exactly at a limiting temperature is
// reported as inconclusive, never guessed.
//
// Verdicts carry evidence: a diverged result includes a finite witness chain
// of strictly decreasing F_n/T values that can be re-evaluated against the
// generator, and tail certificates are re-checked on sampled indices up to
// the probe horizon.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tropic/errors.hpp"
#include "tropic/spectrum.hpp"

namespace tropic {

struct AffineRule {
  double offset = 0;
  double step = 0;
  double operator()(long n) const { return offset + step * static_cast<double>(n); }
};

struct TailRule {
  AffineRule energy;   // e0 + e1*n, e1 > 0
  AffineRule entropy;  // s0 + s1*n
  long from = 1;       // tail covers n >= from (upper) or n <= from (lower)
  // Limit of E_n/S_n along the tail.  Stored explicitly where the family
  // pins it exactly (linear-ratio stores its parameter a verbatim).
  std::optional<double> ratio_limit;

  double ratio_at_infinity() const {
    if (ratio_limit) return *ratio_limit;
    return energy.step / entropy.step;
  }
};

enum class GeneratorFamily { finite, linear_ratio, table_plus_tail, two_sided };

class GeneratorSpec {
 public:
  // Finite spectrum embedded as a generator; levels occupy indices 1..H.
  static GeneratorSpec finite(std::vector<Level<double>> head) {
    GeneratorSpec g;
    g.family_ = GeneratorFamily::finite;
    g.head_ = std::move(head);
    g.head_start_ = 1;
    g.validate();
    return g;
  }

  // E_n = e0*n, S_n = E_n/a for n >= 1.
  static GeneratorSpec linear_ratio(double e0, double a) {
    if (!(e0 > 0)) throw GeneratorSpecError("linear_ratio requires e0 > 0");
    if (a == 0 || !std::isfinite(a) || !std::isfinite(e0))
      throw GeneratorSpecError("linear_ratio requires finite a != 0");
    GeneratorSpec g;
    g.family_ = GeneratorFamily::linear_ratio;
    g.head_start_ = 1;
    TailRule tail;
    tail.energy = {0.0, e0};
    tail.entropy = {0.0, e0 / a};
    tail.from = 1;
    tail.ratio_limit = a;
    g.up_ = tail;
    g.validate();
    return g;
  }

  // Explicit head at indices 1..tail.from-1 followed by an affine upper tail.
  static GeneratorSpec table_plus_tail(std::vector<Level<double>> head,
                                       TailRule tail) {
    GeneratorSpec g;
    g.family_ = GeneratorFamily::table_plus_tail;
    g.head_ = std::move(head);
    g.head_start_ = 1;
    g.up_ = tail;
    g.validate();
    return g;
  }

  // Two-sided spectrum: lower tail for n <= down.from, head at indices
  // down.from+1 .. up.from-1, upper tail for n >= up.from.
  static GeneratorSpec two_sided(std::vector<Level<double>> head, TailRule up,
                                 TailRule down) {
    GeneratorSpec g;
    g.family_ = GeneratorFamily::two_sided;
    g.head_ = std::move(head);
    g.head_start_ = down.from + 1;
    g.up_ = up;
    g.down_ = down;
    g.validate();
    return g;
  }

  // Unbounded below but capped above: lower tail plus an explicit head.
  static GeneratorSpec head_plus_lower_tail(std::vector<Level<double>> head,
                                            TailRule down) {
    GeneratorSpec g;
    g.family_ = GeneratorFamily::two_sided;
    g.head_ = std::move(head);
    g.head_start_ = down.from + 1;
    g.down_ = down;
    g.validate();
    return g;
  }

  GeneratorFamily family() const { return family_; }
  bool bounded_below() const { return !down_.has_value(); }
  bool has_upper_tail() const { return up_.has_value(); }
  const TailRule& upper_tail() const { return *up_; }
  const TailRule& lower_tail() const { return *down_; }
  const std::vector<Level<double>>& head() const { return head_; }

  // First index of the explicit portion (1 for bounded-below spectra).
  long head_start() const { return head_start_; }
  long head_end() const { return head_start_ + static_cast<long>(head_.size()) - 1; }

  bool in_range(long n) const {
    if (down_ && n <= down_->from) return true;
    if (up_ && n >= up_->from) return true;
    return n >= head_start_ && n <= head_end();
  }

  Level<double> at(long n) const {
    if (up_ && n >= up_->from) return {up_->energy(n), up_->entropy(n)};
    if (down_ && n <= down_->from) return {down_->energy(n), down_->entropy(n)};
    if (n < head_start_ || n > head_end())
      throw BadIndexError("generator index " + std::to_string(n) +
                          " outside the finite spectrum");
    return head_[static_cast<std::size_t>(n - head_start_)];
  }

  // Materializes the levels at indices [lo, hi] as a finite spectrum.
  Spectrum<double> take(long lo, long hi) const {
    std::vector<Level<double>> levels;
    levels.reserve(static_cast<std::size_t>(std::max<long>(0, hi - lo + 1)));
    for (long n = lo; n <= hi; ++n) levels.push_back(at(n));
    return Spectrum<double>::make(std::move(levels));
  }

 private:
  GeneratorSpec() = default;

  void validate() const {
    for (const auto& lv : head_)
      if (!std::isfinite(lv.energy) || !std::isfinite(lv.entropy))
        throw GeneratorSpecError("non-finite head level");
    for (std::size_t i = 1; i < head_.size(); ++i)
      if (!(head_[i - 1].energy < head_[i].energy))
        throw GeneratorSpecError("head energies must be strictly increasing");
    auto check_tail = [](const TailRule& t, const char* which) {
      if (!(t.energy.step > 0))
        throw GeneratorSpecError(std::string(which) +
                                 " tail must have strictly increasing energies");
      if (!std::isfinite(t.energy.offset) || !std::isfinite(t.energy.step) ||
          !std::isfinite(t.entropy.offset) || !std::isfinite(t.entropy.step))
        throw GeneratorSpecError(std::string(which) + " tail has non-finite rule");
    };
    if (up_) {
      check_tail(*up_, "upper");
      if (up_->from != head_end() + 1)
        throw GeneratorSpecError("upper tail must start right after the head");
      if (!head_.empty() && !(head_.back().energy < up_->energy(up_->from)))
        throw GeneratorSpecError("head/upper-tail energies out of order");
    }
    if (down_) {
      check_tail(*down_, "lower");
      if (down_->from != head_start_ - 1)
        throw GeneratorSpecError("lower tail must end right before the head");
      const double boundary = down_->energy(down_->from);
      const double next = head_.empty() ? (up_ ? up_->energy(up_->from)
                                              : std::numeric_limits<double>::infinity())
                                        : head_.front().energy;
      if (!(boundary < next))
        throw GeneratorSpecError("lower-tail/head energies out of order");
      if (!up_ && head_.empty())
        throw GeneratorSpecError("two-sided generator needs an upper tail or head");
    }
    if (!down_ && head_start_ != 1)
      throw GeneratorSpecError("bounded-below generators are indexed from 1");
    if (head_.empty() && !up_ && !down_)
      throw GeneratorSpecError("generator produces no levels");
  }

  GeneratorFamily family_ = GeneratorFamily::finite;
  std::vector<Level<double>> head_;
  long head_start_ = 1;
  std::optional<TailRule> up_, down_;
};

enum class Verdict { converged, diverged, inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::converged: return "converged";
    case Verdict::diverged: return "diverged";
    default: return "inconclusive";
  }
}

struct WitnessEntry {
  long index;
  double value;  // F_n / T
};

struct EquilibriumStatus {
  Verdict verdict = Verdict::inconclusive;
  // converged
  double free_energy = std::numeric_limits<double>::quiet_NaN();
  long achieved_index = 0;
  // diverged: strictly decreasing chain of F_n/T values (length >= 3)
  std::vector<WitnessEntry> witness;
  // inconclusive
  long horizon = 0;
};

namespace detail {

enum class TailSide { upper, lower };

enum class TailVerdict { ok, diverges, at_limit };

// Decides the fate of one affine tail at temperature T by comparing T with
// the tail's limiting ratio; sign analysis of the F_n/T slope in n.
inline TailVerdict classify_tail(const TailRule& t, TailSide side, double T) {
  const double s1 = t.entropy.step;
  const bool up = (side == TailSide::upper);
  if (T > 0) {
    if (s1 > 0) {
      const double theta = t.ratio_at_infinity();  // > 0 here
      if (T == theta) return TailVerdict::at_limit;
      const bool decreasing_branch = up ? (T > theta) : (T < theta);
      return decreasing_branch ? TailVerdict::diverges : TailVerdict::ok;
    }
    // Bounded or shrinking entropy: F_n/T grows with |n| for the upper tail
    // and falls without bound for the lower one.
    return up ? TailVerdict::ok : TailVerdict::diverges;
  }
  // T < 0
  if (s1 < 0) {
    const double theta = t.ratio_at_infinity();  // e1/s1 < 0
    if (T == theta) return TailVerdict::at_limit;
    const bool decreasing_branch = up ? (T > theta) : (T < theta);
    return decreasing_branch ? TailVerdict::diverges : TailVerdict::ok;
  }
  return up ? TailVerdict::diverges : TailVerdict::ok;
}

inline double f_over_t(const GeneratorSpec& g, long n, double T) {
  Level<double> lv = g.at(n);
  return level_free_energy(lv, T) / T;
}

// Sampled re-check of a tail certificate: F_n/T must be monotone in the tail
// direction, consistent with the closed-form classification.
inline void verify_tail_samples(const GeneratorSpec& g, const TailRule& t,
                                TailSide side, double T, long horizon,
                                bool expect_decreasing) {
  const long dir = (side == TailSide::upper) ? 1 : -1;
  double prev = f_over_t(g, t.from, T);
  long offset = 1;
  while (offset <= horizon) {
    double cur = f_over_t(g, t.from + dir * offset, T);
    if (expect_decreasing ? !(cur < prev) : !(cur > prev))
      throw Error("limits.internal",
                  "tail certificate contradicted at sampled index " +
                      std::to_string(t.from + dir * offset));
    prev = cur;
    offset *= 2;
  }
}

inline std::vector<WitnessEntry> build_witness(const GeneratorSpec& g,
                                               const TailRule& t, TailSide side,
                                               double T, long horizon) {
  const long dir = (side == TailSide::upper) ? 1 : -1;
  const long length = std::max<long>(3, std::min<long>(8, horizon));
  std::vector<WitnessEntry> chain;
  chain.reserve(static_cast<std::size_t>(length));
  for (long i = 0; i < length; ++i) {
    long n = t.from + dir * i;
    chain.push_back({n, f_over_t(g, n, T)});
  }
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (!(chain[i].value < chain[i - 1].value))
      throw Error("limits.internal", "witness chain is not strictly decreasing");
  verify_tail_samples(g, t, side, T, horizon, /*expect_decreasing=*/true);
  return chain;
}

}  // namespace detail

// Decides whether the infinite tropical sum exists at temperature T:
// converged (with the attained free energy and index), diverged (with a
// witness chain), or inconclusive (T sits exactly at a limiting temperature).
inline EquilibriumStatus probe_equilibrium(const GeneratorSpec& g, double T,
                                           long horizon = 10000) {
  if (T == 0) throw ZeroTemperatureError("equilibrium probe requires T != 0");
  if (horizon < 2) throw BadArgumentError("horizon must be at least 2");

  EquilibriumStatus status;
  status.horizon = horizon;

  bool at_limit = false;
  if (g.has_upper_tail()) {
    auto v = detail::classify_tail(g.upper_tail(), detail::TailSide::upper, T);
    if (v == detail::TailVerdict::diverges) {
      status.verdict = Verdict::diverged;
      status.witness = detail::build_witness(g, g.upper_tail(),
                                             detail::TailSide::upper, T, horizon);
      return status;
    }
    at_limit |= (v == detail::TailVerdict::at_limit);
  }
  if (!g.bounded_below()) {
    auto v = detail::classify_tail(g.lower_tail(), detail::TailSide::lower, T);
    if (v == detail::TailVerdict::diverges) {
      status.verdict = Verdict::diverged;
      status.witness = detail::build_witness(g, g.lower_tail(),
                                             detail::TailSide::lower, T, horizon);
      return status;
    }
    at_limit |= (v == detail::TailVerdict::at_limit);
  }
  if (at_limit) {
    // Exactly at a limiting temperature; deliberately undecided.
    status.verdict = Verdict::inconclusive;
    return status;
  }

  // Every tail is certified increasing away from its start, so the minimum of
  // F_n/T is attained on the explicit head or at a tail's first index.
  status.verdict = Verdict::converged;
  bool first = true;
  double best = 0;
  long best_index = 0;
  auto consider = [&](long n) {
    double v = detail::f_over_t(g, n, T);
    if (first || v < best) {
      best = v;
      best_index = n;
      first = false;
    }
  };
  for (long n = g.head_start(); n <= g.head_end(); ++n) consider(n);
  if (g.has_upper_tail()) {
    consider(g.upper_tail().from);
    detail::verify_tail_samples(g, g.upper_tail(), detail::TailSide::upper, T,
                                horizon, /*expect_decreasing=*/false);
  }
  if (!g.bounded_below()) {
    consider(g.lower_tail().from);
    detail::verify_tail_samples(g, g.lower_tail(), detail::TailSide::lower, T,
                                horizon, /*expect_decreasing=*/false);
  }
  status.free_energy = T * best;
  status.achieved_index = best_index;
  return status;
}

struct LimitResult {
  enum class Status { found, none, inconclusive } status = Status::none;
  double value = std::numeric_limits<double>::quiet_NaN();
  long start_index = 0;  // first index at which the tail conditions hold
};

namespace detail {

// First index n >= lower bound with entropy strictly positive (upper tail)
// or the last index n <= upper bound with entropy strictly negative (lower).
inline long first_index_with_entropy_sign(const AffineRule& s, long bound,
                                          bool positive) {
  const double root = -s.offset / s.step;
  long candidate =
      positive ? static_cast<long>(std::floor(root)) + 1
               : static_cast<long>(std::ceil(root)) - 1;
  auto good = [&](long n) { return positive ? s(n) > 0 : s(n) < 0; };
  while (!good(candidate)) candidate += positive ? 1 : -1;
  while (positive ? candidate - 1 >= bound && good(candidate - 1)
                  : candidate + 1 <= bound && good(candidate + 1))
    candidate += positive ? -1 : 1;
  return positive ? std::max(bound, candidate) : std::min(bound, candidate);
}

// Ratio E_n/S_n of an affine pair is monotone wherever S keeps its sign; its
// derivative carries the sign of e1*s0 - e0*s1.
inline bool ratio_nonincreasing(const TailRule& t) {
  return t.energy.step * t.entropy.offset - t.energy.offset * t.entropy.step <= 0;
}

inline void sample_check_limit_conditions(const GeneratorSpec& g, TailSide side,
                                          long n0) {
  const bool up = (side == TailSide::upper);
  const long dir = up ? 1 : -1;
  double prev_s = g.at(n0).entropy;
  double prev_ratio = g.at(n0).energy / prev_s;
  for (long i = 1; i <= 16; ++i) {
    long n = n0 + dir * i;
    Level<double> lv = g.at(n);
    const bool sign_ok = up ? lv.entropy > 0 : lv.entropy < 0;
    const bool growth_ok = up ? lv.entropy > prev_s : lv.entropy < prev_s;
    // E_n/S_n is nonincreasing in n on both sides; walking the lower tail
    // downward the sampled ratio must therefore not decrease.
    double ratio = lv.energy / lv.entropy;
    const double tol = 1e-12 * std::fabs(prev_ratio);
    const bool ratio_ok = up ? ratio <= prev_ratio + tol : ratio >= prev_ratio - tol;
    if (!sign_ok || !growth_ok || !ratio_ok)
      throw Error("limits.internal",
                  "limiting-temperature conditions contradicted at index " +
                      std::to_string(n));
    prev_s = lv.entropy;
    prev_ratio = ratio;
  }
}

}  // namespace detail

// Limiting temperature above which the spectrum cannot equilibrate through
// its upper tail.  found: the tail has growing positive entropies,
// nonincreasing E_n/S_n and entropy gaps bounded below from start_index on,
// and T_S+ is the tail's ratio limit.  none: the upper side certifies
// equilibrium for every T > 0 (finite spectra, bounded or shrinking tail
// entropies).  inconclusive: the tail grows but the monotone-ratio conditions
// fail, so no value is claimed.  Two-sided spectra are analyzed through their
// upper tail alone; combine with lower_limiting_temperature for the full
// equilibrium window.
inline LimitResult upper_limiting_temperature(const GeneratorSpec& g) {
  LimitResult r;
  if (!g.has_upper_tail()) {
    r.status = LimitResult::Status::none;  // finite upper side: min exists
    return r;
  }
  const TailRule& t = g.upper_tail();
  if (t.entropy.step <= 0) {
    r.status = LimitResult::Status::none;
    return r;
  }
  if (!detail::ratio_nonincreasing(t)) {
    r.status = LimitResult::Status::inconclusive;
    return r;
  }
  long n0 = detail::first_index_with_entropy_sign(t.entropy, t.from, true);
  detail::sample_check_limit_conditions(g, detail::TailSide::upper, n0);
  r.status = LimitResult::Status::found;
  r.value = t.ratio_at_infinity();
  r.start_index = n0;
  return r;
}

// Limiting temperature below which a spectrum unbounded from below cannot
// equilibrate (0 < T < T_S- diverges through the lower tail).
inline LimitResult lower_limiting_temperature(const GeneratorSpec& g) {
  if (g.bounded_below())
    throw BoundedBelowSpectrumError(
        "lower limiting temperature expects a spectrum unbounded below");
  LimitResult r;
  const TailRule& t = g.lower_tail();
  if (t.entropy.step <= 0) {
    // Entropy does not fall toward the tail; the published sufficient
    // conditions cannot hold, so no value is claimed.
    r.status = LimitResult::Status::inconclusive;
    return r;
  }
  if (!detail::ratio_nonincreasing(t)) {
    r.status = LimitResult::Status::inconclusive;
    return r;
  }
  long n0 = detail::first_index_with_entropy_sign(t.entropy, t.from, false);
  detail::sample_check_limit_conditions(g, detail::TailSide::lower, n0);
  r.status = LimitResult::Status::found;
  r.value = t.ratio_at_infinity();
  r.start_index = n0;
  return r;
}

struct EquilibriumInterval {
  double lo = 0;
  double hi = 0;
  Verdict verdict = Verdict::inconclusive;
};

namespace detail {

// Temperatures at which some tail changes verdict, plus T = 0.  Between two
// consecutive boundaries every verdict is constant for affine-tail spectra.
inline std::vector<double> analytic_boundaries(const GeneratorSpec& g) {
  std::vector<double> b{0.0};
  auto add_tail = [&b](const TailRule& t) {
    if (t.entropy.step != 0) b.push_back(t.ratio_at_infinity());
  };
  if (g.has_upper_tail()) add_tail(g.upper_tail());
  if (!g.bounded_below()) add_tail(g.lower_tail());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

}  // namespace detail

// Probes every grid temperature and merges equal adjacent verdicts into
// intervals.  Interval endpoints snap to the analytic boundary temperatures
// (limiting temperatures and T = 0) when one lies between the adjoining grid
// points, and the outermost edges extend to the nearest analytic boundary
// beyond the grid, where the verdict is provably unchanged.
inline std::vector<EquilibriumInterval> equilibrium_intervals(
    const GeneratorSpec& g, const std::vector<double>& t_grid,
    long horizon = 10000) {
  if (t_grid.empty()) return {};
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] == 0)
      throw BadArgumentError("temperature grid must not contain 0");
    if (i > 0 && !(t_grid[i - 1] < t_grid[i]))
      throw BadArgumentError("temperature grid must be strictly increasing");
  }
  if (t_grid.front() < 0 && t_grid.back() > 0)
    throw BadArgumentError("temperature grid must not straddle 0");

  std::vector<Verdict> verdicts(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    verdicts[i] = probe_equilibrium(g, t_grid[i], horizon).verdict;

  const std::vector<double> bounds = detail::analytic_boundaries(g);
  auto bound_between = [&bounds](double a, double b) -> std::optional<double> {
    for (double x : bounds)
      if (a <= x && x <= b) return x;
    return std::nullopt;
  };

  std::vector<EquilibriumInterval> out;
  std::size_t run_start = 0;
  for (std::size_t i = 1; i <= t_grid.size(); ++i) {
    if (i < t_grid.size() && verdicts[i] == verdicts[run_start]) continue;
    EquilibriumInterval iv;
    iv.verdict = verdicts[run_start];
    if (out.empty()) {
      // Largest analytic boundary at or below the grid start, if any.
      double lo = t_grid.front();
      for (double x : bounds)
        if (x <= t_grid.front()) lo = x;
      iv.lo = lo;
    } else {
      iv.lo = out.back().hi;
    }
    if (i == t_grid.size()) {
      double hi = t_grid.back();
      for (double x : bounds)
        if (x >= t_grid.back()) {
          hi = x;
          break;
        }
      iv.hi = std::max(hi, t_grid.back());
    } else {
      auto snap = bound_between(t_grid[i - 1], t_grid[i]);
      iv.hi = snap ? *snap : 0.5 * (t_grid[i - 1] + t_grid[i]);
    }
    out.push_back(iv);
    run_start = i;
  }
  return out;
}

}  // namespace tropic
