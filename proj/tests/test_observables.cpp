#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "tropic/observables.hpp"

using namespace tropic;
using support::rng;

namespace {

Rational q(int num, int den = 1) { return Rational(num, den); }

Level<Rational> lv(int e, int s) { return {Rational(e), Rational(s)}; }

const Spectrum<Rational> two_level =
    make_spectrum<Rational>({lv(1, 1), lv(2, 3)});

}  // namespace

TEST_CASE("observables on a segment, at the breakpoint, and at T < 0") {
  auto pos = build_envelope(two_level, Domain::positive);
  auto neg = build_envelope(two_level, Domain::negative);

  auto generic = observables_at(two_level, pos, q(1, 4));
  CHECK(generic.entropy == q(1));
  CHECK(generic.energy == q(1));
  CHECK(generic.free_energy == q(3, 4));
  CHECK_FALSE(generic.singular);
  CHECK(generic.minimizing_set == std::vector<std::size_t>{0});

  auto singular = observables_at(two_level, pos, q(1, 2));
  CHECK(singular.singular);
  CHECK(singular.entropy == q(2));       // (1+3)/2
  CHECK(singular.energy == q(3, 2));     // (1+2)/2
  CHECK(singular.free_energy == q(1, 2));

  auto below = observables_at(two_level, neg, q(-1));
  CHECK(below.entropy == q(3));
  CHECK(below.energy == q(2));
  CHECK(below.free_energy == q(5));
  CHECK_FALSE(below.singular);

  CHECK_THROWS_AS(observables_at(two_level, pos, q(-1)), OutOfDomainError);
}

TEST_CASE("level log-probabilities") {
  auto pos = build_envelope(two_level, Domain::positive);
  CHECK(level_log_prob(two_level, pos, q(1, 4), 1) == q(-2));
  CHECK(level_log_prob(two_level, pos, q(1, 4), 0) == q(0));
  // both vanish at the tie
  CHECK(level_log_prob(two_level, pos, q(1, 2), 0) == q(0));
  CHECK(level_log_prob(two_level, pos, q(1, 2), 1) == q(0));
  CHECK_THROWS_AS(level_log_prob(two_level, pos, q(1, 4), 5), BadIndexError);
}

TEST_CASE("state log-probabilities") {
  auto pos = build_envelope(two_level, Domain::positive);
  CHECK(state_log_prob(two_level, pos, q(1, 4), 0) == q(-1));  // -S of winner
  CHECK(state_log_prob(two_level, pos, q(1, 4), 1) == q(-5));  // -3 + (-2)

  auto flat = make_spectrum<Rational>({lv(1, 0), lv(2, 1)});
  auto env = build_envelope(flat, Domain::positive);
  CHECK(state_log_prob(flat, env, q(1, 4), 0) == q(0));  // S = 0 winner
}

TEST_CASE("log-probability gap and its transition-temperature form") {
  CHECK(log_prob_gap(two_level, q(1, 4), 0, 1) == q(2));
  CHECK(log_prob_gap(two_level, q(1, 2), 0, 1) == q(0));
  CHECK(log_prob_gap(two_level, q(1), 0, 1) == q(-1));

  auto parallel = make_spectrum<Rational>({lv(1, 2), lv(3, 2)});
  CHECK_THROWS_AS(log_prob_gap(parallel, q(1), 0, 1), ParallelLevelsError);
}

TEST_CASE("subleading log-probability term -k ln m") {
  CHECK(subleading_level_logprob(2, 0.01) ==
        Catch::Approx(-0.01 * std::log(2.0)));
  CHECK(subleading_level_logprob(1, 0.37) == 0.0);
  CHECK(subleading_level_logprob(3, 0.1) ==
        Catch::Approx(-0.1 * std::log(3.0)));
  CHECK_THROWS_AS(subleading_level_logprob(0, 0.1), BadArgumentError);
  CHECK_THROWS_AS(subleading_level_logprob(2, 0.0), BadArgumentError);
}

TEST_CASE("residual entropies from both sides of T = 0") {
  CHECK(residual_entropy(two_level, Domain::positive) == q(1));
  CHECK(residual_entropy(two_level, Domain::negative) == q(3));

  auto ice = make_spectrum<double>({{1.0, std::log(1.5)}});
  CHECK(residual_entropy(ice, Domain::positive) ==
        Catch::Approx(0.4054651081081644));
}

TEST_CASE("normalization, consistency, and the maximum-probability law") {
  auto& gen = rng();
  std::uniform_int_distribution<std::size_t> size(1, 10);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = support::random_spectrum(gen, size(gen));
    for (Domain d : {Domain::positive, Domain::negative}) {
      auto env = build_envelope(s, d);
      for (int i = 0; i < 40; ++i) {
        Rational t = support::random_positive_rational(gen, 60, 12);
        if (d == Domain::negative) t = -t;
        auto rep = observables_at(s, env, t);

        Rational max_w = rep.levels[0].level_log_prob;
        Rational max_norm = rep.levels[0].state_log_prob + s.level(0).entropy;
        std::vector<std::size_t> argmax;
        for (const auto& rec : rep.levels) {
          CHECK(rec.level_log_prob <= q(0));
          CHECK(rec.level_log_prob - rec.state_log_prob ==
                s.level(rec.index).entropy);
          max_w = std::max(max_w, rec.level_log_prob);
          max_norm =
              std::max(max_norm, rec.state_log_prob + s.level(rec.index).entropy);
        }
        CHECK(max_w == q(0));
        CHECK(max_norm == q(0));
        for (const auto& rec : rep.levels)
          if (rec.level_log_prob == q(0)) argmax.push_back(rec.index);
        CHECK(argmax == rep.minimizing_set);
        CHECK(rep.singular == (rep.minimizing_set.size() >= 2));

        // thermodynamic identity, singular points included
        CHECK(rep.free_energy == rep.energy - t * rep.entropy);
      }
    }
  }
}

TEST_CASE("entropy and energy are constant on segment interiors") {
  auto& gen = rng();
  for (int trial = 0; trial < 15; ++trial) {
    auto s = support::random_spectrum(gen, 2 + trial % 8);
    for (Domain d : {Domain::positive, Domain::negative}) {
      auto env = build_envelope(s, d);
      for (std::size_t i = 0; i < env.piece_count(); ++i) {
        auto [lo, hi] = env.piece_bounds(i);
        Rational a = lo ? *lo : *hi - q(2);
        Rational b = hi ? *hi : *lo + q(2);
        Rational mid = (a + b) / q(2);
        Rational h = (b - a) / q(8);
        auto at_mid = observables_at(s, env, mid);
        auto at_left = observables_at(s, env, mid - h);
        auto at_right = observables_at(s, env, mid + h);
        CHECK(at_mid.entropy == at_left.entropy);
        CHECK(at_mid.entropy == at_right.entropy);
        CHECK(at_mid.energy == at_right.energy);
        CHECK_FALSE(at_mid.singular);
        // piecewise-linear slope: -(F(T+h) - F(T-h))/(2h) = S_tr, exactly
        CHECK(-(env.eval(mid + h) - env.eval(mid - h)) / (q(2) * h) ==
              at_mid.entropy);
        // zero specific heat: T * dS/dT with S constant across the segment
        CHECK(at_right.entropy - at_left.entropy == q(0));
      }
    }
  }
}

TEST_CASE("entropy jumps upward across positive-domain breakpoints") {
  auto& gen = rng();
  for (int trial = 0; trial < 20; ++trial) {
    auto s = support::random_spectrum(gen, 3 + trial % 7);
    auto env = build_envelope(s, Domain::positive);
    for (std::size_t b = 0; b < env.breakpoint_count(); ++b) {
      Rational jump = s.level(env.piece_level(b + 1)).entropy -
                      s.level(env.piece_level(b)).entropy;
      CHECK(jump > q(0));
      // breakpoint value is the mean over the minimizing set
      auto rep = observables_at(s, env, env.breakpoint(b).temperature);
      CHECK(rep.singular);
      Rational mean(0);
      for (std::size_t n : rep.minimizing_set) mean += s.level(n).entropy;
      CHECK(rep.entropy ==
            mean / Rational(static_cast<int>(rep.minimizing_set.size())));
    }
  }
}

TEST_CASE("all-zero entropies pin the free energy to the ground level") {
  auto s = make_spectrum<Rational>({lv(2, 0), lv(3, 0), lv(7, 0)});
  auto env = build_envelope(s, Domain::positive);
  REQUIRE(env.piece_count() == 1);
  for (int i = 1; i <= 8; ++i) {
    CHECK(env.eval(q(i, 2)) == q(2));  // F_tr = E_1 for every T > 0
    auto rep = observables_at(s, env, q(i, 2));
    CHECK(rep.entropy == q(0));
    CHECK(rep.energy == q(2));
  }
}

TEST_CASE("negative entropies can push state log-probabilities above zero") {
  auto s = make_spectrum<Rational>({lv(1, -2), lv(2, 1)});
  auto env = build_envelope(s, Domain::positive);
  auto rep = observables_at(s, env, q(1, 4));
  // winner has S = -2, so w = -S = 2 > 0; flagged, not rejected
  CHECK(rep.levels[0].state_log_prob == q(2));
  CHECK(rep.levels[0].state_log_prob_positive);
  CHECK_FALSE(rep.levels[1].state_log_prob_positive);
}
