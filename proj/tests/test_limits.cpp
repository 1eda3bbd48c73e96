#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "tropic/io.hpp"
#include "tropic/limits.hpp"
#include "tropic/observables.hpp"
#include "tropic/oracle.hpp"

using namespace tropic;
using support::rng;

namespace {

// Log of the partial classical sum over generator indices |n| <= H.
double partial_log_sum(const GeneratorSpec& g, double k, double t, long H) {
  double acc = -std::numeric_limits<double>::infinity();
  long lo = g.bounded_below() ? 1 : -H;
  for (long n = lo; n <= H; ++n) {
    if (!g.in_range(n)) break;
    double x = -level_free_energy(g.at(n), t) / (k * t);
    acc = acc == -std::numeric_limits<double>::infinity()
              ? x
              : support::log_sum_exp2(acc, x);
  }
  return acc;
}

GeneratorSpec spec_from(const std::string& text) {
  return parse_generator_json(text);
}

}  // namespace

TEST_CASE("generator construction and validation") {
  auto g = GeneratorSpec::linear_ratio(1.0, 2.0);
  CHECK(g.at(1).energy == 1.0);
  CHECK(g.at(3).entropy == 1.5);
  CHECK(g.bounded_below());

  auto fin = GeneratorSpec::finite({{1.0, 0.5}, {2.0, 1.0}});
  CHECK(fin.at(2).energy == 2.0);
  CHECK_THROWS_AS(fin.at(3), BadIndexError);
  CHECK_FALSE(fin.in_range(0));

  CHECK_THROWS_AS(GeneratorSpec::linear_ratio(0.0, 2.0), GeneratorSpecError);
  CHECK_THROWS_AS(GeneratorSpec::linear_ratio(1.0, 0.0), GeneratorSpecError);
  CHECK_THROWS_AS(GeneratorSpec::finite({{2.0, 0.0}, {1.0, 0.0}}),
                  GeneratorSpecError);
  // tail must start right after the head
  CHECK_THROWS_AS(GeneratorSpec::table_plus_tail(
                      {{1.0, 0.0}}, TailRule{{0.0, 1.0}, {0.0, 0.5}, 5}),
                  GeneratorSpecError);
  // tail energies must increase
  CHECK_THROWS_AS(GeneratorSpec::table_plus_tail(
                      {}, TailRule{{0.0, -1.0}, {0.0, 0.5}, 1}),
                  GeneratorSpecError);
}

TEST_CASE("generator JSON forms") {
  auto lin = spec_from(R"({"family":"linear_ratio","e0":1,"a":2})");
  CHECK(lin.family() == GeneratorFamily::linear_ratio);
  CHECK(lin.at(2).energy == 2.0);
  CHECK(lin.at(2).entropy == 1.0);

  auto tpt = spec_from(
      R"({"family":"table_plus_tail",
          "head":[{"E":-3,"S":0},{"E":1,"S":4}],
          "tail":{"E":[0,1],"S":[0,0.5],"from":3}})");
  CHECK(tpt.at(1).energy == -3.0);
  CHECK(tpt.at(5).entropy == 2.5);

  auto fin = spec_from(
      R"({"family":"table_plus_tail","head":[{"E":1,"S":1},{"E":2,"S":3}]})");
  CHECK(fin.family() == GeneratorFamily::finite);
  CHECK(fin.bounded_below());

  auto two = spec_from(
      R"({"family":"two_sided","head":[{"E":0,"S":0}],
          "positive_tail":{"E":[0,1],"S":[0,0.25],"from":1},
          "negative_tail":{"E":[0,1],"S":[0,0.5],"from":-1}})");
  CHECK_FALSE(two.bounded_below());
  CHECK(two.at(-2).energy == -2.0);
  CHECK(two.at(0).energy == 0.0);
  CHECK(two.at(4).entropy == 1.0);

  CHECK_THROWS_AS(spec_from(R"({"family":"mystery"})"), ParseError);
  CHECK_THROWS_AS(spec_from(R"({"family":"linear_ratio","e0":1})"), ParseError);
  CHECK_THROWS_AS(
      spec_from(R"({"family":"table_plus_tail","head":[],
                    "tail":{"E":[0],"S":[0,1],"from":1}})"),
      ParseError);
}

TEST_CASE("equilibrium probe on the constant-ratio family") {
  auto g = GeneratorSpec::linear_ratio(1.0, 2.0);

  auto ok = probe_equilibrium(g, 1.0);
  CHECK(ok.verdict == Verdict::converged);
  CHECK(ok.free_energy == Catch::Approx(0.5));  // F_1 = 1 - 1/2
  CHECK(ok.achieved_index == 1);

  auto bad = probe_equilibrium(g, 3.0);
  CHECK(bad.verdict == Verdict::diverged);
  REQUIRE(bad.witness.size() >= 3);
  for (std::size_t i = 0; i < bad.witness.size(); ++i) {
    // re-evaluate the witness against the generator
    long n = bad.witness[i].index;
    CHECK(bad.witness[i].value ==
          Catch::Approx(level_free_energy(g.at(n), 3.0) / 3.0));
    if (i > 0) CHECK(bad.witness[i].value < bad.witness[i - 1].value);
  }
  // decrements stay bounded away from zero along the certified tail
  double first_drop = bad.witness[0].value - bad.witness[1].value;
  for (std::size_t i = 1; i + 1 < bad.witness.size(); ++i)
    CHECK(bad.witness[i].value - bad.witness[i + 1].value >=
          0.5 * first_drop);

  // exactly at the limiting temperature: deliberately undecided
  CHECK(probe_equilibrium(g, 2.0).verdict == Verdict::inconclusive);

  // growing entropies forbid negative temperatures
  CHECK(probe_equilibrium(g, -1.0).verdict == Verdict::diverged);

  CHECK_THROWS_AS(probe_equilibrium(g, 0.0), ZeroTemperatureError);
  CHECK_THROWS_AS(probe_equilibrium(g, 1.0, 1), BadArgumentError);
}

TEST_CASE("negative-ratio family has a forbidden interval above -a") {
  auto g = GeneratorSpec::linear_ratio(1.0, -2.0);  // S_n = -E_n/2
  CHECK(probe_equilibrium(g, -1.0).verdict == Verdict::diverged);
  CHECK(probe_equilibrium(g, -3.0).verdict == Verdict::converged);
  CHECK(probe_equilibrium(g, 1.0).verdict == Verdict::converged);
  CHECK(probe_equilibrium(g, -2.0).verdict == Verdict::inconclusive);
}

TEST_CASE("probe agrees with the closed form for random parameters") {
  auto& gen = rng();
  std::uniform_real_distribution<double> e0_dist(0.25, 3.0);
  std::uniform_real_distribution<double> a_dist(0.25, 4.0);
  std::uniform_real_distribution<double> frac(0.1, 0.9);
  for (int trial = 0; trial < 20; ++trial) {
    double e0 = e0_dist(gen), a = a_dist(gen);
    auto g = GeneratorSpec::linear_ratio(e0, a);
    double below = a * frac(gen);
    double above = a * (1.0 + frac(gen));
    CHECK(probe_equilibrium(g, below).verdict == Verdict::converged);
    CHECK(probe_equilibrium(g, above).verdict == Verdict::diverged);
  }
}

TEST_CASE("probe matches the classical partial sums") {
  auto& gen = rng();
  std::uniform_real_distribution<double> a_dist(0.5, 3.0);
  const double k = 1e-2;
  for (int trial = 0; trial < 10; ++trial) {
    double a = a_dist(gen);
    auto g = GeneratorSpec::linear_ratio(1.0, a);
    for (double t : {0.5 * a, 1.7 * a}) {
      auto st = probe_equilibrium(g, t);
      double s1 = partial_log_sum(g, k, t, 200);
      double s2 = partial_log_sum(g, k, t, 400);
      double s3 = partial_log_sum(g, k, t, 800);
      if (st.verdict == Verdict::diverged) {
        CHECK(s2 >= s1 + std::log(2.0));
        CHECK(s3 >= s2 + std::log(2.0));
      } else {
        REQUIRE(st.verdict == Verdict::converged);
        CHECK(std::fabs(s2 - s1) < 1e-9);
        CHECK(std::fabs(s3 - s2) < 1e-9);
      }
    }
  }
}

TEST_CASE("upper limiting temperature") {
  for (int i = 1; i <= 20; ++i) {
    double a = 0.2 * i;
    auto r = upper_limiting_temperature(GeneratorSpec::linear_ratio(1.0, a));
    REQUIRE(r.status == LimitResult::Status::found);
    CHECK(r.value == a);  // stored parameter, reported verbatim
    CHECK(r.start_index == 1);
  }

  auto finite = GeneratorSpec::finite({{1.0, 1.0}, {2.0, 3.0}, {4.0, 0.0}});
  CHECK(upper_limiting_temperature(finite).status == LimitResult::Status::none);

  // finite head below a ratio-2 tail starting at n = 5
  std::vector<Level<double>> head{{0.25, 7.0}, {1.0, -1.0}, {2.0, 0.0}, {3.0, 9.0}};
  auto g = GeneratorSpec::table_plus_tail(head, TailRule{{0.0, 1.0}, {0.0, 0.5}, 5});
  auto r = upper_limiting_temperature(g);
  REQUIRE(r.status == LimitResult::Status::found);
  CHECK(r.value == 2.0);
  CHECK(r.start_index == 5);

  // negative-ratio family equilibrates at every positive temperature
  CHECK(upper_limiting_temperature(GeneratorSpec::linear_ratio(1.0, -2.0)).status ==
        LimitResult::Status::none);

  // growing entropies with increasing E/S ratio: no value claimed
  auto inc = GeneratorSpec::table_plus_tail(
      {}, TailRule{{0.0, 1.0}, {1.0, 0.5}, 1});  // E/S = n/(1 + n/2) rising
  CHECK(upper_limiting_temperature(inc).status ==
        LimitResult::Status::inconclusive);
}

TEST_CASE("lower limiting temperature") {
  // E_n = n, S_n = n/2 for n <= -1, capped above by one level
  auto g = GeneratorSpec::head_plus_lower_tail(
      {{0.0, 0.0}}, TailRule{{0.0, 1.0}, {0.0, 0.5}, -1});
  auto r = lower_limiting_temperature(g);
  REQUIRE(r.status == LimitResult::Status::found);
  CHECK(r.value == 2.0);
  CHECK(r.start_index == -1);

  // divergence below, equilibrium above
  CHECK(probe_equilibrium(g, 1.0).verdict == Verdict::diverged);
  CHECK(probe_equilibrium(g, 3.0).verdict == Verdict::converged);
  CHECK(probe_equilibrium(g, 2.0).verdict == Verdict::inconclusive);

  CHECK_THROWS_AS(
      lower_limiting_temperature(GeneratorSpec::linear_ratio(1.0, 2.0)),
      BoundedBelowSpectrumError);
}

TEST_CASE("two-sided spectrum equilibrates on a finite window") {
  auto g = GeneratorSpec::two_sided({{0.0, 0.0}},
                                    TailRule{{0.0, 1.0}, {0.0, 0.25}, 1},
                                    TailRule{{0.0, 1.0}, {0.0, 0.5}, -1});
  auto lo = lower_limiting_temperature(g);
  auto hi = upper_limiting_temperature(g);
  REQUIRE(lo.status == LimitResult::Status::found);
  REQUIRE(hi.status == LimitResult::Status::found);
  CHECK(lo.value == 2.0);
  CHECK(hi.value == 4.0);

  CHECK(probe_equilibrium(g, 3.0).verdict == Verdict::converged);
  CHECK(probe_equilibrium(g, 1.0).verdict == Verdict::diverged);
  CHECK(probe_equilibrium(g, 5.0).verdict == Verdict::diverged);
}

TEST_CASE("equilibrium intervals merge verdicts and snap to analytic bounds") {
  auto g = GeneratorSpec::linear_ratio(1.0, 2.0);
  std::vector<double> grid;
  for (int i = 1; i <= 40; ++i) grid.push_back(0.098 * i);  // avoids 2 exactly
  auto intervals = equilibrium_intervals(g, grid);
  REQUIRE(intervals.size() == 2);
  CHECK(intervals[0].verdict == Verdict::converged);
  CHECK(intervals[0].lo == 0.0);
  CHECK(intervals[0].hi == 2.0);
  CHECK(intervals[1].verdict == Verdict::diverged);
  CHECK(intervals[1].lo == 2.0);
  CHECK(intervals[1].hi == Catch::Approx(3.92));

  auto neg = GeneratorSpec::linear_ratio(1.0, -2.0);
  std::vector<double> ngrid;
  for (int i = 40; i >= 1; --i) ngrid.push_back(-0.098 * i);
  auto nintervals = equilibrium_intervals(neg, ngrid);
  REQUIRE(nintervals.size() == 2);
  CHECK(nintervals[0].verdict == Verdict::converged);
  CHECK(nintervals[0].hi == -2.0);
  CHECK(nintervals[1].verdict == Verdict::diverged);
  CHECK(nintervals[1].lo == -2.0);
  CHECK(nintervals[1].hi == 0.0);  // forbidden interval reaches T = 0

  auto fin = GeneratorSpec::finite({{1.0, 1.0}, {2.0, 3.0}});
  auto fintervals = equilibrium_intervals(fin, grid);
  REQUIRE(fintervals.size() == 1);
  CHECK(fintervals[0].verdict == Verdict::converged);

  CHECK_THROWS_AS(equilibrium_intervals(g, {1.0, 0.5}), BadArgumentError);
  CHECK_THROWS_AS(equilibrium_intervals(g, {-1.0, 1.0}), BadArgumentError);
}

TEST_CASE("below its limit the system behaves like its truncation") {
  auto& gen = rng();
  std::uniform_real_distribution<double> a_dist(0.5, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    double a = a_dist(gen);
    auto g = GeneratorSpec::linear_ratio(1.0, a);
    auto s = g.take(1, 6);
    auto env = build_envelope(s, Domain::positive);
    for (double frac : {0.15, 0.5, 0.85}) {
      double t = frac * a;
      auto rep = observables_at(s, env, t);
      CHECK(rep.energy == s.level(0).energy);
      CHECK(rep.entropy == s.level(0).entropy);
      auto st = probe_equilibrium(g, t);
      REQUIRE(st.verdict == Verdict::converged);
      CHECK(st.free_energy == Catch::Approx(env.eval(t)));
    }
  }
}
