// tropic — command-line front end.
//
// Subcommands: validate, envelope, scan, observables, transitions, gibbs,
// limits, oracle-check.  Spectra are read from JSON or CSV files; numbers are
// kept as exact rationals by default (--float switches to doubles).  Output
// is JSON, or CSV for the flat tables (scan, transitions, gibbs).  Level
// indices in all output are 1-based, counting from the lowest energy.
//
// Exit codes: 0 success, 1 domain error (bad input data, forbidden
// temperature), 2 usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tropic/tropic.hpp"

namespace {

using nlohmann::json;
using namespace tropic;

struct CommonOptions {
  std::string input;
  std::string generator;
  std::string output;
  std::string format = "json";
  bool exact_mode = true;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const CommonOptions& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + opt.output + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

FileFormat sniff_spectrum_format(const std::string& path, const std::string& text) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
    return FileFormat::csv;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
    return c == '{' ? FileFormat::json : FileFormat::csv;
  }
  return FileFormat::json;
}

template <NumberKind R>
Spectrum<R> load_spectrum(const CommonOptions& opt) {
  std::string text = read_file(opt.input);
  return parse_spectrum<R>(text, sniff_spectrum_format(opt.input, text));
}

template <NumberKind R>
json num_json(const R& value) {
  if constexpr (number_traits<R>::exact)
    return to_string(value);
  else
    return value;
}

json set_json(const std::vector<std::size_t>& indices) {
  json arr = json::array();
  for (std::size_t n : indices) arr.push_back(n + 1);
  return arr;
}

std::string set_csv(const std::vector<std::size_t>& indices) {
  std::string out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(indices[i] + 1);
  }
  return out;
}

// "a:b:n" -> n points linearly spaced over [a, b].
std::vector<double> parse_grid(const std::string& text) {
  double a = 0, b = 0;
  long n = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%ld%c", &a, &b, &n, &extra) != 3 || n < 1)
    throw CLI::ValidationError("--grid", "expected a:b:n with n >= 1");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    grid.push_back(a);
    return grid;
  }
  for (long j = 0; j < n; ++j)
    grid.push_back(a + (b - a) * static_cast<double>(j) / static_cast<double>(n - 1));
  return grid;
}

template <NumberKind R>
R parse_temperature(const std::string& text) {
  return number_traits<R>::from_string(text);
}

// ── validate ────────────────────────────────────────────────────────────────

template <NumberKind R>
int run_validate(const CommonOptions& opt) {
  Spectrum<R> s = load_spectrum<R>(opt);
  json out{{"ok", true},
           {"levels", s.size()},
           {"number_kind", number_traits<R>::kind_name}};
  emit(opt, out.dump());
  return 0;
}

// ── envelope ────────────────────────────────────────────────────────────────

template <NumberKind R>
json envelope_json(const PiecewiseLinear<R>& env) {
  json segments = json::array();
  for (std::size_t i = 0; i < env.piece_count(); ++i) {
    auto [lo, hi] = env.piece_bounds(i);
    const std::size_t n = env.piece_level(i);
    segments.push_back({{"level", n + 1},
                        {"E", num_json(env.level(n).energy)},
                        {"S", num_json(env.level(n).entropy)},
                        {"from", lo ? num_json(*lo) : json(nullptr)},
                        {"to", hi ? num_json(*hi) : json(nullptr)}});
  }
  json breakpoints = json::array();
  for (std::size_t i = 0; i < env.breakpoint_count(); ++i) {
    const auto& bp = env.breakpoint(i);
    breakpoints.push_back({{"T", num_json(bp.temperature)},
                           {"minimizing_set", set_json(bp.minimizing_set)}});
  }
  return json{{"domain", domain_name(env.domain())},
              {"segments", segments},
              {"breakpoints", breakpoints}};
}

template <NumberKind R>
int run_envelope(const CommonOptions& opt, const std::string& domain) {
  Spectrum<R> s = load_spectrum<R>(opt);
  Domain d = domain == "negative" ? Domain::negative : Domain::positive;
  emit(opt, envelope_json(build_envelope(s, d)).dump());
  return 0;
}

// ── scan ────────────────────────────────────────────────────────────────────

template <NumberKind R>
int run_scan(const CommonOptions& opt, const std::string& t_min_text,
             const std::string& t_max_text, long steps) {
  Spectrum<R> s = load_spectrum<R>(opt);
  R t_min = parse_temperature<R>(t_min_text);
  R t_max = parse_temperature<R>(t_max_text);
  if (!(t_min <= t_max))
    throw BadArgumentError("--t-min must not exceed --t-max");
  if (t_min <= R(0) && t_max >= R(0))
    throw OutOfDomainError("scan grid must lie in one temperature half-line");
  Domain d = t_min > R(0) ? Domain::positive : Domain::negative;
  PiecewiseLinear<R> env = build_envelope(s, d);

  std::vector<R> temps;
  if (steps < 1) throw BadArgumentError("--t-steps must be at least 1");
  if (steps == 1 || t_min == t_max) {
    temps.push_back(t_min);
  } else {
    for (long j = 0; j < steps; ++j)
      temps.push_back(t_min + (t_max - t_min) * R(static_cast<int>(j)) /
                                  R(static_cast<int>(steps - 1)));
  }
  // Transition temperatures carry the physics; inject any that the uniform
  // grid would miss.
  for (std::size_t i = 0; i < env.breakpoint_count(); ++i) {
    const R& t = env.breakpoint(i).temperature;
    if (t < t_min || t > t_max) continue;
    bool present = false;
    for (const R& existing : temps)
      if (number_traits<R>::tie_equal(existing, t)) {
        present = true;
        break;
      }
    if (!present) temps.push_back(t);
  }
  std::sort(temps.begin(), temps.end());

  std::vector<ObservablesReport<R>> rows;
  rows.reserve(temps.size());
  for (const R& t : temps) rows.push_back(observables_at(s, env, t));

  if (opt.format == "csv") {
    std::string out = "T,F_tr,S_tr,E_tr,singular,minimizing_set\n";
    for (const auto& row : rows) {
      out += to_string(row.temperature);
      out += ',' + to_string(row.free_energy);
      out += ',' + to_string(row.entropy);
      out += ',' + to_string(row.energy);
      out += row.singular ? std::string(",true,") : std::string(",false,");
      out += set_csv(row.minimizing_set);
      out += '\n';
    }
    emit(opt, out);
    return 0;
  }
  json arr = json::array();
  for (const auto& row : rows)
    arr.push_back({{"T", num_json(row.temperature)},
                   {"F_tr", num_json(row.free_energy)},
                   {"S_tr", num_json(row.entropy)},
                   {"E_tr", num_json(row.energy)},
                   {"singular", row.singular},
                   {"minimizing_set", set_json(row.minimizing_set)}});
  emit(opt, json{{"domain", domain_name(d)}, {"rows", arr}}.dump());
  return 0;
}

// ── observables / gibbs ─────────────────────────────────────────────────────

template <NumberKind R>
json report_json(const ObservablesReport<R>& rep) {
  json levels = json::array();
  for (const auto& rec : rep.levels)
    levels.push_back({{"n", rec.index + 1},
                      {"F_n", num_json(rec.free_energy)},
                      {"W_tr", num_json(rec.level_log_prob)},
                      {"w_tr", num_json(rec.state_log_prob)},
                      {"w_tr_positive", rec.state_log_prob_positive}});
  return json{{"T", num_json(rep.temperature)},
              {"F_tr", num_json(rep.free_energy)},
              {"S_tr", num_json(rep.entropy)},
              {"E_tr", num_json(rep.energy)},
              {"singular", rep.singular},
              {"minimizing_set", set_json(rep.minimizing_set)},
              {"levels", levels}};
}

template <NumberKind R>
int run_observables(const CommonOptions& opt, const std::string& t_text) {
  Spectrum<R> s = load_spectrum<R>(opt);
  R t = parse_temperature<R>(t_text);
  if (t == R(0)) throw ZeroTemperatureError("observables are undefined at T = 0");
  PiecewiseLinear<R> env =
      build_envelope(s, t > R(0) ? Domain::positive : Domain::negative);
  emit(opt, report_json(observables_at(s, env, t)).dump());
  return 0;
}

template <NumberKind R>
int run_gibbs(const CommonOptions& opt, const std::string& t_text) {
  Spectrum<R> s = load_spectrum<R>(opt);
  R t = parse_temperature<R>(t_text);
  if (t == R(0)) throw ZeroTemperatureError("probabilities are undefined at T = 0");
  PiecewiseLinear<R> env =
      build_envelope(s, t > R(0) ? Domain::positive : Domain::negative);
  ObservablesReport<R> rep = observables_at(s, env, t);
  if (opt.format == "csv") {
    std::string out = "n,F_n,W_tr,w_tr,w_tr_positive\n";
    for (const auto& rec : rep.levels) {
      out += std::to_string(rec.index + 1);
      out += ',' + to_string(rec.free_energy);
      out += ',' + to_string(rec.level_log_prob);
      out += ',' + to_string(rec.state_log_prob);
      out += rec.state_log_prob_positive ? ",true\n" : ",false\n";
    }
    emit(opt, out);
    return 0;
  }
  json rep_json = report_json(rep);
  emit(opt, json{{"T", rep_json["T"]}, {"levels", rep_json["levels"]}}.dump());
  return 0;
}

// ── transitions ─────────────────────────────────────────────────────────────

template <NumberKind R>
int run_transitions(const CommonOptions& opt) {
  Spectrum<R> s = load_spectrum<R>(opt);
  json pairs = json::array();
  std::string csv = "i,k,T_star,latent_heat,parallel\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t k = i + 1; k < s.size(); ++k) {
      auto t_star = transition_temperature(s.level(i), s.level(k));
      R q = latent_heat(s.level(i), s.level(k));
      pairs.push_back({{"i", i + 1},
                       {"k", k + 1},
                       {"T_star", t_star ? num_json(*t_star) : json(nullptr)},
                       {"latent_heat", num_json(q)},
                       {"parallel", !t_star.has_value()}});
      csv += std::to_string(i + 1) + ',' + std::to_string(k + 1) + ',';
      csv += t_star ? to_string(*t_star) : std::string("inf");
      csv += ',' + to_string(q);
      csv += t_star ? ",false\n" : ",true\n";
    }
  }
  if (opt.format == "csv") {
    emit(opt, csv);
    return 0;
  }
  // Dependence identity over all triples with finite pairwise transitions:
  // (S_i-S_k) T*_ik + (S_k-S_l) T*_kl + (S_l-S_i) T*_li = 0.
  json triples = json::array();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t k = i + 1; k < s.size(); ++k)
      for (std::size_t l = k + 1; l < s.size(); ++l) {
        auto t_ik = transition_temperature(s.level(i), s.level(k));
        auto t_kl = transition_temperature(s.level(k), s.level(l));
        auto t_li = transition_temperature(s.level(l), s.level(i));
        if (!t_ik || !t_kl || !t_li) continue;
        R residual = (s.level(i).entropy - s.level(k).entropy) * *t_ik +
                     (s.level(k).entropy - s.level(l).entropy) * *t_kl +
                     (s.level(l).entropy - s.level(i).entropy) * *t_li;
        triples.push_back({{"i", i + 1},
                           {"k", k + 1},
                           {"l", l + 1},
                           {"residual", num_json(residual)}});
      }
  emit(opt, json{{"pairs", pairs}, {"triple_residuals", triples}}.dump());
  return 0;
}

// ── limits ──────────────────────────────────────────────────────────────────

const char* limit_status_name(LimitResult::Status s) {
  switch (s) {
    case LimitResult::Status::found: return "found";
    case LimitResult::Status::none: return "none";
    default: return "inconclusive";
  }
}

int run_limits(const CommonOptions& opt, const std::string& grid_text,
               long horizon) {
  GeneratorSpec g = parse_generator_json(read_file(opt.generator));
  std::vector<double> grid = parse_grid(grid_text);

  json out;
  if (!grid.empty()) {
    auto intervals = equilibrium_intervals(g, grid, horizon);
    json arr = json::array();
    for (const auto& iv : intervals)
      arr.push_back({{"from", iv.lo}, {"to", iv.hi},
                     {"verdict", verdict_name(iv.verdict)}});
    out["intervals"] = arr;
  }
  LimitResult up = upper_limiting_temperature(g);
  out["T_S_plus"] =
      up.status == LimitResult::Status::found ? json(up.value) : json(nullptr);
  out["T_S_plus_status"] = limit_status_name(up.status);
  if (up.status == LimitResult::Status::found)
    out["T_S_plus_index"] = up.start_index;
  if (!g.bounded_below()) {
    LimitResult down = lower_limiting_temperature(g);
    out["T_S_minus"] = down.status == LimitResult::Status::found
                           ? json(down.value)
                           : json(nullptr);
    out["T_S_minus_status"] = limit_status_name(down.status);
    if (down.status == LimitResult::Status::found)
      out["T_S_minus_index"] = down.start_index;
  }
  emit(opt, out.dump());
  return 0;
}

// ── oracle-check ────────────────────────────────────────────────────────────

// Deterministic non-singular sample temperatures, one inside every segment.
inline std::vector<double> sample_temperatures(const PiecewiseLinear<double>& env) {
  std::vector<double> ts;
  for (std::size_t i = 0; i < env.piece_count(); ++i) {
    auto [lo, hi] = env.piece_bounds(i);
    if (lo && hi)
      ts.push_back(0.5 * (*lo + *hi));
    else if (lo)  // positive domain, (lo, +inf)
      ts.push_back(*lo == 0.0 ? 1.0 : 2.0 * *lo);
    else  // negative domain, (-inf, hi)
      ts.push_back(*hi == 0.0 ? -1.0 : 2.0 * *hi);
  }
  return ts;
}

struct CheckResult {
  std::string name;
  bool pass;
  double max_error;
  double bound;
};

template <NumberKind R>
int run_oracle_check(const CommonOptions& opt, std::vector<double> k_schedule) {
  Spectrum<R> s = load_spectrum<R>(opt);
  Spectrum<double> sd = to_floating(s);
  if (k_schedule.empty()) k_schedule = default_k_schedule();

  PiecewiseLinear<double> pos = build_envelope(sd, Domain::positive);
  PiecewiseLinear<double> neg = build_envelope(sd, Domain::negative);
  const double log_n = std::log(static_cast<double>(s.size()));
  std::vector<CheckResult> checks;

  auto eval_tr = [](const PiecewiseLinear<double>& env, double t) {
    return env.eval(t);
  };

  // Normalization and the free-energy identity at every sampled (k, T).
  {
    double worst = 0;
    for (const auto* env : {&pos, &neg})
      for (double t : sample_temperatures(*env))
        for (double k : k_schedule) {
          auto w = classical_level_prob(sd, k, t);
          double sum = 0;
          for (double x : w) sum += x;
          worst = std::max(worst, std::fabs(sum - 1.0));
        }
    checks.push_back({"level probabilities sum to 1", worst <= 1e-12, worst, 1e-12});
  }
  {
    double worst = 0;
    for (double t : sample_temperatures(pos))
      for (double k : k_schedule) {
        double f = classical_free_energy(sd, k, t);
        double ident = -k * t * log_partition(sd, k, t);
        worst = std::max(worst, std::fabs(f - ident));
      }
    checks.push_back({"F = -kT ln Z", worst <= 1e-15, worst, 1e-15});
  }
  // Tropical agreement |F(k,T) - F_tr(T)| <= k |T| ln n + 1e-12 and halving.
  {
    double worst = 0;
    bool shrink_ok = true;
    const double k = 1e-3;
    for (const auto* env : {&pos, &neg})
      for (double t : sample_temperatures(*env)) {
        double f_tr = eval_tr(*env, t);
        double err = std::fabs(classical_free_energy(sd, k, t) - f_tr);
        double err_half = std::fabs(classical_free_energy(sd, k / 2, t) - f_tr);
        double slack = err - k * std::fabs(t) * log_n;
        worst = std::max(worst, slack);
        if (!(err_half <= 0.6 * err || (err <= 1e-12 && err_half <= 1e-12)))
          shrink_ok = false;
      }
    checks.push_back({"free energy within k|T|ln(n) of the envelope",
                      worst <= 1e-12 && shrink_ok, std::max(worst, 0.0), 1e-12});
  }
  // Probability limit k ln W_n -> level log-probability.
  {
    double worst = 0;
    const double k = 1e-3;
    for (const auto* env : {&pos, &neg})
      for (double t : sample_temperatures(*env)) {
        double log_z = log_partition(sd, k, t);
        for (std::size_t n = 0; n < sd.size(); ++n) {
          double k_log_w = k * (-sd.free_energy(n, t) / (k * t) - log_z);
          double f_tr = eval_tr(*env, t);
          double w_tr = (f_tr - sd.free_energy(n, t)) / t;
          worst = std::max(worst,
                           std::fabs(k_log_w - w_tr) - k * log_n);
        }
      }
    checks.push_back({"k ln W_n within k ln(n) of tropical log-probability",
                      worst <= 1e-12, std::max(worst, 0.0), 1e-12});
  }
  // Singular points: equal weights 1/m and averaged entropy.
  {
    double worst_w = 0, worst_s = 0;
    const double k = 1e-4;
    for (const auto* env : {&pos, &neg})
      for (std::size_t b = 0; b < env->breakpoint_count(); ++b) {
        const auto& bp = env->breakpoint(b);
        double t = number_traits<R>::to_double(bp.temperature);
        auto w = classical_level_prob(sd, k, t);
        const double m = static_cast<double>(bp.minimizing_set.size());
        double s_mean = 0;
        for (std::size_t n : bp.minimizing_set) {
          worst_w = std::max(worst_w, std::fabs(w[n] - 1.0 / m));
          s_mean += sd.level(n).entropy / m;
        }
        worst_s = std::max(worst_s,
                           std::fabs(classical_entropy(sd, k, t) - s_mean));
      }
    checks.push_back({"breakpoint weights equal 1/m", worst_w <= 1e-6, worst_w, 1e-6});
    checks.push_back(
        {"breakpoint entropy equals minimizing-set mean", worst_s <= 1e-4,
         worst_s, 1e-4});
  }
  // Entropy routes: S = (<E> - F)/T vs Gibbs average, and S = -dF/dT.
  {
    double worst = 0;
    for (const auto* env : {&pos, &neg})
      for (double t : sample_temperatures(*env))
        for (double k : k_schedule)
          worst = std::max(worst, std::fabs(classical_entropy(sd, k, t) -
                                            classical_entropy_gibbs(sd, k, t)));
    checks.push_back({"entropy closed form matches Gibbs average",
                      worst <= 1e-10, worst, 1e-10});
  }
  {
    double worst = 0;
    const double k = 1e-3;
    for (const auto* env : {&pos, &neg})
      for (double t : sample_temperatures(*env)) {
        double h = 1e-6 * std::fabs(t);
        double dfdt = (classical_free_energy(sd, k, t + h) -
                       classical_free_energy(sd, k, t - h)) /
                      (2 * h);
        double s_cl = classical_entropy(sd, k, t);
        double rel = std::fabs(-dfdt - s_cl) /
                     std::max(1e-30, std::fabs(s_cl));
        worst = std::max(worst, rel);
      }
    checks.push_back({"entropy equals -dF/dT (relative)", worst <= 1e-6, worst, 1e-6});
  }

  bool all_pass = true;
  json arr = json::array();
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    arr.push_back({{"name", c.name},
                   {"pass", c.pass},
                   {"measured_error", c.max_error},
                   {"bound", c.bound}});
  }
  emit(opt, json{{"pass", all_pass}, {"checks", arr}}.dump());
  return all_pass ? 0 : 1;
}

int dispatch(const std::function<int()>& exact_run,
             const std::function<int()>& float_run, bool exact_mode) {
  return exact_mode ? exact_run() : float_run();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tropical-limit thermodynamics of energy-level spectra"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string domain = "positive";
  std::string t_text, t_min_text, t_max_text, grid_text = "";
  long t_steps = 0, horizon = 10000;
  std::vector<double> k_schedule;
  bool float_flag = false, exact_flag = false;

  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    if (needs_input)
      cmd->add_option("--input", opt.input, "spectrum file (JSON or CSV)")
          ->required();
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output", opt.output, "write output to a file");
    cmd->add_flag("--exact", exact_flag, "exact rational numbers (default)");
    cmd->add_flag("--float", float_flag, "floating-point numbers");
  };

  CLI::App* validate = app.add_subcommand("validate", "parse and validate a spectrum");
  add_common(validate, true);

  CLI::App* envelope = app.add_subcommand("envelope", "free-energy envelope pieces");
  add_common(envelope, true);
  envelope->add_option("--domain", domain, "temperature half-line")
      ->check(CLI::IsMember({"positive", "negative"}));

  CLI::App* scan = app.add_subcommand("scan", "observables over a temperature grid");
  add_common(scan, true);
  scan->add_option("--t-min", t_min_text, "grid start")->required();
  scan->add_option("--t-max", t_max_text, "grid end")->required();
  scan->add_option("--t-steps", t_steps, "number of grid points")->required();

  CLI::App* observables =
      app.add_subcommand("observables", "full report at one temperature");
  add_common(observables, true);
  observables->add_option("--temperature", t_text, "temperature")->required();

  CLI::App* transitions =
      app.add_subcommand("transitions", "pairwise transition temperatures");
  add_common(transitions, true);

  CLI::App* gibbs = app.add_subcommand("gibbs", "per-level log-probabilities");
  add_common(gibbs, true);
  gibbs->add_option("--temperature", t_text, "temperature")->required();

  CLI::App* limits = app.add_subcommand("limits", "limiting temperatures of a generator");
  limits->add_option("--generator", opt.generator, "generator JSON file")->required();
  limits->add_option("--grid", grid_text, "temperature grid a:b:n")->required();
  limits->add_option("--horizon", horizon, "certificate sampling horizon");
  limits->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json"}));
  limits->add_option("--output", opt.output, "write output to a file");

  CLI::App* oracle =
      app.add_subcommand("oracle-check", "finite-k oracle invariants for a spectrum");
  add_common(oracle, true);
  double k_single = 0;
  oracle->add_option("--k", k_single, "base k (expands to k, k/2, k/4, k/8)");
  oracle->add_option("--k-schedule", k_schedule, "decreasing k values")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << std::endl;
    return 2;
  }

  if (exact_flag && float_flag) {
    std::cerr << "--exact and --float are mutually exclusive" << std::endl;
    return 2;
  }
  opt.exact_mode = !float_flag;

  const bool csv = opt.format == "csv";
  if (csv && !(scan->parsed() || transitions->parsed() || gibbs->parsed())) {
    std::cerr << "--format csv is only available for scan, transitions, gibbs"
              << std::endl;
    return 2;
  }

  try {
    if (validate->parsed())
      return dispatch([&] { return run_validate<Rational>(opt); },
                      [&] { return run_validate<double>(opt); }, opt.exact_mode);
    if (envelope->parsed())
      return dispatch([&] { return run_envelope<Rational>(opt, domain); },
                      [&] { return run_envelope<double>(opt, domain); },
                      opt.exact_mode);
    if (scan->parsed())
      return dispatch(
          [&] { return run_scan<Rational>(opt, t_min_text, t_max_text, t_steps); },
          [&] { return run_scan<double>(opt, t_min_text, t_max_text, t_steps); },
          opt.exact_mode);
    if (observables->parsed())
      return dispatch([&] { return run_observables<Rational>(opt, t_text); },
                      [&] { return run_observables<double>(opt, t_text); },
                      opt.exact_mode);
    if (transitions->parsed())
      return dispatch([&] { return run_transitions<Rational>(opt); },
                      [&] { return run_transitions<double>(opt); }, opt.exact_mode);
    if (gibbs->parsed())
      return dispatch([&] { return run_gibbs<Rational>(opt, t_text); },
                      [&] { return run_gibbs<double>(opt, t_text); }, opt.exact_mode);
    if (limits->parsed()) return run_limits(opt, grid_text, horizon);
    if (oracle->parsed()) {
      if (k_single > 0 && k_schedule.empty())
        k_schedule = {k_single, k_single / 2, k_single / 4, k_single / 8};
      return dispatch([&] { return run_oracle_check<Rational>(opt, k_schedule); },
                      [&] { return run_oracle_check<double>(opt, k_schedule); },
                      opt.exact_mode);
    }
  } catch (const Error& e) {
    std::cerr << nlohmann::json{
                     {"error", {{"code", e.code()}, {"message", e.what()}}}}
                     .dump()
              << std::endl;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{
                     {"error", {{"code", "internal"}, {"message", e.what()}}}}
                     .dump()
              << std::endl;
    return 1;
  }
  return 2;
}
