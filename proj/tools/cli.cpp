// Copyright 2026 The Repeated Sales Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "repeated_sales/distributions.hpp"
#include "repeated_sales/finite_horizon.hpp"
#include "repeated_sales/games.hpp"
#include "repeated_sales/infinite_horizon.hpp"
#include "repeated_sales/numerics.hpp"
#include "repeated_sales/simulator.hpp"
#include "repeated_sales/two_round.hpp"
#include "repeated_sales/verifier.hpp"

namespace rsales::cli {
namespace {

using nlohmann::json;

// Rounds to 12 significant digits; the shortest round-trip form nlohmann
// prints then has at most 12 digits. Non-finite values become null.
json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_number(x));
}

std::string timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

json manifest(const std::string& subcommand, const json& config) {
  return {{"subcommand", subcommand},
          {"config", config},
          {"version", kToolVersion},
          {"timestamp", timestamp()}};
}

std::uint64_t default_seed() {
  const char* env = std::getenv("REPEATED_SALES_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long seed = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return seed;
  } catch (const std::exception&) {
    throw ConfigError(std::string("REPEATED_SALES_SEED is not an unsigned "
                                  "integer: ") + env);
  }
}

ValueDistribution load_distribution(const std::string& source) {
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') {
    return ValueDistribution::from_json(source);
  }
  std::ifstream in(source);
  if (!in) throw ConfigError("cannot read distribution file " + source);
  std::stringstream text;
  text << in.rdbuf();
  return ValueDistribution::from_json(text.str());
}

struct Range {
  double low = 0.0;
  double high = 0.0;
  int steps = 0;
};

Range parse_range(const std::string& text) {
  Range r;
  char tail = '\0';
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.low, &r.high, &r.steps,
                  &tail) != 3 ||
      r.steps < 1 || !(r.low <= r.high)) {
    throw ConfigError("bad range '" + text +
                      "', expected LOW:HIGH:STEPS with LOW <= HIGH, STEPS >= 1");
  }
  return r;
}

std::vector<double> range_points(const Range& r, bool log_spaced) {
  if (r.steps == 1) return {r.low};
  if (log_spaced) {
    if (!(r.low > 0.0)) throw ConfigError("log spacing needs LOW > 0");
    return logspace(r.low, r.high, static_cast<std::size_t>(r.steps));
  }
  return linspace(r.low, r.high, static_cast<std::size_t>(r.steps));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("I/O error: cannot write " + path);
  file << text;
  if (!file) throw std::runtime_error("I/O error: cannot write " + path);
}

// Flags shared by every subcommand that builds a game.
struct GameFlags {
  std::string game;
  std::string dist;
  double delta = 0.3;
  int rounds = 2;
  int power = 0;

  void add_to(CLI::App* app, bool game_required) {
    auto* g = app->add_option("--game", game,
                              "two-round | finite-partial (alias finite) | "
                              "finite-no-commitment | infinite-partial | "
                              "infinite-zero");
    if (game_required) g->required();
    app->add_option("--dist", dist, "distribution JSON file or inline JSON");
    app->add_option("--delta", delta, "per-round stopping probability");
    app->add_option("--n", rounds, "number of rounds");
    app->add_option("--k,--power-law", power, "power-law exponent");
  }

  std::string canonical_game() const {
    return game == "finite" ? "finite-partial" : game;
  }

  GameOptions options() const {
    GameOptions o;
    o.name = canonical_game();
    if (!dist.empty()) o.dist = load_distribution(dist);
    o.delta = delta;
    o.rounds = rounds;
    o.power = power;
    return o;
  }

  json echo() const {
    json j{{"game", canonical_game()}};
    const std::string g = canonical_game();
    if (!dist.empty()) j["dist"] = json::parse(load_distribution(dist).to_json());
    if (g.rfind("infinite", 0) == 0) j["delta"] = num(delta);
    if (g.rfind("finite", 0) == 0) j["n"] = rounds;
    if (g == "finite-partial") j["k"] = power;
    return j;
  }
};

bool is_infinite(const std::string& game) {
  return game.rfind("infinite", 0) == 0;
}

double benchmark_of(const ValueDistribution& dist, const Regime& regime) {
  const double one = monopoly_price(dist).revenue;
  return regime.infinite() ? one / regime.delta() : regime.rounds() * one;
}

double tree_revenue(const Game& game) {
  const double low = game.prior.support_low();
  const double high = game.prior.support_high();
  return expected_revenue_tree(game, game.regime, initial_node(game),
                               {low, high, false})
      .revenue;
}

// Headline numbers of one equilibrium, shared by report and sweep.
json summarize(const GameOptions& o,
               const std::vector<FiniteRecursionRow>* rows = nullptr) {
  json s{{"game", o.name}};
  if (o.name == "two-round") {
    const ValueDistribution& dist = o.dist.value();
    const TwoRoundEquilibrium eq = solve_two_round(dist);
    const double bench = benchmark_of(dist, Regime::fixed_horizon(2));
    s.update({{"threshold", num(eq.t1)},
              {"price", num(eq.p1)},
              {"revenue", num(eq.revenue)},
              {"benchmark", num(bench)},
              {"ratio", num(eq.revenue / bench)},
              {"exists", true},
              {"p1", num(eq.p1)},
              {"t1", num(eq.t1)},
              {"p20", num(eq.p20)},
              {"p21", num(eq.p21)},
              {"p1_equals_lower_support", eq.p1_equals_lower_support}});
    return s;
  }
  if (o.name == "finite-partial") {
    if (o.rounds < 1) throw ConfigError("--n must be >= 1");
    if (o.power < 0) throw ConfigError("--k must be >= 0");
    std::vector<FiniteRecursionRow> own;
    if (rows == nullptr) {
      own = o.power == 0 ? solve_partial_uniform(o.rounds)
                         : solve_partial_power_law(o.rounds, o.power);
      rows = &own;
    }
    const FiniteRecursionRow& r = rows->at(static_cast<std::size_t>(o.rounds - 1));
    const double bench = benchmark_of(ValueDistribution::power_law(o.power),
                                      Regime::fixed_horizon(o.rounds));
    s.update({{"threshold", num(r.threshold)},
              {"price", num(r.price)},
              {"revenue", num(r.revenue)},
              {"benchmark", num(bench)},
              {"ratio", num(r.revenue / bench)},
              {"exists", true},
              {"top_utility", num(r.top_utility)}});
    return s;
  }
  if (o.name == "finite-no-commitment") {
    if (!o.dist) throw ConfigError("game finite-no-commitment needs --dist");
    if (o.rounds < 1) throw ConfigError("--n must be >= 1");
    const ValueDistribution& dist = *o.dist;
    const ThresholdExistenceReport rep = threshold_pbe_exists(dist, o.rounds);
    const double bench = benchmark_of(dist, Regime::fixed_horizon(o.rounds));
    json prices = json::array();
    for (double p : rep.equilibrium_prices) prices.push_back(num(p));
    s.update({{"exists", rep.exists},
              {"two_round_p1", num(rep.two_round_p1)},
              {"lower_support_tied", rep.lower_support_tied},
              {"equilibrium_prices", prices},
              {"benchmark", num(bench)}});
    double revenue = std::nan("");
    double threshold = std::nan("");
    if (rep.exists && o.rounds == 2) {
      const TwoRoundEquilibrium eq = solve_two_round(dist);
      revenue = eq.revenue;
      threshold = eq.t1;
    } else if (rep.exists) {
      const Game g = finite_no_commitment_game(dist, o.rounds);
      revenue = tree_revenue(g);
      const GameNode root = initial_node(g);
      threshold = g.buyer->threshold(root.buyer, posted_price(g, root));
    }
    s.update({{"threshold", num(threshold)},
              {"price", rep.exists ? num(rep.equilibrium_prices.front())
                                   : json(nullptr)},
              {"revenue", num(revenue)},
              {"ratio", num(revenue / bench)}});
    return s;
  }
  if (o.name == "infinite-partial") {
    const InfiniteEquilibrium eq = infinite_equilibrium(o.delta);
    s.update({{"delta", num(o.delta)},
              {"threshold", num(eq.threshold)},
              {"price", num(eq.price)},
              {"revenue", num(eq.revenue)},
              {"benchmark", num(eq.benchmark)},
              {"ratio", num(eq.ratio)},
              {"exists", true},
              {"limiting_ratio", num(limiting_ratio())}});
    return s;
  }
  if (o.name == "infinite-zero") {
    const Game g = infinite_zero_game(o.delta);
    const GameNode root = initial_node(g);
    const double price = posted_price(g, root);
    const double revenue = tree_revenue(g);
    const double bench = benchmark_of(g.prior, g.regime);
    s.update({{"delta", num(o.delta)},
              {"threshold", num(g.buyer->threshold(root.buyer, price))},
              {"price", num(price)},
              {"revenue", num(revenue)},
              {"benchmark", num(bench)},
              {"ratio", num(revenue / bench)},
              {"exists", true}});
    return s;
  }
  throw ConfigError("unknown game '" + o.name + "'");
}

json report_json(const DeviationReport& r) {
  const Witness& w = r.witness;
  json history = json::array();
  for (const HistoryStep& step : w.history) {
    history.push_back(
        {{"price", num(step.price)}, {"decision", decision_name(step.decision)}});
  }
  json witness{{"history", history}};
  if (r.role == CheckRole::kBuyer) {
    json ds = json::array();
    for (Decision d : w.decisions) ds.push_back(decision_name(d));
    witness.update({{"price", num(w.price)}, {"value", num(w.value)},
                    {"decisions", ds}});
  } else if (r.role == CheckRole::kSeller) {
    witness["price"] = num(w.price);
  } else {
    witness["consistent"] =
        w.consistent_set_empty
            ? json(nullptr)
            : json::array({num(w.consistent_low), num(w.consistent_high)});
    witness["belief"] =
        w.belief_point_mass
            ? json("point mass at top")
            : json::array({num(w.belief_low), num(w.belief_high)});
  }
  return {{"role", role_name(r.role)},
          {"history_class", r.history_class},
          {"deviation", r.deviation},
          {"gain", num(r.gain)},
          {"epsilon", num(r.epsilon)},
          {"budget", num(r.budget)},
          {"verdict", r.pass ? "pass" : "fail"},
          {"cases", r.cases},
          {"witness", witness}};
}

struct VerifyFlags {
  std::vector<std::string> perturb;
  VerifyOptions options;

  void add_to(CLI::App* app) {
    app->add_option("--perturb", perturb,
                    "buyer-threshold:X | root-price:X | skip-belief-update");
    app->add_option("--epsilon", options.epsilon, "allowed gain");
    app->add_option("--value-grid", options.value_grid, "buyer value grid");
    app->add_option("--lookahead", options.lookahead, "buyer lookahead L");
    app->add_option("--price-grid", options.price_grid, "seller price grid");
    app->add_option("--depth", options.depth, "seller state depth D");
    app->add_option("--trace-length", options.trace_length,
                    "belief trace length K");
    app->add_option("--belief-grid", options.belief_grid, "belief value grid");
  }

  json echo() const {
    return {{"perturb", perturb},
            {"epsilon", num(options.epsilon)},
            {"value_grid", options.value_grid},
            {"lookahead", options.lookahead},
            {"price_grid", options.price_grid},
            {"depth", options.depth},
            {"trace_length", options.trace_length},
            {"belief_grid", options.belief_grid}};
  }

  // Runs every check; the bool is the overall verdict.
  std::pair<json, bool> run(const Game& base) const {
    Game game = base;
    for (const std::string& text : perturb) {
      game = rsales::perturb(game, Perturbation::parse(text));
    }
    json reports = json::array();
    bool pass = true;
    for (const DeviationReport& r : verify_all(game, game.regime, options)) {
      reports.push_back(report_json(r));
      pass = pass && r.pass;
    }
    const BoundCheck bound =
        check_revenue_upper_bound(tree_revenue(game), game.prior, game.regime);
    pass = pass && bound.pass;
    return {{{"game", game.name},
             {"reports", reports},
             {"revenue_bound",
              {{"revenue", num(bound.revenue)},
               {"benchmark", num(bound.benchmark)},
               {"verdict", bound.pass ? "pass" : "fail"}}},
             {"pass", pass}},
            pass};
  }
};

std::string csv_number(double x) {
  return std::isfinite(x) ? format_number(x) : std::string("nan");
}

double json_number(const json& j) {
  return j.is_null() ? std::nan("") : j.get<double>();
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Equilibria of repeated posted-price sales: solve, simulate, "
               "verify and sweep."};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  int exit_code = kExitOk;

  // solve-two-round
  auto* two = app.add_subcommand("solve-two-round",
                                 "two-round equilibrium for a distribution");
  std::string two_dist;
  int two_grid = kDefaultGridPoints;
  two->add_option("--dist", two_dist, "distribution JSON file or inline JSON")
      ->required();
  two->add_option("--grid", two_grid, "argmax grid points");
  two->callback([&] {
    if (two_grid < 3) throw ConfigError("--grid must be >= 3");
    const ValueDistribution dist = load_distribution(two_dist);
    const TwoRoundEquilibrium eq = solve_two_round(dist, two_grid);
    json j{{"manifest",
            manifest("solve-two-round",
                     {{"dist", json::parse(dist.to_json())}, {"grid", two_grid}})},
           {"p1", num(eq.p1)},
           {"t1", num(eq.t1)},
           {"p20", num(eq.p20)},
           {"p21", num(eq.p21)},
           {"revenue", num(eq.revenue)},
           {"monopoly_price", num(eq.monopoly_price)},
           {"monopoly_revenue", num(eq.monopoly_revenue)},
           {"p1_equals_lower_support", eq.p1_equals_lower_support},
           {"lower_support_tied", eq.lower_support_tied}};
    out << j.dump(2) << '\n';
  });

  // solve-finite
  auto* fin = app.add_subcommand("solve-finite",
                                 "partial-commitment recursion rows 1..n");
  int fin_n = 1;
  int fin_k = 0;
  std::string fin_csv;
  fin->add_option("--n", fin_n, "rounds")->required();
  fin->add_option("--power-law,--k", fin_k, "power-law exponent (0: uniform)");
  fin->add_option("--csv", fin_csv, "output path (default stdout)");
  fin->callback([&] {
    if (fin_n < 1) throw ConfigError("--n must be >= 1");
    if (fin_k < 0) throw ConfigError("--power-law must be >= 0");
    const auto rows = fin_k == 0 ? solve_partial_uniform(fin_n)
                                 : solve_partial_power_law(fin_n, fin_k);
    const std::vector<double> gaps = asymptotic_gaps(fin_n);
    std::ostringstream csv;
    csv << "# manifest "
        << manifest("solve-finite", {{"n", fin_n}, {"power_law", fin_k}}).dump()
        << '\n'
        << "n,p,t,R,u,residual\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const FiniteRecursionRow& r = rows[i];
      csv << r.n << ',' << csv_number(r.price) << ','
          << csv_number(r.threshold) << ',' << csv_number(r.revenue) << ','
          << csv_number(r.top_utility) << ',' << csv_number(gaps[i]) << '\n';
    }
    if (fin_csv.empty()) {
      out << csv.str();
    } else {
      write_text(fin_csv, csv.str());
    }
  });

  // solve-infinite
  auto* inf = app.add_subcommand("solve-infinite",
                                 "infinite-horizon partial-commitment solution");
  double inf_delta = 0.3;
  std::string inf_sweep;
  std::string inf_csv;
  bool inf_log = false;
  auto* inf_delta_opt = inf->add_option("--delta", inf_delta, "delta in (0, 1]");
  inf->add_option("--sweep", inf_sweep, "LOW:HIGH:STEPS");
  inf->add_flag("--log", inf_log, "log-spaced sweep");
  inf->add_option("--csv", inf_csv, "sweep output path (default stdout)");
  inf->callback([&] {
    auto row = [](double d) {
      const InfiniteEquilibrium eq = infinite_equilibrium(d);
      return eq;
    };
    if (inf_sweep.empty()) {
      if (inf_delta_opt->count() == 0) throw ConfigError("need --delta or --sweep");
      const InfiniteEquilibrium eq = row(inf_delta);
      json j{{"manifest", manifest("solve-infinite", {{"delta", num(inf_delta)}})},
             {"delta", num(eq.delta)},
             {"t", num(eq.threshold)},
             {"p", num(eq.price)},
             {"R", num(eq.revenue)},
             {"benchmark", num(eq.benchmark)},
             {"ratio", num(eq.ratio)}};
      out << j.dump(2) << '\n';
      return;
    }
    const std::vector<double> deltas =
        range_points(parse_range(inf_sweep), inf_log);
    std::vector<InfiniteEquilibrium> eqs(deltas.size());
    parallel_for(deltas.size(), [&](std::size_t i) { eqs[i] = row(deltas[i]); });
    std::ostringstream csv;
    csv << "# manifest "
        << manifest("solve-infinite", {{"sweep", inf_sweep}, {"log", inf_log}})
               .dump()
        << '\n'
        << "delta,t,p,R,benchmark,ratio\n";
    for (const InfiniteEquilibrium& eq : eqs) {
      csv << csv_number(eq.delta) << ',' << csv_number(eq.threshold) << ','
          << csv_number(eq.price) << ',' << csv_number(eq.revenue) << ','
          << csv_number(eq.benchmark) << ',' << csv_number(eq.ratio) << '\n';
    }
    if (inf_csv.empty()) {
      out << csv.str();
    } else {
      write_text(inf_csv, csv.str());
    }
  });

  // simulate
  auto* sim = app.add_subcommand("simulate", "expected revenue of a game");
  GameFlags sim_game;
  sim_game.add_to(sim, true);
  std::string sim_method = "quadrature";
  std::string sim_regime = "discounted";
  std::int64_t sim_samples = 100000;
  int sim_panels = 10000;
  std::optional<std::uint64_t> sim_seed;
  std::string sim_transcript;
  sim->add_option("--method", sim_method, "quadrature | mc")
      ->check(CLI::IsMember({"quadrature", "mc"}));
  sim->add_option("--regime", sim_regime,
                  "discounted | geometric (infinite games)")
      ->check(CLI::IsMember({"discounted", "geometric"}));
  sim->add_option("--samples", sim_samples, "Monte Carlo samples");
  sim->add_option("--panels", sim_panels, "quadrature panels");
  sim->add_option("--seed", sim_seed, "random seed");
  sim->add_option("--transcript", sim_transcript, "v=VALUE: also play one buyer");
  sim->callback([&] {
    const GameOptions o = sim_game.options();
    const Game game = make_game(o);
    SimulationConfig config;
    config.regime = game.regime;
    if (is_infinite(o.name) && sim_regime == "geometric") {
      config.regime =
          Regime::geometric_stopping(o.delta, game.prior.support_high());
    }
    config.method = sim_method == "mc" ? Method::kMonteCarlo : Method::kQuadrature;
    config.samples = sim_samples;
    config.panels = sim_panels;
    config.seed = sim_seed.value_or(default_seed());
    json echo = sim_game.echo();
    echo.update({{"method", sim_method},
                 {"regime", config.regime.describe()},
                 {"samples", sim_samples},
                 {"panels", sim_panels},
                 {"seed", config.seed}});
    const ExpectedValue ev = expected_revenue(game, config);
    json j{{"manifest", manifest("simulate", echo)},
           {"revenue", num(ev.value)},
           {"error", num(ev.error)},
           {"truncation_tail", num(ev.truncation_tail)},
           {"truncation_rounds", config.regime.rounds()},
           {"evaluations", ev.evaluations},
           {"benchmark", num(benchmark_of(game.prior, config.regime))}};
    if (!sim_transcript.empty()) {
      if (sim_transcript.rfind("v=", 0) != 0) {
        throw ConfigError("--transcript expects v=VALUE");
      }
      double v = 0.0;
      try {
        v = std::stod(sim_transcript.substr(2));
      } catch (const std::exception&) {
        throw ConfigError("--transcript expects v=VALUE");
      }
      PhiloxStream rng(config.seed, 0);
      const Transcript t = playout(game, v, config.regime, &rng);
      json rounds = json::array();
      for (const RoundRecord& r : t.rounds) {
        rounds.push_back({{"round", r.round},
                          {"price", num(r.price)},
                          {"decision", decision_name(r.decision)},
                          {"weight", num(r.weight)}});
      }
      j["transcript"] = {{"value", num(t.value)},
                         {"revenue", num(t.revenue)},
                         {"buyer_utility", num(t.buyer_utility)},
                         {"rounds", rounds}};
    }
    out << j.dump(2) << '\n';
  });

  // verify
  auto* ver = app.add_subcommand("verify", "epsilon-equilibrium certificates");
  GameFlags ver_game;
  VerifyFlags ver_flags;
  ver_game.add_to(ver, true);
  ver_flags.add_to(ver);
  ver->callback([&] {
    const Game game = make_game(ver_game.options());
    json echo = ver_game.echo();
    echo.update(ver_flags.echo());
    auto [j, pass] = ver_flags.run(game);
    j["manifest"] = manifest("verify", echo);
    out << j.dump(2) << '\n';
    if (!pass) exit_code = kExitVerificationFailed;
  });

  // sweep
  auto* swp = app.add_subcommand("sweep", "headline numbers over delta or n");
  GameFlags swp_game;
  std::string swp_parameter;
  std::string swp_range;
  std::string swp_output;
  bool swp_log = false;
  swp_game.add_to(swp, true);
  swp->add_option("--parameter", swp_parameter, "delta | n")
      ->required()
      ->check(CLI::IsMember({"delta", "n"}));
  swp->add_option("--range", swp_range, "LOW:HIGH:STEPS")->required();
  swp->add_flag("--log", swp_log, "log-spaced points");
  swp->add_option("--output", swp_output, "CSV path (default stdout)");
  swp->callback([&] {
    const GameOptions base = swp_game.options();
    const bool by_delta = swp_parameter == "delta";
    if (by_delta != is_infinite(base.name) || base.name == "two-round") {
      throw ConfigError("parameter " + swp_parameter +
                        " does not apply to game " + base.name);
    }
    std::vector<double> points = range_points(parse_range(swp_range), swp_log);
    if (!by_delta) {
      for (double& p : points) p = std::round(p);
      points.erase(std::unique(points.begin(), points.end()), points.end());
      if (points.front() < 1.0) throw ConfigError("n must be >= 1");
    }
    std::vector<FiniteRecursionRow> rows;
    if (base.name == "finite-partial") {
      const int top = static_cast<int>(points.back());
      rows = base.power == 0 ? solve_partial_uniform(top)
                             : solve_partial_power_law(top, base.power);
    }
    std::vector<json> results(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
      GameOptions o = base;
      if (by_delta) {
        o.delta = points[i];
      } else {
        o.rounds = static_cast<int>(points[i]);
      }
      results[i] = summarize(o, rows.empty() ? nullptr : &rows);
    });
    json echo = swp_game.echo();
    echo.erase(swp_parameter);
    echo.update({{"parameter", swp_parameter}, {"range", swp_range},
                 {"log", swp_log}});
    std::ostringstream csv;
    csv << "# manifest " << manifest("sweep", echo).dump() << '\n'
        << swp_parameter << ",t,p,R,benchmark,ratio,exists\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
      const json& s = results[i];
      csv << (by_delta ? csv_number(points[i])
                       : std::to_string(static_cast<long>(points[i])))
          << ',' << csv_number(json_number(s["threshold"])) << ','
          << csv_number(json_number(s["price"])) << ','
          << csv_number(json_number(s["revenue"])) << ','
          << csv_number(json_number(s["benchmark"])) << ','
          << csv_number(json_number(s["ratio"])) << ','
          << (s["exists"].get<bool>() ? "true" : "false") << '\n';
    }
    if (swp_output.empty()) {
      out << csv.str();
    } else {
      write_text(swp_output, csv.str());
    }
  });

  // report
  auto* rep = app.add_subcommand("report", "summary of one equilibrium");
  GameFlags rep_game;
  VerifyFlags rep_flags;
  bool rep_verify = false;
  std::string rep_format = "text";
  rep_game.add_to(rep, true);
  rep_flags.add_to(rep);
  rep->add_flag("--verify", rep_verify, "also run the verifier");
  rep->add_option("--format", rep_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  rep->callback([&] {
    const GameOptions o = rep_game.options();
    json summary = summarize(o);
    json echo = rep_game.echo();
    echo["verify"] = rep_verify;
    if (rep_verify) echo.update(rep_flags.echo());
    bool pass = true;
    if (rep_verify) {
      auto [v, ok] = rep_flags.run(make_game(o));
      summary["verification"] = v;
      pass = ok;
    }
    summary["manifest"] = manifest("report", echo);
    if (rep_format == "json") {
      out << summary.dump(2) << '\n';
    } else {
      out << "game: " << o.name << '\n';
      for (const char* key : {"delta", "exists", "threshold", "price", "revenue",
                              "benchmark", "ratio", "limiting_ratio", "p1", "t1",
                              "p20", "p21", "two_round_p1"}) {
        if (summary.contains(key)) out << key << ": " << summary[key] << '\n';
      }
      if (summary.contains("equilibrium_prices")) {
        out << "equilibrium_prices: " << summary["equilibrium_prices"] << '\n';
      }
      if (rep_verify) {
        for (const json& r : summary["verification"]["reports"]) {
          out << "verify " << r["role"].get<std::string>() << ": "
              << r["verdict"].get<std::string>() << " (gain " << r["gain"]
              << ", epsilon " << r["epsilon"] << ", budget " << r["budget"]
              << ")\n";
        }
        out << "verdict: " << (pass ? "pass" : "fail") << '\n';
      }
    }
    if (!pass) exit_code = kExitVerificationFailed;
  });

  std::vector<std::string> owned{"repeated_sales"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : owned) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  }
  return exit_code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  try {
    return run(args, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace rsales::cli
