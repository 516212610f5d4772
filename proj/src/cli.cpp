#include "patrol/cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "patrol/chain.hpp"
#include "patrol/error.hpp"
#include "patrol/evidence.hpp"
#include "patrol/game.hpp"
#include "patrol/graph.hpp"
#include "patrol/hitting.hpp"
#include "patrol/io.hpp"
#include "patrol/solver.hpp"
#include "patrol/strategies.hpp"

namespace patrol::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string graph;
  std::string chain;
  std::string out;
  std::string trace;
  std::string graph_out;
  std::string topology;
  std::string method = "general";
  std::string format = "json";
  std::optional<int> tau;
  std::optional<int> n;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
  std::optional<int> restarts;
  std::optional<int> max_iters;
  int threads = 0;
  int points = 10;
  bool per_step = false;
};

std::string dump(const Json& doc) { return doc.dump() + "\n"; }

Json rows_json(const Matrix& p) {
  Json rows = Json::array();
  for (int i = 0; i < p.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < p.cols(); ++j) row.push_back(p(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json chain_json(const Matrix& p) { return Json{{"n", p.rows()}, {"rows", rows_json(p)}}; }

std::string csv_cell(double v) { return io::format_double(v); }

std::string csv_label(int index) { return index < 0 ? "" : std::to_string(index + 1); }

int require_tau(const Options& o) {
  if (!o.tau) throw Error(ErrorKind::kDomain, "--tau is required");
  if (*o.tau < 1) throw Error(ErrorKind::kDomain, "--tau must be >= 1");
  return *o.tau;
}

int require_n(const Options& o) {
  if (!o.n) throw Error(ErrorKind::kDomain, "--n is required");
  if (*o.n < 1) throw Error(ErrorKind::kInvalidDimension, "--n must be >= 1");
  return *o.n;
}

DiGraph load_graph(const std::string& path) { return io::parse_graph(io::read_file(path)); }

// Without --graph the chain is checked against its own support.
MarkovChain load_chain(const Options& o) {
  if (o.chain.empty()) throw Error(ErrorKind::kDomain, "--chain is required");
  Matrix p = io::parse_matrix(io::read_file(o.chain));
  DiGraph g = o.graph.empty() ? support_graph(p.cwiseMax(0.0)) : load_graph(o.graph);
  return MarkovChain::from_matrix(std::move(g), std::move(p));
}

DiGraph topology_graph(const std::string& topology, int n) {
  if (topology == "star") return build_star(n);
  if (topology == "line") return build_line(n);
  return build_complete(n);
}

void warn_if_trivial(const DiGraph& g, int tau, std::ostream& err) {
  if (g.size() < 2 || !is_strongly_connected(g)) {
    err << "warning: graph is not strongly connected; the bound says nothing\n";
    return;
  }
  const TauClass c = classify_tau(g, tau);
  if (c.kind != TauKind::kNontrivial) {
    err << "warning: tau=" << tau << " is " << to_string(c.kind)
        << " for this graph; the bound is not informative\n";
  }
}

SolveConfig solve_config(const Options& o) {
  SolveConfig cfg;
  if (o.restarts) cfg.restarts = *o.restarts;
  if (o.max_iters) cfg.max_iters = *o.max_iters;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  return cfg;
}

std::vector<double> uniform_interior(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> x(count);
  for (double& v : x) {
    do {
      v = uniform(rng);
    } while (v <= 0.0);
  }
  return x;
}

std::string cmd_eval(const Options& o) {
  const int tau = require_tau(o);
  const MarkovChain chain = load_chain(o);
  const HittingProfile profile = hitting_profile(chain, tau);
  if (o.format == "csv") {
    if (!o.per_step) return io::matrix_to_csv(profile.capture);
    std::string text = "step,from,to,first_hit,capture\n";
    const int n = chain.size();
    Matrix running = Matrix::Zero(n, n);
    for (int k = 0; k < tau; ++k) {
      running += profile.first_hit[k];
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          text += std::to_string(k + 1) + "," + std::to_string(i + 1) + "," +
                  std::to_string(j + 1) + "," + csv_cell(profile.first_hit[k](i, j)) +
                  "," + csv_cell(running(i, j)) + "\n";
        }
      }
    }
    return text;
  }
  Json doc{{"n", chain.size()}, {"tau", tau}, {"capture", rows_json(profile.capture)}};
  if (o.per_step) {
    Json steps = Json::array();
    for (const Matrix& f : profile.first_hit) steps.push_back(rows_json(f));
    doc["first_hit"] = std::move(steps);
  }
  return dump(doc);
}

std::string cmd_best_response(const Options& o, std::ostream& err) {
  const int tau = require_tau(o);
  const MarkovChain chain = load_chain(o);
  warn_if_trivial(chain.graph(), tau, err);
  const BestResponse br = intruder_best_response(chain, tau);
  const double bound = static_cast<double>(tau) / chain.size();
  return dump(Json{{"pair", {br.from + 1, br.to + 1}},
                   {"value", br.value},
                   {"bound", bound},
                   {"gap", bound - br.value}});
}

std::string cmd_bound(const Options& o, std::ostream& err) {
  const int tau = require_tau(o);
  int n = 0;
  if (!o.graph.empty()) {
    const DiGraph g = load_graph(o.graph);
    n = g.size();
    warn_if_trivial(g, tau, err);
  } else {
    n = require_n(o);
    if (tau >= n) err << "warning: tau >= n; the bound is not informative\n";
  }
  return dump(Json{{"bound", static_cast<double>(tau) / n}});
}

std::string cmd_classify(const Options& o) {
  const int tau = require_tau(o);
  if (o.graph.empty()) throw Error(ErrorKind::kDomain, "--graph is required");
  const DiGraph g = load_graph(o.graph);
  const TauClass c = classify_tau(g, tau);
  Json walk = Json::array();
  for (int v : c.walk.nodes) walk.push_back(v + 1);
  Json doc{{"n", g.size()},
           {"tau", tau},
           {"class", to_string(c.kind)},
           {"diameter", c.diameter}};
  doc["closed_walk_bound"] = c.closed_walk_bound ? Json(*c.closed_walk_bound) : Json(nullptr);
  doc["walk_exact"] = c.walk.exact;
  doc["walk"] = std::move(walk);
  return dump(doc);
}

std::string cmd_build(const Options& o) {
  const int n = require_n(o);
  std::optional<MarkovChain> chain;
  if (o.topology == "star") {
    chain = star_optimal(n);
  } else if (o.topology == "line") {
    chain = line_optimal(n);
  } else if (o.topology == "complete-kron") {
    chain = complete_kron(n, require_tau(o));
  } else {
    chain = random_walk(n);
  }
  if (!o.graph_out.empty()) {
    io::write_file(o.graph_out, io::graph_to_json(chain->graph()).dump(2) + "\n");
  }
  return dump(chain_json(chain->matrix()));
}

std::string trace_csv(const SolveReport& report) {
  std::string text = "iteration,value\n";
  for (const TracePoint& t : report.trace) {
    text += std::to_string(t.iteration) + "," + csv_cell(t.value) + "\n";
  }
  return text;
}

std::string cmd_solve(const Options& o) {
  const int tau = require_tau(o);
  const SolveConfig cfg = solve_config(o);
  SolveReport report = [&] {
    if (o.method == "line") return solve_line(require_n(o), tau, cfg);
    if (o.graph.empty()) throw Error(ErrorKind::kDomain, "--graph is required");
    return solve_maximin(GameInstance::make(load_graph(o.graph), tau), cfg);
  }();
  if (!o.trace.empty()) io::write_file(o.trace, trace_csv(report));

  Json doc{{"seed", cfg.seed},
           {"method", o.method},
           {"n", report.best.size()},
           {"tau", tau},
           {"restarts", cfg.restarts},
           {"classification", to_string(report.classification)},
           {"degenerate", report.degenerate},
           {"value", report.value},
           {"bound", report.bound},
           {"gap", report.gap},
           {"restart", report.restart},
           {"evaluations", report.evaluations},
           {"iterations", report.trace.empty() ? 0 : report.trace.back().iteration}};
  if (!report.line_params.empty()) doc["line_params"] = report.line_params;
  doc["chain"] = chain_json(report.best.matrix());
  return dump(doc);
}

std::string cmd_sweep(const Options& o) {
  const SweepReport r = conjecture_sweep(require_n(o), require_tau(o),
                                         o.samples.value_or(5000), o.seed, 1e-9, o.threads);
  const std::uint64_t needed = required_samples(0.99, 0.99);
  Json doc{{"n", r.n},
           {"tau", r.tau},
           {"samples", r.samples},
           {"seed", r.seed},
           {"tol", r.tol},
           {"improvements", r.improvements},
           {"reference_value", r.reference_value},
           {"best_sampled_value", r.best_sampled_value}};
  doc["confidence"] = r.confidence ? Json(*r.confidence) : Json(nullptr);
  doc["level"] = r.level ? Json(*r.level) : Json(nullptr);
  doc["required_samples_99_99"] = needed;
  doc["certifies_99_99"] = r.improvements == 0 && r.samples >= needed;
  doc["note"] = "sample count is per (n, tau) case";
  return dump(doc);
}

std::string cmd_symmetry(const Options& o) {
  const int n = require_n(o);
  const int tau = require_tau(o);
  if (n < 3) throw Error(ErrorKind::kInvalidDimension, "symmetry needs n >= 3");
  const std::uint64_t count = o.samples.value_or(50);
  const double tol = 1e-12;
  std::string csv = "sample,value,reflected,difference,pass\n";
  double worst = 0.0;
  std::uint64_t failed = 0;
  for (std::uint64_t k = 0; k < count; ++k) {
    std::mt19937_64 rng(derive_seed(o.seed, k));
    const SymmetryResult r = symmetry_check(LineParams(uniform_interior(rng, n - 2)), tau, tol);
    worst = std::max(worst, std::abs(r.difference()));
    if (!r.pass) ++failed;
    csv += std::to_string(k) + "," + csv_cell(r.value) + "," + csv_cell(r.reflected_value) +
           "," + csv_cell(r.difference()) + "," + (r.pass ? "1" : "0") + "\n";
  }
  if (o.format == "csv") return csv;
  return dump(Json{{"n", n},
                   {"tau", tau},
                   {"samples", count},
                   {"seed", o.seed},
                   {"tol", tol},
                   {"max_abs_difference", worst},
                   {"failed", failed}});
}

std::string cmd_charpoly(const Options& o) {
  const int n = require_n(o);
  if (n < 3) throw Error(ErrorKind::kInvalidDimension, "charpoly needs n >= 3");
  if (o.points < 1) throw Error(ErrorKind::kDomain, "--points must be >= 1");
  const std::uint64_t count = o.samples.value_or(20);
  std::string csv = "sample,lambda,gap,shift_gap\n";
  double worst_gap = 0.0;
  double worst_shift = 0.0;
  for (std::uint64_t k = 0; k < count; ++k) {
    std::mt19937_64 rng(derive_seed(o.seed, k));
    const std::vector<double> x = uniform_interior(rng, n - 2);
    std::uniform_real_distribution<double> lambdas(-2.0, 2.0);
    for (int p = 0; p < o.points; ++p) {
      const double lambda = lambdas(rng);
      const CharPolyPair pair = char_poly_pair(x, lambda);
      const double gap = char_poly_gap(pair);
      const double shift = char_poly_shift_gap(pair, x, lambda);
      worst_gap = std::max(worst_gap, gap);
      worst_shift = std::max(worst_shift, shift);
      csv += std::to_string(k) + "," + csv_cell(lambda) + "," + csv_cell(gap) + "," +
             csv_cell(shift) + "\n";
    }
  }
  if (o.format == "csv") return csv;
  return dump(Json{{"n", n},
                   {"samples", count},
                   {"points", o.points},
                   {"seed", o.seed},
                   {"max_gap", worst_gap},
                   {"max_shift_gap", worst_shift}});
}

std::string cmd_dominance(const Options& o) {
  const int tau = require_tau(o);
  const DiGraph g = o.graph.empty() ? topology_graph(o.topology.empty() ? "complete" : o.topology,
                                                     require_n(o))
                                    : load_graph(o.graph);
  const std::uint64_t chains = o.samples.value_or(100);
  const DominanceAudit audit = audit_dominance(g, tau, chains, o.seed, 1e-10, o.threads);
  if (o.format == "csv") {
    std::string csv = "rule,chain,from,to,witness,expected_larger,expected_smaller\n";
    for (const DominanceViolation& v : audit.violations) {
      csv += v.rule + "," + std::to_string(v.chain_index) + "," + csv_label(v.from) + "," +
             csv_label(v.to) + "," + csv_label(v.witness) + "," +
             csv_cell(v.expected_larger) + "," + csv_cell(v.expected_smaller) + "\n";
    }
    return csv;
  }
  return dump(Json{{"n", g.size()},
                   {"tau", tau},
                   {"chains", audit.chains},
                   {"seed", o.seed},
                   {"checks", audit.checks},
                   {"leaf_attack_checked", audit.leaf_attack_checked},
                   {"violations", audit.violations.size()}});
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

std::string cmd_oracle(const Options& o) {
  const int tau = require_tau(o);
  const MarkovChain chain = load_chain(o);
  const int n = chain.size();
  const HittingProfile recursion = hitting_profile(chain, tau);

  Json doc{{"n", n}, {"tau", tau}};
  double worst = 0.0;
  if (n <= kVectorizedLimit) {
    const HittingProfile vectorized = hitting_profile_vectorized(chain, tau);
    double d = max_abs_diff(recursion.capture, vectorized.capture);
    for (int k = 0; k < tau; ++k) {
      d = std::max(d, max_abs_diff(recursion.first_hit[k], vectorized.first_hit[k]));
    }
    doc["recursion_vs_vectorized"] = d;
    worst = std::max(worst, d);
  } else {
    doc["recursion_vs_vectorized"] = nullptr;
  }

  // Every pair walks the whole trajectory tree, so budget n^2 trees.
  if (std::pow(static_cast<double>(n), tau + 2) <= kEnumerationLimit) {
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        d = std::max(d, std::abs(recursion.capture(i, j) - enumerate_hitting(chain, i, j, tau)));
      }
    }
    doc["recursion_vs_enumeration"] = d;
    worst = std::max(worst, d);
  } else {
    doc["recursion_vs_enumeration"] = nullptr;
  }
  doc["max_discrepancy"] = worst;

  if (o.samples) {
    double max_error = 0.0;
    double max_z = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const std::uint64_t pair_seed = derive_seed(o.seed, static_cast<std::uint64_t>(i * n + j));
        const HitEstimate est =
            simulate_hitting(chain, i, j, tau, *o.samples, pair_seed, o.threads);
        const double error = std::abs(est.estimate - recursion.capture(i, j));
        max_error = std::max(max_error, error);
        if (est.std_error > 0.0) max_z = std::max(max_z, error / est.std_error);
      }
    }
    doc["simulation"] = Json{{"samples", *o.samples},
                             {"seed", o.seed},
                             {"max_abs_error", max_error},
                             {"max_z", max_z}};
  }
  return dump(doc);
}

void add_common_io(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "Write the report here instead of standard output");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Patrolling strategies against a timed intruder on a graph", "patrol"};
  app.require_subcommand(1);
  const auto formats = CLI::IsMember({"json", "csv"});

  auto* eval = app.add_subcommand("eval", "Capture matrix of a chain");
  eval->add_option("--chain", o.chain, "Chain JSON or CSV")->required();
  eval->add_option("--graph", o.graph, "Graph the chain must conform to");
  eval->add_option("--tau", o.tau, "Attack duration")->required();
  eval->add_flag("--per-step", o.per_step, "Include every first-hit matrix");
  eval->add_option("--format", o.format, "json or csv")->check(formats);
  add_common_io(eval, o);

  auto* best = app.add_subcommand("best-response", "Intruder's best pair against a chain");
  best->add_option("--chain", o.chain, "Chain JSON or CSV")->required();
  best->add_option("--graph", o.graph, "Graph the chain must conform to");
  best->add_option("--tau", o.tau, "Attack duration")->required();
  add_common_io(best, o);

  auto* bound = app.add_subcommand("bound", "tau / n upper bound on the game value");
  bound->add_option("--graph", o.graph, "Graph JSON or edge list");
  bound->add_option("--n", o.n, "Node count when no graph is given");
  bound->add_option("--tau", o.tau, "Attack duration")->required();
  add_common_io(bound, o);

  auto* classify = app.add_subcommand("classify", "Trivial or nontrivial attack duration");
  classify->add_option("--graph", o.graph, "Graph JSON or edge list")->required();
  classify->add_option("--tau", o.tau, "Attack duration")->required();
  add_common_io(classify, o);

  auto* build = app.add_subcommand("build", "Closed-form strategy as chain JSON");
  build->add_option("--topology", o.topology, "Strategy family")
      ->required()
      ->check(CLI::IsMember({"star", "line", "complete-kron", "random-walk"}));
  build->add_option("--n", o.n, "Node count")->required();
  build->add_option("--tau", o.tau, "Attack duration (complete-kron)");
  build->add_option("--graph-out", o.graph_out, "Also write the graph JSON here");
  add_common_io(build, o);

  auto* solve = app.add_subcommand("solve", "Numerical maximin strategy");
  solve->add_option("--graph", o.graph, "Graph JSON or edge list");
  solve->add_option("--n", o.n, "Line length for --method line");
  solve->add_option("--tau", o.tau, "Attack duration")->required();
  solve->add_option("--method", o.method, "general or line")
      ->check(CLI::IsMember({"general", "line"}));
  solve->add_option("--restarts", o.restarts, "Independent restarts");
  solve->add_option("--max-iters", o.max_iters, "Iterations per restart");
  solve->add_option("--seed", o.seed, "Master seed");
  solve->add_option("--threads", o.threads, "Worker threads, 0 for all cores");
  solve->add_option("--trace", o.trace, "Write (iteration,value) CSV here");
  add_common_io(solve, o);

  auto* evidence = app.add_subcommand("evidence", "Numerical checks of the structural results");
  evidence->require_subcommand(1);

  auto* sweep = evidence->add_subcommand("sweep", "Random line chains against the 1/2-1/2 chain");
  sweep->add_option("--n", o.n, "Line length")->required();
  sweep->add_option("--tau", o.tau, "Attack duration")->required();
  sweep->add_option("--samples", o.samples, "Draws (default 5000)");
  sweep->add_option("--seed", o.seed, "Master seed");
  sweep->add_option("--threads", o.threads, "Worker threads, 0 for all cores");
  add_common_io(sweep, o);

  auto* symmetry = evidence->add_subcommand("symmetry", "Line value under x -> 1 - x");
  symmetry->add_option("--n", o.n, "Line length")->required();
  symmetry->add_option("--tau", o.tau, "Attack duration")->required();
  symmetry->add_option("--samples", o.samples, "Instances (default 50)");
  symmetry->add_option("--seed", o.seed, "Master seed");
  symmetry->add_option("--format", o.format, "json summary or csv detail")->check(formats);
  add_common_io(symmetry, o);

  auto* charpoly = evidence->add_subcommand("charpoly", "Characteristic polynomial identities");
  charpoly->add_option("--n", o.n, "Line length")->required();
  charpoly->add_option("--samples", o.samples, "Parameter draws (default 20)");
  charpoly->add_option("--points", o.points, "Evaluation points per draw");
  charpoly->add_option("--seed", o.seed, "Master seed");
  charpoly->add_option("--format", o.format, "json summary or csv detail")->check(formats);
  add_common_io(charpoly, o);

  auto* dominance = evidence->add_subcommand("dominance", "Audit dominated intruder pairs");
  dominance->add_option("--graph", o.graph, "Graph JSON or edge list");
  dominance->add_option("--topology", o.topology, "star, line or complete when no graph")
      ->check(CLI::IsMember({"star", "line", "complete"}));
  dominance->add_option("--n", o.n, "Node count with --topology");
  dominance->add_option("--tau", o.tau, "Attack duration")->required();
  dominance->add_option("--samples", o.samples, "Random chains (default 100)");
  dominance->add_option("--seed", o.seed, "Master seed");
  dominance->add_option("--threads", o.threads, "Worker threads, 0 for all cores");
  dominance->add_option("--format", o.format, "json summary or csv violations")->check(formats);
  add_common_io(dominance, o);

  auto* oracle = app.add_subcommand("oracle", "Cross-check the hitting computations");
  oracle->add_option("--chain", o.chain, "Chain JSON or CSV")->required();
  oracle->add_option("--graph", o.graph, "Graph the chain must conform to");
  oracle->add_option("--tau", o.tau, "Attack duration")->required();
  oracle->add_option("--samples", o.samples, "Monte Carlo samples per pair");
  oracle->add_option("--seed", o.seed, "Master seed");
  oracle->add_option("--threads", o.threads, "Worker threads, 0 for all cores");
  add_common_io(oracle, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    std::string report;
    if (eval->parsed()) {
      report = cmd_eval(o);
    } else if (best->parsed()) {
      report = cmd_best_response(o, err);
    } else if (bound->parsed()) {
      report = cmd_bound(o, err);
    } else if (classify->parsed()) {
      report = cmd_classify(o);
    } else if (build->parsed()) {
      report = cmd_build(o);
    } else if (solve->parsed()) {
      report = cmd_solve(o);
    } else if (sweep->parsed()) {
      report = cmd_sweep(o);
    } else if (symmetry->parsed()) {
      report = cmd_symmetry(o);
    } else if (charpoly->parsed()) {
      report = cmd_charpoly(o);
    } else if (dominance->parsed()) {
      report = cmd_dominance(o);
    } else {
      report = cmd_oracle(o);
    }
    if (o.out.empty()) {
      out << report;
    } else {
      io::write_file(o.out, report);
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace patrol::cli
