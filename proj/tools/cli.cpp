#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rigepi/error.hpp"
#include "rigepi/experiments.hpp"
#include "rigepi/format.hpp"
#include "rigepi/graph.hpp"
#include "rigepi/graph_io.hpp"
#include "rigepi/graph_stats.hpp"
#include "rigepi/monte_carlo.hpp"
#include "rigepi/params.hpp"
#include "rigepi/rng.hpp"
#include "rigepi/theory.hpp"

namespace rigepi::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 12 significant digits, so equivalent parameterisations serialise identically.
double r12(double x) { return round_significant(x); }

ordered_json real_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return r12(x);
}

struct ModelArgs {
  std::int64_t n = 0;
  double beta = 0.0;
  double gamma = 0.0;
  double c = 0.0;
  double mu = 0.0;
  CLI::Option* n_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* gamma_opt = nullptr;
  CLI::Option* c_opt = nullptr;
  CLI::Option* mu_opt = nullptr;

  void attach(CLI::App* app, bool with_n) {
    if (with_n) n_opt = app->add_option("--n", n, "Number of individuals");
    beta_opt = app->add_option("--beta", beta, "Group density beta (m = floor(beta n))");
    gamma_opt = app->add_option("--gamma", gamma, "Group size parameter gamma (r = gamma / n)");
    c_opt = app->add_option("--c", c, "Asymptotic clustering in (0, 1)");
    mu_opt = app->add_option("--mu", mu, "Asymptotic mean degree");
    beta_opt->needs(gamma_opt);
    gamma_opt->needs(beta_opt);
    c_opt->needs(mu_opt);
    mu_opt->needs(c_opt);
    for (auto* a : {beta_opt, gamma_opt}) {
      for (auto* b : {c_opt, mu_opt}) a->excludes(b);
    }
  }

  bool given() const { return beta_opt->count() > 0 || c_opt->count() > 0; }

  // Both spellings resolve to (beta, gamma) rounded to 12 significant digits,
  // the precision every output reports, so a printed pair replays the run.
  ModelShape shape() const {
    ModelShape s{};
    if (beta_opt->count() > 0) {
      s = {beta, gamma};
    } else if (c_opt->count() > 0) {
      s = solve_params(c, mu);
    } else {
      throw UsageError("one of (--beta, --gamma) or (--c, --mu) is required");
    }
    s = {r12(s.beta), r12(s.gamma)};
    check_shape(s.beta, s.gamma);
    return s;
  }

  GraphParams params() const {
    if (n_opt == nullptr || n_opt->count() == 0) throw UsageError("--n is required");
    const ModelShape s = shape();
    return GraphParams::make(n, s.beta, s.gamma);
  }
};

ordered_json shape_json(const ModelShape& s) {
  return {{"beta", r12(s.beta)},
          {"gamma", r12(s.gamma)},
          {"mu", r12(s.beta * s.gamma * s.gamma)},
          {"c", r12(1.0 / (1.0 + s.beta * s.gamma))}};
}

ordered_json params_json(const GraphParams& p) {
  ordered_json j = {{"n", p.n()}, {"m", p.group_count()}};
  j.update(shape_json({p.beta(), p.gamma()}));
  return j;
}

std::string iso_time(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

// Collects output files and writes manifest.json next to them.
class RunContext {
 public:
  RunContext(std::string command, std::vector<std::string> args)
      : command_(std::move(command)), args_(std::move(args)),
        started_(std::chrono::system_clock::now()) {}

  void set_out_dir(const std::string& dir) {
    out_dir_ = dir;
    fs::create_directories(out_dir_);
  }
  bool has_out_dir() const { return !out_dir_.empty(); }

  void set_parameters(ordered_json params) { parameters_ = std::move(params); }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    const fs::path path = fs::path(out_dir_) / name;
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
    file.imbue(std::locale::classic());
    body(file);
    if (!file) throw std::runtime_error("failed writing " + path.string());
    outputs_.push_back(name);
  }

  void write_json(const std::string& name, const ordered_json& j) {
    write(name, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  }

  void finish() {
    if (!has_out_dir()) return;
    const auto elapsed = std::chrono::duration<double>(std::chrono::system_clock::now() - started_);
    ordered_json m;
    m["command"] = command_;
    m["args"] = args_;
    m["parameters"] = parameters_;
    m["master_seed"] = seed_ ? ordered_json(*seed_) : ordered_json(nullptr);
    m["tool_version"] = RIGEPI_VERSION;
    m["outputs"] = outputs_;
    m["started_at"] = iso_time(started_);
    m["wall_clock_seconds"] = elapsed.count();
    std::ofstream file(fs::path(out_dir_) / "manifest.json");
    file << m.dump(2) << '\n';
  }

 private:
  std::string command_;
  std::vector<std::string> args_;
  std::chrono::system_clock::time_point started_;
  std::string out_dir_;
  ordered_json parameters_ = ordered_json::object();
  std::optional<std::uint64_t> seed_;
  std::vector<std::string> outputs_;
};

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> values;
  std::stringstream s(text);
  s.imbue(std::locale::classic());
  std::string item;
  while (std::getline(s, item, ',')) {
    std::istringstream field(item);
    field.imbue(std::locale::classic());
    T v{};
    if (!(field >> v) || !(field >> std::ws).eof()) {
      throw UsageError(std::string("malformed ") + what + " list '" + text + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw UsageError(std::string("empty ") + what + " list");
  return values;
}

std::vector<ValidationPoint> parse_points(const std::string& text) {
  std::vector<ValidationPoint> points;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ';')) {
    const auto v = parse_list<double>(item, "point");
    if (v.size() != 3) throw UsageError("points are c,mu,p triples separated by ';'");
    points.push_back({v[0], v[1], v[2]});
  }
  if (points.empty()) throw UsageError("no validation points");
  return points;
}

void print_error(std::ostream& err, const char* kind, const std::string& message) {
  std::string flat = message;
  std::replace(flat.begin(), flat.end(), '\n', ' ');
  std::replace(flat.begin(), flat.end(), '"', '\'');
  err << "error: kind=" << kind << " message=\"" << flat << "\"\n";
}

double default_kappa(double mu) { return mu > 1.0 ? 0.99 / (2.0 * std::log(mu)) : 1.0; }

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reed-Frost epidemics on random intersection graphs"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string out_dir;
  std::uint64_t seed = 1;
  double p = 0.5;
  std::uint64_t trials = 1000;
  double epsilon = kDefaultTailEpsilon;

  auto add_threads = [&](CLI::App* s) {
    s->add_option("--threads", threads, "Worker threads (results do not depend on this)")
        ->check(CLI::PositiveNumber);
  };
  auto add_out = [&](CLI::App* s, bool required) {
    auto* o = s->add_option("--out", out_dir, "Output directory");
    if (required) o->default_val(".");
  };

  // generate
  ModelArgs gen_model;
  auto* generate = app.add_subcommand("generate", "Sample a graph; export edge list and memberships");
  gen_model.attach(generate, true);
  generate->add_option("--seed", seed, "Sampling seed");
  add_out(generate, true);

  // stats
  ModelArgs stats_model;
  std::string edges_in;
  auto* stats = app.add_subcommand("stats", "Degree histogram and transitivity of a graph");
  stats_model.attach(stats, true);
  stats->add_option("--seed", seed, "Sampling seed (same graph as generate with this seed)");
  stats->add_option("--edges", edges_in, "Read the graph from an edge list instead of sampling");
  add_out(stats, true);

  // theory
  ModelArgs theory_model;
  auto* theory = app.add_subcommand("theory", "Branching-process R0, rho and pi at one point (JSON)");
  theory_model.attach(theory, false);
  theory->add_option("--p", p, "Transmission probability")->required();
  theory->add_option("--epsilon", epsilon, "Poisson tail tolerance");
  add_out(theory, false);

  // sweep
  double sweep_mu = 4.0;
  std::string sweep_p = "0.2,0.3,0.5";
  std::string sweep_grid;
  auto* sweep = app.add_subcommand("sweep", "R0 and pi against clustering at fixed mean degree");
  sweep->add_option("--mu", sweep_mu, "Mean degree");
  sweep->add_option("--p", sweep_p, "Comma-separated transmission probabilities");
  sweep->add_option("--c-grid", sweep_grid, "Comma-separated clustering values (default: 50-point grid)");
  sweep->add_option("--epsilon", epsilon, "Poisson tail tolerance");
  add_threads(sweep);
  add_out(sweep, true);

  // simulate
  ModelArgs sim_model;
  bool shared_graph = false;
  bool pin_index = false;
  double threshold_exponent = 2.0 / 3.0;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo Reed-Frost trials");
  sim_model.attach(simulate, true);
  simulate->add_option("--p", p, "Transmission probability")->required();
  simulate->add_option("--trials", trials, "Number of trials");
  simulate->add_option("--seed", seed, "Master seed");
  simulate->add_flag("--shared-graph", shared_graph, "Reuse one graph for all trials (conditional study)");
  simulate->add_flag("--pin-index", pin_index, "Start every trial at vertex 0");
  simulate->add_option("--threshold-exponent", threshold_exponent,
                       "Large outbreak iff size >= max(10, ceil(n^x))");
  add_threads(simulate);
  add_out(simulate, true);

  // validate
  std::int64_t validate_n = 50'000;
  std::uint64_t validate_trials = 2000;
  std::string points_text = "0.5,4,0.5;0.01,4,0.2";
  auto* validate = app.add_subcommand("validate", "Monte Carlo large-outbreak fraction against theory");
  validate->add_option("--points", points_text, "Points 'c,mu,p;c,mu,p;...'");
  validate->add_option("--n", validate_n, "Graph size");
  validate->add_option("--trials", validate_trials, "Trials per point");
  validate->add_option("--seed", seed, "Master seed");
  add_threads(validate);
  add_out(validate, true);

  // census
  ModelArgs census_model;
  std::string n_list_text = "4000,8000";
  std::uint64_t replicates = 64;
  auto* census = app.add_subcommand("census", "Vertex-induced K4 / K4' counts, thinned vs unthinned");
  census_model.attach(census, false);
  census->add_option("--p", p, "Thinning retention probability");
  census->add_option("--n-list", n_list_text, "Comma-separated ascending graph sizes (<= 20000)");
  census->add_option("--replicates", replicates, "Replicates per size");
  census->add_option("--seed", seed, "Master seed");
  add_threads(census);
  add_out(census, true);

  // ball-check
  ModelArgs ball_model;
  std::optional<double> kappa;
  std::uint64_t roots = 200;
  std::uint64_t graphs = 10;
  auto* ball = app.add_subcommand("ball-check", "Fraction of bipartite balls of radius floor(kappa log n) that are trees");
  ball_model.attach(ball, true);
  ball->add_option("--kappa", kappa, "Radius factor (default 0.99 / (2 log mu))");
  ball->add_option("--roots", roots, "Total roots examined");
  ball->add_option("--graphs", graphs, "Independent graphs the roots are spread over");
  ball->add_option("--seed", seed, "Master seed");
  add_out(ball, true);

  // rerun
  std::string manifest_path;
  std::string rerun_out;
  auto* rerun = app.add_subcommand("rerun", "Repeat the run recorded in a manifest.json");
  rerun->add_option("manifest", manifest_path, "Path to manifest.json")->required();
  rerun->add_option("--out", rerun_out, "Write into this directory instead of the recorded one");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what());
    return kUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  RunContext ctx(chosen->get_name(), args);

  try {
    if (chosen == rerun) {
      std::ifstream in(manifest_path);
      if (!in) throw std::runtime_error("cannot read " + manifest_path);
      const auto manifest = ordered_json::parse(in);
      std::vector<std::string> recorded = manifest.at("args").get<std::vector<std::string>>();
      if (!rerun_out.empty()) {
        auto it = std::find(recorded.begin(), recorded.end(), "--out");
        if (it != recorded.end() && std::next(it) != recorded.end()) {
          *std::next(it) = rerun_out;
        } else {
          recorded.push_back("--out");
          recorded.push_back(rerun_out);
        }
      }
      return dispatch(recorded, out, err);
    }

    if (!out_dir.empty()) ctx.set_out_dir(out_dir);

    if (chosen == generate) {
      const GraphParams params = gen_model.params();
      ctx.set_parameters(params_json(params));
      ctx.set_seed(seed);
      const BipartiteGraph b = sample_bipartite(params, seed);
      const IntersectionGraph g = project(b);
      ctx.write("edges.txt", [&](std::ostream& o) { write_edge_list(o, g); });
      ctx.write("memberships.txt", [&](std::ostream& o) { write_memberships(o, b); });
    } else if (chosen == stats) {
      IntersectionGraph g;
      std::optional<ModelShape> shape;
      ordered_json pj;
      if (!edges_in.empty()) {
        if (stats_model.given()) shape = stats_model.shape();
        std::ifstream in(edges_in);
        if (!in) throw std::runtime_error("cannot read " + edges_in);
        g = read_edge_list(in);
        pj = {{"edges_file", edges_in}};
        if (shape) pj.update(shape_json(*shape));
      } else {
        const GraphParams params = stats_model.params();
        shape = ModelShape{params.beta(), params.gamma()};
        pj = params_json(params);
        ctx.set_seed(seed);
        g = sample_intersection_graph(params, seed);
      }
      ctx.set_parameters(pj);
      const auto hist = degree_histogram(g);
      const auto empirical = histogram_pmf(hist, g.vertex_count());
      std::vector<double> law;
      if (shape) law = compound_poisson_degree_pmf(shape->beta, shape->gamma, empirical.size() + 50);
      ctx.write("degree_histogram.csv", [&](std::ostream& o) {
        o << "degree,count,empirical_pmf" << (shape ? ",theory_pmf" : "") << '\n';
        for (const auto& [d, count] : hist) {
          o << d << ',' << count << ',' << format_real(empirical[d]);
          if (shape) o << ',' << format_real(law[d]);
          o << '\n';
        }
      });
      TransitivityOptions topt;
      topt.seed = derive_seed(seed, 7);
      const auto t = transitivity(g, topt);
      ordered_json sj = {{"n", g.vertex_count()},
                         {"edges", g.edge_count()},
                         {"mean_degree", r12(mean_degree(g))},
                         {"transitivity", t ? ordered_json(r12(*t)) : ordered_json(nullptr)},
                         {"transitivity_method",
                          g.vertex_count() > topt.exact_vertex_limit ? "sampled" : "exact"}};
      if (shape) {
        sj["theory_mean_degree"] = r12(shape->beta * shape->gamma * shape->gamma);
        sj["theory_clustering"] = r12(1.0 / (1.0 + shape->beta * shape->gamma));
        sj["degree_tv_distance"] = r12(total_variation(empirical, law));
      }
      ctx.write_json("stats.json", sj);
    } else if (chosen == theory) {
      const ModelShape shape = theory_model.shape();
      check_probability(p);
      SolverOptions opts;
      opts.truncation.epsilon = epsilon;
      const TheorySolution sol = extinction_prob(shape.beta, shape.gamma, p, opts);
      ordered_json j = {{"beta", r12(shape.beta)},
                        {"gamma", r12(shape.gamma)},
                        {"p", r12(p)},
                        {"mu", r12(shape.beta * shape.gamma * shape.gamma)},
                        {"c", r12(1.0 / (1.0 + shape.beta * shape.gamma))},
                        {"R0", r12(sol.r_nought)},
                        {"rho", r12(sol.rho)},
                        {"pi", r12(sol.pi)},
                        {"K", sol.truncation_k},
                        {"residual", r12(sol.residual)},
                        {"iterations", sol.iterations},
                        {"near_critical", sol.near_critical},
                        {"converged", sol.converged}};
      out << j.dump(2) << '\n';
      if (ctx.has_out_dir()) {
        ordered_json pj = shape_json(shape);
        pj["p"] = r12(p);
        pj["epsilon"] = epsilon;
        ctx.set_parameters(pj);
        ctx.write_json("theory.json", j);
      }
    } else if (chosen == sweep) {
      const auto ps = parse_list<double>(sweep_p, "p");
      const auto grid = sweep_grid.empty() ? default_c_grid() : parse_list<double>(sweep_grid, "c");
      TruncationOptions topt;
      topt.epsilon = epsilon;
      ctx.set_parameters({{"mu", r12(sweep_mu)}, {"p", ps}, {"c_grid_size", grid.size()},
                          {"epsilon", epsilon}});
      const auto rows = sweep_figure1(sweep_mu, ps, grid, topt, threads);
      const auto crossings = locate_thresholds(rows, topt);
      ctx.write("figure1.csv", [&](std::ostream& o) { write_figure1_csv(o, rows); });
      ctx.write("thresholds.csv", [&](std::ostream& o) { write_thresholds_csv(o, crossings); });
    } else if (chosen == simulate) {
      McConfig cfg{.params = sim_model.params()};
      cfg.p = p;
      cfg.trials = trials;
      cfg.regenerate_graph = !shared_graph;
      cfg.threshold_exponent = threshold_exponent;
      cfg.master_seed = seed;
      if (pin_index) cfg.pinned_index = 0;
      ordered_json pj = params_json(cfg.params);
      pj["p"] = r12(p);
      pj["trials"] = trials;
      pj["graph_mode"] = shared_graph ? "shared" : "fresh";
      pj["index_case"] = pin_index ? "vertex0" : "uniform";
      pj["threshold_exponent"] = r12(threshold_exponent);
      ctx.set_parameters(pj);
      ctx.set_seed(seed);
      const McResult result = monte_carlo(cfg, threads);
      ctx.write("trials.csv", [&](std::ostream& o) {
        o << "trial,seed,final_size,generations,is_large\n";
        for (const auto& r : result.records) {
          o << r.trial_index << ',' << r.seed << ',' << r.final_size << ',' << r.num_generations
            << ',' << (r.is_large ? 1 : 0) << '\n';
        }
      });
      const McSummary& s = result.summary;
      ctx.write_json("summary.json",
                     {{"parameters", pj},
                      {"master_seed", seed},
                      {"trials", s.trials},
                      {"threshold", s.threshold},
                      {"large_count", s.large_count},
                      {"fraction_large", r12(s.fraction_large)},
                      {"stderr", r12(s.stderr_fraction)},
                      {"mean_small_final_size", r12(s.mean_small_final_size)},
                      {"mean_large_relative_size", r12(s.mean_large_relative_size)}});
    } else if (chosen == validate) {
      const auto points = parse_points(points_text);
      ordered_json pts = ordered_json::array();
      for (const auto& pt : points) pts.push_back({r12(pt.c), r12(pt.mu), r12(pt.p)});
      ctx.set_parameters({{"points", pts}, {"n", validate_n}, {"trials", validate_trials}});
      ctx.set_seed(seed);
      const auto rows = mc_validation(points, validate_n, validate_trials, seed, threads);
      ctx.write("mc_validation.csv", [&](std::ostream& o) { write_validation_csv(o, rows); });
    } else if (chosen == census) {
      const ModelShape shape = census_model.given() ? census_model.shape() : ModelShape{0.25, 4.0};
      const auto ns = parse_list<std::int64_t>(n_list_text, "n");
      ordered_json pj = shape_json(shape);
      pj["p"] = r12(p);
      pj["n_list"] = ns;
      pj["replicates"] = replicates;
      ctx.set_parameters(pj);
      ctx.set_seed(seed);
      const auto result = census_scaling(shape.beta, shape.gamma, p, ns, replicates, seed, threads);
      ctx.write("census.csv", [&](std::ostream& o) { write_census_csv(o, result.records); });
      ctx.write("census_summary.csv",
                [&](std::ostream& o) { write_census_summary_csv(o, result.summary); });
    } else if (chosen == ball) {
      const GraphParams params = ball_model.params();
      const double k = kappa.value_or(default_kappa(params.mean_degree()));
      if (!(k > 0.0)) throw DomainError("kappa must be positive");
      if (roots < 1 || graphs < 1) throw DomainError("roots and graphs must be positive");
      const int radius = static_cast<int>(std::floor(k * std::log(static_cast<double>(params.n()))));
      std::uint64_t trees = 0;
      for (std::uint64_t gi = 0; gi < graphs; ++gi) {
        const std::uint64_t gseed = derive_seed(seed, gi);
        const BipartiteGraph b = sample_bipartite(params, gseed);
        Rng rng(derive_seed(gseed, 3));
        std::uniform_int_distribution<std::int64_t> pick(0, params.n() - 1);
        const std::uint64_t share = roots / graphs + (gi < roots % graphs ? 1 : 0);
        for (std::uint64_t r = 0; r < share; ++r) {
          trees += ball_is_tree(b, static_cast<Vertex>(pick(rng)), radius) ? 1 : 0;
        }
      }
      ordered_json pj = params_json(params);
      pj["kappa"] = r12(k);
      pj["roots"] = roots;
      pj["graphs"] = graphs;
      ctx.set_parameters(pj);
      ctx.set_seed(seed);
      const double bound = params.mean_degree() > 1.0 ? 1.0 / (2.0 * std::log(params.mean_degree()))
                                                      : std::numeric_limits<double>::infinity();
      ctx.write_json("ball_check.json",
                     {{"parameters", pj},
                      {"radius", radius},
                      {"kappa_below_bound", k < bound},
                      {"roots", roots},
                      {"trees", trees},
                      {"fraction", r12(static_cast<double>(trees) / static_cast<double>(roots))}});
    }
    ctx.finish();
  } catch (const UsageError& e) {
    print_error(err, "usage", e.what());
    return kUsage;
  } catch (const CapacityError& e) {
    print_error(err, "capacity", e.what());
    return kCapacity;
  } catch (const DomainError& e) {
    print_error(err, "domain", e.what());
    return kDomain;
  } catch (const std::exception& e) {
    print_error(err, "failure", e.what());
    return kFailure;
  }
  return kOk;
}

}  // namespace rigepi::cli
