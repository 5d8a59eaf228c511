// dicycle: batch front end for the long-cycle library.
//
//   dicycle generate    --n 100 --p 0.05 --seed 7 -o g.txt
//   dicycle check       witnessed-r -i g.txt --mode sampled --trials 1000
//   dicycle thresholds  --gamma 0.25 [--n 100] | --alpha 0.4 | --table
//   dicycle adversary   --strategy layered --alpha 0.5 -i g.txt -o h.txt
//   dicycle find-cycle  --method exact -i h.txt
//   dicycle find-path   --method dfs --seed 1 --restarts 8 -i h.txt
//   dicycle experiment  --config run.ini --csv trials.csv --summary summary.json
//
// Experiment exit codes: 0 clean, 2 assertion violation or failed trial,
// 3 configuration error. Other subcommands exit 1 on any error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dicycle/constructions.hpp"
#include "dicycle/digraph.hpp"
#include "dicycle/finders.hpp"
#include "dicycle/harness.hpp"
#include "dicycle/io.hpp"
#include "dicycle/pseudorandomness.hpp"
#include "dicycle/report_json.hpp"
#include "dicycle/scc.hpp"
#include "dicycle/thresholds.hpp"

namespace {

using namespace dicycle;

Digraph read_graph(const std::string& path) {
  if (path == "-") return parse_digraph(std::cin);
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open " + path);
  return parse_digraph(in);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidParameter("cannot write " + path);
  out << text;
}

VertexSet vertex_set(const std::vector<Vertex>& v) { return VertexSet(v); }

SearchMode search_mode(const std::string& s) {
  if (s == "exact") return SearchMode::exact;
  if (s == "sampled") return SearchMode::sampled;
  throw InvalidParameter("mode must be exact or sampled");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct SearchArgs {
  std::string mode = "exact";
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t limit = kDefaultExactLimit;

  void attach(CLI::App* cmd) {
    cmd->add_option("--mode", mode, "exact | sampled")->check(CLI::IsMember({"exact", "sampled"}));
    cmd->add_option("--trials", trials, "samples drawn in sampled mode");
    cmd->add_option("--seed", seed, "seed for sampled mode");
    cmd->add_option("--limit", limit, "exact-enumeration size limit");
  }

  SearchOptions options() const { return {search_mode(mode), trials, seed, limit}; }
};

std::string csv_number(double x) { return detail::fixed(x, 12); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Long directed cycles in thinned pseudorandom digraphs"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a graph: D(n, p), complete, or long-cycle extremal");
  std::string gen_kind = "random", gen_out;
  std::size_t gen_n = 0, gen_ell = 3;
  double gen_p = 0.0;
  std::uint64_t gen_seed = 0;
  gen->add_option("--kind", gen_kind, "random | complete | woodall")->check(CLI::IsMember({"random", "complete", "woodall"}));
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--p", gen_p, "edge probability (random)");
  gen->add_option("--seed", gen_seed, "seed (random)");
  gen->add_option("--ell", gen_ell, "forbidden cycle length (woodall)");
  gen->add_option("-o,--output", gen_out, "output file (default stdout)");

  // check
  auto* check = app.add_subcommand("check", "Pseudorandomness and regularity checks");
  check->require_subcommand(1);
  std::string graph_in;
  SearchArgs sa;

  auto* c_stats = check->add_subcommand("stats", "Order, size, density, SCC sizes");
  c_stats->add_option("-i,--input", graph_in, "graph file or -")->required();

  auto* c_between = check->add_subcommand("edges-between", "e(A, B)");
  std::vector<Vertex> set_a, set_b;
  c_between->add_option("-i,--input", graph_in, "graph file or -")->required();
  c_between->add_option("--A", set_a, "source set")->delimiter(',')->required();
  c_between->add_option("--B", set_b, "target set")->delimiter(',')->required();

  auto* c_r = check->add_subcommand("witnessed-r", "Witnessed jumbledness r");
  std::optional<double> r_p;
  std::optional<std::size_t> r_size;
  c_r->add_option("-i,--input", graph_in, "graph file or -")->required();
  c_r->add_option("--p", r_p, "reference density (default: density of G)");
  c_r->add_option("--pair-size", r_size, "fix |A| = |B| in sampled mode");
  sa.attach(c_r);

  auto* c_bound = check->add_subcommand("bounded", "(delta, D, p)-boundedness");
  double b_delta = 0.0, b_factor = 0.0, b_p = 0.0;
  c_bound->add_option("-i,--input", graph_in, "graph file or -")->required();
  c_bound->add_option("--delta", b_delta)->required();
  c_bound->add_option("--D", b_factor)->required();
  c_bound->add_option("--p", b_p)->required();
  sa.attach(c_bound);

  auto* c_pd = check->add_subcommand("p-density", "Directed p-density d_p(U, W)");
  std::vector<Vertex> set_u, set_w;
  double pd_p = 0.0;
  c_pd->add_option("-i,--input", graph_in, "graph file or -")->required();
  c_pd->add_option("--U", set_u)->delimiter(',')->required();
  c_pd->add_option("--W", set_w)->delimiter(',')->required();
  c_pd->add_option("--p", pd_p)->required();

  auto* c_reg = check->add_subcommand("regular-pair", "(delta, p)-regularity of (U, W)");
  double reg_delta = 0.0, reg_p = 0.0;
  c_reg->add_option("-i,--input", graph_in, "graph file or -")->required();
  c_reg->add_option("--U", set_u)->delimiter(',')->required();
  c_reg->add_option("--W", set_w)->delimiter(',')->required();
  c_reg->add_option("--delta", reg_delta)->required();
  c_reg->add_option("--p", reg_p)->required();
  sa.attach(c_reg);

  auto* c_exp = check->add_subcommand("expansion", "Bipartite expansion parameter k");
  c_exp->add_option("-i,--input", graph_in, "graph file or -")->required();
  c_exp->add_option("--V1", set_u)->delimiter(',')->required();
  c_exp->add_option("--V2", set_w)->delimiter(',')->required();
  sa.attach(c_exp);

  // thresholds
  auto* thr = app.add_subcommand("thresholds", "Resilience curve and extremal bounds");
  std::optional<double> thr_gamma, thr_alpha;
  std::optional<std::size_t> thr_n, thr_woodall_n, thr_woodall_ell;
  bool thr_table = false;
  double thr_from = 0.0, thr_to = 0.95, thr_tol = 1e-12;
  std::size_t thr_steps = 20;
  thr->add_option("--gamma", thr_gamma, "kept fraction above 1/2");
  thr->add_option("--alpha", thr_alpha, "cycle deficit fraction");
  thr->add_option("--n", thr_n, "also print the predicted cycle length for this n");
  thr->add_option("--tol", thr_tol, "solver tolerance");
  thr->add_flag("--table", thr_table, "CSV sweep over alpha");
  thr->add_option("--from", thr_from, "sweep start");
  thr->add_option("--to", thr_to, "sweep end");
  thr->add_option("--steps", thr_steps, "sweep intervals");
  thr->add_option("--woodall-n", thr_woodall_n, "undirected long-cycle edge bound: vertex count");
  thr->add_option("--woodall-ell", thr_woodall_ell, "undirected long-cycle edge bound: cycle length");

  // adversary
  auto* adv = app.add_subcommand("adversary", "Thin a graph");
  std::string adv_strategy, adv_out, adv_half = "larger";
  double adv_alpha = 0.5, adv_keep = 1.0;
  std::uint64_t adv_seed = 0;
  bool adv_shuffle = false, adv_identity = false;
  adv->add_option("--strategy", adv_strategy, "acyclic-split | layered | random")
      ->required()
      ->check(CLI::IsMember({"acyclic-split", "layered", "random"}));
  adv->add_option("--alpha", adv_alpha, "layered: deficit fraction");
  adv->add_option("--keep", adv_keep, "random: fraction of edges kept");
  adv->add_option("--seed", adv_seed, "seed for random choices");
  adv->add_flag("--shuffle", adv_shuffle, "layered: seeded class assignment");
  adv->add_flag("--identity", adv_identity, "acyclic-split: identity permutation instead of a seeded one");
  adv->add_option("--half", adv_half, "acyclic-split: larger | descending | ascending")
      ->check(CLI::IsMember({"larger", "descending", "ascending"}));
  adv->add_option("-i,--input", graph_in, "graph file or -")->required();
  adv->add_option("-o,--output", adv_out, "output file (default stdout)");

  // find-cycle
  auto* fc = app.add_subcommand("find-cycle", "Longest cycle search");
  std::string fc_method = "exact";
  std::uint64_t fc_seed = 0;
  std::size_t fc_restarts = 8, fc_limit = kDefaultCycleLimit;
  bool fc_undirected = false;
  fc->add_option("--method", fc_method, "exact | dfs | scc-bound")->check(CLI::IsMember({"exact", "dfs", "scc-bound"}));
  fc->add_option("--seed", fc_seed, "dfs seed");
  fc->add_option("--restarts", fc_restarts, "dfs restarts");
  fc->add_option("--limit", fc_limit, "exact: maximum vertex count");
  fc->add_flag("--undirected", fc_undirected, "exact: read a symmetric graph as undirected");
  fc->add_option("-i,--input", graph_in, "graph file or -")->required();

  // find-path
  auto* fp = app.add_subcommand("find-path", "Long path search");
  std::string fp_method = "dfs";
  double fp_delta = 0.25, fp_p = 1.0;
  fp->add_option("--method", fp_method, "dfs | bipartite | regular-pair")
      ->check(CLI::IsMember({"dfs", "bipartite", "regular-pair"}));
  fp->add_option("--restarts", fc_restarts, "dfs restarts");
  fp->add_option("--V1,--U", set_u, "first side")->delimiter(',');
  fp->add_option("--V2,--W", set_w, "second side")->delimiter(',');
  fp->add_option("--delta", fp_delta, "regular-pair: delta");
  fp->add_option("--p", fp_p, "regular-pair: reference density");
  fp->add_option("-i,--input", graph_in, "graph file or -")->required();
  sa.attach(fp);

  // experiment
  auto* ex = app.add_subcommand("experiment", "Run a seeded experiment batch");
  std::string ex_config, ex_csv, ex_summary;
  bool ex_timings = false;
  ex->add_option("--config", ex_config, "experiment config file")->required();
  ex->add_option("--csv", ex_csv, "trial CSV output (default stdout)");
  ex->add_option("--summary", ex_summary, "JSON summary output");
  ex->add_flag("--timings", ex_timings, "append per-trial wall-clock column");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      Digraph g;
      if (gen_kind == "random") g = generate_random(gen_n, gen_p, gen_seed);
      else if (gen_kind == "complete") g = Digraph::complete(gen_n);
      else g = woodall_extremal(gen_n, gen_ell);
      write_text(gen_out, serialize(g));
      return 0;
    }

    if (*check) {
      const Digraph g = read_graph(graph_in);
      if (*c_stats) {
        const auto scc = scc_decomposition(g);
        std::vector<std::size_t> sizes;
        for (const auto& c : scc.components) sizes.push_back(c.size());
        std::cout << dump({{"n", g.order()},
                           {"m", g.edge_count()},
                           {"density", density(g)},
                           {"scc_sizes", sizes},
                           {"largest_scc", scc.largest()}});
      } else if (*c_between) {
        std::cout << dump({{"e", edge_count_between(g, vertex_set(set_a), vertex_set(set_b))}});
      } else if (*c_r) {
        JumbledOptions jo;
        static_cast<SearchOptions&>(jo) = sa.options();
        jo.p = r_p;
        jo.pair_size = r_size;
        std::cout << dump(to_json_value(witnessed_r(g, jo)));
      } else if (*c_bound) {
        std::cout << dump(to_json_value(is_bounded(g, b_delta, b_factor, b_p, sa.options())));
      } else if (*c_pd) {
        std::cout << dump({{"d_p", p_density(g, vertex_set(set_u), vertex_set(set_w), pd_p)}});
      } else if (*c_reg) {
        std::cout << dump(to_json_value(
            regular_pair_check(g, vertex_set(set_u), vertex_set(set_w), reg_delta, reg_p, sa.options())));
      } else if (*c_exp) {
        std::cout << dump(to_json_value(expansion_parameter(g, vertex_set(set_u), vertex_set(set_w), sa.options())));
      }
      return 0;
    }

    if (*thr) {
      if (thr_woodall_n || thr_woodall_ell) {
        if (!thr_woodall_n || !thr_woodall_ell) throw InvalidParameter("--woodall-n and --woodall-ell go together");
        std::cout << dump({{"n", *thr_woodall_n},
                           {"ell", *thr_woodall_ell},
                           {"edge_bound", woodall_bound(*thr_woodall_n, *thr_woodall_ell)},
                           {"edge_bound_ceil_variant", woodall_bound_ceil_variant(*thr_woodall_n, *thr_woodall_ell)}});
      } else if (thr_table) {
        if (thr_steps < 1) throw InvalidParameter("--steps must be positive");
        std::string out = "alpha,w_alpha,threshold,gamma,predicted_fraction\n";
        for (std::size_t i = 0; i <= thr_steps; ++i) {
          const double a = thr_from + (thr_to - thr_from) * static_cast<double>(i) / static_cast<double>(thr_steps);
          const auto pt = curve_point_from_alpha(a);
          out += csv_number(pt.alpha) + "," + csv_number(pt.w_alpha) + "," + csv_number(asymptotic_threshold(a)) +
                 "," + csv_number(pt.gamma) + "," + csv_number(pt.predicted_fraction) + "\n";
        }
        std::cout << out;
      } else if (thr_gamma) {
        json j = to_json_value(solve_alpha(*thr_gamma, thr_tol));
        if (thr_n) j["predicted_cycle_length"] = predicted_cycle_length(*thr_n, *thr_gamma, thr_tol);
        std::cout << dump(j);
      } else if (thr_alpha) {
        std::cout << dump(to_json_value(curve_point_from_alpha(*thr_alpha)));
      } else {
        throw InvalidParameter("give --gamma, --alpha, --table or --woodall-n/--woodall-ell");
      }
      return 0;
    }

    if (*adv) {
      const Digraph g = read_graph(graph_in);
      Digraph out;
      if (adv_strategy == "acyclic-split") {
        const auto sigma = adv_identity ? Permutation::identity(g.order()) : Permutation::random(g.order(), adv_seed);
        auto split = acyclic_split(g, sigma);
        out = adv_half == "descending" ? split.descending : adv_half == "ascending" ? split.ascending : split.larger();
      } else if (adv_strategy == "layered") {
        LayeredOptions lo;
        if (adv_shuffle) lo.shuffle_seed = adv_seed;
        out = layered_subgraph(g, adv_alpha, lo).subgraph;
      } else {
        out = random_delete(g, adv_keep, adv_seed);
      }
      write_text(adv_out, serialize(out));
      return 0;
    }

    if (*fc) {
      const Digraph g = read_graph(graph_in);
      json j{{"method", fc_method}};
      if (fc_method == "exact") {
        ExactCycleOptions eo;
        eo.undirected = fc_undirected;
        eo.limit = fc_limit;
        const auto r = exact_longest_cycle(g, eo);
        j["length"] = r.length;
        j["witness"] = r.witness ? json(r.witness->vertices) : json(nullptr);
      } else if (fc_method == "dfs") {
        const auto c = dfs_long_cycle(g, fc_seed, fc_restarts);
        j["length"] = c ? c->length() : 0;
        j["witness"] = c ? json(c->vertices) : json(nullptr);
      } else {
        j["upper_bound"] = scc_cycle_upper_bound(g);
      }
      std::cout << dump(j);
      return 0;
    }

    if (*fp) {
      const Digraph g = read_graph(graph_in);
      json j{{"method", fp_method}};
      if (fp_method == "dfs") {
        j["path"] = to_json_value(dfs_long_path(g, sa.seed, fc_restarts));
      } else if (fp_method == "bipartite") {
        const auto r = dfs_long_path_bipartite(g, vertex_set(set_u), vertex_set(set_w));
        j["path"] = to_json_value(r.path);
        if (r.trace.balanced) {
          j["balanced_snapshot"] = {{"step", r.trace.balanced->step},
                                    {"S", r.trace.balanced->done},
                                    {"T", r.trace.balanced->unvisited},
                                    {"U", r.trace.balanced->stack}};
        }
      } else {
        const auto r = regular_pair_path(g, vertex_set(set_u), vertex_set(set_w), fp_delta, fp_p, sa.options());
        j["path"] = to_json_value(r.path);
        j["regularity"] = to_json_value(r.regularity);
        j["expansion_bound"] = r.expansion_bound;
        j["certified"] = r.certified;
        j["guaranteed_length"] = r.guaranteed_length;
      }
      std::cout << dump(j);
      return 0;
    }

    if (*ex) {
      ExperimentConfig cfg;
      try {
        std::ifstream in(ex_config);
        if (!in) throw ConfigError("cannot open " + ex_config);
        cfg = parse_config(in);
      } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
      } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
      }
      const auto records = run_experiment(cfg);
      write_text(ex_csv, to_csv(cfg, records, ex_timings));
      const auto summary = summarize(records);
      if (!ex_summary.empty()) {
        json j = to_json_value(summary);
        j["name"] = cfg.name;
        write_text(ex_summary, dump(j));
      }
      return summary.violations > 0 || summary.errors > 0 ? 2 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
