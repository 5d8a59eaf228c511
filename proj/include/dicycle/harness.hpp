#pragma once

// Seeded end-to-end experiments: generate D(n, p), measure jumbledness, apply
// an adversary, search for a long cycle, and compare against the resilience
// curve evaluated at the kept edge fraction actually realized.
//
// The harness exercises the implemented adversaries only; it does not claim
// anything about arbitrary dense subgraphs.
//
// Per-trial randomness is derived from the trial seed: the graph uses the seed
// itself, and later stages use derive_seed(seed, stage) with the stage numbers
// in `Stream`.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "dicycle/constructions.hpp"
#include "dicycle/digraph.hpp"
#include "dicycle/errors.hpp"
#include "dicycle/finders.hpp"
#include "dicycle/pseudorandomness.hpp"
#include "dicycle/thresholds.hpp"

namespace dicycle {

inline constexpr const char* kTrialSchema = "# dicycle-trials v1";

enum class AdversaryKind { acyclic_split, layered, random };
enum class FinderKind { exact, dfs, scc_bound };
enum class TrialStatus { ok, skipped, error };

inline const char* to_string(AdversaryKind k) {
  switch (k) {
    case AdversaryKind::acyclic_split: return "acyclic-split";
    case AdversaryKind::layered: return "layered";
    case AdversaryKind::random: return "random";
  }
  return "?";
}

inline const char* to_string(FinderKind k) {
  switch (k) {
    case FinderKind::exact: return "exact";
    case FinderKind::dfs: return "dfs";
    case FinderKind::scc_bound: return "scc-bound";
  }
  return "?";
}

inline const char* to_string(TrialStatus s) {
  switch (s) {
    case TrialStatus::ok: return "ok";
    case TrialStatus::skipped: return "skipped";
    case TrialStatus::error: return "error";
  }
  return "?";
}

struct AdversarySpec {
  AdversaryKind kind = AdversaryKind::layered;
  std::optional<double> alpha;  // layered; solved from gamma when absent
  std::optional<double> keep;   // random; 1/2 + gamma when absent
  bool shuffle = false;         // layered: seeded class assignment
};

struct FinderSpec {
  FinderKind kind = FinderKind::exact;
  std::size_t restarts = 8;
};

struct Tolerances {
  // Allowed |kept fraction - expected|; unchecked when absent.
  std::optional<double> fraction_tol;
  // A trial falls short when cycle < (predicted fraction - length_tol) n.
  double length_tol = 0.0;
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::size_t n = 0;
  double p = 0.0;
  std::vector<std::uint64_t> seeds;
  AdversarySpec adversary;
  std::optional<double> gamma;
  FinderSpec finder;
  Tolerances tolerances;
  std::size_t pseudo_trials = 200;
  std::size_t exact_limit = kDefaultCycleLimit;
  double max_seconds = 60.0;
  std::size_t max_memory_mb = 1024;
  std::size_t threads = 1;
};

struct TrialRecord {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t edges = 0;
  double density = 0.0;
  double r_witnessed = 0.0;  // sampled, so a lower bound
  double r_ratio = 0.0;      // r / sqrt(n p)
  std::size_t kept_edges = 0;
  double kept_fraction = 0.0;
  double gamma_measured = 0.0;
  std::optional<double> alpha_measured;
  std::size_t predicted_length = 0;  // floor((1 - alpha) n) at the measured gamma
  FinderKind finder = FinderKind::exact;
  std::size_t cycle_length = 0;  // upper bound itself for the scc-bound finder
  std::size_t scc_bound = 0;
  std::optional<std::size_t> max_class_size;
  bool violation = false;
  bool below_prediction = false;
  TrialStatus status = TrialStatus::ok;
  std::string note;
  double duration_ms = 0.0;
};

namespace detail {

enum Stream : std::uint64_t { kJumbled = 1, kAdversary = 2, kFinder = 3, kShuffle = 4 };

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& raw) {
  std::istringstream in(trim(raw));
  T value{};
  if (!(in >> value) || !(in >> std::ws).eof()) throw ConfigError("bad value for " + key + ": '" + raw + "'");
  return value;
}

inline bool parse_bool(const std::string& key, const std::string& raw) {
  const auto v = trim(raw);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("bad boolean for " + key + ": '" + raw + "'");
}

// "1..5,9,12..13"
inline std::vector<std::uint64_t> parse_seeds(const std::string& raw) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    if (auto dots = item.find(".."); dots != std::string::npos) {
      const auto lo = parse_number<std::uint64_t>("seeds", item.substr(0, dots));
      const auto hi = parse_number<std::uint64_t>("seeds", item.substr(dots + 2));
      if (hi < lo || hi - lo > 1000000) throw ConfigError("bad seed range '" + item + "'");
      for (auto s = lo; s <= hi; ++s) out.push_back(s);
    } else {
      out.push_back(parse_number<std::uint64_t>("seeds", item));
    }
  }
  return out;
}

}  // namespace detail

inline void validate(const ExperimentConfig& c) {
  if (c.n < 2) throw ConfigError("n must be at least 2");
  if (!(c.p > 0.0 && c.p <= 1.0)) throw ConfigError("p must lie in (0, 1]");
  if (c.seeds.empty()) throw ConfigError("at least one seed is required");
  if (std::set<std::uint64_t>(c.seeds.begin(), c.seeds.end()).size() != c.seeds.size()) {
    throw ConfigError("seeds must be distinct");
  }
  if (c.gamma && !(*c.gamma > 0.0 && *c.gamma < 0.5)) throw ConfigError("gamma must lie in (0, 1/2)");
  switch (c.adversary.kind) {
    case AdversaryKind::layered: {
      if (!c.adversary.alpha && !c.gamma) throw ConfigError("layered adversary needs alpha or gamma");
      const double a = c.adversary.alpha ? *c.adversary.alpha : solve_alpha(*c.gamma).alpha;
      if (!(a >= 0.0 && a < 1.0)) throw ConfigError("alpha must lie in [0, 1)");
      if (std::floor((1.0 - a) * static_cast<double>(c.n) + 1e-12) < 1.0) {
        throw ConfigError("alpha leaves empty layered classes");
      }
      break;
    }
    case AdversaryKind::random: {
      if (!c.adversary.keep && !c.gamma) throw ConfigError("random adversary needs keep or gamma");
      const double k = c.adversary.keep ? *c.adversary.keep : 0.5 + *c.gamma;
      if (!(k >= 0.0 && k <= 1.0)) throw ConfigError("keep must lie in [0, 1]");
      break;
    }
    case AdversaryKind::acyclic_split: break;
  }
  if (c.finder.kind == FinderKind::exact && c.n > c.exact_limit) {
    throw ConfigError("exact finder requires n <= exact_limit (" + std::to_string(c.exact_limit) + ")");
  }
  if (c.exact_limit > 28) throw ConfigError("exact_limit cannot exceed 28");
  if (c.finder.restarts < 1) throw ConfigError("restarts must be at least 1");
  if (c.pseudo_trials < 1) throw ConfigError("pseudo_trials must be at least 1");
  if (c.tolerances.fraction_tol && !(*c.tolerances.fraction_tol >= 0.0)) throw ConfigError("fraction_tol must be >= 0");
  if (!(c.tolerances.length_tol >= 0.0)) throw ConfigError("length_tol must be >= 0");
  if (!(c.max_seconds > 0.0)) throw ConfigError("max_seconds must be positive");
  if (c.threads < 1) throw ConfigError("threads must be at least 1");
}

// INI-style text:
//
//   name = layered-small
//   n = 14
//   p = 0.8
//   seeds = 1..50
//   [adversary]
//   strategy = layered      # acyclic-split | layered | random
//   alpha = 0.5
//   [finder]
//   method = exact          # exact | dfs | scc-bound
//   [tolerances]
//   fraction_tol = 0.02
//
// '#' starts a comment anywhere on a line; ';' only at the start. Unknown keys are rejected.
inline ExperimentConfig parse_config(std::istream& in) {
  namespace pt = boost::property_tree;
  std::stringstream stripped;
  for (std::string line; std::getline(in, line);) stripped << line.substr(0, line.find('#')) << '\n';
  pt::ptree tree;
  try {
    pt::read_ini(stripped, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  ExperimentConfig c;
  bool have_n = false, have_p = false, have_seeds = false;
  using detail::parse_number;
  for (const auto& [key, node] : tree) {
    const std::string v = node.data();
    if (!node.empty()) {
      for (const auto& [sub, leaf] : node) {
        const std::string lv = detail::trim(leaf.data());
        const std::string full = key + "." + sub;
        if (key == "adversary" && sub == "strategy") {
          if (lv == "acyclic-split") c.adversary.kind = AdversaryKind::acyclic_split;
          else if (lv == "layered") c.adversary.kind = AdversaryKind::layered;
          else if (lv == "random") c.adversary.kind = AdversaryKind::random;
          else throw ConfigError("unknown adversary strategy '" + lv + "'");
        } else if (key == "adversary" && sub == "alpha") {
          c.adversary.alpha = parse_number<double>(full, lv);
        } else if (key == "adversary" && sub == "keep") {
          c.adversary.keep = parse_number<double>(full, lv);
        } else if (key == "adversary" && sub == "shuffle") {
          c.adversary.shuffle = detail::parse_bool(full, lv);
        } else if (key == "finder" && sub == "method") {
          if (lv == "exact") c.finder.kind = FinderKind::exact;
          else if (lv == "dfs") c.finder.kind = FinderKind::dfs;
          else if (lv == "scc-bound") c.finder.kind = FinderKind::scc_bound;
          else throw ConfigError("unknown finder method '" + lv + "'");
        } else if (key == "finder" && sub == "restarts") {
          c.finder.restarts = parse_number<std::size_t>(full, lv);
        } else if (key == "tolerances" && sub == "fraction_tol") {
          c.tolerances.fraction_tol = parse_number<double>(full, lv);
        } else if (key == "tolerances" && sub == "length_tol") {
          c.tolerances.length_tol = parse_number<double>(full, lv);
        } else {
          throw ConfigError("unknown config key '" + full + "'");
        }
      }
      continue;
    }
    if (key == "name") c.name = detail::trim(v);
    else if (key == "n") { c.n = parse_number<std::size_t>(key, v); have_n = true; }
    else if (key == "p") { c.p = parse_number<double>(key, v); have_p = true; }
    else if (key == "seeds") { c.seeds = detail::parse_seeds(v); have_seeds = true; }
    else if (key == "gamma") c.gamma = parse_number<double>(key, v);
    else if (key == "pseudo_trials") c.pseudo_trials = parse_number<std::size_t>(key, v);
    else if (key == "exact_limit") c.exact_limit = parse_number<std::size_t>(key, v);
    else if (key == "max_seconds") c.max_seconds = parse_number<double>(key, v);
    else if (key == "max_memory_mb") c.max_memory_mb = parse_number<std::size_t>(key, v);
    else if (key == "threads") c.threads = parse_number<std::size_t>(key, v);
    else throw ConfigError("unknown config key '" + key + "'");
  }
  if (!have_n) throw ConfigError("missing required key 'n'");
  if (!have_p) throw ConfigError("missing required key 'p'");
  if (!have_seeds) throw ConfigError("missing required key 'seeds'");
  validate(c);
  return c;
}

inline ExperimentConfig parse_config(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

inline double adversary_alpha(const ExperimentConfig& c) {
  return c.adversary.alpha ? *c.adversary.alpha : solve_alpha(*c.gamma).alpha;
}

inline double adversary_keep(const ExperimentConfig& c) {
  return c.adversary.keep ? *c.adversary.keep : 0.5 + *c.gamma;
}

inline TrialRecord run_trial(const ExperimentConfig& c, std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  TrialRecord rec;
  rec.seed = seed;
  rec.n = c.n;
  rec.finder = c.finder.kind;
  try {
    const Digraph g = generate_random(c.n, c.p, seed);
    rec.edges = g.edge_count();
    rec.density = density(g);

    JumbledOptions jo;
    jo.mode = SearchMode::sampled;
    jo.trials = c.pseudo_trials;
    jo.seed = derive_seed(seed, detail::kJumbled);
    const auto jr = witnessed_r(g, jo);
    rec.r_witnessed = jr.r_witnessed;
    const double scale = std::sqrt(static_cast<double>(c.n) * rec.density);
    rec.r_ratio = scale > 0.0 ? jr.r_witnessed / scale : 0.0;

    Digraph kept;
    std::optional<double> expected_fraction;
    switch (c.adversary.kind) {
      case AdversaryKind::acyclic_split: {
        auto split = acyclic_split(g, Permutation::random(c.n, derive_seed(seed, detail::kAdversary)));
        kept = split.larger();
        break;
      }
      case AdversaryKind::layered: {
        const double alpha = adversary_alpha(c);
        LayeredOptions lo;
        if (c.adversary.shuffle) lo.shuffle_seed = derive_seed(seed, detail::kShuffle);
        auto layered = layered_subgraph(g, alpha, lo);
        rec.max_class_size = layered.partition.max_class_size();
        kept = std::move(layered.subgraph);
        expected_fraction = layered_kept_fraction(alpha);
        break;
      }
      case AdversaryKind::random:
        kept = random_delete(g, adversary_keep(c), derive_seed(seed, detail::kAdversary));
        expected_fraction = adversary_keep(c);
        break;
    }
    rec.kept_edges = kept.edge_count();
    rec.kept_fraction = rec.edges ? static_cast<double>(rec.kept_edges) / static_cast<double>(rec.edges) : 1.0;
    rec.gamma_measured = rec.kept_fraction - 0.5;
    if (rec.gamma_measured >= 0.5) {
      rec.alpha_measured = 0.0;
      rec.predicted_length = c.n;
    } else if (rec.gamma_measured > 0.0) {
      rec.alpha_measured = solve_alpha(rec.gamma_measured).alpha;
      rec.predicted_length = predicted_cycle_length(c.n, rec.gamma_measured);
    }

    rec.scc_bound = scc_cycle_upper_bound(kept);
    switch (c.finder.kind) {
      case FinderKind::exact: {
        const std::size_t bytes = exact_cycle_memory_estimate(kept);
        if (bytes > (c.max_memory_mb << 20)) {
          rec.status = TrialStatus::skipped;
          rec.note = "exact search over memory cap";
          break;
        }
        ExactCycleOptions eo;
        eo.limit = c.exact_limit;
        eo.deadline = start + std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(c.max_seconds));
        try {
          rec.cycle_length = exact_longest_cycle(kept, eo).length;
        } catch (const Timeout&) {
          rec.status = TrialStatus::skipped;
          rec.note = "exact search over time cap";
        }
        break;
      }
      case FinderKind::dfs: {
        auto cyc = dfs_long_cycle(kept, derive_seed(seed, detail::kFinder), c.finder.restarts);
        rec.cycle_length = cyc ? cyc->length() : 0;
        break;
      }
      case FinderKind::scc_bound: rec.cycle_length = rec.scc_bound; break;
    }

    if (rec.status == TrialStatus::ok) {
      std::vector<std::string> broken;
      if (rec.cycle_length > rec.scc_bound) broken.push_back("cycle above SCC bound");
      if (rec.max_class_size && rec.scc_bound > *rec.max_class_size) broken.push_back("SCC above class size");
      if (c.adversary.kind == AdversaryKind::acyclic_split && rec.scc_bound > 1) broken.push_back("split half has a cycle");
      if (c.tolerances.fraction_tol && expected_fraction &&
          std::abs(rec.kept_fraction - *expected_fraction) > *c.tolerances.fraction_tol) {
        broken.push_back("kept fraction outside tolerance");
      }
      if (!broken.empty()) {
        rec.violation = true;
        for (const auto& b : broken) rec.note += (rec.note.empty() ? "" : "; ") + b;
      }
      if (c.finder.kind == FinderKind::exact && rec.alpha_measured) {
        const double floor_len = (1.0 - *rec.alpha_measured - c.tolerances.length_tol) * static_cast<double>(c.n);
        rec.below_prediction = static_cast<double>(rec.cycle_length) + 1e-9 < std::floor(floor_len + 1e-9);
      }
    }
  } catch (const std::exception& e) {
    rec.status = TrialStatus::error;
    rec.note = e.what();
  }
  rec.duration_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
  return rec;
}

// One record per seed, in ascending seed order whatever the thread count.
inline std::vector<TrialRecord> run_experiment(const ExperimentConfig& c) {
  validate(c);
  std::vector<std::uint64_t> seeds = c.seeds;
  std::sort(seeds.begin(), seeds.end());
  std::vector<TrialRecord> out(seeds.size());
  const std::size_t workers = std::min(c.threads, seeds.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i) out[i] = run_trial(c, seeds[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < seeds.size();) out[i] = run_trial(c, seeds[i]);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

struct Summary {
  std::size_t trials = 0;
  std::size_t ok = 0;
  std::size_t skipped = 0;
  std::size_t errors = 0;
  double mean_cycle = 0.0;
  std::size_t min_cycle = 0;
  std::size_t max_cycle = 0;
  // Mean of cycle_length / predicted_length over trials with a positive prediction.
  double mean_ratio_to_predicted = 0.0;
  double mean_kept_fraction = 0.0;
  double min_kept_fraction = 0.0;
  double max_kept_fraction = 0.0;
  double max_r_ratio = 0.0;
  std::size_t violations = 0;
  std::size_t below_prediction = 0;
};

inline Summary summarize(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw EmptyInput("cannot summarize zero records");
  Summary s;
  s.trials = records.size();
  double len_sum = 0.0, ratio_sum = 0.0, kept_sum = 0.0;
  std::size_t ratio_count = 0;
  for (const auto& r : records) {
    if (r.violation) ++s.violations;
    if (r.status == TrialStatus::skipped) ++s.skipped;
    if (r.status == TrialStatus::error) ++s.errors;
    if (r.status != TrialStatus::ok) continue;
    if (r.below_prediction) ++s.below_prediction;
    if (s.ok == 0) {
      s.min_cycle = s.max_cycle = r.cycle_length;
      s.min_kept_fraction = s.max_kept_fraction = r.kept_fraction;
    }
    ++s.ok;
    len_sum += static_cast<double>(r.cycle_length);
    s.min_cycle = std::min(s.min_cycle, r.cycle_length);
    s.max_cycle = std::max(s.max_cycle, r.cycle_length);
    kept_sum += r.kept_fraction;
    s.min_kept_fraction = std::min(s.min_kept_fraction, r.kept_fraction);
    s.max_kept_fraction = std::max(s.max_kept_fraction, r.kept_fraction);
    s.max_r_ratio = std::max(s.max_r_ratio, r.r_ratio);
    if (r.predicted_length > 0) {
      ratio_sum += static_cast<double>(r.cycle_length) / static_cast<double>(r.predicted_length);
      ++ratio_count;
    }
  }
  if (s.ok > 0) {
    s.mean_cycle = len_sum / static_cast<double>(s.ok);
    s.mean_kept_fraction = kept_sum / static_cast<double>(s.ok);
  }
  if (ratio_count > 0) s.mean_ratio_to_predicted = ratio_sum / static_cast<double>(ratio_count);
  return s;
}

namespace detail {

inline std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace detail

// Column order:
// seed,n,p,adversary,edges,density,r_witnessed,r_ratio,kept_edges,kept_fraction,
// gamma_measured,alpha_measured,predicted_length,finder,cycle_length,scc_bound,
// max_class_size,violation,below_prediction,status,note[,duration_ms]
//
// duration_ms is only written on request so that repeated runs stay
// byte-identical.
inline std::string to_csv(const ExperimentConfig& c, const std::vector<TrialRecord>& records, bool timings = false) {
  using detail::fixed;
  std::string out = std::string(kTrialSchema) + "\n";
  out += "seed,n,p,adversary,edges,density,r_witnessed,r_ratio,kept_edges,kept_fraction,gamma_measured,"
         "alpha_measured,predicted_length,finder,cycle_length,scc_bound,max_class_size,violation,"
         "below_prediction,status,note";
  out += timings ? ",duration_ms\n" : "\n";
  for (const auto& r : records) {
    out += std::to_string(r.seed) + "," + std::to_string(r.n) + "," + fixed(c.p) + "," + to_string(c.adversary.kind) +
           "," + std::to_string(r.edges) + "," + fixed(r.density) + "," + fixed(r.r_witnessed) + "," +
           fixed(r.r_ratio) + "," + std::to_string(r.kept_edges) + "," + fixed(r.kept_fraction) + "," +
           fixed(r.gamma_measured) + "," + (r.alpha_measured ? fixed(*r.alpha_measured) : "") + "," +
           std::to_string(r.predicted_length) + "," + to_string(r.finder) + "," + std::to_string(r.cycle_length) + "," +
           std::to_string(r.scc_bound) + "," + (r.max_class_size ? std::to_string(*r.max_class_size) : "") + "," +
           (r.violation ? "1" : "0") + "," + (r.below_prediction ? "1" : "0") + "," + to_string(r.status) + "," +
           detail::csv_field(r.note);
    out += timings ? "," + fixed(r.duration_ms, 3) + "\n" : "\n";
  }
  return out;
}

}  // namespace dicycle
