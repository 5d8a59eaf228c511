#include <gtest/gtest.h>

#include "dicycle/harness.hpp"
#include "dicycle/report_json.hpp"

using namespace dicycle;

namespace {

ExperimentConfig layered_small() {
  return parse_config(
      "name = small\n"
      "n = 14\n"
      "p = 0.8\n"
      "seeds = 1..50\n"
      "[adversary]\n"
      "strategy = layered\n"
      "alpha = 0.5\n"
      "[finder]\n"
      "method = exact\n");
}

TrialRecord record_with_length(std::size_t len) {
  TrialRecord r;
  r.cycle_length = len;
  r.kept_fraction = 0.75;
  r.predicted_length = 7;
  return r;
}

}  // namespace

TEST(Config, ParsesSectionsAndComments) {
  const auto c = parse_config(
      "# a comment\n"
      "name = demo\n"
      "n = 40\n"
      "p = 0.3\n"
      "seeds = 1..3, 9\n"
      "gamma = 0.3\n"
      "threads = 2\n"
      "[adversary]\n"
      "strategy = random\n"
      "[finder]\n"
      "method = dfs\n"
      "restarts = 4\n"
      "[tolerances]\n"
      "fraction_tol = 0.01\n"
      "length_tol = 0.1\n");
  EXPECT_EQ(c.name, "demo");
  EXPECT_EQ(c.n, 40u);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{1, 2, 3, 9}));
  EXPECT_EQ(c.adversary.kind, AdversaryKind::random);
  EXPECT_DOUBLE_EQ(adversary_keep(c), 0.8);
  EXPECT_EQ(c.finder.kind, FinderKind::dfs);
  EXPECT_EQ(c.finder.restarts, 4u);
  EXPECT_EQ(c.threads, 2u);
  ASSERT_TRUE(c.tolerances.fraction_tol);
  EXPECT_DOUBLE_EQ(*c.tolerances.fraction_tol, 0.01);
  EXPECT_DOUBLE_EQ(c.tolerances.length_tol, 0.1);
}

TEST(Config, InlineComments) {
  const auto c = parse_config("n = 14   # vertices\np = 0.8\nseeds = 1..3 # three\n[adversary] # thinning\nstrategy = layered  # kind\nalpha = 0.5\n");
  EXPECT_EQ(c.n, 14u);
  EXPECT_EQ(c.seeds.size(), 3u);
  EXPECT_EQ(c.adversary.kind, AdversaryKind::layered);
}

TEST(Config, Rejections) {
  const std::string base = "n = 14\np = 0.8\nseeds = 1\n[adversary]\nstrategy = layered\nalpha = 0.5\n";
  EXPECT_NO_THROW(parse_config(base));
  EXPECT_THROW(parse_config("p = 0.8\nseeds = 1\n"), ConfigError);
  EXPECT_THROW(parse_config(base + "[finder]\nmethod = magic\n"), ConfigError);
  EXPECT_THROW(parse_config(base + "[finder]\nbogus = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("n = 1\np = 0.8\nseeds = 1\n[adversary]\nalpha = 0.5\n"), ConfigError);
  EXPECT_THROW(parse_config("n = 14\np = 0\nseeds = 1\n[adversary]\nalpha = 0.5\n"), ConfigError);
  EXPECT_THROW(parse_config("n = 14\np = 0.5\nseeds = 1,1\n[adversary]\nalpha = 0.5\n"), ConfigError);
  EXPECT_THROW(parse_config("n = 30\np = 0.5\nseeds = 1\n[adversary]\nalpha = 0.5\n"), ConfigError);
  EXPECT_THROW(parse_config("n = 14\np = 0.5\nseeds = 1\n[adversary]\nstrategy = layered\n"), ConfigError);
  EXPECT_THROW(parse_config("n = 14\np = x\nseeds = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("n = 14\np = 0.5\nseeds = 5..2\n"), ConfigError);
  EXPECT_THROW(parse_config("[adversary\n"), ConfigError);
}

TEST(Config, GammaSuppliesAlpha) {
  const auto c = parse_config("n = 14\np = 0.8\nseeds = 1\ngamma = 0.25\n[adversary]\nstrategy = layered\n");
  EXPECT_EQ(adversary_alpha(c), 0.5);
}

TEST(Experiment, LayeredSmallNeverBeatsClassSize) {
  const auto recs = run_experiment(layered_small());
  ASSERT_EQ(recs.size(), 50u);
  for (const auto& r : recs) {
    EXPECT_EQ(r.status, TrialStatus::ok) << r.note;
    EXPECT_LE(r.cycle_length, 7u);
    EXPECT_LE(r.cycle_length, r.scc_bound);
    ASSERT_TRUE(r.max_class_size);
    EXPECT_LE(r.scc_bound, *r.max_class_size);
    EXPECT_FALSE(r.violation);
    EXPECT_GE(r.kept_fraction, 0.0);
    EXPECT_LE(r.kept_fraction, 1.0);
  }
  EXPECT_EQ(summarize(recs).violations, 0u);
}

TEST(Experiment, LayeredLargeKeptFraction) {
  auto c = parse_config(
      "n = 400\np = 0.05\nseeds = 1..10\n"
      "[adversary]\nstrategy = layered\nalpha = 0.5\n"
      "[finder]\nmethod = scc-bound\n"
      "[tolerances]\nfraction_tol = 0.02\n");
  for (const auto& r : run_experiment(c)) {
    EXPECT_NEAR(r.kept_fraction, 0.75, 0.02);
    EXPECT_LE(r.scc_bound, 200u);
    EXPECT_FALSE(r.violation) << r.note;
  }
}

TEST(Experiment, TwoCycle) {
  const auto c = parse_config("n = 2\np = 1\nseeds = 3\n[adversary]\nstrategy = random\nkeep = 1\n");
  const auto recs = run_experiment(c);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].cycle_length, 2u);
  EXPECT_EQ(recs[0].kept_fraction, 1.0);
}

TEST(Experiment, AcyclicSplitHalvesHaveNoCycles) {
  const auto c = parse_config("n = 12\np = 0.5\nseeds = 1..5\n[adversary]\nstrategy = acyclic-split\n");
  for (const auto& r : run_experiment(c)) {
    EXPECT_EQ(r.cycle_length, 0u);
    EXPECT_EQ(r.scc_bound, 1u);
    EXPECT_GE(r.kept_fraction, 0.5);
    EXPECT_FALSE(r.violation);
  }
}

TEST(Experiment, ToleranceViolationIsFlagged) {
  const auto c = parse_config(
      "n = 40\np = 0.3\nseeds = 1\n[adversary]\nstrategy = layered\nalpha = 0.5\n"
      "[finder]\nmethod = scc-bound\n[tolerances]\nfraction_tol = 0\n");
  const auto recs = run_experiment(c);
  EXPECT_TRUE(recs[0].violation);
  EXPECT_NE(recs[0].note.find("kept fraction"), std::string::npos);
}

TEST(Experiment, MemoryCapSkips) {
  auto c = layered_small();
  c.seeds = {1};
  c.max_memory_mb = 0;
  const auto recs = run_experiment(c);
  EXPECT_EQ(recs[0].status, TrialStatus::skipped);
  EXPECT_EQ(summarize(recs).skipped, 1u);
}

TEST(Experiment, ThreadsDoNotChangeOutput) {
  auto c = layered_small();
  c.seeds = {9, 3, 7, 1, 5, 2};
  const auto serial = to_csv(c, run_experiment(c));
  c.threads = 4;
  EXPECT_EQ(to_csv(c, run_experiment(c)), serial);
}

TEST(Experiment, CsvIsDeterministic) {
  const auto c = layered_small();
  const auto a = to_csv(c, run_experiment(c));
  EXPECT_EQ(a, to_csv(c, run_experiment(c)));
  EXPECT_EQ(a.rfind(kTrialSchema, 0), 0u);
  const auto header = a.substr(a.find('\n') + 1, a.find('\n', a.find('\n') + 1) - a.find('\n') - 1);
  EXPECT_EQ(header,
            "seed,n,p,adversary,edges,density,r_witnessed,r_ratio,kept_edges,kept_fraction,gamma_measured,"
            "alpha_measured,predicted_length,finder,cycle_length,scc_bound,max_class_size,violation,"
            "below_prediction,status,note");
  EXPECT_NE(to_csv(c, run_experiment(c), true).find("duration_ms"), std::string::npos);
}

TEST(Summary, Aggregates) {
  EXPECT_THROW(summarize({}), EmptyInput);
  const auto one = summarize({record_with_length(5)});
  EXPECT_EQ(one.trials, 1u);
  EXPECT_DOUBLE_EQ(one.mean_cycle, 5.0);
  EXPECT_EQ(one.min_cycle, 5u);
  EXPECT_EQ(one.max_cycle, 5u);
  const auto two = summarize({record_with_length(6), record_with_length(8)});
  EXPECT_DOUBLE_EQ(two.mean_cycle, 7.0);
  EXPECT_EQ(two.min_cycle, 6u);
  EXPECT_EQ(two.max_cycle, 8u);
  EXPECT_DOUBLE_EQ(two.mean_ratio_to_predicted, 1.0);
  EXPECT_EQ(to_json_value(two)["cycle_length"]["max"], 8);
}
