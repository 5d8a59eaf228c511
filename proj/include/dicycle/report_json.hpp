#pragma once

// JSON views of the library's report types, for the CLI and for tools that
// consume its output. Field names follow the struct members.

#include <json.hpp>

#include "dicycle/finders.hpp"
#include "dicycle/harness.hpp"
#include "dicycle/pseudorandomness.hpp"
#include "dicycle/thresholds.hpp"
#include "dicycle/witness.hpp"

namespace dicycle {

using nlohmann::json;

inline json to_json_value(const VertexSet& s) { return json(std::vector<Vertex>(s.begin(), s.end())); }

inline json to_json_value(const SetPairWitness& w) {
  return {{"A", to_json_value(w.first)}, {"B", to_json_value(w.second)}, {"deviation", w.deviation}};
}

inline json to_json_value(const PseudorandomnessReport& r) {
  json j{{"p", r.p},
         {"r_witnessed", r.r_witnessed},
         {"mode", to_string(r.mode)},
         {"trials", r.trials},
         {"pairs_examined", r.pairs_examined},
         {"degenerate_density", r.degenerate_density},
         {"worst_pair", nullptr}};
  if (r.mode == SearchMode::sampled) j["lower_bound"] = true;
  if (r.worst_pair) j["worst_pair"] = to_json_value(*r.worst_pair);
  return j;
}

inline json to_json_value(const BoundednessCheck& b) {
  json j{{"bounded", b.bounded},
         {"certified", b.certified},
         {"mode", to_string(b.mode)},
         {"pairs_examined", b.pairs_examined},
         {"worst_pair", nullptr}};
  if (b.mode == SearchMode::sampled && b.bounded) j["verdict"] = "no violation found";
  if (b.worst_pair) {
    j["worst_pair"] = {{"U", to_json_value(b.worst_pair->first)},
                       {"W", to_json_value(b.worst_pair->second)},
                       {"excess", b.worst_pair->deviation}};
  }
  return j;
}

inline json to_json_value(const RegularityCheck& r) {
  json j{{"delta", r.delta},
         {"p", r.p},
         {"densities", {{"U->W", r.density_uw}, {"W->U", r.density_wu}}},
         {"regular", r.regular},
         {"bidensity_ok", r.bidensity_ok},
         {"mode", to_string(r.mode)},
         {"subpairs_examined", r.subpairs_examined},
         {"worst_subpair", nullptr}};
  if (r.mode == SearchMode::sampled && r.regular) j["verdict"] = "no violation found";
  if (r.worst_subpair) {
    j["worst_subpair"] = {{"U'", to_json_value(r.worst_subpair->sub_u)},
                          {"W'", to_json_value(r.worst_subpair->sub_w)},
                          {"direction", to_string(r.worst_subpair->direction)},
                          {"deviation", r.worst_subpair->deviation}};
  }
  return j;
}

inline json to_json_value(const ExpansionCertificate& c) {
  json j{{"t", c.t}, {"k", c.k}, {"mode", to_string(c.mode)}, {"hypothesis_holds", c.hypothesis_holds()},
         {"violating_pair", nullptr}};
  if (c.mode == SearchMode::sampled) j["lower_bound"] = true;
  if (c.violating_pair) {
    j["violating_pair"] = {{"A", to_json_value(c.violating_pair->first)}, {"B", to_json_value(c.violating_pair->second)}};
  }
  return j;
}

inline json to_json_value(const ResilienceCurvePoint& p) {
  return {{"alpha", p.alpha}, {"w_alpha", p.w_alpha}, {"gamma", p.gamma}, {"predicted_fraction", p.predicted_fraction}};
}

inline json to_json_value(const PathWitness& p) { return {{"length", p.length()}, {"vertices", p.vertices}}; }

inline json to_json_value(const CycleWitness& c) { return {{"length", c.length()}, {"vertices", c.vertices}}; }

inline json to_json_value(const Summary& s) {
  return {{"trials", s.trials},
          {"ok", s.ok},
          {"skipped", s.skipped},
          {"errors", s.errors},
          {"cycle_length", {{"mean", s.mean_cycle}, {"min", s.min_cycle}, {"max", s.max_cycle}}},
          {"mean_ratio_to_predicted", s.mean_ratio_to_predicted},
          {"kept_fraction", {{"mean", s.mean_kept_fraction}, {"min", s.min_kept_fraction}, {"max", s.max_kept_fraction}}},
          {"max_r_ratio", s.max_r_ratio},
          {"violations", s.violations},
          {"below_prediction", s.below_prediction}};
}

}  // namespace dicycle
