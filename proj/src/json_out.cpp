#include "clonelab/json_out.hpp"

namespace clonelab {

using nlohmann::json;

json to_json(const FnTable& f) {
  return json{{"n", f.universe()}, {"arity", f.arity()}, {"table", f.values()}, {"id", f.id()}};
}

json to_json(const SnailDecomposition& d) {
  json components = json::array();
  for (const Snail& s : d.components) {
    json levels = json::object();
    for (int x : s.elements) {
      levels[std::to_string(x)] = d.level[static_cast<std::size_t>(x)];
    }
    components.push_back(json{{"period", s.period},
                              {"cycle", s.cycle},
                              {"elements", s.elements},
                              {"levels", levels}});
  }
  return json{{"components", components}, {"component_of", d.component_of}};
}

json to_json(const SnailSpectrum& s) {
  json out = json::object();
  for (const auto& [p, count] : s) out[std::to_string(p)] = count;
  return out;
}

namespace {
json lambda_map(const std::map<int, bool>& m) {
  json out = json::object();
  for (const auto& [lambda, v] : m) out[std::to_string(lambda)] = v;
  return out;
}
}  // namespace

json to_json(const MonoidPredicateReport& r) {
  return json{{"fn_id", r.fn_id},
              {"n", r.n},
              {"k", r.k},
              {"lambda_bound", r.lambda_bound},
              {"lambdas", r.lambdas},
              {"richness", json{{"periods", r.richness.periods}, {"min_count", r.richness.min_count}}},
              {"A", r.A},
              {"A_prime", r.A_prime},
              {"B", r.B},
              {"E", r.E},
              {"F", r.F},
              {"G_lambda", lambda_map(r.G_lambda)},
              {"M_lambda", lambda_map(r.M_lambda)},
              {"lambda_injective", lambda_map(r.lambda_injective)},
              {"lambda_surjective", lambda_map(r.lambda_surjective)},
              {"generous", r.generous},
              {"chi", r.chi},
              {"rich", r.rich}};
}

json to_json(const ApproxProbeReport& r) {
  json sample = json::array();
  for (const ApproxInstance& inst : r.sample) {
    json entry{{"domain", inst.domain}, {"partial_values", inst.partial_values}};
    if (inst.found) {
      entry["found"] = to_json(*inst.found);
    } else {
      entry["found"] = nullptr;
    }
    sample.push_back(std::move(entry));
  }
  return json{{"n", r.n},
              {"arity", r.arity},
              {"k", r.k},
              {"seed", r.seed},
              {"trials", r.trials},
              {"exhaustive", r.exhaustive},
              {"instances", r.instances},
              {"hits", r.hits},
              {"hit_rate", r.hit_rate},
              {"sample", sample}};
}

}  // namespace clonelab
