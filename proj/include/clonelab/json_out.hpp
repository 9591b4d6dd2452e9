#ifndef CLONELAB_JSON_OUT_HPP
#define CLONELAB_JSON_OUT_HPP

#include <json.hpp>

#include "clonelab/approx.hpp"
#include "clonelab/funcgraph.hpp"
#include "clonelab/monoids.hpp"

namespace clonelab {

nlohmann::json to_json(const FnTable& f);
nlohmann::json to_json(const SnailDecomposition& d);
nlohmann::json to_json(const SnailSpectrum& s);
nlohmann::json to_json(const MonoidPredicateReport& r);
nlohmann::json to_json(const ApproxProbeReport& r);

}  // namespace clonelab

#endif
