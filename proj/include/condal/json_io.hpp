#pragma once

#include <string>

#include "json.hpp"

#include "condal/event_algebra.hpp"
#include "condal/logic.hpp"
#include "condal/probability.hpp"

namespace condal {

// {"atoms": ["w1","w2"]} for a plain algebra, or {"variables": ["p","q"]}
// for the Lindenbaum algebra of those variables.
AlgebraPtr algebra_from_json(const nlohmann::json& doc);

// {"weights": {"w1": "1/3", "w2": "2/3"}} with one entry per atom;
// rationals are "p/q" or integer strings, decimals rejected.
EventMeasure measure_from_json(const nlohmann::json& doc,
                               const AlgebraPtr& algebra);

// {"variables": [...], "conditionals": ["(p|q)", ...]} (or "atoms" in
// place of "variables" for a plain algebra).
KnowledgeBase kb_from_json(const nlohmann::json& doc);

nlohmann::json event_to_json(const Event& e);  // sorted label array
// Accepts a label array or a formula string.
Event event_from_json(const nlohmann::json& doc, const AlgebraPtr& algebra);

nlohmann::json measure_to_json(const EventMeasure& p);

nlohmann::json load_json_file(const std::string& path);

}  // namespace condal
