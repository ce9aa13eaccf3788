#include "condal/json_io.hpp"

#include <fstream>

#include "condal/errors.hpp"
#include "condal/parser.hpp"

namespace condal {

using nlohmann::json;

AlgebraPtr algebra_from_json(const json& doc) {
  if (!doc.is_object())
    throw Error("algebra document must be a JSON object");
  if (doc.contains("atoms") && doc.contains("variables"))
    throw Error("give either \"atoms\" or \"variables\", not both");
  if (doc.contains("atoms")) {
    auto labels = doc.at("atoms").get<std::vector<std::string>>();
    const int n = static_cast<int>(labels.size());
    return EventAlgebra::make(n, std::move(labels));
  }
  if (doc.contains("variables")) {
    auto names = doc.at("variables").get<std::vector<std::string>>();
    const int m = static_cast<int>(names.size());
    return EventAlgebra::lindenbaum(m, std::move(names));
  }
  throw Error("algebra document needs an \"atoms\" or \"variables\" key");
}

EventMeasure measure_from_json(const json& doc, const AlgebraPtr& algebra) {
  if (!doc.is_object() || !doc.contains("weights"))
    throw Error("measure document needs a \"weights\" object");
  const json& w = doc.at("weights");
  if (!w.is_object()) throw Error("\"weights\" must map labels to rationals");
  std::vector<Rational> weights(algebra->atom_count());
  std::vector<bool> seen(algebra->atom_count(), false);
  for (auto it = w.begin(); it != w.end(); ++it) {
    int idx = algebra->atom_index(it.key());
    if (idx < 0) throw Error("unknown atom label '" + it.key() + "'");
    if (!it.value().is_string())
      throw Error("weights must be rational strings like \"1/3\" (atom '" +
                  it.key() + "')");
    weights[idx] = parse_rational(it.value().get<std::string>());
    seen[idx] = true;
  }
  for (int i = 0; i < algebra->atom_count(); ++i)
    if (!seen[i])
      throw Error("missing weight for atom '" + algebra->atom_label(i) + "'");
  return EventMeasure::make(algebra, std::move(weights));
}

KnowledgeBase kb_from_json(const json& doc) {
  AlgebraPtr algebra = algebra_from_json(doc);
  std::vector<std::string> sources;
  if (doc.contains("conditionals"))
    sources = doc.at("conditionals").get<std::vector<std::string>>();
  KnowledgeBase kb(algebra);
  for (const auto& s : sources) kb.add(parse_validated(s, algebra));
  return kb;
}

json event_to_json(const Event& e) {
  json out = json::array();
  for (int i : e.atoms_below()) out.push_back(e.algebra()->atom_label(i));
  return out;
}

Event event_from_json(const json& doc, const AlgebraPtr& algebra) {
  if (doc.is_array())
    return algebra->from_labels(doc.get<std::vector<std::string>>());
  if (doc.is_string())
    return truth_set(*parse_prop(doc.get<std::string>()), algebra);
  throw Error("an event is a label array or a formula string");
}

json measure_to_json(const EventMeasure& p) {
  json weights = json::object();
  for (int i = 0; i < p.algebra()->atom_count(); ++i)
    weights[p.algebra()->atom_label(i)] = rational_string(p.atom_weight(i));
  return json{{"weights", weights}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw Error("bad JSON in '" + path + "': " + e.what());
  }
  return doc;
}

}  // namespace condal
