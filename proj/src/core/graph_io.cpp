#include <fstream>
#include <sstream>

#include <json.hpp>

#include "semifactor/error.hpp"
#include "semifactor/graph.hpp"

namespace semifactor {

BipartiteGraph graph_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("graph JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("m") || !doc.contains("n") || !doc.contains("edges")) {
    throw Error(ErrorKind::ParseError, "graph JSON needs keys m, n, edges");
  }
  try {
    const int m = doc.at("m").get<int>();
    const int n = doc.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::ParseError, "edge must be [i, j]");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return BipartiteGraph(m, n, edges);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("graph JSON: ") + e.what());
  }
}

std::string graph_to_json(const BipartiteGraph& g) {
  nlohmann::json doc;
  doc["m"] = g.m();
  doc["n"] = g.n();
  doc["edges"] = nlohmann::json::array();
  for (auto [u, v] : g.edges()) doc["edges"].push_back({u, v});
  return doc.dump();
}

BipartiteGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open graph file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return graph_from_json(buf.str());
}

}  // namespace semifactor
