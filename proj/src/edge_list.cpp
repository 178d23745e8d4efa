#include "fbr/edge_list.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

namespace fbr {

LabelledGraph parse_edge_list(std::istream& in) {
  std::unordered_map<std::string, Agent> ids;
  std::vector<std::string> labels;
  std::vector<std::pair<Agent, Agent>> edges;
  auto id_of = [&](const std::string& token) {
    auto [it, fresh] = ids.try_emplace(token, static_cast<Agent>(labels.size()));
    if (fresh) labels.push_back(token);
    return it->second;
  };

  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::vector<std::string> tokens;
    std::string current;
    for (char c : line.substr(first)) {
      if (c == ' ' || c == '\t' || c == ',') {
        if (!current.empty()) tokens.push_back(std::move(current));
        current.clear();
      } else {
        current += c;
      }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    if (tokens.size() != 2)
      throw ParseError(number, "expected two node ids, found " + std::to_string(tokens.size()) + " tokens");
    if (tokens[0] == tokens[1]) throw ParseError(number, "self-loop on '" + tokens[0] + "'");
    const Agent a = id_of(tokens[0]);  // sequenced: ids follow first appearance
    edges.emplace_back(a, id_of(tokens[1]));
  }
  if (edges.empty()) throw ParseError(0, "edge list contains no edges");
  const int n = static_cast<int>(labels.size());
  return {Graph(n, edges), std::move(labels)};
}

LabelledGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const auto& e : g.edges()) out << e.first << ' ' << e.second << '\n';
}

}  // namespace fbr
