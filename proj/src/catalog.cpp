#include "fbr/catalog.hpp"

#include <cctype>
#include <stdexcept>

namespace fbr {

Graph triangle() { return Graph(3, {{0, 1}, {0, 2}, {1, 2}}); }

Graph line4() { return path_graph(4); }

Graph pendant4() { return Graph(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}}); }

Graph supported_chain9() {
  return Graph(9, {{0, 1}, {1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 8}, {0, 2},
                   {2, 3}, {3, 5}, {5, 7}, {7, 8}, {0, 3}, {5, 8}});
}

Graph social7() { return Graph(7, {{1, 4}, {1, 3}, {2, 3}, {2, 5}, {5, 6}, {0, 5}, {0, 2}, {3, 4}}); }

Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::vector<std::pair<Agent, Agent>> e;
  for (Agent a = 0; a < n; ++a) e.emplace_back(a, (a + 1) % n);
  return Graph(n, e);
}

Graph complete_graph(int n) {
  std::vector<std::pair<Agent, Agent>> e;
  for (Agent a = 0; a < n; ++a)
    for (Agent b = a + 1; b < n; ++b) e.emplace_back(a, b);
  return Graph(n, e);
}

Graph star_graph(int leaves) {
  std::vector<std::pair<Agent, Agent>> e;
  for (Agent a = 1; a <= leaves; ++a) e.emplace_back(0, a);
  return Graph(leaves + 1, e);
}

Graph path_graph(int n) {
  std::vector<std::pair<Agent, Agent>> e;
  for (Agent a = 0; a + 1 < n; ++a) e.emplace_back(a, a + 1);
  return Graph(n, e);
}

Graph named_graph(const std::string& name) {
  if (name == "triangle") return triangle();
  if (name == "line4") return line4();
  if (name == "pendant4") return pendant4();
  if (name == "chain9") return supported_chain9();
  if (name == "social7") return social7();

  std::size_t split = name.size();
  while (split > 0 && std::isdigit(static_cast<unsigned char>(name[split - 1]))) --split;
  if (split < name.size() && split > 0) {
    const std::string stem = name.substr(0, split);
    const int k = std::stoi(name.substr(split));
    if (stem == "windmill") return windmill(k);
    if (stem == "cycle") return cycle_graph(k);
    if (stem == "complete") return complete_graph(k);
    if (stem == "star") return star_graph(k);
    if (stem == "path") return path_graph(k);
  }
  std::string known;
  for (const auto& h : named_graph_help()) known += "\n  " + h;
  throw std::invalid_argument("unknown graph '" + name + "'; known:" + known);
}

std::vector<std::string> named_graph_help() {
  return {"triangle", "line4", "pendant4 (triangle 0,1,2 plus pendant 0-3)", "chain9 (supported chain of triangles)",
          "social7", "windmill<N>", "cycle<N>", "complete<N>", "star<LEAVES>", "path<N>"};
}

}  // namespace fbr
