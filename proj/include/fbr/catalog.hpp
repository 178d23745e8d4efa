#pragma once

#include <string>
#include <vector>

#include "fbr/graph.hpp"

namespace fbr {

// Small named networks used throughout the tests and the CLI.

Graph triangle();
Graph line4();              // 0-1-2-3
Graph pendant4();           // triangle 0,1,2 plus pendant 0-3
Graph supported_chain9();   // nine nodes, a chain of triangles; every link supported
Graph social7();            // seven nodes, eight links; drawn with its comparison network
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph star_graph(int leaves);  // centre 0
Graph path_graph(int n);

/// Looks up a name such as "triangle", "windmill7", "cycle6", "complete7" or
/// "star3". Throws std::invalid_argument listing the known names.
Graph named_graph(const std::string& name);

std::vector<std::string> named_graph_help();

}  // namespace fbr
