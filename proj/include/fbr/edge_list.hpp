#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "fbr/graph.hpp"

namespace fbr {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }  // 0 when not tied to a line

 private:
  int line_;
};

struct LabelledGraph {
  Graph graph;
  std::vector<std::string> labels;  // labels[agent] = token from the file
};

/// One edge per line: two tokens separated by whitespace and/or a comma.
/// Blank lines and lines starting with '#' are skipped. Tokens become agents
/// 0..n-1 in order of first appearance. Throws ParseError on malformed lines,
/// self-loops and inputs without edges.
LabelledGraph parse_edge_list(std::istream& in);
LabelledGraph load_edge_list(const std::filesystem::path& path);

/// Writes "i j" per edge, lexicographic order.
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace fbr
