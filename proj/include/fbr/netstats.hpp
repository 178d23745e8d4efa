#pragma once

#include <cstdint>
#include <string>

#include "fbr/graph.hpp"

namespace fbr {

struct NetworkSummary {
  int households = 0;
  double giant_share = 0;
  double average_degree = 0;
  double density = 0;
  double average_clustering = 0;  // mean local coefficient, 0 below degree 2
  double average_distance = 0;    // giant component, unordered pairs
  double information = 0;         // comparison-network density, giant component
  double transitivity = 0;        // global clustering, auxiliary
};

NetworkSummary summarize(const Graph& g);

/// Drops every edge with no common friend. One pass by default; with
/// fixed_point the removal repeats until nothing changes.
Graph supported_subgraph(const Graph& g, bool fixed_point = false);

struct InformationDecomposition {
  std::size_t total = 0;  // unique comparisons (edges of the comparison network)
  std::size_t within = 0;
  std::size_t across = 0;
  std::size_t remainder = 0;
};

InformationDecomposition decompose_information(const Graph& g);

/// Sum over agents of C(degree, 2): friend-based observations counted with
/// multiplicity.
std::uint64_t comparison_observations(const Graph& g);

/// comparison_observations minus the number of unique comparisons.
std::uint64_t repeated_observation_count(const Graph& g);

/// Column header for batch output, matching summary_csv_row.
std::string summary_csv_header();

std::string summary_csv_row(const std::string& name, const NetworkSummary& s, const InformationDecomposition& d,
                            std::uint64_t repeated);

}  // namespace fbr
