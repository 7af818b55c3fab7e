#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qaoapca/graph.hpp"

namespace qaoapca {

// Graph-set text format:
//
//   # comment lines start with '#'
//   n m
//   u v w        (m edge lines)
//   <blank line>
//   n m
//   ...
//
// Weights are written as the shortest decimal that round-trips.

void write_graph_set(std::ostream& out, std::span<const WeightedGraph> graphs,
                     std::span<const std::string> header_comments = {});
std::vector<WeightedGraph> read_graph_set(std::istream& in);

void save_graph_set(const std::string& path, std::span<const WeightedGraph> graphs,
                    std::span<const std::string> header_comments = {});
std::vector<WeightedGraph> load_graph_set(const std::string& path);

}  // namespace qaoapca
