#pragma once

// Exhaustive and backtracking oracles for small graphs.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rotsys/core.hpp"

namespace rotsys {

/// Vertex list plus edge list; vertex order is the branching order.
struct Graph {
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
};

Graph complete_graph(int n);  // labels 0..n-1
/// Named families:
///   Kn          complete graph on 0..n-1
///   Kn-Km       numbered 0..n-m-1 plus pairwise nonadjacent letters x,y,z,...
///   Kn-P3       complete graph on 0..n-1 minus the path 0-1-2-3
///   Kn+pK       complete graph on 0..n-1 plus p adjacent to 0..K-1
///   Gn          split-complete: 1..n-1 complete, x0 ~ 1..h, x1 ~ h+1..n-1, h = (n-1)/2
///   Yn          0..n-3 complete, x adjacent to all, y0 to the even and y1 to
///               the odd numbered vertices
Graph parse_graph_spec(std::string_view spec);
Graph graph_of(const RotationSystem& rs);

enum class SearchStatus { kFound, kExhausted, kBudget };
std::string to_string(SearchStatus s);

struct SearchSpec {
  Graph graph;
  bool orientable_only = true;      // oriented triangle search (Rule R*)
  bool require_nonorientable = false;  // with !orientable_only: skip orientable solutions
  std::uint64_t budget = 100'000'000;  // placed triangles
  /// Oriented search only: {v, n1, n2, ...} fixes n1 n2 ... as consecutive
  /// clockwise neighbors at v; the triangles (n_i, v, n_i+1) are placed first.
  std::vector<std::vector<std::string>> forced_rows;
};

struct SearchResult {
  SearchStatus status = SearchStatus::kExhausted;
  std::optional<RotationSystem> rs;
  std::uint64_t nodes = 0;
};

/// Depth-first search over triangle placements. Always branches on the
/// uncovered edge side with the fewest candidates, ties broken by vertex
/// order then neighbor order, candidates tried in vertex order.
SearchResult find_triangular(const SearchSpec& spec);

struct ClassifyResult {
  int n = 0;
  std::uint64_t systems = 0;
  int min_genus = 0;
  std::map<int, std::map<EmbeddingType, std::uint64_t>> types_by_genus;
};

/// Every orientable rotation system of K_n, n <= 5.
ClassifyResult classify_complete(int n);

/// Independent face walk on (vertex, rotation slot, orientation) states;
/// each face is reported once, as a corner cycle in walk order.
FaceSet oracle_trace(const RotationSystem& rs);
/// Face sets equal as multisets of vertex cycles up to rotation and reversal.
bool same_faces(const FaceSet& a, const FaceSet& b);

}  // namespace rotsys
