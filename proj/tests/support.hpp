#pragma once

// Shared test helpers: fixture paths and an independent face counter.

#include <map>
#include <random>
#include <string>
#include <tuple>
#include <algorithm>
#include <vector>

#include "rotsys/core.hpp"
#include "rotsys/io.hpp"

namespace testing_support {

inline std::string fixture(const std::string& name) { return std::string(ROTSYS_FIXTURE_DIR) + "/" + name; }

inline rotsys::RotationSystem load(const std::string& name) { return rotsys::read_rot_file(fixture(name)); }

// Face lengths from a plain label-level walk. Each face is the orbit of a
// (dart, side) state; the two sides of a dart are the walk and its reverse.
inline std::vector<int> oracle_face_lengths(const rotsys::RotationSystem& rs) {
  using Rows = std::map<std::string, std::vector<std::string>>;
  Rows rows;
  for (int v = 0; v < rs.vertex_count(); ++v) rows[rs.name(v)] = rs.rotation_labels(v);
  auto sig = [&](const std::string& a, const std::string& b) { return rs.signature(rs.id(a), rs.id(b)); };
  auto step_in_row = [&](const std::string& w, const std::string& u, int dir) {
    const auto& r = rows.at(w);
    std::size_t i = 0;
    while (r[i] != u) ++i;
    return r[(i + r.size() + dir) % r.size()];
  };
  // state: (from, to, orientation); the mirrored state (to, from, -orientation') is
  // the same face walked backwards.
  std::map<std::tuple<std::string, std::string, int>, bool> seen;
  std::vector<int> lengths;
  for (const auto& [u, r] : rows) {
    for (const auto& w : r) {
      for (int s0 : {1, -1}) {
        if (seen.count({u, w, s0})) continue;
        int len = 0;
        std::string a = u, b = w;
        int s = s0;
        while (!seen.count({a, b, s})) {
          seen[{a, b, s}] = true;
          const int s_at = s * sig(a, b);
          const auto c = step_in_row(b, a, s_at);
          // reverse direction of this step: arriving at b from c going the other way
          seen[{c, b, -s_at * sig(b, c)}] = true;
          a = b;
          b = c;
          s = s_at;
          ++len;
        }
        lengths.push_back(len);
      }
    }
  }
  return lengths;
}

// A random signed rotation system on a random connected graph.
inline rotsys::RotationSystem random_system(std::mt19937_64& rng, int n, double p, bool signed_edges) {
  std::vector<std::vector<int>> adj(n);
  std::uniform_real_distribution<double> U(0, 1);
  for (int v = 1; v < n; ++v) {
    const int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      bool has = false;
      for (int w : adj[u]) has |= w == v;
      if (!has && U(rng) < p) {
        adj[u].push_back(v);
        adj[v].push_back(u);
      }
    }
  }
  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
  for (int u = 0; u < n; ++u) {
    std::shuffle(adj[u].begin(), adj[u].end(), rng);
    std::vector<std::string> r;
    for (int w : adj[u]) r.push_back(std::to_string(w));
    rows.emplace_back(std::to_string(u), r);
  }
  auto rs = rotsys::RotationSystem::from_rows(rows);
  if (signed_edges) {
    for (auto [u, v] : rs.edges()) {
      if (U(rng) < 0.3) rs.set_signature(u, v, -1);
    }
  }
  return rs;
}

}  // namespace testing_support
