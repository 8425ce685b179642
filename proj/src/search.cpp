#include "rotsys/search.hpp"

#include <algorithm>
#include <numeric>
#include <array>
#include <regex>
#include <set>

namespace rotsys {

// ---------------------------------------------------------------------------
// Graphs

Graph complete_graph(int n) {
  Graph g;
  for (int i = 0; i < n; ++i) g.vertices.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.edges.push_back(make_edge(g.vertices[i], g.vertices[j]));
  }
  return g;
}

Graph parse_graph_spec(std::string_view text) {
  const std::string spec(text);
  std::smatch m;
  auto fail_spec = [&](const std::string& why) -> Graph { fail(ErrorKind::kMalformed, "graph spec '" + spec + "': " + why); };
  if (std::regex_match(spec, m, std::regex(R"(K(\d+))"))) return complete_graph(std::stoi(m[1]));
  if (std::regex_match(spec, m, std::regex(R"(K(\d+)-P3)"))) {
    const int n = std::stoi(m[1]);
    if (n < 4) return fail_spec("needs n >= 4");
    Graph g = complete_graph(n);
    const std::set<Edge> path{{"0", "1"}, {"1", "2"}, {"2", "3"}};
    std::erase_if(g.edges, [&](const Edge& e) { return path.count(e) > 0; });
    return g;
  }
  if (std::regex_match(spec, m, std::regex(R"(K(\d+)-K(\d+))"))) {
    const int n = std::stoi(m[1]), k = std::stoi(m[2]);
    if (k < 2 || k > 5 || k >= n) return fail_spec("removed clique must have 2..5 vertices and fewer than n");
    Graph g;
    for (int i = 0; i < n - k; ++i) g.vertices.push_back(std::to_string(i));
    const std::string letters = "xyzuv";
    for (int i = 0; i < k; ++i) g.vertices.emplace_back(1, letters[i]);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (i >= n - k && j >= n - k) continue;
        g.edges.push_back(make_edge(g.vertices[i], g.vertices[j]));
      }
    }
    return g;
  }
  if (std::regex_match(spec, m, std::regex(R"(G(\d+))"))) {
    const int n = std::stoi(m[1]);
    if (n < 4) return fail_spec("needs n >= 4");
    Graph g;
    for (int i = 1; i < n; ++i) g.vertices.push_back(std::to_string(i));
    g.vertices.push_back("x0");
    g.vertices.push_back("x1");
    for (int i = 1; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) g.edges.push_back(make_edge(std::to_string(i), std::to_string(j)));
    }
    const int h = (n - 1) / 2;
    for (int i = 1; i < n; ++i) g.edges.push_back(make_edge(i <= h ? "x0" : "x1", std::to_string(i)));
    return g;
  }
  if (std::regex_match(spec, m, std::regex(R"(K(\d+)\+p(\d+))"))) {
    const int n = std::stoi(m[1]), k = std::stoi(m[2]);
    if (k < 3 || k > n) return fail_spec("p needs 3..n neighbors");
    Graph g = complete_graph(n);
    g.vertices.push_back("p");
    for (int i = 0; i < k; ++i) g.edges.push_back(make_edge("p", std::to_string(i)));
    return g;
  }
  if (std::regex_match(spec, m, std::regex(R"(Y(\d+))"))) {
    const int n = std::stoi(m[1]);
    if (n < 6) return fail_spec("needs n >= 6");
    Graph g = complete_graph(n - 2);
    for (const char* l : {"x", "y0", "y1"}) g.vertices.emplace_back(l);
    for (int i = 0; i < n - 2; ++i) {
      g.edges.push_back(make_edge("x", std::to_string(i)));
      g.edges.push_back(make_edge(i % 2 ? "y1" : "y0", std::to_string(i)));
    }
    return g;
  }
  return fail_spec("expected Kn, Kn-Km, Kn-P3, Kn+pK, Gn or Yn");
}

Graph graph_of(const RotationSystem& rs) {
  Graph g;
  g.vertices = rs.names();
  g.edges = rs.labeled_edges();
  return g;
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::kFound: return "found";
    case SearchStatus::kExhausted: return "exhausted";
    case SearchStatus::kBudget: return "budget";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Triangle search

namespace {

struct BudgetHit {};

class SearchBase {
 public:
  explicit SearchBase(const SearchSpec& spec) : spec_(spec), n_(static_cast<int>(spec.graph.vertices.size())) {
    std::map<std::string, int> index;
    for (int i = 0; i < n_; ++i) index[spec.graph.vertices[i]] = i;
    adj_.assign(n_, std::vector<char>(n_, 0));
    nbrs_.assign(n_, {});
    deg_.assign(n_, 0);
    for (const auto& [a, b] : spec.graph.edges) {
      const int u = index.at(a), v = index.at(b);
      if (u == v || adj_[u][v]) fail(ErrorKind::kMalformed, "graph has a loop or repeated edge");
      adj_[u][v] = adj_[v][u] = 1;
    }
    for (int u = 0; u < n_; ++u) {
      for (int v = 0; v < n_; ++v) {
        if (adj_[u][v]) nbrs_[u].push_back(v);
      }
      deg_[u] = static_cast<int>(nbrs_[u].size());
    }
  }

 protected:
  void count_node() {
    if (++nodes_ > spec_.budget) throw BudgetHit{};
  }

  RotationSystem build(const std::vector<std::vector<int>>& rotation) const {
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    for (int v = 0; v < n_; ++v) {
      std::vector<std::string> r;
      for (int w : rotation[v]) r.push_back(spec_.graph.vertices[w]);
      rows.emplace_back(spec_.graph.vertices[v], std::move(r));
    }
    return RotationSystem::from_rows(rows);
  }

  const SearchSpec& spec_;
  int n_;
  std::vector<std::vector<char>> adj_;
  std::vector<std::vector<int>> nbrs_;
  std::vector<int> deg_;
  std::uint64_t nodes_ = 0;

 public:
  std::uint64_t nodes() const { return nodes_; }

 protected:
  int index_of(const std::string& label) const {
    for (int i = 0; i < n_; ++i)
      if (spec_.graph.vertices[i] == label) return i;
    fail(ErrorKind::kPrecondition, "forced row names unknown vertex " + label);
  }
};

// Oriented: succ_[v][u] = w records face (u, v, w) at v.
class OrientedSearch : public SearchBase {
 public:
  using SearchBase::SearchBase;

  std::optional<RotationSystem> run() {
    succ_.assign(n_, std::vector<int>(n_, -1));
    pred_.assign(n_, std::vector<int>(n_, -1));
    for (const auto& row : spec_.forced_rows) {
      for (std::size_t i = 1; i + 1 < row.size(); ++i) {
        const int u = index_of(row[i]), v = index_of(row[0]), w = index_of(row[i + 1]);
        if (!adj_[u][v] || !adj_[v][w] || !adj_[u][w]) return std::nullopt;
        if (succ_[v][u] == w) continue;
        if (!place(u, v, w)) return std::nullopt;
      }
    }
    if (!dfs()) return std::nullopt;
    std::vector<std::vector<int>> rotation(n_);
    for (int v = 0; v < n_; ++v) {
      if (deg_[v] == 0) continue;
      int c = nbrs_[v].front();
      do {
        rotation[v].push_back(c);
        c = succ_[v][c];
      } while (c != nbrs_[v].front());
    }
    return build(rotation);
  }

 private:
  // Would succ_x(a) = b close a cycle shorter than the full rotation?
  bool closes_early(int x, int a, int b) const {
    int c = b, len = 1;
    while (c != a && succ_[x][c] >= 0) {
      c = succ_[x][c];
      ++len;
    }
    return c == a && len < deg_[x];
  }

  bool can_set(int x, int a, int b) const {
    return succ_[x][a] < 0 && pred_[x][b] < 0 && !closes_early(x, a, b);
  }

  void set(int x, int a, int b) {
    succ_[x][a] = b;
    pred_[x][b] = a;
  }
  void unset(int x, int a, int b) {
    succ_[x][a] = -1;
    pred_[x][b] = -1;
  }

  // face (u, v, w): succ_v(u) = w, succ_w(v) = u, succ_u(w) = v
  bool place(int u, int v, int w) {
    if (!can_set(v, u, w)) return false;
    set(v, u, w);
    if (!can_set(w, v, u)) {
      unset(v, u, w);
      return false;
    }
    set(w, v, u);
    if (!can_set(u, w, v)) {
      unset(w, v, u);
      unset(v, u, w);
      return false;
    }
    set(u, w, v);
    return true;
  }
  void remove(int u, int v, int w) {
    unset(u, w, v);
    unset(w, v, u);
    unset(v, u, w);
  }

  bool candidate(int u, int v, int w) const {
    return w != u && adj_[u][w] && pred_[v][w] < 0 && succ_[w][v] < 0 && pred_[w][u] < 0 && succ_[u][w] < 0 &&
           pred_[u][v] < 0;
  }

  bool dfs() {
    int best_u = -1, best_v = -1, best_count = 1 << 30;
    for (int v = 0; v < n_ && best_count > 0; ++v) {
      for (int u : nbrs_[v]) {
        if (succ_[v][u] >= 0) continue;
        int count = 0;
        for (int w : nbrs_[v]) count += candidate(u, v, w);
        if (count < best_count) {
          best_count = count;
          best_u = u;
          best_v = v;
          if (count <= 1) break;
        }
      }
      if (best_count <= 1) break;
    }
    if (best_u < 0) return true;  // every edge side is on a triangle
    if (best_count == 0) return false;
    const int u = best_u, v = best_v;
    for (int w : nbrs_[v]) {
      if (!candidate(u, v, w)) continue;
      count_node();
      if (!place(u, v, w)) continue;
      if (dfs()) return true;
      remove(u, v, w);
    }
    return false;
  }

  std::vector<std::vector<int>> succ_, pred_;
};

// Unoriented: triangles as vertex sets; the link of each vertex must close
// into one cycle through all of its neighbors.
class UnorientedSearch : public SearchBase {
 public:
  using SearchBase::SearchBase;

  std::optional<RotationSystem> run() {
    count_.assign(n_, std::vector<int>(n_, 0));
    link_.assign(n_, std::vector<std::array<int, 2>>(n_, {-1, -1}));
    if (!dfs()) return std::nullopt;
    return result_;
  }

 private:
  int link_degree(int x, int a) const { return (link_[x][a][0] >= 0) + (link_[x][a][1] >= 0); }

  bool closes_early(int x, int a, int b) const {
    int prev = -1, c = a, len = 1;
    while (true) {
      int next = -1;
      for (int t : link_[x][c]) {
        if (t >= 0 && t != prev) next = t;
      }
      if (next < 0) break;
      prev = c;
      c = next;
      ++len;
      if (c == a) break;
    }
    return c == b && len < deg_[x];
  }

  bool link_ok(int x, int a, int b) const {
    return link_degree(x, a) < 2 && link_degree(x, b) < 2 && !closes_early(x, a, b);
  }

  void link_add(int x, int a, int b) {
    (link_[x][a][0] < 0 ? link_[x][a][0] : link_[x][a][1]) = b;
    (link_[x][b][0] < 0 ? link_[x][b][0] : link_[x][b][1]) = a;
  }
  void link_remove(int x, int a, int b) {
    for (auto& t : link_[x][a]) {
      if (t == b) {
        t = -1;
        break;
      }
    }
    for (auto& t : link_[x][b]) {
      if (t == a) {
        t = -1;
        break;
      }
    }
  }

  bool candidate(int u, int v, int w) const {
    if (w == u || w == v || !adj_[u][w] || !adj_[v][w]) return false;
    if (count_[u][w] >= 2 || count_[v][w] >= 2) return false;
    if (chosen_.count(key(u, v, w))) return false;
    return link_ok(u, v, w) && link_ok(v, u, w) && link_ok(w, u, v);
  }

  static std::array<int, 3> key(int a, int b, int c) {
    std::array<int, 3> k{a, b, c};
    std::sort(k.begin(), k.end());
    return k;
  }

  void place(int u, int v, int w) {
    chosen_.insert(key(u, v, w));
    for (auto [a, b] : {std::pair{u, v}, std::pair{v, w}, std::pair{u, w}}) {
      ++count_[a][b];
      ++count_[b][a];
    }
    link_add(u, v, w);
    link_add(v, u, w);
    link_add(w, u, v);
  }
  void remove(int u, int v, int w) {
    chosen_.erase(key(u, v, w));
    for (auto [a, b] : {std::pair{u, v}, std::pair{v, w}, std::pair{u, w}}) {
      --count_[a][b];
      --count_[b][a];
    }
    link_remove(u, v, w);
    link_remove(v, u, w);
    link_remove(w, u, v);
  }

  bool accept() {
    std::vector<std::vector<int>> rotation(n_);
    for (int v = 0; v < n_; ++v) {
      if (deg_[v] == 0) continue;
      const int start = nbrs_[v].front();
      int prev = -1, c = start;
      do {
        rotation[v].push_back(c);
        const auto& l = link_[v][c];
        int next = l[0] == prev ? l[1] : l[0];
        if (prev < 0) next = std::min(l[0], l[1]);
        prev = c;
        c = next;
      } while (c != start);
    }
    auto rs = build(rotation);
    // signatures: the two triangles on (u,v) must turn the same way at u and v
    for (auto [u, v] : rs.edges()) {
      const int a = rs.pred(u, v);
      const int b_at_v = rs.pred(v, u);
      // a is a common neighbor; consistent if a follows u at v
      rs.set_signature(u, v, b_at_v == a ? -1 : 1);
    }
    if (spec_.require_nonorientable && is_orientable(rs)) return false;
    result_ = std::move(rs);
    return true;
  }

  bool dfs() {
    int best_u = -1, best_v = -1, best_count = 1 << 30;
    for (int u = 0; u < n_ && best_count > 1; ++u) {
      for (int v : nbrs_[u]) {
        if (v < u || count_[u][v] >= 2) continue;
        int count = 0;
        for (int w : nbrs_[u]) count += candidate(u, v, w);
        if (count < best_count) {
          best_count = count;
          best_u = u;
          best_v = v;
          if (count <= 1) break;
        }
      }
    }
    if (best_u < 0) return accept();
    if (best_count == 0) return false;
    const int u = best_u, v = best_v;
    for (int w : nbrs_[u]) {
      if (!candidate(u, v, w)) continue;
      count_node();
      place(u, v, w);
      if (dfs()) return true;
      remove(u, v, w);
    }
    return false;
  }

  std::vector<std::vector<int>> count_;
  std::vector<std::vector<std::array<int, 2>>> link_;
  std::set<std::array<int, 3>> chosen_;
  std::optional<RotationSystem> result_;
};

}  // namespace

SearchResult find_triangular(const SearchSpec& spec) {
  const long long V = static_cast<long long>(spec.graph.vertices.size());
  const long long E = static_cast<long long>(spec.graph.edges.size());
  if ((2 * E) % 3 != 0)
    fail(ErrorKind::kPrecondition, "no triangulation: 2|E| = " + std::to_string(2 * E) + " is not divisible by 3");
  const long long chi = V - E + 2 * E / 3;
  if (spec.orientable_only && (chi % 2 != 0 || chi > 2))
    fail(ErrorKind::kPrecondition, "no orientable triangulation: Euler characteristic would be " + std::to_string(chi));
  if (chi > 2) fail(ErrorKind::kPrecondition, "no triangulation: Euler characteristic would be " + std::to_string(chi));

  SearchResult r;
  auto finish = [&](auto& search) {
    try {
      auto rs = search.run();
      r.status = rs ? SearchStatus::kFound : SearchStatus::kExhausted;
      r.rs = std::move(rs);
    } catch (const BudgetHit&) {
      r.status = SearchStatus::kBudget;
    }
    r.nodes = search.nodes();
  };
  if (spec.orientable_only) {
    OrientedSearch s(spec);
    finish(s);
  } else {
    UnorientedSearch s(spec);
    finish(s);
  }
  if (r.rs && !embedding_type(trace_faces(*r.rs)).empty())
    fail(ErrorKind::kInternal, "search returned a non-triangular system");
  return r;
}

// ---------------------------------------------------------------------------
// Exhaustive classification

ClassifyResult classify_complete(int n) {
  if (n < 3 || n > 5) fail(ErrorKind::kRefusal, "exhaustive classification is limited to 3 <= n <= 5");
  // per vertex: all cyclic orders of its n-1 neighbors, first neighbor fixed
  std::vector<std::vector<std::vector<int>>> orders(n);
  for (int v = 0; v < n; ++v) {
    std::vector<int> rest;
    for (int u = 0; u < n; ++u) {
      if (u != v) rest.push_back(u);
    }
    const int first = rest.front();
    rest.erase(rest.begin());
    do {
      std::vector<int> o{first};
      o.insert(o.end(), rest.begin(), rest.end());
      orders[v].push_back(o);
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  ClassifyResult out;
  out.n = n;
  out.min_genus = 1 << 30;
  std::vector<std::size_t> pick(n, 0);
  RotationSystem rs = RotationSystem::from_rows([&] {
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    for (int v = 0; v < n; ++v) {
      std::vector<std::string> r;
      for (int u : orders[v][0]) r.push_back(std::to_string(u));
      rows.emplace_back(std::to_string(v), r);
    }
    return rows;
  }());
  while (true) {
    for (int v = 0; v < n; ++v) rs.set_rotation(v, orders[v][pick[v]]);
    const auto faces = trace_faces(rs);
    const int genus = euler_surface(rs, faces).genus;
    ++out.types_by_genus[genus][embedding_type(faces)];
    out.min_genus = std::min(out.min_genus, genus);
    ++out.systems;
    int v = 0;
    while (v < n && ++pick[v] == orders[v].size()) pick[v++] = 0;
    if (v == n) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Oracle tracing

FaceSet oracle_trace(const RotationSystem& rs) {
  const int n = rs.vertex_count();
  // state = (v, slot, e): standing at v, about to leave along rotation slot
  // `slot` with local orientation e
  std::vector<std::size_t> base(n + 1, 0);
  for (int v = 0; v < n; ++v) base[v + 1] = base[v] + 2 * static_cast<std::size_t>(rs.degree(v));
  auto id = [&](int v, int slot, int e) { return base[v] + 2 * slot + (e < 0 ? 1 : 0); };
  auto index_of = [&](int w, int v) {
    const auto& r = rs.rotation(w);
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] == v) return static_cast<int>(i);
    }
    return -1;
  };
  std::vector<char> seen(base[n], 0);
  FaceSet faces;
  for (int v0 = 0; v0 < n; ++v0) {
    for (int s0 = 0; s0 < rs.degree(v0); ++s0) {
      for (int e0 : {1, -1}) {
        if (seen[id(v0, s0, e0)]) continue;
        Face f;
        int v = v0, slot = s0, e = e0;
        while (!seen[id(v, slot, e)]) {
          seen[id(v, slot, e)] = 1;
          const int w = rs.rotation(v)[slot];
          const int e2 = e * rs.signature(v, w);
          const int d = rs.degree(w);
          const int j = index_of(w, v);
          const int slot2 = ((j + e2) % d + d) % d;
          f.corners.push_back(Corner{w, v, rs.rotation(w)[slot2], e2});
          v = w;
          slot = slot2;
          e = e2;
        }
        // mark the reverse walk of this face
        for (const auto& c : f.corners) {
          // reverse: at c.vertex leaving towards c.prev with orientation -c.flag
          seen[id(c.vertex, index_of(c.vertex, c.prev), -c.flag)] = 1;
        }
        faces.push_back(std::move(f));
      }
    }
  }
  return faces;
}

namespace {

std::vector<int> canonical_cycle(std::vector<int> c) {
  std::vector<int> best;
  for (int dir = 0; dir < 2; ++dir) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::vector<int> r(c.begin() + i, c.end());
      r.insert(r.end(), c.begin(), c.begin() + i);
      if (best.empty() || r < best) best = r;
    }
    std::reverse(c.begin(), c.end());
  }
  return best;
}

}  // namespace

bool same_faces(const FaceSet& a, const FaceSet& b) {
  if (a.size() != b.size()) return false;
  auto canon = [](const FaceSet& fs) {
    std::vector<std::vector<int>> out;
    for (const auto& f : fs) out.push_back(canonical_cycle(f.vertices()));
    std::sort(out.begin(), out.end());
    return out;
  };
  return canon(a) == canon(b);
}

}  // namespace rotsys
