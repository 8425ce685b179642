#include "rotsys/core.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>

namespace rotsys {

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

std::string normalize_label(std::string_view raw) {
  std::string s;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '_' && c != '{' && c != '}') s.push_back(c);
  }
  if (s.empty()) fail(ErrorKind::kMalformed, "empty vertex label");
  if (is_numeric_label(s)) {
    const bool negative = s[0] == '-';
    std::size_t first = negative ? 1 : 0;
    while (first + 1 < s.size() && s[first] == '0') ++first;
    return (negative ? "-" : "") + s.substr(first);
  }
  if (!std::isalpha(static_cast<unsigned char>(s[0])))
    fail(ErrorKind::kMalformed, "bad vertex label '" + std::string(raw) + "'");
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '\'')
      fail(ErrorKind::kMalformed, "bad vertex label '" + std::string(raw) + "'");
  }
  return s;
}

bool is_numeric_label(std::string_view label) {
  if (label.empty()) return false;
  std::size_t i = label[0] == '-' ? 1 : 0;
  if (i == label.size()) return false;
  for (; i < label.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(label[i]))) return false;
  }
  return true;
}

bool label_less(const std::string& a, const std::string& b) {
  const bool na = is_numeric_label(a), nb = is_numeric_label(b);
  if (na != nb) return na;
  if (na) {
    const long long x = std::stoll(a), y = std::stoll(b);
    if (x != y) return x < y;
    return a < b;
  }
  return a < b;
}

Edge make_edge(const std::string& a, const std::string& b) {
  return label_less(b, a) ? Edge{b, a} : Edge{a, b};
}

// ---------------------------------------------------------------------------
// RotationSystem

RotationSystem RotationSystem::from_rows(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& rows) {
  RotationSystem rs;
  for (const auto& [label, _] : rows) {
    if (rs.find(label)) fail(ErrorKind::kMalformed, "duplicate row for vertex " + label);
    rs.add_vertex(label);
  }
  for (const auto& [label, nbrs] : rows) {
    std::vector<int> order;
    order.reserve(nbrs.size());
    for (const auto& n : nbrs) {
      auto id = rs.find(n);
      if (!id) fail(ErrorKind::kMalformed, "row " + label + " names unknown vertex " + n);
      order.push_back(*id);
    }
    rs.rot_[rs.index_.at(label)] = std::move(order);
  }
  rs.validate();
  return rs;
}

int RotationSystem::edge_count() const noexcept {
  std::size_t total = 0;
  for (const auto& r : rot_) total += r.size();
  return static_cast<int>(total / 2);
}

std::optional<int> RotationSystem::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int RotationSystem::id(const std::string& label) const {
  auto v = find(label);
  if (!v) fail(ErrorKind::kPrecondition, "no vertex labeled " + label);
  return *v;
}

std::vector<std::string> RotationSystem::rotation_labels(int v) const {
  std::vector<std::string> out;
  for (int u : rot_.at(v)) out.push_back(names_[u]);
  return out;
}

int RotationSystem::position(int v, int u) const {
  const auto& r = rot_[v];
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == u) return static_cast<int>(i);
  }
  return -1;
}

bool RotationSystem::adjacent(int u, int v) const { return position(u, v) >= 0; }

int RotationSystem::succ(int v, int u) const {
  const int p = position(v, u);
  if (p < 0) fail(ErrorKind::kInternal, "succ: " + names_[u] + " is not a neighbor of " + names_[v]);
  const auto& r = rot_[v];
  return r[(p + 1) % r.size()];
}

int RotationSystem::pred(int v, int u) const {
  const int p = position(v, u);
  if (p < 0) fail(ErrorKind::kInternal, "pred: " + names_[u] + " is not a neighbor of " + names_[v]);
  const auto& r = rot_[v];
  return r[(p + r.size() - 1) % r.size()];
}

int RotationSystem::signature(int u, int v) const { return negative_.count(key(u, v)) ? -1 : 1; }

void RotationSystem::set_signature(int u, int v, int sign) {
  if (sign < 0)
    negative_.insert(key(u, v));
  else
    negative_.erase(key(u, v));
}

int RotationSystem::add_vertex(const std::string& label) {
  if (index_.count(label)) fail(ErrorKind::kPrecondition, "vertex " + label + " already exists");
  const int v = static_cast<int>(names_.size());
  names_.push_back(label);
  index_[label] = v;
  rot_.emplace_back();
  return v;
}

void RotationSystem::set_rotation(int v, std::vector<int> order) { rot_.at(v) = std::move(order); }

void RotationSystem::insert_after(int v, int after, int u) {
  auto& r = rot_.at(v);
  if (r.empty()) {
    r.push_back(u);
    return;
  }
  const int p = position(v, after);
  if (p < 0) fail(ErrorKind::kInternal, "insert_after: anchor is not a neighbor");
  r.insert(r.begin() + p + 1, u);
}

void RotationSystem::remove_edge(int u, int v) {
  auto drop = [&](int a, int b) {
    auto& r = rot_.at(a);
    auto it = std::find(r.begin(), r.end(), b);
    if (it == r.end()) fail(ErrorKind::kPrecondition, "edge (" + names_[u] + "," + names_[v] + ") is absent");
    r.erase(it);
  };
  drop(u, v);
  drop(v, u);
  negative_.erase(key(u, v));
}

void RotationSystem::remove_vertex(int v) {
  std::vector<int> remap(names_.size());
  for (int u : std::vector<int>(rot_.at(v))) remove_edge(v, u);
  RotationSystem out;
  for (int u = 0; u < vertex_count(); ++u) {
    if (u == v) continue;
    remap[u] = out.add_vertex(names_[u]);
  }
  for (int u = 0; u < vertex_count(); ++u) {
    if (u == v) continue;
    std::vector<int> order;
    for (int w : rot_[u]) order.push_back(remap[w]);
    out.rot_[remap[u]] = std::move(order);
  }
  for (auto [a, b] : negative_) out.negative_.insert(key(remap[a], remap[b]));
  *this = std::move(out);
}

void RotationSystem::switch_vertex(int v) {
  std::reverse(rot_.at(v).begin(), rot_.at(v).end());
  for (int u : rot_[v]) set_signature(u, v, -signature(u, v));
}

std::vector<std::pair<int, int>> RotationSystem::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < vertex_count(); ++u) {
    for (int v : rot_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<Edge> RotationSystem::labeled_edges() const {
  std::vector<Edge> out;
  for (auto [u, v] : edges()) out.push_back(make_edge(names_[u], names_[v]));
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    if (a.first != b.first) return label_less(a.first, b.first);
    return label_less(a.second, b.second);
  });
  return out;
}

void RotationSystem::validate() const {
  for (int v = 0; v < vertex_count(); ++v) {
    std::set<int> seen;
    for (int u : rot_[v]) {
      if (u == v) fail(ErrorKind::kMalformed, "self-loop at " + names_[v]);
      if (!seen.insert(u).second) fail(ErrorKind::kMalformed, "repeated neighbor " + names_[u] + " in row " + names_[v]);
      if (!adjacent(u, v))
        fail(ErrorKind::kMalformed, "asymmetric rotation: " + names_[u] + " in row " + names_[v] + " but not vice versa");
    }
  }
  for (auto [a, b] : negative_) {
    if (!adjacent(a, b)) fail(ErrorKind::kMalformed, "signature on a missing edge");
  }
}

bool RotationSystem::operator==(const RotationSystem& other) const {
  if (vertex_count() != other.vertex_count()) return false;
  for (int v = 0; v < vertex_count(); ++v) {
    auto w = other.find(names_[v]);
    if (!w) return false;
    const auto& a = rot_[v];
    const auto& b = other.rot_[*w];
    if (a.size() != b.size()) return false;
    if (a.empty()) continue;
    // cyclic equality by label
    const int start = other.position(*w, *other.find(names_[a[0]]));
    if (start < 0) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (names_[a[i]] != other.names_[b[(start + i) % b.size()]]) return false;
    }
    for (int u : a) {
      if (signature(v, u) != other.signature(*w, *other.find(names_[u]))) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Faces

std::vector<int> Face::vertices() const {
  std::vector<int> out;
  out.reserve(corners.size());
  for (const auto& c : corners) out.push_back(c.vertex);
  return out;
}

std::vector<std::string> Face::labels(const RotationSystem& rs) const {
  std::vector<std::string> out;
  for (const auto& c : corners) out.push_back(rs.name(c.vertex));
  return out;
}

std::string Face::hash(const RotationSystem& rs) const {
  std::string bytes;
  for (const auto& c : corners) {
    bytes += rs.name(c.vertex);
    bytes += c.flag > 0 ? '+' : '-';
    bytes += rs.name(c.next);
    bytes += ';';
  }
  return fnv1a_hex(bytes).substr(0, 12);
}

bool Face::contains_vertex(int v) const {
  return std::any_of(corners.begin(), corners.end(), [v](const Corner& c) { return c.vertex == v; });
}

std::vector<int> Face::positions_of(int v) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    if (corners[i].vertex == v) out.push_back(static_cast<int>(i));
  }
  return out;
}

bool is_connected(const RotationSystem& rs) {
  const int n = rs.vertex_count();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int count = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int u : rs.rotation(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        queue.push_back(u);
      }
    }
  }
  return count == n;
}

namespace {

std::vector<int> label_ranks(const RotationSystem& rs) {
  std::vector<int> order(rs.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return label_less(rs.name(a), rs.name(b)); });
  std::vector<int> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
  return rank;
}

void canonicalize(Face& f, const std::vector<int>& rank) {
  const std::size_t k = f.corners.size();
  auto key = [&](std::size_t i) {
    const auto& c = f.corners[i % k];
    return std::tuple{rank[c.vertex], rank[c.next], c.flag};
  };
  std::size_t best = 0;
  for (std::size_t cand = 1; cand < k; ++cand) {
    for (std::size_t j = 0; j < k; ++j) {
      const auto a = key(cand + j), b = key(best + j);
      if (a < b) {
        best = cand;
        break;
      }
      if (b < a) break;
    }
  }
  std::rotate(f.corners.begin(), f.corners.begin() + static_cast<long>(best), f.corners.end());
}

}  // namespace

FaceSet trace_faces(const RotationSystem& rs) {
  if (!is_connected(rs)) fail(ErrorKind::kPrecondition, "graph is disconnected; embedding is not cellular");
  const int n = rs.vertex_count();
  std::vector<int> offset(n + 1, 0);
  for (int v = 0; v < n; ++v) offset[v + 1] = offset[v] + rs.degree(v);
  // visited[2 * dart + (flag < 0)], dart = offset[u] + index of w in rot(u)
  std::vector<char> visited(2 * static_cast<std::size_t>(offset[n]), 0);
  auto dart = [&](int u, int w) { return offset[u] + rs.position(u, w); };
  auto slot = [&](int d, int flag) { return 2 * static_cast<std::size_t>(d) + (flag < 0 ? 1 : 0); };

  const auto rank = label_ranks(rs);
  FaceSet faces;
  for (int u = 0; u < n; ++u) {
    for (int i = 0; i < rs.degree(u); ++i) {
      const int w0 = rs.rotation(u)[i];
      const int flag0 = rs.signature(u, w0);
      if (visited[slot(offset[u] + i, flag0)]) continue;
      Face face;
      int from = u, at = w0, flag = flag0;
      do {
        const int next = flag > 0 ? rs.succ(at, from) : rs.pred(at, from);
        visited[slot(dart(from, at), flag)] = 1;
        visited[slot(dart(next, at), -flag)] = 1;
        face.corners.push_back(Corner{at, from, next, flag});
        flag *= rs.signature(at, next);
        from = at;
        at = next;
      } while (!(from == u && at == w0 && flag == flag0));
      canonicalize(face, rank);
      faces.push_back(std::move(face));
    }
  }
  return faces;
}

// ---------------------------------------------------------------------------
// Surfaces

bool is_orientable(const RotationSystem& rs) {
  const int n = rs.vertex_count();
  if (n == 0) return true;
  const auto rank = label_ranks(rs);
  int root = 0;
  for (int v = 0; v < n; ++v) {
    if (rank[v] == 0) root = v;
  }
  std::vector<int> sigma(n, 0);
  std::deque<int> queue{root};
  sigma[root] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int u : rs.rotation(v)) {
      if (sigma[u] == 0) {
        sigma[u] = sigma[v] * rs.signature(v, u);
        queue.push_back(u);
      }
    }
  }
  for (auto [a, b] : rs.edges()) {
    if (sigma[a] * sigma[b] * rs.signature(a, b) < 0) return false;
  }
  return true;
}

SurfaceClass euler_surface(const RotationSystem& rs) { return euler_surface(rs, trace_faces(rs)); }

SurfaceClass euler_surface(const RotationSystem& rs, const FaceSet& faces) {
  SurfaceClass s;
  const int f = rs.edge_count() == 0 ? 1 : static_cast<int>(faces.size());
  s.euler_characteristic = rs.vertex_count() - rs.edge_count() + f;
  s.orientable = is_orientable(rs);
  const int deficit = 2 - s.euler_characteristic;
  if (s.orientable) {
    if (deficit % 2 != 0 || deficit < 0)
      fail(ErrorKind::kInternal, "orientable embedding with Euler characteristic " +
                                     std::to_string(s.euler_characteristic) + " (corrupted rotation system)");
    s.genus = deficit / 2;
  } else {
    if (deficit < 1) fail(ErrorKind::kInternal, "nonorientable embedding with Euler characteristic >= 2");
    s.genus = deficit;
  }
  return s;
}

std::string describe(const SurfaceClass& s) {
  return (s.orientable ? "S" : "N") + std::to_string(s.genus);
}

FaceDistribution face_distribution(const FaceSet& faces) {
  FaceDistribution d;
  for (const auto& f : faces) ++d[f.length()];
  return d;
}

EmbeddingType embedding_type(const FaceSet& faces) {
  EmbeddingType t;
  for (const auto& f : faces) {
    if (f.length() > 3) t.push_back(f.length());
  }
  std::sort(t.begin(), t.end(), std::greater<>());
  return t;
}

std::string format_type(const EmbeddingType& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(t[i]);
  }
  return out + ")";
}

EmbeddingType parse_type(std::string_view text) {
  EmbeddingType t;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    const int v = std::stoi(cur);
    if (v <= 3) fail(ErrorKind::kMalformed, "embedding type entries must exceed 3");
    t.push_back(v);
    cur.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    } else if (c == ',' || c == ' ' || c == '(' || c == ')') {
      flush();
    } else {
      fail(ErrorKind::kMalformed, "bad embedding type '" + std::string(text) + "'");
    }
  }
  flush();
  std::sort(t.begin(), t.end(), std::greater<>());
  return t;
}

// ---------------------------------------------------------------------------
// Rules R* and R

namespace {

template <typename Accept>
bool check_rows(const RotationSystem& rs, Accept accept) {
  for (int i = 0; i < rs.vertex_count(); ++i) {
    const auto& row = rs.rotation(i);
    const std::size_t d = row.size();
    for (std::size_t p = 0; p < d; ++p) {
      const int j = row[(p + d - 1) % d], k = row[p], l = row[(p + 1) % d];
      if (!accept(rs.succ(k, i), rs.pred(k, i), j, l)) return false;
    }
  }
  return true;
}

}  // namespace

bool check_rule_r_star(const RotationSystem& rs) {
  if (!rs.all_positive()) return false;
  // row i: ... j k l ...  =>  row k: ... l i j ...
  return check_rows(rs, [](int s, int p, int j, int l) { return s == j && p == l; });
}

bool check_rule_r(const RotationSystem& rs) {
  return check_rows(rs, [](int s, int p, int j, int l) { return (s == j && p == l) || (s == l && p == j); });
}

// ---------------------------------------------------------------------------
// Bounds and face shapes

GenusBounds genus_bounds(int n) {
  if (n < 3) fail(ErrorKind::kPrecondition, "genus bounds need n >= 3");
  GenusBounds b;
  const long long prod = static_cast<long long>(n - 3) * (n - 4);
  b.orientable_genus = static_cast<int>((prod + 11) / 12);
  b.nonorientable_genus = n == 7 ? 3 : static_cast<int>((prod + 5) / 6);
  // smallest t >= 0 with 2t = -(n-3)(n-4) (mod 12)
  for (int t = 0; t < 6; ++t) {
    if (((2 * t + prod) % 12 + 12) % 12 == 0) {
      b.extra_edges = t;
      break;
    }
  }
  b.max_genus_faces = (n % 4 == 1 || n % 4 == 2) ? 1 : 2;
  return b;
}

bool is_simple_face(const Face& f) {
  std::set<int> seen;
  for (const auto& c : f.corners) {
    if (!seen.insert(c.vertex).second) return false;
  }
  return true;
}

FaceShape repeated_vertex_structure(const RotationSystem& rs, const Face& f) {
  for (int v = 0; v < rs.vertex_count(); ++v) {
    if (rs.degree(v) < 2) fail(ErrorKind::kPrecondition, "face classification needs minimum degree 2");
  }
  if (is_simple_face(f)) return FaceShape::kSimple;
  if (f.length() != 6) return FaceShape::kOther;
  std::map<int, std::vector<int>> occ;
  for (int i = 0; i < 6; ++i) occ[f.corners[i].vertex].push_back(i);
  int repeated = 0;
  for (const auto& [v, pos] : occ) {
    if (pos.size() == 1) continue;
    if (pos.size() != 2 || pos[1] - pos[0] != 3) return FaceShape::kOther;
    ++repeated;
  }
  return repeated == 1 ? FaceShape::kOppositeRepeat : FaceShape::kOther;
}

bool is_minimum_by_type(const EmbeddingType& t) {
  int excess = 0;
  for (int a : t) excess += a - 3;
  return excess <= 5;
}

bool is_minimum_by_type(const RotationSystem& rs) { return is_minimum_by_type(embedding_type(trace_faces(rs))); }

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

RotationSystem relabel(const RotationSystem& rs, const std::map<std::string, std::string>& mapping) {
  auto map_label = [&](const std::string& s) {
    auto it = mapping.find(s);
    return it == mapping.end() ? s : it->second;
  };
  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
  for (int v = 0; v < rs.vertex_count(); ++v) {
    std::vector<std::string> r;
    for (const auto& l : rs.rotation_labels(v)) r.push_back(map_label(l));
    rows.emplace_back(map_label(rs.name(v)), std::move(r));
  }
  auto out = RotationSystem::from_rows(rows);
  for (auto [a, b] : rs.negative_edges())
    out.set_signature(out.id(map_label(rs.name(a))), out.id(map_label(rs.name(b))), -1);
  return out;
}

RotationSystem reflect(const RotationSystem& rs) {
  RotationSystem out = rs;
  for (int v = 0; v < out.vertex_count(); ++v) {
    auto r = out.rotation(v);
    std::reverse(r.begin(), r.end());
    out.set_rotation(v, std::move(r));
  }
  return out;
}

bool is_complete(const RotationSystem& rs) {
  const int n = rs.vertex_count();
  for (int v = 0; v < n; ++v) {
    if (rs.degree(v) != n - 1) return false;
  }
  return true;
}

std::vector<Edge> missing_edges(const RotationSystem& rs) {
  std::vector<int> order(rs.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return label_less(rs.name(a), rs.name(b)); });
  std::vector<Edge> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (!rs.adjacent(order[i], order[j])) out.emplace_back(rs.name(order[i]), rs.name(order[j]));
    }
  }
  return out;
}

}  // namespace rotsys
