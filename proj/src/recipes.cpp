#include "rotsys/recipes.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "rotsys/currents.hpp"
#include "rotsys/io.hpp"
#include "rotsys/search.hpp"

namespace rotsys {

namespace {

using Kind = SurgeryStep::Kind;

void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

std::string num(long long k) { return std::to_string(k); }

SurgeryStep step(Kind kind, std::vector<std::string> labels) {
  SurgeryStep s;
  s.kind = kind;
  s.labels = std::move(labels);
  return s;
}

EmbeddingType type_of(const RotationSystem& rs) { return embedding_type(trace_faces(rs)); }

// Faces of length >= 4, in trace order.
std::vector<Face> big_faces(const FaceSet& faces) {
  std::vector<Face> out;
  for (const auto& f : faces)
    if (f.length() > 3) out.push_back(f);
  return out;
}

// Labels on nontriangular faces, in first-seen order.
std::vector<std::string> big_face_labels(const RotationSystem& rs) {
  std::vector<std::string> out;
  for (const auto& f : big_faces(trace_faces(rs))) {
    for (const auto& l : f.labels(rs))
      if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  }
  return out;
}

// Exchanges of every edge with both ends on a nontriangular face.
std::vector<Move> local_exchanges(const RotationSystem& rs) {
  const auto labels = big_face_labels(rs);
  std::vector<Move> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (!rs.adjacent(rs.id(labels[i]), rs.id(labels[j]))) continue;
      for (auto& m : exchange_moves(rs, labels[i], labels[j])) out.push_back(std::move(m));
    }
  }
  return out;
}

MoveGenerator chords_of(std::string u, std::string v) {
  return [u, v](const RotationSystem& rs) { return chord_moves(rs, u, v); };
}
MoveGenerator exchanges_of(std::string u, std::string v) {
  return [u, v](const RotationSystem& rs) { return exchange_moves(rs, u, v); };
}

RecipeResult finish(const RotationSystem& input, const ScriptRecorder& rec) {
  return RecipeResult{input, rec.current(), rec.script()};
}

RecipeResult chain(const RecipeResult& prior, const RecipeResult& next) {
  RecipeResult r{prior.input, next.rs, prior.script};
  for (const auto& s : next.script.steps) r.script.steps.push_back(s);
  return r;
}

ScriptRecorder must_find(const std::optional<ScriptRecorder>& found, const std::string& what) {
  if (!found) fail(ErrorKind::kPrecondition, "no placement reaches " + what);
  return *found;
}

}  // namespace

// ---------------------------------------------------------------------------
// Placement search

std::vector<Move> chord_moves(const RotationSystem& rs, const std::string& u, const std::string& v) {
  std::vector<Move> out;
  const int iu = rs.id(u), iv = rs.id(v);
  if (iu == iv || rs.adjacent(iu, iv)) return out;
  for (const auto& f : big_faces(trace_faces(rs))) {
    const auto pu = f.positions_of(iu);
    const auto pv = f.positions_of(iv);
    if (pu.empty() || pv.empty()) continue;
    const std::string hash = f.hash(rs);
    for (int a : pu) {
      for (int b : pv) {
        SurgeryStep s = step(Kind::kChord, {u, v});
        s.placement = Placement{hash, a, b};
        out.push_back({s});
      }
    }
  }
  return out;
}

std::vector<Move> exchange_moves(const RotationSystem& rs, const std::string& u, const std::string& v) {
  std::vector<Move> out;
  if (!rs.adjacent(rs.id(u), rs.id(v))) return out;
  RotationSystem cut;
  try {
    cut = delete_edge(rs, u, v).rs;
  } catch (const Error&) {
    return out;
  }
  const SurgeryStep del = step(Kind::kDelete, {u, v});
  for (auto& m : chord_moves(cut, u, v)) {
    m.insert(m.begin(), del);
    out.push_back(std::move(m));
  }
  return out;
}

namespace {

struct Dfs {
  const std::vector<MoveGenerator>& stages;
  const Goal& goal;
  const std::vector<Goal>& stage_ok;
  long budget;
  long used = 0;

  std::optional<ScriptRecorder> run(const ScriptRecorder& cur, std::size_t i) {
    if (i == stages.size()) return goal(cur.current()) ? std::optional<ScriptRecorder>(cur) : std::nullopt;
    for (const auto& move : stages[i](cur.current())) {
      if (++used > budget) fail(ErrorKind::kPrecondition, "placement search budget exhausted");
      ScriptRecorder next = cur;
      try {
        for (const auto& s : move) next.apply(s);
      } catch (const Error&) {
        continue;
      }
      if (i < stage_ok.size() && stage_ok[i] && !stage_ok[i](next.current())) continue;
      if (auto found = run(next, i + 1)) return found;
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<ScriptRecorder> search_moves(const ScriptRecorder& start, const std::vector<MoveGenerator>& stages,
                                           const Goal& goal, const std::vector<Goal>& stage_ok, long budget) {
  Dfs dfs{stages, goal, stage_ok, budget};
  return dfs.run(start, 0);
}

Goal type_goal(bool orientable, int genus, const EmbeddingType& type) {
  return [=](const RotationSystem& rs) {
    const auto faces = trace_faces(rs);
    const auto s = euler_surface(rs, faces);
    return s.orientable == orientable && s.genus == genus && embedding_type(faces) == type;
  };
}

void verify_complete(const RotationSystem& rs, bool orientable, int genus, const EmbeddingType& type) {
  require(is_complete(rs), ErrorKind::kVerification, "result is not a complete graph");
  const auto faces = trace_faces(rs);
  const auto s = euler_surface(rs, faces);
  const SurfaceClass want{orientable, genus, s.euler_characteristic};
  require(s.orientable == orientable && s.genus == genus, ErrorKind::kVerification,
          "result lies in " + describe(s) + ", expected " + describe(want));
  const auto t = embedding_type(faces);
  require(t == type, ErrorKind::kVerification,
          "result has type " + format_type(t) + ", expected " + format_type(type));
}

// ---------------------------------------------------------------------------
// Cases 2 and 5

namespace {

struct Missing2 {
  std::string x, y;
};

Missing2 single_missing_edge(const RotationSystem& rs) {
  const auto miss = missing_edges(rs);
  require(miss.size() == 1, ErrorKind::kPrecondition,
          "expected exactly one missing edge, found " + num(static_cast<long long>(miss.size())));
  return {miss[0].first, miss[0].second};
}

void require_triangular(const RotationSystem& rs, const std::string& what) {
  require(type_of(rs).empty(), ErrorKind::kPrecondition, what + " is not triangular");
}

// Triangles through v, each rotated to start at v.
std::vector<std::vector<std::string>> triangles_at(const RotationSystem& rs, const FaceSet& faces,
                                                   const std::string& v) {
  std::vector<std::vector<std::string>> out;
  for (const auto& f : faces) {
    if (f.length() != 3) continue;
    auto l = f.labels(rs);
    auto it = std::find(l.begin(), l.end(), v);
    if (it == l.end()) continue;
    std::rotate(l.begin(), it, l.end());
    out.push_back(l);
  }
  return out;
}

std::string hash_of_triangle(const RotationSystem& rs, const FaceSet& faces, const std::vector<std::string>& t) {
  for (const auto& f : faces) {
    if (f.length() != 3) continue;
    auto l = f.labels(rs);
    for (int r = 0; r < 3; ++r) {
      if (l == t) return f.hash(rs);
      std::rotate(l.begin(), l.begin() + 1, l.end());
    }
  }
  fail(ErrorKind::kInternal, "triangle vanished");
}

// Reads the handle 8-gon as [x,a,b,x,y,c,d,y]; the second reading runs the
// face backwards.
std::vector<std::array<std::string, 4>> read_octagon(const RotationSystem& rs, const std::string& x,
                                                    const std::string& y) {
  std::vector<std::array<std::string, 4>> out;
  for (const auto& f : trace_faces(rs)) {
    if (f.length() != 8) continue;
    auto l = f.labels(rs);
    for (int dir = 0; dir < 2; ++dir) {
      for (int i = 0; i < 8; ++i) {
        auto at = [&](int k) { return l[(i + k) % 8]; };
        if (at(0) == x && at(3) == x && at(4) == y && at(7) == y) out.push_back({at(1), at(2), at(5), at(6)});
      }
      std::reverse(l.begin(), l.end());
    }
  }
  return out;
}

}  // namespace

RecipeResult case2_5_types(const RotationSystem& knk2, const EmbeddingType& type) {
  require(is_orientable(knk2), ErrorKind::kPrecondition, "input must be orientable");
  require_triangular(knk2, "input");
  const auto [x, y] = single_missing_edge(knk2);
  const int genus = euler_surface(knk2).genus + 1;
  const Goal goal = type_goal(true, genus, type);
  const auto faces = trace_faces(knk2);
  const auto tx = triangles_at(knk2, faces, x);
  const auto ty = triangles_at(knk2, faces, y);
  bool any_pair = false;

  if (type == EmbeddingType{6, 5}) {
    for (const auto& t1 : tx) {
      for (int k = 1; k <= 2; ++k) {
        const std::string b = t1[k], a = t1[3 - k];
        for (const auto& t2 : ty) {
          auto it = std::find(t2.begin(), t2.end(), b);
          if (it == t2.end()) continue;
          const std::string c = t2[1] == b ? t2[2] : t2[1];
          if (a == c) continue;
          any_pair = true;
          ScriptRecorder rec(knk2);
          rec.handle(x, hash_of_triangle(knk2, faces, t1), y, hash_of_triangle(knk2, faces, t2), "faces [x,a,b], [y,b,c]");
          if (auto found = search_moves(rec, {exchanges_of(a, b)}, goal)) return finish(knk2, *found);
        }
      }
    }
    require(any_pair, ErrorKind::kPrecondition, "no faces [x,a,b], [y,b,c] with a != c");
    fail(ErrorKind::kPrecondition, "no placement reaches type (6,5)");
  }

  using Pairs = std::vector<std::pair<int, int>>;  // indices into {a,b,c,d,y}
  static const std::map<EmbeddingType, Pairs> lists = {
      {{8}, {}},
      {{7, 4}, {{0, 4}}},
      {{6, 4, 4}, {{0, 3}}},
      {{5, 5, 4}, {{0, 2}}},
      {{5, 4, 4, 4}, {{0, 3}, {1, 4}}},
      {{4, 4, 4, 4, 4}, {{0, 3}, {1, 2}}},
  };
  const auto list = lists.find(type);
  require(list != lists.end(), ErrorKind::kPrecondition, "type " + format_type(type) + " is not a K_n - K_2 type");

  for (const auto& t1 : tx) {
    for (const auto& t2 : ty) {
      std::set<std::string> four{t1[1], t1[2], t2[1], t2[2]};
      if (four.size() != 4) continue;
      any_pair = true;
      ScriptRecorder rec(knk2);
      rec.handle(x, hash_of_triangle(knk2, faces, t1), y, hash_of_triangle(knk2, faces, t2), "faces [x,a,b], [y,c,d]");
      for (const auto& abcd : read_octagon(rec.current(), x, y)) {
        const std::array<std::string, 5> name{abcd[0], abcd[1], abcd[2], abcd[3], y};
        std::vector<MoveGenerator> stages;
        for (const auto& [i, j] : list->second) stages.push_back(exchanges_of(name[i], name[j]));
        if (auto found = search_moves(rec, stages, goal)) return finish(knk2, *found);
      }
    }
  }
  require(any_pair, ErrorKind::kPrecondition, "no faces [x,a,b], [y,c,d] with a,b,c,d distinct");
  fail(ErrorKind::kPrecondition, "no placement reaches type " + format_type(type));
}

// ---------------------------------------------------------------------------
// Downgrades

namespace {

std::optional<ScriptRecorder> exchange_search(const ScriptRecorder& start, const Goal& goal, int depth) {
  std::vector<MoveGenerator> stages(depth, local_exchanges);
  return search_moves(start, stages, goal);
}

}  // namespace

RecipeResult downgrade_type(const RotationSystem& rs, const EmbeddingType& type) {
  const auto faces = trace_faces(rs);
  const auto have = embedding_type(faces);
  const auto s = euler_surface(rs, faces);
  require(have == EmbeddingType{5} || have == EmbeddingType{6}, ErrorKind::kPrecondition,
          "downgrade needs type (5) or (6), got " + format_type(have));
  const bool ok = (have == EmbeddingType{5} && type == EmbeddingType{4, 4}) ||
                  (have == EmbeddingType{6} && (type == EmbeddingType{5, 4} || type == EmbeddingType{4, 4, 4}));
  require(ok, ErrorKind::kPrecondition, "cannot derive " + format_type(type) + " from " + format_type(have));
  const Goal goal = type_goal(s.orientable, s.genus, type);
  const int depth = static_cast<int>(type.size() - have.size());
  ScriptRecorder rec(rs);
  for (int d = depth; d <= depth + 1; ++d) {
    if (auto found = exchange_search(rec, goal, d)) return finish(rs, *found);
  }
  fail(ErrorKind::kPrecondition, "no chord exchange reaches " + format_type(type));
}

RecipeResult downgrade_type(const RecipeResult& prior, const EmbeddingType& type) {
  return chain(prior, downgrade_type(prior.rs, type));
}

// ---------------------------------------------------------------------------
// Split-complete graphs

namespace {

void require_split_complete(const RotationSystem& g) {
  require(g.find("x0") && g.find("x1"), ErrorKind::kPrecondition, "split-complete input needs letters x0 and x1");
  const int x0 = g.id("x0"), x1 = g.id("x1");
  require(!g.adjacent(x0, x1), ErrorKind::kPrecondition, "x0 and x1 must be nonadjacent");
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (v == x0 || v == x1) continue;
    require(g.adjacent(v, x0) != g.adjacent(v, x1), ErrorKind::kPrecondition,
            "vertex " + g.name(v) + " must be adjacent to exactly one of x0, x1");
    require(g.degree(v) == g.vertex_count() - 2, ErrorKind::kPrecondition,
            "numbered vertex " + g.name(v) + " is not adjacent to all numbered vertices");
  }
}

}  // namespace

RecipeResult split_complete_type6(const RotationSystem& g) {
  require_split_complete(g);
  require_triangular(g, "split-complete input");
  const auto faces = trace_faces(g);
  const auto t0 = triangles_at(g, faces, "x0");
  const auto t1 = triangles_at(g, faces, "x1");
  ScriptRecorder rec(g);
  rec.handle("x0", hash_of_triangle(g, faces, t0.front()), "x1", hash_of_triangle(g, faces, t1.front()));
  rec.contract("x0", "x1", "0", "merge the doubled edge");
  const int n = rec.current().vertex_count();
  verify_complete(rec.current(), true, genus_bounds(n).orientable_genus, {6});
  return finish(g, rec);
}

RecipeResult split_complete_drop_letters(const RotationSystem& g) {
  require_split_complete(g);
  require_triangular(g, "split-complete input");
  require(g.degree(g.id("x0")) == 4 && g.degree(g.id("x1")) == 4, ErrorKind::kPrecondition,
          "x0 and x1 must have degree 4");
  ScriptRecorder rec(g);
  rec.delete_vertex("x0");
  rec.delete_vertex("x1");
  return finish(g, rec);
}

// ---------------------------------------------------------------------------
// K_n - P_3 and the K30 family

namespace {

struct Path3 {
  std::string a, b, c, d;
};

Path3 missing_path(const RotationSystem& rs) {
  const auto miss = missing_edges(rs);
  require(miss.size() == 3, ErrorKind::kPrecondition, "expected three missing edges forming a path");
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& [u, v] : miss) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<std::string> ends;
  for (const auto& [v, nb] : adj)
    if (nb.size() == 1) ends.push_back(v);
  require(adj.size() == 4 && ends.size() == 2, ErrorKind::kPrecondition, "missing edges do not form a path");
  Path3 p;
  p.a = ends[0];
  p.b = adj[p.a][0];
  p.c = adj[p.b][0] == p.a ? adj[p.b][1] : adj[p.b][0];
  p.d = ends[1];
  require(adj[p.c][0] == p.d || adj[p.c][1] == p.d, ErrorKind::kPrecondition, "missing edges do not form a path");
  return p;
}

// Triangles holding both u and v, each rotated to start at u.
std::vector<std::vector<std::string>> triangles_on(const RotationSystem& rs, const FaceSet& faces,
                                                   const std::string& u, const std::string& v) {
  std::vector<std::vector<std::string>> out;
  for (auto& t : triangles_at(rs, faces, u))
    if (t[1] == v || t[2] == v) out.push_back(t);
  return out;
}

bool has_face(const RotationSystem& rs, const std::vector<std::string>& cycle) {
  for (const auto& f : trace_faces(rs)) {
    if (f.length() != static_cast<int>(cycle.size())) continue;
    auto l = f.labels(rs);
    for (int dir = 0; dir < 2; ++dir) {
      for (std::size_t r = 0; r < l.size(); ++r) {
        if (l == cycle) return true;
        std::rotate(l.begin(), l.begin() + 1, l.end());
      }
      std::reverse(l.begin(), l.end());
    }
  }
  return false;
}

std::string third(const std::vector<std::string>& t, const std::string& u, const std::string& v) {
  for (const auto& l : t)
    if (l != u && l != v) return l;
  fail(ErrorKind::kInternal, "degenerate triangle");
}

}  // namespace

RecipeResult p3_type6(const RotationSystem& knp3) {
  require(is_orientable(knp3), ErrorKind::kPrecondition, "input must be orientable");
  require_triangular(knp3, "input");
  const Path3 p = missing_path(knp3);
  const int genus = euler_surface(knp3).genus + 1;
  const auto faces = trace_faces(knp3);
  const std::array<std::array<std::string, 2>, 3> gaps{{{p.a, p.b}, {p.b, p.c}, {p.c, p.d}}};
  for (const auto& f1 : triangles_on(knp3, faces, p.a, p.c)) {
    for (const auto& f2 : triangles_on(knp3, faces, p.d, p.b)) {
      const std::string x = third(f1, p.a, p.c), xp = third(f2, p.d, p.b);
      const auto base = type_goal(true, genus, {6});
      const Goal goal = [&](const RotationSystem& rs) {
        return base(rs) && has_face(rs, {p.a, p.b, xp, p.d, p.c, x});
      };
      for (int h = 0; h < 3; ++h) {
        // the handle edge joins a vertex of [a,c,x] to one of [d,b,x']
        std::string u = gaps[h][0], v = gaps[h][1];
        if (u == p.b || u == p.d) std::swap(u, v);
        ScriptRecorder rec(knp3);
        try {
          rec.handle(u, hash_of_triangle(knp3, faces, f1), v, hash_of_triangle(knp3, faces, f2),
                     "faces [a,c,x], [d,b,x']");
        } catch (const Error&) {
          continue;
        }
        std::vector<MoveGenerator> stages;
        for (int k = 0; k < 3; ++k)
          if (k != h) stages.push_back(chords_of(gaps[k][0], gaps[k][1]));
        if (auto found = search_moves(rec, stages, goal)) return finish(knp3, *found);
      }
    }
  }
  fail(ErrorKind::kPrecondition, "no handle placement leaves the 6-gon [a,b,x',d,c,x]");
}

std::vector<std::vector<std::string>> k30_flip_lists(char variant) {
  switch (variant) {
    case 'A': return {};
    case 'B': return {{"0", "10", "x", "y"}};
    case 'C': return {{"0", "10", "x", "y"}, {"1", "26", "x", "z"}};
    case 'D': return {{"0", "10", "x", "y"}, {"8", "10", "x", "z"}, {"10", "x", "y", "z"}};
    case 'E': return {{"1", "26", "x", "z"}, {"11", "16", "1", "26"}, {"6", "x", "11", "16"}};
    default: fail(ErrorKind::kPrecondition, std::string("unknown K30 variant ") + variant);
  }
}

RecipeResult k30_variant(const RotationSystem& k30k3, char variant) {
  require(k30k3.vertex_count() == 30, ErrorKind::kPrecondition, "K30 variants need the 30-vertex system");
  require_triangular(k30k3, "K30 - K3 input");
  ScriptRecorder rec(k30k3);
  for (const auto& f : k30_flip_lists(variant)) rec.flip(f[0], f[1], f[2], f[3]);
  require(type_of(rec.current()).empty(), ErrorKind::kVerification, "flips left a nontriangular face");
  require(missing_edges(rec.current()).size() == 3, ErrorKind::kVerification, "flips changed the edge count");
  return finish(k30k3, rec);
}

// ---------------------------------------------------------------------------
// K_n - K_3 through one handle at a vertex

RecipeResult k3_min_genus(const RotationSystem& knk3, const EmbeddingType& type) {
  require(type == EmbeddingType{5, 4} || type == EmbeddingType{4, 4, 4}, ErrorKind::kPrecondition,
          "K_n - K_3 yields types (5,4) and (4,4,4) only");
  require(is_orientable(knk3), ErrorKind::kPrecondition, "input must be orientable");
  require_triangular(knk3, "input");
  const auto miss = missing_edges(knk3);
  std::set<std::string> letters;
  for (const auto& [u, v] : miss) letters.insert({u, v});
  require(miss.size() == 3 && letters.size() == 3, ErrorKind::kPrecondition, "missing edges must form a triangle");
  const std::vector<std::string> xyz(letters.begin(), letters.end());
  std::string v = "0";
  if (!knk3.find(v) || letters.count(v)) {
    for (const auto& name : knk3.names())
      if (!letters.count(name)) { v = name; break; }
  }
  const int n = knk3.vertex_count();
  const int genus = genus_bounds(n).orientable_genus;
  require(euler_surface(knk3).genus + 1 == genus, ErrorKind::kPrecondition, "input genus is not I(n) - 1");
  ScriptRecorder rec(knk3);
  rec.k3(v, xyz[0], xyz[1], xyz[2]);
  std::vector<MoveGenerator> stages{chords_of(xyz[0], xyz[1]), chords_of(xyz[1], xyz[2]), chords_of(xyz[0], xyz[2]),
                                    chords_of(v, xyz[0]),      chords_of(v, xyz[1]),      chords_of(v, xyz[2])};
  return finish(knk3, must_find(search_moves(rec, stages, type_goal(true, genus, type)), format_type(type)));
}

// ---------------------------------------------------------------------------
// Current-graph cases with required partial rows

namespace {

// Throws unless `run` occurs consecutively (clockwise) in the row of v.
void check_row(const RotationSystem& rs, const std::string& v, const std::vector<std::string>& run) {
  const std::string where = "row " + v + " should contain \"" + [&] {
    std::string s;
    for (const auto& l : run) s += (s.empty() ? "" : " ") + l;
    return s;
  }() + "\"";
  require(rs.find(v).has_value(), ErrorKind::kPrecondition, where + " but the vertex is absent");
  const auto row = rs.rotation_labels(rs.id(v));
  const std::size_t d = row.size();
  for (std::size_t i = 0; i < d; ++i) {
    bool ok = run.size() <= d;
    for (std::size_t k = 0; ok && k < run.size(); ++k) ok = row[(i + k) % d] == run[k];
    if (ok) return;
  }
  fail(ErrorKind::kPrecondition, where);
}

void check_face(const RotationSystem& rs, const std::vector<std::string>& cycle, const std::string& what) {
  if (has_face(rs, cycle)) return;
  std::string s;
  for (const auto& l : cycle) s += (s.empty() ? "" : ",") + l;
  fail(ErrorKind::kPrecondition, what + ": face [" + s + "] is missing");
}

// Residue labels in Z_m.
struct Zm {
  long long m;
  std::string operator()(long long k) const { return num(((k % m) + m) % m); }
};

}  // namespace

RecipeResult case8(const RotationSystem& g, int s) {
  if (s == 0) fail(ErrorKind::kRefusal, "K8 has no nearly triangular minimum genus embedding of type (5)");
  require(s >= 1, ErrorKind::kPrecondition, "Case 8 needs s >= 1");
  require(g.vertex_count() == 12 * s + 9, ErrorKind::kPrecondition, "Case 8 input needs 12s+9 vertices");
  require_triangular(g, "Case 8 input");
  const auto L = [](long long k) { return num(k); };
  const std::string x = "x", y0 = "y0", y1 = "y1";
  for (const auto& l : {x, y0, y1}) require(g.find(l).has_value(), ErrorKind::kPrecondition, "missing vertex " + l);
  check_row(g, L(6 * s - 1), {L(6 * s - 2), x, L(6 * s)});
  check_row(g, L(6 * s), {"0", L(6 * s - 2), L(6 * s + 4)});
  check_row(g, L(12 * s + 1), {L(6 * s - 1), y1, L(6 * s - 3)});
  check_row(g, L(12 * s + 1), {L(12 * s), x, L(12 * s + 2)});
  check_row(g, L(12 * s + 1), {L(6 * s + 4), "0"});

  const std::string hub = L(12 * s + 1);
  ScriptRecorder rec(g);
  rec.flip_sequence({L(6 * s - 1), x, L(6 * s), L(6 * s - 2), "0", L(6 * s + 4), y0, hub},
                    "hub becomes adjacent to x, y0, y1");
  check_row(rec.current(), hub, {L(6 * s + 4), y0, "0"});
  rec.k3(hub, y0, y1, x);
  check_face(rec.current(),
             {y0, L(6 * s + 4), hub, L(6 * s - 3), y1, L(6 * s - 1), hub, L(12 * s + 2), x, L(12 * s), hub, "0"},
             "after the K3 construction");
  rec.chord(y0, y1);
  rec.contract(y0, y1, "y");
  const auto t = type_of(rec.current());
  require(t == EmbeddingType{8, 4}, ErrorKind::kPrecondition, "contraction should leave faces (8,4), got " + format_type(t));
  const int genus = genus_bounds(12 * s + 8).orientable_genus;
  std::vector<MoveGenerator> stages{chords_of(x, "y"), chords_of("y", hub), chords_of(x, hub),
                                    chords_of(x, L(6 * s - 1))};
  rec = must_find(search_moves(rec, stages, type_goal(true, genus, {5})), "type (5)");
  verify_complete(rec.current(), true, genus, {5});
  return finish(g, rec);
}

void check_case10_rows(const RotationSystem& rs, int s) {
  require(s >= 1, ErrorKind::kPrecondition, "Case 10 rows need s >= 1");
  const long long c = 7LL * s + 4;
  const Zm z{12LL * s + 7};
  require(z(2 * c) == num(2 * s + 1) && z(-3 * c) == num(3 * s + 2), ErrorKind::kInternal, "c = 7s+4 identities");
  check_row(rs, "0", {z(-3 * c), "y", z(3 * c), "1", z(c), "z", z(-c)});
  check_row(rs, "0", {z(-2 * c - 1), z(2 * c), "x", z(-2 * c)});
  check_row(rs, z(c + 1), {z(-c), z(3 * c + 1), "x"});
  check_row(rs, z(2 * c), {z(2 * c + 1), z(3 * c), "z"});
  check_row(rs, z(2 * c + 1), {z(3 * c + 1), "z", z(c + 1)});
  check_row(rs, "x", {z(-c), z(c), z(3 * c), z(5 * c)});
}

RecipeResult case10(const RotationSystem& knk3, int s) {
  check_case10_rows(knk3, s);
  require_triangular(knk3, "Case 10 input");
  const long long c = 7LL * s + 4;
  const Zm z{12LL * s + 7};
  ScriptRecorder rec(knk3);
  rec.k3("0", "x", "y", "z");
  check_face(rec.current(),
             {"x", z(2 * c), "0", z(3 * c), "y", z(-3 * c), "0", z(-c), "z", z(c), "0", z(-2 * c)},
             "after the K3 construction");
  const Goal pentagon = [&](const RotationSystem& rs) {
    return has_face(rs, {"x", z(-c), z(c), z(3 * c), z(5 * c)});
  };
  std::vector<MoveGenerator> stages{chords_of("x", "y"),             chords_of("y", "z"),
                                    chords_of("x", "z"),             exchanges_of("x", z(c)),
                                    exchanges_of("x", z(3 * c)),
                                    chords_of("0", "y"),             chords_of("0", "z"),
                                    chords_of("0", "x"),             exchanges_of(z(2 * c), z(3 * c)),
                                    exchanges_of(z(2 * c + 1), "z"), exchanges_of(z(c + 1), z(3 * c + 1)),
                                    exchanges_of(z(-c), "x")};
  const int genus = genus_bounds(12 * s + 10).orientable_genus;
  rec = must_find(search_moves(rec, stages, type_goal(true, genus, {6}), {nullptr, nullptr, nullptr, nullptr, pentagon}), "type (6)");
  verify_complete(rec.current(), true, genus, {6});
  return finish(knk3, rec);
}

void check_case1_rows(const RotationSystem& rs, int s) {
  require(s >= 2, ErrorKind::kPrecondition, "Case 1 rows need s >= 2");
  const Zm z{12LL * s - 2};
  if (s == 2) {
    check_row(rs, "0", {"17", "9", "z", "13"});
    check_row(rs, "0", {"3", "y", "19", "21", "x", "1", "20", "14"});
    check_row(rs, "3", {"2", "x", "4"});
    check_row(rs, "4", {"5", "2", "18"});
    check_row(rs, "18", {"13", "5", "z"});
    return;
  }
  check_row(rs, "0", {z(6 * s - 3), "z", z(6 * s + 1)});
  check_row(rs, "0", {z(6 * s + 4), "6", z(6 * s + 5)});
  check_row(rs, "0", {"3", "y", z(-3)});
  check_row(rs, "0", {z(-1), "x", "1"});
  check_row(rs, z(6 * s - 3), {z(6 * s), "y", z(6 * s - 6)});
  check_row(rs, z(6 * s - 6), {"0", z(6 * s), "1"});
}

RecipeResult case1(const RotationSystem& knk3, int s) {
  check_case1_rows(knk3, s);
  require_triangular(knk3, "Case 1 input");
  const Zm z{12LL * s - 2};
  ScriptRecorder rec(knk3);
  rec.k3("0", "x", "y", "z");
  check_face(rec.current(), {"z", z(6 * s - 3), "0", z(-3), "y", "3", "0", "1", "x", z(-1), "0", z(6 * s + 1)},
             "after the K3 construction");
  std::vector<MoveGenerator> stages;
  if (s == 2) {
    for (const auto& [u, v] : std::vector<Edge>{{"x", "3"}, {"2", "4"}, {"5", "18"}, {"z", "13"}})
      stages.push_back(exchanges_of(u, v));
  } else {
    for (const auto& [u, v] : std::vector<Edge>{{"y", z(6 * s - 3)}, {z(6 * s - 6), z(6 * s)}, {"0", "1"}})
      stages.push_back(exchanges_of(u, v));
  }
  for (const auto& [u, v] :
       std::vector<Edge>{{"x", "y"}, {"y", "z"}, {"x", "z"}, {"0", "x"}, {"0", "y"}, {"0", "z"}})
    stages.push_back(chords_of(u, v));
  const int genus = genus_bounds(12 * s + 1).orientable_genus;
  rec = must_find(search_moves(rec, stages, type_goal(true, genus, {6})), "type (6)");
  verify_complete(rec.current(), true, genus, {6});
  return finish(knk3, rec);
}

Case11Labels Case11Labels::for_s(int s) {
  Case11Labels l;
  l.r = num(12LL * s + 5);
  l.p = num(12LL * s + 4);
  l.q = num(6LL * s + 5);
  l.t = num(12LL * s + 2);
  return l;
}

void check_case11_input(const RotationSystem& rs, const Case11Labels& l) {
  for (const auto& v : {l.zero, l.a, l.b, l.c, l.x, l.y, l.r, l.p, l.q, l.t, l.two, l.four})
    require(rs.find(v).has_value(), ErrorKind::kPrecondition, "missing vertex " + v);
  auto edge = [&](const std::string& u, const std::string& v) { return rs.adjacent(rs.id(u), rs.id(v)); };
  for (const auto& [u, v] : std::vector<Edge>{{l.a, l.y}, {l.b, l.y}, {l.a, l.x}, {l.zero, l.a}, {l.zero, l.b}, {l.zero, l.c}})
    require(edge(u, v), ErrorKind::kPrecondition, "edge (" + u + "," + v + ") should be present");
  for (const auto& [u, v] : std::vector<Edge>{{l.zero, l.p}, {l.zero, l.q}, {l.c, l.p}, {l.b, l.four}, {l.a, l.b},
                                              {l.a, l.c}, {l.b, l.c}, {l.b, l.x}, {l.c, l.x}, {l.c, l.y}, {l.x, l.y}})
    require(!edge(u, v), ErrorKind::kPrecondition, "edge (" + u + "," + v + ") should be absent");
  require(type_of(rs) == EmbeddingType{4}, ErrorKind::kPrecondition, "input should have exactly one quadrilateral");
  check_face(rs, {l.a, l.p, l.q, l.x}, "input");
}

RecipeResult case11_finish(const RotationSystem& rs, const Case11Labels& l) {
  check_case11_input(rs, l);
  require(is_orientable(rs), ErrorKind::kPrecondition, "input must be orientable");
  const int genus = euler_surface(rs).genus + 2;
  ScriptRecorder rec(rs);
  rec.k3(l.zero, l.a, l.b, l.c);
  check_face(rec.current(), {l.zero, l.r, l.a, l.x, l.zero, l.t, l.b, l.y, l.zero, l.two, l.c, l.four},
             "after the K3 construction");

  // first handle: eight chords of the 12-gon
  std::vector<MoveGenerator> first;
  for (const auto& [u, v] : std::vector<Edge>{{l.zero, l.a}, {l.zero, l.b}, {l.zero, l.c}, {l.a, l.b}, {l.b, l.c},
                                              {l.c, l.y}, {l.b, l.four}, {l.b, l.x}})
    first.push_back(chords_of(u, v));
  const Goal faces_a = [&](const RotationSystem& cur) {
    return has_face(cur, {l.zero, l.c, l.y}) && has_face(cur, {l.x, l.a, l.p, l.q}) &&
           has_face(cur, {l.zero, l.t, l.b, l.x});
  };
  rec = must_find(search_moves(rec, first, faces_a), "faces [0,c,y] and [0,12s+2,b,x]");

  // second handle: [0,c,y] meets [x,a,12s+4,6s+5]
  const std::vector<Edge> second{{l.c, l.a}, {l.c, l.x}, {l.y, l.x}, {l.zero, l.q}, {l.zero, l.p}, {l.c, l.p}};
  const Goal quads = [&](const RotationSystem& cur) {
    return type_of(cur) == EmbeddingType{4, 4} && has_face(cur, {l.zero, l.q, l.x, l.y}) &&
           has_face(cur, {l.zero, l.t, l.b, l.x});
  };
  std::string tri, quad;
  for (const auto& f : trace_faces(rec.current())) {
    const auto lab = f.labels(rec.current());
    const std::set<std::string> set(lab.begin(), lab.end());
    if (f.length() == 3 && set == std::set<std::string>{l.zero, l.c, l.y}) tri = f.hash(rec.current());
    if (f.length() == 4 && set == std::set<std::string>{l.x, l.a, l.p, l.q}) quad = f.hash(rec.current());
  }
  for (std::size_t h = 0; h < second.size(); ++h) {
    ScriptRecorder next = rec;
    try {
      next.handle(second[h].first, tri, second[h].second, quad, "merge [0,c,y] with [x,a,12s+4,6s+5]");
    } catch (const Error&) {
      continue;
    }
    std::vector<MoveGenerator> rest;
    for (std::size_t k = 0; k < second.size(); ++k)
      if (k != h) rest.push_back(chords_of(second[k].first, second[k].second));
    auto found = search_moves(next, rest, quads);
    if (!found) continue;
    auto done = search_moves(*found, {exchanges_of(l.zero, l.x)}, type_goal(true, genus, {5}));
    if (!done) continue;
    if (is_complete(done->current())) verify_complete(done->current(), true, genus, {5});
    return finish(rs, *done);
  }
  fail(ErrorKind::kPrecondition, "no second handle leaves the quadrilaterals [0,6s+5,x,y] and [0,12s+2,b,x]");
}

// ---------------------------------------------------------------------------
// Nonorientable recipes

namespace {

// Vertex crosscaps at v whose two cut gaps are corners of nontriangular faces.
std::vector<Move> vcrosscap_moves(const RotationSystem& rs, const std::string& v) {
  const int iv = rs.id(v);
  const auto& rot = rs.rotation(iv);
  const int d = static_cast<int>(rot.size());
  std::set<int> gaps;  // gap i lies between rot[i] and rot[i+1]
  for (const auto& f : big_faces(trace_faces(rs))) {
    for (const auto& c : f.corners) {
      if (c.vertex != iv) continue;
      gaps.insert(c.flag > 0 ? rs.position(iv, c.prev) : rs.position(iv, c.next));
    }
  }
  std::vector<Move> out;
  for (auto i = gaps.begin(); i != gaps.end(); ++i) {
    for (auto j = std::next(i); j != gaps.end(); ++j) {
      const std::string first = rs.name(rot[(*i + 1) % d]), last = rs.name(rot[*j]);
      out.push_back({step(Kind::kVCrosscap, {v, first, last})});
    }
  }
  return out;
}

bool face_holds(const RotationSystem& rs, const std::vector<std::string>& labels) {
  for (const auto& f : trace_faces(rs)) {
    const auto l = f.labels(rs);
    bool all = true;
    for (const auto& want : labels) all = all && std::find(l.begin(), l.end(), want) != l.end();
    if (all) return true;
  }
  return false;
}

}  // namespace

RecipeResult nonorientable_knk2(const RotationSystem& knk2, const EmbeddingType& type) {
  require(type == EmbeddingType{5} || type == EmbeddingType{4, 4}, ErrorKind::kPrecondition,
          "one crosscap yields types (5) and (4,4)");
  require_triangular(knk2, "input");
  const auto [x, y] = single_missing_edge(knk2);
  std::string v;
  for (const auto& name : knk2.names()) {
    if (name == x || name == y) continue;
    if (knk2.adjacent(knk2.id(name), knk2.id(x)) && knk2.adjacent(knk2.id(name), knk2.id(y))) {
      v = name;
      if (name == "0") break;
    }
  }
  require(!v.empty(), ErrorKind::kPrecondition, "no vertex adjacent to both " + x + " and " + y);
  const int n = knk2.vertex_count();
  const int genus = 2 - euler_surface(knk2).euler_characteristic + 1;
  require(genus == genus_bounds(n).nonorientable_genus, ErrorKind::kPrecondition,
          "input surface is not one crosscap below the nonorientable genus");
  ScriptRecorder rec(knk2);
  rec.remove(v, x);
  rec.remove(v, y);
  const Goal octagon = [&](const RotationSystem& rs) {
    for (const auto& f : trace_faces(rs)) {
      if (f.length() != 8) continue;
      const auto l = f.labels(rs);
      if (std::count(l.begin(), l.end(), v) == 2 && std::count(l.begin(), l.end(), x) == 1 &&
          std::count(l.begin(), l.end(), y) == 1)
        return true;
    }
    return false;
  };
  const MoveGenerator cap = [v](const RotationSystem& rs) { return vcrosscap_moves(rs, v); };
  std::vector<MoveGenerator> stages{cap, chords_of(x, y), chords_of(v, x), chords_of(v, y)};
  rec = must_find(search_moves(rec, stages, type_goal(false, genus, type), {octagon}), format_type(type));
  verify_complete(rec.current(), false, genus, type);
  return finish(knk2, rec);
}

RecipeResult nonorientable_case8(const RotationSystem& g, const EmbeddingType& type) {
  require(type == EmbeddingType{5} || type == EmbeddingType{4, 4}, ErrorKind::kPrecondition,
          "two crosscaps yield types (5) and (4,4)");
  require_triangular(g, "input");
  for (const auto& l : {"x", "y0", "y1"}) require(g.find(l).has_value(), ErrorKind::kPrecondition, std::string("missing vertex ") + l);
  const int n = g.vertex_count() - 1;
  const int genus = genus_bounds(n).nonorientable_genus;
  const auto row = g.rotation_labels(g.id("x"));
  const auto even = [](const std::string& l) { return is_numeric_label(l) && std::stoll(l) % 2 == 0; };
  const auto odd = [](const std::string& l) { return is_numeric_label(l) && std::stoll(l) % 2 == 1; };
  for (std::size_t i = 0; i < row.size(); ++i) {
    for (int dir : {1, -1}) {
      const std::string alpha = row[i], beta = row[(i + row.size() + dir) % row.size()];
      if (!even(alpha) || !odd(beta)) continue;
      ScriptRecorder rec(g);
      try {
        rec.remove("y0", alpha);
        rec.remove("y1", beta);
        rec.remove(alpha, beta);
      } catch (const Error&) {
        continue;
      }
      const MoveGenerator caps = [alpha, beta](const RotationSystem& rs) {
        auto out = vcrosscap_moves(rs, alpha);
        for (auto& m : vcrosscap_moves(rs, beta)) out.push_back(std::move(m));
        return out;
      };
      const Goal two = [](const RotationSystem& rs) {
        return face_holds(rs, {"x", "y0"}) || face_holds(rs, {"x", "y1"}) || face_holds(rs, {"y0", "y1"});
      };
      const Goal three = [](const RotationSystem& rs) { return face_holds(rs, {"x", "y0", "y1"}); };
      auto opened = search_moves(rec, {caps, caps}, three, {two});
      if (!opened) continue;
      ScriptRecorder mid = *opened;
      mid.chord("y0", "y1");
      mid.contract("y0", "y1", "y");
      std::vector<MoveGenerator> stages{chords_of("x", "y"), chords_of(alpha, beta), chords_of("y", alpha),
                                        chords_of("y", beta)};
      if (auto done = search_moves(mid, stages, type_goal(false, genus, type))) {
        verify_complete(done->current(), false, genus, type);
        return finish(g, *done);
      }
    }
  }
  fail(ErrorKind::kPrecondition, "no consecutive even/odd pair in row x leads to " + format_type(type));
}

RecipeResult k7_nonorientable(const RotationSystem& torus_k7, const EmbeddingType& type) {
  require(torus_k7.vertex_count() == 7 && is_complete(torus_k7), ErrorKind::kPrecondition, "input must be K7");
  require_triangular(torus_k7, "input");
  require(euler_surface(torus_k7) == SurfaceClass{true, 1, 0}, ErrorKind::kPrecondition, "input must be on the torus");
  const auto [ia, ib] = torus_k7.edges().front();
  const std::string a = torus_k7.name(ia), b = torus_k7.name(ib);
  ScriptRecorder rec(torus_k7);
  rec.crosscap(a, b);
  const auto six = big_faces(trace_faces(rec.current()));
  require(six.size() == 1 && six[0].length() == 6, ErrorKind::kInternal, "crosscap should leave one 6-gon");
  // [a,b,c,a,b,d]: d follows the second b
  auto l = six[0].labels(rec.current());
  std::string d;
  for (int i = 0; i < 6; ++i)
    if (l[i] == a && l[(i + 1) % 6] == b && l[(i + 4) % 6] == b) d = l[(i + 5) % 6];
  if (d.empty()) {
    std::reverse(l.begin(), l.end());
    for (int i = 0; i < 6; ++i)
      if (l[i] == a && l[(i + 1) % 6] == b && l[(i + 4) % 6] == b) d = l[(i + 5) % 6];
  }
  require(!d.empty(), ErrorKind::kInternal, "crosscap face is not of the form [a,b,c,a,b,d]");
  const Goal one_repeat = [](const RotationSystem& rs) {
    const auto big = big_faces(trace_faces(rs));
    if (big.size() != 1 || big[0].length() != 6) return false;
    const auto v = big[0].vertices();
    return std::set<int>(v.begin(), v.end()).size() == 5;
  };
  rec = must_find(search_moves(rec, {exchanges_of(b, d)}, one_repeat), "a 6-gon with one repeated vertex");
  const Goal goal = type_goal(false, 3, type);
  if (type != EmbeddingType{6}) {
    require(type == EmbeddingType{5, 4} || type == EmbeddingType{4, 4, 4}, ErrorKind::kPrecondition,
            "K7 in N3 has types (6), (5,4), (4,4,4)");
    const int depth = static_cast<int>(type.size()) - 1;
    rec = must_find(exchange_search(rec, goal, depth), format_type(type));
  }
  verify_complete(rec.current(), false, 3, type);
  return finish(torus_k7, rec);
}

// ---------------------------------------------------------------------------
// Maximum genus

namespace {

// Splits the edges of a connected graph with an even number of edges into
// pairs sharing a vertex; each pair is (u,v),(v,w) with the shared vertex
// in the middle.
std::vector<std::array<std::string, 3>> pair_edges(const std::vector<std::string>& vertices,
                                                    const std::vector<Edge>& edges) {
  const int n = static_cast<int>(vertices.size());
  std::map<std::string, int> id;
  for (int i = 0; i < n; ++i) id[vertices[i]] = i;
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge index)
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    const int u = id.at(edges[e].first), v = id.at(edges[e].second);
    adj[u].push_back({v, e});
    adj[v].push_back({u, e});
  }
  std::vector<int> order, parent_edge(n, -1), disc(n, -1);
  std::vector<int> stack{0};
  while (!stack.empty()) {  // iterative DFS preorder
    const int v = stack.back();
    stack.pop_back();
    if (disc[v] >= 0) continue;
    disc[v] = static_cast<int>(order.size());
    order.push_back(v);
    for (auto it = adj[v].rbegin(); it != adj[v].rend(); ++it) {
      if (disc[it->first] < 0) {
        parent_edge[it->first] = it->second;
        stack.push_back(it->first);
      }
    }
  }
  require(static_cast<int>(order.size()) == n, ErrorKind::kPrecondition, "edge pairing needs a connected graph");
  // the last push of a vertex is the one popped first, so parent_edge names
  // its discoverer
  std::vector<std::vector<int>> owned(n);
  std::vector<char> is_tree(edges.size(), 0);
  for (int v = 1; v < n; ++v) is_tree[parent_edge[order[v]]] = 1;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    if (is_tree[e]) continue;
    const int u = id.at(edges[e].first), v = id.at(edges[e].second);
    owned[disc[u] > disc[v] ? u : v].push_back(e);
  }
  for (int k = n - 1; k >= 1; --k) {
    const int v = order[k];
    const int pe = parent_edge[v];
    const int p = id.at(edges[pe].first) == v ? id.at(edges[pe].second) : id.at(edges[pe].first);
    (owned[v].size() % 2 ? owned[v] : owned[p]).push_back(pe);
  }
  std::vector<std::array<std::string, 3>> out;
  for (int v = 0; v < n; ++v) {
    require(owned[v].size() % 2 == 0, ErrorKind::kInternal, "edge pairing left an odd vertex");
    for (std::size_t i = 0; i < owned[v].size(); i += 2) {
      auto other = [&](int e) { return edges[e].first == vertices[v] ? edges[e].second : edges[e].first; };
      out.push_back({other(owned[v][i]), vertices[v], other(owned[v][i + 1])});
    }
  }
  return out;
}

}  // namespace

RecipeResult xuong_max_genus(int n) {
  require(n >= 4, ErrorKind::kPrecondition, "maximum genus construction needs n >= 4");
  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
  std::vector<std::string> star;
  for (int v = 2; v <= n; ++v) star.push_back(num(v));
  rows.emplace_back("1", star);
  for (int v = 2; v <= n; ++v) rows.emplace_back(num(v), std::vector<std::string>{"1"});
  const RotationSystem tree = RotationSystem::from_rows(rows);
  const bool two_faces = n % 4 == 0 || n % 4 == 3;
  std::vector<Edge> cotree;
  for (int u = 2; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (!(two_faces && u == 2 && v == 3)) cotree.push_back(make_edge(num(u), num(v)));

  ScriptRecorder rec(tree);
  for (const auto& [u, v, w] : pair_edges(star, cotree)) {
    rec.chord(u, v);
    const auto faces = trace_faces(rec.current());
    const int iv = rec.current().id(v), iw = rec.current().id(w);
    int fw = faces[0].contains_vertex(iw) ? 0 : 1;
    if (!faces[1 - fw].contains_vertex(iv)) fw = 1 - fw;
    rec.handle(v, faces[1 - fw].hash(rec.current()), w, faces[fw].hash(rec.current()));
  }
  if (two_faces) {
    const auto& rs = rec.current();
    const auto faces = trace_faces(rs);
    require(faces.size() == 1, ErrorKind::kInternal, "pairs should leave one face");
    const auto& f = faces[0];
    const int one = rs.id("1"), two = rs.id("2"), three = rs.id("3");
    const int len = f.length();
    for (int i = 0; i < len; ++i) {
      const auto& prev = f.corners[(i + len - 1) % len];
      const auto& next = f.corners[(i + 1) % len];
      if (f.corners[i].vertex != one) continue;
      if (prev.vertex == two && next.vertex == three) rec.chord(Placement{f.hash(rs), (i + len - 1) % len, (i + 1) % len});
      else if (prev.vertex == three && next.vertex == two) rec.chord(Placement{f.hash(rs), (i + 1) % len, (i + len - 1) % len});
      else continue;
      break;
    }
    require(rec.current().adjacent(two, three), ErrorKind::kInternal, "face never passes 2,1,3");
  }
  const auto faces = trace_faces(rec.current());
  require(is_complete(rec.current()) && static_cast<int>(faces.size()) == (two_faces ? 2 : 1), ErrorKind::kVerification,
          "maximum genus construction left the wrong number of faces");
  return finish(tree, rec);
}

RecipeResult crosscap_interpolation(const RotationSystem& rs, int k) {
  ScriptRecorder rec(rs);
  const int one_face = 2 - (rs.vertex_count() - rs.edge_count() + 1);
  const auto start = euler_surface(rs);
  const int from = 2 - start.euler_characteristic;
  require(k >= from && k <= one_face, ErrorKind::kPrecondition,
          "target N" + num(k) + " lies outside N" + num(from) + "..N" + num(one_face));
  require(k > from || !start.orientable, ErrorKind::kPrecondition, "an orientable input needs at least one crosscap");
  while (2 - euler_surface(rec.current()).euler_characteristic < k) {
    const auto& cur = rec.current();
    const auto faces = trace_faces(cur);
    int target = 0;
    for (int i = 0; i < static_cast<int>(faces.size()); ++i)
      if (faces[i].length() > faces[target].length()) target = i;
    bool done = false;
    for (const auto& c : faces[target].corners) {
      const auto on = faces_on_edge(faces, c.vertex, c.next);
      if (on[0] == on[1]) continue;
      rec.crosscap(cur.name(c.vertex), cur.name(c.next));
      done = true;
      break;
    }
    require(done, ErrorKind::kInternal, "no edge between the long face and another face");
  }
  return finish(rs, rec);
}

std::vector<RotationSystem> crosscap_ladder(const RotationSystem& rs, int k) {
  const auto r = crosscap_interpolation(rs, k);
  std::vector<RotationSystem> out{rs};
  RotationSystem cur = rs;
  for (const auto& s : r.script.steps) out.push_back(cur = apply_step(cur, s));
  return out;
}

// ---------------------------------------------------------------------------
// Dispatcher

RotationSystem k5_example(const EmbeddingType& type) {
  const std::vector<std::string> names{"0", "1", "2", "3", "4"};
  std::vector<std::vector<std::string>> orders[5];
  for (int v = 0; v < 5; ++v) {
    std::vector<std::string> rest;
    for (int u = 0; u < 5; ++u)
      if (u != v) rest.push_back(names[u]);
    // first neighbor fixed, the other three permuted
    std::vector<std::string> tail(rest.begin() + 1, rest.end());
    do {
      std::vector<std::string> row{rest[0]};
      row.insert(row.end(), tail.begin(), tail.end());
      orders[v].push_back(row);
    } while (std::next_permutation(tail.begin(), tail.end()));
  }
  for (int code = 0; code < 7776; ++code) {
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    int c = code;
    for (int v = 0; v < 5; ++v, c /= 6) rows.emplace_back(names[v], orders[v][c % 6]);
    const auto rs = RotationSystem::from_rows(rows);
    const auto faces = trace_faces(rs);
    if (euler_surface(rs, faces).genus == 1 && embedding_type(faces) == type) return rs;
  }
  fail(ErrorKind::kRefusal, "K5 has no embedding of type " + format_type(type) + " in the torus");
}

namespace {

struct Source {
  std::string name;
  RotationSystem rs;
};

int nonorientable_extra(int n) {
  const long long k = genus_bounds(n).nonorientable_genus;
  const long long e = static_cast<long long>(n) * (n - 1) / 2;
  const long long f = (2 - k) - n + e;
  return static_cast<int>(2 * e - 3 * f);
}

void check_type_sum(const EmbeddingType& type, int extra, int n) {
  int sum = 0;
  for (int a : type) {
    require(a > 3, ErrorKind::kPrecondition, "type entries must exceed 3");
    sum += a - 3;
  }
  require(std::is_sorted(type.rbegin(), type.rend()), ErrorKind::kPrecondition, "type must be nonincreasing");
  require(sum == extra, ErrorKind::kPrecondition,
          "type " + format_type(type) + " does not fit K" + num(n) + ": face lengths must exceed 3 by " + num(extra) +
              " in total");
}

constexpr std::uint64_t kDispatchBudget = 20'000'000;

Source searched_input(const std::string& spec, bool orientable) {
  SearchSpec s;
  s.graph = parse_graph_spec(spec);
  s.orientable_only = orientable;
  s.budget = kDispatchBudget;
  const auto r = find_triangular(s);
  if (r.status != SearchStatus::kFound)
    fail(ErrorKind::kFixtureMissing, "no input embedding: search for " + spec + " ended with status " + to_string(r.status));
  return {"search " + spec + (orientable ? "" : " (unoriented)"), *r.rs};
}

std::string fixture_path(const ConstructRequest& req, const std::string& name) {
  return (req.fixture_dir.empty() ? std::string(ROTSYS_FIXTURE_DIR) : req.fixture_dir) + "/" + name;
}

Source fixture_rot(const ConstructRequest& req, const std::string& name) {
  return {"fixture " + name, read_rot_file(fixture_path(req, name))};
}

Source fixture_seed(const ConstructRequest& req, const std::string& name) {
  return {"fixture " + name, derive_index3(parse_seed(read_text_file(fixture_path(req, name))))};
}

Certificate certify(int n, const EmbeddingType& type, const std::string& source, const RecipeResult& r) {
  Certificate c;
  c.n = n;
  c.type = type;
  c.surface = euler_surface(r.rs);
  c.source = source;
  c.input = r.input;
  c.rs = r.rs;
  c.script = r.script;
  return c;
}

RecipeResult identity(const RotationSystem& rs) { return RecipeResult{rs, rs, {}}; }

// Type (6) systems for n = 1, 6, 9, 10 (mod 12).
std::pair<std::string, RecipeResult> type6(const ConstructRequest& req) {
  const int n = req.n;
  if (n == 6) {
    const auto k7 = searched_input("K7", true);
    ScriptRecorder rec(k7.rs);
    rec.delete_vertex("6");
    return {k7.name, finish(k7.rs, rec)};
  }
  if (n == 10) {
    const auto t = fixture_rot(req, "k10_p3.rot");
    return {t.name, p3_type6(t.rs)};
  }
  if (n == 22) {
    const auto t = fixture_rot(req, "k22_case10.rot");
    return {t.name, case10(t.rs, 1)};
  }
  if (n == 30) {
    const auto a = fixture_seed(req, "k30_index3.seed");
    const auto e = k30_variant(a.rs, 'E');
    return {a.name, chain(e, p3_type6(e.rs))};
  }
  if (n % 12 == 9) {
    const auto g = searched_input("G" + num(n), true);
    return {g.name, split_complete_type6(g.rs)};
  }
  const auto p = searched_input("K" + num(n) + "-P3", true);
  return {p.name, p3_type6(p.rs)};
}

// Type (5) systems for n = 8, 11 (mod 12), n > 8.
std::pair<std::string, RecipeResult> type5(const ConstructRequest& req) {
  const int n = req.n;
  if (n == 20) {
    const auto g = fixture_seed(req, "k20_index3.seed");
    return {g.name, case8(g.rs, 1)};
  }
  if (n == 23) {
    const auto t = fixture_rot(req, "k23_p.rot");
    ScriptRecorder rec(t.rs);
    rec.delete_vertex("p");
    return {t.name, finish(t.rs, rec)};
  }
  const auto t = searched_input("K" + num(n) + "+p5", true);
  ScriptRecorder rec(t.rs);
  rec.delete_vertex("p");
  return {t.name, finish(t.rs, rec)};
}

Certificate construct_orientable(const ConstructRequest& req) {
  const int n = req.n;
  const auto bounds = genus_bounds(n);
  check_type_sum(req.type, bounds.extra_edges, n);
  const EmbeddingType& type = req.type;
  if (n == 8) {
    if (type != EmbeddingType{4, 4})
      fail(ErrorKind::kRefusal, "K8 does not have a nearly triangular minimum genus embedding of type " +
                                    format_type(type) + " (a type (5) embedding would yield a forbidden triangulation)");
    const auto g = searched_input("G9", true);
    return certify(n, type, g.name, split_complete_drop_letters(g.rs));
  }
  if (n == 5) {
    const auto rs = k5_example(type);
    return certify(n, type, "exhaustive enumeration of K5", identity(rs));
  }
  RecipeResult r;
  std::string source;
  switch (bounds.extra_edges) {
    case 0: {
      const auto s = searched_input("K" + num(n), true);
      source = s.name;
      r = identity(s.rs);
      break;
    }
    case 5: {
      const auto s = searched_input("K" + num(n) + "-K2", true);
      source = s.name;
      r = case2_5_types(s.rs, type);
      break;
    }
    case 3: {
      if (n == 30 && type != EmbeddingType{6}) {
        const auto a = fixture_seed(req, "k30_index3.seed");
        source = a.name;
        r = k3_min_genus(a.rs, type);
        break;
      }
      std::tie(source, r) = type6(req);
      if (type != EmbeddingType{6}) r = downgrade_type(r, type);
      break;
    }
    case 2: {
      std::tie(source, r) = type5(req);
      if (type != EmbeddingType{5}) r = downgrade_type(r, type);
      break;
    }
    default: fail(ErrorKind::kInternal, "unexpected extra edge count");
  }
  verify_complete(r.rs, true, bounds.orientable_genus, type);
  return certify(n, type, source, r);
}

Certificate construct_nonorientable(const ConstructRequest& req) {
  const int n = req.n;
  const int genus = genus_bounds(n).nonorientable_genus;
  require(genus > 0, ErrorKind::kPrecondition, "K" + num(n) + " is planar");
  check_type_sum(req.type, nonorientable_extra(n), n);
  const EmbeddingType& type = req.type;
  RecipeResult r;
  std::string source;
  if (n == 7) {
    const auto s = searched_input("K7", true);
    source = s.name;
    r = k7_nonorientable(s.rs, type);
  } else if (nonorientable_extra(n) == 0) {
    const auto s = searched_input("K" + num(n), false);
    source = s.name;
    r = identity(s.rs);
    require(!is_orientable(r.rs), ErrorKind::kInternal, "unoriented search returned an orientable system");
  } else if (n % 12 == 8) {
    const auto g = n == 20 ? fixture_seed(req, "k20_index3.seed") : searched_input("Y" + num(n), true);
    source = g.name;
    r = nonorientable_case8(g.rs, type);
  } else {
    const std::string spec = "K" + num(n) + "-K2";
    const auto g = (n * (n - 1) / 2 - 1) % 3 == 0 && ((n - (n * (n - 1) / 2 - 1) / 3) % 2 == 0)
                       ? searched_input(spec, true)
                       : searched_input(spec, false);
    source = g.name;
    r = nonorientable_knk2(g.rs, type);
  }
  verify_complete(r.rs, false, genus, type);
  return certify(n, type, source, r);
}

}  // namespace

Certificate construct(const ConstructRequest& req) {
  require(req.n >= 3, ErrorKind::kPrecondition, "construct needs n >= 3");
  return req.nonorientable ? construct_nonorientable(req) : construct_orientable(req);
}

std::string verification_digest(const RotationSystem& rs) {
  const auto faces = trace_faces(rs);
  std::string dist;
  for (const auto& [len, count] : face_distribution(faces)) dist += (dist.empty() ? "" : ",") + num(len) + "x" + num(count);
  return "V=" + num(rs.vertex_count()) + " E=" + num(rs.edge_count()) + " F=" + num(static_cast<long long>(faces.size())) +
         " surface=" + describe(euler_surface(rs, faces)) + " type=" + format_type(embedding_type(faces)) +
         " faces=" + dist + " digest=" + digest(rs);
}

std::string certificate_text(const Certificate& c) {
  std::string out;
  out += "# certificate\n";
  out += "# n: " + num(c.n) + "\n";
  out += "# type: " + format_type(c.type) + "\n";
  out += "# surface: " + describe(c.surface) + "\n";
  out += "# source: " + c.source + "\n";
  out += "# input: " + verification_digest(c.input) + "\n";
  for (const auto& s : c.script.steps) out += "# step: " + to_string(s) + "\n";
  out += "# verified: " + verification_digest(c.rs) + "\n";
  out += to_rot_text(c.rs);
  return out;
}
}  // namespace rotsys
