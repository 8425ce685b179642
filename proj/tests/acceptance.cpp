// Acceptance run: one PASS/FAIL line per criterion, with wall time.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rotsys/core.hpp"
#include "rotsys/currents.hpp"
#include "rotsys/io.hpp"
#include "rotsys/recipes.hpp"
#include "rotsys/search.hpp"
#include "rotsys/surgery.hpp"
#include "support.hpp"

using namespace rotsys;

namespace {

struct Failure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

std::string joined(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
  return s;
}

std::string row(const RotationSystem& rs, const std::string& v) { return joined(rs.rotation_labels(rs.id(v))); }

RotationSystem fixture(const std::string& name) { return testing_support::load(name); }

RotationSystem seed(const std::string& name) {
  return derive_index3(parse_seed(read_text_file(testing_support::fixture(name))));
}

void has(const RotationSystem& rs, bool orientable, int genus, const EmbeddingType& type, const std::string& what) {
  const auto faces = trace_faces(rs);
  const auto s = euler_surface(rs, faces);
  expect(s.orientable == orientable && s.genus == genus && embedding_type(faces) == type,
         what + ": got " + describe(s) + " " + format_type(embedding_type(faces)) + ", want " +
             (orientable ? "S" : "N") + std::to_string(genus) + " " + format_type(type));
}

void complete_with(const RecipeResult& r, bool orientable, int genus, const EmbeddingType& type, const std::string& what) {
  expect(is_complete(r.rs), what + ": not complete");
  has(r.rs, orientable, genus, type, what);
  expect(replay(r.input, r.script) == r.rs, what + ": script replay differs");
}

// -------------------------------------------------------------------------

void z18_rows() {
  const std::map<std::string, std::string> expected = {
      {"0", "11 x 7 a 8 w 13 1 15 9 6 5 u 16 y0 2 v 10 c 14 17 12 3 4 b"},
      {"1", "12 x 8 c 9 v 14 2 16 10 7 6 w 17 y1 3 u 11 b 15 0 13 4 5 a"},
      {"2", "13 x 9 b 10 u 15 3 17 11 8 7 v 0 y0 4 w 12 a 16 1 14 5 6 c"},
      {"3", "14 x 10 a 11 w 16 4 0 12 9 8 u 1 y1 5 v 13 c 17 2 15 6 7 b"},
      {"4", "15 x 11 c 12 v 17 5 1 13 10 9 w 2 y0 6 u 14 b 0 3 16 7 8 a"},
      {"a", "0 7 11 3 10 14 6 13 17 9 16 2 12 1 5 15 4 8"},
      {"x", "0 11 4 15 8 1 12 5 16 9 2 13 6 17 10 3 14 7"},
      {"y0", "0 16 14 12 10 8 6 4 2"},
  };
  std::map<std::string, VortexType> letters{{"x", VortexType::kT1}, {"y", VortexType::kT2}};
  for (const char* l : {"a", "b", "c", "u", "v", "w"}) letters[l] = VortexType::kT3;
  const auto log = parse_log("11 x 7 a 8 w 13 1 15 9 6 5 u 16 y 2 v 10 c 14 17 12 3 4 b", 18);
  const auto cg = current_graph_from_log(log, 18, letters);
  expect(validate_current_graph(cg).ok(), "Z18 current graph invalid");
  const auto stored = parse_cur(read_text_file(testing_support::fixture("z18.cur")));
  for (const auto& rs : {derive_rotation_system(log, 18, cg.vortex_table()),
                         derive_rotation_system(trace_log(stored), 18, stored.vortex_table())}) {
    for (const auto& [v, want] : expected) expect(row(rs, v) == want, "row " + v + ": " + row(rs, v));
    expect(check_rule_r_star(rs), "Z18 system fails R*");
  }
}

void table1() {
  const auto k10 = fixture("k10_p3.rot");
  expect(check_rule_r_star(k10), "fails R*");
  const auto faces = trace_faces(k10);
  expect(faces.size() == 28 && embedding_type(faces).empty(), "not 28 triangles");
  has(k10, true, 3, {}, "K10 - P3");
  const auto r6 = p3_type6(k10);
  complete_with(r6, true, 4, {6}, "K10 type (6)");
  expect(genus_bounds(10).orientable_genus == 4, "I(10)");
  complete_with(downgrade_type(r6, {5, 4}), true, 4, {5, 4}, "K10 (5,4)");
  complete_with(downgrade_type(r6, {4, 4, 4}), true, 4, {4, 4, 4}, "K10 (4,4,4)");
}

void table2() {
  const auto k23p = fixture("k23_p.rot");
  has(k23p, true, 32, {}, "K23 + p");
  const auto k23 = delete_vertex(k23p, "p");
  expect(is_complete(k23), "K23 incomplete");
  has(k23, true, 32, {5}, "K23");
  expect(genus_bounds(23).orientable_genus == 32, "I(23)");
  complete_with(downgrade_type(k23, {4, 4}), true, 32, {4, 4}, "K23 (4,4)");
}

void k30() {
  const auto a = seed("k30_index3.seed");
  has(a, true, 58, {}, "K30 - K3");
  expect(missing_edges(a).size() == 3, "K30 - K3 missing edges");
  for (char v : {'B', 'C', 'D', 'E'}) {
    const auto r = k30_variant(a, v);
    has(r.rs, true, 58, {}, std::string("variant ") + v);
    expect(missing_edges(r.rs).size() == 3, std::string("variant ") + v + " edge count");
    expect(missing_edges(r.rs) != missing_edges(a), std::string("variant ") + v + " unchanged");
  }
  const auto e = k30_variant(a, 'E');
  complete_with(p3_type6(e.rs), true, 59, {6}, "K30 type (6)");
  expect(genus_bounds(30).orientable_genus == 59, "I(30)");
  complete_with(k3_min_genus(a, {5, 4}), true, 59, {5, 4}, "K30 (5,4)");
  complete_with(k3_min_genus(a, {4, 4, 4}), true, 59, {4, 4, 4}, "K30 (4,4,4)");
}

void k20() {
  const auto g = seed("k20_index3.seed");
  has(g, true, 22, {}, "G20");
  const auto r = case8(g, 1);
  complete_with(r, true, 23, {5}, "K20 type (5)");
  expect(genus_bounds(20).orientable_genus == 23, "I(20)");
  complete_with(downgrade_type(r, {4, 4}), true, 23, {4, 4}, "K20 (4,4)");
}

void k5_exhaustive() {
  const auto r = classify_complete(5);
  expect(r.systems == 7776, "system count " + std::to_string(r.systems));
  expect(r.min_genus == 1, "minimum genus");
  std::set<EmbeddingType> got;
  for (const auto& [t, count] : r.types_by_genus.at(1)) got.insert(t);
  const std::set<EmbeddingType> want{{8}, {7, 4}, {6, 4, 4}, {5, 5, 4}, {4, 4, 4, 4, 4}};
  expect(got == want, "genus-1 type set differs");
  expect(!got.count({6, 5}) && !got.count({5, 4, 4, 4}), "absent types present");
}

void case2_5() {
  SearchSpec s;
  s.graph = parse_graph_spec("K14-K2");
  const auto found = find_triangular(s);
  expect(found.status == SearchStatus::kFound, "K14 - K2 search " + to_string(found.status));
  expect(genus_bounds(14).orientable_genus == 10, "I(14)");
  for (const auto& t : {"8", "7,4", "6,5", "6,4,4", "5,5,4", "5,4,4,4", "4,4,4,4,4"})
    complete_with(case2_5_types(*found.rs, parse_type(t)), true, 10, parse_type(t), std::string("K14 ") + t);
}

void nonorientable() {
  SearchSpec s;
  s.graph = parse_graph_spec("K5-K2");
  const auto k5 = find_triangular(s);
  expect(k5.status == SearchStatus::kFound, "K5 - K2 search");
  for (const auto& t : {EmbeddingType{5}, EmbeddingType{4, 4}}) {
    const auto r = nonorientable_knk2(*k5.rs, t);
    complete_with(r, false, 1, t, "K5 N1 " + format_type(t));
    expect(trace_faces(r.rs).size() == 6, "K5 N1 face count");
  }
  s.graph = parse_graph_spec("K7");
  const auto k7 = find_triangular(s);
  expect(k7.status == SearchStatus::kFound, "K7 search");
  for (const auto& t : {EmbeddingType{6}, EmbeddingType{5, 4}, EmbeddingType{4, 4, 4}}) {
    const auto r = k7_nonorientable(*k7.rs, t);
    complete_with(r, false, 3, t, "K7 N3 " + format_type(t));
    expect(trace_faces(r.rs).size() == 13, "K7 N3 face count");
  }
  const auto g = seed("k20_index3.seed");
  for (const auto& t : {EmbeddingType{5}, EmbeddingType{4, 4}})
    complete_with(nonorientable_case8(g, t), false, 46, t, "K20 N46 " + format_type(t));
}

void max_genus() {
  for (int n = 4; n <= 12; ++n) {
    const auto r = xuong_max_genus(n);
    const auto faces = trace_faces(r.rs);
    const int f = (n % 4 == 1 || n % 4 == 2) ? 1 : 2;
    const std::string at = "n=" + std::to_string(n);
    expect(is_complete(r.rs) && static_cast<int>(faces.size()) == f, at + ": face count");
    const int chi = n - n * (n - 1) / 2 + f;
    expect(euler_surface(r.rs, faces) == SurfaceClass{true, (2 - chi) / 2, chi}, at + ": Euler");
    if (f == 2) {
      bool tri = false;
      for (const auto& face : faces) {
        auto l = face.labels(r.rs);
        std::sort(l.begin(), l.end());
        tri = tri || (face.length() == 3 && l == std::vector<std::string>{"1", "2", "3"});
      }
      expect(tri, at + ": no triangle [2,1,3]");
    }
    expect(replay(r.input, r.script) == r.rs, at + ": replay");
  }
  SearchSpec s;
  s.graph = parse_graph_spec("K5-K2");
  const auto n1 = nonorientable_knk2(*find_triangular(s).rs, {5}).rs;
  const int top = 2 - (5 - 10 + 1);  // Euler genus of a one-face K5
  const auto ladder = crosscap_ladder(n1, top);
  expect(static_cast<int>(ladder.size()) == top, "ladder length");
  for (int k = 1; k <= top; ++k) {
    const auto faces = trace_faces(ladder[k - 1]);
    const auto sc = euler_surface(ladder[k - 1], faces);
    expect(!sc.orientable && sc.genus == k, "ladder step N" + std::to_string(k));
    expect(embedding_type(faces).size() <= 1, "ladder step N" + std::to_string(k) + " not nearly triangular");
  }
  expect(trace_faces(ladder.back()).size() == 1, "ladder does not end with one face");
}

// Random systems and the per-primitive face and genus contracts.
void properties() {
  std::mt19937_64 rng(20261018);
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  auto euler_genus = [](const RotationSystem& rs) { return 2 - euler_surface(rs).euler_characteristic; };
  int checked = 0, primitives = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 4 + trial % 6;
    const bool signed_edges = trial % 3 == 0;
    const auto rs = testing_support::random_system(rng, n, 0.5, signed_edges);
    const auto faces = trace_faces(rs);
    const std::string at = "trial " + std::to_string(trial);

    long long total = 0;
    for (const auto& f : faces) total += f.length();
    expect(total == 2LL * rs.edge_count(), at + ": face lengths");
    auto oracle = testing_support::oracle_face_lengths(rs);
    std::vector<int> mine;
    for (const auto& f : faces) mine.push_back(f.length());
    std::sort(oracle.begin(), oracle.end());
    std::sort(mine.begin(), mine.end());
    expect(oracle == mine, at + ": label walk disagrees");
    expect(same_faces(oracle_trace(rs), faces), at + ": oracle trace disagrees");
    if (!signed_edges)
      expect(check_rule_r_star(rs) == embedding_type(faces).empty(), at + ": R* vs triangular");

    const auto edges = rs.edges();
    const auto [ui, vi] = edges[pick(static_cast<int>(edges.size()))];
    const std::string u = rs.name(ui), v = rs.name(vi);
    const auto sides = faces_on_edge(faces, ui, vi);
    const bool two_faces = sides[0] != sides[1];
    const int F = static_cast<int>(faces.size());
    const int eg = euler_genus(rs);
    ScriptRecorder rec(rs);

    // deletion: F-1 across two faces; otherwise the face splits or stays one
    try {
      const auto d = delete_edge(rs, u, v);
      const int f2 = static_cast<int>(trace_faces(d.rs).size());
      expect(d.one_face == !two_faces, at + ": delete side count");
      const int want = two_faces ? F - 1 : (d.split ? F + 1 : F);
      expect(f2 == want, at + ": delete face count");
      expect(euler_genus(d.rs) == eg - (two_faces ? 0 : (d.split ? 2 : 1)), at + ": delete genus");
      ++primitives;
    } catch (const Error&) {
      // bridge: the graph would disconnect
    }

    if (two_faces) {
      const auto c = add_crosscap_on_edge(rs, u, v);
      expect(static_cast<int>(trace_faces(c).size()) == F - 1, at + ": crosscap faces");
      expect(euler_genus(c) == eg + 1 && !is_orientable(c), at + ": crosscap genus");
      const auto vc = vertex_crosscap(rs, u, v, v);
      expect(euler_genus(vc) == eg + 1, at + ": one-edge vertex crosscap genus");
      primitives += 2;
    }

    // handle between corners of two distinct faces
    if (F >= 2) {
      const int a = pick(F);
      int b = pick(F - 1);
      if (b >= a) ++b;
      const auto& fa = faces[a];
      const auto& fb = faces[b];
      const int ia = pick(fa.length()), ib = pick(fb.length());
      const int x = fa.corners[ia].vertex, y = fb.corners[ib].vertex;
      if (x != y && !rs.adjacent(x, y)) {
        rec.apply([&] {
          SurgeryStep s;
          s.kind = SurgeryStep::Kind::kHandle;
          s.labels = {rs.name(x), rs.name(y)};
          s.face_a = fa.hash(rs);
          s.face_b = fb.hash(rs);
          s.corner_a = ia;
          s.corner_b = ib;
          return s;
        }());
        const auto& h = rec.current();
        expect(static_cast<int>(trace_faces(h).size()) == F - 1, at + ": handle faces");
        expect(euler_genus(h) == eg + 2, at + ": handle genus");
        ++primitives;
      }
    }

    // chord between two nonadjacent corners of a face of the current system
    {
      const auto cur = rec.current();
      const auto cf = trace_faces(cur);
      const int eg2 = euler_genus(cur);
      bool done = false;
      for (const auto& f : cf) {
        for (int i = 0; i < f.length() && !done; ++i) {
          for (int j = i + 2; j < f.length() && !done; ++j) {
            const int p = f.corners[i].vertex, q = f.corners[j].vertex;
            if (p == q || cur.adjacent(p, q)) continue;
            rec.chord(Placement{f.hash(cur), i, j});
            expect(trace_faces(rec.current()).size() == cf.size() + 1, at + ": chord faces");
            expect(euler_genus(rec.current()) == eg2, at + ": chord genus");
            done = true;
            ++primitives;
          }
        }
        if (done) break;
      }
    }

    // contraction keeps the surface when it does not double an edge
    try {
      const auto c = contract_edge(rs, u, v);
      expect(euler_genus(c) == eg && static_cast<int>(trace_faces(c).size()) == F, at + ": contraction");
      ++primitives;
    } catch (const Error&) {
    }

    // replay is deterministic and survives the text form
    const auto script = parse_script(to_script_text(rec.script()));
    expect(replay(rs, script) == rec.current(), at + ": replay");
    expect(digest(replay(rs, script)) == digest(replay(rs, rec.script())), at + ": replay digest");
    ++checked;
  }

  // flips on a triangulation: random walk keeps the surface and triangles
  auto tri = fixture("k10_p3.rot");
  const auto base = euler_surface(tri);
  int flips = 0;
  for (int step = 0; step < 40000; ++step) {
    const auto edges = tri.edges();
    const auto [ai, bi] = edges[pick(static_cast<int>(edges.size()))];
    const auto rot = tri.rotation_labels(ai);
    const std::string b = tri.name(bi);
    const int k = static_cast<int>(std::find(rot.begin(), rot.end(), b) - rot.begin());
    const std::string c = rot[(k + rot.size() - 1) % rot.size()], d = rot[(k + 1) % rot.size()];
    if (tri.adjacent(tri.id(c), tri.id(d)) || rot.size() <= 3) continue;
    const auto next = edge_flip(tri, tri.name(ai), b, c, d);
    expect(euler_surface(next) == base && embedding_type(trace_faces(next)).empty(), "flip " + std::to_string(step));
    tri = next;
    ++flips;
  }
  expect(checked >= 10000 && primitives > 20000 && flips > 1000,
         "too few checks: " + std::to_string(checked) + " systems, " + std::to_string(primitives) + " primitives, " +
             std::to_string(flips) + " flips");
  std::cout << "  " << checked << " systems, " << primitives << " primitive applications, " << flips << " flips\n";
}

}  // namespace

int main() {
  const std::vector<std::tuple<int, std::string, double, std::function<void()>>> criteria = {
      {1, "Z18 log derives rows 0-4, a, x, y0", 1, z18_rows},
      {2, "K10 - P3 table: R*, 28 triangles, S3; (6), (5,4), (4,4,4) at S4", 1, table1},
      {3, "K23 + p table: S32; minus p gives (5); downgrade (4,4)", 1, table2},
      {4, "K30 seed, four flip variants, (6), (5,4), (4,4,4) at S59", 10, k30},
      {5, "K20 seed: G20 at S22, (5) and (4,4) at S23", 10, k20},
      {6, "exhaustive K5: 7776 systems, genus-1 type set", 30, k5_exhaustive},
      {7, "K14 - K2 search and all seven types at S10", 600, case2_5},
      {8, "nonorientable K5 (N1), K7 (N3), K20 (N46)", 10, nonorientable},
      {9, "maximum genus n = 4..12 and the K5 crosscap ladder", 5, max_genus},
      {10, "property suites on 10^4 random systems", 120, properties},
  };
  int failed = 0;
  for (const auto& [id, name, limit, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string why;
    try {
      run();
    } catch (const Failure& f) {
      why = f.what;
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (why.empty() && secs > limit) why = "took " + std::to_string(secs) + " s, limit " + std::to_string(limit) + " s";
    std::ostringstream line;
    line << (why.empty() ? "PASS" : "FAIL") << " " << id << " " << name << " (" << secs << " s)";
    if (!why.empty()) line << ": " << why;
    std::cout << line.str() << std::endl;
    failed += !why.empty();
  }
  return failed == 0 ? 0 : 1;
}
