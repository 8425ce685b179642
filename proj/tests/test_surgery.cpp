#include <random>

#include "doctest.h"
#include "rotsys/currents.hpp"
#include "rotsys/io.hpp"
#include "rotsys/surgery.hpp"
#include "support.hpp"

using namespace rotsys;

namespace {

RotationSystem octahedron() {
  return parse_rot(
      "orientable: true\n0. 1 2 3 4\n5. 4 3 2 1\n1. 0 4 5 2\n2. 0 1 5 3\n3. 0 2 5 4\n4. 0 3 5 1\n");
}

RotationSystem k7_torus() {
  auto cg = parse_cur(
      "group 7\nvtx P deg 3 cw rotation: A+ B+ C+\nvtx Q deg 3 cw rotation: A- B- C-\n"
      "arc A P Q current 1\narc B P Q current 2\narc C P Q current 4\n");
  return derive_rotation_system(trace_log(cg), 7, {});
}

const Face& face_of_length(const FaceSet& faces, int len) {
  for (const auto& f : faces) {
    if (f.length() == len) return f;
  }
  FAIL("no face of length " << len);
  return faces.front();
}

}  // namespace

TEST_CASE("octahedron is a sphere triangulation") {
  auto rs = octahedron();
  CHECK(trace_faces(rs).size() == 8);
  CHECK(euler_surface(rs).genus == 0);
}

TEST_CASE("square plus chord gives two triangles") {
  auto rs = parse_rot("orientable: true\na. b d\nb. c a\nc. d b\nd. a c\n");
  auto faces = trace_faces(rs);
  REQUIRE(faces.size() == 2);
  const auto& sq = faces[0];
  auto p = placement_for(rs, sq, rs.id("a"), rs.id("c"));
  auto out = add_chord(rs, p, "a", "c");
  auto after = trace_faces(out);
  CHECK(after.size() == 3);
  CHECK(embedding_type(after) == EmbeddingType{4});
  CHECK(euler_surface(out).genus == 0);
  CHECK_THROWS_AS(add_chord(out, placement_for(out, after[0], out.id("a"), out.id("b"))), Error);
}

TEST_CASE("delete then re-add is the identity") {
  auto rs = octahedron();
  auto del = delete_edge(rs, "1", "2");
  CHECK_FALSE(del.split);
  const auto faces = trace_faces(del.rs);
  const auto& quad = face_of_length(faces, 4);
  auto back = add_chord(del.rs, placement_for(del.rs, quad, del.rs.id("1"), del.rs.id("2")));
  CHECK(back == rs);
}

TEST_CASE("handle merges two triangles into an 8-gon") {
  auto rs = octahedron();
  const auto faces = trace_faces(rs);
  const Face* f0 = nullptr;
  const Face* f5 = nullptr;
  for (const auto& f : faces) {
    if (f.contains_vertex(rs.id("0")) && !f0) f0 = &f;
    if (f.contains_vertex(rs.id("5")) && !f5) f5 = &f;
  }
  auto out = add_edge_via_handle(rs, "0", f0->hash(rs), "5", f5->hash(rs));
  auto after = trace_faces(out);
  CHECK(embedding_type(after) == EmbeddingType{8});
  CHECK(euler_surface(out).genus == 1);
  const auto& big = face_of_length(after, 8);
  CHECK(big.positions_of(out.id("0")).size() == 2);
  CHECK(big.positions_of(out.id("5")).size() == 2);
  CHECK_THROWS_AS(add_edge_via_handle(rs, "0", f0->hash(rs), "1", f0->hash(rs)), Error);
}

TEST_CASE("twice-incident edge deletion splits and lowers the genus") {
  auto rs = octahedron();
  const auto faces = trace_faces(rs);
  const Face* f0 = nullptr;
  const Face* f5 = nullptr;
  for (const auto& f : faces) {
    if (f.contains_vertex(rs.id("0")) && !f0) f0 = &f;
    if (f.contains_vertex(rs.id("5")) && !f5) f5 = &f;
  }
  auto up = add_edge_via_handle(rs, "0", f0->hash(rs), "5", f5->hash(rs));
  auto down = delete_edge(up, "0", "5");
  CHECK(down.split);
  CHECK(euler_surface(down.rs).genus == 0);
}

TEST_CASE("K7 on the torus: construction at a vertex") {
  auto rs = k7_torus();
  CHECK(check_rule_r_star(rs));
  auto row = rs.rotation_labels(rs.id("0"));
  auto out = construction_k3(rs, "0", row[0], row[2], row[4]);
  auto faces = trace_faces(out);
  CHECK(faces.size() == trace_faces(rs).size() - 5);
  CHECK(out.edge_count() == rs.edge_count() - 3);
  CHECK(embedding_type(faces) == EmbeddingType{12});
  CHECK(euler_surface(out).genus == 2);
  CHECK_THROWS_AS(construction_k3(rs, "0", row[0], row[1], row[3]), Error);
}

TEST_CASE("crosscap on a K7 torus edge gives the N3 six-gon") {
  auto rs = k7_torus();
  const auto a = rs.name(0), b = rs.rotation_labels(0)[0];
  auto out = add_crosscap_on_edge(rs, a, b);
  auto s = euler_surface(out);
  CHECK_FALSE(s.orientable);
  CHECK(s.genus == 3);
  auto faces = trace_faces(out);
  const auto& hex = face_of_length(faces, 6);
  auto labels = hex.labels(out);
  // [a, b, c, a, b, d] up to rotation and direction
  int pairs = 0;
  for (int i = 0; i < 6; ++i) pairs += labels[i] == labels[(i + 3) % 6];
  CHECK(pairs == 4);
}

TEST_CASE("vertex crosscap merges the faces at its cut gaps") {
  auto rs = octahedron();
  auto out = vertex_crosscap(rs, "0", "1", "2");
  CHECK(trace_faces(out).size() == 7);
  CHECK_FALSE(is_orientable(out));
  CHECK(euler_surface(out).genus == 1);
}

TEST_CASE("K30 flip lists") {
  auto k30 = derive_index3(parse_seed(read_text_file(testing_support::fixture("k30_index3.seed"))));
  auto b = edge_flip(k30, "0", "10", "x", "y");
  CHECK(check_rule_r_star(b));
  CHECK(missing_edges(b) == std::vector<Edge>{{"0", "10"}, {"x", "z"}, {"y", "z"}});
  CHECK_THROWS_AS(edge_flip(b, "0", "10", "x", "y"), Error);
  auto e = edge_flip(edge_flip(edge_flip(k30, "1", "26", "x", "z"), "11", "16", "1", "26"), "6", "x", "11", "16");
  CHECK(check_rule_r_star(e));
  CHECK(euler_surface(e).genus == 58);
  CHECK(missing_edges(e) == std::vector<Edge>{{"6", "x"}, {"x", "y"}, {"y", "z"}});
  auto seq = flip_sequence(k30, {"6", "x", "11", "16", "1", "26", "x", "z"});
  CHECK(seq == e);
}

TEST_CASE("K23 plus p minus p has type (5), and subdividing restores a triangulation") {
  auto rs = testing_support::load("k23_p.rot");
  auto k23 = delete_vertex(rs, "p");
  auto faces = trace_faces(k23);
  CHECK(embedding_type(faces) == EmbeddingType{5});
  CHECK(is_complete(k23));
  CHECK(euler_surface(k23).genus == 32);
  const auto& pent = face_of_length(faces, 5);
  auto back = subdivide_face(k23, pent.hash(k23), "p");
  CHECK(embedding_type(trace_faces(back)).empty());
  CHECK(back == rs);
}

TEST_CASE("contraction refuses to double edges") {
  auto rs = octahedron();
  CHECK_THROWS_AS(contract_edge(rs, "0", "1"), Error);
}

TEST_CASE("scripts round-trip and replay deterministically") {
  auto rs = testing_support::load("k23_p.rot");
  ScriptRecorder rec(rs);
  rec.delete_vertex("p", "remove the subdividing vertex");
  rec.expect_digest();
  const auto text = to_script_text(rec.script());
  auto parsed = parse_script(text);
  CHECK(parsed == rec.script());
  CHECK(to_script_text(parsed) == text);
  CHECK(replay(rs, parsed) == rec.current());
  CHECK(digest(replay(rs, parsed)) == digest(replay(rs, parsed)));
  CHECK_THROWS_AS(parse_step("frobnicate a b"), Error);
  CHECK_THROWS_AS(parse_step("flip a b c d"), Error);
}

TEST_CASE("deleting an edge walked twice the same way keeps one face") {
  auto rs = parse_rot("orientable: false\n0. 3 1\n1. 3 0 2\n2. 1 3\n3. 2 1 0\nsig 0 1 -1\n");
  REQUIRE(trace_faces(rs).size() == 1);
  const auto d = delete_edge(rs, "1", "2");
  CHECK(d.one_face);
  CHECK_FALSE(d.split);
  CHECK(trace_faces(d.rs).size() == 1);
  CHECK(euler_surface(d.rs) == SurfaceClass{false, 1, 1});
}
