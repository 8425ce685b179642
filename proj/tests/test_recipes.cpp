#include <doctest.h>

#include "rotsys/currents.hpp"
#include "rotsys/recipes.hpp"
#include "rotsys/search.hpp"
#include "support.hpp"

using namespace rotsys;

namespace {

RotationSystem searched(const std::string& spec) {
  SearchSpec s;
  s.graph = parse_graph_spec(spec);
  auto r = find_triangular(s);
  REQUIRE(r.status == SearchStatus::kFound);
  return *r.rs;
}

RotationSystem k30_seed() {
  return derive_index3(parse_seed(read_text_file(testing_support::fixture("k30_index3.seed"))));
}

void check_replay(const RecipeResult& r) { CHECK(replay(r.input, r.script) == r.rs); }

}  // namespace

TEST_CASE("K14 minus an edge gives all seven types at genus 10") {
  const auto base = searched("K14-K2");
  for (const auto& t : {"8", "7,4", "6,5", "6,4,4", "5,5,4", "5,4,4,4", "4,4,4,4,4"}) {
    CAPTURE(t);
    const auto r = case2_5_types(base, parse_type(t));
    verify_complete(r.rs, true, 10, parse_type(t));
    CHECK(is_minimum_by_type(r.rs));
    check_replay(r);
  }
}

TEST_CASE("planar K5 minus an edge cannot reach (6,5) or (8)") {
  const auto base = searched("K5-K2");
  CHECK_THROWS_AS(case2_5_types(base, {6, 5}), Error);
  CHECK_THROWS_AS(case2_5_types(base, {8}), Error);
}

TEST_CASE("K10 minus a path: type (6) through one handle, then downgrades") {
  const auto k10 = testing_support::load("k10_p3.rot");
  const auto r6 = p3_type6(k10);
  verify_complete(r6.rs, true, 4, {6});
  check_replay(r6);
  for (const auto& t : {EmbeddingType{5, 4}, EmbeddingType{4, 4, 4}}) {
    const auto r = downgrade_type(r6, t);
    verify_complete(r.rs, true, 4, t);
    check_replay(r);
  }
}

TEST_CASE("K23 plus p, minus p, downgrades to (4,4)") {
  const auto k23 = delete_vertex(testing_support::load("k23_p.rot"), "p");
  verify_complete(k23, true, 32, {5});
  const auto r = downgrade_type(k23, {4, 4});
  verify_complete(r.rs, true, 32, {4, 4});
  CHECK_THROWS_AS(downgrade_type(k23, {4, 4, 4}), Error);
}

TEST_CASE("split-complete G9 gives type (6) K9 and type (4,4) K8") {
  const auto g9 = searched("G9");
  const auto r = split_complete_type6(g9);
  verify_complete(r.rs, true, 3, {6});
  const auto k8 = split_complete_drop_letters(g9);
  verify_complete(k8.rs, true, 2, {4, 4});
  const auto g20 = derive_index3(parse_seed(read_text_file(testing_support::fixture("k20_index3.seed"))));
  CHECK_THROWS_AS(split_complete_type6(g20), Error);
}

TEST_CASE("K30 variants, path lemma and the K3 handle") {
  const auto a = k30_seed();
  const std::map<char, std::vector<Edge>> missing = {
      {'A', {{"x", "y"}, {"x", "z"}, {"y", "z"}}},
      {'B', {{"0", "10"}, {"x", "z"}, {"y", "z"}}},
      {'C', {{"0", "10"}, {"1", "26"}, {"y", "z"}}},
      {'D', {{"0", "10"}, {"8", "10"}, {"10", "x"}}},
      {'E', {{"6", "x"}, {"x", "y"}, {"y", "z"}}},
  };
  for (const auto& [v, m] : missing) {
    CAPTURE(v);
    const auto r = k30_variant(a, v);
    CHECK(missing_edges(r.rs) == m);
    CHECK(euler_surface(r.rs).genus == 58);
  }
  const auto e = k30_variant(a, 'E');
  const auto r6 = p3_type6(e.rs);
  verify_complete(r6.rs, true, 59, {6});
  for (const auto& t : {EmbeddingType{5, 4}, EmbeddingType{4, 4, 4}}) {
    const auto r = k3_min_genus(a, t);
    verify_complete(r.rs, true, 59, t);
    check_replay(r);
  }
}

TEST_CASE("Case 8 on the index-3 K20 rows") {
  const auto g20 = derive_index3(parse_seed(read_text_file(testing_support::fixture("k20_index3.seed"))));
  CHECK(euler_surface(g20).genus == 22);
  const auto r = case8(g20, 1);
  verify_complete(r.rs, true, 23, {5});
  check_replay(r);
  const auto r44 = downgrade_type(r, {4, 4});
  verify_complete(r44.rs, true, 23, {4, 4});
  CHECK_THROWS_AS(case8(g20, 0), Error);
  try {
    case8(g20, 0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kRefusal);
  }
}

TEST_CASE("one crosscap on planar K5 minus an edge") {
  const auto base = searched("K5-K2");
  for (const auto& t : {EmbeddingType{5}, EmbeddingType{4, 4}}) {
    const auto r = nonorientable_knk2(base, t);
    verify_complete(r.rs, false, 1, t);
    CHECK(trace_faces(r.rs).size() == 6);
    check_replay(r);
  }
}

TEST_CASE("K7 in N3") {
  const auto k7 = searched("K7");
  for (const auto& t : {EmbeddingType{6}, EmbeddingType{5, 4}, EmbeddingType{4, 4, 4}}) {
    const auto r = k7_nonorientable(k7, t);
    verify_complete(r.rs, false, 3, t);
    CHECK(trace_faces(r.rs).size() == 13);
    check_replay(r);
  }
}

TEST_CASE("two crosscaps on the K20 rows") {
  const auto g20 = derive_index3(parse_seed(read_text_file(testing_support::fixture("k20_index3.seed"))));
  for (const auto& t : {EmbeddingType{5}, EmbeddingType{4, 4}}) {
    const auto r = nonorientable_case8(g20, t);
    verify_complete(r.rs, false, 46, t);
    check_replay(r);
  }
}

TEST_CASE("maximum genus for n = 4..12") {
  for (int n = 4; n <= 12; ++n) {
    CAPTURE(n);
    const auto r = xuong_max_genus(n);
    const auto faces = trace_faces(r.rs);
    const int f = (n % 4 == 1 || n % 4 == 2) ? 1 : 2;
    REQUIRE(static_cast<int>(faces.size()) == f);
    const int chi = n - n * (n - 1) / 2 + f;
    CHECK(euler_surface(r.rs) == SurfaceClass{true, (2 - chi) / 2, chi});
    CHECK(r.rs.rotation_labels(r.rs.id("1")) == r.input.rotation_labels(r.input.id("1")));
    if (f == 2) {
      bool tri = false;
      for (const auto& face : faces) {
        auto l = face.labels(r.rs);
        std::sort(l.begin(), l.end());
        tri = tri || (face.length() == 3 && l == std::vector<std::string>{"1", "2", "3"});
      }
      CHECK(tri);
    }
    check_replay(r);
  }
  CHECK(euler_surface(xuong_max_genus(5).rs).genus == 3);
  CHECK(euler_surface(xuong_max_genus(7).rs).genus == 7);
}

TEST_CASE("crosscap interpolation on K5") {
  const auto n1 = nonorientable_knk2(searched("K5-K2"), {5}).rs;
  const auto ladder = crosscap_ladder(n1, 6);
  REQUIRE(ladder.size() == 6);
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const auto faces = trace_faces(ladder[i]);
    CHECK(euler_surface(ladder[i], faces) == SurfaceClass{false, static_cast<int>(i) + 1, 1 - static_cast<int>(i)});
    CHECK(embedding_type(faces).size() == 1);
  }
  CHECK(trace_faces(ladder.back()).size() == 1);
  CHECK(crosscap_interpolation(n1, 1).rs == n1);
  CHECK_THROWS_AS(crosscap_interpolation(n1, 7), Error);
}
