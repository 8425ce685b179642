#include "doctest.h"
#include "rotsys/currents.hpp"
#include "rotsys/io.hpp"
#include "support.hpp"

using namespace rotsys;

namespace {

const char* kZ18Log = "11 x 7 a 8 w 13 1 15 9 6 5 u 16 y 2 v 10 c 14 17 12 3 4 b";

std::map<std::string, VortexType> z18_letters() {
  std::map<std::string, VortexType> t{{"x", VortexType::kT1}, {"y", VortexType::kT2}};
  for (const char* l : {"a", "b", "c", "u", "v", "w"}) t[l] = VortexType::kT3;
  return t;
}

std::vector<std::string> split(const std::string& s) { return split_tokens(s); }

}  // namespace

TEST_CASE("Z18 example rebuilt from its log is a valid current graph") {
  const auto log = parse_log(kZ18Log, 18);
  auto cg = current_graph_from_log(log, 18, z18_letters());
  auto report = validate_current_graph(cg);
  for (const auto& f : report.failures) INFO(f);
  CHECK(report.ok());
  CHECK(cyclic_equal(trace_log(cg), log));
  auto again = parse_cur(to_cur_text(cg));
  CHECK(format_log(trace_log(again)) == format_log(trace_log(cg)));
}

TEST_CASE("Z18 additive rule matches the expected rows") {
  const auto log = parse_log(kZ18Log, 18);
  auto cg = current_graph_from_log(log, 18, z18_letters());
  const auto table = cg.vortex_table();
  CHECK(derive_row(log, 18, table, 1) ==
        split("12 x 8 c 9 v 14 2 16 10 7 6 w 17 y1 3 u 11 b 15 0 13 4 5 a"));
  CHECK(derive_row(log, 18, table, 2) ==
        split("13 x 9 b 10 u 15 3 17 11 8 7 v 0 y0 4 w 12 a 16 1 14 5 6 c"));
  CHECK(derive_row(log, 18, table, 3) ==
        split("14 x 10 a 11 w 16 4 0 12 9 8 u 1 y1 5 v 13 c 17 2 15 6 7 b"));
  CHECK(derive_row(log, 18, table, 4) ==
        split("15 x 11 c 12 v 17 5 1 13 10 9 w 2 y0 6 u 14 b 0 3 16 7 8 a"));

  auto rs = derive_rotation_system(log, 18, table);
  CHECK(rs.rotation_labels(rs.id("a")) == split("0 7 11 3 10 14 6 13 17 9 16 2 12 1 5 15 4 8"));
  CHECK(rs.rotation_labels(rs.id("x")) == split("0 11 4 15 8 1 12 5 16 9 2 13 6 17 10 3 14 7"));
  CHECK(rs.rotation_labels(rs.id("y0")) == split("0 16 14 12 10 8 6 4 2"));
  CHECK(check_rule_r_star(rs));
  CHECK(embedding_type(trace_faces(rs)).empty());
}

TEST_CASE("theta graph over Z7 generates K7 on the torus") {
  const char* text =
      "group 7\n"
      "vtx P deg 3 cw rotation: A+ B+ C+\n"
      "vtx Q deg 3 cw rotation: A- B- C-\n"
      "arc A P Q current 1\narc B P Q current 2\narc C P Q current 4\n";
  auto cg = parse_cur(text);
  auto report = validate_current_graph(cg);
  CHECK(report.ok());
  auto log = trace_log(cg);
  CHECK(log.size() == 6);
  auto rs = derive_rotation_system(log, 7, {});
  CHECK(rs.edge_count() == 21);
  CHECK(euler_surface(rs).genus == 1);
}

TEST_CASE("validity failures are reported per principle") {
  const char* text =
      "group 7\n"
      "vtx P deg 3 cw rotation: A+ B+ C+\n"
      "vtx Q deg 3 cw rotation: A- B- C-\n"
      "arc A P Q current 1\narc B P Q current 2\narc C P Q current 2\n";
  auto report = validate_current_graph(parse_cur(text));
  CHECK_FALSE(report.ok());
  CHECK_FALSE(report.kcl);
  CHECK_FALSE(report.currents_once);
}

TEST_CASE("index-3 seeds") {
  auto k30 = derive_index3(parse_seed(read_text_file(testing_support::fixture("k30_index3.seed"))));
  CHECK(k30.vertex_count() == 30);
  CHECK(k30.edge_count() == 432);
  CHECK(trace_faces(k30).size() == 288);
  CHECK(euler_surface(k30).genus == 58);
  CHECK(missing_edges(k30).size() == 3);

  auto g20 = derive_index3(parse_seed(read_text_file(testing_support::fixture("k20_index3.seed"))));
  CHECK(g20.vertex_count() == 21);
  CHECK(g20.edge_count() == 189);
  CHECK(trace_faces(g20).size() == 126);
  CHECK(euler_surface(g20).genus == 22);
}

TEST_CASE("malformed logs and seeds") {
  CHECK_THROWS_AS(parse_log("", 7), Error);
  CHECK_THROWS_AS(parse_log("1 0 6", 7), Error);
  CHECK_THROWS_AS(parse_seed("group 18\nrow 0. 1 2\n"), Error);
}

TEST_CASE("stored Z18 current graph derives the same rows as its log") {
  const auto cg = parse_cur(read_text_file(testing_support::fixture("z18.cur")));
  CHECK(validate_current_graph(cg).ok());
  const auto log = trace_log(cg);
  CHECK(cyclic_equal(log, parse_log(kZ18Log, 18)));
  const auto rs = derive_rotation_system(log, 18, cg.vortex_table());
  CHECK(check_rule_r_star(rs));
  CHECK(rs.vertex_count() == 27);
}
