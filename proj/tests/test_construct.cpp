#include <doctest.h>

#include "rotsys/io.hpp"
#include "rotsys/recipes.hpp"
#include "rotsys/search.hpp"
#include "support.hpp"

using namespace rotsys;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kInternal;
}

ConstructRequest req(int n, const std::string& type, bool nonorientable = false) {
  ConstructRequest r;
  r.n = n;
  r.type = parse_type(type);
  r.nonorientable = nonorientable;
  return r;
}

}  // namespace

TEST_CASE("Case 10 on the synthetic K22 - K3 input") {
  const auto in = testing_support::load("k22_case10.rot");
  CHECK_NOTHROW(check_case10_rows(in, 1));
  const auto r = case10(in, 1);
  verify_complete(r.rs, true, 29, {6});
  CHECK(replay(r.input, r.script) == r.rs);
  CHECK(kind_of([&] { check_case10_rows(in, 2); }) == ErrorKind::kPrecondition);
  // c = 7s + 4 = 11 in Z_19; the pentagon is [x, 8, 11, 14, 17]
  const auto mod19 = [](int k) { return ((k % 19) + 19) % 19; };
  CHECK(mod19(-11) == 8);
  CHECK(mod19(33) == 14);
  CHECK(mod19(55) == 17);
}

TEST_CASE("Case 1 rejects inputs that lack its rows") {
  const auto k22 = testing_support::load("k22_case10.rot");
  CHECK(kind_of([&] { check_case1_rows(k22, 2); }) == ErrorKind::kPrecondition);
  CHECK(kind_of([&] { case1(k22, 2); }) == ErrorKind::kPrecondition);
  CHECK(kind_of([&] { check_case1_rows(k22, 1); }) == ErrorKind::kPrecondition);
}

TEST_CASE("Case 11 finishing step on a synthetic input") {
  const auto in = testing_support::load("case11_synthetic.rot");
  Case11Labels l;
  l.r = "5";
  l.p = "6";
  l.q = "7";
  l.t = "8";
  CHECK_NOTHROW(check_case11_input(in, l));
  const auto r = case11_finish(in, l);
  verify_complete(r.rs, true, 23, {5});
  CHECK(replay(r.input, r.script) == r.rs);
  // net change: eleven new edges, seven new faces, two handles
  CHECK(r.rs.edge_count() == in.edge_count() + 11);
  CHECK(trace_faces(r.rs).size() == trace_faces(in).size() + 7);
  CHECK(euler_surface(r.rs).genus == euler_surface(in).genus + 2);
  auto wrong = l;
  wrong.q = "9";
  CHECK(kind_of([&] { case11_finish(in, wrong); }) == ErrorKind::kPrecondition);
}

TEST_CASE("K5 on the torus") {
  for (const auto& t : {"()", "5,4", "4,4,4", "7,4", "5,5,4", "4,4,4,4,4", "8", "6,4,4"}) {
    CAPTURE(t);
    const auto type = parse_type(t);
    bool exists = true;
    const auto rs = [&] {
      try {
        return k5_example(type);
      } catch (const Error&) {
        exists = false;
        return RotationSystem{};
      }
    }();
    if (exists) CHECK(embedding_type(trace_faces(rs)) == type);
  }
  CHECK(kind_of([] { k5_example({6, 5}); }) == ErrorKind::kRefusal);
  CHECK(kind_of([] { k5_example({5, 4, 4, 4}); }) == ErrorKind::kRefusal);
}

TEST_CASE("construct covers each residue class") {
  const std::vector<std::tuple<int, std::string, bool, int>> cases = {
      {5, "4,4,4,4,4", false, 1}, {6, "6", false, 1},    {7, "()", false, 1},   {8, "4,4", false, 2},
      {9, "6", false, 3},         {10, "5,4", false, 4}, {11, "4,4", false, 5}, {13, "4,4,4", false, 8},
      {14, "8", false, 10},       {20, "5", false, 23},  {22, "6", false, 29},  {23, "5", false, 32},
      {30, "6", false, 59},       {5, "4,4", true, 1},   {6, "()", true, 1},    {7, "5,4", true, 3},
      {8, "5", true, 4},          {11, "4,4", true, 10}, {14, "5", true, 19},   {20, "4,4", true, 46},
  };
  for (const auto& [n, t, non, g] : cases) {
    CAPTURE(n);
    CAPTURE(t);
    const auto c = construct(req(n, t, non));
    verify_complete(c.rs, !non, g, parse_type(t));
    CHECK(c.surface.genus == g);
    CHECK(replay(c.input, c.script) == c.rs);
  }
}

TEST_CASE("construct refusals and bad requests") {
  CHECK(kind_of([] { construct(req(8, "5")); }) == ErrorKind::kRefusal);
  CHECK(kind_of([] { construct(req(5, "6,5")); }) == ErrorKind::kRefusal);
  CHECK(kind_of([] { construct(req(7, "6")); }) == ErrorKind::kPrecondition);
  CHECK(kind_of([] { construct(req(4, "()", true)); }) == ErrorKind::kPrecondition);
  CHECK(kind_of([] { construct(req(2, "()")); }) == ErrorKind::kPrecondition);
  auto missing = req(10, "6");
  missing.fixture_dir = "/nonexistent";
  CHECK(kind_of([&] { construct(missing); }) == ErrorKind::kFixtureMissing);
}

TEST_CASE("certificates parse back to the same system") {
  const auto c = construct(req(10, "4,4,4"));
  const auto text = certificate_text(c);
  CHECK(parse_rot(text) == c.rs);
  CHECK(text.find("# verified: " + verification_digest(c.rs)) != std::string::npos);
  CHECK(text.find("# step: ") != std::string::npos);
  CHECK(verification_digest(c.rs).find("surface=S4 type=(4,4,4)") != std::string::npos);
}

TEST_CASE("fixture store matches its manifest") {
  const std::string dir = ROTSYS_FIXTURE_DIR;
  const auto problems = check_fixture_store(dir);
  for (const auto& p : problems) INFO(p);
  CHECK(problems.empty());
  const auto entries = read_manifest(dir);
  CHECK(entries.size() == 7);
  for (const auto& e : entries) CHECK(!e.citation.empty());
}
