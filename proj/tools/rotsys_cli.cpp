// rotsys: verify, derive, construct and search rotation systems.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rotsys/core.hpp"
#include "rotsys/currents.hpp"
#include "rotsys/io.hpp"
#include "rotsys/recipes.hpp"
#include "rotsys/search.hpp"
#include "rotsys/surgery.hpp"

using namespace rotsys;
using nlohmann::ordered_json;

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::kVerification: return 1;
    case ErrorKind::kMalformed: return 2;
    case ErrorKind::kPrecondition: return 2;
    case ErrorKind::kFixtureMissing: return 3;
    case ErrorKind::kRefusal: return 4;
    case ErrorKind::kInternal: return 1;
  }
  return 1;
}

std::string kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::kVerification: return "verification";
    case ErrorKind::kMalformed: return "malformed";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kFixtureMissing: return "fixture-missing";
    case ErrorKind::kRefusal: return "refusal";
    case ErrorKind::kInternal: return "internal";
  }
  return "internal";
}

// Flat key/value report printed as "key: value" lines or one JSON object.
struct Report {
  bool json = false;
  ordered_json obj = ordered_json::object();

  template <class T>
  void set(const std::string& k, const T& v) { obj[k] = v; }

  void print(std::ostream& out) const {
    if (json) {
      out << obj.dump(2) << "\n";
      return;
    }
    for (const auto& [k, v] : obj.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty())
    std::cout << text;
  else
    write_text_file(path, text);
}

void describe_system(Report& rep, const RotationSystem& rs) {
  const auto faces = trace_faces(rs);
  const auto s = euler_surface(rs, faces);
  const auto type = embedding_type(faces);
  rep.set("V", rs.vertex_count());
  rep.set("E", rs.edge_count());
  rep.set("F", static_cast<long long>(faces.size()));
  rep.set("surface", describe(s));
  rep.set("orientable", s.orientable);
  rep.set("genus", s.genus);
  rep.set("euler_characteristic", s.euler_characteristic);
  rep.set("type", format_type(type));
  ordered_json dist = ordered_json::object();
  for (const auto& [len, count] : face_distribution(faces)) dist[std::to_string(len)] = count;
  rep.set("faces", dist);
  rep.set("triangular", type.empty());
  rep.set("complete", is_complete(rs));
  if (s.orientable) rep.set("rule_r_star", check_rule_r_star(rs));
  rep.set("rule_r", check_rule_r(rs));
  rep.set("digest", digest(rs));
}

// The "# verified:" line of a certificate, if present.
std::optional<std::string> certified_digest(const std::string& text) {
  const std::string key = "# verified: ";
  for (const auto& line : split_lines(text))
    if (line.rfind(key, 0) == 0) return line.substr(key.size());
  return std::nullopt;
}

int cmd_verify(const std::string& file, bool json) {
  const auto text = read_text_file(file);
  const auto rs = parse_rot(text);
  Report rep{json};
  describe_system(rep, rs);
  int code = 0;
  if (const auto want = certified_digest(text)) {
    const auto got = verification_digest(rs);
    const bool ok = got == *want;
    rep.set("certificate", ok ? "match" : "mismatch");
    if (!ok) {
      rep.set("certificate_expected", *want);
      rep.set("certificate_actual", got);
      code = 1;
    }
  }
  rep.print(std::cout);
  return code;
}

bool looks_like_seed(const std::string& text) {
  for (const auto& line : split_lines(text)) {
    const auto t = split_tokens(line);
    if (!t.empty() && (t[0] == "row" || t[0] == "vortex")) return true;
    if (!t.empty() && (t[0] == "vtx" || t[0] == "arc")) return false;
  }
  return false;
}

int cmd_derive(const std::string& file, const std::string& out) {
  const auto text = read_text_file(file);
  RotationSystem rs;
  if (looks_like_seed(text)) {
    rs = derive_index3(parse_seed(text));
  } else {
    const auto cg = parse_cur(text);
    const auto report = validate_current_graph(cg);
    if (!report.ok()) {
      for (const auto& f : report.failures) std::cerr << "invalid current graph: " << f << "\n";
      return 1;
    }
    rs = derive_rotation_system(trace_log(cg), cg.modulus, cg.vortex_table());
  }
  emit(to_rot_text(rs), out);
  return 0;
}

int cmd_construct(int n, const std::string& type, bool nonorientable, const std::string& fixtures,
                  const std::string& out, bool json) {
  ConstructRequest req;
  req.n = n;
  req.type = parse_type(type);
  req.nonorientable = nonorientable;
  req.fixture_dir = fixtures;
  const auto c = construct(req);
  const auto text = certificate_text(c);
  if (!json) {
    emit(text, out);
    return 0;
  }
  Report rep{true};
  rep.set("n", c.n);
  rep.set("type", format_type(c.type));
  rep.set("surface", describe(c.surface));
  rep.set("source", c.source);
  std::vector<std::string> steps;
  for (const auto& s : c.script.steps) steps.push_back(to_string(s));
  rep.set("script", steps);
  rep.set("verified", verification_digest(c.rs));
  rep.set("rot", to_rot_text(c.rs));
  if (!out.empty()) write_text_file(out, text);
  rep.print(std::cout);
  return 0;
}

int cmd_surgery(const std::string& file, const std::string& script, const std::string& out) {
  const auto rs = read_rot_file(file);
  emit(to_rot_text(replay(rs, parse_script(read_text_file(script)))), out);
  return 0;
}

int cmd_classify_k5(bool json) {
  const auto r = classify_complete(5);
  Report rep{json};
  rep.set("systems", r.systems);
  rep.set("min_genus", r.min_genus);
  ordered_json by_genus = ordered_json::object();
  for (const auto& [g, types] : r.types_by_genus) {
    ordered_json t = ordered_json::object();
    for (const auto& [type, count] : types) t[format_type(type)] = count;
    by_genus[std::to_string(g)] = t;
  }
  const auto& at_min = r.types_by_genus.at(r.min_genus);
  std::vector<std::string> realized, absent;
  for (const auto* t : {"8", "7,4", "6,5", "6,4,4", "5,5,4", "5,4,4,4", "4,4,4,4,4"}) {
    const auto type = parse_type(t);
    (at_min.count(type) ? realized : absent).push_back(format_type(type));
  }
  rep.set("realized", realized);
  rep.set("absent", absent);
  rep.set("types_by_genus", by_genus);
  rep.print(std::cout);
  return 0;
}

int cmd_search(const std::string& graph, bool nonorientable, std::uint64_t budget, const std::string& out, bool json) {
  SearchSpec spec;
  spec.graph = parse_graph_spec(graph);
  spec.orientable_only = !nonorientable;
  spec.require_nonorientable = nonorientable;
  spec.budget = budget;
  const auto r = find_triangular(spec);
  Report rep{json};
  rep.set("status", to_string(r.status));
  rep.set("nodes", r.nodes);
  if (r.rs) {
    if (!out.empty()) write_text_file(out, to_rot_text(*r.rs));
    if (json) {
      rep.set("rot", to_rot_text(*r.rs));
    } else if (out.empty()) {
      std::cout << "# status: found nodes: " << r.nodes << "\n" << to_rot_text(*r.rs);
      return 0;
    }
  }
  rep.print(std::cout);
  return r.rs ? 0 : 1;
}

int cmd_maxgenus(int n, int crosscaps, const std::string& out, bool json) {
  auto r = xuong_max_genus(n);
  if (crosscaps > 0) r = crosscap_interpolation(r.rs, crosscaps);
  if (!json) {
    emit(to_rot_text(r.rs), out);
    return 0;
  }
  Report rep{true};
  describe_system(rep, r.rs);
  rep.set("rot", to_rot_text(r.rs));
  if (!out.empty()) write_text_file(out, to_rot_text(r.rs));
  rep.print(std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotsys: rotation systems, current graphs and minimum genus constructions"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));

  std::string file, script, out, type, graph, fixtures;
  int n = 0, crosscaps = 0;
  bool nonorientable = false;
  std::uint64_t budget = 100'000'000;

  auto* verify = app.add_subcommand("verify", "report V, E, F, surface, face distribution and rule checks");
  verify->add_option("file", file, ".rot file or certificate")->required();

  auto* derive = app.add_subcommand("derive", "derive a rotation system from a .cur file or index-3 seed");
  derive->add_option("file", file)->required();
  derive->add_option("--out,-o", out);

  auto* cons = app.add_subcommand("construct", "build K_n with a given face type and print a certificate");
  cons->add_option("--n", n)->required();
  cons->add_option("--type", type, "face lengths above 3, e.g. 5,4 or ()")->required();
  cons->add_flag("--nonorientable", nonorientable);
  cons->add_option("--fixtures", fixtures, "fixture directory");
  cons->add_option("--out,-o", out);

  auto* surg = app.add_subcommand("surgery", "replay a surgery script on a .rot file");
  surg->add_option("file", file)->required();
  surg->add_option("--script", script)->required();
  surg->add_option("--out,-o", out);

  auto* k5 = app.add_subcommand("classify-k5", "enumerate every rotation system of K5");

  auto* search = app.add_subcommand("search", "search for a triangular embedding");
  search->add_option("--graph", graph, "Kn, Kn-Km, Kn-P3, Kn+pK, Gn or Yn")->required();
  search->add_flag("--nonorientable", nonorientable);
  search->add_option("--budget", budget);
  search->add_option("--out,-o", out);

  auto* maxg = app.add_subcommand("maxgenus", "maximum genus embedding of K_n");
  maxg->add_option("--n", n)->required();
  maxg->add_option("--crosscaps", crosscaps, "then add crosscaps up to this nonorientable genus");
  maxg->add_option("--out,-o", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const bool json = format == "json";

  try {
    if (*verify) return cmd_verify(file, json);
    if (*derive) return cmd_derive(file, out);
    if (*cons) return cmd_construct(n, type, nonorientable, fixtures, out, json);
    if (*surg) return cmd_surgery(file, script, out);
    if (*k5) return cmd_classify_k5(json);
    if (*search) return cmd_search(graph, nonorientable, budget, out, json);
    if (*maxg) return cmd_maxgenus(n, crosscaps, out, json);
  } catch (const Error& e) {
    if (json) {
      ordered_json err{{"error", kind_name(e.kind())}, {"message", e.what()}};
      std::cerr << err.dump(2) << "\n";
    } else {
      std::cerr << "error (" << kind_name(e.kind()) << "): " << e.what() << "\n";
    }
    return exit_code(e.kind());
  }
  return 2;
}
