#include "rotsys/currents.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "rotsys/io.hpp"

namespace rotsys {

namespace {

int mod(long long a, int m) { return static_cast<int>(((a % m) + m) % m); }

int element_order(int g, int m) { return m / std::gcd(mod(g, m), m); }

int parse_int(const std::string& s, const std::string& what) {
  if (!is_numeric_label(s)) fail(ErrorKind::kMalformed, "expected an integer for " + what + ", got '" + s + "'");
  return std::stoi(s);
}

}  // namespace

std::string to_string(VortexType t) {
  switch (t) {
    case VortexType::kT1: return "T1";
    case VortexType::kT2: return "T2";
    case VortexType::kT3: return "T3";
  }
  return "?";
}

VortexType parse_vortex_type(std::string_view s) {
  if (s == "T1") return VortexType::kT1;
  if (s == "T2") return VortexType::kT2;
  if (s == "T3") return VortexType::kT3;
  fail(ErrorKind::kMalformed, "unknown vortex type '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Logs

Log parse_log(std::string_view text, int modulus) {
  if (modulus < 2) fail(ErrorKind::kMalformed, "group order must be at least 2");
  Log log;
  for (const auto& tok : split_tokens(text)) {
    const auto label = normalize_label(tok);
    LogToken t;
    if (is_numeric_label(label)) {
      t.value = mod(std::stoll(label), modulus);
      if (t.value == 0) fail(ErrorKind::kMalformed, "log contains the zero current");
    } else {
      t.letter = true;
      t.name = label;
    }
    log.push_back(t);
  }
  if (log.empty()) fail(ErrorKind::kMalformed, "empty log");
  return log;
}

std::string format_log(const Log& log) {
  std::string out;
  for (const auto& t : log) {
    if (!out.empty()) out += ' ';
    out += t.letter ? t.name : std::to_string(t.value);
  }
  return out;
}

bool cyclic_equal(const Log& a, const Log& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t s = 0; s < b.size(); ++s) {
    bool same = true;
    for (std::size_t i = 0; i < a.size() && same; ++i) same = a[i] == b[(s + i) % b.size()];
    if (same) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Current graphs

int CurrentGraph::vertex_id(const std::string& name) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].name == name) return static_cast<int>(i);
  }
  fail(ErrorKind::kMalformed, "unknown current-graph vertex " + name);
}

int CurrentGraph::arc_id(const std::string& name) const {
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (arcs[i].name == name) return static_cast<int>(i);
  }
  fail(ErrorKind::kMalformed, "unknown arc " + name);
}

VortexTable CurrentGraph::vortex_table() const {
  VortexTable t;
  for (const auto& v : vortices) t[v.letter] = VortexInfo{v.type, vertices[v.vertex].name};
  return t;
}

void CurrentGraph::reverse_arc(int a) {
  auto& arc = arcs.at(a);
  std::swap(arc.from, arc.to);
  arc.current = mod(-arc.current, modulus);
  for (auto& v : vertices) {
    for (auto& e : v.rotation) {
      if (e.arc == a) e.head = !e.head;
    }
  }
}

CurrentGraph parse_cur(std::string_view text) {
  CurrentGraph cg;
  struct PendingVertex {
    std::string name;
    bool clockwise;
    int degree;
    std::vector<std::string> ends;
  };
  std::vector<PendingVertex> pending;
  struct PendingVortex {
    std::string letter, vertex;
    VortexType type;
    int corner;
  };
  std::vector<PendingVortex> vortices;
  struct PendingArc {
    std::string name, from, to;
    int current;
  };
  std::vector<PendingArc> arcs;
  int lineno = 0;
  for (const auto& line : split_lines(text)) {
    ++lineno;
    const auto tok = split_tokens(line);
    if (tok.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (tok[0] == "group" && tok.size() == 2) {
      cg.modulus = parse_int(tok[1], "group order");
    } else if (tok[0] == "vtx") {
      if (tok.size() < 6 || tok[2] != "deg" || tok[5] != "rotation:")
        fail(ErrorKind::kMalformed, where + "expected 'vtx NAME deg D cw|ccw rotation: ...'");
      if (tok[4] != "cw" && tok[4] != "ccw") fail(ErrorKind::kMalformed, where + "orientation must be cw or ccw");
      PendingVertex v{tok[1], tok[4] == "cw", parse_int(tok[3], "degree"), {}};
      v.ends.assign(tok.begin() + 6, tok.end());
      if (static_cast<int>(v.ends.size()) != v.degree)
        fail(ErrorKind::kMalformed, where + "rotation length disagrees with the stated degree");
      pending.push_back(std::move(v));
    } else if (tok[0] == "arc") {
      if (tok.size() != 6 || tok[4] != "current")
        fail(ErrorKind::kMalformed, where + "expected 'arc NAME FROM TO current C'");
      arcs.push_back({tok[1], tok[2], tok[3], parse_int(tok[5], "current")});
    } else if (tok[0] == "vortex") {
      if ((tok.size() != 6 && tok.size() != 8) || tok[2] != "at" || tok[4] != "type")
        fail(ErrorKind::kMalformed, where + "expected 'vortex L at NAME type T [corner K]'");
      int corner = 0;
      if (tok.size() == 8) {
        if (tok[6] != "corner") fail(ErrorKind::kMalformed, where + "expected 'corner K'");
        corner = parse_int(tok[7], "corner");
      }
      vortices.push_back({normalize_label(tok[1]), tok[3], parse_vortex_type(tok[5]), corner});
    } else {
      fail(ErrorKind::kMalformed, where + "unrecognized line '" + line + "'");
    }
  }
  if (cg.modulus < 2) fail(ErrorKind::kMalformed, "missing or invalid 'group m' line");
  for (const auto& v : pending) cg.vertices.push_back({v.name, v.clockwise, {}});
  for (const auto& a : arcs) {
    cg.arcs.push_back({a.name, cg.vertex_id(a.from), cg.vertex_id(a.to), mod(a.current, cg.modulus)});
  }
  std::set<std::pair<int, bool>> used;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    for (const auto& e : pending[i].ends) {
      if (e.size() < 2 || (e.back() != '+' && e.back() != '-'))
        fail(ErrorKind::kMalformed, "rotation entry '" + e + "' must end in + (tail) or - (head)");
      CurrentGraph::End end{cg.arc_id(e.substr(0, e.size() - 1)), e.back() == '-'};
      const auto& arc = cg.arcs[end.arc];
      if ((end.head ? arc.to : arc.from) != static_cast<int>(i))
        fail(ErrorKind::kMalformed, "arc end " + e + " is not incident with " + pending[i].name);
      if (!used.insert({end.arc, end.head}).second) fail(ErrorKind::kMalformed, "arc end " + e + " listed twice");
      cg.vertices[i].rotation.push_back(end);
    }
  }
  if (used.size() != 2 * cg.arcs.size()) fail(ErrorKind::kMalformed, "some arc ends are missing from rotations");
  for (const auto& v : vortices) cg.vortices.push_back({v.letter, cg.vertex_id(v.vertex), v.type, v.corner});
  return cg;
}

std::string to_cur_text(const CurrentGraph& cg) {
  std::string out = "group " + std::to_string(cg.modulus) + "\n";
  for (const auto& v : cg.vertices) {
    out += "vtx " + v.name + " deg " + std::to_string(v.rotation.size()) + (v.clockwise ? " cw" : " ccw") +
           " rotation:";
    for (const auto& e : v.rotation) out += " " + cg.arcs[e.arc].name + (e.head ? "-" : "+");
    out += "\n";
  }
  for (const auto& a : cg.arcs) {
    out += "arc " + a.name + " " + cg.vertices[a.from].name + " " + cg.vertices[a.to].name + " current " +
           std::to_string(a.current) + "\n";
  }
  for (const auto& v : cg.vortices) {
    out += "vortex " + v.letter + " at " + cg.vertices[v.vertex].name + " type " + to_string(v.type) + " corner " +
           std::to_string(v.corner) + "\n";
  }
  return out;
}

namespace {

// Face walk over arc ends. An end id is 2*arc + head.
struct EndWalk {
  const CurrentGraph& cg;
  std::vector<int> vertex_of;    // end -> vertex
  std::vector<int> position_of;  // end -> index in effective rotation
  std::vector<std::vector<int>> effective;

  explicit EndWalk(const CurrentGraph& g) : cg(g) {
    vertex_of.assign(2 * g.arcs.size(), -1);
    position_of.assign(2 * g.arcs.size(), -1);
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
      std::vector<int> order;
      for (const auto& e : g.vertices[v].rotation) order.push_back(2 * e.arc + (e.head ? 1 : 0));
      if (!g.vertices[v].clockwise) std::reverse(order.begin(), order.end());
      for (std::size_t i = 0; i < order.size(); ++i) {
        vertex_of[order[i]] = static_cast<int>(v);
        position_of[order[i]] = static_cast<int>(i);
      }
      effective.push_back(std::move(order));
    }
  }

  // departure end -> next departure end
  int step(int departure) const {
    const int arrival = departure ^ 1;
    const auto& r = effective[vertex_of[arrival]];
    return r[(position_of[arrival] + 1) % r.size()];
  }

  std::vector<std::vector<int>> faces() const {
    std::vector<char> seen(vertex_of.size(), 0);
    std::vector<std::vector<int>> out;
    for (std::size_t e = 0; e < vertex_of.size(); ++e) {
      if (seen[e]) continue;
      std::vector<int> face;
      int cur = static_cast<int>(e);
      while (!seen[cur]) {
        seen[cur] = 1;
        face.push_back(cur);
        cur = step(cur);
      }
      out.push_back(std::move(face));
    }
    return out;
  }
};

}  // namespace

int face_count(const CurrentGraph& cg) { return static_cast<int>(EndWalk(cg).faces().size()); }

ValidityReport validate_current_graph(const CurrentGraph& cg) {
  ValidityReport r;
  const int m = cg.modulus;
  std::map<int, const CurrentGraph::Vortex*> vortex_at_vertex;
  for (const auto& v : cg.vortices) vortex_at_vertex[v.vertex] = &v;

  r.degrees = true;
  for (const auto& v : cg.vertices) {
    if (v.rotation.size() != 1 && v.rotation.size() != 3) {
      r.degrees = false;
      r.failures.push_back("C1: vertex " + v.name + " has degree " + std::to_string(v.rotation.size()));
    }
  }

  r.face_count = face_count(cg);
  r.one_face = r.face_count == 1;
  if (!r.one_face) r.failures.push_back("C2: embedding has " + std::to_string(r.face_count) + " faces");

  std::vector<int> uses(m, 0);
  bool zero = false;
  for (const auto& a : cg.arcs) {
    if (a.current == 0) zero = true;
    ++uses[std::min(a.current, mod(-a.current, m))];
  }
  r.currents_once = !zero;
  for (int g = 1; g <= m / 2; ++g) {
    if (uses[g] != 1) {
      r.currents_once = false;
      r.failures.push_back("C3: element " + std::to_string(g) + " (or its inverse) is used " + std::to_string(uses[g]) +
                           " times");
    }
  }
  if (zero) r.failures.push_back("C3: an arc carries the zero current");

  auto inflow = [&](int v) {
    std::vector<int> in;
    for (const auto& e : cg.vertices[v].rotation) {
      const int c = cg.arcs[e.arc].current;
      in.push_back(e.head ? c : mod(-c, m));
    }
    return in;
  };
  auto excess = [&](int v) {
    long long s = 0;
    for (int c : inflow(v)) s += c;
    return mod(s, m);
  };

  r.kcl = true;
  for (std::size_t v = 0; v < cg.vertices.size(); ++v) {
    if (cg.vertices[v].rotation.size() != 3 || vortex_at_vertex.count(static_cast<int>(v))) continue;
    if (excess(static_cast<int>(v)) != 0) {
      r.kcl = false;
      r.failures.push_back("C4: vertex " + cg.vertices[v].name + " violates KCL (excess " +
                           std::to_string(excess(static_cast<int>(v))) + ")");
    }
  }

  r.order_two_pendant = true;
  if (m % 2 == 0) {
    bool found = false;
    for (const auto& a : cg.arcs) {
      if (a.current != m / 2) continue;
      found = cg.vertices[a.from].rotation.size() == 1 || cg.vertices[a.to].rotation.size() == 1;
    }
    if (!found) {
      r.order_two_pendant = false;
      r.failures.push_back("C5: element " + std::to_string(m / 2) + " is not on an arc at a degree-1 vertex");
    }
  }

  r.vortex_types = true;
  auto bad = [&](const std::string& letter, const std::string& why) {
    r.vortex_types = false;
    r.failures.push_back("C6: vortex " + letter + " " + why);
  };
  for (const auto& vx : cg.vortices) {
    const int deg = static_cast<int>(cg.vertices[vx.vertex].rotation.size());
    const int ex = excess(vx.vertex);
    if (ex == 0) {
      bad(vx.letter, "satisfies KCL");
      continue;
    }
    const int ord = element_order(ex, m);
    switch (vx.type) {
      case VortexType::kT1:
        if (deg != 1 || ord != m) bad(vx.letter, "is not of type T1");
        break;
      case VortexType::kT2:
        if (deg != 1 || m % 2 != 0 || ord != m / 2) bad(vx.letter, "is not of type T2");
        break;
      case VortexType::kT3: {
        if (deg != 3 || m % 3 != 0 || ord != m / 3) {
          bad(vx.letter, "is not of type T3");
          break;
        }
        std::set<int> residues;
        for (int c : inflow(vx.vertex)) residues.insert(c % 3);
        if (residues.size() != 1 || residues.count(0)) bad(vx.letter, "has incoming currents in mixed classes mod 3");
        break;
      }
    }
    if (vx.corner < 0 || vx.corner >= deg) bad(vx.letter, "names a corner out of range");
  }
  return r;
}

Log trace_log(const CurrentGraph& cg) {
  EndWalk walk(cg);
  const auto faces = walk.faces();
  if (faces.size() != 1)
    fail(ErrorKind::kPrecondition, "current graph has index " + std::to_string(faces.size()) + ", not 1");
  std::map<std::pair<int, int>, std::string> letters;  // (vertex, corner) -> letter
  for (const auto& v : cg.vortices) letters[{v.vertex, v.corner}] = v.letter;

  const int m = cg.modulus;
  // start at the tail of arc 0
  std::vector<int> face = faces.front();
  std::rotate(face.begin(), std::find(face.begin(), face.end(), 0), face.end());
  Log log;
  for (std::size_t i = 0; i < face.size(); ++i) {
    const int dep = face[i];
    const auto& arc = cg.arcs[dep / 2];
    const int value = (dep & 1) ? mod(-arc.current, m) : arc.current;
    const int arrival = dep ^ 1;
    const int w = walk.vertex_of[arrival];
    // the order-2 pendant is walked out and back; keep one copy
    const bool pendant_return = i > 0 && (face[i - 1] ^ 1) == dep && m % 2 == 0 && value == m / 2;
    if (!pendant_return) log.push_back(LogToken{false, value, {}});
    auto it = letters.find({w, walk.position_of[arrival]});
    if (it != letters.end()) log.push_back(LogToken{true, 0, it->second});
  }
  // a pendant walk that wraps around the start of the face
  if (face.size() > 1 && (face.back() ^ 1) == face.front() && m % 2 == 0 && cg.arcs[0].current == m / 2 &&
      !log.empty() && !log.back().letter && log.back().value == m / 2)
    log.pop_back();
  return log;
}

CurrentGraph current_graph_from_log(const Log& log, int m, const std::map<std::string, VortexType>& letter_types) {
  // Expand into traversals; corner i follows traversal i.
  std::vector<int> value;
  std::vector<std::string> corner_letter;
  for (const auto& t : log) {
    if (t.letter) {
      if (value.empty()) fail(ErrorKind::kMalformed, "log must start with a current");
      if (!corner_letter.back().empty()) fail(ErrorKind::kMalformed, "two letters share one corner");
      corner_letter.back() = t.name;
      continue;
    }
    value.push_back(t.value);
    corner_letter.emplace_back();
    if (m % 2 == 0 && t.value == m / 2) {  // out to the hidden pendant and back
      value.push_back(t.value);
      corner_letter.emplace_back();
    }
  }
  const int n = static_cast<int>(value.size());
  // pair traversals into arcs; first appearance is the forward direction
  std::vector<int> arc_of(n, -1);
  std::vector<bool> backward(n, false);
  CurrentGraph cg;
  cg.modulus = m;
  std::map<int, int> open;  // value awaiting its inverse -> traversal
  for (int i = 0; i < n; ++i) {
    const int inv = mod(-value[i], m);
    auto it = open.find(inv);
    if (it != open.end()) {
      arc_of[i] = arc_of[it->second];
      backward[i] = true;
      open.erase(it);
    } else {
      if (open.count(value[i])) fail(ErrorKind::kMalformed, "current " + std::to_string(value[i]) + " appears twice");
      arc_of[i] = static_cast<int>(cg.arcs.size());
      cg.arcs.push_back({"A" + std::to_string(cg.arcs.size()), -1, -1, value[i]});
      open[value[i]] = i;
    }
  }
  if (!open.empty()) fail(ErrorKind::kMalformed, "log has a current without its inverse");
  auto departure = [&](int i) { return 2 * arc_of[i] + (backward[i] ? 1 : 0); };
  // rotation: arrival end of traversal i is followed by departure end of i+1
  const int ends = 2 * static_cast<int>(cg.arcs.size());
  std::vector<int> next_end(ends, -1), corner_after(ends, -1);
  for (int i = 0; i < n; ++i) {
    const int arrival = departure(i) ^ 1;
    next_end[arrival] = departure((i + 1) % n);
    corner_after[arrival] = i;
  }
  std::vector<int> vertex_of(ends, -1);
  for (int i = 0; i < n; ++i) {
    const int start = departure(i) ^ 1;
    if (vertex_of[start] >= 0) continue;
    const int v = static_cast<int>(cg.vertices.size());
    CurrentGraph::Vertex vert{"", true, {}};
    int e = start;
    do {
      vertex_of[e] = v;
      vert.rotation.push_back({e / 2, (e & 1) != 0});
      e = next_end[e];
    } while (e != start);
    cg.vertices.push_back(std::move(vert));
  }
  // name vertices: by their letters when they are vortices, else V<k>
  int plain = 0;
  for (std::size_t v = 0; v < cg.vertices.size(); ++v) {
    std::string letters;
    const auto& rot = cg.vertices[v].rotation;
    for (std::size_t k = 0; k < rot.size(); ++k) {
      const int e = 2 * rot[k].arc + (rot[k].head ? 1 : 0);
      const auto& l = corner_letter[corner_after[e]];
      if (l.empty()) continue;
      auto type = letter_types.find(l);
      if (type == letter_types.end()) fail(ErrorKind::kMalformed, "letter " + l + " has no vortex type");
      cg.vortices.push_back({l, static_cast<int>(v), type->second, static_cast<int>(k)});
      letters += l;
    }
    cg.vertices[v].name = letters.empty() ? "V" + std::to_string(plain++) : "X" + letters;
  }
  for (auto& a : cg.arcs) {
    a.from = vertex_of[2 * (&a - cg.arcs.data())];
    a.to = vertex_of[2 * (&a - cg.arcs.data()) + 1];
  }
  return cg;
}

// ---------------------------------------------------------------------------
// Additive rule

namespace {

struct T3Group {
  std::vector<std::string> letters;  // order of appearance in the log
  int residue = 0;                   // incoming currents mod 3
};

std::map<std::string, T3Group> t3_groups(const Log& log, const VortexTable& vortices) {
  std::map<std::string, T3Group> groups;  // by vertex
  for (std::size_t i = 0; i < log.size(); ++i) {
    if (!log[i].letter) continue;
    auto it = vortices.find(log[i].name);
    if (it == vortices.end()) fail(ErrorKind::kPrecondition, "letter " + log[i].name + " has no vortex metadata");
    if (it->second.type != VortexType::kT3) continue;
    const auto& prev = log[(i + log.size() - 1) % log.size()];
    if (prev.letter) fail(ErrorKind::kMalformed, "T3 letter " + log[i].name + " is not preceded by a current");
    auto& g = groups[it->second.vertex];
    const int residue = prev.value % 3;
    if (!g.letters.empty() && g.residue != residue)
      fail(ErrorKind::kPrecondition, "T3 vortex at " + it->second.vertex + " has mixed incoming classes mod 3");
    g.residue = residue;
    g.letters.push_back(log[i].name);
  }
  for (const auto& [vertex, g] : groups) {
    if (g.letters.size() != 3 || g.residue == 0)
      fail(ErrorKind::kPrecondition, "T3 vortex at " + vertex + " needs three letters with incoming currents = 1 or 2 mod 3");
  }
  return groups;
}

std::string t2_name(const std::string& letter, int k) { return letter + std::to_string(k % 2); }

}  // namespace

std::vector<std::string> derive_row(const Log& log, int m, const VortexTable& vortices, int k) {
  const auto groups = t3_groups(log, vortices);
  std::map<std::string, std::string> t3_map;
  for (const auto& [_, g] : groups) {
    // shift s: letter i -> letter i+s within the group's log order
    int shift = mod(k, 3);
    if (g.residue == 2) shift = (3 - shift) % 3;
    for (int i = 0; i < 3; ++i) t3_map[g.letters[i]] = g.letters[(i + shift) % 3];
  }
  std::vector<std::string> row;
  for (const auto& t : log) {
    if (!t.letter) {
      row.push_back(std::to_string(mod(static_cast<long long>(t.value) + k, m)));
      continue;
    }
    const auto& info = vortices.at(t.name);
    switch (info.type) {
      case VortexType::kT1: row.push_back(t.name); break;
      case VortexType::kT2: row.push_back(t2_name(t.name, k)); break;
      case VortexType::kT3: row.push_back(t3_map.at(t.name)); break;
    }
  }
  return row;
}

RowTable derive_rows(const Log& log, int m, const VortexTable& vortices) {
  RowTable rows;
  for (int k = 0; k < m; ++k) rows.emplace_back(std::to_string(k), derive_row(log, m, vortices, k));
  return rows;
}

RotationSystem manufacture_vortex_rows(const RowTable& numbered) {
  std::map<std::string, std::map<std::string, std::string>> successor;  // letter -> (k -> succ)
  std::set<std::string> row_names;
  for (const auto& [k, _] : numbered) row_names.insert(k);
  for (const auto& [k, row] : numbered) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& l = row[i];
      if (row_names.count(l)) continue;
      // row k: ... j L ...  =>  row L: ... k j ...
      const auto& j = row[(i + row.size() - 1) % row.size()];
      successor[l][k] = j;
    }
  }
  RowTable rows = numbered;
  for (const auto& [letter, succ] : successor) {
    std::vector<std::string> cycle;
    std::string start = succ.begin()->first;
    for (const auto& [k, _] : succ) {
      if (label_less(k, start)) start = k;
    }
    std::string cur = start;
    do {
      cycle.push_back(cur);
      auto it = succ.find(cur);
      if (it == succ.end())
        fail(ErrorKind::kPrecondition, "row " + letter + " cannot be closed: " + cur + " is not a neighbor");
      cur = it->second;
      if (!succ.count(cur))
        fail(ErrorKind::kPrecondition, "row " + letter + " cannot be closed: " + cur + " does not see " + letter);
    } while (cur != start && cycle.size() <= succ.size());
    if (cycle.size() != succ.size())
      fail(ErrorKind::kPrecondition, "row " + letter + " splits into more than one cycle");
    rows.emplace_back(letter, std::move(cycle));
  }
  auto rs = RotationSystem::from_rows(rows);
  return rs;
}

RotationSystem derive_rotation_system(const Log& log, int m, const VortexTable& vortices) {
  return manufacture_vortex_rows(derive_rows(log, m, vortices));
}

// ---------------------------------------------------------------------------
// Index-3 seeds

Index3Seed parse_seed(std::string_view text) {
  Index3Seed seed;
  std::array<bool, 3> have{};
  int lineno = 0;
  for (const auto& line : split_lines(text)) {
    ++lineno;
    const auto tok = split_tokens(line);
    if (tok.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (tok[0] == "group" && tok.size() == 2) {
      seed.modulus = parse_int(tok[1], "group order");
    } else if (tok[0] == "vortex" && tok.size() == 3) {
      const auto type = parse_vortex_type(tok[2]);
      if (type == VortexType::kT3) fail(ErrorKind::kMalformed, where + "index-3 seeds take T1 or T2 letters");
      seed.letters[normalize_label(tok[1])] = type;
    } else if (tok[0] == "row" && tok.size() >= 2) {
      std::string head = tok[1];
      if (!head.empty() && head.back() == '.') head.pop_back();
      const int r = parse_int(head, "row index");
      if (r < 0 || r > 2) fail(ErrorKind::kMalformed, where + "seed rows are 0, 1 and 2");
      if (seed.modulus < 3) fail(ErrorKind::kMalformed, where + "'group' must precede rows");
      for (std::size_t i = 2; i < tok.size(); ++i) {
        auto l = normalize_label(tok[i]);
        if (is_numeric_label(l)) l = std::to_string(mod(std::stoll(l), seed.modulus));
        seed.rows[r].push_back(l);
      }
      have[r] = true;
    } else {
      fail(ErrorKind::kMalformed, where + "unrecognized line '" + line + "'");
    }
  }
  if (seed.modulus % 3 != 0) fail(ErrorKind::kPrecondition, "index-3 derivation needs 3 | m");
  if (!have[0] || !have[1] || !have[2]) fail(ErrorKind::kMalformed, "seed needs rows 0, 1 and 2");
  return seed;
}

std::string to_seed_text(const Index3Seed& seed) {
  std::string out = "group " + std::to_string(seed.modulus) + "\n";
  for (const auto& [l, t] : seed.letters) out += "vortex " + l + " " + to_string(t) + "\n";
  for (int r = 0; r < 3; ++r) {
    out += "row " + std::to_string(r) + ".";
    for (const auto& e : seed.rows[r]) out += " " + e;
    out += "\n";
  }
  return out;
}

RowTable derive_index3_rows(const Index3Seed& seed) {
  const int m = seed.modulus;
  if (m % 3 != 0) fail(ErrorKind::kPrecondition, "index-3 derivation needs 3 | m");
  RowTable rows;
  for (int k = 0; k < m; ++k) {
    const int base = k % 3;
    std::vector<std::string> row;
    for (const auto& e : seed.rows[base]) {
      if (is_numeric_label(e)) {
        row.push_back(std::to_string(mod(std::stoll(e) + (k - base), m)));
        continue;
      }
      auto it = seed.letters.find(e);
      if (it == seed.letters.end()) fail(ErrorKind::kPrecondition, "letter " + e + " has no vortex metadata");
      row.push_back(it->second == VortexType::kT2 ? t2_name(e, k) : e);
    }
    rows.emplace_back(std::to_string(k), std::move(row));
  }
  return rows;
}

RotationSystem derive_index3(const Index3Seed& seed) {
  try {
    return manufacture_vortex_rows(derive_index3_rows(seed));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kMalformed)
      fail(ErrorKind::kPrecondition, std::string("derived rows are not a consistent rotation system: ") + e.what());
    throw;
  }
}

}  // namespace rotsys
