#include "rotsys/surgery.hpp"

#include <algorithm>

#include "rotsys/io.hpp"

namespace rotsys {

namespace {

int face_count_of(const RotationSystem& rs) { return static_cast<int>(trace_faces(rs).size()); }

void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

const Corner& corner_at(const Face& f, int i) {
  if (i < 0 || i >= f.length())
    fail(ErrorKind::kPrecondition, "corner index " + std::to_string(i) + " out of range for a face of length " +
                                       std::to_string(f.length()));
  return f.corners[i];
}

}  // namespace

std::string to_string(const Placement& p) {
  return p.face + "@" + std::to_string(p.first) + "," + std::to_string(p.second);
}

Placement parse_placement(std::string_view text) {
  const auto at = text.find('@');
  const auto comma = text.find(',', at == std::string_view::npos ? 0 : at);
  if (at == std::string_view::npos || comma == std::string_view::npos)
    fail(ErrorKind::kMalformed, "placement must look like FACE@i,j: " + std::string(text));
  Placement p;
  p.face = std::string(text.substr(0, at));
  try {
    p.first = std::stoi(std::string(text.substr(at + 1, comma - at - 1)));
    p.second = std::stoi(std::string(text.substr(comma + 1)));
  } catch (const std::exception&) {
    fail(ErrorKind::kMalformed, "bad corner indices in placement " + std::string(text));
  }
  return p;
}

const Face& face_by_hash(const RotationSystem& rs, const FaceSet& faces, const std::string& hash) {
  for (const auto& f : faces) {
    if (f.hash(rs) == hash) return f;
  }
  fail(ErrorKind::kPrecondition, "no face with id " + hash);
}

std::vector<int> faces_on_edge(const FaceSet& faces, int u, int v) {
  std::vector<int> out;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (const auto& c : faces[i].corners) {
      if (c.vertex == u && c.next == v) out.push_back(static_cast<int>(i));
      if (c.vertex == v && c.next == u) out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

Placement placement_for(const RotationSystem& rs, const Face& face, int u, int v, int ku, int kv) {
  const auto pu = face.positions_of(u);
  const auto pv = face.positions_of(v);
  if (ku >= static_cast<int>(pu.size()) || kv >= static_cast<int>(pv.size()))
    fail(ErrorKind::kPrecondition, "vertex " + rs.name(ku >= static_cast<int>(pu.size()) ? u : v) +
                                       " does not occur often enough on face " + face.hash(rs));
  return Placement{face.hash(rs), pu[ku], pv[kv]};
}

const Face* face_with(const FaceSet& faces, int u, int v) {
  for (const auto& f : faces) {
    if (f.contains_vertex(u) && f.contains_vertex(v)) return &f;
  }
  return nullptr;
}

void insert_edge(RotationSystem& rs, const Corner& a, const Corner& b) {
  require(a.vertex != b.vertex, ErrorKind::kPrecondition, "an edge needs two distinct endpoints");
  require(!rs.adjacent(a.vertex, b.vertex), ErrorKind::kPrecondition,
          rs.name(a.vertex) + " and " + rs.name(b.vertex) + " are already adjacent");
  auto put = [&](const Corner& c, int other) {
    if (rs.degree(c.vertex) == 0) {
      rs.insert_after(c.vertex, -1, other);
      return;
    }
    rs.insert_after(c.vertex, c.flag > 0 ? c.prev : c.next, other);
  };
  put(a, b.vertex);
  put(b, a.vertex);
  rs.set_signature(a.vertex, b.vertex, a.flag * b.flag);
}

RotationSystem add_chord(const RotationSystem& rs, const Placement& p) {
  const auto faces = trace_faces(rs);
  const auto& f = face_by_hash(rs, faces, p.face);
  require(p.first != p.second, ErrorKind::kPrecondition, "placement corners must be distinct");
  RotationSystem out = rs;
  insert_edge(out, corner_at(f, p.first), corner_at(f, p.second));
  if (face_count_of(out) != static_cast<int>(faces.size()) + 1)
    fail(ErrorKind::kInternal, "chord did not split its face");
  return out;
}

RotationSystem add_chord(const RotationSystem& rs, const Placement& p, const std::string& u, const std::string& v) {
  const auto faces = trace_faces(rs);
  const auto& f = face_by_hash(rs, faces, p.face);
  const int a = corner_at(f, p.first).vertex, b = corner_at(f, p.second).vertex;
  const int iu = rs.id(u), iv = rs.id(v);
  require((a == iu && b == iv) || (a == iv && b == iu), ErrorKind::kPrecondition,
          "placement corners are not at " + u + " and " + v);
  return add_chord(rs, p);
}

DeleteResult delete_edge(const RotationSystem& rs, const std::string& u, const std::string& v) {
  const int iu = rs.id(u), iv = rs.id(v);
  require(rs.adjacent(iu, iv), ErrorKind::kPrecondition, "edge (" + u + "," + v + ") is absent");
  const auto faces = trace_faces(rs);
  const auto sides = faces_on_edge(faces, iu, iv);
  DeleteResult r{rs, false, sides.size() == 2 && sides[0] == sides[1]};
  if (r.one_face) {
    // walked once each way: the face splits; twice the same way: it stays whole
    int forward = 0, backward = 0;
    for (const auto& c : faces[sides[0]].corners) {
      forward += c.vertex == iu && c.next == iv;
      backward += c.vertex == iv && c.next == iu;
    }
    r.split = forward == 1 && backward == 1;
  }
  r.rs.remove_edge(iu, iv);
  require(is_connected(r.rs), ErrorKind::kPrecondition, "deleting (" + u + "," + v + ") disconnects the graph");
  return r;
}

RotationSystem chord_exchange(const RotationSystem& rs, const std::string& u, const std::string& v,
                              const Placement& p) {
  const int iu = rs.id(u), iv = rs.id(v);
  require(rs.adjacent(iu, iv), ErrorKind::kPrecondition, "edge (" + u + "," + v + ") is absent");
  const auto faces = trace_faces(rs);
  const auto& target = face_by_hash(rs, faces, p.face);
  const auto sides = faces_on_edge(faces, iu, iv);
  require(sides.size() == 2 && sides[0] != sides[1], ErrorKind::kPrecondition,
          "edge (" + u + "," + v + ") has both sides on one face");
  for (int s : sides) {
    require(&faces[s] != &target, ErrorKind::kPrecondition, "edge (" + u + "," + v + ") lies on the target face");
  }
  const Corner a = corner_at(target, p.first), b = corner_at(target, p.second);
  require((a.vertex == iu && b.vertex == iv) || (a.vertex == iv && b.vertex == iu), ErrorKind::kPrecondition,
          "placement corners are not at " + u + " and " + v);
  RotationSystem out = rs;
  out.remove_edge(iu, iv);
  insert_edge(out, a, b);
  if (face_count_of(out) != static_cast<int>(faces.size()))
    fail(ErrorKind::kInternal, "chord exchange changed the face count");
  return out;
}

RotationSystem edge_flip(const RotationSystem& rs, const std::string& a, const std::string& b, const std::string& c,
                         const std::string& d) {
  const int ia = rs.id(a), ib = rs.id(b), ic = rs.id(c), id = rs.id(d);
  const std::string what = "-(" + a + "," + b + ")+(" + c + "," + d + ")";
  require(rs.adjacent(ia, ib), ErrorKind::kPrecondition, what + ": edge (" + a + "," + b + ") is absent");
  require(!rs.adjacent(ic, id), ErrorKind::kPrecondition, what + ": edge (" + c + "," + d + ") already present");
  const int before = rs.pred(ia, ib), after = rs.succ(ia, ib);
  require((before == ic && after == id) || (before == id && after == ic), ErrorKind::kPrecondition,
          what + ": row " + a + " does not read ... " + c + " " + b + " " + d + " ...");
  RotationSystem out = rs;
  out.remove_edge(ia, ib);
  // the quadrilateral left behind holds a, b, c and d
  const auto faces = trace_faces(out);
  for (const auto& f : faces) {
    if (f.length() != 4) continue;
    const auto pc = f.positions_of(ic), pd = f.positions_of(id);
    if (pc.size() != 1 || pd.size() != 1 || !f.contains_vertex(ia) || !f.contains_vertex(ib)) continue;
    insert_edge(out, f.corners[pc[0]], f.corners[pd[0]]);
    return out;
  }
  fail(ErrorKind::kPrecondition, what + ": the faces around (" + a + "," + b + ") are not triangles");
}

RotationSystem flip_sequence(const RotationSystem& rs, const std::vector<std::string>& p) {
  require(p.size() >= 4 && p.size() % 2 == 0, ErrorKind::kMalformed, "flip sequence needs at least two pairs");
  RotationSystem out = rs;
  for (std::size_t k = p.size() - 2; k >= 2; k -= 2) out = edge_flip(out, p[k - 2], p[k - 1], p[k], p[k + 1]);
  return out;
}

RotationSystem add_edge_via_handle(const RotationSystem& rs, const std::string& fx, int ix, const std::string& fy,
                                   int iy) {
  const auto faces = trace_faces(rs);
  const auto& f1 = face_by_hash(rs, faces, fx);
  const auto& f2 = face_by_hash(rs, faces, fy);
  require(&f1 != &f2, ErrorKind::kPrecondition, "a handle needs two distinct faces");
  RotationSystem out = rs;
  insert_edge(out, corner_at(f1, ix), corner_at(f2, iy));
  if (face_count_of(out) != static_cast<int>(faces.size()) - 1)
    fail(ErrorKind::kInternal, "handle did not merge its faces");
  return out;
}

RotationSystem add_edge_via_handle(const RotationSystem& rs, const std::string& x, const std::string& fx,
                                   const std::string& y, const std::string& fy) {
  const auto faces = trace_faces(rs);
  const auto px = face_by_hash(rs, faces, fx).positions_of(rs.id(x));
  const auto py = face_by_hash(rs, faces, fy).positions_of(rs.id(y));
  require(!px.empty(), ErrorKind::kPrecondition, x + " is not on face " + fx);
  require(!py.empty(), ErrorKind::kPrecondition, y + " is not on face " + fy);
  return add_edge_via_handle(rs, fx, px[0], fy, py[0]);
}

RotationSystem construction_k3(const RotationSystem& rs, const std::string& v, const std::string& x,
                               const std::string& y, const std::string& z) {
  const int iv = rs.id(v);
  int ix = rs.id(x), iy = rs.id(y), iz = rs.id(z);
  for (int w : {ix, iy, iz}) {
    require(rs.adjacent(iv, w), ErrorKind::kPrecondition, rs.name(w) + " is not a neighbor of " + v);
    require(rs.signature(iv, w) > 0, ErrorKind::kPrecondition, "edges at " + v + " must be untwisted");
  }
  require(ix != iy && iy != iz && ix != iz, ErrorKind::kPrecondition, "x, y, z must be distinct");
  // read the rotation from x; if z comes before y the roles of y and z swap
  std::vector<int> r = rs.rotation(iv);
  std::rotate(r.begin(), r.begin() + rs.position(iv, ix), r.end());
  auto pos = [&](int w) { return static_cast<int>(std::find(r.begin(), r.end(), w) - r.begin()); };
  if (pos(iz) < pos(iy)) std::swap(iy, iz);
  const int py = pos(iy), pz = pos(iz);
  const std::vector<int> A(r.begin() + 1, r.begin() + py), B(r.begin() + py + 1, r.begin() + pz),
      C(r.begin() + pz + 1, r.end());
  require(!A.empty() && !B.empty() && !C.empty(), ErrorKind::kPrecondition,
          "the rotation at " + v + " needs a neighbor between each pair of x, y, z");
  const int faces_before = face_count_of(rs);
  RotationSystem out = rs;
  for (int w : {ix, iy, iz}) out.remove_edge(iv, w);
  std::vector<int> order = A;
  order.insert(order.end(), C.begin(), C.end());
  order.insert(order.end(), B.begin(), B.end());
  out.set_rotation(iv, std::move(order));
  if (face_count_of(out) != faces_before - 5) fail(ErrorKind::kInternal, "construction did not remove five faces");
  return out;
}

RotationSystem contract_edge(const RotationSystem& rs, const std::string& u, const std::string& v,
                             const std::string& merged) {
  const int iu = rs.id(u), iv = rs.id(v);
  require(rs.adjacent(iu, iv), ErrorKind::kPrecondition, "edge (" + u + "," + v + ") is absent");
  for (int w : rs.rotation(iv)) {
    require(w == iu || !rs.adjacent(iu, w), ErrorKind::kPrecondition,
            "contracting (" + u + "," + v + ") would double the edge to common neighbor " + rs.name(w));
  }
  RotationSystem out = rs;
  if (out.signature(iu, iv) < 0) out.switch_vertex(iv);
  auto after = [&](int a, int b) {
    std::vector<int> r = out.rotation(a);
    std::rotate(r.begin(), r.begin() + out.position(a, b), r.end());
    r.erase(r.begin());
    return r;
  };
  std::vector<int> order = after(iu, iv);
  const std::vector<int> tail = after(iv, iu);
  order.insert(order.end(), tail.begin(), tail.end());
  for (int b : tail) {
    const int sign = out.signature(iv, b);
    std::vector<int> rb = out.rotation(b);
    std::replace(rb.begin(), rb.end(), iv, iu);
    out.set_rotation(b, std::move(rb));
    out.set_signature(iv, b, 1);
    out.set_signature(iu, b, sign);
  }
  out.set_signature(iu, iv, 1);
  out.set_rotation(iu, std::move(order));
  out.set_rotation(iv, {});
  out.remove_vertex(iv);
  if (!merged.empty() && merged != u) out = relabel(out, {{u, merged}});
  return out;
}

RotationSystem subdivide_face(const RotationSystem& rs, const std::string& face, const std::string& w) {
  const auto faces = trace_faces(rs);
  const Face f = face_by_hash(rs, faces, face);
  require(is_simple_face(f), ErrorKind::kPrecondition, "face " + face + " repeats a vertex; cannot subdivide");
  require(!rs.find(w), ErrorKind::kPrecondition, "vertex " + w + " already exists");
  RotationSystem out = rs;
  const int iw = out.add_vertex(w);
  std::vector<int> order;
  for (auto it = f.corners.rbegin(); it != f.corners.rend(); ++it) {
    const auto& c = *it;
    out.insert_after(c.vertex, c.flag > 0 ? c.prev : c.next, iw);
    out.set_signature(iw, c.vertex, c.flag);
    order.push_back(c.vertex);
  }
  out.set_rotation(iw, std::move(order));
  if (face_count_of(out) != static_cast<int>(faces.size()) - 1 + f.length())
    fail(ErrorKind::kInternal, "subdivision did not triangulate its face");
  return out;
}

RotationSystem delete_vertex(const RotationSystem& rs, const std::string& v) {
  RotationSystem out = rs;
  out.remove_vertex(rs.id(v));
  require(is_connected(out), ErrorKind::kPrecondition, "deleting " + v + " disconnects the graph");
  return out;
}

RotationSystem add_crosscap_on_edge(const RotationSystem& rs, const std::string& u, const std::string& v) {
  const int iu = rs.id(u), iv = rs.id(v);
  require(rs.adjacent(iu, iv), ErrorKind::kPrecondition, "edge (" + u + "," + v + ") is absent");
  const auto faces = trace_faces(rs);
  const auto sides = faces_on_edge(faces, iu, iv);
  require(sides.size() == 2 && sides[0] != sides[1], ErrorKind::kPrecondition,
          "edge (" + u + "," + v + ") has both sides on one face");
  RotationSystem out = rs;
  out.set_signature(iu, iv, -rs.signature(iu, iv));
  if (face_count_of(out) != static_cast<int>(faces.size()) - 1)
    fail(ErrorKind::kInternal, "crosscap did not merge the two faces");
  return out;
}

RotationSystem vertex_crosscap(const RotationSystem& rs, const std::string& v, const std::string& first,
                               const std::string& last) {
  const int iv = rs.id(v), a = rs.id(first), b = rs.id(last);
  require(rs.adjacent(iv, a) && rs.adjacent(iv, b), ErrorKind::kPrecondition,
          first + " and " + last + " must be neighbors of " + v);
  std::vector<int> r = rs.rotation(iv);
  std::rotate(r.begin(), r.begin() + rs.position(iv, a), r.end());
  const auto end = std::find(r.begin(), r.end(), b) + 1;
  require(end != r.end() || r.front() != a || r.size() > 1, ErrorKind::kPrecondition, "empty complement");
  require(end != r.end(), ErrorKind::kPrecondition, "the reversed block must leave some neighbor of " + v);
  const int faces_before = face_count_of(rs);
  RotationSystem out = rs;
  for (auto it = r.begin(); it != end; ++it) out.set_signature(iv, *it, -rs.signature(iv, *it));
  std::reverse(r.begin(), end);
  out.set_rotation(iv, std::move(r));
  if (face_count_of(out) != faces_before - 1)
    fail(ErrorKind::kPrecondition, "the gaps around " + first + ".." + last + " at " + v + " lie on one face");
  return out;
}

// ---------------------------------------------------------------------------
// Scripts

namespace {

using Kind = SurgeryStep::Kind;

const std::vector<std::pair<Kind, std::string>>& kind_names() {
  static const std::vector<std::pair<Kind, std::string>> names{
      {Kind::kChord, "chord"},       {Kind::kDelete, "delete"},       {Kind::kExchange, "exchange"},
      {Kind::kFlip, "flip"},         {Kind::kFlipSeq, "flipseq"},     {Kind::kHandle, "handle"},
      {Kind::kK3, "k3"},             {Kind::kContract, "contract"},   {Kind::kCrosscap, "crosscap"},
      {Kind::kVCrosscap, "vcrosscap"}, {Kind::kSubdivide, "subdivide"}, {Kind::kDelVertex, "delvtx"},
      {Kind::kExpect, "expect"},
  };
  return names;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : " ") + s;
  return out;
}

// x@FACE:i
void parse_face_corner(const std::string& tok, std::string& label, std::string& face, int& corner) {
  const auto at = tok.find('@');
  const auto colon = tok.find(':', at == std::string::npos ? 0 : at);
  if (at == std::string::npos || colon == std::string::npos)
    fail(ErrorKind::kMalformed, "expected LABEL@FACE:i, got '" + tok + "'");
  label = normalize_label(tok.substr(0, at));
  face = tok.substr(at + 1, colon - at - 1);
  try {
    corner = std::stoi(tok.substr(colon + 1));
  } catch (const std::exception&) {
    fail(ErrorKind::kMalformed, "bad corner index in '" + tok + "'");
  }
}

}  // namespace

std::string to_string(const SurgeryStep& s) {
  std::string out;
  const auto& L = s.labels;
  switch (s.kind) {
    case Kind::kChord: out = "chord " + join(L) + " in " + to_string(s.placement); break;
    case Kind::kDelete: out = "delete " + join(L); break;
    case Kind::kExchange: out = "exchange " + join(L) + " into " + to_string(s.placement); break;
    case Kind::kFlip: out = "flip - " + L[0] + " " + L[1] + " + " + L[2] + " " + L[3]; break;
    case Kind::kFlipSeq: out = "flipseq " + join(L); break;
    case Kind::kHandle:
      out = "handle " + L[0] + "@" + s.face_a + ":" + std::to_string(s.corner_a) + " " + L[1] + "@" + s.face_b + ":" +
            std::to_string(s.corner_b);
      break;
    case Kind::kK3: out = "k3 " + join(L); break;
    case Kind::kContract:
      out = "contract " + L[0] + " " + L[1] + (L.size() > 2 ? " as " + L[2] : "");
      break;
    case Kind::kCrosscap: out = "crosscap " + join(L); break;
    case Kind::kVCrosscap: out = "vcrosscap " + join(L); break;
    case Kind::kSubdivide: out = "subdivide " + s.face_a + " " + L[0]; break;
    case Kind::kDelVertex: out = "delvtx " + L[0]; break;
    case Kind::kExpect: out = "expect " + s.face_a; break;
  }
  if (!s.comment.empty()) out += "  # " + s.comment;
  return out;
}

SurgeryStep parse_step(std::string_view line) {
  SurgeryStep s;
  const auto hash = line.find('#');
  if (hash != std::string_view::npos) {
    auto c = std::string(line.substr(hash + 1));
    c.erase(0, c.find_first_not_of(" \t"));
    s.comment = c;
  }
  auto tok = split_tokens(line);
  if (tok.empty()) fail(ErrorKind::kMalformed, "empty surgery step");
  auto it = std::find_if(kind_names().begin(), kind_names().end(), [&](const auto& kn) { return kn.second == tok[0]; });
  if (it == kind_names().end()) fail(ErrorKind::kMalformed, "unknown surgery step '" + tok[0] + "'");
  s.kind = it->first;
  auto need = [&](bool ok) {
    if (!ok) fail(ErrorKind::kMalformed, "malformed step: " + std::string(line));
  };
  auto labels = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) s.labels.push_back(normalize_label(tok[i]));
  };
  switch (s.kind) {
    case Kind::kChord:
    case Kind::kExchange:
      need(tok.size() == 5 && tok[3] == (s.kind == Kind::kChord ? "in" : "into"));
      labels(1, 3);
      s.placement = parse_placement(tok[4]);
      break;
    case Kind::kDelete:
    case Kind::kCrosscap:
      need(tok.size() == 3);
      labels(1, 3);
      break;
    case Kind::kFlip:
      need(tok.size() == 7 && tok[1] == "-" && tok[4] == "+");
      labels(2, 4);
      labels(5, 7);
      break;
    case Kind::kFlipSeq:
      need(tok.size() >= 5 && tok.size() % 2 == 1);
      labels(1, tok.size());
      break;
    case Kind::kHandle: {
      need(tok.size() == 3);
      std::string x, y;
      parse_face_corner(tok[1], x, s.face_a, s.corner_a);
      parse_face_corner(tok[2], y, s.face_b, s.corner_b);
      s.labels = {x, y};
      break;
    }
    case Kind::kK3:
      need(tok.size() == 5);
      labels(1, 5);
      break;
    case Kind::kContract:
      need(tok.size() == 3 || (tok.size() == 5 && tok[3] == "as"));
      labels(1, 3);
      if (tok.size() == 5) s.labels.push_back(normalize_label(tok[4]));
      break;
    case Kind::kVCrosscap:
      need(tok.size() == 4);
      labels(1, 4);
      break;
    case Kind::kSubdivide:
      need(tok.size() == 3);
      s.face_a = tok[1];
      labels(2, 3);
      break;
    case Kind::kDelVertex:
      need(tok.size() == 2);
      labels(1, 2);
      break;
    case Kind::kExpect:
      need(tok.size() == 2);
      s.face_a = tok[1];
      break;
  }
  return s;
}

std::string to_script_text(const SurgeryScript& script) {
  std::string out;
  for (const auto& s : script.steps) out += to_string(s) + "\n";
  return out;
}

SurgeryScript parse_script(std::string_view text) {
  SurgeryScript script;
  for (const auto& line : split_lines(text)) {
    if (split_tokens(line).empty()) continue;
    script.steps.push_back(parse_step(line));
  }
  return script;
}

RotationSystem apply_step(const RotationSystem& rs, const SurgeryStep& s) {
  const auto& L = s.labels;
  switch (s.kind) {
    case Kind::kChord: return add_chord(rs, s.placement, L[0], L[1]);
    case Kind::kDelete: return delete_edge(rs, L[0], L[1]).rs;
    case Kind::kExchange: return chord_exchange(rs, L[0], L[1], s.placement);
    case Kind::kFlip: return edge_flip(rs, L[0], L[1], L[2], L[3]);
    case Kind::kFlipSeq: return flip_sequence(rs, L);
    case Kind::kHandle: {
      const auto faces = trace_faces(rs);
      const auto check = [&](const std::string& face, int corner, const std::string& label) {
        const auto& f = face_by_hash(rs, faces, face);
        if (corner < 0 || corner >= f.length() || rs.name(f.corners[corner].vertex) != label)
          fail(ErrorKind::kPrecondition, "corner " + std::to_string(corner) + " of face " + face + " is not at " + label);
      };
      check(s.face_a, s.corner_a, L[0]);
      check(s.face_b, s.corner_b, L[1]);
      return add_edge_via_handle(rs, s.face_a, s.corner_a, s.face_b, s.corner_b);
    }
    case Kind::kK3: return construction_k3(rs, L[0], L[1], L[2], L[3]);
    case Kind::kContract: return contract_edge(rs, L[0], L[1], L.size() > 2 ? L[2] : std::string{});
    case Kind::kCrosscap: return add_crosscap_on_edge(rs, L[0], L[1]);
    case Kind::kVCrosscap: return vertex_crosscap(rs, L[0], L[1], L[2]);
    case Kind::kSubdivide: return subdivide_face(rs, s.face_a, L[0]);
    case Kind::kDelVertex: return delete_vertex(rs, L[0]);
    case Kind::kExpect:
      if (digest(rs) != s.face_a)
        fail(ErrorKind::kVerification, "digest mismatch: expected " + s.face_a + ", got " + digest(rs));
      return rs;
  }
  fail(ErrorKind::kInternal, "unhandled surgery step");
}

RotationSystem replay(const RotationSystem& rs, const SurgeryScript& script) {
  RotationSystem cur = rs;
  int n = 0;
  for (const auto& s : script.steps) {
    ++n;
    try {
      cur = apply_step(cur, s);
    } catch (const Error& e) {
      throw Error(e.kind(), "step " + std::to_string(n) + " (" + to_string(s) + "): " + e.what());
    }
  }
  return cur;
}

void ScriptRecorder::apply(SurgeryStep step) {
  rs_ = apply_step(rs_, step);
  script_.steps.push_back(std::move(step));
}

void ScriptRecorder::chord(const std::string& u, const std::string& v, const std::string& comment) {
  const auto faces = trace_faces(rs_);
  const Face* f = face_with(faces, rs_.id(u), rs_.id(v));
  if (!f) fail(ErrorKind::kPrecondition, "no face holds both " + u + " and " + v);
  SurgeryStep s{Kind::kChord, {u, v}, placement_for(rs_, *f, rs_.id(u), rs_.id(v)), {}, {}, 0, 0, comment};
  apply(std::move(s));
}

void ScriptRecorder::chord(const Placement& p, const std::string& comment) {
  const auto faces = trace_faces(rs_);
  const auto& f = face_by_hash(rs_, faces, p.face);
  const auto u = rs_.name(corner_at(f, p.first).vertex), v = rs_.name(corner_at(f, p.second).vertex);
  apply(SurgeryStep{Kind::kChord, {u, v}, p, {}, {}, 0, 0, comment});
}

void ScriptRecorder::remove(const std::string& u, const std::string& v, const std::string& comment) {
  apply(SurgeryStep{Kind::kDelete, {u, v}, {}, {}, {}, 0, 0, comment});
}

void ScriptRecorder::exchange(const std::string& u, const std::string& v, const Placement& p,
                              const std::string& comment) {
  apply(SurgeryStep{Kind::kExchange, {u, v}, p, {}, {}, 0, 0, comment});
}

void ScriptRecorder::flip(const std::string& a, const std::string& b, const std::string& c, const std::string& d,
                          const std::string& comment) {
  apply(SurgeryStep{Kind::kFlip, {a, b, c, d}, {}, {}, {}, 0, 0, comment});
}

void ScriptRecorder::flip_sequence(const std::vector<std::string>& pairs, const std::string& comment) {
  apply(SurgeryStep{Kind::kFlipSeq, pairs, {}, {}, {}, 0, 0, comment});
}

void ScriptRecorder::handle(const std::string& x, const std::string& fx, const std::string& y, const std::string& fy,
                            const std::string& comment) {
  const auto faces = trace_faces(rs_);
  const auto px = face_by_hash(rs_, faces, fx).positions_of(rs_.id(x));
  const auto py = face_by_hash(rs_, faces, fy).positions_of(rs_.id(y));
  require(!px.empty() && !py.empty(), ErrorKind::kPrecondition, "handle endpoints are not on the named faces");
  apply(SurgeryStep{Kind::kHandle, {x, y}, {}, fx, fy, px[0], py[0], comment});
}

void ScriptRecorder::k3(const std::string& v, const std::string& x, const std::string& y, const std::string& z,
                        const std::string& comment) {
  apply(SurgeryStep{Kind::kK3, {v, x, y, z}, {}, {}, {}, 0, 0, comment});
}

void ScriptRecorder::contract(const std::string& u, const std::string& v, const std::string& merged,
                              const std::string& comment) {
  std::vector<std::string> L{u, v};
  if (!merged.empty()) L.push_back(merged);
  apply(SurgeryStep{Kind::kContract, L, {}, {}, {}, 0, 0, comment});
}

void ScriptRecorder::crosscap(const std::string& u, const std::string& v, const std::string& comment) {
  apply(SurgeryStep{Kind::kCrosscap, {u, v}, {}, {}, {}, 0, 0, comment});
}

void ScriptRecorder::vcrosscap(const std::string& v, const std::string& first, const std::string& last,
                               const std::string& comment) {
  apply(SurgeryStep{Kind::kVCrosscap, {v, first, last}, {}, {}, {}, 0, 0, comment});
}

void ScriptRecorder::subdivide(const std::string& face, const std::string& w, const std::string& comment) {
  apply(SurgeryStep{Kind::kSubdivide, {w}, {}, face, {}, 0, 0, comment});
}

void ScriptRecorder::delete_vertex(const std::string& v, const std::string& comment) {
  apply(SurgeryStep{Kind::kDelVertex, {v}, {}, {}, {}, 0, 0, comment});
}

void ScriptRecorder::expect_digest() { apply(SurgeryStep{Kind::kExpect, {}, {}, digest(rs_), {}, 0, 0, {}}); }

}  // namespace rotsys
