#pragma once

// Current graphs over cyclic groups Z_m and the rotation systems they
// generate.
//
// ".cur" text format:
//
//   group 18
//   vtx V0 deg 3 cw rotation: A0+ A3- A7+
//   arc A0 V0 V1 current 11
//   vortex x at V4 type T1 corner 0
//
// Rotation entries name an arc end: `+` is the tail (where the arc leaves),
// `-` the head. `cw` vertices use the listed order, `ccw` vertices the
// reverse. Vortex corner k is the corner that follows the k-th end of the
// effective (orientation-applied) rotation.

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rotsys/core.hpp"

namespace rotsys {

enum class VortexType { kT1, kT2, kT3 };
std::string to_string(VortexType t);
VortexType parse_vortex_type(std::string_view s);

struct LogToken {
  bool letter = false;
  int value = 0;      // group element when !letter
  std::string name;   // vortex letter when letter

  bool operator==(const LogToken&) const = default;
};

/// Cyclic sequence of currents and vortex letters read along the one face
/// of a current graph.
using Log = std::vector<LogToken>;

Log parse_log(std::string_view text, int modulus);
std::string format_log(const Log& log);
bool cyclic_equal(const Log& a, const Log& b);

struct VortexInfo {
  VortexType type = VortexType::kT1;
  std::string vertex;  // letters sharing a vertex form one T3 vortex
};
using VortexTable = std::map<std::string, VortexInfo>;

struct CurrentGraph {
  struct End {
    int arc = 0;
    bool head = false;
    bool operator==(const End&) const = default;
  };
  struct Vertex {
    std::string name;
    bool clockwise = true;
    std::vector<End> rotation;
  };
  struct Arc {
    std::string name;
    int from = 0;
    int to = 0;
    int current = 0;
  };
  struct Vortex {
    std::string letter;
    int vertex = 0;
    VortexType type = VortexType::kT1;
    int corner = 0;
  };

  int modulus = 0;
  std::vector<Vertex> vertices;
  std::vector<Arc> arcs;
  std::vector<Vortex> vortices;

  int vertex_id(const std::string& name) const;
  int arc_id(const std::string& name) const;
  VortexTable vortex_table() const;
  /// Reverses arc `a` and negates its current.
  void reverse_arc(int a);
};

CurrentGraph parse_cur(std::string_view text);
std::string to_cur_text(const CurrentGraph& cg);

struct ValidityReport {
  // C1..C6 in order; index 1 = one face
  bool degrees = false;
  bool one_face = false;
  bool currents_once = false;
  bool kcl = false;
  bool order_two_pendant = false;
  bool vortex_types = false;
  int face_count = 0;
  std::vector<std::string> failures;

  bool ok() const { return degrees && one_face && currents_once && kcl && order_two_pendant && vortex_types; }
};

ValidityReport validate_current_graph(const CurrentGraph& cg);
int face_count(const CurrentGraph& cg);

/// Traces the single face; consecutive traversals of the pendant arc that
/// carries the order-2 element are recorded once. Throws kPrecondition for
/// a current graph of index other than 1.
Log trace_log(const CurrentGraph& cg);

/// Rebuilds an index-1 current graph (all vertices clockwise) whose face
/// log is `log`. Letters sharing a T3 vortex are identified from the log's
/// own corner structure.
CurrentGraph current_graph_from_log(const Log& log, int modulus,
                                    const std::map<std::string, VortexType>& letter_types);

/// Rows as labels; letter rows may be absent until manufactured.
using RowTable = std::vector<std::pair<std::string, std::vector<std::string>>>;

/// Row k of the additive rule.
std::vector<std::string> derive_row(const Log& log, int modulus, const VortexTable& vortices, int k);
/// All numbered rows 0..m-1.
RowTable derive_rows(const Log& log, int modulus, const VortexTable& vortices);
/// Completes a row table with one row per letter, forced by Rule R*.
RotationSystem manufacture_vortex_rows(const RowTable& numbered);
/// derive_rows followed by manufacture_vortex_rows.
RotationSystem derive_rotation_system(const Log& log, int modulus, const VortexTable& vortices);

/// Three seed rows for residues 0, 1, 2 (mod 3) over Z_m.
struct Index3Seed {
  int modulus = 0;
  std::map<std::string, VortexType> letters;  // T1 or T2
  std::array<std::vector<std::string>, 3> rows;
};

Index3Seed parse_seed(std::string_view text);
std::string to_seed_text(const Index3Seed& seed);
RowTable derive_index3_rows(const Index3Seed& seed);
RotationSystem derive_index3(const Index3Seed& seed);

}  // namespace rotsys
