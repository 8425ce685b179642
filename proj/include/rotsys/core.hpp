#pragma once

// Signed rotation systems, face tracing, Euler genus and face-distribution
// typing.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rotsys {

// Error kinds map one-to-one onto CLI exit codes.
enum class ErrorKind {
  kVerification = 1,
  kMalformed = 2,
  kFixtureMissing = 3,
  kRefusal = 4,
  kPrecondition = 5,
  kInternal = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

/// Vertex labels are either nonnegative integers ("17") or letter tags with
/// an optional subscript ("x", "y0", "y_1"). Subscript underscores are
/// dropped on normalization.
std::string normalize_label(std::string_view raw);
bool is_numeric_label(std::string_view label);
/// Integers first (numeric order), then letter tags (lexicographic).
bool label_less(const std::string& a, const std::string& b);

struct LabelLess {
  bool operator()(const std::string& a, const std::string& b) const { return label_less(a, b); }
};

using Edge = std::pair<std::string, std::string>;
Edge make_edge(const std::string& a, const std::string& b);  // label-ordered

/// Per-vertex cyclic neighbor orders plus per-edge signatures. Vertices are
/// addressed by dense integer ids; ids are stable until a vertex is removed.
class RotationSystem {
 public:
  RotationSystem() = default;

  /// Builds from rows of labels; the symmetric-adjacency invariant is
  /// checked. Signatures default to +1.
  static RotationSystem from_rows(const std::vector<std::pair<std::string, std::vector<std::string>>>& rows);

  int vertex_count() const noexcept { return static_cast<int>(names_.size()); }
  int edge_count() const noexcept;

  const std::string& name(int v) const { return names_.at(v); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<int> find(const std::string& label) const;
  int id(const std::string& label) const;  // throws kPrecondition when absent

  const std::vector<int>& rotation(int v) const { return rot_.at(v); }
  std::vector<std::string> rotation_labels(int v) const;
  int degree(int v) const { return static_cast<int>(rot_.at(v).size()); }

  bool adjacent(int u, int v) const;
  /// Position of `u` in the rotation at `v`, or -1.
  int position(int v, int u) const;
  int succ(int v, int u) const;  // neighbor following u at v
  int pred(int v, int u) const;

  int signature(int u, int v) const;
  void set_signature(int u, int v, int sign);
  bool all_positive() const noexcept { return negative_.empty(); }
  const std::set<std::pair<int, int>>& negative_edges() const noexcept { return negative_; }

  int add_vertex(const std::string& label);
  void set_rotation(int v, std::vector<int> order);
  /// Inserts `u` into the rotation at `v` directly after neighbor `after`
  /// (or as the only entry when the rotation is empty).
  void insert_after(int v, int after, int u);
  void remove_edge(int u, int v);
  void remove_vertex(int v);
  /// Reverses the rotation at v and toggles every incident signature; the
  /// embedding is unchanged.
  void switch_vertex(int v);

  /// Edge list with u < v by id.
  std::vector<std::pair<int, int>> edges() const;
  std::vector<Edge> labeled_edges() const;

  /// Throws kMalformed on asymmetric adjacency, loops or repeated neighbors.
  void validate() const;

  bool operator==(const RotationSystem& other) const;

 private:
  static std::pair<int, int> key(int u, int v) { return u < v ? std::pair{u, v} : std::pair{v, u}; }

  std::vector<std::string> names_;
  std::map<std::string, int> index_;
  std::vector<std::vector<int>> rot_;
  std::set<std::pair<int, int>> negative_;
};

/// A corner of a traced face: the walk arrives at `vertex` from `prev`,
/// leaves towards `next`, and `flag` is the local orientation (+1 follows
/// the rotation, -1 runs against it).
struct Corner {
  int vertex = -1;
  int prev = -1;
  int next = -1;
  int flag = 1;
  bool operator==(const Corner&) const = default;
};

struct Face {
  std::vector<Corner> corners;  // canonical rotation: least corner first

  int length() const noexcept { return static_cast<int>(corners.size()); }
  std::vector<int> vertices() const;
  std::vector<std::string> labels(const RotationSystem& rs) const;
  /// Stable hex identifier derived from the canonical labeled corner cycle.
  std::string hash(const RotationSystem& rs) const;
  bool contains_vertex(int v) const;
  /// Occurrences of v in corner order.
  std::vector<int> positions_of(int v) const;
};

using FaceSet = std::vector<Face>;

/// Traces every face of a connected signed rotation system. Start states are
/// scanned in (vertex id, rotation index) order, so the output is
/// deterministic; each face is then rotated to its least labeled corner.
FaceSet trace_faces(const RotationSystem& rs);

bool is_connected(const RotationSystem& rs);

struct SurfaceClass {
  bool orientable = true;
  int genus = 0;  // handles if orientable, crosscaps otherwise
  int euler_characteristic = 2;
  bool operator==(const SurfaceClass&) const = default;
};

/// Orientability via spanning-tree sign normalization (BFS from the least
/// label) followed by a scan of non-tree edges.
bool is_orientable(const RotationSystem& rs);
SurfaceClass euler_surface(const RotationSystem& rs);
SurfaceClass euler_surface(const RotationSystem& rs, const FaceSet& faces);
std::string describe(const SurfaceClass& s);

using FaceDistribution = std::map<int, int>;  // length -> count
using EmbeddingType = std::vector<int>;       // nonincreasing, entries > 3

FaceDistribution face_distribution(const FaceSet& faces);
EmbeddingType embedding_type(const FaceSet& faces);
std::string format_type(const EmbeddingType& t);
/// Accepts "5", "(5,4)", "5,4", "()" and "" (triangular).
EmbeddingType parse_type(std::string_view text);

bool check_rule_r_star(const RotationSystem& rs);
bool check_rule_r(const RotationSystem& rs);

struct GenusBounds {
  int orientable_genus = 0;     // I(n)
  int nonorientable_genus = 0;  // with the K7 exception
  int extra_edges = 0;          // t(n)
  int max_genus_faces = 0;      // 1 or 2
};
GenusBounds genus_bounds(int n);

enum class FaceShape {
  kSimple,
  kOppositeRepeat,  // 6-gon [a,b,x,c,d,x]
  kOther,
};
bool is_simple_face(const Face& f);
/// Throws kPrecondition when the embedding has a vertex of degree < 2.
FaceShape repeated_vertex_structure(const RotationSystem& rs, const Face& f);

bool is_minimum_by_type(const EmbeddingType& t);
bool is_minimum_by_type(const RotationSystem& rs);

/// Stable digest of the canonical text serialization.
std::string digest(const RotationSystem& rs);
std::string fnv1a_hex(std::string_view bytes);

/// Relabels every vertex through `mapping` (labels absent from it are kept).
RotationSystem relabel(const RotationSystem& rs, const std::map<std::string, std::string>& mapping);
/// Reverses every rotation, keeping signatures.
RotationSystem reflect(const RotationSystem& rs);

/// Complete-graph check by label set.
bool is_complete(const RotationSystem& rs);
/// Pairs of distinct vertices that are not adjacent, label-ordered.
std::vector<Edge> missing_edges(const RotationSystem& rs);

}  // namespace rotsys
