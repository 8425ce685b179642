#pragma once

// Local modifications of signed rotation systems. Every operation returns a
// fresh system; faces are re-traced rather than patched.

#include <string>
#include <string_view>
#include <vector>

#include "rotsys/core.hpp"

namespace rotsys {

/// A face (by hash) plus corner positions in its canonical corner cycle.
struct Placement {
  std::string face;
  int first = 0;
  int second = 0;
  bool operator==(const Placement&) const = default;
};

std::string to_string(const Placement& p);  // HASH@i,j
Placement parse_placement(std::string_view text);

/// Face with the given hash; throws kPrecondition when absent.
const Face& face_by_hash(const RotationSystem& rs, const FaceSet& faces, const std::string& hash);
/// Indices of the faces holding each side of edge (u,v); two entries, equal
/// when the edge is twice on one face.
std::vector<int> faces_on_edge(const FaceSet& faces, int u, int v);
/// Placement joining the k-th occurrences of u and v on `face`.
Placement placement_for(const RotationSystem& rs, const Face& face, int u, int v, int ku = 0, int kv = 0);
/// First face (in trace order) where u and v both occur and are nonadjacent
/// along the boundary, or nullptr.
const Face* face_with(const FaceSet& faces, int u, int v);

/// Inserts edge (a.vertex, b.vertex) into the corner gaps of `a` and `b`.
/// The signature is chosen so that the local orientations agree.
void insert_edge(RotationSystem& rs, const Corner& a, const Corner& b);

RotationSystem add_chord(const RotationSystem& rs, const Placement& p);
RotationSystem add_chord(const RotationSystem& rs, const Placement& p, const std::string& u, const std::string& v);

struct DeleteResult {
  RotationSystem rs;
  bool split = false;     // the face holding both sides split in two
  bool one_face = false;  // both sides were on one face
};
DeleteResult delete_edge(const RotationSystem& rs, const std::string& u, const std::string& v);

/// Moves edge (u,v) into the target face as a chord.
RotationSystem chord_exchange(const RotationSystem& rs, const std::string& u, const std::string& v, const Placement& p);

/// -(a,b)+(c,d): c and d must be the neighbors of b in the rotation at a.
RotationSystem edge_flip(const RotationSystem& rs, const std::string& a, const std::string& b, const std::string& c,
                         const std::string& d);
/// -(p0,p1) +- (p2,p3) ... +(p_{2k},p_{2k+1}), applied as the flips
/// -(p_{2k-2},p_{2k-1})+(p_{2k},p_{2k+1}) first, down to -(p0,p1)+(p2,p3).
RotationSystem flip_sequence(const RotationSystem& rs, const std::vector<std::string>& pairs);

/// Joins corner `ix` of face `fx` and corner `iy` of face `fy` through a
/// handle; the two faces merge.
RotationSystem add_edge_via_handle(const RotationSystem& rs, const std::string& fx, int ix, const std::string& fy,
                                   int iy);
/// Same, picking the first corners of x and y on the two given faces.
RotationSystem add_edge_via_handle(const RotationSystem& rs, const std::string& x, const std::string& fx,
                                   const std::string& y, const std::string& fy);

/// Rotation x A y B z C at v becomes A C B, and vx, vy, vz are deleted.
RotationSystem construction_k3(const RotationSystem& rs, const std::string& v, const std::string& x,
                               const std::string& y, const std::string& z);

/// Merges v into u. The merged vertex is named `merged` (u's label if empty).
RotationSystem contract_edge(const RotationSystem& rs, const std::string& u, const std::string& v,
                             const std::string& merged = {});

/// Adds vertex w inside a simple face, joined to every boundary corner.
RotationSystem subdivide_face(const RotationSystem& rs, const std::string& face, const std::string& w);
RotationSystem delete_vertex(const RotationSystem& rs, const std::string& v);

/// Toggles the signature of (u,v); its two distinct faces merge.
RotationSystem add_crosscap_on_edge(const RotationSystem& rs, const std::string& u, const std::string& v);
/// Splits the rotation at v as A B where B runs from `first` to `last`,
/// reverses B and toggles its edges. The faces at the two cut gaps merge.
RotationSystem vertex_crosscap(const RotationSystem& rs, const std::string& v, const std::string& first,
                               const std::string& last);

// ---------------------------------------------------------------------------
// Scripts

struct SurgeryStep {
  enum class Kind {
    kChord,      // chord u v in P
    kDelete,     // delete u v
    kExchange,   // exchange u v into P
    kFlip,       // flip - a b + c d
    kFlipSeq,    // flipseq p0 p1 ... (sequence notation)
    kHandle,     // handle x@F:i y@G:j
    kK3,         // k3 v x y z
    kContract,   // contract u v [as w]
    kCrosscap,   // crosscap u v
    kVCrosscap,  // vcrosscap v first last
    kSubdivide,  // subdivide F w
    kDelVertex,  // delvtx v
    kExpect,     // expect DIGEST
  };
  Kind kind = Kind::kDelete;
  std::vector<std::string> labels;
  Placement placement;                // chord, exchange
  std::string face_a, face_b;         // handle, subdivide
  int corner_a = 0, corner_b = 0;     // handle
  std::string comment;                // free text after "#", kept on output

  bool operator==(const SurgeryStep&) const = default;
};

struct SurgeryScript {
  std::vector<SurgeryStep> steps;
  bool operator==(const SurgeryScript&) const = default;
};

std::string to_string(const SurgeryStep& s);
SurgeryStep parse_step(std::string_view line);
std::string to_script_text(const SurgeryScript& script);
SurgeryScript parse_script(std::string_view text);

RotationSystem apply_step(const RotationSystem& rs, const SurgeryStep& step);
RotationSystem replay(const RotationSystem& rs, const SurgeryScript& script);

/// Records steps while applying them, so recipes produce replayable logs.
class ScriptRecorder {
 public:
  explicit ScriptRecorder(RotationSystem rs) : rs_(std::move(rs)) {}

  const RotationSystem& current() const noexcept { return rs_; }
  const SurgeryScript& script() const noexcept { return script_; }

  void apply(SurgeryStep step);
  void chord(const std::string& u, const std::string& v, const std::string& comment = {});
  void chord(const Placement& p, const std::string& comment = {});
  void remove(const std::string& u, const std::string& v, const std::string& comment = {});
  void exchange(const std::string& u, const std::string& v, const Placement& p, const std::string& comment = {});
  void flip(const std::string& a, const std::string& b, const std::string& c, const std::string& d,
            const std::string& comment = {});
  void flip_sequence(const std::vector<std::string>& pairs, const std::string& comment = {});
  void handle(const std::string& x, const std::string& fx, const std::string& y, const std::string& fy,
              const std::string& comment = {});
  void k3(const std::string& v, const std::string& x, const std::string& y, const std::string& z,
          const std::string& comment = {});
  void contract(const std::string& u, const std::string& v, const std::string& merged = {},
                const std::string& comment = {});
  void crosscap(const std::string& u, const std::string& v, const std::string& comment = {});
  void vcrosscap(const std::string& v, const std::string& first, const std::string& last,
                 const std::string& comment = {});
  void subdivide(const std::string& face, const std::string& w, const std::string& comment = {});
  void delete_vertex(const std::string& v, const std::string& comment = {});
  void expect_digest();

 private:
  RotationSystem rs_;
  SurgeryScript script_;
};

}  // namespace rotsys
