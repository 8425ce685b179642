#pragma once

// Case-by-case constructions built from surgery primitives. Every recipe
// returns the final system together with a script that replays it from the
// input, and re-verifies the result by tracing before returning.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rotsys/core.hpp"
#include "rotsys/surgery.hpp"

namespace rotsys {

struct RecipeResult {
  RotationSystem input;
  RotationSystem rs;
  SurgeryScript script;
};

// ---------------------------------------------------------------------------
// Placement search

using Move = std::vector<SurgeryStep>;
using MoveGenerator = std::function<std::vector<Move>(const RotationSystem&)>;
using Goal = std::function<bool(const RotationSystem&)>;

/// Every way of adding edge (u,v) as a chord of a face of length >= 4.
std::vector<Move> chord_moves(const RotationSystem& rs, const std::string& u, const std::string& v);
/// Delete (u,v), then every chord placement of it in the resulting system.
std::vector<Move> exchange_moves(const RotationSystem& rs, const std::string& u, const std::string& v);

/// Depth-first search over one move per stage. Moves that throw are
/// skipped. `stage_ok[i]` (optional) prunes after stage i. Returns the first
/// recorder whose final system satisfies `goal`.
std::optional<ScriptRecorder> search_moves(const ScriptRecorder& start, const std::vector<MoveGenerator>& stages,
                                           const Goal& goal, const std::vector<Goal>& stage_ok = {},
                                           long budget = 2'000'000);

/// Goal: orientability matches, genus equals `genus`, type equals `type`.
Goal type_goal(bool orientable, int genus, const EmbeddingType& type);

/// Throws kVerification unless rs is K_n with the given surface and type.
void verify_complete(const RotationSystem& rs, bool orientable, int genus, const EmbeddingType& type);

// ---------------------------------------------------------------------------
// Orientable recipes

/// Triangular K_n - K_2 -> K_n at the same genus plus one, any of the seven
/// types with sum (a_i - 3) = 5.
RecipeResult case2_5_types(const RotationSystem& knk2, const EmbeddingType& type);

/// Type (5) -> (4,4); type (6) -> (5,4) or (4,4,4). Genus unchanged.
RecipeResult downgrade_type(const RotationSystem& rs, const EmbeddingType& type);
RecipeResult downgrade_type(const RecipeResult& prior, const EmbeddingType& type);

/// Triangular split-complete G_n (letters x0, x1) -> type (6) K_n.
RecipeResult split_complete_type6(const RotationSystem& g);
/// Split-complete G_n with both letters deleted -> K_{n-1} of type (4,4).
RecipeResult split_complete_drop_letters(const RotationSystem& g);

/// Triangular K_n - P_3 -> type (6) K_n through one handle.
RecipeResult p3_type6(const RotationSystem& knp3);

/// Flip lists turning the triangular K30 - K3 into K30 minus B, C, D or E.
std::vector<std::vector<std::string>> k30_flip_lists(char variant);
RecipeResult k30_variant(const RotationSystem& k30k3, char variant);

/// Triangular K_n - K_3 (letters x,y,z) -> type (5,4) or (4,4,4) at I(n).
RecipeResult k3_min_genus(const RotationSystem& knk3, const EmbeddingType& type);

/// Index-3 Case 8 rows for s (vertices 0..12s+5, x, y0, y1) -> type (5).
RecipeResult case8(const RotationSystem& g, int s);

/// Checks the required partial rows of the Case 10 input (group Z_{12s+7});
/// throws kPrecondition naming the first failed check.
void check_case10_rows(const RotationSystem& rs, int s);
RecipeResult case10(const RotationSystem& knk3, int s);
/// Same for Case 1 (group Z_{12s-2}).
void check_case1_rows(const RotationSystem& rs, int s);
RecipeResult case1(const RotationSystem& knk3, int s);

/// Named vertices of the Case 11 finishing step: 0, a, b, c, x, y and the
/// numbered vertices 12s+5, 12s+4, 6s+5, 12s+2, 2, 4.
struct Case11Labels {
  std::string zero = "0", a = "a", b = "b", c = "c", x = "x", y = "y";
  std::string r, p, q, t, two = "2", four = "4";
  static Case11Labels for_s(int s);
};
void check_case11_input(const RotationSystem& rs, const Case11Labels& l);
RecipeResult case11_finish(const RotationSystem& rs, const Case11Labels& l);

// ---------------------------------------------------------------------------
// Nonorientable and maximum genus

/// Triangular K_n - K_2 -> nonorientable K_n of type (5) or (4,4).
RecipeResult nonorientable_knk2(const RotationSystem& knk2, const EmbeddingType& type);
/// Case 8 rows (x, y0, y1) -> nonorientable K_{12s+8} of type (5) or (4,4).
RecipeResult nonorientable_case8(const RotationSystem& g, const EmbeddingType& type);
/// Torus K7 -> N3 embeddings of type (6), (5,4) or (4,4,4).
RecipeResult k7_nonorientable(const RotationSystem& torus_k7, const EmbeddingType& type);

/// One-face (n = 1,2 mod 4) or two-face (n = 0,3 mod 4) embedding of K_n on
/// 1..n; in the two-face case one face is [2,1,3].
RecipeResult xuong_max_genus(int n);
/// Crosscaps on edges of the nontriangular face until nonorientable genus k.
RecipeResult crosscap_interpolation(const RotationSystem& rs, int k);
/// All intermediate systems from the current genus up to k.
std::vector<RotationSystem> crosscap_ladder(const RotationSystem& rs, int k);

// ---------------------------------------------------------------------------
// Dispatcher and certificates

/// Every system of K_5 with the given type at genus 1; kRefusal if none.
RotationSystem k5_example(const EmbeddingType& type);

struct ConstructRequest {
  int n = 0;
  EmbeddingType type;
  bool nonorientable = false;
  std::string fixture_dir;  // empty: compiled-in default
};

struct Certificate {
  int n = 0;
  EmbeddingType type;
  SurfaceClass surface;
  std::string source;  // where the input came from
  RotationSystem input;
  RotationSystem rs;
  SurgeryScript script;
};

/// kFixtureMissing when no input is available, kRefusal for proven
/// nonexistence, kPrecondition for a type outside the residue class.
Certificate construct(const ConstructRequest& req);

std::string certificate_text(const Certificate& c);
/// Digest line: V, E, F, surface, distribution and the system digest.
std::string verification_digest(const RotationSystem& rs);

}  // namespace rotsys
