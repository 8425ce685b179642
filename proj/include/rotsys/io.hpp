#pragma once

// ".rot" rotation-system text format:
//
//   # comment
//   orientable: true
//   0. 1 2 3
//   1. 0 3 2
//   sig 0 1 -1
//
// Rows list the clockwise rotation at each vertex. `sig` lines mark negative
// signatures. Serialization is canonical: header, rows in vertex order, then
// sig lines in label order.

#include <string>
#include <string_view>
#include <vector>

#include "rotsys/core.hpp"

namespace rotsys {

RotationSystem parse_rot(std::string_view text);
std::string to_rot_text(const RotationSystem& rs);

RotationSystem read_rot_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/// Whitespace tokenizer that strips `#` comments.
std::vector<std::string> split_tokens(std::string_view line);
std::vector<std::string> split_lines(std::string_view text);

/// One line of fixtures/MANIFEST: `name checksum citation...`.
struct ManifestEntry {
  std::string name;
  std::string checksum;  // fnv1a_hex of the file bytes
  std::string citation;
};
std::vector<ManifestEntry> read_manifest(const std::string& dir);
/// Problems found: missing files, checksum mismatches, empty citations.
std::vector<std::string> check_fixture_store(const std::string& dir);

}  // namespace rotsys
