#include "rotsys/io.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

namespace rotsys {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::string> split_tokens(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

RotationSystem parse_rot(std::string_view text) {
  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
  std::vector<std::pair<std::string, std::string>> negatives;
  std::optional<bool> header;
  int lineno = 0;
  for (const auto& line : split_lines(text)) {
    ++lineno;
    auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (tokens[0] == "orientable:") {
      if (tokens.size() != 2 || (tokens[1] != "true" && tokens[1] != "false"))
        fail(ErrorKind::kMalformed, where + "expected 'orientable: true|false'");
      header = tokens[1] == "true";
    } else if (tokens[0] == "sig") {
      if (tokens.size() != 4 || (tokens[3] != "-1" && tokens[3] != "+1" && tokens[3] != "1"))
        fail(ErrorKind::kMalformed, where + "expected 'sig A B -1'");
      if (tokens[3] == "-1") negatives.emplace_back(normalize_label(tokens[1]), normalize_label(tokens[2]));
    } else if (tokens[0].size() > 1 && tokens[0].back() == '.') {
      std::vector<std::string> nbrs;
      for (std::size_t i = 1; i < tokens.size(); ++i) nbrs.push_back(normalize_label(tokens[i]));
      rows.emplace_back(normalize_label(tokens[0].substr(0, tokens[0].size() - 1)), std::move(nbrs));
    } else {
      fail(ErrorKind::kMalformed, where + "unrecognized line '" + line + "'");
    }
  }
  if (!header) fail(ErrorKind::kMalformed, "missing 'orientable:' header");
  auto rs = RotationSystem::from_rows(rows);
  for (const auto& [a, b] : negatives) {
    const auto u = rs.find(a), v = rs.find(b);
    if (!u || !v || !rs.adjacent(*u, *v)) fail(ErrorKind::kMalformed, "sig line names a missing edge " + a + " " + b);
    rs.set_signature(*u, *v, -1);
  }
  if (is_connected(rs) && is_orientable(rs) != *header)
    fail(ErrorKind::kMalformed, std::string("header says orientable: ") + (*header ? "true" : "false") +
                                    " but the signatures say otherwise");
  return rs;
}

std::string to_rot_text(const RotationSystem& rs) {
  std::string out = std::string("orientable: ") + (is_orientable(rs) ? "true" : "false") + "\n";
  for (int v = 0; v < rs.vertex_count(); ++v) {
    out += rs.name(v) + ".";
    for (int u : rs.rotation(v)) out += " " + rs.name(u);
    out += "\n";
  }
  std::vector<Edge> neg;
  for (auto [a, b] : rs.negative_edges()) neg.push_back(make_edge(rs.name(a), rs.name(b)));
  std::sort(neg.begin(), neg.end(), [](const Edge& x, const Edge& y) {
    if (x.first != y.first) return label_less(x.first, y.first);
    return label_less(x.second, y.second);
  });
  for (const auto& [a, b] : neg) out += "sig " + a + " " + b + " -1\n";
  return out;
}

std::string digest(const RotationSystem& rs) { return fnv1a_hex(to_rot_text(rs)); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kFixtureMissing, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kMalformed, "cannot write " + path);
  out << text;
}

RotationSystem read_rot_file(const std::string& path) { return parse_rot(read_text_file(path)); }

std::vector<ManifestEntry> read_manifest(const std::string& dir) {
  std::vector<ManifestEntry> out;
  for (const auto& line : split_lines(read_text_file(dir + "/MANIFEST"))) {
    const auto t = split_tokens(line);
    if (t.empty()) continue;
    if (t.size() < 3) fail(ErrorKind::kMalformed, "manifest line needs name, checksum and citation: " + line);
    ManifestEntry e{t[0], t[1], t[2]};
    for (std::size_t i = 3; i < t.size(); ++i) e.citation += " " + t[i];
    out.push_back(e);
  }
  return out;
}

std::vector<std::string> check_fixture_store(const std::string& dir) {
  std::vector<std::string> problems;
  for (const auto& e : read_manifest(dir)) {
    try {
      const auto sum = fnv1a_hex(read_text_file(dir + "/" + e.name));
      if (sum != e.checksum) problems.push_back(e.name + ": checksum " + sum + ", manifest says " + e.checksum);
    } catch (const Error&) {
      problems.push_back(e.name + ": missing");
    }
  }
  return problems;
}

}  // namespace rotsys
