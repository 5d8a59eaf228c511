#pragma once

// Text format:
//
//   # comments run from '#' to end of line; blank lines are ignored
//   n m
//   u v        (m lines, one directed edge u->v each)
//
// serialize() writes the header and the edges in ascending (u, v) order with
// no comments, so serialize(parse(serialize(G))) is byte-identical.

#include <algorithm>
#include <charconv>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "dicycle/digraph.hpp"

namespace dicycle {

inline std::string serialize(const Digraph& g) {
  std::string out = std::to_string(g.order()) + " " + std::to_string(g.edge_count()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.from);
    out += ' ';
    out += std::to_string(e.to);
    out += '\n';
  }
  return out;
}

namespace detail {

// Splits a comment-stripped line into unsigned integer fields.
inline bool parse_fields(std::string_view line, std::vector<std::uint64_t>& fields) {
  fields.clear();
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
    if (ec != std::errc{}) return false;
    const std::size_t next = static_cast<std::size_t>(ptr - line.data());
    if (next < line.size() && line[next] != ' ' && line[next] != '\t' && line[next] != '\r') {
      return false;
    }
    fields.push_back(value);
    i = next;
  }
  return true;
}

}  // namespace detail

inline Digraph parse_digraph(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t n = 0, m = 0;
  std::vector<Edge> edges;
  std::vector<std::uint64_t> fields;
  std::unordered_set<std::uint64_t> seen;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!detail::parse_fields(line, fields)) throw ParseError(line_no, "expected non-negative integers");
    if (fields.empty()) continue;
    if (fields.size() != 2) throw ParseError(line_no, "expected exactly two integers");
    if (!have_header) {
      n = fields[0];
      m = fields[1];
      if (n > (std::uint64_t{1} << 31)) throw ParseError(line_no, "malformed header: vertex count too large");
      if (n > 0 && m > n * (n - 1)) throw ParseError(line_no, "malformed header: more edges than ordered pairs");
      if (n == 0 && m != 0) throw ParseError(line_no, "malformed header: edges in an empty graph");
      have_header = true;
      edges.reserve(m);
      continue;
    }
    const auto u = fields[0], v = fields[1];
    if (u >= n || v >= n) {
      throw ParseError(line_no, "endpoint out of range in edge " + std::to_string(u) + " " + std::to_string(v));
    }
    if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
    if (edges.size() == m) throw ParseError(line_no, "more edge lines than the header declares");
    if (!seen.insert(u * n + v).second) {
      throw ParseError(line_no, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (!have_header) throw ParseError(line_no + 1, "malformed header: missing \"n m\" line");
  if (edges.size() != m) {
    throw ParseError(line_no + 1, "header declares " + std::to_string(m) + " edges but " +
                                      std::to_string(edges.size()) + " were given");
  }
  return Digraph(static_cast<std::size_t>(n), std::move(edges));
}

inline Digraph parse_digraph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_digraph(in);
}

}  // namespace dicycle
