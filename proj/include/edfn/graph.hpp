#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edfn/error.hpp"

namespace edfn {

/// Plain undirected loopless graph on vertices 0..n-1, stored as a dense matrix.
class SimpleGraph {
 public:
  explicit SimpleGraph(std::size_t n) : n_(n), adj_(n * n, 0) {
    if (n == 0) throw DomainError("a graph needs at least one vertex");
  }

  SimpleGraph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) : SimpleGraph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  std::size_t size() const noexcept { return n_; }

  bool adjacent(std::size_t u, std::size_t v) const { return adj_[u * n_ + v] != 0; }

  void add_edge(std::size_t u, std::size_t v) { set_edge(u, v, true); }

  void set_edge(std::size_t u, std::size_t v, bool on) {
    if (u >= n_ || v >= n_) throw DomainError("edge endpoint out of range");
    if (u == v) throw DomainError("self-loops are not allowed");
    adj_[u * n_ + v] = adj_[v * n_ + u] = on ? 1 : 0;
  }

  std::size_t degree(std::size_t v) const {
    std::size_t d = 0;
    for (std::size_t u = 0; u < n_; ++u) d += adj_[v * n_ + u];
    return d;
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (std::size_t v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
  }

  std::size_t edge_count() const {
    std::size_t e = 0;
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v) e += adj_[u * n_ + v];
    return e;
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v)
        if (adjacent(u, v)) out.emplace_back(u, v);
    return out;
  }

  SimpleGraph complement() const {
    SimpleGraph c(n_);
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v) c.set_edge(u, v, !adjacent(u, v));
    return c;
  }

  SimpleGraph induced(const std::vector<std::size_t>& keep) const {
    SimpleGraph h(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (std::size_t j = i + 1; j < keep.size(); ++j) h.set_edge(i, j, adjacent(keep[i], keep[j]));
    return h;
  }

  bool is_complete() const { return edge_count() == n_ * (n_ - 1) / 2; }
  bool is_edgeless() const { return edge_count() == 0; }

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> adj_;
};

// ---- generators ----------------------------------------------------------

inline SimpleGraph complete_graph(std::size_t n) {
  SimpleGraph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline SimpleGraph empty_graph(std::size_t n) { return SimpleGraph(n); }

inline SimpleGraph cycle_graph(std::size_t n) {
  if (n < 3) throw DomainError("cycles need at least 3 vertices");
  SimpleGraph g(n);
  for (std::size_t v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

inline SimpleGraph path_graph(std::size_t n) {
  SimpleGraph g(n);
  for (std::size_t v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

/// K_{s,t} with parts {0..s-1} and {s..s+t-1}.
inline SimpleGraph complete_bipartite(std::size_t s, std::size_t t) {
  SimpleGraph g(s + t);
  for (std::size_t u = 0; u < s; ++u)
    for (std::size_t v = 0; v < t; ++v) g.add_edge(u, s + v);
  return g;
}

/// K_{1,k}; vertex 0 is the centre.
inline SimpleGraph star_graph(std::size_t k) { return complete_bipartite(1, k); }

// ---- chromatic invariants ------------------------------------------------

inline constexpr std::size_t kChromaticCap = 12;

namespace detail {

inline bool colorable(const SimpleGraph& g, const std::vector<std::size_t>& order, std::vector<int>& color,
                      std::size_t idx, int k) {
  if (idx == order.size()) return true;
  std::size_t v = order[idx];
  int used_max = -1;
  for (std::size_t j = 0; j < idx; ++j) used_max = std::max(used_max, color[order[j]]);
  // Symmetry breaking: a fresh colour is only tried once.
  int limit = std::min(k - 1, used_max + 1);
  for (int c = 0; c <= limit; ++c) {
    bool ok = true;
    for (std::size_t j = 0; j < idx && ok; ++j)
      if (color[order[j]] == c && g.adjacent(v, order[j])) ok = false;
    if (!ok) continue;
    color[v] = c;
    if (colorable(g, order, color, idx + 1, k)) return true;
  }
  color[v] = -1;
  return false;
}

inline std::size_t clique_number_rec(const SimpleGraph& g, std::vector<std::size_t>& cand, std::size_t depth) {
  std::size_t best = depth;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (depth + (cand.size() - i) <= best) break;
    std::vector<std::size_t> next;
    for (std::size_t j = i + 1; j < cand.size(); ++j)
      if (g.adjacent(cand[i], cand[j])) next.push_back(cand[j]);
    best = std::max(best, clique_number_rec(g, next, depth + 1));
  }
  return best;
}

}  // namespace detail

inline std::size_t clique_number(const SimpleGraph& g) {
  std::vector<std::size_t> all(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) all[v] = v;
  return detail::clique_number_rec(g, all, 0);
}

/// Exact chromatic number by backtracking, starting from the clique lower bound.
inline std::size_t chromatic_number(const SimpleGraph& g, std::size_t cap = kChromaticCap) {
  if (g.size() > cap)
    throw SizeError("chromatic_number: " + std::to_string(g.size()) + " vertices exceeds cap " + std::to_string(cap));
  std::vector<std::size_t> order(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return g.degree(a) > g.degree(b); });
  std::size_t lo = std::max<std::size_t>(1, clique_number(g));
  for (std::size_t k = lo;; ++k) {
    std::vector<int> color(g.size(), -1);
    if (detail::colorable(g, order, color, 0, static_cast<int>(k))) return k;
  }
}

inline std::size_t clique_cover_number(const SimpleGraph& g, std::size_t cap = kChromaticCap) {
  return chromatic_number(g.complement(), cap);
}

// ---- graph6 --------------------------------------------------------------

/// Encodes a graph in graph6 (no ">>graph6<<" header).
inline std::string emit_graph6(const SimpleGraph& g) {
  std::string out;
  std::size_t n = g.size();
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
  int acc = 0, nbits = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = nbits = 0;
      }
    }
  }
  if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
  return out;
}

/// Decodes graph6. Rejects nonzero padding bits so that emit(parse(s)) == s.
inline SimpleGraph parse_graph6(std::string_view text) {
  std::size_t pos = 0;
  constexpr std::string_view kHeader = ">>graph6<<";
  if (text.substr(0, kHeader.size()) == kHeader) pos = kHeader.size();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  auto sixbits = [&](std::size_t at) -> std::size_t {
    if (at >= text.size()) throw ParseError("graph6: truncated input", at);
    unsigned char c = static_cast<unsigned char>(text[at]);
    if (c < 63 || c > 126) throw ParseError("graph6: byte outside 63..126", at);
    return c - 63;
  };
  std::size_t n = 0;
  if (pos >= text.size()) throw ParseError("graph6: empty input", pos);
  if (static_cast<unsigned char>(text[pos]) == 126) {
    if (pos + 1 < text.size() && static_cast<unsigned char>(text[pos + 1]) == 126) {
      for (std::size_t i = 0; i < 6; ++i) n = (n << 6) | sixbits(pos + 2 + i);
      pos += 8;
    } else {
      for (std::size_t i = 0; i < 3; ++i) n = (n << 6) | sixbits(pos + 1 + i);
      pos += 4;
    }
  } else {
    n = sixbits(pos);
    pos += 1;
  }
  if (n == 0) throw ParseError("graph6: zero vertices", pos - 1);
  std::size_t bits = n * (n - 1) / 2;
  std::size_t bytes = (bits + 5) / 6;
  if (text.size() - pos != bytes)
    throw ParseError("graph6: expected " + std::to_string(bytes) + " data bytes, got " + std::to_string(text.size() - pos),
                     std::min(text.size(), pos + bytes));
  SimpleGraph g(n);
  std::size_t bit = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++bit) {
      std::size_t byte = pos + bit / 6;
      std::size_t v = sixbits(byte);
      if ((v >> (5 - bit % 6)) & 1) g.add_edge(i, j);
    }
  }
  if (bits % 6 != 0) {
    std::size_t last = pos + bytes - 1;
    std::size_t pad = 6 - bits % 6;
    if (sixbits(last) & ((1u << pad) - 1)) throw ParseError("graph6: nonzero padding bits", last);
  }
  return g;
}

/// Fallback text format: one "u v" pair per line, 0-indexed. Blank lines and '#' comments ignored.
/// The vertex count is max index + 1 unless `n` is given.
inline SimpleGraph parse_edge_list(std::string_view text, std::size_t n = 0) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t max_v = 0, offset = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::size_t line_start = offset;
    offset += line.size() + 1;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long long u = -1, v = -1;
    std::string rest;
    if (!(ls >> u >> v) || (ls >> rest) || u < 0 || v < 0)
      throw ParseError("edge list: expected two nonnegative integers per line", line_start);
    edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    max_v = std::max({max_v, static_cast<std::size_t>(u), static_cast<std::size_t>(v)});
  }
  std::size_t size = n ? n : (edges.empty() ? 1 : max_v + 1);
  if (!edges.empty() && max_v >= size) throw ParseError("edge list: vertex index exceeds declared size", 0);
  SimpleGraph g(size);
  for (auto [u, v] : edges) {
    if (u == v) throw ParseError("edge list: self-loop", 0);
    g.add_edge(u, v);
  }
  return g;
}

/// Accepts either graph6 or the edge-list fallback (detected by whitespace between tokens).
inline SimpleGraph parse_graph_text(std::string_view text) {
  std::string_view t = text;
  while (!t.empty() && (t.back() == '\n' || t.back() == '\r' || t.back() == ' ')) t.remove_suffix(1);
  while (!t.empty() && (t.front() == ' ' || t.front() == '\n')) t.remove_prefix(1);
  if (t.find_first_of(" \t\n") != std::string_view::npos) return parse_edge_list(text);
  return parse_graph6(t);
}

}  // namespace edfn
