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
#include "json.hpp"

namespace edfn {

enum class VertexColor : std::uint8_t { White, Black };
enum class EdgeColor : std::uint8_t { White, Black, Gray };

inline char to_char(VertexColor c) { return c == VertexColor::White ? 'W' : 'B'; }
inline char to_char(EdgeColor c) { return c == EdgeColor::White ? 'w' : c == EdgeColor::Black ? 'b' : 'g'; }

inline VertexColor swap_color(VertexColor c) { return c == VertexColor::White ? VertexColor::Black : VertexColor::White; }
inline EdgeColor swap_color(EdgeColor c) {
  return c == EdgeColor::White ? EdgeColor::Black : c == EdgeColor::Black ? EdgeColor::White : EdgeColor::Gray;
}
/// The colour a vertex induces on the edges inside its blow-up part.
inline EdgeColor as_edge(VertexColor c) { return c == VertexColor::White ? EdgeColor::White : EdgeColor::Black; }

/// Index of the unordered pair {x,y}, x != y, in a flat upper-triangular array over k vertices.
inline std::size_t pair_index(std::size_t x, std::size_t y, std::size_t k) {
  if (x > y) std::swap(x, y);
  return x * k - x * (x + 1) / 2 + (y - x - 1);
}

/// Colored regularity graph: a clique with black/white vertices and black/white/gray edges.
class Crg {
 public:
  Crg() = default;

  explicit Crg(std::vector<VertexColor> vcolors, EdgeColor fill = EdgeColor::Gray)
      : vcolor_(std::move(vcolors)), ecolor_(vcolor_.size() * (vcolor_.size() - (vcolor_.empty() ? 0 : 1)) / 2, fill) {
    if (vcolor_.empty()) throw DomainError("a CRG needs at least one vertex");
  }

  Crg(std::vector<VertexColor> vcolors, std::vector<EdgeColor> ecolors)
      : vcolor_(std::move(vcolors)), ecolor_(std::move(ecolors)) {
    if (vcolor_.empty()) throw DomainError("a CRG needs at least one vertex");
    if (ecolor_.size() != vcolor_.size() * (vcolor_.size() - 1) / 2)
      throw DomainError("edge colour array has the wrong length");
  }

  std::size_t size() const noexcept { return vcolor_.size(); }

  VertexColor vertex(std::size_t x) const { return vcolor_.at(x); }
  EdgeColor edge(std::size_t x, std::size_t y) const {
    if (x == y) throw DomainError("CRG edges join distinct vertices");
    return ecolor_[pair_index(x, y, size())];
  }

  void set_vertex(std::size_t x, VertexColor c) { vcolor_.at(x) = c; }
  void set_edge(std::size_t x, std::size_t y, EdgeColor c) {
    if (x == y || x >= size() || y >= size()) throw DomainError("invalid CRG edge");
    ecolor_[pair_index(x, y, size())] = c;
  }

  bool is_white(std::size_t x) const { return vertex(x) == VertexColor::White; }
  bool is_black(std::size_t x) const { return vertex(x) == VertexColor::Black; }

  std::vector<std::size_t> white_vertices() const { return vertices_of(VertexColor::White); }
  std::vector<std::size_t> black_vertices() const { return vertices_of(VertexColor::Black); }
  std::size_t white_count() const { return static_cast<std::size_t>(std::count(vcolor_.begin(), vcolor_.end(), VertexColor::White)); }
  std::size_t black_count() const { return size() - white_count(); }

  std::size_t edge_count(EdgeColor c) const { return static_cast<std::size_t>(std::count(ecolor_.begin(), ecolor_.end(), c)); }

  /// All unordered pairs (x<y) with the given colour.
  std::vector<std::pair<std::size_t, std::size_t>> edges_of(EdgeColor c) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t x = 0; x < size(); ++x)
      for (std::size_t y = x + 1; y < size(); ++y)
        if (edge(x, y) == c) out.emplace_back(x, y);
    return out;
  }

  /// Sub-CRG induced on `keep`, in the given order.
  Crg induced(const std::vector<std::size_t>& keep) const {
    if (keep.empty()) throw DomainError("sub-CRG must be nonempty");
    std::vector<VertexColor> vc;
    for (auto x : keep) vc.push_back(vertex(x));
    Crg out(std::move(vc));
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (std::size_t j = i + 1; j < keep.size(); ++j) out.set_edge(i, j, edge(keep[i], keep[j]));
    return out;
  }

  Crg without_vertex(std::size_t v) const {
    std::vector<std::size_t> keep;
    for (std::size_t x = 0; x < size(); ++x)
      if (x != v) keep.push_back(x);
    return induced(keep);
  }

  /// Relabel: vertex i of the result is vertex perm[i] of this CRG.
  Crg permuted(const std::vector<std::size_t>& perm) const { return induced(perm); }

  const std::vector<VertexColor>& vertex_colors() const noexcept { return vcolor_; }
  const std::vector<EdgeColor>& edge_colors() const noexcept { return ecolor_; }

  friend bool operator==(const Crg&, const Crg&) = default;

 private:
  std::vector<std::size_t> vertices_of(VertexColor c) const {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < size(); ++x)
      if (vcolor_[x] == c) out.push_back(x);
    return out;
  }

  std::vector<VertexColor> vcolor_;
  std::vector<EdgeColor> ecolor_;
};

// ---- constructions -------------------------------------------------------

/// K(w,b): w white and b black vertices, all edges gray. Whites come first.
inline Crg make_kwb(std::size_t w, std::size_t b) {
  if (w + b == 0) throw DomainError("K(0,0) is the empty CRG");
  std::vector<VertexColor> vc(w, VertexColor::White);
  vc.insert(vc.end(), b, VertexColor::Black);
  return Crg(std::move(vc), EdgeColor::Gray);
}

/// P_n: n black vertices, gray edges {i,i+1}, every other edge white.
inline Crg make_path_crg(std::size_t n) {
  if (n == 0) throw DomainError("P_n needs n >= 1");
  Crg k(std::vector<VertexColor>(n, VertexColor::Black), EdgeColor::White);
  for (std::size_t i = 0; i + 1 < n; ++i) k.set_edge(i, i + 1, EdgeColor::Gray);
  return k;
}

/// Disjoint union of K and L (K first) with every cross edge coloured `cross`.
inline Crg join(const Crg& k, const Crg& l, EdgeColor cross) {
  std::vector<VertexColor> vc = k.vertex_colors();
  vc.insert(vc.end(), l.vertex_colors().begin(), l.vertex_colors().end());
  Crg out(std::move(vc), cross);
  for (std::size_t x = 0; x < k.size(); ++x)
    for (std::size_t y = x + 1; y < k.size(); ++y) out.set_edge(x, y, k.edge(x, y));
  for (std::size_t x = 0; x < l.size(); ++x)
    for (std::size_t y = x + 1; y < l.size(); ++y) out.set_edge(k.size() + x, k.size() + y, l.edge(x, y));
  return out;
}

inline Crg gray_join(const Crg& k, const Crg& l) { return join(k, l, EdgeColor::Gray); }
inline Crg white_join(const Crg& k, const Crg& l) { return join(k, l, EdgeColor::White); }

/// P_{n1} white-join ... white-join P_{nl}.
inline Crg make_path_forest(const std::vector<std::size_t>& lengths) {
  if (lengths.empty()) throw DomainError("path forest needs at least one path");
  Crg out = make_path_crg(lengths.front());
  for (std::size_t i = 1; i < lengths.size(); ++i) out = white_join(out, make_path_crg(lengths[i]));
  return out;
}

/// Swap black and white on vertices and edges; gray is fixed.
inline Crg complement_crg(const Crg& k) {
  std::vector<VertexColor> vc;
  for (auto c : k.vertex_colors()) vc.push_back(swap_color(c));
  std::vector<EdgeColor> ec;
  for (auto c : k.edge_colors()) ec.push_back(swap_color(c));
  return Crg(std::move(vc), std::move(ec));
}

/// No black edges, and white edges only between black vertices.
inline bool is_zero_core(const Crg& k) {
  for (std::size_t x = 0; x < k.size(); ++x)
    for (std::size_t y = x + 1; y < k.size(); ++y) {
      EdgeColor c = k.edge(x, y);
      if (c == EdgeColor::Black) return false;
      if (c == EdgeColor::White && !(k.is_black(x) && k.is_black(y))) return false;
    }
  return true;
}

/// No white edges, and black edges only between white vertices.
inline bool is_one_core(const Crg& k) {
  for (std::size_t x = 0; x < k.size(); ++x)
    for (std::size_t y = x + 1; y < k.size(); ++y) {
      EdgeColor c = k.edge(x, y);
      if (c == EdgeColor::White) return false;
      if (c == EdgeColor::Black && !(k.is_white(x) && k.is_white(y))) return false;
    }
  return true;
}

/// K^ell(r): the first r white vertices (by index) are each replaced, in place, by ell black
/// vertices joined by white edges. A replacement vertex inherits every edge colour of the
/// vertex it replaces, including towards other replaced vertices' copies.
inline Crg dalmatian(const Crg& k, std::size_t ell, std::size_t r) {
  if (!is_zero_core(k)) throw PreconditionError("dalmatian: K must be 0-core");
  if (ell == 0) throw PreconditionError("dalmatian: ell must be positive");
  if (r == 0 || r > k.white_count())
    throw PreconditionError("dalmatian: r must lie in [1, |VW(K)|] = [1, " + std::to_string(k.white_count()) + "]");
  auto whites = k.white_vertices();
  std::vector<bool> replaced(k.size(), false);
  for (std::size_t i = 0; i < r; ++i) replaced[whites[i]] = true;

  std::vector<std::size_t> origin;
  std::vector<VertexColor> vc;
  for (std::size_t x = 0; x < k.size(); ++x) {
    std::size_t copies = replaced[x] ? ell : 1;
    for (std::size_t c = 0; c < copies; ++c) {
      origin.push_back(x);
      vc.push_back(replaced[x] ? VertexColor::Black : k.vertex(x));
    }
  }
  Crg out(std::move(vc), EdgeColor::Gray);
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = a + 1; b < out.size(); ++b)
      out.set_edge(a, b, origin[a] == origin[b] ? EdgeColor::White : k.edge(origin[a], origin[b]));
  return out;
}

// ---- text format ---------------------------------------------------------
//
// line 1: k
// line 2: k characters over {W,B}
// lines 3..k+1: row i (1-based) lists the colours of pairs (i,i+1..k) over {w,b,g}

inline std::string to_text(const Crg& k) {
  std::string out = std::to_string(k.size()) + "\n";
  for (auto c : k.vertex_colors()) out.push_back(to_char(c));
  out.push_back('\n');
  for (std::size_t x = 0; x + 1 < k.size(); ++x) {
    for (std::size_t y = x + 1; y < k.size(); ++y) out.push_back(to_char(k.edge(x, y)));
    out.push_back('\n');
  }
  return out;
}

inline Crg crg_from_text(std::string_view text) {
  std::vector<std::pair<std::string, std::size_t>> lines;  // content, byte offset
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.emplace_back(line, start);
    if (end == text.size()) break;
    start = end + 1;
  }
  while (!lines.empty() && lines.back().first.empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("CRG text: empty input", 0);
  const auto& [head, head_off] = lines[0];
  if (head.empty() || head.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("CRG text: line 1 must be the vertex count", head_off);
  std::size_t k = std::stoul(head);
  if (k == 0) throw ParseError("CRG text: vertex count must be positive", head_off);
  if (lines.size() != k + 1)
    throw ParseError("CRG text: expected " + std::to_string(k + 1) + " lines, got " + std::to_string(lines.size()),
                     lines.back().second);
  const auto& [vline, voff] = lines[1];
  if (vline.size() != k) throw ParseError("CRG text: line 2 must have exactly k characters", voff);
  std::vector<VertexColor> vc;
  for (std::size_t i = 0; i < k; ++i) {
    if (vline[i] == 'W') vc.push_back(VertexColor::White);
    else if (vline[i] == 'B') vc.push_back(VertexColor::Black);
    else throw ParseError("CRG text: vertex colour must be W or B", voff + i);
  }
  Crg out(std::move(vc));
  for (std::size_t x = 0; x + 1 < k; ++x) {
    const auto& [row, off] = lines[2 + x];
    if (row.size() != k - 1 - x)
      throw ParseError("CRG text: row " + std::to_string(x + 1) + " must have " + std::to_string(k - 1 - x) + " characters", off);
    for (std::size_t j = 0; j < row.size(); ++j) {
      EdgeColor c;
      if (row[j] == 'w') c = EdgeColor::White;
      else if (row[j] == 'b') c = EdgeColor::Black;
      else if (row[j] == 'g') c = EdgeColor::Gray;
      else throw ParseError("CRG text: edge colour must be w, b or g", off + j);
      out.set_edge(x, x + 1 + j, c);
    }
  }
  return out;
}

/// JSON mirror: {"k": 3, "vcolors": "WBB", "ecolors": ["gg", "g"]}.
inline nlohmann::json to_json(const Crg& k) {
  nlohmann::json j;
  j["k"] = k.size();
  std::string v;
  for (auto c : k.vertex_colors()) v.push_back(to_char(c));
  j["vcolors"] = v;
  j["ecolors"] = nlohmann::json::array();
  for (std::size_t x = 0; x + 1 < k.size(); ++x) {
    std::string row;
    for (std::size_t y = x + 1; y < k.size(); ++y) row.push_back(to_char(k.edge(x, y)));
    j["ecolors"].push_back(row);
  }
  return j;
}

inline Crg crg_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("k") || !j["k"].is_number_unsigned())
    throw ParseError("CRG JSON field 'k': missing or not a positive integer", 0);
  if (!j.contains("vcolors") || !j["vcolors"].is_string()) throw ParseError("CRG JSON field 'vcolors': missing", 0);
  if (!j.contains("ecolors") || !j["ecolors"].is_array()) throw ParseError("CRG JSON field 'ecolors': missing", 0);
  std::string text = std::to_string(j["k"].get<std::size_t>()) + "\n" + j["vcolors"].get<std::string>() + "\n";
  for (const auto& row : j["ecolors"]) {
    if (!row.is_string()) throw ParseError("CRG JSON field 'ecolors': rows must be strings", 0);
    text += row.get<std::string>() + "\n";
  }
  return crg_from_text(text);
}

}  // namespace edfn
