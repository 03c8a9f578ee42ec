#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "edfn/colored_graph.hpp"
#include "edfn/crg.hpp"
#include "edfn/error.hpp"

namespace edfn {

inline constexpr std::size_t kColoredExplicitCap = 64;

/// g may be sent to h: equal colours, or h gray.
inline bool colour_fits(EdgeColor g, EdgeColor h) { return h == EdgeColor::Gray || g == h; }

/// Injection V(G) -> V(H); element u is the image of u.
using ColoredWitness = std::vector<std::size_t>;

inline bool check_colored_map(const ColoredGraph& g, const ColoredGraph& h, const ColoredWitness& phi) {
  if (phi.size() != g.size()) return false;
  std::vector<bool> used(h.size(), false);
  for (auto x : phi) {
    if (x >= h.size() || used[x]) return false;
    used[x] = true;
  }
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v = u + 1; v < g.size(); ++v)
      if (!colour_fits(g.edge(u, v), h.edge(phi[u], phi[v]))) return false;
  return true;
}

namespace detail {

/// Twin classes: u ~ v when they see every other vertex in the same colour.
inline std::vector<std::size_t> twin_classes(const ColoredGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> cls(n, n), reps;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t c = 0; c < reps.size() && cls[u] == n; ++c) {
      std::size_t r = reps[c];
      bool twin = true;
      for (std::size_t w = 0; w < n && twin; ++w)
        if (w != u && w != r) twin = g.edge(u, w) == g.edge(r, w);
      if (twin) cls[u] = c;
    }
    if (cls[u] == n) {
      cls[u] = reps.size();
      reps.push_back(u);
    }
  }
  return cls;
}

class LeqSearch {
 public:
  LeqSearch(const ColoredGraph& g, const ColoredGraph& h) : g_(g), h_(h) {
    const std::size_t n = g.size();
    gcls_ = twin_classes(g);
    hcls_ = twin_classes(h);
    // Static order: greedily take the vertex with the most non-gray edges into the placed set.
    std::vector<bool> placed(n, false);
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t pick = n;
      long best = -1;
      for (std::size_t u = 0; u < n; ++u) {
        if (placed[u]) continue;
        long score = 0;
        for (std::size_t v = 0; v < n; ++v)
          if (v != u && g.edge(u, v) != EdgeColor::Gray) score += placed[v] ? 1000 : 1;
        if (score > best) {
          best = score;
          pick = u;
        }
      }
      placed[pick] = true;
      order_.push_back(pick);
    }
  }

  std::optional<ColoredWitness> run() {
    phi_.assign(g_.size(), 0);
    used_.assign(h_.size(), false);
    done_.assign(g_.size(), false);
    if (!search(0)) return std::nullopt;
    return phi_;
  }

 private:
  bool search(std::size_t depth) {
    if (depth == order_.size()) return true;
    const std::size_t u = order_[depth];
    // Earlier-placed G-twins of u must sit in H-classes no later than u's.
    std::size_t min_class = 0;
    for (std::size_t v = 0; v < g_.size(); ++v)
      if (done_[v] && gcls_[v] == gcls_[u]) min_class = std::max(min_class, hcls_[phi_[v]]);
    std::vector<bool> class_tried(h_.size(), false);
    for (std::size_t x = 0; x < h_.size(); ++x) {
      if (used_[x] || hcls_[x] < min_class || class_tried[hcls_[x]]) continue;
      class_tried[hcls_[x]] = true;
      bool ok = true;
      for (std::size_t v = 0; v < g_.size() && ok; ++v)
        if (done_[v]) ok = colour_fits(g_.edge(u, v), h_.edge(x, phi_[v]));
      if (!ok) continue;
      phi_[u] = x;
      used_[x] = true;
      done_[u] = true;
      if (search(depth + 1)) return true;
      used_[x] = false;
      done_[u] = false;
    }
    return false;
  }

  const ColoredGraph& g_;
  const ColoredGraph& h_;
  std::vector<std::size_t> gcls_, hcls_, order_;
  ColoredWitness phi_;
  std::vector<bool> used_, done_;
};

}  // namespace detail

/// G below H: an injection sending black to black/gray, white to white/gray and gray to gray.
inline std::optional<ColoredWitness> find_colored_leq(const ColoredGraph& g, const ColoredGraph& h) {
  if (g.size() > h.size()) return std::nullopt;
  if (g.compressed() && h.compressed() && g.base() == h.base()) {
    const auto& gs = g.part_sizes();
    const auto& hs = h.part_sizes();
    bool fits = true;
    for (std::size_t x = 0; x < gs.size(); ++x) fits = fits && gs[x] <= hs[x];
    if (fits) {
      ColoredWitness phi(g.size());
      for (std::size_t v = 0; v < g.size(); ++v) {
        std::size_t x = g.part_of(v);
        phi[v] = h.part_offset(x) + (v - g.part_offset(x));
      }
      return phi;
    }
  }
  if (h.size() > kColoredExplicitCap)
    throw SizeError("colored_leq: " + std::to_string(h.size()) + " vertices exceeds the explicit cap 64");
  auto phi = detail::LeqSearch(g, h).run();
  if (phi && !check_colored_map(g, h, *phi)) throw InconsistencyError("colored_leq returned an invalid witness");
  return phi;
}

inline bool colored_leq(const ColoredGraph& g, const ColoredGraph& h) { return find_colored_leq(g, h).has_value(); }

/// The explicit map for n x K(t+1,0) below n x K, for 0-core K with t white and at least n black
/// vertices: the first t white parts go to K's white parts, and the j-th vertex of the last
/// white part goes to the part of the j-th black vertex.
inline ColoredWitness manyblack_witness(const Crg& k, std::size_t n) {
  if (n == 0) throw PreconditionError("manyblack_witness needs n >= 1");
  if (!is_zero_core(k)) throw PreconditionError("manyblack_witness needs a 0-core CRG");
  auto whites = k.white_vertices();
  auto blacks = k.black_vertices();
  if (blacks.size() < n) throw PreconditionError("manyblack_witness needs at least n black vertices");
  const std::size_t t = whites.size();
  ColoredWitness phi((t + 1) * n);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < n; ++j) phi[i * n + j] = whites[i] * n + j;
  for (std::size_t j = 0; j < n; ++j) phi[t * n + j] = blacks[j] * n;
  ColoredGraph g = blowup_uniform(make_kwb(t + 1, 0), n);
  ColoredGraph h = blowup_uniform(k, n);
  if (!check_colored_map(g, h, phi)) throw InconsistencyError("manyblack witness failed validation");
  return phi;
}

struct DalmatianReport {
  bool premise = false;     // n x K below L[mu, m]
  bool conclusion = false;  // n x K^n(r) below L[mu, m]
  bool holds() const { return !premise || conclusion; }
};

/// If n x K sits below L[mu, m], then so does n x K^n(r).
template <class T>
DalmatianReport dalmatian_transfer_check(const Crg& k, const Crg& l, const ProbMass<T>& mu, std::size_t m, std::size_t n, std::size_t r) {
  if (!is_zero_core(k)) throw PreconditionError("dalmatian transfer needs K to be 0-core");
  mu.validate(l.size());
  if (n == 0 || m == 0) throw PreconditionError("dalmatian transfer needs positive m and n");
  for (auto x : l.black_vertices()) {
    if (mu[x] * T(static_cast<long>(m)) < T(static_cast<long>(n)))
      throw PreconditionError("dalmatian transfer needs m * mu(x) >= n on every black vertex of L");
  }
  if (k.white_count() <= l.white_count()) throw PreconditionError("dalmatian transfer needs |VW(K)| > |VW(L)|");
  if (r < 1 || r > k.white_count() - l.white_count()) throw PreconditionError("dalmatian transfer needs 1 <= r <= |VW(K)| - |VW(L)|");
  ColoredGraph host = blowup_mass(l, mu, m);
  DalmatianReport out;
  out.premise = colored_leq(blowup_uniform(k, n), host);
  out.conclusion = colored_leq(blowup_uniform(dalmatian(k, n, r), n), host);
  return out;
}

}  // namespace edfn
