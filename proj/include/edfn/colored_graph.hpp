#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "edfn/crg.hpp"
#include "edfn/error.hpp"
#include "edfn/rational.hpp"

namespace edfn {

/// A probability mass on the vertices of a CRG.
template <class T>
struct ProbMass {
  std::vector<T> weights;

  std::size_t size() const noexcept { return weights.size(); }
  const T& operator[](std::size_t i) const { return weights[i]; }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < weights.size(); ++i)
      if (Arith<T>::positive(weights[i], 0.0)) s.push_back(i);
    return s;
  }

  void validate(std::size_t k) const {
    if (weights.size() != k) throw DomainError("probability mass has the wrong length");
    T sum = Arith<T>::from_int(0);
    for (const auto& w : weights) {
      if (w < 0) throw DomainError("probability mass has a negative weight");
      sum += w;
    }
    if constexpr (Arith<T>::exact) {
      if (sum != 1) throw DomainError("probability mass does not sum to 1");
    } else {
      if (std::fabs(sum - 1.0) > tol::kSumToOne) throw DomainError("probability mass does not sum to 1");
    }
    if (support().empty()) throw DomainError("probability mass has empty support");
  }

  static ProbMass uniform(std::size_t k) {
    ProbMass m;
    if constexpr (Arith<T>::exact) m.weights.assign(k, Rational(1, static_cast<unsigned long>(k)));
    else m.weights.assign(k, 1.0 / static_cast<double>(k));
    return m;
  }
};

/// Edge-coloured clique without vertex colours. Stored either explicitly or as a blow-up of a
/// CRG (base + part sizes), in which case vertices are numbered part by part.
class ColoredGraph {
 public:
  static ColoredGraph explicit_graph(std::size_t m, std::vector<EdgeColor> ecolors) {
    if (ecolors.size() != m * (m == 0 ? 0 : m - 1) / 2) throw DomainError("colored graph edge array has the wrong length");
    ColoredGraph g;
    g.m_ = m;
    g.ecolor_ = std::move(ecolors);
    return g;
  }

  static ColoredGraph explicit_graph(std::size_t m, EdgeColor fill) {
    return explicit_graph(m, std::vector<EdgeColor>(m * (m == 0 ? 0 : m - 1) / 2, fill));
  }

  static ColoredGraph blowup(Crg base, std::vector<std::size_t> part_sizes) {
    if (part_sizes.size() != base.size()) throw DomainError("blow-up needs one part size per CRG vertex");
    ColoredGraph g;
    g.m_ = std::accumulate(part_sizes.begin(), part_sizes.end(), std::size_t{0});
    g.offset_.resize(part_sizes.size() + 1, 0);
    for (std::size_t x = 0; x < part_sizes.size(); ++x) g.offset_[x + 1] = g.offset_[x] + part_sizes[x];
    g.part_of_.resize(g.m_);
    for (std::size_t x = 0; x < part_sizes.size(); ++x)
      for (std::size_t v = g.offset_[x]; v < g.offset_[x + 1]; ++v) g.part_of_[v] = x;
    g.base_ = std::move(base);
    g.parts_ = std::move(part_sizes);
    return g;
  }

  std::size_t size() const noexcept { return m_; }
  bool compressed() const noexcept { return base_.has_value(); }
  const Crg& base() const { return base_.value(); }
  const std::vector<std::size_t>& part_sizes() const { return parts_; }
  std::size_t part_of(std::size_t v) const { return part_of_.at(v); }
  /// First vertex index of part x.
  std::size_t part_offset(std::size_t x) const { return offset_.at(x); }

  EdgeColor edge(std::size_t u, std::size_t v) const {
    if (u == v || u >= m_ || v >= m_) throw DomainError("invalid colored graph edge");
    if (!base_) return ecolor_[pair_index(u, v, m_)];
    std::size_t x = part_of_[u], y = part_of_[v];
    return x == y ? as_edge(base_->vertex(x)) : base_->edge(x, y);
  }

  ColoredGraph expand() const {
    if (!base_) return *this;
    std::vector<EdgeColor> ec;
    ec.reserve(m_ * (m_ == 0 ? 0 : m_ - 1) / 2);
    for (std::size_t u = 0; u < m_; ++u)
      for (std::size_t v = u + 1; v < m_; ++v) ec.push_back(edge(u, v));
    return explicit_graph(m_, std::move(ec));
  }

  void set_edge(std::size_t u, std::size_t v, EdgeColor c) {
    if (base_) throw UnsupportedError("cannot recolour an edge of a compressed blow-up; expand() first");
    if (u == v || u >= m_ || v >= m_) throw DomainError("invalid colored graph edge");
    ecolor_[pair_index(u, v, m_)] = c;
  }

  /// Sub-colored graph induced on `keep` (always explicit).
  ColoredGraph induced(const std::vector<std::size_t>& keep) const {
    std::vector<EdgeColor> ec;
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (std::size_t j = i + 1; j < keep.size(); ++j) ec.push_back(edge(keep[i], keep[j]));
    return explicit_graph(keep.size(), std::move(ec));
  }

 private:
  std::size_t m_ = 0;
  std::vector<EdgeColor> ecolor_;
  std::optional<Crg> base_;
  std::vector<std::size_t> parts_, offset_, part_of_;
};

/// m x K: every part has size m.
inline ColoredGraph blowup_uniform(const Crg& k, std::size_t m) {
  if (m == 0) throw DomainError("blow-up factor must be positive");
  return ColoredGraph::blowup(k, std::vector<std::size_t>(k.size(), m));
}

/// K[mu, n]: part x has floor(mu(x) * n) vertices.
template <class T>
ColoredGraph blowup_mass(const Crg& k, const ProbMass<T>& mu, std::size_t n) {
  mu.validate(k.size());
  if (n == 0) throw DomainError("blow-up size must be positive");
  std::vector<std::size_t> parts(k.size());
  for (std::size_t x = 0; x < k.size(); ++x) {
    if constexpr (Arith<T>::exact) {
      Rational scaled = mu[x] * Rational(static_cast<unsigned long>(n));
      mpz_class q = scaled.get_num() / scaled.get_den();  // floor for nonnegative values
      parts[x] = q.get_ui();
    } else {
      parts[x] = static_cast<std::size_t>(std::floor(mu[x] * static_cast<double>(n)));
    }
  }
  return ColoredGraph::blowup(k, std::move(parts));
}

/// Colored graph of a simple graph: edges black, non-edges white.
template <class Graph>
ColoredGraph colored_from_graph(const Graph& f) {
  ColoredGraph g = ColoredGraph::explicit_graph(f.size(), EdgeColor::White);
  for (std::size_t u = 0; u < f.size(); ++u)
    for (std::size_t v = u + 1; v < f.size(); ++v)
      if (f.adjacent(u, v)) g.set_edge(u, v, EdgeColor::Black);
  return g;
}

template <class T>
T edge_p_weight(EdgeColor c, const T& p) {
  if (c == EdgeColor::White) return p;
  if (c == EdgeColor::Black) return T(1) - p;
  return T(0);
}

/// Delta_p(G) = max over vertices of the summed p-weights of incident edges. Compressed
/// blow-ups are evaluated per part without expansion.
template <class T>
T max_p_degree(const ColoredGraph& g, const T& p) {
  if (p < 0 || p > 1) throw DomainError("p must lie in [0,1]");
  T best = T(0);
  bool any = false;
  if (g.compressed()) {
    const Crg& k = g.base();
    const auto& sizes = g.part_sizes();
    for (std::size_t x = 0; x < k.size(); ++x) {
      if (sizes[x] == 0) continue;
      T d = edge_p_weight(as_edge(k.vertex(x)), p) * T(static_cast<long>(sizes[x] - 1));
      for (std::size_t y = 0; y < k.size(); ++y)
        if (y != x && sizes[y] > 0) d += edge_p_weight(k.edge(x, y), p) * T(static_cast<long>(sizes[y]));
      if (!any || d > best) best = d;
      any = true;
    }
    return best;
  }
  for (std::size_t v = 0; v < g.size(); ++v) {
    T d = T(0);
    for (std::size_t u = 0; u < g.size(); ++u)
      if (u != v) d += edge_p_weight(g.edge(u, v), p);
    if (!any || d > best) best = d;
    any = true;
  }
  return best;
}

}  // namespace edfn
