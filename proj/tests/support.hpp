#pragma once

#include <set>
#include <string>
#include <vector>

#include "edfn/canonical.hpp"
#include "edfn/crg.hpp"

namespace support {

/// Every CRG on k vertices, one per isomorphism class.
inline std::vector<edfn::Crg> crgs_up_to_iso(std::size_t k) {
  using namespace edfn;
  std::vector<Crg> out;
  std::set<std::string> seen;
  const std::size_t pairs = k * (k - 1) / 2;
  std::size_t codes = 1;
  for (std::size_t i = 0; i < pairs; ++i) codes *= 3;
  for (std::uint32_t vmask = 0; vmask < (1u << k); ++vmask)
    for (std::size_t code = 0; code < codes; ++code) {
      std::vector<VertexColor> vc(k);
      for (std::size_t x = 0; x < k; ++x) vc[x] = (vmask >> x & 1u) ? VertexColor::Black : VertexColor::White;
      std::vector<EdgeColor> ec(pairs);
      std::size_t c = code;
      for (auto& e : ec) {
        e = static_cast<EdgeColor>(c % 3);
        c /= 3;
      }
      Crg cand(vc, ec);
      if (seen.insert(canonical_form(cand)).second) out.push_back(cand);
    }
  return out;
}

}  // namespace support
