#ifndef CONLAT_CANONICAL_HPP
#define CONLAT_CANONICAL_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conlat/lattice.hpp"

namespace conlat {

/// Isomorphism-invariant byte code: equal codes iff isomorphic lattices.
struct CanonicalCode {
  std::vector<uint8_t> bytes;

  auto operator<=>(const CanonicalCode&) const = default;
  std::string hex() const;
};

inline constexpr int kCanonicalMaxN = 64;

/// Canonical form of the cover relation under the minimizing relabeling.
/// Search over linear extensions pruned by per-element invariants
/// (height, depth, cover degrees, up/down set sizes).
CanonicalCode canonical_code(const Lattice& lat);

/// Witness bijection preserving order both ways, or nullopt.
std::optional<std::vector<int>> is_isomorphic(const Lattice& a,
                                              const Lattice& b);

}  // namespace conlat

#endif  // CONLAT_CANONICAL_HPP
