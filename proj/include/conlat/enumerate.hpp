#ifndef CONLAT_ENUMERATE_HPP
#define CONLAT_ENUMERATE_HPP

#include <cstdint>
#include <vector>

#include "conlat/canonical.hpp"
#include "conlat/lattice.hpp"

namespace conlat {

/// Hard enumeration bound; the CONLAT_MAX_N environment variable may lower
/// it at runtime but never raise it.
int enumerate_max_n();

/// All n-element lattices, one per isomorphism class, sorted by canonical
/// code. Grows lattices by inserting one new maximal element below the top
/// of a smaller lattice, deduplicating by canonical code per level.
/// Throws SizeBound above enumerate_max_n().
const std::vector<Lattice>& enumerate_lattices(int n);

uint64_t count_lattices(int n);

/// Canonical codes aligned with enumerate_lattices(n).
const std::vector<CanonicalCode>& enumerate_codes(int n);

}  // namespace conlat

#endif  // CONLAT_ENUMERATE_HPP
