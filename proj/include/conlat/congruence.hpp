#ifndef CONLAT_CONGRUENCE_HPP
#define CONLAT_CONGRUENCE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "conlat/lattice.hpp"

namespace conlat {

/// Partition is not compatible with meet and join; reports a witness
/// triple: x,y in one block whose meet or join with c separates.
struct NotCompatible : LatticeError {
  int x, y, c;
  NotCompatible(int x_, int y_, int c_)
      : LatticeError("partition is not a congruence: merging " +
                     std::to_string(x_) + "," + std::to_string(y_) +
                     " is not compatible with element " + std::to_string(c_)),
        x(x_), y(y_), c(c_) {}
};
struct TrivialLattice : LatticeError {
  using LatticeError::LatticeError;
};

/// Compatible partition of a lattice's elements. Blocks are normalized so
/// ids increase with each block's least element; values compare and hash
/// by the normalized form.
class Congruence {
 public:
  /// eq(partition): validates cover/disjointness of the blocks and
  /// compatibility with meet and join. Throws NotCompatible.
  static Congruence from_blocks(const Lattice& lat,
                                const std::vector<std::vector<int>>& blocks);

  int lattice_size() const { return static_cast<int>(block_of_.size()); }
  int block_count() const { return blocks_; }
  int block_of(int x) const { return block_of_[x]; }
  bool same(int x, int y) const { return block_of_[x] == block_of_[y]; }
  bool is_identity() const { return blocks_ == lattice_size(); }
  bool is_all() const { return blocks_ == 1; }

  /// Blocks as sorted element lists, ordered by least element.
  std::vector<std::vector<int>> blocks() const;

  /// True iff every block of this congruence lies inside a block of other.
  bool refines(const Congruence& other) const;

  bool operator==(const Congruence& other) const {
    return block_of_ == other.block_of_;
  }
  bool operator<(const Congruence& other) const {
    return block_of_ < other.block_of_;
  }

  std::string to_string() const;
  nlohmann::json to_json() const;

 private:
  friend struct CongruenceAccess;
  std::vector<int> block_of_;
  int blocks_ = 0;
};

struct CongruenceHash {
  size_t operator()(const Congruence& c) const {
    size_t h = 0xcbf29ce484222325ull;
    for (int i = 0; i < c.lattice_size(); ++i)
      h = (h ^ static_cast<size_t>(c.block_of(i))) * 0x100000001b3ull;
    return h;
  }
};

/// con(a,b): least congruence identifying a and b.
Congruence principal_congruence(const Lattice& lat, int a, int b);

Congruence identity_congruence(const Lattice& lat);
Congruence all_congruence(const Lattice& lat);

Congruence congruence_meet(const Lattice& lat, const Congruence& t1,
                           const Congruence& t2);
Congruence congruence_join(const Lattice& lat, const Congruence& t1,
                           const Congruence& t2);

/// Con(L): join-closure of the principal congruences of the covers.
/// Sorted by normalized block map.
std::vector<Congruence> all_congruences(const Lattice& lat);

uint64_t count_congruences(const Lattice& lat);

struct ConLatticeResult {
  Lattice lattice;
  std::vector<Congruence> elements;  // index-aligned with the lattice
};

/// Con(L) ordered by refinement, as a lattice.
ConLatticeResult congruence_lattice(const Lattice& lat);

/// Minimal nontrivial congruences, computed from the full Con(L) by
/// refinement-minimality. Throws TrivialLattice for one-element lattices.
std::vector<Congruence> congruence_atoms(const Lattice& lat);

struct QuotientResult {
  Lattice lattice;
  std::vector<int> block_map;  // element -> index in the quotient
};

/// L/theta: blocks ordered by comparability of representatives.
QuotientResult quotient(const Lattice& lat, const Congruence& theta);

}  // namespace conlat

#endif  // CONLAT_CONGRUENCE_HPP
