#ifndef CONLAT_LATTICE_HPP
#define CONLAT_LATTICE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace conlat {

using CoverList = std::vector<std::pair<int, int>>;

struct LatticeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// The generating relation contains a cycle.
struct NotAPoset : LatticeError {
  using LatticeError::LatticeError;
};
/// Some pair of elements has no unique meet or join.
struct NotALattice : LatticeError {
  int x = -1, y = -1;
  NotALattice(const std::string& msg, int x_, int y_)
      : LatticeError(msg), x(x_), y(y_) {}
};
/// Indices do not form a linear extension (every relation must go upward).
struct BadIndexing : LatticeError {
  using LatticeError::LatticeError;
};
struct EmptyInterval : LatticeError {
  using LatticeError::LatticeError;
};
struct SizeBound : LatticeError {
  using LatticeError::LatticeError;
};

/// Finite bounded lattice on elements 0..n-1.
///
/// Indices form a linear extension: x <= y implies x <= y as integers,
/// hence element 0 is the bottom and element n-1 the top. Instances are
/// immutable after construction and safe to share across threads.
class Lattice {
 public:
  /// Builds a lattice from a generating relation. `pairs` may contain any
  /// upward relations, not only covers; the order is their
  /// reflexive-transitive closure and the stored cover list is the
  /// transitive reduction. Throws NotAPoset, BadIndexing or NotALattice.
  static Lattice validate(int n, const CoverList& pairs);

  int size() const { return n_; }
  bool leq(int x, int y) const { return leq_[x * n_ + y] != 0; }
  int meet(int x, int y) const { return meet_[x * n_ + y]; }
  int join(int x, int y) const { return join_[x * n_ + y]; }
  int bottom() const { return 0; }
  int top() const { return n_ - 1; }

  /// Transitive reduction of the order, pairs (a,b) with a covered by b,
  /// sorted lexicographically.
  const CoverList& covers() const { return covers_; }
  const std::vector<int>& upper_covers(int x) const { return up_adj_[x]; }
  const std::vector<int>& lower_covers(int x) const { return down_adj_[x]; }

  /// Length of a longest chain from the bottom to x.
  int height(int x) const { return height_[x]; }

  /// Optional display labels; empty when unnamed.
  const std::vector<std::string>& names() const { return names_; }
  Lattice with_names(std::vector<std::string> names) const;
  std::string label(int x) const;

  bool operator==(const Lattice& other) const {
    return n_ == other.n_ && covers_ == other.covers_;
  }

 private:
  Lattice() = default;

  int n_ = 0;
  std::vector<uint8_t> leq_;    // n*n order matrix
  std::vector<int16_t> meet_;   // n*n glb table
  std::vector<int16_t> join_;   // n*n lub table
  CoverList covers_;
  std::vector<std::vector<int>> up_adj_;
  std::vector<std::vector<int>> down_adj_;
  std::vector<int> height_;
  std::vector<std::string> names_;
};

bool is_meet_irreducible(const Lattice& lat, int x);
bool is_join_irreducible(const Lattice& lat, int x);

/// True iff a is covered by b, b is the unique successor of a and a the
/// unique predecessor of b. False for non-covering pairs.
bool is_narrows(const Lattice& lat, int a, int b);

/// All filters (nonempty, up-closed, meet-closed subsets), each sorted,
/// the list ordered lexicographically. Bounded to n <= 22.
std::vector<std::vector<int>> filters(const Lattice& lat);
std::vector<std::vector<int>> ideals(const Lattice& lat);

std::vector<int> atoms_of(const Lattice& lat);

/// Order-reversed lattice; element x becomes n-1-x.
Lattice dual(const Lattice& lat);

struct IntervalResult {
  Lattice lattice;
  std::vector<int> elements;  // new index -> original element
};

/// The interval [a,b] as a lattice in its own right, re-indexed to the
/// lattice conventions. Throws EmptyInterval when a is not below b.
IntervalResult interval(const Lattice& lat, int a, int b);

struct RelationResult {
  Lattice lattice;
  std::vector<int> index_of;  // old element -> new index
};

/// Re-indexes an arbitrary poset order (given as a full relation matrix,
/// reflexive) into lattice conventions and validates it.
RelationResult lattice_from_relation(int n, const std::vector<uint8_t>& leq);

nlohmann::json lattice_to_json(const Lattice& lat);
Lattice lattice_from_json(const nlohmann::json& doc);

/// Hasse diagram in DOT format, ranked by height.
std::string lattice_to_dot(const Lattice& lat);

}  // namespace conlat

#endif  // CONLAT_LATTICE_HPP
