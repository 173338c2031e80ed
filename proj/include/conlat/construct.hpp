#ifndef CONLAT_CONSTRUCT_HPP
#define CONLAT_CONSTRUCT_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "conlat/lattice.hpp"

namespace conlat {

struct ConstructError : LatticeError {
  using LatticeError::LatticeError;
};
/// Horizontal-sum summand with at most 2 elements.
struct SummandTooSmall : ConstructError {
  using ConstructError::ConstructError;
};
struct UnknownName : ConstructError {
  using ConstructError::ConstructError;
};
struct SyntaxError : ConstructError {
  size_t position;
  SyntaxError(const std::string& msg, size_t pos)
      : ConstructError(msg + " at position " + std::to_string(pos)),
        position(pos) {}
};

/// Total order on k elements.
Lattice chain(int k);

/// Stacks upper on top of lower, identifying the top of `lower` with the
/// bottom of `upper`. Result size |L|+|M|-1.
Lattice ordinal_sum(const Lattice& lower, const Lattice& upper);

/// Glues all summands at a shared bottom and top; interiors stay pairwise
/// incomparable. Needs at least two summands, each of size > 2.
Lattice horizontal_sum(const std::vector<Lattice>& summands);

/// Componentwise order on tuples, re-indexed to lattice conventions.
Lattice direct_product(const std::vector<Lattice>& factors);

/// Catalogue of fixed lattices: M3, N5, B2, L2xL3, the pentagon-rhombus
/// gluings G, H, K and their duals Gp, Hp, Kp.
Lattice named(const std::string& id);
const std::vector<std::string>& named_ids();

/// Expression AST mirroring the construction notation:
/// '+' ordinal sum, '#' horizontal sum, '*' product, all left-associative,
/// precedence * > # > +.
struct LatticeExpr {
  enum class Kind { Chain, Named, OrdinalSum, HorizontalSum, Product, Dual };
  Kind kind;
  int chain_size = 0;                 // Chain
  std::string name;                   // Named
  std::vector<LatticeExpr> children;  // sums, products, dual

  static LatticeExpr make_chain(int k);
  static LatticeExpr make_named(std::string id);
  static LatticeExpr ordinal(std::vector<LatticeExpr> parts);
  static LatticeExpr horizontal(std::vector<LatticeExpr> parts);
  static LatticeExpr product(std::vector<LatticeExpr> parts);
  static LatticeExpr dual_of(LatticeExpr inner);
};

/// Grammar: expr := hsum ('+' hsum)* ; hsum := prod ('#' prod)* ;
/// prod := atom ('*' atom)* ; atom := 'C' '(' INT ')' | NAME
///        | 'dual' '(' expr ')' | '(' expr ')'.
LatticeExpr parse_expr(const std::string& text);

/// Expression string that parses back to an equal AST.
std::string render_expr(const LatticeExpr& expr);

/// Number of elements of the evaluated expression, without building it.
int expr_size(const LatticeExpr& expr);

Lattice build(const LatticeExpr& expr);

/// Parse followed by build.
Lattice build(const std::string& text);

}  // namespace conlat

#endif  // CONLAT_CONSTRUCT_HPP
