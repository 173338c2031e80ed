#ifndef CONLAT_CENSUS_HPP
#define CONLAT_CENSUS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "conlat/canonical.hpp"
#include "conlat/congruence.hpp"
#include "conlat/construct.hpp"
#include "conlat/lattice.hpp"

namespace conlat {

/// Per-n histogram of congruence counts over all isomorphism classes.
struct CensusRecord {
  int n = 0;
  uint64_t total = 0;  // number of isomorphism classes
  std::map<uint64_t, uint64_t> histogram;  // |Con(L)| -> class count
  std::map<uint64_t, std::vector<std::string>> witnesses;  // capped hex codes
  std::vector<uint64_t> ncl;  // sorted distinct congruence counts
  int witness_cap = 0;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

/// Lattices of one size with their congruence counts, enumeration-aligned.
struct CensusDetail {
  int n = 0;
  std::vector<uint64_t> con_counts;  // aligned with enumerate_lattices(n)
};

/// Memoized per n; computation fans out over the enumeration in
/// deterministic chunks. threads = 0 means hardware concurrency.
const CensusDetail& census_detail(int n, int threads = 0);

CensusRecord census(int n, int threads = 0, int witness_cap = 64);

/// p-th largest distinct congruence count of n-element lattices, or
/// nullopt when fewer than p distinct counts exist.
std::optional<uint64_t> gncl(int p, int n, int threads = 0);

/// The lattices attaining gncl(p,n), in enumeration order.
std::vector<Lattice> lnc(int p, int n, int threads = 0);

/// Construction recipe claiming (con_count, n, n), transcribed from the
/// explicit small-size witnesses.
struct CfiRecipe {
  uint64_t k;
  int n;
  std::string expr;
};

const std::vector<CfiRecipe>& cfi_recipe_table();

enum class CfiMode { Exhaustive, Construct };

/// Lattices of size n with exactly k congruences. Exhaustive mode scans
/// the census; construct mode evaluates table recipes (and verifies the
/// claimed counts, including filters and ideals, by enumeration).
std::vector<Lattice> cfi_check(uint64_t k, int n,
                               CfiMode mode = CfiMode::Exhaustive,
                               int threads = 0);

struct CheckResult {
  std::string name;
  std::string claim;      // citation of the verified statement
  bool pass = false;
  bool conjecture = false;  // reported, never fails the suite
  std::string evidence;
  double seconds = 0.0;
};

struct VerificationReport {
  int max_n = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const;  // ignores conjecture entries
  std::string to_text() const;
  nlohmann::json to_json() const;
};

/// Runs every registered verification check up to max_n lattice size.
/// Failures are report entries, not exceptions.
VerificationReport verify_paper(int max_n, int threads = 0);

/// Deterministic random expression with bounded evaluated size,
/// for randomized suites.
LatticeExpr random_expr(std::mt19937& rng, int max_size);

}  // namespace conlat

#endif  // CONLAT_CENSUS_HPP
