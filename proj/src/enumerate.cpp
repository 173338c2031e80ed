#include "conlat/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <map>
#include <mutex>

namespace conlat {

namespace {

constexpr int kHardMaxN = 10;

// Removing the top of a lattice leaves a meet-semilattice; conversely a
// meet-semilattice plus a fresh top is a lattice. A new element x can be
// inserted as a maximal element of the semilattice over a down-set D iff
// every (a] meets D in a set with a greatest element; x then keeps meets
// defined. Every (n+1)-element lattice arises this way from an n-element
// one, so level-wise growth with canonical dedup is exhaustive.
std::vector<Lattice> extend_all(const Lattice& lat) {
  int n = lat.size();
  int s = n - 1;  // semilattice size after dropping the top
  std::vector<uint32_t> down(s, 0);
  for (int x = 0; x < s; ++x)
    for (int y = 0; y <= x; ++y)
      if (lat.leq(y, x)) down[x] |= uint32_t{1} << y;

  CoverList base;  // covers of the semilattice
  std::vector<uint8_t> was_coatom(s, 0);
  for (auto [a, b] : lat.covers()) {
    if (b == n - 1) was_coatom[a] = 1;
    else base.emplace_back(a, b);
  }

  std::vector<Lattice> out;
  for (uint32_t d = 1; d < (uint32_t{1} << s); ++d) {
    bool ok = true;
    // down-set
    for (uint32_t m = d; m && ok; m &= m - 1) {
      int x = std::countr_zero(m);
      if ((down[x] & ~d) != 0) ok = false;
    }
    if (!ok) continue;
    // every principal ideal meets d in a set with a maximum
    for (int a = 0; a < s && ok; ++a) {
      uint32_t meet_set = down[a] & d;
      if (meet_set == 0) { ok = false; break; }
      int top_elem = 31 - std::countl_zero(meet_set);
      if ((meet_set & ~down[top_elem]) != 0) ok = false;
    }
    if (!ok) continue;

    CoverList covers = base;
    int x = s;        // the new maximal element
    int top = s + 1;  // fresh top
    // lower covers of x: maximal elements of d
    for (uint32_t m = d; m; m &= m - 1) {
      int a = std::countr_zero(m);
      bool is_max = true;
      for (uint32_t m2 = d; m2 && is_max; m2 &= m2 - 1) {
        int b = std::countr_zero(m2);
        if (b != a && (down[b] >> a & 1)) is_max = false;
      }
      if (is_max) covers.emplace_back(a, x);
    }
    // coatoms: old maximal elements not below x, plus x itself
    for (int a = 0; a < s; ++a)
      if (was_coatom[a] && !(d >> a & 1)) covers.emplace_back(a, top);
    covers.emplace_back(x, top);
    out.push_back(Lattice::validate(top + 1, covers));
  }
  return out;
}

struct Level {
  std::vector<Lattice> lattices;
  std::vector<CanonicalCode> codes;
};

const Level& level(int n) {
  static std::map<int, Level> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);

  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  Level lvl;
  if (n == 1) {
    lvl.lattices.push_back(Lattice::validate(1, {}));
  } else if (n == 2) {
    lvl.lattices.push_back(Lattice::validate(2, {{0, 1}}));
  } else {
    // not recursive through level() to keep the lock simple
    const Level* prev = &cache.at(n - 1);
    std::vector<std::pair<CanonicalCode, Lattice>> found;
    std::map<CanonicalCode, size_t> index;
    for (const Lattice& lat : prev->lattices) {
      for (Lattice& next : extend_all(lat)) {
        CanonicalCode code = canonical_code(next);
        if (index.emplace(code, found.size()).second)
          found.emplace_back(std::move(code), std::move(next));
      }
    }
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [code, lat] : found) {
      lvl.codes.push_back(std::move(code));
      lvl.lattices.push_back(std::move(lat));
    }
  }
  if (lvl.codes.empty())
    for (const Lattice& lat : lvl.lattices)
      lvl.codes.push_back(canonical_code(lat));
  return cache.emplace(n, std::move(lvl)).first->second;
}

}  // namespace

int enumerate_max_n() {
  int bound = kHardMaxN;
  if (const char* env = std::getenv("CONLAT_MAX_N")) {
    int v = std::atoi(env);
    if (v >= 1 && v < bound) bound = v;
  }
  return bound;
}

const std::vector<Lattice>& enumerate_lattices(int n) {
  if (n < 1 || n > enumerate_max_n())
    throw SizeBound("enumeration bounded to n <= " +
                    std::to_string(enumerate_max_n()));
  for (int k = 1; k <= n; ++k) level(k);
  return level(n).lattices;
}

uint64_t count_lattices(int n) { return enumerate_lattices(n).size(); }

const std::vector<CanonicalCode>& enumerate_codes(int n) {
  enumerate_lattices(n);
  return level(n).codes;
}

}  // namespace conlat
