#include "conlat/canonical.hpp"

#include <algorithm>
#include <array>
#include <bit>

namespace conlat {

std::string CanonicalCode::hex() const {
  static const char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

namespace {

struct Invariant {
  int height, depth, down_covers, up_covers, down_size, up_size;
  auto operator<=>(const Invariant&) const = default;
};

std::vector<Invariant> invariants(const Lattice& lat) {
  int n = lat.size();
  std::vector<Invariant> inv(n);
  std::vector<int> depth(n, 0);
  for (int x = n - 1; x >= 0; --x) {
    for (int y : lat.upper_covers(x))
      depth[x] = std::max(depth[x], depth[y] + 1);
  }
  for (int x = 0; x < n; ++x) {
    int down = 0, up = 0;
    for (int y = 0; y < n; ++y) {
      if (lat.leq(y, x)) ++down;
      if (lat.leq(x, y)) ++up;
    }
    inv[x] = {lat.height(x), depth[x],
              static_cast<int>(lat.lower_covers(x).size()),
              static_cast<int>(lat.upper_covers(x).size()), down, up};
  }
  return inv;
}

std::vector<int> invariant_classes(const Lattice& lat,
                                   std::vector<Invariant>* sorted_out) {
  auto inv = invariants(lat);
  std::vector<Invariant> uniq(inv.begin(), inv.end());
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<int> cls(lat.size());
  for (int x = 0; x < lat.size(); ++x) {
    cls[x] = static_cast<int>(
        std::lower_bound(uniq.begin(), uniq.end(), inv[x]) - uniq.begin());
  }
  if (sorted_out) {
    *sorted_out = inv;
    std::sort(sorted_out->begin(), sorted_out->end());
  }
  return cls;
}

// Per-position entry of the code under construction: the invariant class of
// the element placed there and its lower-cover mask among earlier positions.
struct Entry {
  int cls;
  uint64_t mask;
  auto operator<=>(const Entry&) const = default;
};

struct Searcher {
  const Lattice& lat;
  int n;
  std::vector<int> cls;
  std::vector<uint64_t> strict_down;  // original-index masks
  std::vector<uint64_t> cover_down;
  std::vector<Entry> best;
  bool have_best = false;
  std::vector<Entry> current;
  std::vector<int> position;  // original element -> placed position, -1 unplaced
  uint64_t placed_mask = 0;

  explicit Searcher(const Lattice& l) : lat(l), n(l.size()) {
    cls = invariant_classes(lat, nullptr);
    strict_down.assign(n, 0);
    cover_down.assign(n, 0);
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y)
        if (y != x && lat.leq(y, x)) strict_down[x] |= uint64_t{1} << y;
      for (int y : lat.lower_covers(x)) cover_down[x] |= uint64_t{1} << y;
    }
    position.assign(n, -1);
    current.reserve(n);
  }

  void run() { extend(true); }

  // `tight` tracks whether the current prefix equals the best prefix;
  // pruning against `best` is only sound while it does.
  void extend(bool tight) {
    int pos = static_cast<int>(current.size());
    if (pos == n) {
      if (!have_best || current < best) {
        best = current;
        have_best = true;
      }
      return;
    }
    // Every branch takes the minimal entry over eligible elements
    // (unplaced, whole strict down-set already placed); ties branch.
    Entry min_entry{INT32_MAX, ~uint64_t{0}};
    std::array<int, 64> ties{};
    int tie_count = 0;
    for (int e = 0; e < n; ++e) {
      if (position[e] >= 0) continue;
      if ((strict_down[e] & ~placed_mask) != 0) continue;
      uint64_t mask = 0;
      uint64_t cd = cover_down[e];
      while (cd) {
        int y = std::countr_zero(cd);
        cd &= cd - 1;
        mask |= uint64_t{1} << position[y];
      }
      Entry cand{cls[e], mask};
      if (cand < min_entry) {
        min_entry = cand;
        ties[0] = e;
        tie_count = 1;
      } else if (cand == min_entry) {
        ties[tie_count++] = e;
      }
    }
    bool child_tight = false;
    if (have_best && tight) {
      if (min_entry > best[pos]) return;
      child_tight = (min_entry == best[pos]);
    }
    for (int t = 0; t < tie_count; ++t) {
      int e = ties[t];
      position[e] = pos;
      placed_mask |= uint64_t{1} << e;
      current.push_back(min_entry);
      extend(child_tight);
      current.pop_back();
      placed_mask &= ~(uint64_t{1} << e);
      position[e] = -1;
    }
  }
};

}  // namespace

CanonicalCode canonical_code(const Lattice& lat) {
  int n = lat.size();
  if (n > kCanonicalMaxN)
    throw SizeBound("canonical code bounded to 64 elements");
  Searcher searcher(lat);
  searcher.run();
  CanonicalCode code;
  int mask_bytes = (n + 7) / 8;
  code.bytes.reserve(1 + n * (1 + mask_bytes));
  code.bytes.push_back(static_cast<uint8_t>(n));
  for (const Entry& entry : searcher.best) {
    code.bytes.push_back(static_cast<uint8_t>(entry.cls));
    for (int i = 0; i < mask_bytes; ++i)
      code.bytes.push_back(static_cast<uint8_t>(entry.mask >> (8 * i)));
  }
  return code;
}

std::optional<std::vector<int>> is_isomorphic(const Lattice& a,
                                              const Lattice& b) {
  if (a.size() != b.size()) return std::nullopt;
  int n = a.size();
  std::vector<Invariant> sa, sb;
  auto ca = invariant_classes(a, &sa);
  auto cb = invariant_classes(b, &sb);
  if (sa != sb) return std::nullopt;

  std::vector<int> map(n, -1);
  std::vector<uint8_t> used(n, 0);
  // Elements of `a` are processed in index order, which is a linear
  // extension, so order consistency can be checked incrementally.
  auto backtrack = [&](auto&& self, int x) -> bool {
    if (x == n) return true;
    for (int m = 0; m < n; ++m) {
      if (used[m] || ca[x] != cb[m]) continue;
      bool ok = true;
      for (int y = 0; y < x && ok; ++y) {
        if (a.leq(y, x) != b.leq(map[y], m)) ok = false;
        if (ok && a.leq(x, y) != b.leq(m, map[y])) ok = false;
      }
      if (!ok) continue;
      map[x] = m;
      used[m] = 1;
      if (self(self, x + 1)) return true;
      used[m] = 0;
      map[x] = -1;
    }
    return false;
  };
  if (backtrack(backtrack, 0)) return map;
  return std::nullopt;
}

}  // namespace conlat
