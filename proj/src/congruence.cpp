#include "conlat/congruence.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace conlat {

// Normalizes raw block ids so they increase with each block's least element.
struct CongruenceAccess {
  static Congruence make(const std::vector<int>& raw_block_of) {
    Congruence con;
    int n = static_cast<int>(raw_block_of.size());
    std::vector<int> rename(n, -1);
    con.block_of_.assign(n, -1);
    int next = 0;
    for (int x = 0; x < n; ++x) {
      int b = raw_block_of[x];
      if (rename[b] < 0) rename[b] = next++;
      con.block_of_[x] = rename[b];
    }
    con.blocks_ = next;
    return con;
  }
};

namespace {

// Union-find over lattice elements with the meet/join compatibility
// closure: every merged pair (x,y) enqueues (x^c, y^c) and (xvc, yvc)
// for all c until the fixpoint.
class Closure {
 public:
  explicit Closure(const Lattice& lat) : lat_(lat), parent_(lat.size()) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  void merge(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return;
    parent_[std::max(rx, ry)] = std::min(rx, ry);
    queue_.emplace_back(x, y);
  }

  void close() {
    int n = lat_.size();
    while (!queue_.empty()) {
      auto [x, y] = queue_.front();
      queue_.pop_front();
      for (int c = 0; c < n; ++c) {
        merge(lat_.meet(x, c), lat_.meet(y, c));
        merge(lat_.join(x, c), lat_.join(y, c));
      }
    }
  }

  Congruence result() {
    int n = lat_.size();
    std::vector<int> raw(n);
    for (int x = 0; x < n; ++x) raw[x] = find(x);
    return CongruenceAccess::make(raw);
  }

 private:
  const Lattice& lat_;
  std::vector<int> parent_;
  std::deque<std::pair<int, int>> queue_;
};

Congruence normalize(const std::vector<int>& raw_block_of) {
  return CongruenceAccess::make(raw_block_of);
}

}  // namespace

Congruence Congruence::from_blocks(const Lattice& lat,
                                   const std::vector<std::vector<int>>& blocks) {
  int n = lat.size();
  std::vector<int> raw(n, -1);
  for (size_t b = 0; b < blocks.size(); ++b) {
    for (int x : blocks[b]) {
      if (x < 0 || x >= n)
        throw BadIndexing("partition references an element out of range");
      if (raw[x] >= 0) throw BadIndexing("partition blocks are not disjoint");
      raw[x] = static_cast<int>(b);
    }
  }
  for (int x = 0; x < n; ++x)
    if (raw[x] < 0) throw BadIndexing("partition does not cover all elements");

  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (raw[x] != raw[y]) continue;
      for (int c = 0; c < n; ++c) {
        if (raw[lat.meet(x, c)] != raw[lat.meet(y, c)] ||
            raw[lat.join(x, c)] != raw[lat.join(y, c)])
          throw NotCompatible(x, y, c);
      }
    }
  }
  return normalize(std::move(raw));
}

std::vector<std::vector<int>> Congruence::blocks() const {
  std::vector<std::vector<int>> result(blocks_);
  for (int x = 0; x < lattice_size(); ++x) result[block_of_[x]].push_back(x);
  return result;
}

bool Congruence::refines(const Congruence& other) const {
  int n = lattice_size();
  std::vector<int> image(blocks_, -1);
  for (int x = 0; x < n; ++x) {
    int b = block_of_[x];
    if (image[b] < 0) image[b] = other.block_of_[x];
    else if (image[b] != other.block_of_[x]) return false;
  }
  return true;
}

std::string Congruence::to_string() const {
  std::ostringstream out;
  out << "[";
  auto bs = blocks();
  for (size_t b = 0; b < bs.size(); ++b) {
    if (b) out << ",";
    out << "[";
    for (size_t i = 0; i < bs[b].size(); ++i) {
      if (i) out << ",";
      out << bs[b][i];
    }
    out << "]";
  }
  out << "]";
  return out.str();
}

nlohmann::json Congruence::to_json() const { return nlohmann::json(blocks()); }

Congruence principal_congruence(const Lattice& lat, int a, int b) {
  Closure closure(lat);
  closure.merge(a, b);
  closure.close();
  return closure.result();
}

Congruence identity_congruence(const Lattice& lat) {
  std::vector<int> raw(lat.size());
  std::iota(raw.begin(), raw.end(), 0);
  return normalize(std::move(raw));
}

Congruence all_congruence(const Lattice& lat) {
  return normalize(std::vector<int>(lat.size(), 0));
}

Congruence congruence_meet(const Lattice&, const Congruence& t1,
                           const Congruence& t2) {
  int n = t1.lattice_size();
  std::vector<int> raw(n);
  std::vector<std::pair<int, int>> seen;
  for (int x = 0; x < n; ++x) {
    std::pair<int, int> key{t1.block_of(x), t2.block_of(x)};
    auto it = std::find(seen.begin(), seen.end(), key);
    if (it == seen.end()) {
      seen.push_back(key);
      raw[x] = static_cast<int>(seen.size()) - 1;
    } else {
      raw[x] = static_cast<int>(it - seen.begin());
    }
  }
  return normalize(std::move(raw));
}

Congruence congruence_join(const Lattice& lat, const Congruence& t1,
                           const Congruence& t2) {
  // Transitive closure of the union is already compatible for lattice
  // congruences; the closure pass is kept as a guard and its inertness is
  // asserted by tests.
  Closure closure(lat);
  int n = lat.size();
  std::vector<int> rep1(t1.block_count(), -1), rep2(t2.block_count(), -1);
  for (int x = 0; x < n; ++x) {
    int b1 = t1.block_of(x), b2 = t2.block_of(x);
    if (rep1[b1] < 0) rep1[b1] = x; else closure.merge(rep1[b1], x);
    if (rep2[b2] < 0) rep2[b2] = x; else closure.merge(rep2[b2], x);
  }
  closure.close();
  return closure.result();
}

std::vector<Congruence> all_congruences(const Lattice& lat) {
  std::vector<Congruence> generators;
  std::unordered_set<Congruence, CongruenceHash> seen;
  for (auto [a, b] : lat.covers()) {
    Congruence c = principal_congruence(lat, a, b);
    if (seen.insert(c).second) generators.push_back(c);
  }
  std::vector<Congruence> result;
  result.push_back(identity_congruence(lat));
  seen.insert(result[0]);
  for (const Congruence& g : generators)
    result.push_back(g);
  // Join-closure: joining against generators reaches every join of a
  // subset of generators, and every congruence is such a join.
  for (size_t i = 0; i < result.size(); ++i) {
    Congruence current = result[i];
    for (const Congruence& g : generators) {
      Congruence joined = congruence_join(lat, current, g);
      if (seen.insert(joined).second) result.push_back(std::move(joined));
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

uint64_t count_congruences(const Lattice& lat) {
  return all_congruences(lat).size();
}

ConLatticeResult congruence_lattice(const Lattice& lat) {
  std::vector<Congruence> cons = all_congruences(lat);
  int m = static_cast<int>(cons.size());
  std::vector<uint8_t> leq(static_cast<size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (cons[i].refines(cons[j])) leq[i * m + j] = 1;
  auto [lattice, index_of] = lattice_from_relation(m, leq);
  std::vector<Congruence> elements(m, cons[0]);
  for (int i = 0; i < m; ++i) elements[index_of[i]] = cons[i];
  return {std::move(lattice), std::move(elements)};
}

std::vector<Congruence> congruence_atoms(const Lattice& lat) {
  if (lat.size() < 2)
    throw TrivialLattice("the one-element lattice has no congruence atoms");
  std::vector<Congruence> cons = all_congruences(lat);
  std::vector<Congruence> atoms;
  for (const Congruence& c : cons) {
    if (c.is_identity()) continue;
    bool minimal = true;
    for (const Congruence& other : cons) {
      if (other.is_identity() || other == c) continue;
      if (other.refines(c)) {
        minimal = false;
        break;
      }
    }
    if (minimal) atoms.push_back(c);
  }
  return atoms;
}

QuotientResult quotient(const Lattice& lat, const Congruence& theta) {
  int n = lat.size();
  int m = theta.block_count();
  // Block order: X <= Y iff some representatives compare.
  std::vector<uint8_t> leq(static_cast<size_t>(m) * m, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (lat.leq(x, y)) leq[theta.block_of(x) * m + theta.block_of(y)] = 1;
  auto [lattice, index_of] = lattice_from_relation(m, leq);
  std::vector<int> block_map(n);
  for (int x = 0; x < n; ++x) block_map[x] = index_of[theta.block_of(x)];
  return {std::move(lattice), std::move(block_map)};
}

}  // namespace conlat
