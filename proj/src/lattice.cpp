#include "conlat/lattice.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace conlat {

namespace {

constexpr int kMaxElements = 4096;
constexpr int kFilterMaxN = 22;

// Derives covers as the transitive reduction of a reflexive order matrix.
CoverList reduce(int n, const std::vector<uint8_t>& leq) {
  CoverList covers;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (!leq[a * n + b]) continue;
      bool direct = true;
      for (int c = a + 1; c < b && direct; ++c) {
        if (leq[a * n + c] && leq[c * n + b]) direct = false;
      }
      if (direct) covers.emplace_back(a, b);
    }
  }
  return covers;
}

}  // namespace

Lattice Lattice::validate(int n, const CoverList& pairs) {
  if (n < 1) throw BadIndexing("element count must be at least 1");
  if (n > kMaxElements) throw SizeBound("lattice too large");
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw BadIndexing("cover pair references an index out of range");
  }

  // Cycle detection on the raw digraph, before assuming any direction.
  {
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : pairs) adj[a].push_back(b);
    std::vector<int> state(n, 0);  // 0 unseen, 1 on stack, 2 done
    std::vector<std::pair<int, size_t>> stack;
    for (int s = 0; s < n; ++s) {
      if (state[s] != 0) continue;
      stack.emplace_back(s, 0);
      state[s] = 1;
      while (!stack.empty()) {
        auto& [v, i] = stack.back();
        if (i < adj[v].size()) {
          int w = adj[v][i++];
          if (state[w] == 1) throw NotAPoset("relation contains a cycle");
          if (state[w] == 0) {
            state[w] = 1;
            stack.emplace_back(w, 0);
          }
        } else {
          state[v] = 2;
          stack.pop_back();
        }
      }
    }
  }

  for (auto [a, b] : pairs) {
    if (a >= b)
      throw BadIndexing("relation must go upward: indices form a linear extension");
  }

  // Reflexive-transitive closure. Edges only increase indices, so a single
  // descending sweep suffices.
  std::vector<uint8_t> leq(static_cast<size_t>(n) * n, 0);
  std::vector<std::vector<int>> up(n);
  for (auto [a, b] : pairs) up[a].push_back(b);
  for (int i = n - 1; i >= 0; --i) {
    leq[i * n + i] = 1;
    for (int j : up[i]) {
      for (int k = j; k < n; ++k) {
        if (leq[j * n + k]) leq[i * n + k] = 1;
      }
    }
  }

  Lattice lat;
  lat.n_ = n;
  lat.meet_.assign(static_cast<size_t>(n) * n, -1);
  lat.join_.assign(static_cast<size_t>(n) * n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = x; y < n; ++y) {
      // Greatest common lower bound: the top-indexed common lower bound
      // works iff it dominates all others.
      int glb = -1;
      for (int c = y; c >= 0; --c) {
        if (leq[c * n + x] && leq[c * n + y]) {
          glb = c;
          break;
        }
      }
      if (glb < 0) throw NotALattice("pair has no common lower bound", x, y);
      for (int c = 0; c < glb; ++c) {
        if (leq[c * n + x] && leq[c * n + y] && !leq[c * n + glb])
          throw NotALattice("pair has no unique greatest lower bound", x, y);
      }
      int lub = -1;
      for (int c = x; c < n; ++c) {
        if (leq[x * n + c] && leq[y * n + c]) {
          lub = c;
          break;
        }
      }
      if (lub < 0) throw NotALattice("pair has no common upper bound", x, y);
      for (int c = lub + 1; c < n; ++c) {
        if (leq[x * n + c] && leq[y * n + c] && !leq[lub * n + c])
          throw NotALattice("pair has no unique least upper bound", x, y);
      }
      lat.meet_[x * n + y] = lat.meet_[y * n + x] = static_cast<int16_t>(glb);
      lat.join_[x * n + y] = lat.join_[y * n + x] = static_cast<int16_t>(lub);
    }
  }

  lat.leq_ = std::move(leq);
  lat.covers_ = reduce(n, lat.leq_);
  lat.up_adj_.assign(n, {});
  lat.down_adj_.assign(n, {});
  for (auto [a, b] : lat.covers_) {
    lat.up_adj_[a].push_back(b);
    lat.down_adj_[b].push_back(a);
  }
  lat.height_.assign(n, 0);
  for (int b = 0; b < n; ++b) {
    for (int a : lat.down_adj_[b])
      lat.height_[b] = std::max(lat.height_[b], lat.height_[a] + 1);
  }
  return lat;
}

Lattice Lattice::with_names(std::vector<std::string> names) const {
  if (!names.empty() && static_cast<int>(names.size()) != n_)
    throw BadIndexing("name list size mismatch");
  Lattice copy = *this;
  copy.names_ = std::move(names);
  return copy;
}

std::string Lattice::label(int x) const {
  if (x >= 0 && x < static_cast<int>(names_.size())) return names_[x];
  return std::to_string(x);
}

bool is_meet_irreducible(const Lattice& lat, int x) {
  return lat.upper_covers(x).size() == 1;
}

bool is_join_irreducible(const Lattice& lat, int x) {
  return lat.lower_covers(x).size() == 1;
}

bool is_narrows(const Lattice& lat, int a, int b) {
  const auto& ups = lat.upper_covers(a);
  if (ups.size() != 1 || ups[0] != b) return false;
  return lat.lower_covers(b).size() == 1;
}

namespace {

std::vector<std::vector<int>> closed_subsets(const Lattice& lat, bool up) {
  int n = lat.size();
  if (n > kFilterMaxN)
    throw SizeBound("filter enumeration bounded to 22 elements");
  std::vector<uint32_t> cone(n), other(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      bool rel = up ? lat.leq(i, j) : lat.leq(j, i);
      if (rel) cone[i] |= uint32_t{1} << j;
    }
  }
  std::vector<std::vector<int>> result;
  const uint32_t all = (n == 32) ? ~uint32_t{0} : ((uint32_t{1} << n) - 1);
  for (uint32_t mask = 1; mask <= all; ++mask) {
    bool ok = true;
    for (uint32_t m = mask; m && ok; m &= m - 1) {
      int i = std::countr_zero(m);
      if ((cone[i] & ~mask) != 0) ok = false;
    }
    if (!ok) continue;
    // closure under meet (filters) or join (ideals)
    for (uint32_t m1 = mask; m1 && ok; m1 &= m1 - 1) {
      int i = std::countr_zero(m1);
      for (uint32_t m2 = m1 & (m1 - 1); m2 && ok; m2 &= m2 - 1) {
        int j = std::countr_zero(m2);
        int w = up ? lat.meet(i, j) : lat.join(i, j);
        if (!(mask >> w & 1)) ok = false;
      }
    }
    if (!ok) continue;
    std::vector<int> members;
    for (uint32_t m = mask; m; m &= m - 1) members.push_back(std::countr_zero(m));
    result.push_back(std::move(members));
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace

std::vector<std::vector<int>> filters(const Lattice& lat) {
  return closed_subsets(lat, true);
}

std::vector<std::vector<int>> ideals(const Lattice& lat) {
  return closed_subsets(lat, false);
}

std::vector<int> atoms_of(const Lattice& lat) {
  return lat.upper_covers(lat.bottom());
}

Lattice dual(const Lattice& lat) {
  int n = lat.size();
  CoverList flipped;
  for (auto [a, b] : lat.covers()) flipped.emplace_back(n - 1 - b, n - 1 - a);
  Lattice result = Lattice::validate(n, flipped);
  if (!lat.names().empty()) {
    std::vector<std::string> names(n);
    for (int i = 0; i < n; ++i) names[i] = lat.names()[n - 1 - i];
    result = result.with_names(std::move(names));
  }
  return result;
}

IntervalResult interval(const Lattice& lat, int a, int b) {
  if (!lat.leq(a, b)) throw EmptyInterval("interval bounds are not comparable");
  std::vector<int> elements;
  for (int x = a; x <= b; ++x) {
    if (lat.leq(a, x) && lat.leq(x, b)) elements.push_back(x);
  }
  int m = static_cast<int>(elements.size());
  CoverList pairs;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (lat.leq(elements[i], elements[j])) pairs.emplace_back(i, j);
    }
  }
  return {Lattice::validate(m, pairs), std::move(elements)};
}

RelationResult lattice_from_relation(int n, const std::vector<uint8_t>& leq) {
  // Linear extension ordered by height, ties by original index.
  std::vector<int> h(n, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a != b && leq[a * n + b]) {
          if (h[b] < h[a] + 1) {
            h[b] = h[a] + 1;
            if (h[b] > n) throw NotAPoset("relation contains a cycle");
            changed = true;
          }
        }
      }
    }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return h[a] < h[b]; });
  std::vector<int> index_of(n);
  for (int i = 0; i < n; ++i) index_of[order[i]] = i;
  CoverList pairs;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b && leq[a * n + b]) {
        int ia = index_of[a], ib = index_of[b];
        if (ia >= ib) throw BadIndexing("relation is not antisymmetric");
        pairs.emplace_back(ia, ib);
      }
    }
  }
  return {Lattice::validate(n, pairs), std::move(index_of)};
}

nlohmann::json lattice_to_json(const Lattice& lat) {
  nlohmann::json doc;
  doc["n"] = lat.size();
  auto covers = nlohmann::json::array();
  for (auto [a, b] : lat.covers()) covers.push_back({a, b});
  doc["covers"] = covers;
  return doc;
}

Lattice lattice_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("covers"))
    throw BadIndexing("lattice document needs \"n\" and \"covers\"");
  int n = doc.at("n").get<int>();
  CoverList pairs;
  for (const auto& entry : doc.at("covers")) {
    if (!entry.is_array() || entry.size() != 2)
      throw BadIndexing("cover entries must be pairs");
    pairs.emplace_back(entry[0].get<int>(), entry[1].get<int>());
  }
  Lattice lat = Lattice::validate(n, pairs);
  if (doc.contains("names"))
    lat = lat.with_names(doc.at("names").get<std::vector<std::string>>());
  return lat;
}

std::string lattice_to_dot(const Lattice& lat) {
  std::ostringstream out;
  out << "digraph lattice {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (int x = 0; x < lat.size(); ++x)
    out << "  n" << x << " [label=\"" << lat.label(x) << "\"];\n";
  int max_h = 0;
  for (int x = 0; x < lat.size(); ++x) max_h = std::max(max_h, lat.height(x));
  for (int h = 0; h <= max_h; ++h) {
    out << "  { rank=same;";
    for (int x = 0; x < lat.size(); ++x)
      if (lat.height(x) == h) out << " n" << x << ";";
    out << " }\n";
  }
  for (auto [a, b] : lat.covers())
    out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace conlat
