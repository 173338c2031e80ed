#include "conlat/census.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "conlat/enumerate.hpp"

namespace conlat {

namespace {

void parallel_for(size_t count, int threads,
                  const std::function<void(size_t)>& fn) {
  int t = threads > 0 ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  t = std::max(1, std::min<int>(t, static_cast<int>(count)));
  if (t == 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (int w = 0; w < t; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace

const CensusDetail& census_detail(int n, int threads) {
  static std::map<int, CensusDetail> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const std::vector<Lattice>& lats = enumerate_lattices(n);
  CensusDetail detail;
  detail.n = n;
  detail.con_counts.assign(lats.size(), 0);
  parallel_for(lats.size(), threads, [&](size_t i) {
    detail.con_counts[i] = count_congruences(lats[i]);
  });
  return cache.emplace(n, std::move(detail)).first->second;
}

CensusRecord census(int n, int threads, int witness_cap) {
  const CensusDetail& detail = census_detail(n, threads);
  const std::vector<CanonicalCode>& codes = enumerate_codes(n);
  CensusRecord record;
  record.n = n;
  record.total = detail.con_counts.size();
  record.witness_cap = witness_cap;
  for (size_t i = 0; i < detail.con_counts.size(); ++i) {
    uint64_t k = detail.con_counts[i];
    ++record.histogram[k];
    auto& list = record.witnesses[k];
    if (static_cast<int>(list.size()) < witness_cap)
      list.push_back(codes[i].hex());
  }
  for (const auto& [k, count] : record.histogram) record.ncl.push_back(k);
  return record;
}

nlohmann::json CensusRecord::to_json() const {
  nlohmann::json doc;
  doc["format"] = 1;
  doc["n"] = n;
  doc["total"] = total;
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [k, count] : histogram) hist[std::to_string(k)] = count;
  doc["histogram"] = hist;
  doc["ncl"] = ncl;
  nlohmann::json g = nlohmann::json::object();
  for (size_t p = 0; p < ncl.size(); ++p)
    g[std::to_string(p + 1)] = ncl[ncl.size() - 1 - p];
  doc["gncl"] = g;
  nlohmann::json w = nlohmann::json::object();
  for (const auto& [k, list] : witnesses) w[std::to_string(k)] = list;
  doc["witnesses"] = w;
  return doc;
}

std::string CensusRecord::to_csv() const {
  std::ostringstream out;
  out << "n,con_count,multiplicity\n";
  for (const auto& [k, count] : histogram)
    out << n << "," << k << "," << count << "\n";
  return out.str();
}

std::optional<uint64_t> gncl(int p, int n, int threads) {
  if (p < 1) throw SizeBound("rank must be positive");
  CensusRecord record = census(n, threads);
  if (p > static_cast<int>(record.ncl.size())) return std::nullopt;
  return record.ncl[record.ncl.size() - p];
}

std::vector<Lattice> lnc(int p, int n, int threads) {
  auto value = gncl(p, n, threads);
  std::vector<Lattice> result;
  if (!value) return result;
  const CensusDetail& detail = census_detail(n, threads);
  const std::vector<Lattice>& lats = enumerate_lattices(n);
  for (size_t i = 0; i < lats.size(); ++i)
    if (detail.con_counts[i] == *value) result.push_back(lats[i]);
  return result;
}

const std::vector<CfiRecipe>& cfi_recipe_table() {
  static const std::vector<CfiRecipe> table = {
      {2, 7, "C(3)#C(3)#C(3)#C(3)#C(3)"},
      {4, 7, "(C(3)#C(3)#C(3)#C(3))+C(2)"},
      {7, 7, "C(3)#(C(2)+B2+C(2))"},
      {8, 7, "M3+C(3)"},
      {16, 7, "B2+B2"},
      {32, 7, "B2+C(4)"},
      {64, 7, "C(7)"},
      {7, 9, "C(3)#(C(2)+M3+C(3))"},
      {8, 9, "(C(3)#C(3)#C(3)#C(3))+B2"},
      {9, 9, "C(3)#C(3)#(C(2)+B2+C(3))"},
      {10, 9, "C(3)#(C(2)+(C(4)#C(4))+C(2))"},
      {7, 11, "(C(2)+(C(2)+(C(4)#C(3)#C(3)))+C(2))#C(3)#C(3)"},
      {8, 11, "(C(2)+(C(3)#(C(2)+B2+C(2)))+C(2))#C(3)#C(3)"},
      {9, 11, "(C(2)+(M3+C(3))+C(2))#C(3)#C(3)"},
      {10, 11, "(C(3)#C(3)#C(3)#C(3)#C(3))+N5"},
      {11, 11, "C(3)#(C(2)+(C(3)#(C(2)+N5+C(2)))+C(2))"},
      {12, 11, "(C(4)#C(3)#C(3))+M3+C(2)"},
  };
  return table;
}

std::vector<Lattice> cfi_check(uint64_t k, int n, CfiMode mode, int threads) {
  std::vector<Lattice> result;
  if (mode == CfiMode::Exhaustive) {
    const CensusDetail& detail = census_detail(n, threads);
    const std::vector<Lattice>& lats = enumerate_lattices(n);
    for (size_t i = 0; i < lats.size(); ++i)
      if (detail.con_counts[i] == k) result.push_back(lats[i]);
    return result;
  }
  for (const CfiRecipe& recipe : cfi_recipe_table()) {
    if (recipe.k != k || recipe.n != n) continue;
    Lattice lat = build(recipe.expr);
    if (lat.size() != n || count_congruences(lat) != k ||
        filters(lat).size() != static_cast<size_t>(n) ||
        ideals(lat).size() != static_cast<size_t>(n))
      throw LatticeError("recipe failed verification: " + recipe.expr);
    result.push_back(std::move(lat));
  }
  return result;
}

LatticeExpr random_expr(std::mt19937& rng, int max_size) {
  auto rint = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  LatticeExpr result = LatticeExpr::make_chain(1);
  if (max_size < 4) {
    result = LatticeExpr::make_chain(rint(1, std::max(1, max_size)));
  } else {
    switch (rint(0, 9)) {
      case 0:
      case 1:
        result = LatticeExpr::make_chain(rint(2, std::min(6, max_size)));
        break;
      case 2: {
        std::vector<std::string> fitting;
        for (const std::string& id : named_ids())
          if (named(id).size() <= max_size) fitting.push_back(id);
        result = LatticeExpr::make_named(
            fitting[rint(0, static_cast<int>(fitting.size()) - 1)]);
        break;
      }
      case 3:
      case 4:
      case 5: {
        LatticeExpr a = random_expr(rng, rint(2, max_size - 1));
        LatticeExpr b = random_expr(rng, max_size - expr_size(a) + 1);
        result = LatticeExpr::ordinal({std::move(a), std::move(b)});
        break;
      }
      case 6:
      case 7: {
        int t = max_size >= 5 ? rint(2, 3) : 2;
        int interior = max_size - 2;
        std::vector<LatticeExpr> parts;
        for (int i = 0; i < t; ++i) {
          int remaining_parts = t - i - 1;
          int budget = interior - remaining_parts;  // leave >=1 per later part
          int mine = i + 1 == t ? budget : rint(1, std::max(1, budget - 1));
          LatticeExpr part = random_expr(rng, mine + 2);
          if (expr_size(part) <= 2) part = LatticeExpr::make_chain(3);
          parts.push_back(std::move(part));
          interior -= expr_size(parts.back()) - 2;
        }
        result = LatticeExpr::horizontal(std::move(parts));
        break;
      }
      case 8: {
        int a = rint(2, 3);
        LatticeExpr b = random_expr(rng, max_size / a);
        result = LatticeExpr::product(
            {LatticeExpr::make_chain(a), std::move(b)});
        break;
      }
      default:
        result = LatticeExpr::make_chain(rint(1, std::min(8, max_size)));
        break;
    }
  }
  if (rint(0, 7) == 0) result = LatticeExpr::dual_of(std::move(result));
  return result;
}

bool VerificationReport::all_passed() const {
  for (const CheckResult& check : checks)
    if (!check.conjecture && !check.pass) return false;
  return true;
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  out << "verification report (lattice sizes up to " << max_n << ")\n";
  for (const CheckResult& check : checks) {
    const char* tag = check.conjecture ? (check.pass ? "CONJECTURE agree"
                                                     : "CONJECTURE differ")
                                       : (check.pass ? "PASS" : "FAIL");
    out << "[" << tag << "] " << check.name << " ("
        << static_cast<long long>(check.seconds * 1000.0) << " ms): "
        << check.claim;
    if (!check.evidence.empty()) out << " -- " << check.evidence;
    out << "\n";
  }
  out << (all_passed() ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
  return out.str();
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json doc;
  doc["format"] = 1;
  doc["max_n"] = max_n;
  doc["all_passed"] = all_passed();
  nlohmann::json list = nlohmann::json::array();
  for (const CheckResult& check : checks) {
    nlohmann::json entry;
    entry["name"] = check.name;
    entry["claim"] = check.claim;
    entry["status"] = check.pass ? "pass" : "fail";
    entry["conjecture"] = check.conjecture;
    entry["evidence"] = check.evidence;
    entry["runtime_ms"] = static_cast<long long>(check.seconds * 1000.0);
    list.push_back(entry);
  }
  doc["checks"] = list;
  return doc;
}

namespace {

struct CheckRunner {
  VerificationReport& report;
  int threads;

  void run(const std::string& name, const std::string& claim, bool conjecture,
           const std::function<std::pair<bool, std::string>()>& body) {
    CheckResult result;
    result.name = name;
    result.claim = claim;
    result.conjecture = conjecture;
    auto start = std::chrono::steady_clock::now();
    try {
      auto [pass, evidence] = body();
      result.pass = pass;
      result.evidence = evidence;
    } catch (const std::exception& ex) {
      result.pass = false;
      result.evidence = std::string("exception: ") + ex.what();
    }
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    report.checks.push_back(std::move(result));
  }
};

std::string codes_brief(const std::set<std::string>& codes) {
  std::ostringstream out;
  size_t shown = 0;
  for (const std::string& code : codes) {
    if (shown++) out << ",";
    if (shown > 4) {
      out << "...";
      break;
    }
    out << code.substr(0, 12);
  }
  return out.str();
}

// Expression families attaining the extremal congruence counts.
std::vector<std::string> family_rank1(int n) {
  return {"C(" + std::to_string(n) + ")"};
}

std::vector<std::string> family_rank2(int n) {
  std::vector<std::string> out;
  for (int r = 1; r <= n - 3; ++r)
    out.push_back("C(" + std::to_string(r) + ")+B2+C(" +
                  std::to_string(n - r - 2) + ")");
  return out;
}

std::vector<std::string> family_rank3(int n) {
  std::vector<std::string> out;
  for (int k = 1; k <= n - 4; ++k)
    out.push_back("C(" + std::to_string(k) + ")+N5+C(" +
                  std::to_string(n - k - 3) + ")");
  return out;
}

std::vector<std::string> family_rank4(int n) {
  std::vector<std::string> out;
  for (int k = 1; k <= n - 5; ++k)
    out.push_back("C(" + std::to_string(k) + ")+L2xL3+C(" +
                  std::to_string(n - k - 4) + ")");
  if (n >= 7) {
    for (int s = 1; s <= n - 6; ++s)
      for (int t = 1; s + t <= n - 5; ++t)
        out.push_back("C(" + std::to_string(s) + ")+B2+C(" +
                      std::to_string(t) + ")+B2+C(" +
                      std::to_string(n - s - t - 4) + ")");
  }
  return out;
}

std::vector<std::string> family_rank5_conjectured(int n) {
  std::vector<std::string> out;
  for (int k = 1; k <= n - 5; ++k) {
    out.push_back("C(" + std::to_string(k) + ")+(C(3)#C(5))+C(" +
                  std::to_string(n - k - 4) + ")");
    out.push_back("C(" + std::to_string(k) + ")+(C(4)#C(4))+C(" +
                  std::to_string(n - k - 4) + ")");
  }
  return out;
}

// Builds every family member, checking size and congruence count, and
// compares the resulting isomorphism-class code set with the census
// witnesses attaining `value`.
std::pair<bool, std::string> match_family(int n, uint64_t value,
                                          const std::vector<std::string>& exprs,
                                          int threads) {
  std::set<std::string> family;
  for (const std::string& text : exprs) {
    Lattice lat = build(text);
    if (lat.size() != n)
      return {false, text + " has size " + std::to_string(lat.size())};
    uint64_t count = count_congruences(lat);
    if (count != value)
      return {false, text + " has " + std::to_string(count) +
                         " congruences, wanted " + std::to_string(value)};
    family.insert(canonical_code(lat).hex());
  }
  CensusRecord record = census(n, threads);
  auto it = record.witnesses.find(value);
  std::set<std::string> found;
  if (it != record.witnesses.end())
    found.insert(it->second.begin(), it->second.end());
  uint64_t multiplicity = 0;
  if (auto hit = record.histogram.find(value); hit != record.histogram.end())
    multiplicity = hit->second;
  if (found != family || multiplicity != family.size()) {
    return {false, "census has " + std::to_string(multiplicity) +
                       " classes at " + std::to_string(value) +
                       ", family has " + std::to_string(family.size())};
  }
  return {true, std::to_string(family.size()) + " classes at count " +
                    std::to_string(value) + ": " + codes_brief(family)};
}

bool is_boolean_of_exponent(const Lattice& lat, int exponent) {
  if (exponent < 0 || exponent > 30) return false;
  if (lat.size() != (1 << exponent)) return false;
  std::vector<int> atoms = atoms_of(lat);
  if (static_cast<int>(atoms.size()) != exponent) return false;
  std::vector<uint32_t> atom_mask(lat.size(), 0);
  for (int x = 0; x < lat.size(); ++x)
    for (int i = 0; i < exponent; ++i)
      if (lat.leq(atoms[i], x)) atom_mask[x] |= uint32_t{1} << i;
  std::set<uint32_t> distinct(atom_mask.begin(), atom_mask.end());
  if (distinct.size() != static_cast<size_t>(lat.size())) return false;
  for (int x = 0; x < lat.size(); ++x)
    for (int y = 0; y < lat.size(); ++y)
      if (lat.leq(x, y) != ((atom_mask[x] & ~atom_mask[y]) == 0)) return false;
  return true;
}

// L2^(n-5) x (L2 + B2), the congruence-lattice shape at the third rank.
Lattice rank3_con_shape(int n) {
  Lattice acc = ordinal_sum(chain(2), named("B2"));
  std::vector<Lattice> factors(n - 5, chain(2));
  factors.push_back(acc);
  return direct_product(factors);
}

std::optional<std::string> quotient_suite_violation(const Lattice& lat) {
  int n = lat.size();
  std::vector<Congruence> cons = all_congruences(lat);
  uint64_t total = cons.size();

  std::vector<Congruence> cover_principals;
  for (auto [a, b] : lat.covers())
    cover_principals.push_back(principal_congruence(lat, a, b));

  // atoms are minimal nontrivial congruences and all come from covers
  std::vector<Congruence> atoms;
  for (const Congruence& c : cons) {
    if (c.is_identity()) continue;
    bool minimal = true;
    for (const Congruence& other : cons) {
      if (!other.is_identity() && !(other == c) && other.refines(c)) {
        minimal = false;
        break;
      }
    }
    if (minimal) atoms.push_back(c);
  }
  if (n >= 2 && atoms.empty()) return "no congruence atoms";
  for (const Congruence& atom : atoms) {
    if (std::find(cover_principals.begin(), cover_principals.end(), atom) ==
        cover_principals.end())
      return "atom is not a cover principal: " + atom.to_string();
    Lattice quot = quotient(lat, atom).lattice;
    uint64_t quot_count = count_congruences(quot);
    if (2 * quot_count < total)
      return "atom quotient has too few congruences: " + atom.to_string();
  }

  for (auto [a, b] : lat.covers()) {
    Congruence theta = principal_congruence(lat, a, b);
    int quot_size = theta.block_count();
    bool narrows = is_narrows(lat, a, b);
    if (narrows != (quot_size == n - 1))
      return "narrows criterion failed at cover (" + std::to_string(a) + "," +
             std::to_string(b) + ")";
    if (narrows) {
      // collapsing a narrows merges exactly that pair
      if (!theta.same(a, b)) return "principal congruence misses its pair";
      for (int x = 0; x < n; ++x) {
        if (x == a || x == b) continue;
        if (theta.same(x, a))
          return "narrows congruence collapsed an extra element";
      }
    }
    if (quot_size == n - 2) {
      auto blocks_match = [&](int u, int v) {
        // blocks must be exactly {a,b}, {u,v}, singletons elsewhere
        if (!theta.same(u, v) || theta.same(a, u)) return false;
        for (int x = 0; x < n; ++x) {
          if (x == a || x == b || x == u || x == v) continue;
          if (theta.same(x, a) || theta.same(x, u)) return false;
        }
        return true;
      };
      bool explained = false;
      if (lat.upper_covers(a).size() >= 2) {
        for (int c : lat.upper_covers(a)) {
          if (c == b) continue;
          int bc = lat.join(b, c);
          bool cover_b = std::find(lat.upper_covers(b).begin(),
                                   lat.upper_covers(b).end(),
                                   bc) != lat.upper_covers(b).end();
          bool cover_c = std::find(lat.upper_covers(c).begin(),
                                   lat.upper_covers(c).end(),
                                   bc) != lat.upper_covers(c).end();
          if (cover_b && cover_c && blocks_match(c, bc)) {
            explained = true;
            break;
          }
        }
      }
      if (!explained && lat.lower_covers(b).size() >= 2) {
        for (int c : lat.lower_covers(b)) {
          if (c == a) continue;
          int ac = lat.meet(a, c);
          bool cover_a = std::find(lat.lower_covers(a).begin(),
                                   lat.lower_covers(a).end(),
                                   ac) != lat.lower_covers(a).end();
          bool cover_c = std::find(lat.lower_covers(c).begin(),
                                   lat.lower_covers(c).end(),
                                   ac) != lat.lower_covers(c).end();
          if (cover_a && cover_c && blocks_match(ac, c)) {
            explained = true;
            break;
          }
        }
      }
      if (!explained)
        return "size n-2 quotient without the doubled-cover shape at (" +
               std::to_string(a) + "," + std::to_string(b) + ")";
    }
  }
  return std::nullopt;
}

uint64_t count_of(const std::string& expr) {
  return count_congruences(build(expr));
}

}  // namespace

VerificationReport verify_paper(int max_n, int threads) {
  if (max_n < 2 || max_n > enumerate_max_n())
    throw SizeBound("verification bound must lie within the enumeration bound");
  VerificationReport report;
  report.max_n = max_n;
  CheckRunner runner{report, threads};

  runner.run(
      "census.5",
      "there are exactly 5 five-element lattices; their congruence counts "
      "are {2,5,8,8,16} with the expected witnesses",
      false, [&]() -> std::pair<bool, std::string> {
        CensusRecord record = census(5, threads);
        std::map<uint64_t, uint64_t> expected{{2, 1}, {5, 1}, {8, 2}, {16, 1}};
        if (record.total != 5 || record.histogram != expected)
          return {false, "histogram mismatch"};
        std::set<std::string> expected_codes;
        for (const std::string& expr :
             {"M3", "N5", "C(2)+B2", "B2+C(2)", "C(5)"})
          expected_codes.insert(canonical_code(build(expr)).hex());
        std::set<std::string> found;
        for (const CanonicalCode& code : enumerate_codes(5))
          found.insert(code.hex());
        if (found != expected_codes) return {false, "witness set mismatch"};
        return {true, "5 classes, counts {2,5,8,8,16}"};
      });

  runner.run(
      "census.6",
      "there are exactly 15 six-element lattices with congruence counts "
      "{2,3,3,3,4,4,7,7,8,10,10,16,16,16,32}; the two glued classes "
      "C(3)#(B2+C(2)) and C(3)#(C(2)+B2) have 3 congruences, since merging "
      "the bottom with an atom forces the side chain to collapse into the top",
      false, [&]() -> std::pair<bool, std::string> {
        CensusRecord record = census(6, threads);
        std::map<uint64_t, uint64_t> expected{{2, 1},  {3, 3},  {4, 2},
                                              {7, 2},  {8, 1},  {10, 2},
                                              {16, 3}, {32, 1}};
        if (record.total != 15 || record.histogram != expected)
          return {false, "histogram mismatch"};
        // the complete list of six-element lattices with computed counts
        std::vector<std::pair<std::string, uint64_t>> listing = {
            {"C(3)#C(3)#C(3)#C(3)", 2},
            {"C(3)#C(3)#C(4)", 3},
            {"M3+C(2)", 4},
            {"C(2)+M3", 4},
            {"C(3)#(B2+C(2))", 3},
            {"C(3)#(C(2)+B2)", 3},
            {"C(3)#C(5)", 7},
            {"C(4)#C(4)", 7},
            {"C(2)*C(3)", 8},
            {"N5+C(2)", 10},
            {"C(2)+N5", 10},
            {"B2+C(3)", 16},
            {"C(3)+B2", 16},
            {"C(2)+B2+C(2)", 16},
            {"C(6)", 32},
        };
        std::set<std::string> expected_codes, found;
        for (const auto& [expr, count] : listing) {
          Lattice lat = build(expr);
          if (count_congruences(lat) != count)
            return {false, expr + " does not have " + std::to_string(count) +
                               " congruences"};
          expected_codes.insert(canonical_code(lat).hex());
        }
        for (const CanonicalCode& code : enumerate_codes(6))
          found.insert(code.hex());
        if (found != expected_codes)
          return {false, "class list mismatch"};
        auto g3 = gncl(3, 6, threads), g4 = gncl(4, 6, threads),
             g5 = gncl(5, 6, threads);
        if (g3 != 10 || g4 != 8 || g5 != 7)
          return {false, "ranked counts mismatch"};
        return {true, "15 classes; ranks 3..5 give 10, 8, 7"};
      });

  if (max_n >= 7) {
    runner.run(
        "census.7.extremes",
        "seven-element extremes: rank 3 count 20 with 3 witnesses, rank 4 "
        "count 16 with 3 witnesses, rank 5 count 14 with 4 witnesses",
        false, [&]() -> std::pair<bool, std::string> {
          if (gncl(3, 7, threads) != 20) return {false, "rank 3 is not 20"};
          auto r3 = match_family(
              7, 20, {"N5+C(3)", "C(3)+N5", "C(2)+N5+C(2)"}, threads);
          if (!r3.first) return r3;
          if (gncl(4, 7, threads) != 16) return {false, "rank 4 is not 16"};
          auto r4 = match_family(
              7, 16, {"L2xL3+C(2)", "C(2)+L2xL3", "B2+B2"}, threads);
          if (!r4.first) return r4;
          if (gncl(5, 7, threads) != 14) return {false, "rank 5 is not 14"};
          auto r5 = match_family(7, 14,
                                 {"(C(3)#C(5))+C(2)", "C(2)+(C(3)#C(5))",
                                  "(C(4)#C(4))+C(2)", "C(2)+(C(4)#C(4))"},
                                 threads);
          if (!r5.first) return r5;
          return {true, "20/16/14 with witness sets of sizes 3/3/4"};
        });
  }

  runner.run(
      "largest.two_ranks",
      "the largest congruence count of an n-element lattice is 2^(n-1), "
      "attained only by the chain; for n>=4 the second largest is 2^(n-2), "
      "attained exactly by a rhombus between two chains",
      false, [&]() -> std::pair<bool, std::string> {
        std::ostringstream evidence;
        for (int n = 2; n <= max_n; ++n) {
          if (gncl(1, n, threads) != (uint64_t{1} << (n - 1)))
            return {false, "rank 1 mismatch at n=" + std::to_string(n)};
          auto r1 = match_family(n, uint64_t{1} << (n - 1), family_rank1(n),
                                 threads);
          if (!r1.first)
            return {false, "n=" + std::to_string(n) + ": " + r1.second};
          if (n >= 4) {
            if (gncl(2, n, threads) != (uint64_t{1} << (n - 2)))
              return {false, "rank 2 mismatch at n=" + std::to_string(n)};
            auto r2 = match_family(n, uint64_t{1} << (n - 2), family_rank2(n),
                                   threads);
            if (!r2.first)
              return {false, "n=" + std::to_string(n) + ": " + r2.second};
          }
        }
        evidence << "checked n=2.." << max_n;
        return {true, evidence.str()};
      });

  runner.run(
      "rank3.value_and_shape",
      "for n>=5 the third largest congruence count is 5*2^(n-5), attained "
      "exactly by a pentagon between two chains (n-4 classes)",
      false, [&]() -> std::pair<bool, std::string> {
        for (int n = 5; n <= max_n; ++n) {
          uint64_t value = uint64_t{5} << (n - 5);
          if (gncl(3, n, threads) != value)
            return {false, "rank 3 mismatch at n=" + std::to_string(n)};
          auto match = match_family(n, value, family_rank3(n), threads);
          if (!match.first)
            return {false, "n=" + std::to_string(n) + ": " + match.second};
          if (census(n, threads).histogram.at(value) !=
              static_cast<uint64_t>(n - 4))
            return {false, "family size is not n-4 at n=" + std::to_string(n)};
        }
        return {true, "checked n=5.." + std::to_string(max_n)};
      });

  runner.run(
      "rank4.value_and_shape",
      "for n>=6 the fourth largest congruence count is 2^(n-3), attained "
      "exactly by a 2x3 grid between chains or (n>=7) two rhombi separated "
      "by chains",
      false, [&]() -> std::pair<bool, std::string> {
        if (max_n < 6) return {true, "below threshold"};
        for (int n = 6; n <= max_n; ++n) {
          uint64_t value = uint64_t{1} << (n - 3);
          if (gncl(4, n, threads) != value)
            return {false, "rank 4 mismatch at n=" + std::to_string(n)};
          auto match = match_family(n, value, family_rank4(n), threads);
          if (!match.first)
            return {false, "n=" + std::to_string(n) + ": " + match.second};
        }
        return {true, "checked n=6.." + std::to_string(max_n)};
      });

  runner.run(
      "rank5.value",
      "for n>=6 the fifth largest congruence count is 7*2^(n-6)",
      false, [&]() -> std::pair<bool, std::string> {
        if (max_n < 6) return {true, "below threshold"};
        for (int n = 6; n <= max_n; ++n) {
          if (gncl(5, n, threads) != (uint64_t{7} << (n - 6)))
            return {false, "rank 5 mismatch at n=" + std::to_string(n)};
        }
        return {true, "checked n=6.." + std::to_string(max_n)};
      });

  runner.run(
      "con_lattice.shapes",
      "congruence lattices of the extremal classes: Boolean of exponent "
      "n-1, n-2 and n-3 at ranks 1, 2 and 4; the rank 3 classes give "
      "2^(n-5) copies of the pentagon-shaped 5-element congruence lattice",
      false, [&]() -> std::pair<bool, std::string> {
        int checked = 0;
        for (int n = 5; n <= max_n; ++n) {
          for (const Lattice& lat : lnc(1, n, threads)) {
            if (!is_boolean_of_exponent(congruence_lattice(lat).lattice, n - 1))
              return {false, "rank 1 shape mismatch at n=" + std::to_string(n)};
            ++checked;
          }
          for (const Lattice& lat : lnc(2, n, threads)) {
            if (!is_boolean_of_exponent(congruence_lattice(lat).lattice, n - 2))
              return {false, "rank 2 shape mismatch at n=" + std::to_string(n)};
            ++checked;
          }
          if (gncl(3, n, threads) == uint64_t{5} << (n - 5)) {
            Lattice target = rank3_con_shape(n);
            for (const Lattice& lat : lnc(3, n, threads)) {
              if (!is_isomorphic(congruence_lattice(lat).lattice, target))
                return {false,
                        "rank 3 shape mismatch at n=" + std::to_string(n)};
              ++checked;
            }
          }
          if (n >= 6 && gncl(4, n, threads) == uint64_t{1} << (n - 3)) {
            for (const Lattice& lat : lnc(4, n, threads)) {
              if (!is_boolean_of_exponent(congruence_lattice(lat).lattice,
                                          n - 3))
                return {false,
                        "rank 4 shape mismatch at n=" + std::to_string(n)};
              ++checked;
            }
          }
        }
        return {true, std::to_string(checked) + " witnesses checked"};
      });

  runner.run(
      "cfi.recipe_table",
      "every recipe in the fixed construction table evaluates to its "
      "claimed congruence count and size, with filter and ideal counts "
      "equal to the size",
      false, [&]() -> std::pair<bool, std::string> {
        int rows = 0;
        for (const CfiRecipe& recipe : cfi_recipe_table()) {
          Lattice lat = build(recipe.expr);
          uint64_t count = count_congruences(lat);
          size_t filter_count = filters(lat).size();
          size_t ideal_count = ideals(lat).size();
          if (lat.size() != recipe.n || count != recipe.k ||
              filter_count != static_cast<size_t>(recipe.n) ||
              ideal_count != static_cast<size_t>(recipe.n)) {
            return {false, recipe.expr + " gives (" + std::to_string(count) +
                               "," + std::to_string(lat.size()) + "), wanted (" +
                               std::to_string(recipe.k) + "," +
                               std::to_string(recipe.n) + ")"};
          }
          ++rows;
        }
        return {true, std::to_string(rows) + " recipes verified"};
      });

  runner.run(
      "cfi.doubling",
      "stacking a 2-chain on top doubles the congruence count",
      false, [&]() -> std::pair<bool, std::string> {
        std::mt19937 rng(20240001);
        for (int i = 0; i < 200; ++i) {
          LatticeExpr expr = random_expr(rng, 11);
          Lattice lat = build(expr);
          Lattice stacked = ordinal_sum(lat, chain(2));
          if (count_congruences(stacked) != 2 * count_congruences(lat))
            return {false, "failed for " + render_expr(expr)};
        }
        return {true, "200 random expressions"};
      });

  if (max_n >= 7) {
    runner.run(
        "cfi.range7",
        "every count in 2..8 and every power of two up to 64 occurs among "
        "the congruence counts of seven-element lattices",
        false, [&]() -> std::pair<bool, std::string> {
          CensusRecord record = census(7, threads);
          for (uint64_t k = 2; k <= 8; ++k)
            if (!record.histogram.count(k))
              return {false, std::to_string(k) + " missing"};
          for (uint64_t k = 2; k <= 64; k *= 2)
            if (!record.histogram.count(k))
              return {false, std::to_string(k) + " missing"};
          return {true, "counts 2..8 and 2,4,...,64 all attained"};
        });
  }

  runner.run(
      "cfi.iterated_sums",
      "ordinal sums multiply congruence counts and merge one element: "
      "squaring a table recipe of size 7 yields (k^2, 13, 13)",
      false, [&]() -> std::pair<bool, std::string> {
        int pairs = 0;
        for (const CfiRecipe& recipe : cfi_recipe_table()) {
          if (recipe.n != 7) continue;
          Lattice doubled =
              build("(" + recipe.expr + ")+(" + recipe.expr + ")");
          if (doubled.size() != 13 ||
              count_congruences(doubled) != recipe.k * recipe.k ||
              filters(doubled).size() != 13 || ideals(doubled).size() != 13)
            return {false, "failed for " + recipe.expr};
          ++pairs;
        }
        return {true, std::to_string(pairs) + " squared recipes verified"};
      });

  runner.run(
      "quotient_atoms.exhaustive",
      "over all lattices with at most min(7,max_n) elements: congruence "
      "atoms come from covers, atom quotients keep at least half the "
      "congruences, collapsing a cover loses one element exactly for "
      "narrows, and two-element losses show the doubled-cover shape",
      false, [&]() -> std::pair<bool, std::string> {
        uint64_t examined = 0;
        for (int n = 2; n <= std::min(7, max_n); ++n) {
          for (const Lattice& lat : enumerate_lattices(n)) {
            if (auto violation = quotient_suite_violation(lat))
              return {false, "n=" + std::to_string(n) + ": " + *violation};
            ++examined;
          }
        }
        return {true, std::to_string(examined) + " lattices examined"};
      });

  runner.run(
      "quotient_atoms.random",
      "the same quotient and atom properties hold for 500 random composed "
      "lattices with at most 12 elements",
      false, [&]() -> std::pair<bool, std::string> {
        std::mt19937 rng(20240002);
        for (int i = 0; i < 500; ++i) {
          LatticeExpr expr = random_expr(rng, 12);
          Lattice lat = build(expr);
          if (lat.size() < 2) continue;
          if (auto violation = quotient_suite_violation(lat))
            return {false, render_expr(expr) + ": " + *violation};
        }
        return {true, "500 random lattices examined"};
      });

  runner.run(
      "product.con_count",
      "congruence counts multiply under direct products",
      false, [&]() -> std::pair<bool, std::string> {
        std::mt19937 rng(20240003);
        int done = 0;
        while (done < 200) {
          LatticeExpr ea = random_expr(rng, 6);
          LatticeExpr eb = random_expr(rng, 6);
          if (expr_size(ea) * expr_size(eb) > 16) continue;
          Lattice a = build(ea), b = build(eb);
          if (count_congruences(direct_product({a, b})) !=
              count_congruences(a) * count_congruences(b))
            return {false, render_expr(ea) + " * " + render_expr(eb)};
          ++done;
        }
        return {true, "200 random pairs"};
      });

  runner.run(
      "ordinal.con_count",
      "congruence counts multiply under ordinal sums",
      false, [&]() -> std::pair<bool, std::string> {
        std::mt19937 rng(20240004);
        for (int i = 0; i < 200; ++i) {
          LatticeExpr ea = random_expr(rng, 7);
          LatticeExpr eb = random_expr(rng, 7);
          Lattice a = build(ea), b = build(eb);
          if (count_congruences(ordinal_sum(a, b)) !=
              count_congruences(a) * count_congruences(b))
            return {false, render_expr(ea) + " + " + render_expr(eb)};
        }
        return {true, "200 random pairs"};
      });

  runner.run(
      "horizontal.con_count",
      "gluing boxed summands at shared bounds: two summands give k1*k2+3 "
      "congruences, three or more give 1+prod(ki)",
      false, [&]() -> std::pair<bool, std::string> {
        std::mt19937 rng(20240005);
        for (int i = 0; i < 200; ++i) {
          int t = std::uniform_int_distribution<int>(2, 4)(rng);
          std::vector<LatticeExpr> parts;
          uint64_t product = 1;
          for (int j = 0; j < t; ++j) {
            LatticeExpr inner = random_expr(rng, 4);
            product *= count_congruences(build(inner));
            parts.push_back(LatticeExpr::ordinal(
                {LatticeExpr::make_chain(2), std::move(inner),
                 LatticeExpr::make_chain(2)}));
          }
          Lattice glued = build(LatticeExpr::horizontal(std::move(parts)));
          uint64_t expected = t == 2 ? product + 3 : product + 1;
          if (count_congruences(glued) != expected)
            return {false, "failed at iteration " + std::to_string(i)};
        }
        return {true, "200 random glued sums"};
      });

  runner.run(
      "pinched_sum.con_count",
      "gluing a 3-chain across a bounded lattice M with meet-reducible "
      "bottom plus a new top yields s+2 congruences, where s counts the "
      "congruences of M keeping the bottom in a singleton block (merging "
      "the bottom upward forces the side chain into the top)",
      false, [&]() -> std::pair<bool, std::string> {
        std::mt19937 rng(20240006);
        int done = 0;
        while (done < 200) {
          LatticeExpr em = random_expr(rng, 8);
          Lattice m = build(em);
          if (atoms_of(m).size() < 2) continue;  // bottom must be meet-reducible
          uint64_t solo = 0;
          for (const Congruence& alpha : all_congruences(m)) {
            bool bottom_alone = true;
            for (int x = 1; x < m.size(); ++x)
              if (alpha.same(0, x)) { bottom_alone = false; break; }
            if (bottom_alone) ++solo;
          }
          Lattice glued = horizontal_sum({chain(3), ordinal_sum(m, chain(2))});
          if (count_congruences(glued) != solo + 2)
            return {false, render_expr(em)};
          ++done;
        }
        return {true, "200 random pinched sums"};
      });

  {
    std::vector<int> sizes;
    for (int n = 6; n <= std::min(max_n, 8); ++n) sizes.push_back(n);
    if (!sizes.empty()) {
      runner.run(
          "conjecture.rank5_shape",
          "conjectured: the lattices attaining 7*2^(n-6) congruences are "
          "exactly the two glued-summand families between chains",
          true, [&]() -> std::pair<bool, std::string> {
            for (int n : sizes) {
              auto value = gncl(5, n, threads);
              if (!value || *value != (uint64_t{7} << (n - 6)))
                return {false, "rank 5 value mismatch at n=" + std::to_string(n)};
              auto match =
                  match_family(n, *value, family_rank5_conjectured(n), threads);
              if (!match.first)
                return {false, "n=" + std::to_string(n) + ": " + match.second};
            }
            std::ostringstream out;
            out << "agreement for n=6.." << sizes.back();
            return {true, out.str()};
          });
    }
  }

  return report;
}

}  // namespace conlat
