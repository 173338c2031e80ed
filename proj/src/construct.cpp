#include "conlat/construct.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace conlat {

Lattice chain(int k) {
  if (k < 1) throw ConstructError("chain needs at least one element");
  CoverList covers;
  for (int i = 0; i + 1 < k; ++i) covers.emplace_back(i, i + 1);
  return Lattice::validate(k, covers);
}

Lattice ordinal_sum(const Lattice& lower, const Lattice& upper) {
  int nl = lower.size(), nu = upper.size();
  int n = nl + nu - 1;
  CoverList covers = lower.covers();
  for (auto [a, b] : upper.covers())
    covers.emplace_back(a + nl - 1, b + nl - 1);
  Lattice result = Lattice::validate(n, covers);

  std::vector<std::string> names(n);
  for (int i = 0; i < nl - 1; ++i) names[i] = "l." + lower.label(i);
  names[nl - 1] = "l." + lower.label(nl - 1) + "|u." + upper.label(0);
  for (int i = 1; i < nu; ++i) names[nl - 1 + i] = "u." + upper.label(i);
  return result.with_names(std::move(names));
}

Lattice horizontal_sum(const std::vector<Lattice>& summands) {
  if (summands.size() < 2)
    throw ConstructError("horizontal sum needs at least two summands");
  for (const Lattice& s : summands) {
    if (s.size() <= 2)
      throw SummandTooSmall("horizontal-sum summands must have size > 2");
  }
  int n = 2;
  for (const Lattice& s : summands) n += s.size() - 2;
  int top = n - 1;

  CoverList covers;
  std::vector<std::string> names(n);
  names[0] = "0";
  names[top] = "1";
  int offset = 1;  // next free interior index
  for (size_t k = 0; k < summands.size(); ++k) {
    const Lattice& s = summands[k];
    int m = s.size();
    auto map = [&](int e) {
      if (e == 0) return 0;
      if (e == m - 1) return top;
      return offset + e - 1;
    };
    for (auto [a, b] : s.covers()) covers.emplace_back(map(a), map(b));
    for (int e = 1; e < m - 1; ++e)
      names[map(e)] = std::to_string(k) + "." + s.label(e);
    offset += m - 2;
  }
  std::sort(covers.begin(), covers.end());
  covers.erase(std::unique(covers.begin(), covers.end()), covers.end());
  return Lattice::validate(n, covers).with_names(std::move(names));
}

namespace {

Lattice product_pair(const Lattice& a, const Lattice& b) {
  int na = a.size(), nb = b.size();
  int n = na * nb;
  std::vector<uint8_t> leq(static_cast<size_t>(n) * n, 0);
  auto id = [nb](int x, int y) { return x * nb + y; };
  for (int x1 = 0; x1 < na; ++x1)
    for (int y1 = 0; y1 < nb; ++y1)
      for (int x2 = 0; x2 < na; ++x2)
        for (int y2 = 0; y2 < nb; ++y2)
          if (a.leq(x1, x2) && b.leq(y1, y2))
            leq[id(x1, y1) * n + id(x2, y2)] = 1;
  auto [lat, index_of] = lattice_from_relation(n, leq);
  std::vector<std::string> names(n);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y)
      names[index_of[id(x, y)]] = "(" + a.label(x) + "," + b.label(y) + ")";
  return lat.with_names(std::move(names));
}

}  // namespace

Lattice direct_product(const std::vector<Lattice>& factors) {
  if (factors.empty())
    throw ConstructError("product needs at least one factor");
  Lattice result = factors[0];
  for (size_t i = 1; i < factors.size(); ++i)
    result = product_pair(result, factors[i]);
  return result;
}

namespace {

Lattice make_named(const std::string& id) {
  if (id == "B2")
    return Lattice::validate(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}})
        .with_names({"0", "a", "b", "1"});
  if (id == "M3")
    return Lattice::validate(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}})
        .with_names({"0", "a", "b", "c", "1"});
  if (id == "N5")
    return Lattice::validate(5, {{0, 1}, {0, 2}, {2, 3}, {1, 4}, {3, 4}})
        .with_names({"0", "a", "b", "c", "1"});
  if (id == "L2xL3") return direct_product({chain(2), chain(3)});
  // The three pentagon-rhombus gluings. Cover lists transcribed from the
  // Hasse diagrams; the doubling pair sits at the named elements a, b.
  if (id == "G")
    return Lattice::validate(
               7, {{0, 1}, {1, 2}, {0, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 6}, {5, 6}})
        .with_names({"0", "a", "b", "u", "v", "w", "1"});
  if (id == "H")
    return Lattice::validate(
               7, {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 6}, {5, 6}})
        .with_names({"0", "a", "u", "b", "v", "w", "1"});
  if (id == "K")
    return Lattice::validate(
               7, {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 4}, {4, 6}, {5, 6}})
        .with_names({"0", "a", "u", "b", "v", "w", "1"});
  if (id == "Gp") return dual(make_named("G"));
  if (id == "Hp") return dual(make_named("H"));
  if (id == "Kp") return dual(make_named("K"));
  throw UnknownName("unknown lattice name: " + id);
}

}  // namespace

Lattice named(const std::string& id) { return make_named(id); }

const std::vector<std::string>& named_ids() {
  static const std::vector<std::string> ids = {
      "M3", "N5", "B2", "L2xL3", "G", "H", "K", "Gp", "Hp", "Kp"};
  return ids;
}

LatticeExpr LatticeExpr::make_chain(int k) {
  if (k < 1) throw ConstructError("chain needs at least one element");
  LatticeExpr e;
  e.kind = Kind::Chain;
  e.chain_size = k;
  return e;
}

LatticeExpr LatticeExpr::make_named(std::string id) {
  LatticeExpr e;
  e.kind = Kind::Named;
  e.name = std::move(id);
  return e;
}

namespace {

LatticeExpr make_nary(LatticeExpr::Kind kind, std::vector<LatticeExpr> parts) {
  if (parts.empty()) throw ConstructError("sum or product needs arguments");
  if (parts.size() == 1) return parts[0];
  LatticeExpr e;
  e.kind = kind;
  // n-ary sums flatten: both sums are associative, so nesting is noise.
  for (LatticeExpr& p : parts) {
    if (p.kind == kind) {
      for (LatticeExpr& c : p.children) e.children.push_back(std::move(c));
    } else {
      e.children.push_back(std::move(p));
    }
  }
  return e;
}

}  // namespace

LatticeExpr LatticeExpr::ordinal(std::vector<LatticeExpr> parts) {
  return make_nary(Kind::OrdinalSum, std::move(parts));
}
LatticeExpr LatticeExpr::horizontal(std::vector<LatticeExpr> parts) {
  return make_nary(Kind::HorizontalSum, std::move(parts));
}
LatticeExpr LatticeExpr::product(std::vector<LatticeExpr> parts) {
  return make_nary(Kind::Product, std::move(parts));
}
LatticeExpr LatticeExpr::dual_of(LatticeExpr inner) {
  LatticeExpr e;
  e.kind = Kind::Dual;
  e.children.push_back(std::move(inner));
  return e;
}

namespace {

struct Parser {
  const std::string& text;
  size_t pos = 0;

  explicit Parser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c))
      throw SyntaxError(std::string("expected '") + c + "'", pos);
  }

  LatticeExpr parse() {
    LatticeExpr e = expr();
    skip_ws();
    if (pos != text.size()) throw SyntaxError("trailing input", pos);
    return e;
  }

  LatticeExpr expr() {
    std::vector<LatticeExpr> parts{hsum()};
    while (eat('+')) parts.push_back(hsum());
    return LatticeExpr::ordinal(std::move(parts));
  }

  LatticeExpr hsum() {
    std::vector<LatticeExpr> parts{prod()};
    while (eat('#')) parts.push_back(prod());
    return LatticeExpr::horizontal(std::move(parts));
  }

  LatticeExpr prod() {
    std::vector<LatticeExpr> parts{atom()};
    while (eat('*')) parts.push_back(atom());
    return LatticeExpr::product(std::move(parts));
  }

  LatticeExpr atom() {
    skip_ws();
    if (pos >= text.size()) throw SyntaxError("unexpected end of input", pos);
    if (text[pos] == '(') {
      ++pos;
      LatticeExpr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(text[pos]))) {
      size_t start = pos;
      while (pos < text.size() &&
             std::isalnum(static_cast<unsigned char>(text[pos])))
        ++pos;
      std::string word = text.substr(start, pos - start);
      if (word == "C") {
        expect('(');
        int k = integer();
        expect(')');
        if (k < 1) throw SyntaxError("chain size must be at least 1", start);
        return LatticeExpr::make_chain(k);
      }
      if (word == "dual") {
        expect('(');
        LatticeExpr inner = expr();
        expect(')');
        return LatticeExpr::dual_of(std::move(inner));
      }
      const auto& ids = named_ids();
      if (std::find(ids.begin(), ids.end(), word) == ids.end())
        throw SyntaxError("unknown name '" + word + "'", start);
      return LatticeExpr::make_named(word);
    }
    throw SyntaxError("expected an expression", pos);
  }

  int integer() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) throw SyntaxError("expected a number", pos);
    long value = std::stol(text.substr(start, pos - start));
    if (value > 1000000) throw SyntaxError("number too large", start);
    return static_cast<int>(value);
  }
};

int precedence(LatticeExpr::Kind kind) {
  switch (kind) {
    case LatticeExpr::Kind::OrdinalSum: return 0;
    case LatticeExpr::Kind::HorizontalSum: return 1;
    case LatticeExpr::Kind::Product: return 2;
    default: return 3;
  }
}

void render(const LatticeExpr& e, std::ostringstream& out, int parent_prec) {
  int prec = precedence(e.kind);
  switch (e.kind) {
    case LatticeExpr::Kind::Chain:
      out << "C(" << e.chain_size << ")";
      return;
    case LatticeExpr::Kind::Named:
      out << e.name;
      return;
    case LatticeExpr::Kind::Dual:
      out << "dual(";
      render(e.children[0], out, 0);
      out << ")";
      return;
    default: {
      char op = e.kind == LatticeExpr::Kind::OrdinalSum   ? '+'
                : e.kind == LatticeExpr::Kind::HorizontalSum ? '#'
                                                             : '*';
      bool parens = prec < parent_prec;
      if (parens) out << "(";
      for (size_t i = 0; i < e.children.size(); ++i) {
        if (i) out << op;
        render(e.children[i], out, prec + 1);
      }
      if (parens) out << ")";
      return;
    }
  }
}

}  // namespace

LatticeExpr parse_expr(const std::string& text) { return Parser(text).parse(); }

std::string render_expr(const LatticeExpr& expr) {
  std::ostringstream out;
  render(expr, out, 0);
  return out.str();
}

int expr_size(const LatticeExpr& e) {
  switch (e.kind) {
    case LatticeExpr::Kind::Chain:
      return e.chain_size;
    case LatticeExpr::Kind::Named:
      return named(e.name).size();
    case LatticeExpr::Kind::Dual:
      return expr_size(e.children[0]);
    case LatticeExpr::Kind::OrdinalSum: {
      int n = 1;
      for (const LatticeExpr& c : e.children) n += expr_size(c) - 1;
      return n;
    }
    case LatticeExpr::Kind::HorizontalSum: {
      int n = 2;
      for (const LatticeExpr& c : e.children) n += expr_size(c) - 2;
      return n;
    }
    case LatticeExpr::Kind::Product: {
      int n = 1;
      for (const LatticeExpr& c : e.children) n *= expr_size(c);
      return n;
    }
  }
  throw ConstructError("unreachable expression kind");
}

Lattice build(const LatticeExpr& e) {
  switch (e.kind) {
    case LatticeExpr::Kind::Chain:
      return chain(e.chain_size);
    case LatticeExpr::Kind::Named:
      return named(e.name);
    case LatticeExpr::Kind::Dual:
      return dual(build(e.children[0]));
    case LatticeExpr::Kind::OrdinalSum: {
      Lattice acc = build(e.children[0]);
      for (size_t i = 1; i < e.children.size(); ++i)
        acc = ordinal_sum(acc, build(e.children[i]));
      return acc;
    }
    case LatticeExpr::Kind::HorizontalSum: {
      std::vector<Lattice> parts;
      parts.reserve(e.children.size());
      for (const LatticeExpr& c : e.children) parts.push_back(build(c));
      return horizontal_sum(parts);
    }
    case LatticeExpr::Kind::Product: {
      std::vector<Lattice> parts;
      parts.reserve(e.children.size());
      for (const LatticeExpr& c : e.children) parts.push_back(build(c));
      return direct_product(parts);
    }
  }
  throw ConstructError("unreachable expression kind");
}

Lattice build(const std::string& text) { return build(parse_expr(text)); }

}  // namespace conlat
