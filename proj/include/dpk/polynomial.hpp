#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "dpk/error.hpp"
#include "dpk/field.hpp"

namespace dpk {

inline constexpr int kMaxVars = 8;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};

  [[nodiscard]] int degree() const { return std::accumulate(e.begin(), e.end(), 0); }
  [[nodiscard]] int weighted_degree(const std::vector<int>& w) const {
    int d = 0;
    for (std::size_t i = 0; i < w.size(); ++i) d += w[i] * e[i];
    return d;
  }
  [[nodiscard]] bool is_one() const { return degree() == 0; }
  friend bool operator==(const Monomial&, const Monomial&) = default;

  friend Monomial operator*(Monomial a, const Monomial& b) {
    for (int i = 0; i < kMaxVars; ++i) {
      require(a.e[i] + b.e[i] < 65536, ErrorCode::TooLarge, "exponent overflow");
      a.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
    }
    return a;
  }
  /// a divides b
  [[nodiscard]] bool divides(const Monomial& b) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i] > b.e[i]) return false;
    return true;
  }
  /// b / a, assuming a | b
  [[nodiscard]] Monomial quotient_of(const Monomial& b) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(b.e[i] - e[i]);
    return r;
  }
  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
    return r;
  }
  static bool coprime(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < kMaxVars; ++i)
      if (a.e[i] && b.e[i]) return false;
    return true;
  }
  static Monomial variable(int i, int power = 1) {
    Monomial m;
    m.e[i] = static_cast<std::uint16_t>(power);
    return m;
  }
};

/// Grevlex is the default. Elim1 orders by the exponent of the first variable, then grevlex on
/// the rest; it eliminates the first variable.
enum class MonomialOrder { Grevlex, Lex, Elim1 };

inline int grevlex_compare(const Monomial& a, const Monomial& b, int from, int n) {
  int da = 0, db = 0;
  for (int i = from; i < n; ++i) da += a.e[i], db += b.e[i];
  if (da != db) return da < db ? -1 : 1;
  for (int i = n - 1; i >= from; --i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
  return 0;
}

/// Three-way comparison: negative when a < b.
inline int compare(const Monomial& a, const Monomial& b, MonomialOrder order, int n) {
  switch (order) {
    case MonomialOrder::Lex:
      for (int i = 0; i < n; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
      return 0;
    case MonomialOrder::Elim1:
      if (a.e[0] != b.e[0]) return a.e[0] < b.e[0] ? -1 : 1;
      return grevlex_compare(a, b, 1, n);
    case MonomialOrder::Grevlex:
      break;
  }
  return grevlex_compare(a, b, 0, n);
}

template <typename F>
class MultiPoly {
 public:
  using Elem = typename F::Elem;
  using Term = std::pair<Monomial, Elem>;

  MultiPoly() = default;
  MultiPoly(F field, std::vector<std::string> vars, MonomialOrder order = MonomialOrder::Grevlex)
      : field_(std::move(field)), vars_(std::move(vars)), order_(order) {
    require(!vars_.empty() && vars_.size() <= static_cast<std::size_t>(kMaxVars), ErrorCode::DimensionError,
            "between 1 and 8 variables supported");
  }

  static MultiPoly constant(const F& field, const std::vector<std::string>& vars, const Elem& c,
                            MonomialOrder order = MonomialOrder::Grevlex) {
    MultiPoly p(field, vars, order);
    if (!field.is_zero(c)) p.terms_.push_back({Monomial{}, c});
    return p;
  }
  static MultiPoly variable(const F& field, const std::vector<std::string>& vars, int i,
                            MonomialOrder order = MonomialOrder::Grevlex) {
    MultiPoly p(field, vars, order);
    require(i >= 0 && i < static_cast<int>(vars.size()), ErrorCode::DimensionError, "variable index out of range");
    p.terms_.push_back({Monomial::variable(i), field.one()});
    return p;
  }
  /// Builds from arbitrary terms: sorts, merges equal monomials, drops zeros.
  static MultiPoly from_terms(const F& field, const std::vector<std::string>& vars, std::vector<Term> terms,
                              MonomialOrder order = MonomialOrder::Grevlex) {
    MultiPoly p(field, vars, order);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  [[nodiscard]] const F& field() const { return field_; }
  [[nodiscard]] const std::vector<std::string>& vars() const { return vars_; }
  [[nodiscard]] int nvars() const { return static_cast<int>(vars_.size()); }
  [[nodiscard]] MonomialOrder order() const { return order_; }
  /// Terms sorted by decreasing monomial order.
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const Monomial& leading_monomial() const {
    require(!terms_.empty(), ErrorCode::InternalError, "zero polynomial has no leading term");
    return terms_.front().first;
  }
  [[nodiscard]] const Elem& leading_coeff() const {
    require(!terms_.empty(), ErrorCode::InternalError, "zero polynomial has no leading term");
    return terms_.front().second;
  }
  [[nodiscard]] Elem coefficient(const Monomial& m) const {
    for (const auto& [mono, c] : terms_)
      if (mono == m) return c;
    return field_.zero();
  }
  [[nodiscard]] int total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.first.degree());
    return d;
  }
  /// Common weighted degree of all terms, or nullopt if not weighted-homogeneous.
  [[nodiscard]] std::optional<int> homogeneous_degree(const std::vector<int>& weights = {}) const {
    auto w = weights.empty() ? std::vector<int>(vars_.size(), 1) : weights;
    require(w.size() == vars_.size(), ErrorCode::DimensionError, "weight vector length mismatch");
    std::optional<int> d;
    for (const auto& t : terms_) {
      const int e = t.first.weighted_degree(w);
      if (d && *d != e) return std::nullopt;
      d = e;
    }
    return d ? d : std::optional<int>(0);
  }
  [[nodiscard]] bool is_homogeneous(const std::vector<int>& weights = {}) const {
    return homogeneous_degree(weights).has_value();
  }

  [[nodiscard]] MultiPoly with_order(MonomialOrder order) const {
    MultiPoly p = *this;
    p.order_ = order;
    p.sort_terms();
    return p;
  }

  [[nodiscard]] MultiPoly scaled(const Elem& c) const {
    MultiPoly p(field_, vars_, order_);
    if (field_.is_zero(c)) return p;
    p.terms_.reserve(terms_.size());
    for (const auto& [m, a] : terms_) p.terms_.push_back({m, field_.mul(a, c)});
    return p;
  }
  [[nodiscard]] MultiPoly monic() const { return is_zero() ? *this : scaled(field_.inv(leading_coeff())); }
  [[nodiscard]] MultiPoly times_term(const Monomial& m, const Elem& c) const {
    MultiPoly p(field_, vars_, order_);
    if (field_.is_zero(c)) return p;
    p.terms_.reserve(terms_.size());
    for (const auto& [mono, a] : terms_) p.terms_.push_back({mono * m, field_.mul(a, c)});
    return p;
  }

  /// this + c * m * g, by a single merge of sorted term lists.
  [[nodiscard]] MultiPoly add_multiple(const MultiPoly& g, const Monomial& m, const Elem& c) const {
    check_compatible(g);
    MultiPoly r(field_, vars_, order_);
    r.terms_.reserve(terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    const int n = nvars();
    while (i < terms_.size() || j < g.terms_.size()) {
      if (j == g.terms_.size()) {
        r.terms_.push_back(terms_[i++]);
        continue;
      }
      const Monomial gm = g.terms_[j].first * m;
      if (i == terms_.size()) {
        r.terms_.push_back({gm, field_.mul(c, g.terms_[j++].second)});
        continue;
      }
      const int cmp = compare(terms_[i].first, gm, order_, n);
      if (cmp > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (cmp < 0) {
        r.terms_.push_back({gm, field_.mul(c, g.terms_[j++].second)});
      } else {
        auto s = field_.add(terms_[i++].second, field_.mul(c, g.terms_[j++].second));
        if (!field_.is_zero(s)) r.terms_.push_back({gm, std::move(s)});
      }
    }
    return r;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    return a.add_multiple(b, Monomial{}, a.field_.one());
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    return a.add_multiple(b, Monomial{}, a.field_.neg(a.field_.one()));
  }
  MultiPoly operator-() const { return scaled(field_.neg(field_.one())); }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly r(a.field_, a.vars_, a.order_);
    for (const auto& [m, c] : b.terms_) r = r.add_multiple(a, m, c);
    return r;
  }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ != b.vars_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].first == b.terms_[i].first) || !(a.terms_[i].second == b.terms_[i].second)) return false;
    return true;
  }

  [[nodiscard]] MultiPoly pow(int e) const {
    MultiPoly r = constant(field_, vars_, field_.one(), order_);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  [[nodiscard]] MultiPoly derivative(int var) const {
    require(var >= 0 && var < nvars(), ErrorCode::DimensionError, "variable index out of range");
    std::vector<Term> t;
    for (const auto& [m, c] : terms_) {
      if (m.e[var] == 0) continue;
      Monomial d = m;
      --d.e[var];
      t.push_back({d, field_.mul(c, field_.from_int(BigInt(m.e[var])))});
    }
    return from_terms(field_, vars_, std::move(t), order_);
  }

  [[nodiscard]] Elem evaluate(const std::vector<Elem>& point) const {
    require(point.size() == vars_.size(), ErrorCode::DimensionError, "point has the wrong length");
    Elem acc = field_.zero();
    for (const auto& [m, c] : terms_) {
      Elem t = c;
      for (int i = 0; i < nvars(); ++i)
        for (int k = 0; k < m.e[i]; ++k) t = field_.mul(t, point[i]);
      acc = field_.add(acc, t);
    }
    return acc;
  }

  /// Substitutes polynomials (same field/vars) for each variable.
  [[nodiscard]] MultiPoly substitute(const std::vector<MultiPoly>& images) const {
    require(images.size() == vars_.size(), ErrorCode::DimensionError, "substitution has the wrong length");
    MultiPoly r(field_, images.front().vars(), order_);
    for (const auto& [m, c] : terms_) {
      MultiPoly t = constant(field_, r.vars(), c, order_);
      for (int i = 0; i < nvars(); ++i)
        for (int k = 0; k < m.e[i]; ++k) t = t * images[i];
      r = r + t;
    }
    return r;
  }

  /// Coefficient-wise image in another field (e.g. reduction mod p).
  template <typename G, typename Map>
  [[nodiscard]] MultiPoly<G> map_coefficients(const G& target, Map&& f) const {
    std::vector<typename MultiPoly<G>::Term> t;
    for (const auto& [m, c] : terms_) t.push_back({m, f(c)});
    return MultiPoly<G>::from_terms(target, vars_, std::move(t), order_);
  }

  /// "3*x^2*y - w^3"; accepted back by parse_polynomial.
  [[nodiscard]] std::string to_string() const { return render(true); }
  /// Display form without '*': "3x^2y - w^3".
  [[nodiscard]] std::string pretty() const { return render(false); }

 private:
  void check_compatible(const MultiPoly& g) const {
    require(vars_ == g.vars_, ErrorCode::DimensionError, "polynomials over different variables");
    require(order_ == g.order_, ErrorCode::InternalError, "polynomials with different monomial orders");
  }
  void sort_terms() {
    const int n = nvars();
    const auto ord = order_;
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& a, const Term& b) { return compare(a.first, b.first, ord, n) > 0; });
  }
  void normalize() {
    sort_terms();
    std::vector<Term> out;
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first) {
        out.back().second = field_.add(out.back().second, t.second);
      } else {
        out.push_back(std::move(t));
      }
    }
    std::erase_if(out, [&](const Term& t) { return field_.is_zero(t.second); });
    terms_ = std::move(out);
  }

  std::string render(bool stars) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& [m, c0] = terms_[i];
      Elem c = c0;
      bool negative = false;
      if constexpr (std::is_same_v<F, RationalField>) {
        if (c < 0) negative = true, c = -c;
      }
      if (i == 0) {
        s += negative ? "-" : "";
      } else {
        s += negative ? " - " : " + ";
      }
      std::string mono;
      for (int v = 0; v < nvars(); ++v) {
        if (!m.e[v]) continue;
        if (stars && !mono.empty()) mono += "*";
        mono += vars_[v];
        if (m.e[v] > 1) mono += "^" + std::to_string(m.e[v]);
      }
      if (mono.empty()) {
        s += field_.to_string(c);
      } else if (field_.is_one(c)) {
        s += mono;
      } else {
        s += field_.to_string(c) + (stars ? "*" : "") + mono;
      }
    }
    return s;
  }

  F field_{};
  std::vector<std::string> vars_;
  MonomialOrder order_ = MonomialOrder::Grevlex;
  std::vector<Term> terms_;
};

/// Grammar (whitespace ignored):
///   poly   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := integer ['/' integer] | variable ['^' integer] | '(' poly ')' ['^' integer]
/// Variables are the declared names; juxtaposition such as "3x" is rejected.
template <typename F>
MultiPoly<F> parse_polynomial(const std::string& text, const F& field, const std::vector<std::string>& vars,
                              MonomialOrder order = MonomialOrder::Grevlex) {
  using P = MultiPoly<F>;
  struct Parser {
    const std::string& s;
    const F& field;
    const std::vector<std::string>& vars;
    MonomialOrder order;
    std::size_t pos = 0;

    [[noreturn]] void error(const std::string& what) const {
      fail(ErrorCode::ParseError, what + " at offset " + std::to_string(pos) + " in \"" + s + "\"");
    }
    void skip() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
      skip();
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }
    BigInt integer() {
      skip();
      const auto start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) error("expected integer");
      return BigInt(s.substr(start, pos - start));
    }
    int exponent() {
      const auto e = integer();
      if (e > 10000) error("exponent too large");
      return static_cast<int>(e);
    }
    P power(P base) {
      if (!eat('^')) return base;
      return base.pow(exponent());
    }
    P factor() {
      skip();
      if (pos >= s.size()) error("unexpected end of input");
      const char c = s[pos];
      if (c == '(') {
        ++pos;
        P inner = poly();
        if (!eat(')')) error("expected ')'");
        return power(inner);
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        const BigInt num = integer();
        Rational value(num);
        if (eat('/')) {
          const BigInt den = integer();
          if (den == 0) error("zero denominator");
          value = Rational(num, den);
        }
        skip();
        if (pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
          error("implicit multiplication is not allowed");
        return P::constant(field, vars, field.from_rational(value), order);
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const auto start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
        const std::string name = s.substr(start, pos - start);
        const auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) {
          pos = start;
          error("unknown variable '" + name + "'");
        }
        const int idx = static_cast<int>(it - vars.begin());
        int e = 1;
        if (eat('^')) e = exponent();
        typename P::Term t{Monomial::variable(idx, e), field.one()};
        return P::from_terms(field, vars, {t}, order);
      }
      error(std::string("unexpected character '") + c + "'");
    }
    P term() {
      P t = factor();
      while (eat('*')) t = t * factor();
      skip();
      if (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '(' || s[pos] == '_'))
        error("implicit multiplication is not allowed");
      return t;
    }
    P poly() {
      P acc(field, vars, order);
      bool neg = false;
      if (eat('-')) neg = true;
      else eat('+');
      P t = term();
      acc = neg ? acc - t : acc + t;
      for (;;) {
        if (eat('+')) acc = acc + term();
        else if (eat('-')) acc = acc - term();
        else break;
      }
      return acc;
    }
  };
  Parser parser{text, field, vars, order};
  P result = parser.poly();
  parser.skip();
  if (parser.pos != text.size()) parser.error("trailing input");
  return result;
}

}  // namespace dpk
