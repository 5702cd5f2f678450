#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpk/error.hpp"

namespace dpk {

/// Element of Q/Z with denominator dividing 6, kept as num/den with 0 <= num < den.
class QZ {
 public:
  QZ() = default;
  QZ(std::int64_t num, std::int64_t den) {
    require(den > 0 && 6 % den == 0, ErrorCode::InvalidConfig, "invariant denominators must divide 6");
    num_ = ((num % den) + den) % den;
    den_ = den;
    normalise();
  }
  static QZ parse(const std::string& s) {
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return QZ(std::stoll(s), 1);
      return QZ(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      fail(ErrorCode::ParseError, "bad invariant '" + s + "'");
    }
  }
  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }
  [[nodiscard]] bool is_zero() const { return num_ == 0; }
  [[nodiscard]] std::int64_t order() const { return den_; }
  friend QZ operator+(QZ a, QZ b) { return QZ(a.num_ * 6 / a.den_ + b.num_ * 6 / b.den_, 6); }
  friend QZ operator*(std::int64_t k, QZ a) { return QZ(k % a.den_ * a.num_, a.den_); }
  QZ operator-() const { return QZ(-num_, den_); }
  friend bool operator==(QZ a, QZ b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  [[nodiscard]] std::string to_string() const {
    return den_ == 1 ? "0" : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  void normalise() {
    const auto g = std::gcd(num_, den_);
    num_ /= g;
    den_ /= g;
    if (num_ == 0) den_ = 1;
  }
  std::int64_t num_ = 0, den_ = 1;
};

struct Place {
  std::string name;
  bool archimedean = false;
};

/// Named places of the base field; only places where something interesting happens need to be listed.
struct PlaceSet {
  std::vector<Place> places;
  [[nodiscard]] std::size_t size() const { return places.size(); }
  [[nodiscard]] std::size_t index(const std::string& name) const {
    for (std::size_t i = 0; i < places.size(); ++i)
      if (places[i].name == name) return i;
    fail(ErrorCode::IncompleteData, "unknown place '" + name + "'");
  }
  void validate() const {
    for (std::size_t i = 0; i < places.size(); ++i)
      for (std::size_t j = i + 1; j < places.size(); ++j)
        require(places[i].name != places[j].name, ErrorCode::InvalidConfig, "duplicate place " + places[i].name);
  }
};

struct LocalSplit {
  int e = 1, f = 1;
  [[nodiscard]] int degree() const { return e * f; }
  friend bool operator==(const LocalSplit&, const LocalSplit&) = default;
};

/// Field factor of an etale algebra, with the places above each base place.
struct FieldFactor {
  int degree = 1;
  std::vector<std::vector<LocalSplit>> splitting;  // [base place] -> upper places
};

struct EtaleAlgebra {
  std::vector<FieldFactor> factors;

  [[nodiscard]] int degree() const {
    int d = 0;
    for (const auto& f : factors) d += f.degree;
    return d;
  }
  /// The base field itself, one degree-1 factor.
  static EtaleAlgebra base_field(std::size_t places) {
    EtaleAlgebra k;
    k.factors.push_back({1, std::vector<std::vector<LocalSplit>>(places, {LocalSplit{}})});
    return k;
  }
  /// k x ... x k.
  static EtaleAlgebra split(int n, std::size_t places) {
    EtaleAlgebra k;
    for (int i = 0; i < n; ++i) k.factors.push_back({1, std::vector<std::vector<LocalSplit>>(places, {LocalSplit{}})});
    return k;
  }
  [[nodiscard]] bool is_field() const { return factors.size() == 1; }

  void validate(const PlaceSet& P) const {
    require(!factors.empty(), ErrorCode::InvalidConfig, "etale algebra has no factors");
    for (const auto& fac : factors) {
      require(fac.degree >= 1, ErrorCode::InvalidConfig, "factor degree must be positive");
      if (fac.splitting.size() != P.size()) fail(ErrorCode::IncompleteData, "splitting data missing for some place");
      for (std::size_t p = 0; p < P.size(); ++p) {
        int total = 0;
        for (const auto& s : fac.splitting[p]) {
          require(s.e >= 1 && s.f >= 1, ErrorCode::InvalidConfig, "e and f must be positive");
          if (P.places[p].archimedean)
            require(s.degree() <= 2, ErrorCode::InvalidConfig, "archimedean local degree exceeds 2");
          total += s.degree();
        }
        if (total != fac.degree)
          fail(ErrorCode::InvalidConfig, "sum of e*f above " + P.places[p].name + " is " + std::to_string(total) +
                                             ", factor degree is " + std::to_string(fac.degree));
      }
    }
  }
};

/// Central simple algebra over an etale algebra (one component per factor), by local invariants.
struct CSAInvariants {
  EtaleAlgebra base;
  int rank = 4;  // 4 quaternion, 9 degree three
  std::vector<std::vector<std::vector<QZ>>> inv;  // [factor][base place][upper place]

  static CSAInvariants zero(const EtaleAlgebra& E, int rank) {
    CSAInvariants a{E, rank, {}};
    for (const auto& f : E.factors) {
      std::vector<std::vector<QZ>> per;
      for (const auto& s : f.splitting) per.emplace_back(s.size());
      a.inv.push_back(per);
    }
    return a;
  }
  [[nodiscard]] int index_bound() const {
    if (rank == 4) return 2;
    if (rank == 9) return 3;
    return 6;
  }
  [[nodiscard]] bool is_split() const {
    for (const auto& f : inv)
      for (const auto& p : f)
        for (const auto& x : p)
          if (!x.is_zero()) return false;
    return true;
  }
  [[nodiscard]] bool shape_matches() const {
    if (inv.size() != base.factors.size()) return false;
    for (std::size_t a = 0; a < inv.size(); ++a) {
      if (inv[a].size() != base.factors[a].splitting.size()) return false;
      for (std::size_t p = 0; p < inv[a].size(); ++p)
        if (inv[a][p].size() != base.factors[a].splitting[p].size()) return false;
    }
    return true;
  }
};

enum class FieldModel { NumberField, LocalField };

inline std::string to_string(FieldModel m) { return m == FieldModel::NumberField ? "number" : "local"; }

inline FieldModel parse_field_model(const std::string& s) {
  if (s == "number") return FieldModel::NumberField;
  if (s == "local") return FieldModel::LocalField;
  fail(ErrorCode::InvalidConfig, "model must be number or local, got '" + s + "'");
}

/// Shape, index bound, archimedean values and (for number fields) reciprocity on every factor.
inline void validate(const CSAInvariants& A, const PlaceSet& P, FieldModel model) {
  A.base.validate(P);
  require(A.rank == 4 || A.rank == 9, ErrorCode::RankError, "rank must be 4 or 9");
  if (!A.shape_matches()) fail(ErrorCode::IncompleteData, "invariant vector does not match the splitting data");
  for (std::size_t a = 0; a < A.inv.size(); ++a) {
    QZ sum;
    for (std::size_t p = 0; p < P.size(); ++p)
      for (std::size_t j = 0; j < A.inv[a][p].size(); ++j) {
        const QZ x = A.inv[a][p][j];
        if (A.index_bound() % x.order() != 0)
          fail(ErrorCode::InvalidConfig, "invariant " + x.to_string() + " has order not dividing the index");
        if (P.places[p].archimedean) {
          require(x.order() <= 2, ErrorCode::InvalidConfig, "archimedean invariants lie in {0, 1/2}");
          require(x.is_zero() || A.base.factors[a].splitting[p][j].degree() == 1, ErrorCode::InvalidConfig,
                  "complex places carry invariant 0");
        }
        sum = sum + x;
      }
    if (model == FieldModel::NumberField && !sum.is_zero())
      fail(ErrorCode::InvalidConfig, "local invariants sum to " + sum.to_string() + ", not 0");
  }
}

/// A over k extended to E: the invariant above p is e*f times that at p.
inline CSAInvariants restrict(const CSAInvariants& A, const EtaleAlgebra& E) {
  require(A.base.factors.size() == 1 && A.base.factors[0].degree == 1, ErrorCode::InvalidConfig,
          "restriction source must live over the base field");
  for (const auto& f : E.factors)
    if (f.splitting.size() != A.inv[0].size()) fail(ErrorCode::IncompleteData, "splitting data missing for some place");
  CSAInvariants out = CSAInvariants::zero(E, A.rank);
  for (std::size_t a = 0; a < E.factors.size(); ++a)
    for (std::size_t p = 0; p < A.inv[0].size(); ++p)
      for (std::size_t j = 0; j < E.factors[a].splitting[p].size(); ++j)
        out.inv[a][p][j] = E.factors[a].splitting[p][j].degree() * A.inv[0][p][0];
  return out;
}

/// Down to k: the invariant at p is the sum over all places above p of all factors.
inline CSAInvariants corestrict(const CSAInvariants& B) {
  const std::size_t n = B.inv.empty() ? 0 : B.inv[0].size();
  CSAInvariants out = CSAInvariants::zero(EtaleAlgebra::base_field(n), B.rank);
  for (const auto& fac : B.inv) {
    if (fac.size() != n) fail(ErrorCode::IncompleteData, "factors disagree on the place set");
    for (std::size_t p = 0; p < n; ++p)
      for (const auto& x : fac[p]) out.inv[0][p][0] = out.inv[0][p][0] + x;
  }
  return out;
}

namespace detail {

/// Components of X (x) Y for local fields X, Y over k_p; only e*f of the result is meaningful when
/// ramification is involved.
inline std::vector<LocalSplit> local_tensor(LocalSplit x, LocalSplit y, bool archimedean) {
  if (x.degree() == 1) return {y};
  if (y.degree() == 1) return {x};
  if (archimedean) return {x, x};  // C (x)_R C = C x C
  if (x.e == 1 && y.e == 1) {
    const int g = std::gcd(x.f, y.f);
    return std::vector<LocalSplit>(static_cast<std::size_t>(g), LocalSplit{1, x.f / g * y.f});
  }
  if (std::gcd(x.degree(), y.degree()) == 1) return {LocalSplit{x.e * y.e, x.f * y.f}};
  fail(ErrorCode::IncompleteData,
       "tensor product of ramified local fields of degrees " + std::to_string(x.degree()) + " and " +
           std::to_string(y.degree()) + " is not determined by (e, f)");
}

}  // namespace detail

/// B over E restricted to E (x)_k other: each place P of E acquires the relative degrees of the
/// places above it. Returns one flat invariant list per factor of E.
inline std::vector<std::vector<QZ>> restrict_to_compositum(const CSAInvariants& B, const EtaleAlgebra& other,
                                                           const PlaceSet& P) {
  std::vector<std::vector<QZ>> out(B.inv.size());
  for (std::size_t a = 0; a < B.inv.size(); ++a)
    for (std::size_t p = 0; p < P.size(); ++p)
      for (std::size_t j = 0; j < B.inv[a][p].size(); ++j) {
        const auto x = B.base.factors[a].splitting[p][j];
        for (const auto& fac : other.factors)
          for (const auto& y : fac.splitting[p])
            for (const auto& c : detail::local_tensor(x, y, P.places[p].archimedean))
              out[a].push_back((c.degree() / x.degree()) * B.inv[a][p][j]);
      }
  return out;
}

namespace detail {

inline bool all_zero(const std::vector<std::vector<QZ>>& v) {
  for (const auto& f : v)
    for (const auto& x : f)
      if (!x.is_zero()) return false;
  return true;
}

inline bool in_class(const CSAInvariants& A, int rank, const EtaleAlgebra& own, const EtaleAlgebra& other,
                     const PlaceSet& P) {
  if (A.rank != rank) fail(ErrorCode::RankError, "expected rank " + std::to_string(rank));
  require(A.base.degree() == own.degree() && A.base.factors.size() == own.factors.size(), ErrorCode::InvalidConfig,
          "algebra does not live over the expected etale algebra");
  return all_zero(restrict_to_compositum(A, other, P)) && corestrict(A).is_split();
}

}  // namespace detail

/// B of rank 9 over K with B (x)_K KL and cores_{K/k} B split.
inline bool in_C1(const CSAInvariants& B, const EtaleAlgebra& K, const EtaleAlgebra& L, const PlaceSet& P) {
  return detail::in_class(B, 9, K, L, P);
}

/// Q of rank 4 over L with Q (x)_L KL and cores_{L/k} Q split.
inline bool in_C2(const CSAInvariants& Q, const EtaleAlgebra& K, const EtaleAlgebra& L, const PlaceSet& P) {
  return detail::in_class(Q, 4, L, K, P);
}

struct BlunkTriple {
  PlaceSet places;
  EtaleAlgebra K, L;
  CSAInvariants B, Q;
  FieldModel model = FieldModel::NumberField;

  void validate() const {
    places.validate();
    if (model == FieldModel::LocalField)
      require(places.size() == 1 && !places.places[0].archimedean, ErrorCode::InvalidConfig,
              "a local model has exactly one nonarchimedean place");
    K.validate(places);
    L.validate(places);
    require(K.degree() == 2, ErrorCode::InvalidConfig, "[K:k] must be 2");
    require(L.degree() == 3, ErrorCode::InvalidConfig, "[L:k] must be 3");
    dpk::validate(B, places, model);
    dpk::validate(Q, places, model);
    if (!in_C1(B, K, L, places)) fail(ErrorCode::InvalidConfig, "B is not in C1");
    if (!in_C2(Q, K, L, places)) fail(ErrorCode::InvalidConfig, "Q is not in C2");
  }
};

struct PointDegreeReport {
  int degree = 1;
  // for each tried n, whether some local behaviour of a degree-n extension splits B and Q
  std::vector<std::pair<int, bool>> tried;
};

namespace detail {

inline void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int s = std::min(n, max_part); s >= 1; --s) {
    cur.push_back(s);
    partitions(n - s, s, cur, out);
    cur.pop_back();
  }
}

/// Relative degrees over X of the components of X (x) F_s for F_s chosen disjoint from every local
/// field in sight (always possible at a nonarchimedean place for degrees 2, 3, 6).
inline int generic_relative_degree(LocalSplit x, int s, bool archimedean) {
  if (archimedean) return x.degree() == 2 ? 1 : s;
  return s;
}

/// Can a degree-n extension with prescribed local behaviour at place p split A's invariants there?
inline bool splits_locally(const CSAInvariants& A, std::size_t p, const std::vector<int>& parts, bool arch) {
  for (std::size_t a = 0; a < A.inv.size(); ++a)
    for (std::size_t j = 0; j < A.inv[a][p].size(); ++j) {
      const QZ x = A.inv[a][p][j];
      if (x.is_zero()) continue;
      for (int s : parts)
        if (!(generic_relative_degree(A.base.factors[a].splitting[p][j], s, arch) * x).is_zero()) return false;
    }
  return true;
}

}  // namespace detail

/// Smallest n in {1, 2, 3, 6} such that some degree-n extension splits both B and Q. Local conditions at
/// the listed places are independent: over a number field any finite set of local behaviours of a
/// degree 2, 3 or 6 extension is realised globally, and over a local field there is one place.
inline PointDegreeReport minimal_point_degree(const BlunkTriple& T) {
  T.validate();
  PointDegreeReport r;
  if (T.B.is_split() && T.Q.is_split()) {
    r.degree = 1;
    r.tried.push_back({1, true});
    return r;
  }
  r.tried.push_back({1, false});
  for (int n : {2, 3, 6}) {
    bool ok = true;
    for (std::size_t p = 0; p < T.places.size() && ok; ++p) {
      const bool arch = T.places.places[p].archimedean;
      std::vector<std::vector<int>> parts;
      std::vector<int> cur;
      detail::partitions(n, arch ? 2 : n, cur, parts);
      bool some = false;
      for (const auto& pt : parts)
        if (detail::splits_locally(T.B, p, pt, arch) && detail::splits_locally(T.Q, p, pt, arch)) {
          some = true;
          break;
        }
      ok = some;
    }
    r.tried.push_back({n, ok});
    if (ok) {
      r.degree = n;
      return r;
    }
  }
  fail(ErrorCode::InternalError, "no extension of degree dividing 6 splits the triple");
}

struct LocalSweepReport {
  std::uint64_t configurations = 0;
  std::uint64_t invalid = 0;        // an invariant's order does not divide the index
  std::uint64_t outside_C = 0;      // B not in C1 or Q not in C2
  std::uint64_t undetermined = 0;   // compositum not determined by (e, f)
  std::map<int, std::uint64_t> degrees;
};

/// Every local shape of K and L and every assignment of invariants a/6 to their places.
inline LocalSweepReport local_model_sweep() {
  const std::vector<std::vector<FieldFactor>> Ks = {
      {{1, {{LocalSplit{}}}}, {1, {{LocalSplit{}}}}}, {{2, {{{1, 2}}}}}, {{2, {{{2, 1}}}}}};
  const std::vector<std::vector<FieldFactor>> Ls = {
      {{1, {{LocalSplit{}}}}, {1, {{LocalSplit{}}}}, {1, {{LocalSplit{}}}}},
      {{1, {{LocalSplit{}}}}, {2, {{{1, 2}}}}},
      {{1, {{LocalSplit{}}}}, {2, {{{2, 1}}}}},
      {{3, {{{1, 3}}}}},
      {{3, {{{3, 1}}}}}};
  LocalSweepReport r;
  for (const auto& kf : Ks)
    for (const auto& lf : Ls) {
      BlunkTriple T;
      T.model = FieldModel::LocalField;
      T.places.places = {{"p"}};
      T.K.factors = kf;
      T.L.factors = lf;
      const std::size_t nb = kf.size() == 2 ? 2 : 1;
      const std::size_t nq = lf.size();
      std::size_t total = 1;
      for (std::size_t i = 0; i < nb + nq; ++i) total *= 6;
      for (std::size_t code = 0; code < total; ++code) {
        ++r.configurations;
        T.B = CSAInvariants::zero(T.K, 9);
        T.Q = CSAInvariants::zero(T.L, 4);
        auto c = code;
        for (std::size_t a = 0; a < nb; ++a, c /= 6) T.B.inv[a][0][0] = QZ(static_cast<std::int64_t>(c % 6), 6);
        for (std::size_t a = 0; a < nq; ++a, c /= 6) T.Q.inv[a][0][0] = QZ(static_cast<std::int64_t>(c % 6), 6);
        try {
          validate(T.B, T.places, T.model);
          validate(T.Q, T.places, T.model);
        } catch (const Error&) {
          ++r.invalid;
          continue;
        }
        try {
          if (!in_C1(T.B, T.K, T.L, T.places) || !in_C2(T.Q, T.K, T.L, T.places)) {
            ++r.outside_C;
            continue;
          }
        } catch (const Error& e) {
          if (e.code() != ErrorCode::IncompleteData) throw;
          ++r.undetermined;
          continue;
        }
        ++r.degrees[minimal_point_degree(T).degree];
      }
    }
  return r;
}

// ---------- JSON ----------

inline nlohmann::json qz_to_json(QZ x) { return x.is_zero() ? nlohmann::json(0) : nlohmann::json(x.to_string()); }

inline QZ qz_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return QZ(j.get<std::int64_t>(), 1);
  if (j.is_string()) return QZ::parse(j.get<std::string>());
  fail(ErrorCode::ParseError, "invariant must be an integer or a string like \"1/3\"");
}

inline nlohmann::json etale_to_json(const EtaleAlgebra& E, const PlaceSet& P) {
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : E.factors) {
    nlohmann::json sp = nlohmann::json::object();
    for (std::size_t p = 0; p < P.size(); ++p) {
      nlohmann::json l = nlohmann::json::array();
      for (const auto& s : f.splitting[p]) l.push_back({s.e, s.f});
      sp[P.places[p].name] = l;
    }
    fs.push_back({{"degree", f.degree}, {"splitting", sp}});
  }
  return {{"factors", fs}};
}

/// Places without explicit data split completely in degree-1 factors; otherwise the data is required.
inline EtaleAlgebra etale_from_json(const nlohmann::json& j, const PlaceSet& P) {
  EtaleAlgebra E;
  if (j.contains("split")) return EtaleAlgebra::split(j.at("split").get<int>(), P.size());
  for (const auto& jf : j.at("factors")) {
    FieldFactor f;
    f.degree = jf.at("degree").get<int>();
    f.splitting.resize(P.size());
    const auto sp = jf.value("splitting", nlohmann::json::object());
    for (const auto& [name, v] : sp.items()) {
      auto& dst = f.splitting[P.index(name)];
      for (const auto& pair : v) dst.push_back({pair.at(0).get<int>(), pair.at(1).get<int>()});
    }
    for (std::size_t p = 0; p < P.size(); ++p)
      if (f.splitting[p].empty()) {
        if (f.degree != 1)
          fail(ErrorCode::IncompleteData, "no splitting data at " + P.places[p].name + " for a factor of degree " +
                                              std::to_string(f.degree));
        f.splitting[p] = {LocalSplit{}};
      }
    E.factors.push_back(std::move(f));
  }
  return E;
}

inline nlohmann::json csa_to_json(const CSAInvariants& A, const PlaceSet& P) {
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : A.inv) {
    nlohmann::json m = nlohmann::json::object();
    for (std::size_t p = 0; p < P.size(); ++p) {
      bool nonzero = false;
      nlohmann::json l = nlohmann::json::array();
      for (const auto& x : f[p]) {
        l.push_back(qz_to_json(x));
        nonzero |= !x.is_zero();
      }
      if (nonzero) m[P.places[p].name] = l;
    }
    fs.push_back(m);
  }
  return {{"rank", A.rank}, {"invariants", fs}};
}

/// Omitted factors and places carry invariant 0.
inline CSAInvariants csa_from_json(const nlohmann::json& j, const EtaleAlgebra& E, const PlaceSet& P) {
  CSAInvariants A = CSAInvariants::zero(E, j.at("rank").get<int>());
  const auto fs = j.value("invariants", nlohmann::json::array());
  require(fs.size() <= E.factors.size(), ErrorCode::InvalidConfig, "more invariant blocks than factors");
  for (std::size_t a = 0; a < fs.size(); ++a)
    for (const auto& [name, v] : fs[a].items()) {
      const auto p = P.index(name);
      if (v.size() != A.inv[a][p].size())
        fail(ErrorCode::IncompleteData, "invariants at " + name + " do not match the places above it");
      for (std::size_t i = 0; i < v.size(); ++i) A.inv[a][p][i] = qz_from_json(v[i]);
    }
  return A;
}

inline nlohmann::json triple_to_json(const BlunkTriple& T) {
  nlohmann::json places = nlohmann::json::array();
  for (const auto& p : T.places.places) {
    nlohmann::json jp{{"name", p.name}};
    if (p.archimedean) jp["archimedean"] = true;
    places.push_back(jp);
  }
  return {{"schema", 1},
          {"model", to_string(T.model)},
          {"places", places},
          {"K", etale_to_json(T.K, T.places)},
          {"L", etale_to_json(T.L, T.places)},
          {"B", csa_to_json(T.B, T.places)},
          {"Q", csa_to_json(T.Q, T.places)}};
}

inline BlunkTriple triple_from_json(const nlohmann::json& j) {
  try {
    BlunkTriple T;
    T.model = parse_field_model(j.value("model", std::string("number")));
    for (const auto& p : j.at("places")) T.places.places.push_back({p.at("name").get<std::string>(), p.value("archimedean", false)});
    T.K = etale_from_json(j.at("K"), T.places);
    T.L = etale_from_json(j.at("L"), T.places);
    T.B = csa_from_json(j.at("B"), T.K, T.places);
    T.Q = csa_from_json(j.at("Q"), T.L, T.places);
    return T;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("bad triple config: ") + e.what());
  }
}

// ---------- the recorded constructions ----------

namespace blunk_examples {

/// K quadratic, L = k^3, B split, Q = (M_2(k), A, A) with A ramified at two places inert in K.
inline BlunkTriple degree_two() {
  BlunkTriple T;
  T.places.places = {{"p1"}, {"p2"}};
  T.K.factors = {{2, {{{1, 2}}, {{1, 2}}}}};
  T.L = EtaleAlgebra::split(3, 2);
  T.B = CSAInvariants::zero(T.K, 9);
  T.Q = CSAInvariants::zero(T.L, 4);
  for (std::size_t a : {1u, 2u}) {
    T.Q.inv[a][0][0] = QZ(1, 2);
    T.Q.inv[a][1][0] = QZ(1, 2);
  }
  return T;
}

/// K = k x k, L a cubic field, B = (A, A^dual) with A of invariants 1/3, 2/3 at two primes inert in L.
inline BlunkTriple degree_three() {
  BlunkTriple T;
  T.places.places = {{"p"}, {"q"}};
  T.K = EtaleAlgebra::split(2, 2);
  T.L.factors = {{3, {{{1, 3}}, {{1, 3}}}}};
  T.B = CSAInvariants::zero(T.K, 9);
  T.B.inv[0][0][0] = QZ(1, 3);
  T.B.inv[0][1][0] = QZ(2, 3);
  T.B.inv[1][0][0] = QZ(2, 3);
  T.B.inv[1][1][0] = QZ(1, 3);
  T.Q = CSAInvariants::zero(T.L, 4);
  return T;
}

/// K quadratic with p split, L Galois cubic with p inert, q split in L and inert in K;
/// B = 1/3, 2/3 above p, Q = 1/2 at two of the places above q.
inline BlunkTriple degree_six() {
  BlunkTriple T;
  T.places.places = {{"p"}, {"q"}};
  T.K.factors = {{2, {{{1, 1}, {1, 1}}, {{1, 2}}}}};
  T.L.factors = {{3, {{{1, 3}}, {{1, 1}, {1, 1}, {1, 1}}}}};
  T.B = CSAInvariants::zero(T.K, 9);
  T.B.inv[0][0] = {QZ(1, 3), QZ(2, 3)};
  T.Q = CSAInvariants::zero(T.L, 4);
  T.Q.inv[0][1] = {QZ(1, 2), QZ(1, 2), QZ()};
  return T;
}

/// Local field: K = k x k, L the unramified cubic, B = (A, A^dual) with inv A = 1/3, Q split.
inline BlunkTriple local_degree_three() {
  BlunkTriple T;
  T.model = FieldModel::LocalField;
  T.places.places = {{"p"}};
  T.K = EtaleAlgebra::split(2, 1);
  T.L.factors = {{3, {{{1, 3}}}}};
  T.B = CSAInvariants::zero(T.K, 9);
  T.B.inv[0][0][0] = QZ(1, 3);
  T.B.inv[1][0][0] = QZ(2, 3);
  T.Q = CSAInvariants::zero(T.L, 4);
  return T;
}

}  // namespace blunk_examples

}  // namespace dpk
