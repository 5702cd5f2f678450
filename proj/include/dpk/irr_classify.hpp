#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpk/error.hpp"

namespace dpk {

enum class FieldKind { Finite, Local, Number, Arbitrary };

inline constexpr std::array<FieldKind, 4> kFieldKinds{FieldKind::Finite, FieldKind::Local, FieldKind::Number,
                                                      FieldKind::Arbitrary};

inline std::string to_string(FieldKind f) {
  switch (f) {
    case FieldKind::Finite: return "finite";
    case FieldKind::Local: return "local";
    case FieldKind::Number: return "number";
    case FieldKind::Arbitrary: return "arbitrary";
  }
  return "?";
}

inline FieldKind parse_field_kind(const std::string& s) {
  for (auto f : kFieldKinds)
    if (to_string(f) == s) return f;
  fail(ErrorCode::InvalidConfig, "field must be finite, local, number or arbitrary, got '" + s + "'");
}

/// Status of "X has a point over some extension of degree e".
enum class PointStatus { Exists, KnownEmpty, Unknown };

inline std::string to_string(PointStatus s) {
  switch (s) {
    case PointStatus::Exists: return "exists";
    case PointStatus::KnownEmpty: return "known-empty";
    case PointStatus::Unknown: return "unknown";
  }
  return "?";
}

inline PointStatus parse_point_status(const std::string& s) {
  for (auto p : {PointStatus::Exists, PointStatus::KnownEmpty, PointStatus::Unknown})
    if (to_string(p) == s) return p;
  fail(ErrorCode::InvalidConfig, "point status must be exists, known-empty or unknown, got '" + s + "'");
}

enum class Tristate { Yes, No, Unknown };

struct PointRecord {
  int degree = 1;
  PointStatus status = PointStatus::Unknown;
};

struct Evidence {
  int degree = 3;
  FieldKind field = FieldKind::Arbitrary;
  std::vector<PointRecord> points;
  Tristate h1_nontrivial = Tristate::Unknown;
  std::optional<int> blunk;                      // minimal point degree of a degree-6 surface
  std::optional<int> pic_rank_d8;                // 1 or 2
  std::optional<bool> quadric_form_d8;           // true: P1 x P1 form, false: blow-up of P2
  std::optional<bool> separable_quadratic_point_d8;  // point over a separable quadratic extension in general position
  std::vector<std::string> certificates;
};

struct FiredRule {
  std::string id;
  std::string citation;
};

struct IrrReport {
  std::set<int> possible;
  std::vector<FiredRule> rules_fired;
  std::vector<std::string> certificate_refs;
};

/// The classification by degree (rows 1..9) and field kind.
inline std::set<int> table_row(int degree, FieldKind f) {
  require(degree >= 1 && degree <= 9, ErrorCode::UnsupportedDegree, "degree must be in 1..9");
  static const std::array<std::array<std::set<int>, 4>, 9> table{{
      {{{1, 2}, {1, 2}, {1, 2}, {1, 2}}},
      {{{1, 2}, {1, 2}, {1, 2}, {1, 2}}},
      {{{1, 2}, {1, 2, 3}, {1, 2, 3}, {1, 2, 3}}},
      {{{1, 2}, {1, 2}, {1, 2, 4}, {1, 2, 4}}},
      {{{1}, {1}, {1}, {1}}},
      {{{1}, {1, 2, 3}, {1, 2, 3, 6}, {1, 2, 3, 6}}},
      {{{1}, {1}, {1}, {1}}},
      {{{1}, {1, 2}, {1, 2}, {1, 2, 4}}},
      {{{1}, {1, 3}, {1, 3}, {1, 3}}},
  }};
  return table[static_cast<std::size_t>(degree - 1)][static_cast<std::size_t>(f)];
}

/// Every rule the engine can fire, with the fact it rests on.
inline const std::map<std::string, std::string>& rule_catalogue() {
  static const std::map<std::string, std::string> rules{
      {"table", "possible values by degree and field type"},
      {"finite-field-point", "a del Pezzo surface over a finite field has a rational point (#X(F_q) = 1 mod q)"},
      {"automatic-point", "degrees 1, 5 and 7 always have a rational point"},
      {"high-degree-rational", "degree >= 5 with a rational point is birational to P^2"},
      {"double-cover", "degrees 1 and 2 admit a rational map of degree 2 to a rational surface"},
      {"cubic-projection", "projection of a cubic surface from a rational point has degree 2"},
      {"cubic-no-quadratic-points", "a cubic surface with a quadratic point has a rational point"},
      {"cubic-pointless", "a pointless cubic surface has irrationality degree exactly 3"},
      {"quartic-low-point", "a quartic del Pezzo surface with a point of degree <= 2 has irrationality degree <= 2"},
      {"quartic-no-low-points", "a quartic del Pezzo surface without points of degree <= 2 has irrationality degree 4"},
      {"sextic-point-degree", "for degree 6 the irrationality degree equals the minimal degree of a point"},
      {"sextic-local", "over a local field a degree 6 surface has irrationality degree at most 3"},
      {"octic-blowup", "the blow-up of a Brauer-Severi surface in a point contracts to one with a rational point"},
      {"octic-rational-point", "degree 8 with a rational point is rational"},
      {"octic-separable-quadratic", "a separable quadratic point in general position gives irrationality degree 2"},
      {"brauer-severi-rational", "a Brauer-Severi surface with a rational point is P^2"},
      {"brauer-severi-nontrivial", "a nontrivial Brauer-Severi surface has irrationality degree 3"},
      {"points-below-degree", "a dominant map of degree n forces points over extensions of degree <= n"},
      {"h1-obstruction", "nontrivial H^1(Galois, Pic) rules out rationality"},
  };
  return rules;
}

namespace detail {

inline void inconsistent(const std::string& why) { fail(ErrorCode::InconsistentEvidence, why); }

/// Merges records; a conflict between Exists and KnownEmpty for the same degree is inconsistent.
inline std::map<int, PointStatus> merge_points(const Evidence& ev) {
  std::map<int, PointStatus> out;
  for (const auto& r : ev.points) {
    if (r.degree < 1) inconsistent("point degrees must be positive");
    auto [it, fresh] = out.emplace(r.degree, r.status);
    if (fresh || r.status == PointStatus::Unknown) continue;
    if (it->second == PointStatus::Unknown) {
      it->second = r.status;
    } else if (it->second != r.status) {
      inconsistent("degree " + std::to_string(r.degree) + " points recorded both as existing and as absent");
    }
  }
  return out;
}

}  // namespace detail

/// Intersects the table cell with every constraint the evidence supports. Unknown evidence fires nothing.
inline IrrReport classify(const Evidence& ev) {
  const int d = ev.degree;
  if (d < 1 || d > 9) detail::inconsistent("degree must be in 1..9");
  IrrReport rep;
  rep.certificate_refs = ev.certificates;
  const auto& catalogue = rule_catalogue();
  auto fire = [&](const std::string& id) { rep.rules_fired.push_back({id, catalogue.at(id)}); };
  auto keep = [&](const std::set<int>& allowed) {
    std::set<int> next;
    for (int v : rep.possible)
      if (allowed.count(v)) next.insert(v);
    rep.possible = next;
  };
  auto drop = [&](int v) { rep.possible.erase(v); };

  rep.possible = table_row(d, ev.field);
  fire("table");

  auto pts = detail::merge_points(ev);
  auto status = [&](int e) {
    const auto it = pts.find(e);
    return it == pts.end() ? PointStatus::Unknown : it->second;
  };

  // implied rational points
  if (ev.field == FieldKind::Finite) {
    if (status(1) == PointStatus::KnownEmpty) detail::inconsistent("surfaces over finite fields have rational points");
    if (status(1) != PointStatus::Exists) fire("finite-field-point");
    pts[1] = PointStatus::Exists;
  }
  if (d == 1 || d == 5 || d == 7) {
    if (status(1) == PointStatus::KnownEmpty)
      detail::inconsistent("degree " + std::to_string(d) + " surfaces always have rational points");
    if (status(1) != PointStatus::Exists) fire("automatic-point");
    pts[1] = PointStatus::Exists;
  }

  // over finite, local and number fields every degree has extensions, so points propagate upward
  if (ev.field != FieldKind::Arbitrary)
    for (const auto& [e, s] : pts)
      if (s == PointStatus::Exists)
        for (const auto& [m, t] : pts)
          if (m % e == 0 && t == PointStatus::KnownEmpty)
            detail::inconsistent("points of degree " + std::to_string(e) + " exist but none of degree " +
                                 std::to_string(m));

  // degree-specific side data
  if (ev.blunk) {
    if (d != 6) detail::inconsistent("minimal point degree data only applies in degree 6");
    const int b = *ev.blunk;
    if (b != 1 && b != 2 && b != 3 && b != 6) detail::inconsistent("minimal point degree must divide 6");
    if (ev.field == FieldKind::Local && b == 6) detail::inconsistent("over a local field the minimal point degree is at most 3");
    if (status(b) == PointStatus::KnownEmpty) detail::inconsistent("points of the minimal degree are recorded as absent");
    for (const auto& [e, s] : pts)
      if (s == PointStatus::Exists && e < b)
        detail::inconsistent("a point of degree " + std::to_string(e) + " is below the minimal point degree");
  }
  if (ev.pic_rank_d8 || ev.quadric_form_d8 || ev.separable_quadratic_point_d8) {
    if (d != 8) detail::inconsistent("degree 8 data given for degree " + std::to_string(d));
    if (ev.pic_rank_d8 && *ev.pic_rank_d8 != 1 && *ev.pic_rank_d8 != 2) detail::inconsistent("Picard rank must be 1 or 2");
    if (ev.pic_rank_d8 == 1 && ev.quadric_form_d8 == false)
      detail::inconsistent("the blow-up form has two invariant classes, so Picard rank 2");
    if (ev.separable_quadratic_point_d8 == true && status(2) == PointStatus::KnownEmpty)
      detail::inconsistent("a separable quadratic point exists but quadratic points are recorded as absent");
    if (ev.separable_quadratic_point_d8 == true) pts.emplace(2, PointStatus::Exists);
  }
  if (ev.h1_nontrivial == Tristate::Yes && d >= 5) detail::inconsistent("H^1(Galois, Pic) vanishes in degree >= 5");
  if (d == 3 && status(2) == PointStatus::Exists && status(1) == PointStatus::KnownEmpty)
    detail::inconsistent("a cubic surface with a quadratic point has a rational point");

  const bool rational_point = status(1) == PointStatus::Exists;
  const bool no_rational_point = status(1) == PointStatus::KnownEmpty;

  if (d >= 5 && rational_point) {
    fire("high-degree-rational");
    keep({1});
  }
  if (d == 1 || d == 2) {
    fire("double-cover");
    keep({1, 2});
  }
  if (d == 3) {
    if (rational_point) {
      fire("cubic-projection");
      keep({1, 2});
    } else if (status(2) == PointStatus::Exists) {
      fire("cubic-no-quadratic-points");
      fire("cubic-projection");
      keep({1, 2});
    }
    if (no_rational_point) {
      fire("cubic-pointless");
      keep({3});
    }
  }
  if (d == 4) {
    if (rational_point || status(2) == PointStatus::Exists) {
      fire("quartic-low-point");
      keep({1, 2});
    }
    if (no_rational_point && status(2) == PointStatus::KnownEmpty) {
      fire("quartic-no-low-points");
      keep({4});
    }
  }
  if (d == 6) {
    if (ev.blunk) {
      fire("sextic-point-degree");
      keep({*ev.blunk});
    } else {
      bool fired = false;
      for (const auto& [e, s] : pts) {
        if (s == PointStatus::Exists) {
          std::set<int> le;
          for (int v : rep.possible)
            if (v <= e) le.insert(v);
          if (le != rep.possible) fired = true;
          keep(le);
        }
        if (s == PointStatus::KnownEmpty && rep.possible.count(e)) {
          fired = true;
          drop(e);
        }
      }
      if (fired) fire("sextic-point-degree");
    }
    if (ev.field == FieldKind::Local) fire("sextic-local");
  }
  if (d == 8) {
    if (ev.quadric_form_d8 == false) {
      fire("octic-blowup");
      keep({1});
    }
    if (rational_point) {
      fire("octic-rational-point");
      keep({1});
    }
    if (ev.separable_quadratic_point_d8 == true) {
      fire("octic-separable-quadratic");
      keep({1, 2});
    }
  }
  if (d == 9) {
    if (rational_point) {
      fire("brauer-severi-rational");
      keep({1});
    }
    if (no_rational_point) {
      fire("brauer-severi-nontrivial");
      keep({3});
    }
  }

  // a map of degree n needs points over some extension of degree <= n
  for (int n : std::set<int>(rep.possible)) {
    bool all_empty = true;
    for (int e = 1; e <= n && all_empty; ++e) all_empty = status(e) == PointStatus::KnownEmpty;
    if (all_empty) {
      drop(n);
      fire("points-below-degree");
    }
  }
  if (ev.h1_nontrivial == Tristate::Yes && rep.possible.count(1)) {
    fire("h1-obstruction");
    drop(1);
  }

  if (rep.possible.empty())
    detail::inconsistent("the evidence rules out every value allowed for degree " + std::to_string(d) + " over " +
                         to_string(ev.field) + " fields");
  // collapse duplicates while keeping first-fired order
  std::vector<FiredRule> uniq;
  for (const auto& r : rep.rules_fired)
    if (std::none_of(uniq.begin(), uniq.end(), [&](const FiredRule& u) { return u.id == r.id; })) uniq.push_back(r);
  rep.rules_fired = std::move(uniq);
  return rep;
}

// ---------- JSON ----------

inline nlohmann::json evidence_to_json(const Evidence& ev) {
  nlohmann::json j{{"schema", 1}, {"degree", ev.degree}, {"field", to_string(ev.field)}};
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : ev.points) pts.push_back({{"degree", p.degree}, {"status", to_string(p.status)}});
  j["points"] = pts;
  j["h1_nontrivial"] = ev.h1_nontrivial == Tristate::Unknown ? nlohmann::json(nullptr)
                                                             : nlohmann::json(ev.h1_nontrivial == Tristate::Yes);
  if (ev.blunk) j["blunk"] = *ev.blunk;
  if (ev.pic_rank_d8) j["pic_rank_d8"] = *ev.pic_rank_d8;
  if (ev.quadric_form_d8) j["quadric_form_d8"] = *ev.quadric_form_d8;
  if (ev.separable_quadratic_point_d8) j["separable_quadratic_point_d8"] = *ev.separable_quadratic_point_d8;
  if (!ev.certificates.empty()) j["certificates"] = ev.certificates;
  return j;
}

inline Evidence evidence_from_json(const nlohmann::json& j) {
  try {
    Evidence ev;
    ev.degree = j.value("degree", 0);
    ev.field = parse_field_kind(j.value("field", std::string("arbitrary")));
    for (const auto& p : j.value("points", nlohmann::json::array()))
      ev.points.push_back({p.at("degree").get<int>(), parse_point_status(p.at("status").get<std::string>())});
    if (j.contains("h1_nontrivial") && !j["h1_nontrivial"].is_null())
      ev.h1_nontrivial = j["h1_nontrivial"].get<bool>() ? Tristate::Yes : Tristate::No;
    if (j.contains("blunk")) {
      // accept either a bare degree or the output of the blunk subcommand
      const auto& b = j["blunk"];
      ev.blunk = b.is_object() ? b.at("minimal_point_degree").get<int>() : b.get<int>();
    }
    if (j.contains("pic_rank_d8")) ev.pic_rank_d8 = j["pic_rank_d8"].get<int>();
    if (j.contains("quadric_form_d8")) ev.quadric_form_d8 = j["quadric_form_d8"].get<bool>();
    if (j.contains("separable_quadratic_point_d8"))
      ev.separable_quadratic_point_d8 = j["separable_quadratic_point_d8"].get<bool>();
    if (j.contains("certificates")) ev.certificates = j["certificates"].get<std::vector<std::string>>();
    return ev;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("bad evidence: ") + e.what());
  }
}

inline nlohmann::json report_to_json(const IrrReport& r) {
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& f : r.rules_fired) rules.push_back({{"id", f.id}, {"citation", f.citation}});
  return {{"possible", std::vector<int>(r.possible.begin(), r.possible.end())},
          {"rules_fired", rules},
          {"certificate_refs", r.certificate_refs}};
}

/// All consistent evidence over small point degrees, for soundness sweeps. The callback receives the
/// evidence and either the report or nullopt when the evidence was rejected as inconsistent.
template <class Visit>
void for_each_evidence(Visit&& visit) {
  const std::array<std::optional<PointStatus>, 4> st{std::nullopt, PointStatus::Exists, PointStatus::KnownEmpty,
                                                     PointStatus::Unknown};
  for (int d = 1; d <= 9; ++d)
    for (auto f : kFieldKinds)
      for (const auto& s1 : st)
        for (const auto& s2 : st)
          for (const auto& s3 : st)
            for (auto h : {Tristate::Yes, Tristate::No, Tristate::Unknown}) {
              std::vector<std::optional<int>> blunks{std::nullopt};
              if (d == 6) blunks = {std::nullopt, 1, 2, 3, 6};
              std::vector<std::optional<int>> ranks{std::nullopt};
              std::vector<std::optional<bool>> forms{std::nullopt}, seps{std::nullopt};
              if (d == 8) {
                ranks = {std::nullopt, 1, 2};
                forms = {std::nullopt, true, false};
                seps = {std::nullopt, true, false};
              }
              for (const auto& b : blunks)
                for (const auto& r : ranks)
                  for (const auto& q : forms)
                    for (const auto& s : seps) {
                      Evidence ev;
                      ev.degree = d;
                      ev.field = f;
                      if (s1) ev.points.push_back({1, *s1});
                      if (s2) ev.points.push_back({2, *s2});
                      if (s3) ev.points.push_back({3, *s3});
                      ev.h1_nontrivial = h;
                      ev.blunk = b;
                      ev.pic_rank_d8 = r;
                      ev.quadric_form_d8 = q;
                      ev.separable_quadratic_point_d8 = s;
                      std::optional<IrrReport> rep;
                      try {
                        rep = classify(ev);
                      } catch (const Error& e) {
                        if (e.code() != ErrorCode::InconsistentEvidence) throw;
                      }
                      visit(ev, rep);
                    }
            }
}

}  // namespace dpk
