#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpk/blunk_brauer.hpp"
#include "dpk/ffcount.hpp"
#include "dpk/galois_h1.hpp"
#include "dpk/general_position.hpp"
#include "dpk/irr_classify.hpp"
#include "dpk/padic_pointless.hpp"
#include "dpk/pic_lattice.hpp"
#include "dpk/weyl_groups.hpp"

namespace dpk::cli {

using nlohmann::json;

/// Raised for malformed input the user can fix; maps to exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A command finished but its certificate did not conclude; the JSON is still printed.
struct Outcome {
  json body;
  int exit_code = 0;
};

namespace detail {

inline json classes_to_json(const std::vector<DivisorClass>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back(c.coeffs);
  return a;
}

inline json matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(static_cast<std::int64_t>(m(i, k)));
    rows.push_back(r);
  }
  return rows;
}

inline json group_to_json(const FiniteAbelianGroup& g) {
  std::vector<std::string> f;
  for (const auto& a : g.invariant_factors) f.push_back(a.str());
  return {{"text", g.to_string()}, {"invariant_factors", f}};
}

/// Output of a command fed back in: take the embedded object under `key` if present.
inline json unwrap(json j, const char* key) {
  if (j.is_object() && j.contains("command") && j.contains(key)) return j[key];
  return j;
}

inline json read_json(const std::string& path, std::istream& in) {
  try {
    if (path == "-") return json::parse(in);
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open " + path);
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw UsageError("invalid JSON in " + path + ": " + e.what());
  }
}

/// "3,1,4" -> 0-based generator indices.
inline std::vector<int> parse_word(const std::string& text, int generators) {
  std::vector<int> w;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    int v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("bad word entry '" + tok + "'");
    }
    if (v < 1 || v > generators)
      throw UsageError("word entries must lie in 1.." + std::to_string(generators) + ", got " + std::to_string(v));
    w.push_back(v - 1);
  }
  return w;
}

inline std::vector<int> one_based(const std::vector<int>& w) {
  std::vector<int> out;
  for (int g : w) out.push_back(g + 1);
  return out;
}

inline PicLattice lattice_for(int degree, bool quadric) {
  if (quadric) {
    if (degree != 8) throw UsageError("--quadric only applies to degree 8");
    return PicLattice::quadric();
  }
  return PicLattice::blow_up(degree);
}

inline FiniteField field_from_json(const json& f) {
  const auto p = f.at("p").get<std::uint64_t>();
  const auto k = f.value("k", 1u);
  std::vector<std::uint64_t> modulus;
  if (f.contains("modulus")) modulus = f["modulus"].get<std::vector<std::uint64_t>>();
  return FiniteField(p, k, modulus);
}

inline json field_to_json(const FiniteField& F) {
  json j{{"p", F.p()}, {"k", F.k()}};
  if (F.k() > 1) j["modulus"] = F.modulus();
  return j;
}

/// q = p^k with p prime.
inline FiniteField field_of_order(std::uint64_t q) {
  if (q < 2) throw UsageError("field order must be at least 2");
  for (std::uint64_t p = 2; p * p <= q || p == q; ++p) {
    if (q % p) continue;
    std::uint64_t r = q;
    unsigned k = 0;
    while (r % p == 0) {
      r /= p;
      ++k;
    }
    if (r != 1) throw UsageError(std::to_string(q) + " is not a prime power");
    return FiniteField(p, k);
  }
  return FiniteField(q);
}

inline json surface_to_json(const SurfaceModel& s) {
  json forms = json::array();
  for (const auto& g : s.forms) forms.push_back(g.to_string());
  return {{"schema", 1}, {"kind", to_string(s.kind)}, {"field", field_to_json(s.field)}, {"forms", forms}};
}

inline SurfaceModel surface_from_json(const json& j, std::optional<std::uint64_t> q) {
  try {
    const auto kind = parse_surface_kind(j.at("kind").get<std::string>());
    std::optional<FiniteField> F;
    if (j.contains("field")) F = field_from_json(j["field"]);
    if (q) {
      if (F && F->q() != *q)
        throw UsageError("--q " + std::to_string(*q) + " disagrees with the file's field " + F->name());
      if (!F) F = field_of_order(*q);
    }
    if (!F) throw UsageError("surface has no field; pass --q");
    return SurfaceModel::parse(kind, *F, j.at("forms").get<std::vector<std::string>>());
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad surface file: ") + e.what());
  }
}

inline json perturbation_to_json(const Perturbation& p) {
  json c = json::array();
  for (const auto& x : p.c) c.push_back(x.str());
  return {{"c", c}, {"g", p.g}};
}

inline json cubic_to_json(const PAdicCubic& s) {
  json j{{"p", s.p}, {"form", s.form.to_string()}, {"pretty", s.form.pretty()}};
  if (s.provenance) {
    const auto& pr = *s.provenance;
    json line{{"modulus", pr.line.modulus}, {"beta", pr.line.beta}, {"gamma", pr.line.gamma}};
    if (pr.line.exponents) line["exponents"] = {pr.line.exponents->first, pr.line.exponents->second};
    json prov{{"line", line}, {"attempts", pr.attempts}, {"smooth", pr.smooth}};
    if (pr.seed) prov["seed"] = *pr.seed;
    if (pr.auxiliary_prime) prov["auxiliary_prime"] = *pr.auxiliary_prime;
    if (pr.perturbation) prov["perturbation"] = perturbation_to_json(*pr.perturbation);
    j["provenance"] = prov;
  }
  return j;
}

inline json certificate_to_json(const PointlessCertificate& c) {
  const auto& v = c.valuation;
  return {{"verdict", to_string(c.verdict)},
          {"reason", c.reason},
          {"residue_points", c.residue_points},
          {"valuation",
           {{"w3_valuation", v.w3_valuation},
            {"w3_class_mod3", v.w3_class_mod3},
            {"other_terms_lower_bound", v.other_terms_lower_bound},
            {"strict", v.strict}}}};
}

inline PAdicCubic cubic_from_json(const json& j) {
  try {
    const json& s = j.contains("surface") ? j["surface"] : j;
    RationalField Q;
    return {s.at("p").get<std::int64_t>(), parse_polynomial(s.at("form").get<std::string>(), Q, cubic_variables()),
            std::nullopt};
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad cubic file: ") + e.what());
  }
}

inline std::string table_text() {
  std::ostringstream o;
  o << "d | finite | local | number | arbitrary\n";
  for (int d = 1; d <= 9; ++d) {
    o << d;
    for (auto f : kFieldKinds) {
      std::string cell;
      for (int v : table_row(d, f)) cell += (cell.empty() ? "" : ",") + std::to_string(v);
      o << " | " << cell;
    }
    o << '\n';
  }
  return o.str();
}

inline json table_json() {
  json rows = json::array();
  for (int d = 1; d <= 9; ++d) {
    json cells = json::object();
    for (auto f : kFieldKinds) {
      const auto s = table_row(d, f);
      cells[to_string(f)] = std::vector<int>(s.begin(), s.end());
    }
    rows.push_back({{"degree", d}, {"cells", cells}});
  }
  return rows;
}

}  // namespace detail

/// Runs one invocation. JSON goes to `out` (or --out), errors as JSON to `err`.
/// Exit codes: 0 success, 1 usage or malformed input, 2 domain failure or inconclusive certificate.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degree-of-irrationality toolkit for del Pezzo surfaces", "dpk"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "Write the JSON result to this file instead of stdout");

  std::function<Outcome()> action;
  auto bind = [&](CLI::App* sub, std::function<Outcome()> f) { sub->callback([&action, f] { action = f; }); };

  // lattice
  auto* lattice = app.add_subcommand("lattice", "Picard lattice data");
  lattice->require_subcommand(1);
  int lat_degree = 6;
  bool quadric = false;
  for (const char* name : {"exceptional", "roots", "info"}) {
    auto* s = lattice->add_subcommand(name, std::string(name) == "exceptional" ? "Exceptional classes"
                                            : std::string(name) == "roots"     ? "Roots in K^perp"
                                                                               : "Gram matrix and canonical class");
    s->add_option("--degree", lat_degree, "Degree 1..9")->required()->check(CLI::Range(1, 9));
    s->add_flag("--quadric", quadric, "Use the P1 x P1 model (degree 8)");
    const std::string which = name;
    bind(s, [&, which]() -> Outcome {
      const auto L = detail::lattice_for(lat_degree, quadric);
      json j{{"schema", 1}, {"command", "lattice " + which}, {"degree", lat_degree},
             {"model", L.model() == LatticeModel::BlowUp ? "blow-up" : "quadric"}};
      if (which == "exceptional") {
        int margin = 0;
        const auto cs = enumerate_exceptional_classes(L, &margin);
        j["count"] = cs.size();
        j["classes"] = detail::classes_to_json(cs);
        j["search_margin"] = margin;
      } else if (which == "roots") {
        const auto r = enumerate_roots(L);
        j["label"] = root_system_label(lat_degree);
        j["count"] = r.roots.size();
        j["roots"] = detail::classes_to_json(r.roots);
        j["simple_roots"] = detail::classes_to_json(simple_roots(L));
      } else {
        j["rank"] = L.rank();
        j["gram"] = detail::matrix_to_json(L.gram());
        j["canonical"] = L.canonical().coeffs;
      }
      return {j, 0};
    });
  }

  // h1
  auto* h1 = app.add_subcommand("h1", "H^1 of the cyclic group generated by a Weyl group element");
  int h1_degree = 3;
  std::string word_text, module_text = "pic";
  h1->add_option("--degree", h1_degree, "Degree 1..6")->required()->check(CLI::Range(1, 6));
  h1->add_option("--word", word_text, "Comma-separated simple reflections, numbered from 1")->required();
  h1->add_option("--module", module_text, "pic or orthogonal")->check(CLI::IsMember({"pic", "orthogonal"}));
  bind(h1, [&]() -> Outcome {
    const auto L = PicLattice::blow_up(h1_degree);
    const int n = static_cast<int>(simple_roots(L).size());
    const auto w = detail::parse_word(word_text, n);
    const auto g = element_from_word(L, w);
    const auto module = module_text == "pic" ? H1Module::Pic : H1Module::Orthogonal;
    const auto c = certify(L, g, module, nullptr, w);
    json j{{"schema", 1}, {"command", "h1"}, {"degree", h1_degree}, {"module", module_text},
           {"word", detail::one_based(w)}, {"order", c.order}, {"matrix", detail::matrix_to_json(c.matrix)},
           {"h1", detail::group_to_json(c.h1)}, {"conclusion", to_string(c.conclusion)}};
    return {j, c.conclusion == Conclusion::NotRational ? 0 : 2};
  });

  // h1-scan
  auto* scan = app.add_subcommand("h1-scan", "Scan a Weyl group (or a sample of it) for nontrivial H^1");
  int scan_degree = 4, threads = 1, samples = 2000, word_length = 0;
  std::uint64_t seed = 2024;
  bool deep = false;
  std::string cache_dir = ".dpk-cache";
  scan->add_option("--degree", scan_degree, "Degree 1..6")->required()->check(CLI::Range(1, 6));
  scan->add_flag("--deep", deep, "Full enumeration for degree 2 (cached)");
  scan->add_option("--threads", threads, "Worker threads for sampled scans")->check(CLI::Range(1, 256));
  scan->add_option("--samples", samples, "Sample size when the group is not enumerated")->check(CLI::Range(1, 10000000));
  scan->add_option("--seed", seed, "Sampling seed");
  scan->add_option("--word-length", word_length, "Sampled word length (0: six times the rank)");
  scan->add_option("--cache", cache_dir, "Directory for cached full scans");
  scan->add_option("--module", module_text, "pic or orthogonal")->check(CLI::IsMember({"pic", "orthogonal"}));
  bind(scan, [&]() -> Outcome {
    const auto L = PicLattice::blow_up(scan_degree);
    const auto module = module_text == "pic" ? H1Module::Pic : H1Module::Orthogonal;
    json j{{"schema", 1}, {"command", "h1-scan"}, {"degree", scan_degree}, {"module", module_text}};
    const bool full = scan_degree >= 3 || (scan_degree == 2 && deep);
    if (scan_degree == 1 && deep) fail(ErrorCode::TooLarge, "W(E8) is too large to enumerate; use sampling");
    if (full) {
      const WeylGroup W(L, WeylGroup::kOrders[scan_degree]);
      std::optional<std::filesystem::path> cache;
      if (scan_degree == 2) {
        std::filesystem::create_directories(cache_dir);
        cache = cache_dir;
      }
      const auto s = scan_weyl_group(W, module, cache);
      j["mode"] = "full";
      j["summary"] = summary_to_json(s);
      j["from_cache"] = s.from_cache;
      return {j, 0};
    }
    const auto els = sample_elements(L, samples, seed, word_length);
    std::vector<LatticeAutomorphism> gs;
    for (const auto& e : els) gs.push_back(e.element);
    const auto res = scan_h1(L, gs, module, threads);
    std::map<std::string, std::uint64_t> hist;
    json witness;
    std::uint64_t nontrivial = 0;
    for (std::size_t i = 0; i < res.certificates.size(); ++i) {
      const auto& c = res.certificates[i];
      ++hist[c.h1.to_string()];
      if (c.conclusion == Conclusion::NotRational) {
        ++nontrivial;
        if (witness.is_null())
          witness = {{"word", detail::one_based(els[i].word)}, {"h1", detail::group_to_json(c.h1)}, {"order", c.order}};
      }
    }
    j["mode"] = "sampled";
    j["seed"] = seed;
    j["samples"] = samples;
    j["word_length"] = word_length;
    j["summary"] = {{"elements", samples}, {"nontrivial", nontrivial}, {"histogram", hist}};
    if (!witness.is_null()) j["witness"] = witness;
    return {j, 0};
  });

  // count
  auto* count = app.add_subcommand("count", "Count points of a surface over a finite field");
  std::string kind_text, coeffs_path;
  std::vector<std::string> forms;
  std::uint64_t q = 0, budget = 0;
  count->add_option("--kind", kind_text, "cubic, quadric-pair, dp2 or dp1")
      ->check(CLI::IsMember({"cubic", "quadric-pair", "dp2", "dp1"}));
  count->add_option("--q", q, "Field order p^k");
  count->add_option("--coeffs", coeffs_path, "Surface JSON file (or - for stdin)");
  count->add_option("--form", forms, "Defining form (repeat for a quadric pair)");
  count->add_option("--budget", budget, "Enumeration cap (default DPK_BUDGET or 1e8)");
  auto load_surface = [&]() {
    if (!coeffs_path.empty()) {
      auto j = detail::unwrap(detail::read_json(coeffs_path, in), "surface");
      if (!kind_text.empty()) {
        if (j.contains("kind") && j["kind"] != kind_text) throw UsageError("--kind disagrees with the file");
        j["kind"] = kind_text;
      }
      return detail::surface_from_json(j, q ? std::optional<std::uint64_t>(q) : std::nullopt);
    }
    if (kind_text.empty() || forms.empty() || !q) throw UsageError("give --coeffs, or --kind, --q and --form");
    return SurfaceModel::parse(parse_surface_kind(kind_text), detail::field_of_order(q), forms);
  };
  bind(count, [&]() -> Outcome {
    const auto s = load_surface();
    const auto cap = budget ? budget : enumeration_budget();
    const auto pc = count_points(s, cap);
    json j{{"schema", 1}, {"command", "count"}, {"surface", detail::surface_to_json(s)}, {"budget", cap},
           {"q", pc.q}, {"count", pc.count}, {"congruent_1_mod_q", pc.congruent()}};
    j["trace"] = pc.trace ? json(*pc.trace) : json(nullptr);
    return {j, 0};
  });

  // smooth
  auto* smooth = app.add_subcommand("smooth", "Smoothness certificate via the Jacobian ideal");
  std::string smooth_path;
  std::vector<std::string> smooth_forms;
  std::string smooth_kind = "cubic";
  std::uint64_t smooth_q = 0;
  smooth->add_option("--surface", smooth_path, "Surface JSON file (or -)");
  smooth->add_option("--kind", smooth_kind, "cubic, quadric-pair, dp2 or dp1")
      ->check(CLI::IsMember({"cubic", "quadric-pair", "dp2", "dp1"}));
  smooth->add_option("--form", smooth_forms, "Defining form(s)");
  smooth->add_option("--q", smooth_q, "Field order; omit for a cubic over the rationals");
  bind(smooth, [&]() -> Outcome {
    json j{{"schema", 1}, {"command", "smooth"}};
    if (smooth_path.empty() && !smooth_q) {
      if (smooth_kind != "cubic" || smooth_forms.size() != 1)
        throw UsageError("over the rationals give one cubic --form (or pass --q)");
      RationalField Q;
      const auto f = parse_polynomial(smooth_forms[0], Q, cubic_variables());
      j["field"] = "QQ";
      j["form"] = f.to_string();
      j["smooth"] = is_smooth_cubic(f);
      return {j, 0};
    }
    SurfaceModel s;
    if (!smooth_path.empty()) {
      s = detail::surface_from_json(detail::unwrap(detail::read_json(smooth_path, in), "surface"),
                                    smooth_q ? std::optional<std::uint64_t>(smooth_q) : std::nullopt);
    } else {
      s = SurfaceModel::parse(parse_surface_kind(smooth_kind), detail::field_of_order(smooth_q), smooth_forms);
    }
    j["surface"] = detail::surface_to_json(s);
    j["smooth"] = is_smooth(s);
    return {j, 0};
  });

  // pointless-cubic
  auto* pc = app.add_subcommand("pointless-cubic", "Build a cubic surface over Q_p with no Q_p-points");
  std::int64_t prime = 11;
  std::uint64_t pc_seed = 0;
  bool paper_line = false, perturb = false;
  pc->add_option("--p", prime, "Prime p >= 5")->required();
  pc->add_option("--seed", pc_seed, "Seed for the line and perturbation");
  pc->add_flag("--paper-line", paper_line, "Use the line x + t^625 y + t^223 z over GF(11^3), t^3 + 2t + 9 = 0");
  pc->add_flag("--perturb", perturb, "Add random terms c_i w^i g_{3-i} with p | c_i");
  bind(pc, [&]() -> Outcome {
    BuildOptions o;
    o.seed = pc_seed;
    o.paper_line = paper_line;
    if (perturb) {
      std::mt19937_64 rng(pc_seed ^ 0x9e3779b97f4a7c15ULL);
      o.perturbation = random_perturbation(prime, rng);
    }
    const auto s = build_pointless_cubic(prime, o);
    const auto cert = verify_pointless(s);
    json j{{"schema", 1}, {"command", "pointless-cubic"}, {"seed", pc_seed}, {"paper_line", paper_line},
           {"surface", detail::cubic_to_json(s)}, {"certificate", detail::certificate_to_json(cert)}};
    return {j, cert.verdict == PointlessVerdict::NoQpPoints ? 0 : 2};
  });

  // verify-pointless
  auto* vp = app.add_subcommand("verify-pointless", "Check that a cubic over Q_p has no Q_p-points");
  std::string vp_path;
  vp->add_option("file,--file", vp_path, "Surface JSON (output of pointless-cubic) or - for stdin");
  bind(vp, [&]() -> Outcome {
    if (vp_path.empty()) throw UsageError("give a file or - for stdin");
    const auto s = detail::cubic_from_json(detail::read_json(vp_path, in));
    const auto cert = verify_pointless(s);
    json j{{"schema", 1}, {"command", "verify-pointless"}, {"surface", detail::cubic_to_json(s)},
           {"certificate", detail::certificate_to_json(cert)}};
    return {j, cert.verdict == PointlessVerdict::NoQpPoints ? 0 : 2};
  });

  // blunk
  auto* blunk = app.add_subcommand("blunk", "Minimal point degree of a degree 6 surface from its Brauer data");
  std::string blunk_path, blunk_model, blunk_example;
  blunk->add_option("--config", blunk_path, "Triple JSON (or -)");
  blunk->add_option("--model", blunk_model, "number or local (overrides the file)")
      ->check(CLI::IsMember({"number", "local"}));
  blunk->add_option("--example", blunk_example, "Print a recorded configuration")
      ->check(CLI::IsMember({"degree-two", "degree-three", "degree-six", "local-degree-three"}));
  bind(blunk, [&]() -> Outcome {
    BlunkTriple T;
    if (!blunk_example.empty()) {
      if (blunk_example == "degree-two") T = blunk_examples::degree_two();
      if (blunk_example == "degree-three") T = blunk_examples::degree_three();
      if (blunk_example == "degree-six") T = blunk_examples::degree_six();
      if (blunk_example == "local-degree-three") T = blunk_examples::local_degree_three();
    } else if (!blunk_path.empty()) {
      T = triple_from_json(detail::unwrap(detail::read_json(blunk_path, in), "triple"));
    } else {
      throw UsageError("give --config or --example");
    }
    if (!blunk_model.empty()) T.model = parse_field_model(blunk_model);
    const auto r = minimal_point_degree(T);
    json tried = json::array();
    for (const auto& [n, ok] : r.tried) tried.push_back({{"degree", n}, {"splits", ok}});
    json j{{"schema", 1}, {"command", "blunk"}, {"model", to_string(T.model)}, {"minimal_point_degree", r.degree},
           {"tried", tried}, {"triple", triple_to_json(T)}};
    return {j, 0};
  });

  // classify
  auto* cls = app.add_subcommand("classify", "Possible degrees of irrationality from evidence");
  int cls_degree = 0;
  std::string field_text, evidence_path;
  cls->add_option("--degree", cls_degree, "Degree 1..9 (overrides the evidence file)");
  cls->add_option("--field", field_text, "finite, local, number or arbitrary")
      ->check(CLI::IsMember({"finite", "local", "number", "arbitrary"}));
  cls->add_option("--evidence", evidence_path, "Evidence JSON (or -)");
  bind(cls, [&]() -> Outcome {
    if (evidence_path.empty() && !cls_degree) throw UsageError("give --degree or --evidence");
    Evidence ev;
    if (!evidence_path.empty()) ev = evidence_from_json(detail::unwrap(detail::read_json(evidence_path, in), "evidence"));
    if (cls_degree) ev.degree = cls_degree;
    if (!field_text.empty()) ev.field = parse_field_kind(field_text);
    if (ev.degree < 1 || ev.degree > 9) throw UsageError("give --degree in 1..9");
    const auto r = classify(ev);
    json j{{"schema", 1}, {"command", "classify"}, {"evidence", evidence_to_json(ev)}, {"report", report_to_json(r)}};
    return {j, 0};
  });

  // table
  auto* table = app.add_subcommand("table", "Possible degrees of irrationality by degree and field type");
  std::string format = "json";
  table->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  bind(table, [&]() -> Outcome {
    if (format == "text") return {json(detail::table_text()), 0};
    return {json{{"schema", 1}, {"command", "table"}, {"columns", {"finite", "local", "number", "arbitrary"}},
                 {"rows", detail::table_json()}},
            0};
  });

  // general-position
  auto* gp = app.add_subcommand("general-position", "Residual six points of two plane cubics under the 3-uple embedding");
  std::vector<std::string> gp_forms;
  std::uint64_t gp_p = 0, gp_seed = 0;
  gp->add_option("--forms", gp_forms, "Two cubics in x, y, z through the coordinate points")->expected(2);
  gp->add_option("--p", gp_p, "Work over GF(p); with no --forms, draw random cubics");
  gp->add_option("--seed", gp_seed, "Seed for random cubics");
  bind(gp, [&]() -> Outcome {
    const std::vector<std::string> vars{"x", "y", "z"};
    json j{{"schema", 1}, {"command", "general-position"}};
    GeneralPositionReport rep;
    if (gp_p) {
      FiniteField F(gp_p);
      std::vector<MultiPoly<FiniteField>> cs;
      if (gp_forms.empty()) {
        std::mt19937_64 rng(gp_seed);
        cs = {random_cubic_through_coordinate_points(F, rng), random_cubic_through_coordinate_points(F, rng)};
        j["seed"] = gp_seed;
      } else {
        cs = {parse_polynomial(gp_forms[0], F, vars), parse_polynomial(gp_forms[1], F, vars)};
      }
      j["field"] = F.name();
      j["forms"] = {cs[0].to_string(), cs[1].to_string()};
      rep = veronese_general_position(cs[0], cs[1]);
    } else {
      RationalField Q;
      if (gp_forms.empty())
        gp_forms = {"x*y^2 + x^2*z - x*y*z + x*z^2 + y*z^2", "x^2*y - x*y^2 + x^2*z + x*y*z - y^2*z + x*z^2"};
      const auto c1 = parse_polynomial(gp_forms[0], Q, vars), c2 = parse_polynomial(gp_forms[1], Q, vars);
      j["field"] = "QQ";
      j["forms"] = {c1.to_string(), c2.to_string()};
      rep = veronese_general_position(c1, c2);
    }
    j["intersection_degree"] = rep.intersection_degree;
    j["residual_degree"] = rep.residual_degree;
    j["rank"] = rep.rank;
    j["hyperplanes"] = rep.hyperplanes;
    j["general_position"] = rep.general_position;
    return {j, rep.general_position ? 0 : 2};
  });

  std::vector<std::string> argv_store{"dpk"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  auto error_json = [&](const std::string& kind, const std::string& message) {
    err << json{{"schema", 1}, {"error", kind}, {"message", message}}.dump() << '\n';
  };
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    error_json("usage", e.what());
    return 1;
  }
  try {
    const Outcome o = action();
    std::ostringstream body;
    if (o.body.is_string()) {
      body << o.body.get<std::string>();
    } else {
      body << o.body.dump(2) << '\n';
    }
    if (out_path.empty()) {
      out << body.str();
    } else {
      std::ofstream f(out_path);
      if (!f) {
        error_json("usage", "cannot write " + out_path);
        return 1;
      }
      f << body.str();
    }
    return o.exit_code;
  } catch (const UsageError& e) {
    error_json("usage", e.what());
    return 1;
  } catch (const Error& e) {
    const bool usage = e.code() == ErrorCode::ParseError || e.code() == ErrorCode::InvalidWord;
    error_json(std::string(to_string(e.code())), e.what());
    return usage ? 1 : 2;
  } catch (const std::filesystem::filesystem_error& e) {
    error_json("io", e.what());
    return 1;
  }
}

}  // namespace dpk::cli
