#include <gtest/gtest.h>

#include "dpk/irr_classify.hpp"

using namespace dpk;

namespace {

Evidence ev(int d, FieldKind f, std::vector<PointRecord> pts = {}) {
  Evidence e;
  e.degree = d;
  e.field = f;
  e.points = std::move(pts);
  return e;
}

bool inconsistent(const Evidence& e) {
  try {
    (void)classify(e);
  } catch (const Error& err) {
    return err.code() == ErrorCode::InconsistentEvidence;
  }
  return false;
}

}  // namespace

// Transcribed independently of the library table.
TEST(Table, AllCells) {
  const char* rows[9][4] = {
      {"1,2", "1,2", "1,2", "1,2"},   {"1,2", "1,2", "1,2", "1,2"}, {"1,2", "1,2,3", "1,2,3", "1,2,3"},
      {"1,2", "1,2", "1,2,4", "1,2,4"}, {"1", "1", "1", "1"},       {"1", "1,2,3", "1,2,3,6", "1,2,3,6"},
      {"1", "1", "1", "1"},           {"1", "1,2", "1,2", "1,2,4"}, {"1", "1,3", "1,3", "1,3"}};
  for (int d = 1; d <= 9; ++d)
    for (int f = 0; f < 4; ++f) {
      std::string s;
      for (int v : table_row(d, kFieldKinds[f])) s += (s.empty() ? "" : ",") + std::to_string(v);
      EXPECT_EQ(s, rows[d - 1][f]) << "degree " << d << " field " << to_string(kFieldKinds[f]);
    }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(ev(5, FieldKind::Arbitrary)).possible, (std::set<int>{1}));
  EXPECT_EQ(classify(ev(3, FieldKind::Finite)).possible, (std::set<int>{1, 2}));
  EXPECT_EQ(classify(ev(8, FieldKind::Arbitrary)).possible, (std::set<int>{1, 2, 4}));
  auto six = ev(6, FieldKind::Local);
  six.blunk = 6;
  EXPECT_TRUE(inconsistent(six));
  six.blunk = 3;
  EXPECT_EQ(classify(six).possible, (std::set<int>{3}));
}

TEST(Classify, DegreeRules) {
  EXPECT_EQ(classify(ev(3, FieldKind::Local, {{1, PointStatus::KnownEmpty}})).possible, (std::set<int>{3}));
  EXPECT_EQ(classify(ev(3, FieldKind::Number, {{1, PointStatus::Exists}})).possible, (std::set<int>{1, 2}));
  EXPECT_EQ(classify(ev(4, FieldKind::Number, {{1, PointStatus::KnownEmpty}, {2, PointStatus::KnownEmpty}})).possible,
            (std::set<int>{4}));
  EXPECT_TRUE(inconsistent(ev(4, FieldKind::Local, {{1, PointStatus::KnownEmpty}, {2, PointStatus::KnownEmpty}})));
  EXPECT_EQ(classify(ev(9, FieldKind::Number, {{1, PointStatus::KnownEmpty}})).possible, (std::set<int>{3}));
  EXPECT_EQ(classify(ev(9, FieldKind::Number, {{1, PointStatus::Exists}})).possible, (std::set<int>{1}));
  EXPECT_EQ(classify(ev(6, FieldKind::Number, {{1, PointStatus::Exists}})).possible, (std::set<int>{1}));
  EXPECT_EQ(classify(ev(6, FieldKind::Number, {{1, PointStatus::KnownEmpty}, {2, PointStatus::Exists}})).possible,
            (std::set<int>{2}));
  EXPECT_TRUE(inconsistent(ev(7, FieldKind::Arbitrary, {{1, PointStatus::KnownEmpty}})));
  EXPECT_TRUE(inconsistent(ev(2, FieldKind::Finite, {{1, PointStatus::KnownEmpty}})));
  EXPECT_TRUE(inconsistent(ev(3, FieldKind::Number, {{1, PointStatus::KnownEmpty}, {2, PointStatus::Exists}})));
}

TEST(Classify, DegreeEight) {
  auto e = ev(8, FieldKind::Arbitrary);
  e.quadric_form_d8 = false;
  EXPECT_EQ(classify(e).possible, (std::set<int>{1}));
  e.quadric_form_d8 = true;
  e.pic_rank_d8 = 1;
  e.points = {{1, PointStatus::KnownEmpty}};
  EXPECT_EQ(classify(e).possible, (std::set<int>{2, 4}));  // open case stays wide
  e.points.push_back({2, PointStatus::Exists});
  EXPECT_EQ(classify(e).possible, (std::set<int>{2, 4}));  // an inseparable point does not pin 2
  e.separable_quadratic_point_d8 = true;
  EXPECT_EQ(classify(e).possible, (std::set<int>{2}));
  e.quadric_form_d8 = false;
  EXPECT_TRUE(inconsistent(e));  // blow-up form has Picard rank 2
}

TEST(Classify, H1ExcludesOne) {
  auto e = ev(3, FieldKind::Finite);
  e.h1_nontrivial = Tristate::Yes;
  e.certificates = {"h1:Z/3"};
  const auto r = classify(e);
  EXPECT_EQ(r.possible, (std::set<int>{2}));
  EXPECT_EQ(r.certificate_refs, e.certificates);
  e.degree = 5;
  EXPECT_TRUE(inconsistent(e));
}

TEST(Classify, ExhaustiveSoundness) {
  std::size_t consistent = 0, rejected = 0;
  const auto& catalogue = rule_catalogue();
  for_each_evidence([&](const Evidence& e, const std::optional<IrrReport>& r) {
    if (!r) {
      ++rejected;
      return;
    }
    ++consistent;
    const auto cell = table_row(e.degree, e.field);
    EXPECT_FALSE(r->possible.empty());
    for (int v : r->possible) EXPECT_TRUE(cell.count(v)) << evidence_to_json(e).dump();
    for (const auto& f : r->rules_fired) {
      ASSERT_TRUE(catalogue.count(f.id));
      EXPECT_EQ(catalogue.at(f.id), f.citation);
    }
  });
  EXPECT_GT(consistent, 1000u);
  EXPECT_GT(rejected, 0u);
}

TEST(Classify, Monotone) {
  std::size_t checked = 0;
  for_each_evidence([&](const Evidence& e, const std::optional<IrrReport>& r) {
    if (!r) return;
    for (std::size_t i = 0; i < e.points.size(); ++i) {
      if (e.points[i].status == PointStatus::Unknown) continue;
      Evidence weak = e;
      weak.points[i].status = PointStatus::Unknown;
      const auto w = classify(weak);
      for (int v : r->possible) EXPECT_TRUE(w.possible.count(v)) << evidence_to_json(e).dump();
      ++checked;
    }
    if (e.h1_nontrivial == Tristate::Yes) {
      Evidence weak = e;
      weak.h1_nontrivial = Tristate::Unknown;
      const auto w = classify(weak);
      for (int v : r->possible) EXPECT_TRUE(w.possible.count(v));
    }
  });
  EXPECT_GT(checked, 1000u);
}

TEST(Json, EvidenceRoundTrip) {
  auto e = ev(8, FieldKind::Local, {{1, PointStatus::KnownEmpty}});
  e.quadric_form_d8 = true;
  e.separable_quadratic_point_d8 = true;
  e.h1_nontrivial = Tristate::No;
  const auto j = evidence_to_json(e);
  EXPECT_EQ(evidence_to_json(evidence_from_json(j)), j);
  EXPECT_EQ(report_to_json(classify(evidence_from_json(j)))["possible"], nlohmann::json({2}));
  const auto withBlunk = nlohmann::json::parse(R"({"degree":6,"field":"number","blunk":{"minimal_point_degree":3}})");
  EXPECT_EQ(classify(evidence_from_json(withBlunk)).possible, (std::set<int>{3}));
}
