#include <doctest.h>

#include <set>

#include "testrl/errors.hpp"
#include "testrl/random.hpp"
#include "testrl/reward.hpp"

using namespace testrl;

namespace {

QualityReport report(bool syntax, bool assertion, bool focal, bool cond = false) {
  QualityReport r;
  r.correct_syntax = syntax;
  r.has_assertion = assertion;
  r.invokes_focal = focal;
  r.conditional_or_exception = cond;
  return r;
}

std::vector<LabeledRecord> labeled_with(std::size_t zeros, std::size_t ones, std::size_t broken) {
  std::vector<LabeledRecord> out;
  std::size_t id = 0;
  const auto add = [&](int reward, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      LabeledRecord l;
      l.record.repo = "r";
      l.record.test = "t" + std::to_string(id++);
      l.reward = reward;
      out.push_back(l);
    }
  };
  add(-1, broken / 2);
  add(0, zeros);
  add(1, ones);
  add(-1, broken - broken / 2);
  return out;
}

std::map<int, std::size_t> class_sizes(const std::vector<LabeledRecord>& v) {
  std::map<int, std::size_t> sizes;
  for (const auto& l : v) ++sizes[l.reward];
  return sizes;
}

}  // namespace

TEST_CASE("individual reward") {
  const RewardScheme assertion{{Property::has_assertion}, Strategy::individual};
  const RewardScheme cond{{Property::conditional_or_exception}, Strategy::individual};
  CHECK(individual_reward(report(false, true, true), assertion) == -1);
  CHECK(individual_reward(report(true, true, false), assertion) == 1);
  CHECK(individual_reward(report(true, false, false), assertion) == 0);
  CHECK(individual_reward(report(true, true, true, true), cond) == 0);
  CHECK(individual_reward(report(true, true, true, false), cond) == 1);
  CHECK_THROWS_AS(individual_reward(report(true, true, true), RewardScheme{{Property::has_assertion}, Strategy::combined}),
                  std::invalid_argument);
}

TEST_CASE("combined reward") {
  const RewardScheme both{{Property::has_assertion, Property::invokes_focal}, Strategy::combined};
  CHECK(combined_reward(report(true, true, true), both) == 2);
  CHECK(combined_reward(report(false, true, true), both) == -1);
  CHECK(combined_reward(report(true, true, false), both) == 1);
  CHECK(reward_for(report(true, false, false), both) == 0);
}

TEST_CASE("scheme validation") {
  CHECK_THROWS_AS((RewardScheme{{}, Strategy::combined}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((RewardScheme{{Property::has_assertion, Property::has_assertion}, Strategy::combined}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((RewardScheme{{Property::correct_syntax}, Strategy::combined}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((RewardScheme{{Property::has_assertion, Property::has_comment}, Strategy::individual}.validate()),
                  std::invalid_argument);
  CHECK_NOTHROW((RewardScheme{{Property::has_comment}, Strategy::individual}.validate()));
}

TEST_CASE("polarity") {
  CHECK(polarity_of(Property::has_assertion) == Polarity::positive);
  CHECK(polarity_of(Property::descriptive_name) == Polarity::positive);
  CHECK(polarity_of(Property::duplicate_assertion) == Polarity::negative);
  CHECK(polarity_of(Property::conditional_or_exception) == Polarity::negative);
}

TEST_CASE("label_dataset") {
  const RewardScheme assertion{{Property::has_assertion}, Strategy::individual};
  std::vector<CorpusRecord> records(3);
  records[0].test = "[TestMethod]\npublic void TestAdd() { var r = c.Add(1, 2); Assert.AreEqual(3, r); }";
  records[1].test = "[TestMethod]\npublic void TestAdd() { if (c.Add(1, 2) == 3) { Assert.IsTrue(true); } }";
  records[2].test = "[TestMethod]\npublic void TestAdd() { c.Add(";
  for (auto& r : records) r.focal_method = "Add";
  const auto labeled = label_dataset(records, assertion);
  REQUIRE(labeled.size() == 3);
  CHECK(labeled[0].reward == 1);
  CHECK(labeled[1].reward == 1);
  CHECK(labeled[2].reward == -1);
  CHECK(labeled[0].record == records[0]);
  CHECK(labeled[1].report.conditional_or_exception);
  CHECK(label_dataset(std::vector<CorpusRecord>{}, assertion).empty());
}

TEST_CASE("resampling class sizes") {
  SUBCASE("100/40/200") {
    const auto out = resample_balanced(labeled_with(100, 40, 200), 1, 3);
    CHECK(out.size() == 160);
    CHECK(class_sizes(out) == std::map<int, std::size_t>{{-1, 80}, {0, 40}, {1, 40}});
  }
  SUBCASE("already balanced") {
    const auto in = labeled_with(50, 50, 100);
    const auto out = resample_balanced(in, 1, 3);
    CHECK(class_sizes(out) == std::map<int, std::size_t>{{-1, 100}, {0, 50}, {1, 50}});
    CHECK(out.size() == in.size());
  }
  SUBCASE("no broken records") {
    CHECK(resample_balanced(labeled_with(5, 9, 0), 1, 3).size() == 10);
  }
  CHECK_THROWS_AS(resample_balanced(labeled_with(10, 0, 5), 1, 3), InsufficientData);
  CHECK_THROWS_AS(resample_balanced(labeled_with(0, 10, 5), 1, 3), InsufficientData);
  CHECK_THROWS_AS(resample_balanced(labeled_with(10, 10, 5), 0, 3), std::invalid_argument);
}

TEST_CASE("resampling keeps input order and distinct records, and is seed-deterministic") {
  const auto in = labeled_with(30, 70, 90);
  const auto a = resample_balanced(in, 1, 42);
  const auto b = resample_balanced(in, 1, 42);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].record == b[i].record);
  std::vector<std::size_t> positions;
  for (const auto& l : a) {
    const auto it = std::find_if(in.begin(), in.end(), [&](const auto& x) { return x.record == l.record; });
    positions.push_back(static_cast<std::size_t>(it - in.begin()));
  }
  CHECK(std::is_sorted(positions.begin(), positions.end()));
  CHECK(std::set<std::size_t>(positions.begin(), positions.end()).size() == positions.size());
  const auto c = resample_balanced(in, 1, 43);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs = differs || !(a[i].record == c[i].record);
  CHECK(differs);
}

TEST_CASE("resampling with k > 1 splits at the median") {
  std::vector<LabeledRecord> in;
  for (int r : {0, 1, 1, 2, 2, 2, 2, -1, -1}) {
    LabeledRecord l;
    l.record.test = std::to_string(in.size());
    l.reward = r;
    in.push_back(l);
  }
  // Non-negative rewards 0 1 1 2 2 2 2: upper median 2, lower class {0,1,1}.
  const auto out = resample_balanced(in, 2, 1);
  const auto sizes = class_sizes(out);
  CHECK(sizes.at(-1) == 2);
  CHECK(sizes.at(2) == 3);
  CHECK(sizes.count(0) + sizes.count(1) > 0);
  CHECK(out.size() == 8);

  // Median equal to the minimum moves the threshold up.
  std::vector<LabeledRecord> low;
  for (int r : {0, 0, 0, 0, 1}) {
    LabeledRecord l;
    l.reward = r;
    low.push_back(l);
  }
  CHECK(resample_balanced(low, 2, 1).size() == 2);
}

TEST_CASE("reward algebra on random reports") {
  Rng rng(5);
  const std::vector<Property> pool = {Property::has_assertion, Property::invokes_focal, Property::has_comment,
                                      Property::descriptive_name, Property::duplicate_assertion,
                                      Property::conditional_or_exception};
  for (int i = 0; i < 2000; ++i) {
    QualityReport r;
    for (Property p : kAllProperties) r.set(p, uniform_index(rng, 2) == 1);
    for (Property p : pool)
      CHECK(individual_reward(r, {{p}, Strategy::individual}) == combined_reward(r, {{p}, Strategy::combined}));
    std::vector<Property> a, b;
    for (Property p : pool) (uniform_index(rng, 2) ? a : b).push_back(p);
    if (a.empty() || b.empty()) continue;
    std::vector<Property> all = a;
    all.insert(all.end(), b.begin(), b.end());
    const int whole = combined_reward(r, {all, Strategy::combined});
    if (r.correct_syntax)
      CHECK(whole == combined_reward(r, {a, Strategy::combined}) + combined_reward(r, {b, Strategy::combined}));
    else
      CHECK(whole == -1);
    CHECK(whole >= -1);
    CHECK(whole <= static_cast<int>(all.size()));
  }
}
