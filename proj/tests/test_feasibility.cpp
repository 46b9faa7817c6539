#include <doctest.h>

#include <random>

#include "ivb/bounds.hpp"
#include "ivb/feasibility.hpp"
#include "support/gen.hpp"

using namespace ivb;

TEST_CASE("record list covers 8 inequalities per arm in fixed order") {
  auto law = gen::worked_example();
  CounterfactualJoint<Rat> joint;
  joint.pi = {rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)};
  auto records = check_joint(law, joint);
  REQUIRE(records.size() == 16);
  // per arm: four marginal records then four joint records
  for (int z = 0; z < 2; ++z) {
    for (int r = 0; r < 4; ++r) CHECK(records[8 * z + r].kind == IneqKind::kMarginal);
    for (int r = 4; r < 8; ++r) CHECK(records[8 * z + r].kind == IneqKind::kJoint);
    CHECK(records[8 * z].z == z + 1);
  }
}

TEST_CASE("feasible witness satisfies every inequality") {
  auto law = gen::worked_example();
  auto res = joint_feasible(law);
  REQUIRE(res.feasible);
  CHECK(validate_joint(res.witness, Rat(0)).empty());
  for (const auto& rec : check_joint(law, res.witness)) CHECK(rec.satisfied);
}

TEST_CASE("all-ones joint violates the perfect-compliance marginal") {
  auto law = gen::perfect_compliance();
  CounterfactualJoint<Rat> joint;
  joint.at(1, 1) = Rat(1);
  auto records = check_joint(law, joint);
  bool found = false;
  for (const auto& rec : records) {
    if (rec.kind == IneqKind::kMarginal && rec.z == 1 && rec.y == 1 && rec.i == 0) {
      found = true;
      CHECK(rec.lhs == Rat(1));
      CHECK(rec.rhs == rat(2, 5));
      CHECK_FALSE(rec.satisfied);
    }
  }
  CHECK(found);
}

TEST_CASE("independent coupling of the point-identified marginals passes") {
  auto law = gen::perfect_compliance();
  CounterfactualJoint<Rat> joint;  // margins (2/5, 7/10), coupled independently
  joint.at(0, 0) = rat(3, 5) * rat(3, 10);
  joint.at(0, 1) = rat(3, 5) * rat(7, 10);
  joint.at(1, 0) = rat(2, 5) * rat(3, 10);
  joint.at(1, 1) = rat(2, 5) * rat(7, 10);
  for (const auto& rec : check_joint(law, joint)) CHECK(rec.satisfied);
}

TEST_CASE("pinned margins accept only the identified point") {
  auto law = gen::perfect_compliance();
  CHECK(joint_feasible(law, std::make_optional(std::make_pair(rat(2, 5), rat(7, 10)))).feasible);
  CHECK_FALSE(
      joint_feasible(law, std::make_optional(std::make_pair(rat(1, 2), rat(7, 10)))).feasible);
  CHECK_THROWS_WITH_AS(
      joint_feasible(law, std::make_optional(std::make_pair(rat(3, 2), rat(1, 2)))),
      doctest::Contains("margin outside [0,1]"), std::invalid_argument);
}

TEST_CASE("compatibility verdicts") {
  CHECK(iv_compatible(gen::worked_example()));
  CHECK(iv_compatible(gen::perfect_compliance()));

  ObservedLaw<Rat> contradictory;
  contradictory.K = 2;
  contradictory.arm_labels = {"a", "b"};
  contradictory.cells = {{Rat(1), Rat(0), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0), Rat(0)}};
  CHECK_FALSE(iv_compatible(contradictory));

  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    ObservedLaw<Rat> single = gen::random_raw_law(1, rng);
    CHECK(iv_compatible(single));  // one arm is always rationalizable
  }
  for (int i = 0; i < 30; ++i) CHECK(iv_compatible(gen::random_compatible_law(3, rng)));
  for (int i = 0; i < 30; ++i) CHECK_FALSE(iv_compatible(gen::corrupted_law(2, rng)));
}

TEST_CASE("ACE extrema over admissible joints equal the sharp interval") {
  auto law = gen::worked_example();
  auto ace = ace_over_joints(law);
  REQUIRE(ace.has_value());
  CHECK(*ace == sharp_report(law).ace_sharp);

  std::mt19937_64 rng(22);
  for (int i = 0; i < 60; ++i) {
    auto random_law = gen::random_compatible_law(2 + i % 2, rng);
    auto lp_ace = ace_over_joints(random_law);
    REQUIRE(lp_ace.has_value());
    CHECK(*lp_ace == sharp_report(random_law).ace_sharp);
  }

  CHECK_FALSE(ace_over_joints(gen::corrupted_law(2, rng)).has_value());
}

TEST_CASE("variation independence over the closed rectangle") {
  auto law = gen::worked_example();
  CHECK(variation_independence_probe(law, 5));
  // explicit corner: (g(0,1), g(1,1)) = (1/2, 7/10)
  CHECK(joint_feasible(law, std::make_optional(std::make_pair(rat(1, 2), rat(7, 10)))).feasible);
  CHECK(variation_independence_probe(gen::perfect_compliance(), 4));

  std::mt19937_64 rng(33);
  CHECK_THROWS_WITH_AS(variation_independence_probe(gen::corrupted_law(2, rng), 5),
                       "no feasible rectangle", std::runtime_error);
  CHECK_THROWS_WITH_AS(variation_independence_probe(law, 1),
                       doctest::Contains("grid_n"), std::invalid_argument);
}

TEST_CASE("float mode accepts boundary points within tolerance") {
  auto law = to_float(gen::worked_example());
  CHECK(iv_compatible(law));
  CHECK(variation_independence_probe(law, 5));
  auto ace = ace_over_joints(law);
  REQUIRE(ace.has_value());
  CHECK(interval_gap(*ace, Interval<double>{-0.1, 0.4}) <= 1e-9);
}
