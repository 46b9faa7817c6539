#include <doctest.h>

#include <random>

#include "ivb/bounds.hpp"
#include "support/gen.hpp"

using namespace ivb;

TEST_CASE("worked two-arm law: envelope values and intervals") {
  auto rep = sharp_report(gen::worked_example());
  CHECK(rep.g_at(0, 0).value == rat(7, 10));
  CHECK(rep.g_at(0, 1).value == rat(1, 2));
  CHECK(rep.g_at(1, 0).value == rat(3, 5));
  CHECK(rep.g_at(1, 1).value == rat(7, 10));
  CHECK(rep.marginal_x0 == Interval<Rat>{rat(3, 10), rat(1, 2)});
  CHECK(rep.marginal_x1 == Interval<Rat>{rat(2, 5), rat(7, 10)});
  CHECK(rep.ace_sharp == Interval<Rat>{rat(-1, 10), rat(2, 5)});
  CHECK(rep.ace_natural == Interval<Rat>{rat(-1, 10), rat(2, 5)});
  CHECK(rep.compatible);

  // attaining branches are deterministic: single-arm minima here
  CHECK_FALSE(rep.g_at(1, 1).branch.cross);
  CHECK(rep.g_at(1, 1).branch.z == 2);
  CHECK_FALSE(rep.g_at(0, 1).branch.cross);
  CHECK(rep.g_at(0, 1).branch.z == 1);
}

TEST_CASE("perfect compliance point-identifies both marginals") {
  auto rep = sharp_report(gen::perfect_compliance());
  CHECK(rep.g_at(0, 0).value == rat(3, 5));
  CHECK(rep.g_at(0, 1).value == rat(2, 5));
  CHECK(rep.g_at(1, 0).value == rat(3, 10));
  CHECK(rep.g_at(1, 1).value == rat(7, 10));
  CHECK(rep.marginal_x0 == Interval<Rat>{rat(2, 5), rat(2, 5)});
  CHECK(rep.marginal_x1 == Interval<Rat>{rat(7, 10), rat(7, 10)});
  CHECK(rep.ace_sharp == Interval<Rat>{rat(3, 10), rat(3, 10)});
  CHECK(rep.ace_natural == rep.ace_sharp);
  CHECK(rep.compatible);
}

TEST_CASE("single-arm law uses only the single-arm branch") {
  ObservedLaw<Rat> law;
  law.K = 1;
  law.arm_labels = {"only"};
  law.cells = {{rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      auto term = g_value(law, i, j);
      CHECK(term.value == law.p(1, i, j) + law.px(1, 1 - i));
      CHECK_FALSE(term.branch.cross);
    }
  CHECK(sharp_report(law).compatible);
}

TEST_CASE("classical two-arm expressions equal the envelope") {
  CHECK(balke_pearl_k2(gen::worked_example()) ==
        sharp_report(gen::worked_example()).ace_sharp);
  CHECK(balke_pearl_k2(gen::perfect_compliance()) == Interval<Rat>{rat(3, 10), rat(3, 10)});

  std::mt19937_64 rng(101);
  for (int i = 0; i < 200; ++i) {
    auto law = gen::random_compatible_law(2, rng);
    CHECK(balke_pearl_k2(law) == sharp_report(law).ace_sharp);
  }

  auto k3 = gen::random_compatible_law(3, rng);
  CHECK_THROWS_WITH_AS(balke_pearl_k2(k3), doctest::Contains("requires K = 2"),
                       std::invalid_argument);
}

TEST_CASE("sharp interval sits inside the natural interval") {
  std::mt19937_64 rng(202);
  for (int K : {2, 3}) {
    for (int i = 0; i < 100; ++i) {
      auto rep = sharp_report(gen::random_compatible_law(K, rng));
      CHECK(rep.ace_natural.contains(rep.ace_sharp));
    }
  }
}

TEST_CASE("raw envelope values stay in [0, 2]") {
  std::mt19937_64 rng(303);
  for (int i = 0; i < 100; ++i) {
    auto law = gen::random_raw_law(2 + i % 3, rng);
    for (int a = 0; a < 2; ++a)
      for (int j = 0; j < 2; ++j) {
        auto v = g_value(law, a, j).value;
        CHECK(v >= Rat(0));
        CHECK(v <= Rat(2));
      }
  }
}

TEST_CASE("dropping an arm never shrinks the sharp interval") {
  std::mt19937_64 rng(404);
  for (int i = 0; i < 50; ++i) {
    auto law = gen::random_compatible_law(3, rng);
    auto full = sharp_report(law).ace_sharp;
    for (int z = 1; z <= 3; ++z) {
      auto sub = sharp_report(drop_arm(law, z)).ace_sharp;
      CHECK(sub.contains(full));
    }
  }
}

TEST_CASE("arm order does not move the envelope") {
  std::mt19937_64 rng(505);
  for (int i = 0; i < 50; ++i) {
    auto law = gen::random_compatible_law(3, rng);
    auto permuted = permute_arms(law, {3, 1, 2});
    auto a = sharp_report(law);
    auto b = sharp_report(permuted);
    for (int idx = 0; idx < 4; ++idx) CHECK(a.g[idx].value == b.g[idx].value);
    CHECK(a.ace_sharp == b.ace_sharp);
    CHECK(a.ace_natural == b.ace_natural);
  }
}

TEST_CASE("incompatible laws are flagged, intervals reported raw") {
  std::mt19937_64 rng(606);
  auto law = gen::corrupted_law(2, rng);
  auto rep = sharp_report(law);
  CHECK_FALSE(rep.compatible);
  CHECK(rep.marginal_x0.empty());
}

TEST_CASE("float pipeline tracks the rational one") {
  std::mt19937_64 rng(707);
  for (int i = 0; i < 50; ++i) {
    auto law = gen::random_compatible_law(2 + i % 3, rng);
    auto exact = sharp_report(law);
    auto approx = sharp_report(to_float(law));
    CHECK(interval_gap(approx.ace_sharp,
                       Interval<double>{to_double(exact.ace_sharp.lo),
                                        to_double(exact.ace_sharp.hi)}) <= 1e-9);
    CHECK(approx.compatible == exact.compatible);
  }
}

TEST_CASE("invalid laws are rejected up front") {
  ObservedLaw<Rat> law;
  law.K = 1;
  law.arm_labels = {"a"};
  law.cells = {{rat(1, 2), Rat(0), Rat(0), Rat(0)}};
  CHECK_THROWS_WITH_AS(sharp_report(law), doctest::Contains("invalid law"),
                       std::invalid_argument);
  CHECK_THROWS_AS(g_value(gen::worked_example(), 2, 0), std::invalid_argument);
}
