#include <doctest.h>

#include <sstream>

#include "ivb/law.hpp"
#include "ivb/law_io.hpp"
#include "support/gen.hpp"

using namespace ivb;

namespace {

std::vector<CountRow> worked_counts() {
  return {
      {"z1", 0, 0, 5}, {"z1", 0, 1, 3}, {"z1", 1, 0, 1}, {"z1", 1, 1, 1},
      {"z2", 0, 0, 2}, {"z2", 0, 1, 1}, {"z2", 1, 0, 3}, {"z2", 1, 1, 4},
  };
}

}  // namespace

TEST_CASE("counts become exact arm pmfs") {
  auto law = law_from_counts(worked_counts());
  REQUIRE(law.K == 2);
  CHECK(law.arm_labels == std::vector<std::string>{"z1", "z2"});
  CHECK(law.p(1, 0, 0) == rat(1, 2));
  CHECK(law.p(1, 0, 1) == rat(3, 10));
  CHECK(law.p(2, 1, 1) == rat(2, 5));
  CHECK(validate_law(law, Rat(0)).empty());
}

TEST_CASE("absent cells count zero and duplicates accumulate") {
  std::vector<CountRow> rows = {{"a", 0, 0, 3}, {"a", 0, 0, 1}, {"a", 1, 1, 4}};
  auto law = law_from_counts(rows);
  CHECK(law.p(1, 0, 0) == rat(1, 2));
  CHECK(law.p(1, 0, 1) == Rat(0));
  CHECK(law.p(1, 1, 1) == rat(1, 2));
}

TEST_CASE("count ingestion rejects bad rows") {
  CHECK_THROWS_WITH_AS(law_from_counts({{"a", 0, 0, -1}}),
                       doctest::Contains("negative count"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(law_from_counts({{"a", 2, 0, 1}}),
                       doctest::Contains("x outside {0,1}"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(law_from_counts({{"a", 0, 3, 1}}),
                       doctest::Contains("y outside {0,1}"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(law_from_counts({}), doctest::Contains("no count rows"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(law_from_counts({{"a", 0, 0, 1}, {"b", 0, 0, 0}}),
                       doctest::Contains("empty instrument arm 'b'"), std::invalid_argument);
}

TEST_CASE("counts CSV parses, tolerating blank lines and CRLF") {
  std::istringstream in(
      "z,x,y,count\r\n"
      "z1,0,0,5\n"
      "\n"
      "z1,0,1,3\n"
      "z1,1,0,1\n"
      "z1,1,1,1\n"
      "z2,0,0,2\n"
      "z2,0,1,1\n"
      "z2,1,0,3\n"
      "z2,1,1,4\n");
  auto law = law_from_counts_csv(in);
  CHECK(law.cells == gen::worked_example().cells);
}

TEST_CASE("counts CSV rejects malformed input") {
  std::istringstream missing_header("z1,0,0,5\n");
  CHECK_THROWS_WITH_AS(parse_counts_csv(missing_header), doctest::Contains("header"),
                       std::invalid_argument);
  std::istringstream short_row("z,x,y,count\nz1,0,0\n");
  CHECK_THROWS_WITH_AS(parse_counts_csv(short_row), doctest::Contains("expected 4 fields"),
                       std::invalid_argument);
  std::istringstream bad_count("z,x,y,count\nz1,0,0,many\n");
  CHECK_THROWS_WITH_AS(parse_counts_csv(bad_count), doctest::Contains("count must be an integer"),
                       std::invalid_argument);
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_counts_csv(empty), std::invalid_argument);
}

TEST_CASE("law JSON round-trips in both modes") {
  auto law = gen::worked_example();
  auto j = law_to_json(law);
  auto back = law_from_json<Rat>(j);
  CHECK(back.arm_labels == law.arm_labels);
  CHECK(back.cells == law.cells);

  auto flaw = to_float(law);
  auto fj = law_to_json(flaw);
  auto fback = law_from_json<double>(fj);
  CHECK(fback.cells == flaw.cells);  // exact: shortest round-trip printing
}

TEST_CASE("law JSON rejects malformed documents") {
  CHECK_THROWS_AS(law_from_json<double>(nlohmann::json::parse("{}")), std::invalid_argument);
  CHECK_THROWS_AS(law_from_json<double>(nlohmann::json::parse(R"({"arms":[]})")),
                  std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      law_from_json<double>(nlohmann::json::parse(
          R"({"arms":[{"label":"a","pmf":{"00":1,"01":0,"10":0}}]})")),
      doctest::Contains("missing cell '11'"), std::invalid_argument);
}

TEST_CASE("validation reports each violation with the arm and discrepancy") {
  ObservedLaw<double> law;
  law.K = 2;
  law.arm_labels = {"a", "b"};
  law.cells = {{0.5, 0.5, 0.2, -0.1}, {0.25, 0.25, 0.25, 0.25}};
  auto violations = validate_law(law, 1e-9);
  REQUIRE(violations.size() == 2);
  CHECK(violations[0].message.find("negative probability") != std::string::npos);
  CHECK(violations[1].message.find("off by") != std::string::npos);
  CHECK(violations[0].arm == "a");

  law.cells[0] = {0.5, 0.3, 0.1, 0.1};
  CHECK(validate_law(law, 1e-9).empty());
}

TEST_CASE("require_valid throws on duplicate labels") {
  auto law = gen::worked_example();
  law.arm_labels[1] = law.arm_labels[0];
  CHECK_THROWS_WITH_AS(require_valid(law), doctest::Contains("duplicate arm label"),
                       std::invalid_argument);
}

TEST_CASE("joint validation mirrors law validation") {
  CounterfactualJoint<double> joint;
  joint.pi = {0.25, 0.25, 0.25, 0.25};
  CHECK(validate_joint(joint, 1e-9).empty());
  joint.pi = {0.5, 0.6, -0.1, 0.0};
  auto v = validate_joint(joint, 1e-9);
  REQUIRE(!v.empty());
  CHECK(v[0].message.find("negative") != std::string::npos);
}

TEST_CASE("drop_arm keeps remaining pmfs untouched") {
  auto law = gen::worked_example();
  auto sub = drop_arm(law, 1);
  REQUIRE(sub.K == 1);
  CHECK(sub.arm_labels == std::vector<std::string>{"z2"});
  CHECK(sub.cells[0] == law.cells[1]);
  ObservedLaw<Rat> single = sub;
  CHECK_THROWS_AS(drop_arm(single, 1), std::invalid_argument);
}

TEST_CASE("permute_arms validates the permutation") {
  auto law = gen::worked_example();
  auto swapped = permute_arms(law, {2, 1});
  CHECK(swapped.arm_labels == std::vector<std::string>{"z2", "z1"});
  CHECK(swapped.cells[0] == law.cells[1]);
  CHECK_THROWS_AS(permute_arms(law, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(permute_arms(law, {1}), std::invalid_argument);
  CHECK_THROWS_AS(permute_arms(law, {0, 1}), std::invalid_argument);
}
