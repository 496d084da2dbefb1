#include <catch2/catch_amalgamated.hpp>

#include "coedyn/json_io.hpp"

using namespace coedyn;

TEST_CASE("chain round trip") {
  const auto j = Json::parse(R"({"base": 2, "prefix": [3], "tail": [2, 5]})");
  const DivisibilityChain chain = parse_chain(j);
  CHECK(chain.base() == 2);
  CHECK(chain.nth_modulus(2) == 6);
  CHECK(parse_chain(chain_to_json(chain)) == chain);
  // Degenerate multiplier is a parse-time error.
  CHECK_THROWS(parse_chain(Json::parse(R"({"base": 2, "tail": [1]})")));
}

TEST_CASE("group refs") {
  CHECK(parse_group(Json("Z/5"))->order() == 5);
  CHECK(parse_group(Json("S3"))->order() == 6);
  CHECK(parse_group(Json("D4"))->order() == 8);
  const auto S3 = parse_group(Json("S3"));
  const auto again = parse_group(group_to_json(*S3));
  CHECK(again->same_table(*S3));
  CHECK_THROWS(parse_group(Json("Q8")));
  // Inline tables must satisfy the group axioms.
  auto bad = group_to_json(*parse_group(Json("Z/4")));
  bad["table"][1][1] = 3;
  CHECK_THROWS(parse_group(bad));
}

TEST_CASE("cocycle config") {
  const auto j = Json::parse(R"({"target": "Z/3", "level": 1, "table": [0, 1]})");
  const LevelCocycle c = parse_cocycle(j);
  CHECK(c.level == 1);
  CHECK(c.table == std::vector<int>{0, 1});
  CHECK(c.target->order() == 3);
  CHECK_THROWS(parse_cocycle(Json::parse(R"({"target": "Z/3", "level": 1, "table": [0, 7]})")));
}

TEST_CASE("dihedral element forms") {
  CHECK(parse_dihedral(Json::parse(R"({"k": -3, "t": 1})")) == DihedralElement{-3, true});
  CHECK(parse_dihedral(Json::parse("[5, 0]")) == s_power(5));
  CHECK(dihedral_to_json(DihedralElement{-3, true}) ==
        Json::parse(R"({"k": -3, "t": 1})"));
  CHECK(dihedral_to_pair(s_power(2)) == Json::parse("[2, 0]"));
}

TEST_CASE("witness files") {
  const DinftyModel model = build_case1_model(dyadic_chain(), 3);
  std::vector<std::uint64_t> h(8);
  for (std::uint64_t x = 0; x < 8; ++x) h[x] = (x + 3) % 8;
  const CoeWitness w = witness_from_conjugacy(model, model, h, 6);
  const Json j = witness_to_json(model, model, w);
  const WitnessFile parsed = parse_witness(j);
  CHECK(parsed.model.kind() == DinftyModel::Kind::CaseI);
  CHECK(parsed.witness.h == w.h);
  CHECK(parsed.witness.c_s == w.c_s);
  CHECK(parsed.witness.c_t == w.c_t);
  CHECK_NOTHROW(validate_witness(parsed.witness, parsed.model, parsed.model_prime));
}

TEST_CASE("report fragments are deterministic") {
  const LevelCocycle c(parse_group(Json("Z/3")), 1, {0, 1});
  const auto verdict = coboundary_decide_chain(c, dyadic_chain());
  const Json j1 = verdict_to_json(verdict);
  const Json j2 = verdict_to_json(coboundary_decide_chain(c, dyadic_chain()));
  CHECK(j1.dump() == j2.dump());
  CHECK(j1.at("kind") == "NeverCoboundary");
  CHECK(state_to_json(std::uint64_t{1} << 40) == Json("1099511627776"));
}
