#include "zigzag/serialize.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace zigzag;

TEST_CASE("MzvExpr JSON form") {
  MzvExpr e = MzvExpr::pi_even_power(2, Rational(1, 6)) +
              MzvExpr::zeta_odd(3, -4) * MzvExpr::zeta_odd(5) +
              unknown_singular(UnknownKind::hoffman1, 1, 0) * Rational(2, 3);
  json j = to_json(e);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 3);
  // canonical monomial order: graded by (pi_pow, odd list, unknowns)
  CHECK(j[0]["coeff"] == "2/3");
  CHECK(j[0]["pi_pow"] == 0);
  CHECK(j[0]["unknown"] == json::array({"H(1,0)"}));
  CHECK(j[1]["coeff"] == "-4");
  CHECK(j[1]["odd"] == json::array({3, 5}));
  CHECK(j[2]["coeff"] == "1/6");
  CHECK(j[2]["pi_pow"] == 2);
  CHECK(j[2]["odd"].empty());

  // serialization is deterministic
  CHECK(to_json(e).dump() == to_json(e).dump());
}

TEST_CASE("NcSeries JSON form records the cutoff") {
  NcSeries s(5);
  s.set(Word::parse("0101"), MzvExpr::rational(Rational(3, 2)));
  s.set(Word::parse("10"), MzvExpr::zeta_odd(3));
  json j = to_json(s);
  CHECK(j["cutoff"] == 5);
  REQUIRE(j["terms"].size() == 2);
  CHECK(j["terms"][0]["word"] == "10");
  CHECK(j["terms"][1]["word"] == "0101");
  CHECK(j["terms"][1]["coeff"][0]["coeff"] == "3/2");
}

TEST_CASE("graph JSON round trip") {
  Graph g = zigzag_graph(4);
  json j = to_json(g);
  CHECK(j["vertices"] == 5);
  CHECK(j["edges"].size() == 8);
  // 1-based vertex indices on the wire
  CHECK(j["edges"][0] == json::array({1, 2}));
  Graph back = graph_from_json(j);
  CHECK(back.vertices == g.vertices);
  CHECK(back.edges == g.edges);

  json bad = {{"vertices", 2}, {"edges", json::array({json::array({1, 3})})}};
  CHECK_THROWS_AS(graph_from_json(bad), std::invalid_argument);
}

TEST_CASE("residual report JSON shape") {
  SeriesBundle b = SeriesBundle::build(5);
  json j = to_json(verify_identity(b, "ZoasS"));
  CHECK(j["identity"] == "ZoasS");
  CHECK(j["pass"] == true);
  CHECK(j["max_weight_checked"] == 5);
  CHECK(j["nonzero_words"].is_array());
  CHECK(j["time_ms"].is_number());
}

TEST_CASE("period JSON shape") {
  SeriesBundle b = SeriesBundle::build(7);
  json j = period_to_json(period_from_S(b, 4), true);
  CHECK(j["n"] == 4);
  CHECK(j["coefficient"] == "20");
  CHECK(j["zeta_weight"] == 5);
  CHECK(j["matches_closed_form"] == true);
  CHECK(j["source"] == "from_S");
}
