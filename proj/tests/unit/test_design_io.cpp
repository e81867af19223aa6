#include <doctest.h>

#include "mdlq/design_io.hpp"
#include "mdlq/error.hpp"

using namespace mdlq;

TEST_SUITE("design_io") {
  TEST_CASE("round trip through json") {
    const auto lat = Lattice::make(LatticeName::A2);
    const auto lab = Labeling::build(SimilarSublattice::build(lat, {5, -1}), group_for(lat));
    const auto j = design_to_json(lab);
    CHECK(j["schema"] == 1);
    CHECK(j["entries"].size() == 31);
    const auto back = design_from_json(j);
    CHECK(back.sum_ds_units() == lab.sum_ds_units());
    CHECK(dump_json(design_to_json(back)) == dump_json(j));
  }

  TEST_CASE("malformed files are named errors") {
    nlohmann::json j = {{"schema", 2}, {"lattice", "A2"}, {"params", {5, -1}}, {"entries", nlohmann::json::array()}};
    CHECK_THROWS_AS(design_from_json(j), Error);
    j["schema"] = 1;
    CHECK_THROWS_AS(design_from_json(j), Error);
    CHECK_THROWS_AS(design_from_json(nlohmann::json{{"schema", 1}}), Error);
    CHECK_THROWS_AS(load_design_file("/nonexistent/design.json"), Error);
  }

  TEST_CASE("hand table file loads") {
    const auto lab = load_design_file(std::string(MDLQ_TEST_DATA) + "/a2_n31_hand.json");
    CHECK(lab.index() == 31);
    CHECK(lab.group_order() == 0);
    CHECK(lab.verify(2000).ok());
  }
}
