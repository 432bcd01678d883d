#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <mumsi/thresholds.hpp>

#include "test_helpers.hpp"

using namespace mumsi;

TEST_CASE("noise threshold of the 11-qubit GHZ family at full separability", "[thresholds]") {
  const MumSet mum = build_mum_set(2, max_positive_t(2));
  const StateFamily fam = parse_state_spec("ghz:11");
  const ThresholdResult r = threshold_solve(fam, mum, SParameter::neg_infinity(),
                                            CriterionKind::KSeparability, 11, 1e-10);
  REQUIRE(r.status == ThresholdStatus::Solved);
  REQUIRE(r.p_star.has_value());
  // lhs(p) = 71.5 p, bound = 16.5: p* = 16.5 / 71.5 = 3/13.
  CHECK(*r.p_star == Catch::Approx(16.5 / 71.5).margin(1e-9));
  CHECK(r.bound == Catch::Approx(16.5).margin(1e-12));
  CHECK(r.lhs_at_p1 == Catch::Approx(71.5).margin(1e-8));
  CHECK(r.iterations <= 200);
  CHECK(r.residual <= 1e-10 * 16.5);
}

TEST_CASE("a bound above the reachable lhs is reported as not detectable", "[thresholds]") {
  const MumSet mum = build_mum_set(2, max_positive_t(2));
  const StateFamily fam = parse_state_spec("w:6");
  const ThresholdResult r = threshold_solve(fam, mum, SParameter::neg_infinity(),
                                            CriterionKind::KSeparability, 2, 1e-9);
  CHECK(r.status == ThresholdStatus::NotDetectable);
  CHECK_FALSE(r.p_star.has_value());
  CHECK(r.bound == Catch::Approx(19.0).margin(1e-12));
  CHECK(r.lhs_at_p1 == Catch::Approx(16.0).margin(1e-8));
  CHECK(r.residual < 0.0);  // the gap at p = 1
}

TEST_CASE("linear family pins the threshold exactly", "[thresholds]") {
  const MumSet mum = build_mum_set(2, max_positive_t(2));
  const StateFamily fam = parse_state_spec("w:6");
  const ThresholdResult r = threshold_solve(fam, mum, SParameter::neg_infinity(),
                                            CriterionKind::KProducibility, 1, 1e-10);
  REQUIRE(r.status == ThresholdStatus::Solved);
  CHECK(*r.p_star == Catch::Approx(9.0 / 16.0).margin(1e-9));
}

TEST_CASE("halving the tolerance moves the threshold by at most ten tolerances", "[thresholds]") {
  const MumSet mum = build_mum_set(2, max_positive_t(2));
  const StateFamily fam = parse_state_spec("w:6");
  const SParameter s = SParameter::finite(-1.0);
  const ThresholdResult coarse =
      threshold_solve(fam, mum, s, CriterionKind::KProducibility, 2, 1e-6);
  const ThresholdResult fine =
      threshold_solve(fam, mum, s, CriterionKind::KProducibility, 2, 5e-7);
  REQUIRE(coarse.status == ThresholdStatus::Solved);
  REQUIRE(fine.status == ThresholdStatus::Solved);
  CHECK(std::abs(*coarse.p_star - *fine.p_star) <= 10.0 * 1e-6);
}

TEST_CASE("thresholds move down as s decreases", "[thresholds]") {
  const MumSet mum = build_mum_set(2, max_positive_t(2));
  const StateFamily fam = parse_state_spec("w:6");
  std::vector<double> stars;
  for (const SParameter& s :
       {SParameter::zero(), SParameter::finite(-1.0), SParameter::neg_infinity()}) {
    const ThresholdResult r = threshold_solve(fam, mum, s, CriterionKind::KProducibility, 1,
                                              1e-9);
    REQUIRE(r.status == ThresholdStatus::Solved);
    stars.push_back(*r.p_star);
  }
  CHECK(stars[0] >= stars[1] - 1e-9);
  CHECK(stars[1] >= stars[2] - 1e-9);
}

TEST_CASE("a solved threshold brackets the bound", "[thresholds]") {
  const MumSet mum = build_mum_set(2, max_positive_t(2));
  const StateFamily fam = parse_state_spec("ghz:6");
  const SParameter s = SParameter::finite(-1.0);
  const ThresholdResult r =
      threshold_solve(fam, mum, s, CriterionKind::KSeparability, 3, 1e-9);
  REQUIRE(r.status == ThresholdStatus::Solved);
  const double below = lhs_sum_isotropic(fam, *r.p_star - 0.01, mum, s);
  const double above = lhs_sum_isotropic(fam, *r.p_star + 0.01, mum, s);
  CHECK(below <= r.bound + 1e-6);
  CHECK(above >= r.bound - 1e-6);
}

TEST_CASE("tolerance must be positive", "[thresholds]") {
  const MumSet mum = build_mum_set(2, max_positive_t(2));
  const StateFamily fam = parse_state_spec("w:6");
  REQUIRE_THROWS_AS(threshold_solve(fam, mum, SParameter::zero(),
                                    CriterionKind::KProducibility, 1, 0.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(threshold_solve(fam, mum, SParameter::zero(),
                                    CriterionKind::KProducibility, 9, 1e-9),
                    std::invalid_argument);  // k out of range
}

TEST_CASE("bound table reproduction is exact", "[thresholds]") {
  const TableComparison t = reproduce_table("IX", 1.0);
  REQUIRE(t.rows.size() == 5);
  CHECK_FALSE(t.comparison_only);
  const double expected[5] = {9.0, 12.0, 15.0, 16.0, 19.0};
  for (size_t i = 0; i < 5; ++i) {
    REQUIRE(t.rows[i].computed.has_value());
    CHECK(t.rows[i].k == static_cast<int>(i) + 1);
    CHECK(*t.rows[i].computed == Catch::Approx(expected[i]).margin(1e-12));
    CHECK(t.rows[i].paper_value == expected[i]);
    REQUIRE(t.rows[i].delta.has_value());
    CHECK(std::abs(*t.rows[i].delta) < 1e-12);
  }
}

TEST_CASE("threshold table reproduction reports published values and deltas", "[thresholds]") {
  const TableComparison t = reproduce_table("V", 1.0);
  REQUIRE(t.rows.size() == 5);
  CHECK(t.comparison_only);
  CHECK(t.family_spec == "w:6");
  CHECK(t.kind == CriterionKind::KSeparability);

  // k = 2: the bound (19) exceeds the reachable lhs (16), so no threshold.
  CHECK(t.rows[0].k == 2);
  CHECK_FALSE(t.rows[0].computed.has_value());
  CHECK(t.rows[0].paper_value == 0.3958);

  // k = 3: lhs(p) = 16 p against bound 15.
  REQUIRE(t.rows[1].computed.has_value());
  CHECK(*t.rows[1].computed == Catch::Approx(15.0 / 16.0).margin(1e-6));
  REQUIRE(t.rows[1].delta.has_value());
  CHECK(*t.rows[1].delta == Catch::Approx(15.0 / 16.0 - 0.3125).margin(1e-6));
  REQUIRE(t.rows[1].reference_value.has_value());
  CHECK(*t.rows[1].reference_value == 0.75);

  // k = 6: bound 9, threshold 9/16.
  REQUIRE(t.rows[4].computed.has_value());
  CHECK(*t.rows[4].computed == Catch::Approx(9.0 / 16.0).margin(1e-6));
}

TEST_CASE("eleven-qubit producibility table spot checks", "[thresholds]") {
  const TableComparison t = reproduce_table("VIII", 1.0);
  REQUIRE(t.rows.size() == 10);
  REQUIRE(t.rows[0].computed.has_value());
  CHECK(t.rows[0].k == 1);
  CHECK(*t.rows[0].computed == Catch::Approx(16.5 / 71.5).margin(1e-5));
  REQUIRE(t.rows[9].computed.has_value());
  CHECK(*t.rows[9].computed == Catch::Approx(61.5 / 71.5).margin(1e-5));
}

TEST_CASE("every listed table reproduces", "[thresholds]") {
  const std::vector<std::string> ids = all_table_ids();
  REQUIRE(ids.size() == 9);
  for (const std::string& id : ids) {
    const TableComparison t = reproduce_table(id, 1.0);
    INFO("table " << id);
    REQUIRE_FALSE(t.rows.empty());
    for (const TableRow& row : t.rows) {
      CHECK(row.paper_value > 0.0);
      if (row.computed.has_value()) {
        CHECK(*row.computed > 0.0);
        // Threshold tables hold noise fractions; the bound table holds bounds.
        if (id != "IX") CHECK(*row.computed <= 1.0);
        REQUIRE(row.delta.has_value());
        CHECK(*row.delta == Catch::Approx(*row.computed - row.paper_value).margin(1e-12));
      }
    }
  }
  REQUIRE_THROWS_AS(reproduce_table("X", 1.0), std::invalid_argument);
}

TEST_CASE("network depth demonstration assigns each state its network", "[thresholds]") {
  const NetworkDemoReport r = network_depth_demo();
  REQUIRE(r.assignments.size() == 3);
  REQUIRE(r.producibility_bounds.size() == 5);
  CHECK(r.producibility_bounds[0] == Catch::Approx(9.0).margin(1e-12));
  CHECK(r.producibility_bounds[4] == Catch::Approx(19.0).margin(1e-12));

  const NetworkAssignment& a = r.assignments[0];
  CHECK(a.state_label == "a");
  CHECK(a.lhs == Catch::Approx(12.0).margin(1e-8));
  CHECK(a.depth == 2);
  CHECK(a.network == 2);

  const NetworkAssignment& b = r.assignments[1];
  CHECK(b.lhs == Catch::Approx(15.0).margin(1e-8));
  CHECK(b.depth == 3);
  CHECK(b.network == 1);

  const NetworkAssignment& c = r.assignments[2];
  CHECK(c.lhs == Catch::Approx(16.0).margin(1e-8));
  CHECK(c.depth == 4);
  CHECK(c.network == 3);

  for (const NetworkAssignment& entry : r.assignments) {
    CHECK(static_cast<int>(entry.reasoning.size()) == entry.depth);
    for (const std::string& line : entry.reasoning) CHECK_FALSE(line.empty());
  }
}
