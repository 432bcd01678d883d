#include <catch2/catch_amalgamated.hpp>

#include <mumsi/serialize.hpp>

#include "test_helpers.hpp"

using namespace mumsi;

TEST_CASE("matrices round-trip through JSON exactly", "[serialize]") {
  std::mt19937 rng(20260815u);
  const Matrix m = testutil::random_ginibre(5, rng);
  const Json direct = matrix_to_json(m);
  const Matrix back = matrix_from_json(direct);
  CHECK(max_abs(m - back) == 0.0);

  // Through the string form as well: nlohmann prints shortest-round-trip
  // doubles, so the bytes parse back to the identical values.
  const Matrix reparsed = matrix_from_json(Json::parse(direct.dump()));
  CHECK(max_abs(m - reparsed) == 0.0);

  REQUIRE_THROWS_AS(matrix_from_json(Json{{"rows", 2}, {"cols", 2}}), std::invalid_argument);
  Json wrong = matrix_to_json(m);
  wrong["entries"].erase(0);
  REQUIRE_THROWS_AS(matrix_from_json(wrong), std::invalid_argument);
}

TEST_CASE("MUM sets round-trip through JSON", "[serialize]") {
  const MumSet mum = build_mum_set(3, 0.06);
  const Json j = Json::parse(mum_set_to_json(mum).dump());
  const MumSet back = mum_set_from_json(j);
  REQUIRE(back.d == 3);
  CHECK(back.t == mum.t);
  CHECK(back.kappa == mum.kappa);
  for (int b = 0; b <= 3; ++b)
    for (int n = 0; n < 3; ++n)
      CHECK(max_abs(back.effects[b][n].matrix() - mum.effects[b][n].matrix()) == 0.0);
  CHECK(validate_mum_set(back).max() < 1e-9);

  Json bad = mum_set_to_json(mum);
  bad["effects"].erase(0);
  REQUIRE_THROWS_AS(mum_set_from_json(bad), std::invalid_argument);
}

TEST_CASE("pure states load from JSON", "[serialize]") {
  const double r = 1.0 / std::sqrt(2.0);
  const Json good{{"dim", 2}, {"amplitudes", Json::array({{r, 0.0}, {0.0, r}})}};
  const PureState psi = pure_state_from_json(good);
  CHECK(psi.dim() == 2);
  CHECK(std::abs(psi.amplitudes()(1) - Complex(0.0, r)) < 1e-15);

  const Json short_list{{"dim", 3}, {"amplitudes", Json::array({{r, 0.0}, {0.0, r}})}};
  REQUIRE_THROWS_AS(pure_state_from_json(short_list), std::invalid_argument);
  const Json unnormalized{{"dim", 2}, {"amplitudes", Json::array({{1.0, 0.0}, {1.0, 0.0}})}};
  REQUIRE_THROWS_AS(pure_state_from_json(unnormalized), std::invalid_argument);
}

TEST_CASE("criterion reports serialize with all fields", "[serialize]") {
  const CriterionReport r = report_from_lhs(16.0, CriterionKind::KProducibility, 6, 2, 0.29, 1.0,
                                            SParameter::neg_infinity(), 3);
  const Json j = criterion_report_to_json(r);
  CHECK(j.at("criterion") == "kprod");
  CHECK(j.at("N") == 6);
  CHECK(j.at("k") == 3);
  CHECK(j.at("lhs") == 16.0);
  CHECK(j.at("bound") == 15.0);
  CHECK(j.at("violated") == true);
  CHECK(j.at("verdict") == "violated");
  CHECK(j.at("certificate") == "contains 4-partite entanglement");
  CHECK(j.at("s") == "-inf");

  const std::string text = render_text(r);
  CHECK(text.find("verdict      : violated") != std::string::npos);
  CHECK(text.find("lhs          : 16") != std::string::npos);
}

TEST_CASE("threshold results serialize the optional threshold", "[serialize]") {
  const MumSet mum = build_mum_set(2, max_positive_t(2));
  const StateFamily fam = parse_state_spec("w:6");
  const ThresholdResult solved = threshold_solve(fam, mum, SParameter::neg_infinity(),
                                                 CriterionKind::KProducibility, 1, 1e-9);
  const Json js = threshold_result_to_json(solved);
  CHECK(js.at("status") == "solved");
  CHECK(js.at("p_star").is_number());
  CHECK(js.at("p_star").get<double>() == Catch::Approx(9.0 / 16.0).margin(1e-6));

  const ThresholdResult nd = threshold_solve(fam, mum, SParameter::neg_infinity(),
                                             CriterionKind::KSeparability, 2, 1e-9);
  const Json jn = threshold_result_to_json(nd);
  CHECK(jn.at("status") == "not-detectable");
  CHECK(jn.at("p_star").is_null());
  const std::string text = render_text(nd);
  CHECK(text.find("status       : not-detectable") != std::string::npos);
  CHECK(text.find("at or below the bound") != std::string::npos);
}

TEST_CASE("table renderings carry placeholders and caveats", "[serialize]") {
  const TableComparison exact = reproduce_table("IX", 1.0);
  const std::string bound_text = render_text(exact);
  CHECK(bound_text.find("table IX") != std::string::npos);
  CHECK(bound_text.find("note:") == std::string::npos);

  const TableComparison cmp = reproduce_table("V", 1.0);
  const std::string text = render_text(cmp);
  CHECK(text.find("ND") != std::string::npos);          // k = 2 has no threshold
  CHECK(text.find("NA") != std::string::npos);          // and therefore no delta
  CHECK(text.find("\\") != std::string::npos);          // blank published reference cell
  CHECK(text.find("note: published values use an unstated measurement normalization") !=
        std::string::npos);
  CHECK(text.find("reference") != std::string::npos);

  const std::string csv = render_csv(cmp);
  CHECK(csv.rfind("table,k,computed,paper,delta\n", 0) == 0);
  CHECK(csv.find("V,2,ND,0.3958,NA\n") != std::string::npos);
  CHECK(csv.find("V,6,0.5625") != std::string::npos);

  const std::string multi = render_csv(std::vector<TableComparison>{exact, cmp});
  CHECK(multi.find("IX,1,9,9,0\n") != std::string::npos);
  CHECK(multi.find("V,2,ND") != std::string::npos);
}

TEST_CASE("envelopes are versioned, conventioned, and deterministic", "[serialize]") {
  const Json env = report_envelope("bounds", Json{{"d", 2}}, Json{{"ok", true}});
  CHECK(env.at("tool") == "mumsi");
  CHECK(env.at("version") == "0.1.0");
  CHECK(env.at("command") == "bounds");
  REQUIRE(env.contains("conventions"));
  CHECK(env.at("conventions").contains("site_order"));
  CHECK(env.at("conventions").contains("pair_summation"));
  CHECK(env.at("result").at("ok") == true);
  CHECK(env.dump(2) == report_envelope("bounds", Json{{"d", 2}}, Json{{"ok", true}}).dump(2));
}

TEST_CASE("network demo rendering names every assignment", "[serialize]") {
  const NetworkDemoReport r = network_depth_demo();
  const std::string text = render_text(r);
  for (const char* needle : {"state a:", "state b:", "state c:", "assigned network",
                             "producibility bounds I_k (k = 1..5): 9 12 15 16 19"})
    CHECK(text.find(needle) != std::string::npos);
  const Json j = network_demo_to_json(r);
  REQUIRE(j.at("assignments").size() == 3);
  CHECK(j.at("assignments")[0].at("network") == 2);
  CHECK(j.at("producibility_bounds").size() == 5);
}
