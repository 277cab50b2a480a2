#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "entrolab/errors.hpp"
#include "entrolab/scenario.hpp"

using namespace entrolab;

namespace {

json minimal_entropy_scenario() {
  return json{{"schema_version", 1},
              {"name", "t"},
              {"mode", "entropy"},
              {"family", {{"kind", "direct_sum"}, {"base", "z_2"}}},
              {"endo", {{"endo", "shift"}, {"k", 1}}},
              {"f", {{"kind", "ball"}, {"radius", 0}}},
              {"n_max", 6}};
}

}  // namespace

TEST_CASE("element literals round-trip") {
  std::vector<Family> fams = {
      finite_family(ut4_f2_table()), direct_sum_family(symmetric3_table()),
      poly_heis_family(3), finitary_ut_family(2)};
  for (const Family& fam : fams) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 500; ++i) {
      Elem x = random_elem(fam, rng);
      json j = element_json(fam, x);
      CHECK(parse_element(fam, j) == x);
      // emitted form is canonical: emit(parse(emit(x))) == emit(x)
      CHECK(element_json(fam, parse_element(fam, j)) == j);
    }
  }
}

TEST_CASE("element literals are validated") {
  Family ds = direct_sum_family(cyclic_table(4));
  CHECK_THROWS_AS(parse_element(ds, json{{"family", "poly_heis"},
                                         {"a", json::object()},
                                         {"b", json::object()},
                                         {"c", json::object()}}),
                  Error);
  CHECK_THROWS_AS(
      parse_element(ds, json{{"family", "direct_sum"},
                             {"support", {{"0", 9}}}}),
      Error);
  CHECK_THROWS_AS(
      parse_element(ds, json{{"family", "direct_sum"},
                             {"support", {{"x", 1}}}}),
      Error);
  Family fin = finitary_ut_family(2);
  CHECK_THROWS_AS(
      parse_element(fin, json{{"family", "finitary_ut"},
                              {"entries", json::array({json::array({2, 1, 1})})}}),
      Error);
}

TEST_CASE("unknown scenario fields are rejected") {
  json base = minimal_entropy_scenario();

  json extra_top = base;
  extra_top["bogus"] = 1;
  CHECK_THROWS_AS(run_scenario_json(extra_top, {}), Error);

  json extra_family = base;
  extra_family["family"]["color"] = "red";
  CHECK_THROWS_AS(run_scenario_json(extra_family, {}), Error);

  json extra_endo = base;
  extra_endo["endo"]["speed"] = 9;
  CHECK_THROWS_AS(run_scenario_json(extra_endo, {}), Error);

  json wrong_mode_key = base;
  wrong_mode_key["ladder"] = {{"kind", "support_balls"}, {"radii", {0}}};
  CHECK_THROWS_AS(run_scenario_json(wrong_mode_key, {}), Error);

  try {
    run_scenario_json(extra_top, {});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::schema_error);
  }
}

TEST_CASE("schema version is mandatory and fixed") {
  json base = minimal_entropy_scenario();
  json none = base;
  none.erase("schema_version");
  CHECK_THROWS_AS(run_scenario_json(none, {}), Error);
  json wrong = base;
  wrong["schema_version"] = 2;
  CHECK_THROWS_AS(run_scenario_json(wrong, {}), Error);
}

TEST_CASE("scenario runs are deterministic") {
  json base = minimal_entropy_scenario();
  ScenarioResult a = run_scenario_json(base, {});
  ScenarioResult b = run_scenario_json(base, {});
  CHECK(a.status == "pass");
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.csv == b.csv);
}

TEST_CASE("entropy csv rendering") {
  json base = minimal_entropy_scenario();
  ScenarioResult res = run_scenario_json(base, {});
  CHECK(res.csv.rfind("n,size,log_size,prefix_inf,increment,stabilized_alpha\n",
                      0) == 0);
  // n=1 row: no increment yet, no stabilization verdict yet
  CHECK(res.csv.find("\n1,2,0.69314718056,0.69314718056,,\n") !=
        std::string::npos);
  // stabilization column filled once the window covers the row
  CHECK(res.csv.find("\n4,16,") != std::string::npos);
  CHECK(res.csv.find(",2\n") != std::string::npos);
}

TEST_CASE("expect mismatches demote the status") {
  json base = minimal_entropy_scenario();
  base["expect"] = {{"estimate", {{"stabilized_alpha", 3}}}};
  ScenarioResult res = run_scenario_json(base, {});
  CHECK(res.status == "mismatch");
  REQUIRE(!res.mismatches.empty());
  CHECK(res.mismatches[0].find("stabilized_alpha") != std::string::npos);
}

TEST_CASE("product budget exhaustion is inconclusive") {
  json base = minimal_entropy_scenario();
  base["n_max"] = 12;
  base["product_budget"] = 50;
  ScenarioResult res = run_scenario_json(base, {});
  CHECK(res.status == "inconclusive");
  CHECK(res.report["table"]["truncated"] == json(true));
}

TEST_CASE("closure budget failures are inconclusive, not errors") {
  json base = minimal_entropy_scenario();
  base["f"] = {{"kind", "ball"}, {"radius", 40}};
  base["closure_budget"] = 1000;
  ScenarioResult res = run_scenario_json(base, {});
  CHECK(res.status == "inconclusive");
  CHECK(res.report.contains("budget_error"));
}

TEST_CASE("overrides beat scenario fields") {
  json base = minimal_entropy_scenario();
  RunOverrides ov;
  ov.n_max = 5;
  ScenarioResult res = run_scenario_json(base, ov);
  CHECK(res.report["table"]["sizes"].size() == 5);
}

TEST_CASE("json subset matching") {
  std::vector<std::string> notes;
  json expect = {{"a", {{"b", 1}}}};
  json actual = {{"a", {{"b", 1}, {"c", 2}}}, {"d", 3}};
  CHECK(json_matches(expect, actual, "", notes));
  CHECK(notes.empty());

  json bad = {{"a", {{"b", 2}}}};
  CHECK(!json_matches(bad, actual, "", notes));
  CHECK(notes.size() == 1);
  CHECK(notes[0].find("/a/b") != std::string::npos);

  notes.clear();
  json arr_expect = {{"xs", {1, 2}}};
  json arr_actual = {{"xs", {1, 2, 3}}};
  CHECK(!json_matches(arr_expect, arr_actual, "", notes));
  // arrays recurse elementwise when lengths agree, allowing subset rows
  notes.clear();
  json rows_expect = {{"xs", json::array({json{{"n", 1}}})}};
  json rows_actual = {{"xs", json::array({json{{"n", 1}, {"extra", 5}}})}};
  CHECK(json_matches(rows_expect, rows_actual, "", notes));
}

TEST_CASE("series scenarios need no endo") {
  json s = {{"schema_version", 1},
            {"name", "ser"},
            {"mode", "series"},
            {"family", {{"kind", "finite"}, {"base", "ut3_f2"}}},
            {"series", "upper_central"}};
  ScenarioResult res = run_scenario_json(s, {});
  CHECK(res.status == "pass");
  // the report carries exactly the three documented keys
  CHECK(res.report.size() == 3);
  CHECK(res.report["kind"] == json("upper_central"));
  CHECK(res.report["orders"] == json::array({1, 2, 8}));
  CHECK(res.report["class"] == json(2));
}

TEST_CASE("dagger scenario carries the eta trace only when asked") {
  json s = {{"schema_version", 1},
            {"name", "dg"},
            {"mode", "dagger"},
            {"family", {{"kind", "direct_sum"}, {"base", "z_2"}}},
            {"endo", {{"endo", "shift"}, {"k", 1}}},
            {"kernel", {{"kind", "trivial"}}},
            {"f", {{"kind", "ball"}, {"radius", 0}}},
            {"n_max", 4}};
  ScenarioResult plain = run_scenario_json(s, {});
  CHECK(plain.status == "pass");
  CHECK(!plain.report.contains("eta"));
  s["trace_eta"] = true;
  ScenarioResult traced = run_scenario_json(s, {});
  CHECK(traced.report.contains("eta"));
  CHECK(traced.report["eta"].size() == 4);
}
