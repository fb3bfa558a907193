#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "topp/io.hpp"
#include "topp/verification.hpp"

namespace topp {
namespace {

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

TEST(ParamsJson, RoundTrip) {
  const ModelParams p = figure2_params();
  EXPECT_EQ(params_from_json(params_to_json(p)), p);
  const Json j = params_to_json(p);
  ASSERT_EQ(j.size(), 9u);
  std::size_t i = 0;
  for (const auto& [key, value] : j.items()) EXPECT_EQ(key, kParamNames[i++]);
}

TEST(ParamsJson, RoundTripThroughText) {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = sample_admissible(rng);
    EXPECT_EQ(params_from_json(Json::parse(dump_17g(params_to_json(p)))), p);
  }
}

TEST(ParamsJson, Rejections) {
  Json j = params_to_json(figure1_params());
  Json missing = j;
  missing.erase("k");
  EXPECT_THROW(params_from_json(missing), FormatError);

  Json extra = j;
  extra["h"] = 1.0;
  EXPECT_THROW(params_from_json(extra), FormatError);

  Json negative = j;
  negative["c"] = -0.1;
  EXPECT_THROW(params_from_json(negative), FormatError);

  Json zero = j;
  zero["s1"] = 0.0;
  EXPECT_THROW(params_from_json(zero), FormatError);

  Json text = j;
  text["g0"] = "0.1";
  EXPECT_THROW(params_from_json(text), FormatError);

  EXPECT_THROW(params_from_json(Json::array({1, 2, 3})), FormatError);
}

TEST(StateJson, RoundTripAndRejections) {
  const State s{0.5, 0.18, 0.016};
  EXPECT_EQ(state_from_json(state_to_json(s)), s);
  EXPECT_THROW(state_from_json(Json::array({0.5, 0.1})), FormatError);
  EXPECT_THROW(state_from_json(Json::array({0.5, -0.1, 0.0})), FormatError);
  EXPECT_THROW(state_from_json(Json::array({0.5, "a", 0.0})), FormatError);
  EXPECT_THROW(state_from_json(Json::object()), FormatError);
}

TEST(Dump17g, FullPrecisionFloats) {
  const Json j = Json{{"a", 0.1}, {"b", 3}, {"c", Json::array({1.0 / 3.0, true})},
                      {"d", nullptr}, {"e", "x"}};
  const std::string text = dump_17g(j);
  EXPECT_NE(text.find("0.10000000000000001"), std::string::npos);
  EXPECT_NE(text.find("0.33333333333333331"), std::string::npos);
  EXPECT_NE(text.find("\"b\": 3"), std::string::npos);
  EXPECT_EQ(Json::parse(text)["c"][0].get<double>(), 1.0 / 3.0);
  EXPECT_EQ(Json::parse(text), Json::parse(j.dump()));
}

TEST(AnalysisReport, Figure2) {
  const Json r = analysis_report(figure2_params());
  EXPECT_EQ(r["regime"], "critical");
  EXPECT_EQ(r["bounds"]["A"].get<double>(), 1.5);
  ASSERT_EQ(r["fixed_points"].size(), 2u);
  const Json& u1 = r["fixed_points"][0];
  EXPECT_EQ(u1["label"], "u1");
  EXPECT_EQ(u1["biological_label"], "pathological");
  EXPECT_EQ(u1["stability"], "attracting");
  const Json& u2 = r["fixed_points"][1];
  EXPECT_EQ(u2["label"], "u2");
  EXPECT_EQ(u2["biological_label"], "physiological");
  EXPECT_EQ(u2["stability"], "non-hyperbolic (semi-attracting)");
  EXPECT_NEAR(u2["location"][2].get<double>(), 0.015, 1e-15);
  EXPECT_EQ(u2["eigenvalues"].size(), 3u);
  EXPECT_TRUE(r["critical_extras"]["two_fixed_points"].get<bool>());
  EXPECT_TRUE(r["violations"].empty());
  EXPECT_TRUE(r["diagnostics"].empty());
}

TEST(AnalysisReport, InadmissibleAndDiagnostics) {
  ModelParams p = figure1_params();
  p.d0 = 0.1;
  const Json bad = analysis_report(p);
  EXPECT_EQ(bad["regime"], "inadmissible");
  EXPECT_TRUE(bad["fixed_points"].empty());
  ASSERT_EQ(bad["violations"].size(), 1u);
  EXPECT_FALSE(bad.contains("critical_extras"));

  ModelParams q = figure2_params();
  q.g0 = 0.06;
  const Json crit = analysis_report(q);
  EXPECT_EQ(crit["fixed_points"].size(), 1u);
  ASSERT_EQ(crit["diagnostics"].size(), 1u);
  EXPECT_NE(crit["diagnostics"][0].get<std::string>().find("-0.05"), std::string::npos);
}

TEST(AnalysisText, MentionsEveryFixedPoint) {
  const std::string t = analysis_text(figure2_params());
  EXPECT_NE(t.find("regime: critical"), std::string::npos);
  EXPECT_NE(t.find("u1 (pathological)"), std::string::npos);
  EXPECT_NE(t.find("u2 (physiological)"), std::string::npos);
  EXPECT_NE(t.find("semi-attracting"), std::string::npos);
}

TEST(TrajectoryCsv, StrideKeepsFinalRow) {
  for (const auto& [steps, rows] : {std::pair{500u, 51u}, std::pair{505u, 52u}}) {
    std::ostringstream os;
    TrajectoryCsvWriter w(os, Regions(figure1_params()), 10, steps);
    for_each_state(figure1_params(), {0.5, 0.3, 0.016}, steps, w);
    EXPECT_EQ(w.rows(), rows);
    EXPECT_EQ(count_lines(os.str()), rows + 1);
    EXPECT_EQ(os.str().rfind("\n" + std::to_string(steps) + ","),
              os.str().rfind('\n', os.str().size() - 2));
  }
}

TEST(TrajectoryCsv, RowFormat) {
  std::ostringstream os;
  TrajectoryCsvWriter w(os, Regions(figure2_params()), 1, 0);
  w(0, {0.5, 0.18, 0.014});
  w(0, {0.5, 0.18, 0.014});  // duplicates are dropped
  EXPECT_EQ(os.str(), "n,x,y,z,in_omega,in_omega1,in_omega2\n0,0.5,0.18,0.014,1,1,1\n");
  EXPECT_THROW(TrajectoryCsvWriter(os, std::nullopt, 0, 1), PreconditionError);
}

TEST(BasinCsv, HeaderAndRows) {
  std::ostringstream os;
  BasinLabel b;
  b.initial = {0.5, 0.18, 0.016};
  b.label = BasinOutcome::ToU2;
  b.iterations = 12;
  b.z_hypothesis = true;
  write_basin_csv(os, {b});
  EXPECT_EQ(os.str(), "x0,y0,z0,label,iterations,x_hyp,z_hyp\n0.5,0.18,0.016,u2,12,0,1\n");
}

TEST(Verification, FigureSetsPass) {
  VerifyOptions opt;
  opt.seed = 42;
  opt.samples = 2000;
  opt.period_samples = 200;
  for (const ModelParams& p : {figure1_params(), figure2_params()}) {
    const auto results = run_verification(p, opt);
    EXPECT_TRUE(all_passed(results));
    for (const auto& r : results) {
      EXPECT_NE(r.status, PropertyStatus::Fail) << r.name << ": " << r.detail;
    }
  }
}

TEST(Verification, SkipsOmega2WithoutSecondFixedPoint) {
  VerifyOptions opt;
  opt.samples = 100;
  opt.period_samples = 10;
  const auto results = run_verification(figure1_params(), opt);
  for (const auto& r : results) {
    if (r.name == "omega2_invariance" || r.name == "u2_sign_conditions") {
      EXPECT_EQ(r.status, PropertyStatus::Skipped);
    }
  }
}

TEST(Verification, InadmissibleThrows) {
  ModelParams p = figure1_params();
  p.d0 = 0.1;
  EXPECT_THROW(run_verification(p, {}), PreconditionError);
}

}  // namespace
}  // namespace topp
