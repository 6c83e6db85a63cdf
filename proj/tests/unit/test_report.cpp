#include <sstream>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "calderon/report.hpp"

namespace {

using namespace calderon;

ConvergenceReport sample_report() {
  ConvergenceReport r;
  r.columns = {"E_lambda", "E_field"};
  r.rows = {{10, {4.6842, 0.5}, {}}, {20, {1.2489, 0.125}, {}}, {40, {0.0, 0.03}, {}}};
  fill_ecr(r.rows);
  r.config = {{"method", "dD01"}, {"k", "3"}};
  r.wall_seconds = 1.25;
  r.special_functions_ok = true;
  r.special_functions_detail = "max rel 1e-16";
  return r;
}

std::string render(const ConvergenceReport& r, OutputFormat f, bool meta) {
  std::ostringstream out;
  write_report(out, r, f, meta);
  return out.str();
}

TEST(Report, CsvWithoutMetadata) {
  const std::string csv = render(sample_report(), OutputFormat::csv, false);
  EXPECT_EQ(csv,
            "N,error_1,ecr_1,error_2,ecr_2\n"
            "10,4.6842e+00,,5.0000e-01,\n"
            "20,1.2489e+00,1.9071,1.2500e-01,2.0000\n"
            "40,0.0000e+00,,3.0000e-02,2.0589\n");
}

TEST(Report, CsvMetadataLines) {
  const std::string csv = render(sample_report(), OutputFormat::csv, true);
  EXPECT_EQ(csv.rfind("# method: dD01\n", 0), 0u);
  EXPECT_NE(csv.find("# wall_seconds: 1.250\n"), std::string::npos);
  EXPECT_NE(csv.find("special_functions: ok"), std::string::npos);
  EXPECT_NE(csv.find("E_lambda"), std::string::npos);
}

TEST(Report, WarningsAreAlwaysWritten) {
  ConvergenceReport r = sample_report();
  r.warnings = {"N = 20: ill-conditioned"};
  EXPECT_NE(render(r, OutputFormat::csv, false).find("# warning: N = 20: ill-conditioned\n"),
            std::string::npos);
}

TEST(Report, JsonKeepsFullPrecision) {
  ConvergenceReport r = sample_report();
  r.rows[0].errors[0] = 0.1234567890123456;
  fill_ecr(r.rows);
  const auto doc = nlohmann::json::parse(render(r, OutputFormat::json, false));
  EXPECT_EQ(doc["rows"][0]["errors"][0].get<double>(), 0.1234567890123456);
  EXPECT_TRUE(doc["rows"][0]["ecr"][0].is_null());
  EXPECT_TRUE(doc["rows"][2]["ecr"][0].is_null());
  EXPECT_EQ(doc["columns"][1], "E_field");
  EXPECT_FALSE(doc.contains("metadata"));
  const auto with_meta = nlohmann::json::parse(render(r, OutputFormat::json, true));
  EXPECT_TRUE(with_meta.contains("metadata"));
}

TEST(Report, TamperedRatesAreCaught) {
  ConvergenceReport r = sample_report();
  EXPECT_NO_THROW(verify_ecr(r));
  r.rows[1].ecr[0] = 1.5;
  EXPECT_THROW(verify_ecr(r), std::logic_error);
  std::ostringstream out;
  EXPECT_THROW(write_report(out, r, OutputFormat::csv, false), std::logic_error);
  EXPECT_TRUE(out.str().empty());
}

TEST(Report, StudyOutputIsDeterministic) {
  StudyConfig c;
  c.apply({{"method", "iN01"}, {"N", "10,20,40"}});
  c.metadata = false;
  const std::string a = render(run_study(c), OutputFormat::csv, false);
  const std::string b = render(run_study(c), OutputFormat::csv, false);
  EXPECT_EQ(a, b);
  EXPECT_EQ(render(run_study(c), OutputFormat::json, false),
            render(run_study(c), OutputFormat::json, false));
}

}  // namespace
