#include <gtest/gtest.h>

#include <filesystem>

#include "l0pen/report_io.hpp"

using namespace l0pen;

namespace {

SolveReport sample_report() {
  SolveReport r;
  r.final_iterate = {Eigen::Vector3d(0.1, 0.0, 0.9), Eigen::Vector3d(0.1, 0.0, 0.9),
                     Eigen::Vector3d(0.0, 1.0, 1.0 / 3.0)};
  r.spo_value = 1.0 / 7.0;
  r.penalty_value = -2.5;
  r.complementarity = 0.3;
  r.complementarity_sum = 0.4;
  r.stationarity = 1e-7;
  r.inner_iterations = 123;
  r.outer_iterations = 4;
  r.wall_time = 0.01;
  r.alpha_final = 8.0;
  r.l0 = 2;
  r.status = SolveStatus::kMaxIterations;
  r.objective_trace = {3.0, 2.0, 1.0};
  r.alpha_trace = {1, 2, 4, 8};
  r.complementarity_trace = {1.0, 0.5, 0.4, 0.3};
  r.stationarity_trace = {1e-5, 1e-6, 1e-7, 1e-7};
  r.inner_status_trace = {SolveStatus::kConverged, SolveStatus::kNoProgress,
                          SolveStatus::kConverged, SolveStatus::kMaxIterations};
  return r;
}

}  // namespace

TEST(ReportIo, RoundTrip) {
  const auto r = sample_report();
  ReportMeta meta{"pen-spg", "huber(0.25)", "0123456789abcdef", "fedcba9876543210", 1e-9, 1e-5};
  const auto [back, m] = report_from_string(report_to_string(r, meta));
  EXPECT_EQ(back.final_iterate.x, r.final_iterate.x);
  EXPECT_EQ(back.final_iterate.y, r.final_iterate.y);
  EXPECT_EQ(back.spo_value, r.spo_value);
  EXPECT_EQ(back.status, r.status);
  EXPECT_EQ(back.l0, 2);
  EXPECT_EQ(back.inner_iterations, 123);
  EXPECT_EQ(back.alpha_trace, r.alpha_trace);
  EXPECT_EQ(back.inner_status_trace, r.inner_status_trace);
  EXPECT_EQ(m.method, "pen-spg");
  EXPECT_EQ(m.family, "huber(0.25)");
  EXPECT_EQ(m.instance_hash, meta.instance_hash);
  EXPECT_EQ(m.config_hash, meta.config_hash);
  EXPECT_EQ(m.zero_tol, 1e-9);
  EXPECT_EQ(m.stat_tol, 1e-5);
}

TEST(ReportIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "l0pen_report_test.json";
  save_report(path, sample_report(), ReportMeta{});
  EXPECT_EQ(load_report(path).first.objective_trace, sample_report().objective_trace);
  std::filesystem::remove(path);
}

TEST(ReportIo, MalformedInputThrows) {
  EXPECT_THROW(report_from_string("{"), Error);
  EXPECT_THROW(report_from_string("{}"), Error);
  std::string text = report_to_string(sample_report(), ReportMeta{});
  text.replace(text.find("max_iter"), 8, "whatever");
  EXPECT_THROW(report_from_string(text), Error);
}
