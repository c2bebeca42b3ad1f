#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "l0pen/instance_io.hpp"
#include "l0pen/random.hpp"

using namespace l0pen;

namespace {

InstanceFile portfolio_file() {
  InstanceFile f;
  f.problem = gen_portfolio(7, 3, 0.5, 2.0);
  f.rng = RngInfo{Rng::kName, 3};
  return f;
}

InstanceFile dictionary_file() {
  auto g = gen_dictionary(4, 3, 5, 8);
  InstanceFile f;
  f.problem = g.instance;
  f.start = std::make_pair(g.C0, g.D0);
  f.rng = RngInfo{Rng::kName, 8};
  return f;
}

std::string error_where(const std::string& text) {
  try {
    (void)instance_from_string(text);
  } catch (const InstanceFormatError& e) {
    return e.where();
  }
  return "<no error>";
}

}  // namespace

TEST(InstanceIo, PortfolioRoundTripIsBitExact) {
  const auto f = portfolio_file();
  const auto g = instance_from_string(instance_to_string(f));
  ASSERT_TRUE(g.is_portfolio());
  EXPECT_EQ(g.portfolio().Q, f.portfolio().Q);
  EXPECT_EQ(g.portfolio().mu, f.portfolio().mu);
  EXPECT_EQ(g.portfolio().rho, 0.5);
  EXPECT_EQ(g.portfolio().beta, 2.0);
  EXPECT_EQ(g.rng, f.rng);
  EXPECT_EQ(instance_hash(g), instance_hash(f));
}

TEST(InstanceIo, DictionaryRoundTripKeepsStart) {
  const auto f = dictionary_file();
  const auto g = instance_from_string(instance_to_string(f));
  ASSERT_FALSE(g.is_portfolio());
  EXPECT_EQ(g.dictionary().Z, f.dictionary().Z);
  ASSERT_TRUE(g.start.has_value());
  EXPECT_EQ(g.start->first, f.start->first);
  EXPECT_EQ(g.start->second, f.start->second);
  EXPECT_EQ(default_start(g), dictionary_pack(f.start->first, f.start->second));
}

TEST(InstanceIo, FileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "l0pen_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "p.json";
  save_instance(path, portfolio_file());
  const auto g = load_instance(path);
  EXPECT_EQ(instance_hash(g), instance_hash(portfolio_file()));
  std::filesystem::remove_all(dir);
  EXPECT_THROW(load_instance(path), Error);
}

TEST(InstanceIo, TruncatedFileReportsPosition) {
  const std::string text = instance_to_string(portfolio_file());
  const std::string where = error_where(text.substr(0, text.size() / 2));
  EXPECT_EQ(where.rfind("line 1, column ", 0), 0u) << where;
}

TEST(InstanceIo, UnknownFieldIsNamed) {
  std::string text = instance_to_string(portfolio_file());
  text.insert(1, "\"colour\":\"blue\",");
  EXPECT_EQ(error_where(text), "colour");
  std::string nested = instance_to_string(dictionary_file());
  nested.replace(nested.find("\"Z\""), 3, "\"W\"");
  EXPECT_EQ(error_where(nested), "matrices.W");
}

TEST(InstanceIo, ShapeMismatch) {
  std::string text = instance_to_string(portfolio_file());
  text.replace(text.find("\"n\":7"), 5, "\"n\":6");
  EXPECT_EQ(error_where(text), "matrices.Q");
}

TEST(InstanceIo, SchemaErrors) {
  EXPECT_EQ(error_where("[1,2]"), "<root>");
  std::string text = instance_to_string(portfolio_file());
  text.replace(text.find("\"portfolio\""), 11, "\"knapsack\"");
  EXPECT_EQ(error_where(text), "kind");
  std::string version = instance_to_string(portfolio_file());
  version.replace(version.find("\"format_version\":1"), 18, "\"format_version\":2");
  EXPECT_EQ(error_where(version), "format_version");
}

TEST(InstanceIo, InvalidCovarianceRejected) {
  InstanceFile f;
  PortfolioInstance p;
  p.Q = Matrix::Identity(2, 2);
  p.Q(1, 1) = -1.0;
  p.mu = Vector::Zero(2);
  f.problem = p;
  EXPECT_THROW(instance_from_string(instance_to_string(f)), InstanceFormatError);
}

TEST(InstanceIo, HashChangesWithContent) {
  auto f = portfolio_file();
  const auto h = instance_hash(f);
  EXPECT_EQ(h.size(), 16u);
  std::get<PortfolioInstance>(f.problem).mu[0] += 1e-12;
  EXPECT_NE(instance_hash(f), h);
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(InstanceIo, DefaultStarts) {
  const auto p = portfolio_file();
  const Vector x = default_start(p);
  EXPECT_NEAR(x.sum(), 1.0, 1e-10);
  auto d = dictionary_file();
  d.start.reset();
  const Vector z = default_start(d);
  const auto [C, D] = dictionary_unpack(d.dictionary(), z);
  EXPECT_EQ(C, Matrix::Zero(3, 5));
  EXPECT_NEAR(D.row(0).norm(), 1.0, 1e-12);
}
