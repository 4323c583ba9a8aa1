#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "qcomp/gallery.hpp"
#include "test_support.hpp"

using namespace qcomp;

TEST(JsonIo, MatrixRoundTrip) {
  std::mt19937_64 rng(51);
  const Matrix m = qtest::random_gaussian(2, 3, rng);
  const Json j = matrix_to_json(m);
  ASSERT_EQ(j.size(), 2u);
  ASSERT_EQ(j[0].size(), 3u);
  EXPECT_EQ(j[1][0][0].get<double>(), m(1, 0).real());
  EXPECT_EQ(j[1][0][1].get<double>(), m(1, 0).imag());
  EXPECT_EQ(matrix_from_json(j, "m"), m);
}

TEST(JsonIo, MatrixRejectsMalformed) {
  EXPECT_THROW(matrix_from_json(Json::parse("[]"), "m"), InvalidInput);
  EXPECT_THROW(matrix_from_json(Json::parse("[[[1,0]],[[1,0],[2,0]]]"), "m"), InvalidInput);
  EXPECT_THROW(matrix_from_json(Json::parse("[[1,0]]"), "m"), InvalidInput);
  EXPECT_THROW(matrix_from_json(Json::parse("[[[\"a\",0]]]"), "m"), InvalidInput);
}

TEST(JsonIo, ChannelRoundTrip) {
  const Tolerance tol;
  std::mt19937_64 rng(52);
  const QuantumChannel ch(qtest::random_kraus(3, 2, 2, rng), "rand");
  const Json j = channel_to_json(ch);
  const QuantumChannel back = channel_from_json(j, tol);
  EXPECT_EQ(back.label(), "rand");
  EXPECT_EQ(back.dim_in(), 3u);
  EXPECT_EQ(back.dim_out(), 2u);
  EXPECT_EQ(back.superoperator(), ch.superoperator());
  EXPECT_EQ(channel_to_json(back).dump(), j.dump());
}

TEST(JsonIo, ChannelSchemaErrors) {
  const Tolerance tol;
  EXPECT_THROW(channel_from_json(Json::parse(R"({"dim_in":2,"dim_out":2})"), tol), InvalidInput);
  EXPECT_THROW(
      channel_from_json(Json::parse(R"({"dim_in":2,"dim_out":2,"kraus":[[[[1,0]]]]})"), tol),
      InvalidInput);
  EXPECT_THROW(channel_from_json(
                   Json::parse(R"({"dim_in":1,"dim_out":1,"kraus":[[[[2,0]]]]})"), tol),
               InvalidInput);
  EXPECT_THROW(channel_from_json(Json::parse(R"({"dim_in":0,"dim_out":1,"kraus":[]})"), tol),
               InvalidInput);
}

TEST(JsonIo, AlgebraSpecRoundTrip) {
  const Tolerance tol;
  AlgebraSpec spec{3, matrix_units_on(3, {0, 1}), true};
  const AlgebraSpec back = algebra_spec_from_json(algebra_spec_to_json(spec));
  EXPECT_EQ(back.ambient_dim, 3u);
  EXPECT_TRUE(back.include_identity);
  ASSERT_EQ(back.generators.size(), 4u);
  EXPECT_EQ(build_algebra(back, tol).dim(), 5u);
  EXPECT_EQ(build_algebra(AlgebraSpec{3, {}, false}, tol).dim(), 0u);
  EXPECT_EQ(build_algebra(AlgebraSpec{3, {}, true}, tol).dim(), 1u);
  EXPECT_THROW(algebra_spec_from_json(Json::parse(R"({"ambient_dim":2,"generators":[[[[1,0]]]]})")),
               InvalidInput);
}

TEST(JsonIo, LoadJsonFile) {
  EXPECT_THROW(load_json_file("/nonexistent/x.json"), InvalidInput);
  const std::string path = ::testing::TempDir() + "qcomp_bad.json";
  {
    std::ofstream out(path);
    out << "{not json";
  }
  EXPECT_THROW(load_json_file(path), InvalidInput);
  std::remove(path.c_str());
}

TEST(Analysis, ReportIsDeterministic) {
  const Tolerance tol;
  const GalleryCase c = gallery_case("depolarizing-qubit", tol);
  const std::string a = analyze(c.request, tol).dump();
  const std::string b = analyze(c.request, tol).dump();
  EXPECT_EQ(a, b);
}

TEST(Analysis, RejectsMismatchedAlgebra) {
  const Tolerance tol;
  AnalysisRequest req{QuantumChannel({Matrix::Identity(2, 2)}),
                      {{"M3", AlgebraSpec{3, matrix_units_on(3, {0, 1, 2}), false}}},
                      std::nullopt};
  EXPECT_THROW(analyze(req, tol), InvalidInput);
}

TEST(Analysis, RenderMentionsAlgebras) {
  const Tolerance tol;
  const GalleryCase c = gallery_case("tensor-pair-m4", tol);
  const std::string text = render_report(analyze(c.request, tol));
  EXPECT_NE(text.find("algebra M2(x)I2"), std::string::npos);
  EXPECT_NE(text.find("dim(A)*dim(B) <= n^2"), std::string::npos);
}

TEST(Gallery, CompareExpectations) {
  const Json report = Json::parse(R"({"a": {"b": 3.0, "c": true}})");
  EXPECT_TRUE(compare_expectations(report, Json{{"/a/b", 3}, {"/a/c", true}}).empty());
  EXPECT_EQ(compare_expectations(report, Json{{"/a/b", 4}}).size(), 1u);
  EXPECT_TRUE(compare_expectations(report, Json{{"/a/b", Json{{"max", 5.0}}}}).empty());
  EXPECT_EQ(compare_expectations(report, Json{{"/a/b", Json{{"min", 5.0}}}}).size(), 1u);
  EXPECT_EQ(compare_expectations(report, Json{{"/a/missing", 1}}).size(), 1u);
}

TEST(Gallery, UnknownCase) {
  EXPECT_THROW(gallery_case("nope", Tolerance{}), InvalidInput);
  EXPECT_GE(gallery_cases(Tolerance{}).size(), 8u);
}

TEST(Gallery, Builders) {
  EXPECT_LT((pauli('Y') * pauli('Y') - Matrix::Identity(2, 2)).norm(), 1e-15);
  EXPECT_THROW(pauli('Q'), InvalidInput);
  const Matrix k = kron_all({pauli('X'), pauli('Z'), pauli('I')});
  EXPECT_EQ(k.rows(), 8);
  EXPECT_EQ(matrix_units_on(4, {0, 3}).size(), 4u);
  EXPECT_EQ(matrix_unit(3, 2, 1)(2, 1), Complex(1.0, 0.0));
}
