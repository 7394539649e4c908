// Copyright 2026 The chanres Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chanres/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "chanres/error.hpp"
#include "chanres/random.hpp"
#include "json.hpp"
#include "test_util.hpp"

namespace chanres::io {
namespace {

std::string message_of(const std::string& text) {
  try {
    parse_channel_json(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(ParseTest, RoundTripsRandomChannels) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    const QChannel n = random::random_channel(2, 1 + t % 3, 1 + t % 2, rng);
    const QChannel back = parse_channel_json(channel_to_json(n));
    EXPECT_EQ(back.dim_in(), n.dim_in());
    EXPECT_EQ(back.dim_out(), n.dim_out());
    EXPECT_LT(max_abs_diff(back.choi(), n.choi()), 1e-15);
  }
}

TEST(ParseTest, AcceptsIntegerEntries) {
  const QChannel n = parse_channel_json(R"({"dim_in": 2, "dim_out": 2, "kraus": [[[[0, 0], [1, 0]], [[1, 0], [0, 0]]]]})");
  EXPECT_EQ(n.kraus()[0], testing::pauli_x());
}

TEST(ParseTest, MalformedJson) {
  EXPECT_THROW(parse_channel_json("{\"dim_in\": 2,"), ParseError);
  EXPECT_THROW(parse_channel_json("[1, 2]"), ParseError);
}

TEST(ParseTest, MissingOrBadDimensions) {
  EXPECT_NE(message_of(R"({"dim_out": 2, "kraus": []})").find("dim_in"), std::string::npos);
  EXPECT_NE(message_of(R"({"dim_in": 0, "dim_out": 2, "kraus": []})").find("dim_in"), std::string::npos);
  EXPECT_NE(message_of(R"({"dim_in": 2, "dim_out": 1.5, "kraus": []})").find("dim_out"), std::string::npos);
  EXPECT_NE(message_of(R"({"dim_in": 2, "dim_out": 2, "kraus": []})").find("kraus"), std::string::npos);
}

TEST(ParseTest, ShapeErrorsNameTheField) {
  // Second operator has a short row.
  const std::string text =
      R"({"dim_in": 2, "dim_out": 2, "kraus": [[[[1,0],[0,0]],[[0,0],[0,0]]], [[[0,0],[0,0]],[[0,0]]]]})";
  EXPECT_NE(message_of(text).find("kraus[1][1]"), std::string::npos) << message_of(text);
  const std::string bad_pair = R"({"dim_in": 1, "dim_out": 1, "kraus": [[[[1, "x"]]]]})";
  EXPECT_NE(message_of(bad_pair).find("kraus[0][0][0]"), std::string::npos) << message_of(bad_pair);
}

TEST(ParseTest, TraceFailureNamesTheOffendingOperator) {
  // {|0><0|, |1><1|, extra} where the extra operator breaks trace preservation.
  const std::string text = R"({"dim_in": 2, "dim_out": 2, "kraus": [
      [[[1,0],[0,0]],[[0,0],[0,0]]],
      [[[0,0],[0,0]],[[0,0],[1,0]]],
      [[[0,0],[0.5,0]],[[0,0],[0,0]]]]})";
  try {
    parse_channel_json(text);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("kraus[2]"), std::string::npos) << e.what();
  }
}

TEST(FileTest, SaveAndLoad) {
  const auto dir = std::filesystem::temp_directory_path() / "chanres_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "rot.json").string();
  const QChannel n = unitary_channel(rotation_unitary(0.3));
  save_channel_json(n, path);
  EXPECT_FALSE(std::filesystem::exists(path + ".partial"));
  EXPECT_LT(max_abs_diff(load_channel_json(path).choi(), n.choi()), 1e-15);
  std::filesystem::remove_all(dir);
}

TEST(FileTest, MissingFileIsAParseError) {
  EXPECT_THROW(load_channel_json("/nonexistent/chanres/channel.json"), ParseError);
}

TEST(FileTest, UnwritablePathLeavesNothing) {
  EXPECT_THROW(write_file_atomic("/nonexistent/chanres/out.csv", "x"), IoError);
}

monotones::MonotoneReport sample_report() {
  monotones::MonotoneReport r;
  r.c_r_i = 0.4545388;
  r.c_r_b_lower = 0.5684169;
  r.c_max = 0.6670158;
  r.distill_parallel = r.c_r_i;
  r.distill_iterative_lower = r.c_r_b_lower;
  r.dilute_interval = {r.c_r_b_lower, r.c_max};
  r.irreversibility_gap_lower = r.c_r_b_lower - r.c_r_i;
  r.c_r_b_witness = QState::basis(4, 0);
  r.config.ancilla_dim = 2;
  r.config.restarts = 200;
  r.config.rng_seed = 9;
  return r;
}

TEST(ReportTest, TextUsesSixDecimals) {
  const std::string text = report_to_text(sample_report());
  EXPECT_NE(text.find("c_r_i: 0.454539\n"), std::string::npos) << text;
  EXPECT_NE(text.find("c_r_b_lower: 0.568417\n"), std::string::npos);
  EXPECT_NE(text.find("irreversibility_gap_lower: 0.113878\n"), std::string::npos);
  EXPECT_NE(text.find("ancilla_dim: 2\n"), std::string::npos);
}

TEST(ReportTest, JsonCarriesSearchConfig) {
  const auto doc = nlohmann::json::parse(report_to_json(sample_report()));
  EXPECT_DOUBLE_EQ(doc.at("c_r_i").get<double>(), 0.454539);
  EXPECT_EQ(doc.at("search_config").at("ancilla_dim").get<int>(), 2);
  EXPECT_EQ(doc.at("search_config").at("restarts").get<int>(), 200);
  EXPECT_EQ(doc.at("search_config").at("rng_seed").get<int>(), 9);
  EXPECT_EQ(doc.at("dilute_interval").size(), 2u);
  EXPECT_EQ(doc.at("c_r_b_witness").size(), 4u);
}

TEST(ReportTest, SerializationIsDeterministic) {
  EXPECT_EQ(report_to_json(sample_report()), report_to_json(sample_report()));
  EXPECT_EQ(report_to_text(sample_report()), report_to_text(sample_report()));
}

}  // namespace
}  // namespace chanres::io
