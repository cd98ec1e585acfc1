// Copyright 2026 The pdbench Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "pdbench/csv.h"
#include "pdbench/scores.h"
#include "synthetic.h"

namespace pdbench {
namespace {

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kIo;
}

TEST(PerceptualIndexTest, KnownValue) {
  EXPECT_EQ(PerceptualIndex(8.5, 3.5), 2.5);
  EXPECT_EQ(PerceptualIndex(10.0, 0.0), 0.0);
}

TEST(PerceptualIndexTest, DatasetMeanIsLinear) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ma(2.0, 9.5), nq(2.0, 12.0);
  ScoreSet set;
  for (int i = 0; i < 100; ++i) {
    const std::string id = "img" + std::to_string(i);
    set.Add({"m", id, "ma", ma(rng)});
    set.Add({"m", id, "niqe", nq(rng)});
  }
  const DatasetPi d = ComputeDatasetPi(set, "m");
  EXPECT_EQ(d.images, 100u);
  EXPECT_NEAR(d.pi, d.pi_from_means, 1e-12);
  EXPECT_NEAR(d.pi_from_means, PerceptualIndex(d.mean_ma, d.mean_niqe), 0.0);
}

TEST(PerceptualIndexTest, MissingHalfOfAPairIsAnError) {
  ScoreSet set;
  set.Add({"m", "a", "ma", 5});
  set.Add({"m", "a", "niqe", 4});
  set.Add({"m", "b", "ma", 5});
  EXPECT_EQ(KindOf([&] { ComputeDatasetPi(set, "m"); }),
            ErrorKind::kMissingData);
  EXPECT_EQ(KindOf([&] { ComputeDatasetPi(set, "other"); }),
            ErrorKind::kMissingData);
}

TEST(ScoreSetTest, DuplicateAndNonFiniteRejected) {
  ScoreSet set;
  set.Add({"m", "a", "ma", 5});
  EXPECT_EQ(KindOf([&] { set.Add({"m", "a", "ma", 6}); }),
            ErrorKind::kDuplicate);
  EXPECT_EQ(KindOf([&] { set.Add({"m", "b", "ma", std::nan("")}); }),
            ErrorKind::kParse);
  EXPECT_EQ(*set.Find("m", "a", "ma"), 5.0);
  EXPECT_FALSE(set.Find("m", "a", "niqe"));
}

TEST(ScoreSetTest, ColumnFollowsRosterAndNamesMissing) {
  ScoreSet set({"b", "a", "c"});
  set.Add({"m", "a", "ssim", 0.5});
  set.Add({"m", "b", "ssim", 0.7});
  try {
    set.Column("m", "ssim");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMissingData);
    EXPECT_NE(std::string(e.what()).find("c"), std::string::npos);
  }
  set.Add({"m", "c", "ssim", 0.9});
  const auto col = set.Column("m", "ssim");
  ASSERT_EQ(col.size(), 3u);
  EXPECT_EQ(col[0].first, "b");
  EXPECT_EQ(col[2].second, 0.9);
}

TEST(ScoreCsvTest, ParsesAndRoundTrips) {
  const std::string text =
      "# produced elsewhere\r\nimage_id,value\r\n0801,7.25\n0802,6.5\n";
  const ScoreSet set = ParseScoreCsv(text, "ma.csv", "m", "ma");
  EXPECT_EQ(set.size(), 2u);
  EXPECT_EQ(*set.Find("m", "0801", "ma"), 7.25);
  const std::string formatted = FormatScoreCsv(set, "m", "ma");
  EXPECT_EQ(formatted, "image_id,value\n0801,7.25\n0802,6.5\n");
  const ScoreSet back = ParseScoreCsv(formatted, "x", "m", "ma");
  EXPECT_EQ(back.records(), set.records());
}

TEST(ScoreCsvTest, ErrorsNameTheOffendingRow) {
  auto message = [](const std::string& text,
                    std::vector<std::string> roster = {}) {
    try {
      ParseScoreCsv(text, "ma.csv", "m", "ma", roster);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  const std::string dup = message("image_id,value\na,1\nb,2\na,3\n");
  EXPECT_NE(dup.find("ma.csv:4"), std::string::npos) << dup;
  EXPECT_NE(dup.find("'a'"), std::string::npos) << dup;
  const std::string nan = message("image_id,value\na,nan\n");
  EXPECT_NE(nan.find("'a'"), std::string::npos) << nan;
  EXPECT_NE(message("image_id,value\na,1.5x\n"), "");
  EXPECT_NE(message("id,score\na,1\n"), "");
  const std::string missing = message("image_id,value\na,1\n", {"a", "zz"});
  EXPECT_NE(missing.find("zz"), std::string::npos) << missing;
}

TEST(ScoreCsvTest, LoadReportsMissingFile) {
  testing::TempDir dir("scores");
  EXPECT_EQ(KindOf([&] { LoadScores(dir / "none.csv", "m", "ma"); }),
            ErrorKind::kMissingFile);
}

TEST(CsvTest, FormatDoubleRoundTrips) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng);
    EXPECT_EQ(*ParseFiniteDouble(FormatDouble(v)), v);
  }
  EXPECT_EQ(FormatFixed(2.0, 3), "2.000");
  EXPECT_FALSE(ParseFiniteDouble("inf"));
  EXPECT_FALSE(ParseFiniteDouble(""));
}

}  // namespace
}  // namespace pdbench
