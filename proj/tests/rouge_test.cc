// Copyright 2026 The kgnews Authors.
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


#include "kgnews/rouge.h"

#include <fstream>

#include "doctest.h"
#include "kgnews/error.h"
#include "test_util.h"

namespace kgnews {
namespace {

ErrorCode CodeOf(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInvalidArgument;
}

TEST_CASE("tokenizer") {
  CHECK(Tokenize("The Lakers, 108-103!") ==
        std::vector<std::string>{"the", "lakers", "108103"});
  CHECK(Tokenize("  \n ").empty());
}

TEST_CASE("identical and disjoint texts") {
  const auto a = Tokenize("the lakers beat the celtics");
  const auto b = Tokenize("bulls edge knicks late");
  for (const char *m : {"1", "2", "L"}) {
    CHECK(Score(m, a, a).f1 == 1.0);
    CHECK(Score(m, a, b).f1 == 0.0);
  }
}

TEST_CASE("hand counted scores") {
  const auto cand = Tokenize("the cat sat on the mat");
  const auto ref = Tokenize("the cat is on the mat");
  // Clipped unigram overlap: the x2, cat, on, mat.
  RougeScore r1 = RougeN(cand, ref, 1);
  CHECK(r1.precision == doctest::Approx(5.0 / 6).epsilon(1e-12));
  CHECK(r1.f1 == doctest::Approx(5.0 / 6).epsilon(1e-12));
  // Bigrams shared: "the cat", "on the", "the mat".
  RougeScore r2 = RougeN(cand, ref, 2);
  CHECK(r2.precision == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(r2.recall == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(LcsLength(cand, ref) == 5);

  const auto c2 = Tokenize("a b c d");
  const auto r = Tokenize("a c e");
  RougeScore u = RougeN(c2, r, 1);
  CHECK(u.precision == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(u.recall == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(u.f1 == doctest::Approx(4.0 / 7).epsilon(1e-12));
  RougeScore l = RougeL(c2, r);
  CHECK(l.f1 == doctest::Approx(4.0 / 7).epsilon(1e-12));
  CHECK(RougeN(c2, r, 2).f1 == 0.0);

  RougeScore short_ref = RougeN(c2, Tokenize("a"), 2);
  CHECK(short_ref.degenerate);
  CHECK(short_ref.f1 == 0.0);
}

TEST_CASE("corpus matches the independent oracle") {
  const auto pairs = ReadCorpusDirs(testing::DataPath("rouge/candidate"),
                                    testing::DataPath("rouge/reference"));
  REQUIRE(pairs.size() == 5);
  const CorpusResult result = EvaluateCorpus(pairs, {"1", "2", "L"});
  const auto oracle =
      nlohmann::json::parse(testing::ReadText(testing::DataPath("rouge/oracle.json")));
  for (size_t p = 0; p < result.names.size(); ++p) {
    for (size_t m = 0; m < result.metrics.size(); ++m) {
      const auto &want = oracle["pairs"][result.names[p]][result.metrics[m]];
      const RougeScore &got = result.per_pair[p][m];
      CHECK(std::abs(got.precision - want["precision"].get<double>()) < 1e-9);
      CHECK(std::abs(got.recall - want["recall"].get<double>()) < 1e-9);
      CHECK(std::abs(got.f1 - want["f1"].get<double>()) < 1e-9);
    }
  }
  for (size_t m = 0; m < result.metrics.size(); ++m) {
    CHECK(std::abs(result.mean_f1[m] - oracle["mean_f1"][result.metrics[m]].get<double>()) <
          1e-9);
  }
  CHECK(result.ToJson()["mean_f1"].size() == 3);
  CHECK(result.Table().find("ROUGE") != std::string::npos);
}

TEST_CASE("corpus errors") {
  const auto dir = testing::ScratchDir("rouge");
  std::filesystem::create_directories(dir / "c");
  std::filesystem::create_directories(dir / "r");
  std::ofstream(dir / "c" / "a.txt") << "x y";
  std::ofstream(dir / "r" / "a.txt") << "x y";
  std::ofstream(dir / "r" / "b.txt") << "x y";
  CHECK(CodeOf([&] { ReadCorpusDirs((dir / "c").string(), (dir / "r").string()); }) ==
        ErrorCode::kLengthMismatch);
  CHECK(CodeOf([] { EvaluateCorpus({}, {"1"}); }) == ErrorCode::kLengthMismatch);
}

TEST_CASE("metric parsing") {
  CHECK(ParseMetrics("1, 2,l") == std::vector<std::string>{"1", "2", "L"});
  CHECK(CodeOf([] { ParseMetrics("1,W"); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { ParseMetrics("0"); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { ParseMetrics(""); }) == ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace kgnews
