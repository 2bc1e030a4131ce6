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


// ROUGE-N and ROUGE-L F1 against a single reference.
//
// Tokens are lowercased, stripped of ASCII punctuation and split on
// whitespace, so scores are only comparable within this toolchain.

#ifndef KGNEWS_ROUGE_H_
#define KGNEWS_ROUGE_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace kgnews {

std::vector<std::string> Tokenize(std::string_view text);

struct RougeScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  // Set when the reference has fewer than n tokens; the score is then zero.
  bool degenerate = false;
};

RougeScore RougeN(const std::vector<std::string> &candidate,
                  const std::vector<std::string> &reference, int n);
RougeScore RougeL(const std::vector<std::string> &candidate,
                  const std::vector<std::string> &reference);

size_t LcsLength(const std::vector<std::string> &a, const std::vector<std::string> &b);

// Metric names: "1", "2", ... for ROUGE-N and "L".
std::vector<std::string> ParseMetrics(std::string_view spec);
RougeScore Score(std::string_view metric, const std::vector<std::string> &candidate,
                 const std::vector<std::string> &reference);

struct CorpusPair {
  std::string name;
  std::string candidate;
  std::string reference;
};

struct CorpusResult {
  std::vector<std::string> metrics;
  std::vector<std::string> names;
  std::vector<std::vector<RougeScore>> per_pair;  // [pair][metric]
  std::vector<double> mean_f1;                    // per metric
  std::vector<std::string> warnings;

  nlohmann::json ToJson() const;
  std::string Table(const std::string &method = "candidate") const;
};

CorpusResult EvaluateCorpus(const std::vector<CorpusPair> &pairs,
                            const std::vector<std::string> &metrics);

// Pairs files with the same name in the two directories. Throws
// kLengthMismatch when the file sets differ.
std::vector<CorpusPair> ReadCorpusDirs(const std::string &candidate_dir,
                                       const std::string &reference_dir);

}  // namespace kgnews

#endif  // KGNEWS_ROUGE_H_
