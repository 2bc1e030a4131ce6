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

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "kgnews/error.h"

namespace kgnews {
namespace {

using nlohmann::json;

RougeScore FromCounts(double overlap, double candidate_total, double reference_total) {
  RougeScore s;
  s.precision = candidate_total > 0 ? overlap / candidate_total : 0;
  s.recall = reference_total > 0 ? overlap / reference_total : 0;
  s.f1 = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0;
  return s;
}

std::map<std::vector<std::string>, int> NGrams(const std::vector<std::string> &tokens, int n) {
  std::map<std::vector<std::string>, int> counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string MetricName(const std::string &m) { return "ROUGE-" + m; }

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isspace(u)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else if (u < 0x80 && std::ispunct(u)) {
      continue;
    } else {
      current += static_cast<char>(u < 0x80 ? std::tolower(u) : u);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

RougeScore RougeN(const std::vector<std::string> &candidate,
                  const std::vector<std::string> &reference, int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "ROUGE-N needs n >= 1");
  if (reference.size() < static_cast<size_t>(n)) {
    RougeScore s;
    s.degenerate = true;
    return s;
  }
  const auto cand = NGrams(candidate, n);
  const auto ref = NGrams(reference, n);
  double overlap = 0;
  for (const auto &[gram, count] : cand) {
    auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  const double cand_total =
      candidate.size() >= static_cast<size_t>(n) ? static_cast<double>(candidate.size() - n + 1) : 0;
  return FromCounts(overlap, cand_total, static_cast<double>(reference.size() - n + 1));
}

size_t LcsLength(const std::vector<std::string> &a, const std::vector<std::string> &b) {
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore RougeL(const std::vector<std::string> &candidate,
                  const std::vector<std::string> &reference) {
  if (candidate.empty() || reference.empty()) return {};
  return FromCounts(static_cast<double>(LcsLength(candidate, reference)),
                    static_cast<double>(candidate.size()), static_cast<double>(reference.size()));
}

std::vector<std::string> ParseMetrics(std::string_view spec) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss{std::string(spec)};
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item == "l") item = "L";
    const bool numeric = !item.empty() && std::all_of(item.begin(), item.end(), ::isdigit) &&
                         std::stoi(item) >= 1;
    if (item != "L" && !numeric) {
      throw Error(ErrorCode::kInvalidArgument, "unknown ROUGE metric '" + item + "'");
    }
    out.push_back(item);
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "no ROUGE metrics given");
  return out;
}

RougeScore Score(std::string_view metric, const std::vector<std::string> &candidate,
                 const std::vector<std::string> &reference) {
  if (metric == "L") return RougeL(candidate, reference);
  return RougeN(candidate, reference, std::stoi(std::string(metric)));
}

CorpusResult EvaluateCorpus(const std::vector<CorpusPair> &pairs,
                            const std::vector<std::string> &metrics) {
  if (pairs.empty()) throw Error(ErrorCode::kLengthMismatch, "corpus has no pairs");
  CorpusResult r;
  r.metrics = metrics;
  r.mean_f1.assign(metrics.size(), 0);
  for (const auto &pair : pairs) {
    const auto cand = Tokenize(pair.candidate);
    const auto ref = Tokenize(pair.reference);
    std::vector<RougeScore> scores;
    for (size_t m = 0; m < metrics.size(); ++m) {
      scores.push_back(Score(metrics[m], cand, ref));
      if (scores.back().degenerate) {
        r.warnings.push_back(pair.name + ": reference shorter than " + MetricName(metrics[m]));
      }
    }
    r.names.push_back(pair.name);
    r.per_pair.push_back(std::move(scores));
  }
  // Ordered reduction keeps the mean independent of evaluation order.
  for (size_t m = 0; m < metrics.size(); ++m) {
    double sum = 0;
    for (const auto &scores : r.per_pair) sum += scores[m].f1;
    r.mean_f1[m] = sum / static_cast<double>(r.per_pair.size());
  }
  return r;
}

json CorpusResult::ToJson() const {
  json mean = json::object();
  for (size_t m = 0; m < metrics.size(); ++m) mean[MetricName(metrics[m])] = mean_f1[m];
  json pairs = json::array();
  for (size_t i = 0; i < names.size(); ++i) {
    json scores = json::object();
    for (size_t m = 0; m < metrics.size(); ++m) {
      const auto &s = per_pair[i][m];
      scores[MetricName(metrics[m])] = {
          {"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
    }
    pairs.push_back({{"name", names[i]}, {"scores", scores}});
  }
  return {{"mean_f1", mean}, {"pairs", pairs}, {"warnings", warnings}};
}

std::string CorpusResult::Table(const std::string &method) const {
  std::string out = "Method";
  for (const auto &m : metrics) out += "\t" + MetricName(m);
  out += "\n" + method;
  char buf[32];
  for (double v : mean_f1) {
    std::snprintf(buf, sizeof buf, "\t%.3f", v);
    out += buf;
  }
  return out + "\n";
}

std::vector<CorpusPair> ReadCorpusDirs(const std::string &candidate_dir,
                                       const std::string &reference_dir) {
  namespace fs = std::filesystem;
  auto list = [](const std::string &dir) {
    if (!fs::is_directory(dir)) throw Error(ErrorCode::kIo, dir + " is not a directory");
    std::vector<std::string> names;
    for (const auto &entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file()) names.push_back(entry.path().filename().string());
    }
    std::sort(names.begin(), names.end());
    return names;
  };
  const auto cands = list(candidate_dir);
  const auto refs = list(reference_dir);
  if (cands != refs) {
    throw Error(ErrorCode::kLengthMismatch,
                "candidate and reference directories hold different files (" +
                    std::to_string(cands.size()) + " vs " + std::to_string(refs.size()) + ")");
  }
  std::vector<CorpusPair> pairs;
  for (const auto &name : cands) {
    pairs.push_back({name, ReadFile(fs::path(candidate_dir) / name),
                     ReadFile(fs::path(reference_dir) / name)});
  }
  return pairs;
}

}  // namespace kgnews
