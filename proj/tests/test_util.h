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


// Shared helpers for the unit and acceptance tests.

#ifndef KGNEWS_TESTS_TEST_UTIL_H_
#define KGNEWS_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace kgnews::testing {

inline std::string DataPath(const std::string &relative) {
  return std::string(KGNEWS_DATA_DIR) + "/" + relative;
}

inline std::string ReadText(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// A fresh, empty directory under the system temp dir.
inline std::filesystem::path ScratchDir(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / ("kgnews_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace kgnews::testing

#endif  // KGNEWS_TESTS_TEST_UTIL_H_
