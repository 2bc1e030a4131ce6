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


// Edit distance and the normalized similarity used for entity linking.

#ifndef KGNEWS_LEVENSHTEIN_H_
#define KGNEWS_LEVENSHTEIN_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace kgnews {

// Unit-cost insert/delete/substitute distance over bytes.
size_t Levenshtein(std::string_view a, std::string_view b);

// 1 - distance / max(|a|, |b|) after ASCII lowercasing; 1 for two empty strings.
double NameSimilarity(std::string_view a, std::string_view b);

std::string AsciiLower(std::string_view s);

}  // namespace kgnews

#endif  // KGNEWS_LEVENSHTEIN_H_
