// Copyright 2026 The Hallucinator Authors. All Rights Reserved.
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

#pragma once

#include <string>
#include <vector>

namespace fixtures {

struct RecallCase {
  std::string gold, reference;
  std::vector<std::string> hyps;
};

/// Ten utterances with their recognizer output and a short N-best list.
/// Every gold/reference pair has a single LCS alignment. At K=3 there are
/// 10 chunks, 7 of them recalled, and 3 utterances recalled.
inline const std::vector<RecallCase>& recall_cases() {
  static const std::vector<RecallCase> cases = {
      {"a b c", "a x c", {"a x c"}},
      {"a b c", "a x c", {"q x c", "a x d", "a x y c"}},
      {"the cat sat", "the hat sat", {"the cat sat", "the hat sat on"}},
      {"do you take any other medications", "you take any other medicine cations",
       {"do you take any other medicine cations", "you take any other medications"}},
      {"one two three four", "one two three four", {"one two three four"}},
      {"red green blue", "red glean blue", {"red green blue", "read green blue", "red glean blues"}},
      {"x y z", "x z", {"x y z", "x y", "x z", "x"}},
      {"p q r s", "p q r s t", {"p q r s t u"}},
      {"alpha beta", "alfa beta", {"beta", "alfa beta gamma"}},
      {"m n o", "m k o", {"m k o p", "m n o"}},
  };
  return cases;
}

}  // namespace fixtures
