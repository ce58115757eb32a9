// Copyright 2026 The cnadapt Authors.
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

#ifndef CNADAPT_VOCABULARY_H_
#define CNADAPT_VOCABULARY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cnadapt {

using WordId = std::uint32_t;

inline constexpr std::string_view kUnknownWord = "<unk>";

// Dense word <-> id mapping. Ids are assigned in insertion order.
//
// Thread safety: const member functions may be called concurrently.
// intern() is not synchronized; vocabulary growth is confined to a
// single-threaded ingestion phase (parsing, model loading) that must finish
// before the vocabulary is shared.
class Vocabulary {
 public:
  Vocabulary() = default;

  // Returns the id of `word`, adding it if unseen.
  WordId intern(std::string_view word);

  std::optional<WordId> find(std::string_view word) const;
  const std::string& word(WordId id) const;

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::vector<std::string>& words() const { return words_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId, Hash, std::equal_to<>> index_;
};

}  // namespace cnadapt

#endif  // CNADAPT_VOCABULARY_H_
