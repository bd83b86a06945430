/*
 * Copyright 2026 the lmpt authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "lmpt/corpus.hpp"

namespace lmpt {

using TokenId = int32_t;

// Whitespace tokenizer over a closed synthetic vocabulary, unk fallback.
class Vocab {
public:
    static constexpr TokenId kPad = 0;
    static constexpr TokenId kBos = 1;
    static constexpr TokenId kEos = 2;
    static constexpr TokenId kUnk = 3;

    Vocab() = default;
    explicit Vocab(std::vector<std::string> tokens);

    static Vocab from_universe(const corpus::SyntheticUniverse& u);
    // Frequency-ranked vocabulary from raw text (ties by first occurrence).
    static Vocab from_examples(const std::vector<corpus::Example>& pool, size_t max_size);

    size_t size() const { return tokens_.size(); }
    const std::string& token(TokenId id) const { return tokens_.at(static_cast<size_t>(id)); }
    TokenId id_of(const std::string& token) const;  // kUnk if absent
    bool contains(const std::string& token) const;

    std::vector<TokenId> tokenize(const std::string& text) const;
    std::string detokenize(const std::vector<TokenId>& ids) const;

    uint64_t hash() const;

    void save(const std::string& path) const;
    static Vocab load(const std::string& path);

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, TokenId> index_;
};

}  // namespace lmpt
