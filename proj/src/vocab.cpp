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
#include "lmpt/vocab.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "lmpt/errors.hpp"
#include "lmpt/rng.hpp"

namespace lmpt {

namespace {

std::vector<std::string> split_ws(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> specials() { return {"<pad>", "<s>", "</s>", "<unk>"}; }

}  // namespace

Vocab::Vocab(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    for (size_t i = 0; i < tokens_.size(); ++i) index_[tokens_[i]] = static_cast<TokenId>(i);
    if (tokens_.size() != index_.size()) throw ConfigError("duplicate tokens in vocabulary");
}

Vocab Vocab::from_universe(const corpus::SyntheticUniverse& u) {
    std::vector<std::string> toks = specials();
    toks.insert(toks.end(), {"!", ";", "|", corpus::kNoEntityTarget});
    toks.insert(toks.end(), u.words.begin(), u.words.end());
    return Vocab(std::move(toks));
}

Vocab Vocab::from_examples(const std::vector<corpus::Example>& pool, size_t max_size) {
    std::map<std::string, std::pair<size_t, size_t>> stats;  // token -> (count, first_seen)
    size_t tick = 0;
    auto feed = [&](const std::string& text) {
        for (const std::string& tok : split_ws(text)) {
            auto [it, fresh] = stats.try_emplace(tok, std::pair<size_t, size_t>{0, tick});
            it->second.first += 1;
            ++tick;
        }
    };
    for (const corpus::Example& e : pool) {
        feed(e.input);
        feed(e.target);
    }
    std::vector<std::pair<std::string, std::pair<size_t, size_t>>> ranked(stats.begin(),
                                                                          stats.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second.first != b.second.first) return a.second.first > b.second.first;
        return a.second.second < b.second.second;
    });
    std::vector<std::string> toks = specials();
    for (const auto& [tok, st] : ranked) {
        if (toks.size() >= max_size) break;
        toks.push_back(tok);
    }
    return Vocab(std::move(toks));
}

TokenId Vocab::id_of(const std::string& token) const {
    auto it = index_.find(token);
    return it == index_.end() ? kUnk : it->second;
}

bool Vocab::contains(const std::string& token) const { return index_.count(token) > 0; }

std::vector<TokenId> Vocab::tokenize(const std::string& text) const {
    std::vector<TokenId> out;
    for (const std::string& tok : split_ws(text)) out.push_back(id_of(tok));
    return out;
}

std::string Vocab::detokenize(const std::vector<TokenId>& ids) const {
    std::string out;
    for (const TokenId id : ids) {
        if (id == kPad || id == kBos || id == kEos) continue;
        if (id < 0 || static_cast<size_t>(id) >= tokens_.size())
            throw UnknownToken("token id out of range: " + std::to_string(id));
        if (!out.empty()) out += ' ';
        out += tokens_[static_cast<size_t>(id)];
    }
    return out;
}

uint64_t Vocab::hash() const {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (const std::string& t : tokens_) {
        for (const char c : t) {
            h ^= static_cast<uint8_t>(c);
            h *= 0x100000001b3ULL;
        }
        h ^= 0x0a;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void Vocab::save(const std::string& path) const {
    nlohmann::json j;
    j["tokens"] = tokens_;
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for write: " + path);
    out << j.dump() << '\n';
}

Vocab Vocab::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    return Vocab(j.at("tokens").get<std::vector<std::string>>());
}

}  // namespace lmpt
