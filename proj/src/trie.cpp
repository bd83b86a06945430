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
#include "lmpt/trie.hpp"

#include <algorithm>
#include <limits>

#include "lmpt/errors.hpp"

namespace lmpt::eval {

void TokenTrie::insert(const std::vector<TokenId>& seq) {
    if (seq.empty()) throw ConfigError("cannot insert empty sequence into trie");
    int node = 0;
    for (const TokenId t : seq) {
        auto it = nodes_[static_cast<size_t>(node)].next.find(t);
        if (it == nodes_[static_cast<size_t>(node)].next.end()) {
            nodes_.push_back(Node{});
            const int fresh = static_cast<int>(nodes_.size()) - 1;
            nodes_[static_cast<size_t>(node)].next[t] = fresh;
            node = fresh;
        } else {
            node = it->second;
        }
    }
    nodes_[static_cast<size_t>(node)].terminal = true;
    invalidate_cache();
}

int TokenTrie::step(int node, TokenId t) const {
    const auto& next = nodes_[static_cast<size_t>(node)].next;
    auto it = next.find(t);
    return it == next.end() ? -1 : it->second;
}

std::vector<TokenId> TokenTrie::children(int node) const {
    std::vector<TokenId> out;
    for (const auto& [t, n] : nodes_[static_cast<size_t>(node)].next) out.push_back(t);
    return out;
}

int TokenTrie::completion_cost(int node) const {
    if (cost_cache_.empty()) {
        // Bottom-up is awkward on a child-pointer trie; nodes are created
        // parent-first, so a reverse pass sees children before parents.
        cost_cache_.assign(nodes_.size(), std::numeric_limits<int>::max() / 2);
        for (size_t i = nodes_.size(); i-- > 0;) {
            const Node& n = nodes_[i];
            int best = n.terminal ? 1 : std::numeric_limits<int>::max() / 2;  // 1 = eos
            for (const auto& [t, c] : n.next)
                best = std::min(best, 1 + cost_cache_[static_cast<size_t>(c)]);
            cost_cache_[i] = best;
        }
    }
    return cost_cache_[static_cast<size_t>(node)];
}

TrieConstraint::TrieConstraint(TokenTrie trie) : trie_(std::move(trie)) {
    if (trie_.empty()) throw ConfigError("empty constraint trie");
}

std::vector<TokenId> TrieConstraint::allowed(int remaining_steps) const {
    std::vector<TokenId> out;
    if (finished_) return out;
    if (trie_.terminal(node_) && remaining_steps >= 1) out.push_back(Vocab::kEos);
    for (const TokenId t : trie_.children(node_)) {
        const int child = trie_.step(node_, t);
        if (1 + trie_.completion_cost(child) <= remaining_steps) out.push_back(t);
    }
    if (out.empty()) throw DeadEnd("no completion within remaining steps");
    return out;
}

void TrieConstraint::advance(TokenId t) {
    if (t == Vocab::kEos) {
        finished_ = true;
        return;
    }
    const int next = trie_.step(node_, t);
    if (next < 0) throw DeadEnd("token not allowed by trie");
    node_ = next;
}

int TrieConstraint::min_steps() const { return trie_.completion_cost(node_); }

void TrieConstraint::reset() {
    node_ = trie_.root();
    finished_ = false;
}

ClauseConstraint::ClauseConstraint(TokenTrie type_trie, std::vector<TokenId> span_tokens,
                                   const Vocab& vocab)
    : type_trie_(std::move(type_trie)), span_tokens_(std::move(span_tokens)) {
    if (type_trie_.empty()) throw ConfigError("empty type trie");
    if (span_tokens_.empty()) throw ConfigError("no span tokens available");
    std::sort(span_tokens_.begin(), span_tokens_.end());
    bang_ = vocab.id_of("!");
    semi_ = vocab.id_of(";");
    none_ = vocab.id_of(corpus::kNoEntityTarget);
    if (bang_ == Vocab::kUnk || semi_ == Vocab::kUnk || none_ == Vocab::kUnk)
        throw ConfigError("vocabulary lacks '!' ';' or the no-entity sentinel");
}

int ClauseConstraint::min_steps() const {
    // Cheapest completion from each state, counting the eos step.
    const int type_min = type_trie_.completion_cost(type_trie_.root());
    switch (state_) {
        case State::start: return 2;                                  // "none" eos
        case State::in_span: return 1 + type_min + 1 + 1;             // ! type ; eos
        case State::in_type: return type_trie_.completion_cost(type_node_) - 1 + 1 + 1;
        case State::after_clause: return 1;                           // eos
        case State::after_none: return 1;                             // eos
        case State::done: return 0;
    }
    return 0;
}

std::vector<TokenId> ClauseConstraint::allowed(int remaining_steps) const {
    std::vector<TokenId> out;
    const int type_min = type_trie_.completion_cost(type_trie_.root());
    switch (state_) {
        case State::start: {
            if (remaining_steps >= 2) out.push_back(none_);
            // span token then "! type ; eos"
            if (remaining_steps >= 1 + 1 + type_min + 1 + 1)
                out.insert(out.end(), span_tokens_.begin(), span_tokens_.end());
            break;
        }
        case State::in_span: {
            if (remaining_steps >= 1 + type_min + 1 + 1) out.push_back(bang_);
            if (remaining_steps >= 2 + type_min + 1 + 1)
                out.insert(out.end(), span_tokens_.begin(), span_tokens_.end());
            break;
        }
        case State::in_type: {
            // completion_cost counts 1 for the implicit eos; the clause needs
            // ';' in its place plus a final eos.
            if (type_trie_.terminal(type_node_) && remaining_steps >= 2) out.push_back(semi_);
            for (const TokenId t : type_trie_.children(type_node_)) {
                const int child = type_trie_.step(type_node_, t);
                const int need = 1 + (type_trie_.completion_cost(child) - 1) + 1 + 1;
                if (remaining_steps >= need) out.push_back(t);
            }
            break;
        }
        case State::after_clause: {
            if (remaining_steps >= 1) out.push_back(Vocab::kEos);
            if (remaining_steps >= 1 + 1 + type_min + 1 + 1)
                out.insert(out.end(), span_tokens_.begin(), span_tokens_.end());
            break;
        }
        case State::after_none: {
            if (remaining_steps >= 1) out.push_back(Vocab::kEos);
            break;
        }
        case State::done: break;
    }
    if (out.empty() && state_ != State::done)
        throw DeadEnd("no completion within remaining steps");
    std::sort(out.begin(), out.end());
    return out;
}

void ClauseConstraint::advance(TokenId t) {
    switch (state_) {
        case State::start:
            if (t == none_) state_ = State::after_none;
            else state_ = State::in_span;
            return;
        case State::in_span:
            if (t == bang_) {
                state_ = State::in_type;
                type_node_ = type_trie_.root();
            }
            return;
        case State::in_type:
            if (t == semi_) {
                state_ = State::after_clause;
                return;
            }
            type_node_ = type_trie_.step(type_node_, t);
            if (type_node_ < 0) throw DeadEnd("type token not allowed");
            return;
        case State::after_clause:
            if (t == Vocab::kEos) state_ = State::done;
            else state_ = State::in_span;
            return;
        case State::after_none:
            if (t == Vocab::kEos) state_ = State::done;
            return;
        case State::done:
            return;
    }
}

void ClauseConstraint::reset() {
    state_ = State::start;
    type_node_ = 0;
}

TokenTrie build_label_trie(const corpus::LabelSet& label_set, const Vocab& vocab) {
    TokenTrie trie;
    for (const corpus::Label& l : label_set) trie.insert(vocab.tokenize(l));
    return trie;
}

std::unique_ptr<Constraint> make_constraint(const corpus::LabelSet& label_set,
                                            corpus::TaskKind kind, const Vocab& vocab) {
    if (label_set.empty()) throw ConfigError("empty label set for constraint");
    TokenTrie trie = build_label_trie(label_set, vocab);
    if (kind != corpus::TaskKind::sequence_label)
        return std::make_unique<TrieConstraint>(std::move(trie));

    std::vector<TokenId> span_tokens;
    const TokenId bang = vocab.id_of("!");
    const TokenId semi = vocab.id_of(";");
    const TokenId pipe = vocab.id_of("|");
    const TokenId none = vocab.id_of(corpus::kNoEntityTarget);
    for (size_t i = 4; i < vocab.size(); ++i) {  // skip specials
        const TokenId t = static_cast<TokenId>(i);
        if (t == bang || t == semi || t == pipe || t == none) continue;
        span_tokens.push_back(t);
    }
    return std::make_unique<ClauseConstraint>(std::move(trie), std::move(span_tokens), vocab);
}

}  // namespace lmpt::eval
