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

#include <map>
#include <memory>
#include <vector>

#include "lmpt/corpus.hpp"
#include "lmpt/vocab.hpp"

namespace lmpt::eval {

// Token-level trie over candidate target token sequences.
class TokenTrie {
public:
    void insert(const std::vector<TokenId>& seq);

    int root() const { return 0; }
    bool terminal(int node) const { return nodes_[static_cast<size_t>(node)].terminal; }
    int step(int node, TokenId t) const;  // -1 when no edge
    std::vector<TokenId> children(int node) const;
    size_t node_count() const { return nodes_.size(); }
    bool empty() const { return nodes_.size() == 1 && !nodes_[0].terminal; }

    // Tokens (including the final eos step) needed to reach a terminal.
    int completion_cost(int node) const;

private:
    struct Node {
        std::map<TokenId, int> next;
        bool terminal = false;
    };
    std::vector<Node> nodes_{Node{}};
    mutable std::vector<int> cost_cache_;
    void invalidate_cache() { cost_cache_.clear(); }
};

// Step-wise decoding constraint. At each step the decoder may emit only a
// token from allowed(); emitting eos finishes the sequence. Budget-aware:
// options that cannot complete within the remaining steps are filtered out,
// so a constrained decode always detokenizes to a complete candidate.
class Constraint {
public:
    virtual ~Constraint() = default;
    virtual std::vector<TokenId> allowed(int remaining_steps) const = 0;
    virtual void advance(TokenId t) = 0;
    virtual bool finished() const = 0;  // eos consumed
    virtual int min_steps() const = 0;  // lower bound incl. eos
    virtual void reset() = 0;
};

// Full-target trie constraint (single_class / relation).
class TrieConstraint : public Constraint {
public:
    explicit TrieConstraint(TokenTrie trie);
    std::vector<TokenId> allowed(int remaining_steps) const override;
    void advance(TokenId t) override;
    bool finished() const override { return finished_; }
    int min_steps() const override;
    void reset() override;

    const TokenTrie& trie() const { return trie_; }

private:
    TokenTrie trie_;
    int node_ = 0;
    bool finished_ = false;
};

// Grammar constraint for sequence-labelling targets: span tokens are free,
// types (after '!') are restricted to the label set, separators and the
// no-entity sentinel follow the clause grammar.
class ClauseConstraint : public Constraint {
public:
    ClauseConstraint(TokenTrie type_trie, std::vector<TokenId> span_tokens, const Vocab& vocab);
    std::vector<TokenId> allowed(int remaining_steps) const override;
    void advance(TokenId t) override;
    bool finished() const override { return state_ == State::done; }
    int min_steps() const override;
    void reset() override;

private:
    enum class State { start, in_span, in_type, after_clause, after_none, done };
    TokenTrie type_trie_;
    std::vector<TokenId> span_tokens_;  // sorted
    TokenId bang_, semi_, none_;
    State state_ = State::start;
    int type_node_ = 0;
};

// Trie over the label-name token sequences of a label set.
TokenTrie build_label_trie(const corpus::LabelSet& label_set, const Vocab& vocab);

// Constraint for decoding restricted to a label set under a task kind.
std::unique_ptr<Constraint> make_constraint(const corpus::LabelSet& label_set,
                                            corpus::TaskKind kind, const Vocab& vocab);

}  // namespace lmpt::eval
