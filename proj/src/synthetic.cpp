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
#include <algorithm>
#include <string>
#include <vector>

#include "lmpt/corpus.hpp"
#include "lmpt/errors.hpp"
#include "lmpt/rng.hpp"

// Synthetic corpora for desk-scale runs. Each label owns a disjoint set of
// trigger words; inputs mix triggers with shared noise words, so the task is
// separable by construction. Label-name words never occur in inputs - the
// only way a model can see a label name is through its prompt.

namespace lmpt::corpus {

namespace {

constexpr int kTriggersPerLabel = 6;
constexpr int kTwoTokenNameEvery = 4;  // every 4th label gets a two-word name
constexpr int kMinNoiseWords = 24;

std::vector<std::string> make_words(size_t count) {
    static const char* kCons[] = {"b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z"};
    static const char* kVow[] = {"a", "e", "i", "o", "u"};
    const size_t n_syll = std::size(kCons) * std::size(kVow);
    std::vector<std::string> syll;
    syll.reserve(n_syll);
    for (const char* c : kCons)
        for (const char* v : kVow) syll.push_back(std::string(c) + v);

    std::vector<std::string> words;
    words.reserve(count);
    for (size_t i = 0; words.size() < count; ++i) {
        if (i < n_syll * n_syll) {
            words.push_back(syll[i / n_syll] + syll[i % n_syll]);
        } else {
            const size_t j = i - n_syll * n_syll;
            words.push_back(syll[(j / (n_syll * n_syll)) % n_syll] + syll[(j / n_syll) % n_syll] +
                            syll[j % n_syll]);
        }
    }
    return words;
}

std::string join(const std::vector<std::string>& tokens) {
    std::string out;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) out += ' ';
        out += tokens[i];
    }
    return out;
}

}  // namespace

void SyntheticTaskConfig::validate() const {
    if (n_labels < 2) throw ConfigError("n_labels must be >= 2");
    if (n_stages < 1) throw ConfigError("n_stages must be >= 1");
    if (n_labels < 2 * n_stages) throw ConfigError("n_labels must be >= 2*n_stages");
    if (shots_train < 1 || shots_val < 1 || shots_test < 1)
        throw ConfigError("all shot counts must be >= 1");
    if (seq_len_min < 4 || seq_len_max < seq_len_min)
        throw ConfigError("bad seq_len range");
}

SyntheticUniverse make_universe(const SyntheticTaskConfig& cfg) {
    cfg.validate();
    const int n_name_words = cfg.n_labels + cfg.n_labels / kTwoTokenNameEvery;
    const int n_triggers = cfg.n_labels * kTriggersPerLabel;
    // 4 specials + "!" ";" "|" + "none" sentinel live outside the word list.
    const int budget = cfg.vocab_size - 8;
    const int n_noise = budget - n_name_words - n_triggers;
    if (n_noise < kMinNoiseWords)
        throw ConfigError("vocab_size too small: need at least " +
                          std::to_string(n_name_words + n_triggers + kMinNoiseWords + 8));

    SyntheticUniverse u;
    u.words = make_words(static_cast<size_t>(budget));

    size_t w = 0;
    int extra = 0;
    for (int i = 0; i < cfg.n_labels; ++i) {
        std::string name = u.words[w++];
        if (kTwoTokenNameEvery > 0 && (i + 1) % kTwoTokenNameEvery == 0 &&
            extra < cfg.n_labels / kTwoTokenNameEvery) {
            name += " " + u.words[cfg.n_labels + static_cast<size_t>(extra)];
            ++extra;
        }
        u.labels.push_back(name);
    }
    w = static_cast<size_t>(n_name_words);
    for (int i = 0; i < n_triggers; ++i) u.trigger_pool.push_back(u.words[w++]);
    while (w < u.words.size()) u.noise_pool.push_back(u.words[w++]);
    return u;
}

SyntheticTask gen_synthetic_task(const SyntheticTaskConfig& cfg) {
    SyntheticTask task;
    task.universe = make_universe(cfg);
    const SyntheticUniverse& u = task.universe;
    Rng rng(substream(cfg.seed, "synthetic"));

    // Trial seed decides which triggers belong to which label.
    std::vector<std::string> triggers = u.trigger_pool;
    rng.shuffle(triggers);
    task.triggers.resize(u.labels.size());
    size_t t = 0;
    for (auto& list : task.triggers)
        for (int i = 0; i < kTriggersPerLabel; ++i) list.push_back(triggers[t++]);

    auto noise_word = [&]() { return u.noise_pool[rng.uniform(u.noise_pool.size())]; };
    auto trigger_word = [&](size_t label_idx) {
        const auto& list = task.triggers[label_idx];
        return list[rng.uniform(list.size())];
    };

    const int per_label = cfg.shots_total();
    if (cfg.task_kind == TaskKind::sequence_label) {
        for (size_t li = 0; li < u.labels.size(); ++li) {
            for (int s = 0; s < per_label; ++s) {
                const int len = static_cast<int>(rng.uniform_in(cfg.seq_len_min, cfg.seq_len_max));
                std::vector<std::string> tokens;
                for (int i = 0; i < len; ++i) tokens.push_back(noise_word());

                struct Ent {
                    size_t pos;
                    std::vector<std::string> span;
                    size_t label;
                };
                std::vector<Ent> ents;
                const size_t span_len = 1 + rng.uniform(2);
                size_t pos = rng.uniform(static_cast<size_t>(len) - span_len + 1);
                ents.push_back({pos, {}, li});
                for (size_t k = 0; k < span_len; ++k) ents[0].span.push_back(trigger_word(li));

                if (u.labels.size() > 1 && rng.bernoulli(0.35)) {
                    size_t other = rng.uniform(u.labels.size() - 1);
                    if (other >= li) ++other;
                    const size_t olen = 1 + rng.uniform(2);
                    // try a few placements that avoid the first entity
                    for (int attempt = 0; attempt < 8; ++attempt) {
                        const size_t op = rng.uniform(static_cast<size_t>(len) - olen + 1);
                        const bool clash = op < ents[0].pos + span_len && ents[0].pos < op + olen;
                        if (clash) continue;
                        Ent e{op, {}, other};
                        for (size_t k = 0; k < olen; ++k) e.span.push_back(trigger_word(other));
                        ents.push_back(std::move(e));
                        break;
                    }
                }
                std::sort(ents.begin(), ents.end(),
                          [](const Ent& a, const Ent& b) { return a.pos < b.pos; });
                std::vector<Clause> clauses;
                for (const Ent& e : ents) {
                    for (size_t k = 0; k < e.span.size(); ++k) tokens[e.pos + k] = e.span[k];
                    clauses.push_back({join(e.span), u.labels[e.label]});
                }
                Example ex;
                ex.input = join(tokens);
                ex.target = serialize_clauses(clauses);
                ex.task_kind = cfg.task_kind;
                task.pool.push_back(std::move(ex));
            }
        }
        // A slice of no-entity sentences so "none" is a learnable outcome.
        const int n_none = std::max(1, static_cast<int>(u.labels.size()) * per_label / 12);
        for (int s = 0; s < n_none; ++s) {
            const int len = static_cast<int>(rng.uniform_in(cfg.seq_len_min, cfg.seq_len_max));
            std::vector<std::string> tokens;
            for (int i = 0; i < len; ++i) tokens.push_back(noise_word());
            Example ex;
            ex.input = join(tokens);
            ex.target = kNoEntityTarget;
            ex.task_kind = cfg.task_kind;
            task.pool.push_back(std::move(ex));
        }
        return task;
    }

    // single_class and relation share the trigger-vs-noise construction.
    for (size_t li = 0; li < u.labels.size(); ++li) {
        for (int s = 0; s < per_label; ++s) {
            const int len = static_cast<int>(rng.uniform_in(cfg.seq_len_min, cfg.seq_len_max));
            const int lo = std::max(2, (len * 35) / 100);
            const int hi = std::max(lo, (len * 65) / 100);
            const int n_trig = static_cast<int>(rng.uniform_in(lo, hi));
            std::vector<std::string> tokens(static_cast<size_t>(len));
            const auto trig_pos = rng.sample_indices(static_cast<size_t>(len),
                                                     static_cast<size_t>(std::min(n_trig, len)));
            std::vector<bool> is_trig(static_cast<size_t>(len), false);
            for (const size_t p : trig_pos) is_trig[p] = true;
            for (int i = 0; i < len; ++i)
                tokens[static_cast<size_t>(i)] =
                    is_trig[static_cast<size_t>(i)] ? trigger_word(li) : noise_word();

            Example ex;
            if (cfg.task_kind == TaskKind::relation) {
                tokens.push_back(noise_word());
                tokens.push_back("|");
                tokens.push_back(noise_word());
            }
            ex.input = join(tokens);
            ex.target = u.labels[li];
            ex.task_kind = cfg.task_kind;
            task.pool.push_back(std::move(ex));
        }
    }
    return task;
}

}  // namespace lmpt::corpus
