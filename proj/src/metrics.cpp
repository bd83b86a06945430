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
#include "lmpt/metrics.hpp"

#include <sstream>
#include <tuple>

#include "lmpt/errors.hpp"

namespace lmpt::eval {

namespace {

std::vector<std::string> split_ws(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

struct Entity {
    size_t start;
    size_t end;  // exclusive
    std::string type;
    bool operator<(const Entity& o) const {
        return std::tie(start, end, type) < std::tie(o.start, o.end, o.type);
    }
    bool operator==(const Entity& o) const {
        return start == o.start && end == o.end && type == o.type;
    }
};

std::vector<Entity> entities_from_bio(const std::vector<std::string>& tags) {
    std::vector<Entity> out;
    size_t i = 0;
    while (i < tags.size()) {
        if (tags[i].rfind("B-", 0) == 0) {
            const std::string type = tags[i].substr(2);
            size_t j = i + 1;
            while (j < tags.size() && tags[j] == "I-" + type) ++j;
            out.push_back({i, j, type});
            i = j;
        } else {
            ++i;
        }
    }
    return out;
}

}  // namespace

Metric exact_match_accuracy(const std::vector<std::string>& preds,
                            const std::vector<std::string>& golds) {
    if (preds.empty() || preds.size() != golds.size())
        throw EmptyEval("exact match needs equal-length non-empty inputs");
    int hits = 0;
    for (size_t i = 0; i < preds.size(); ++i)
        if (corpus::normalize_ws(preds[i]) == corpus::normalize_ws(golds[i])) ++hits;
    return {"exact_match", static_cast<double>(hits) / static_cast<double>(preds.size()),
            static_cast<int>(preds.size())};
}

std::vector<std::string> bio_tags(const std::string& input,
                                  const std::vector<corpus::Clause>& clauses, int* unlocatable) {
    const std::vector<std::string> tokens = split_ws(input);
    std::vector<std::string> tags(tokens.size(), "O");
    if (unlocatable) *unlocatable = 0;
    for (const corpus::Clause& c : clauses) {
        const std::vector<std::string> span = split_ws(c.span);
        bool placed = false;
        if (!span.empty() && span.size() <= tokens.size()) {
            for (size_t s = 0; s + span.size() <= tokens.size() && !placed; ++s) {
                bool match = true;
                for (size_t k = 0; k < span.size() && match; ++k)
                    if (tokens[s + k] != span[k] || tags[s + k] != "O") match = false;
                if (!match) continue;
                tags[s] = "B-" + c.type;
                for (size_t k = 1; k < span.size(); ++k) tags[s + k] = "I-" + c.type;
                placed = true;
            }
        }
        if (!placed && unlocatable) *unlocatable += 1;
    }
    return tags;
}

BioCounts bio_count_example(const std::string& input, const std::string& pred_target,
                            const std::string& gold_target) {
    int pred_lost = 0;
    int gold_lost = 0;
    const auto pred_ents = entities_from_bio(bio_tags(input, corpus::parse_clauses(pred_target), &pred_lost));
    const auto gold_ents = entities_from_bio(bio_tags(input, corpus::parse_clauses(gold_target), &gold_lost));

    std::vector<bool> used(gold_ents.size(), false);
    long tp = 0;
    for (const Entity& p : pred_ents) {
        bool hit = false;
        for (size_t g = 0; g < gold_ents.size() && !hit; ++g) {
            if (!used[g] && gold_ents[g] == p) {
                used[g] = true;
                hit = true;
            }
        }
        if (hit) ++tp;
    }
    BioCounts c;
    c.tp = tp;
    c.fp = static_cast<long>(pred_ents.size()) - tp + pred_lost;
    c.fn = static_cast<long>(gold_ents.size()) - tp + gold_lost;
    return c;
}

Metric bio_f1(const std::vector<std::string>& pred_targets,
              const std::vector<std::string>& gold_targets,
              const std::vector<std::string>& inputs) {
    if (pred_targets.empty() || pred_targets.size() != gold_targets.size() ||
        pred_targets.size() != inputs.size())
        throw EmptyEval("bio_f1 needs equal-length non-empty inputs");

    BioCounts total;
    for (size_t i = 0; i < pred_targets.size(); ++i) {
        BioCounts c;
        try {
            c = bio_count_example(inputs[i], pred_targets[i], gold_targets[i]);
        } catch (const MalformedTarget&) {
            // An unparseable prediction contributes its gold entities as misses.
            int gold_lost = 0;
            const auto gold_ents =
                entities_from_bio(bio_tags(inputs[i], corpus::parse_clauses(gold_targets[i]), &gold_lost));
            c.fn = static_cast<long>(gold_ents.size()) + gold_lost;
            c.fp = 1;
        }
        total.tp += c.tp;
        total.fp += c.fp;
        total.fn += c.fn;
    }

    double f1 = 0.0;
    if (total.tp + total.fp + total.fn == 0) {
        f1 = 1.0;  // vacuously perfect corpus
    } else {
        const double p = total.tp + total.fp > 0
                             ? static_cast<double>(total.tp) / static_cast<double>(total.tp + total.fp)
                             : 0.0;
        const double r = total.tp + total.fn > 0
                             ? static_cast<double>(total.tp) / static_cast<double>(total.tp + total.fn)
                             : 0.0;
        f1 = p + r > 0 ? 2.0 * p * r / (p + r) : 0.0;
    }
    return {"bio_f1", f1, static_cast<int>(pred_targets.size())};
}

Metric score_task(corpus::TaskKind kind, const std::vector<std::string>& preds,
                  const std::vector<std::string>& golds, const std::vector<std::string>& inputs) {
    if (kind == corpus::TaskKind::sequence_label) return bio_f1(preds, golds, inputs);
    return exact_match_accuracy(preds, golds);
}

}  // namespace lmpt::eval
