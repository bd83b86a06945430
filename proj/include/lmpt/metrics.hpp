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

#include <string>
#include <vector>

#include "lmpt/corpus.hpp"

namespace lmpt::eval {

struct Metric {
    std::string name;  // "exact_match" or "bio_f1"
    double value = 0.0;
    int support = 0;
};

// Fraction of whitespace-normalized string matches.
Metric exact_match_accuracy(const std::vector<std::string>& preds,
                            const std::vector<std::string>& golds);

// BIO tags over the input's whitespace tokens. Spans are located by first
// occurrence over still-untagged positions; clauses whose span cannot be
// located are returned in `unlocatable`.
std::vector<std::string> bio_tags(const std::string& input, const std::vector<corpus::Clause>& clauses,
                                  int* unlocatable = nullptr);

struct BioCounts {
    long tp = 0;
    long fp = 0;
    long fn = 0;
};

BioCounts bio_count_example(const std::string& input, const std::string& pred_target,
                            const std::string& gold_target);

// Entity-level micro F1 over the BIO reconstruction, conlleval semantics.
// Unlocatable predicted spans count as false positives. A corpus with no
// entities anywhere scores 1.0.
Metric bio_f1(const std::vector<std::string>& pred_targets,
              const std::vector<std::string>& gold_targets,
              const std::vector<std::string>& inputs);

// Metric appropriate for a task kind (exact match, or BIO F1 for NER).
Metric score_task(corpus::TaskKind kind, const std::vector<std::string>& preds,
                  const std::vector<std::string>& golds, const std::vector<std::string>& inputs);

}  // namespace lmpt::eval
