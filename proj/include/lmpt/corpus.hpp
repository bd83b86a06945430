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
#include <optional>
#include <set>
#include <string>
#include <vector>

// Text-to-text data model: three task kinds, the clause grammar for
// sequence-labelling targets, staged few-shot dataset construction, and the
// three testing regimes (stage-specific, stage-agnostic, stage-fused).

namespace lmpt::corpus {

using Label = std::string;
using LabelSet = std::set<Label>;

enum class TaskKind { single_class, sequence_label, relation };

const char* task_kind_name(TaskKind k);
TaskKind task_kind_from_name(const std::string& name);

// Empty-annotation sentinel for sequence labelling.
inline constexpr const char* kNoEntityTarget = "none";

struct Example {
    std::string input;
    std::string target;
    TaskKind task_kind = TaskKind::single_class;

    bool operator==(const Example&) const = default;
};

// One "span ! type" unit of a sequence-labelling target.
struct Clause {
    std::string span;
    std::string type;

    bool operator==(const Clause&) const = default;
};

// Trimmed, inner whitespace collapsed to single spaces.
std::string normalize_ws(const std::string& s);

// Label names may not contain the format metacharacters '!', ';', '|'.
bool valid_label(const Label& label);

// Parse a sequence_label target into clauses. "none" yields an empty list.
// Throws MalformedTarget on a clause without '!' or with an empty span/type.
std::vector<Clause> parse_clauses(const std::string& target);

// Canonical form: "span ! type ;" per clause, single spaces, joined by one
// space. An empty list serializes to the no-entity sentinel.
std::string serialize_clauses(const std::vector<Clause>& clauses);

// Class label(s) named by a target under a task kind's grammar.
LabelSet cls_of_target(const std::string& target, TaskKind kind);

// n_stages pairwise-disjoint label sets covering `labels`, sizes within 1 of
// each other, deterministic per seed. Throws InvalidSplit.
std::vector<LabelSet> split_stages(const LabelSet& labels, int n_stages, uint64_t seed);

struct FewshotResult {
    std::vector<Example> selected;
    std::vector<std::string> warnings;  // per-label shortfall notes
};

// Per-class subsampling. single_class/relation: min(shots, available) per
// label. sequence_label: greedy selection until every label of `labels` is
// covered by >= shots examples or the pool runs out.
FewshotResult subsample_fewshot(const std::vector<Example>& pool, const LabelSet& labels,
                                int shots, uint64_t seed);

// Cross-stage label sets: each result intersects every training label set and
// is a subset of none. Throws InfeasibleFused when no such set exists.
std::vector<LabelSet> build_fused_labelsets(const std::vector<LabelSet>& training_sets,
                                            int n_fused, int size, uint64_t seed);

// Restriction of an example to a label set. single_class/relation examples
// are kept or dropped whole; sequence_label targets lose out-of-set clauses
// (all removed -> "none"). Input text is never modified.
std::optional<Example> project_example(const Example& example, const LabelSet& label_set);

struct Stage {
    int index = 0;  // 1-based
    LabelSet labels;
    std::vector<Example> train;
    std::vector<Example> validation;
};

struct FusedStage {
    LabelSet labels;
    std::vector<Example> test;
};

struct StagePlan {
    TaskKind task_kind = TaskKind::single_class;
    std::vector<Stage> stages;
    std::vector<std::vector<Example>> specific_tests;  // one per stage
    std::vector<std::vector<Example>> agnostic_tests;  // cumulative 1..k
    std::vector<FusedStage> fused;
    uint64_t seed = 0;
    std::vector<std::string> warnings;

    LabelSet labels_up_to(size_t k) const;  // union of stage labels 1..k
    LabelSet all_labels() const;
};

struct PlanConfig {
    int n_stages = 4;
    int shots_train = 50;
    int shots_val = 10;
    int shots_test = 30;
    int n_fused = 4;
    int fused_size = 4;
    uint64_t seed = 1;
};

// Assemble a full plan from one example pool: partition into train/val/test
// sub-pools per label budget, split labels into stages, then materialize the
// per-stage splits and the three regimes.
StagePlan build_plan(const std::vector<Example>& pool, const LabelSet& labels, TaskKind kind,
                     const PlanConfig& cfg);

// ---- synthetic corpus ------------------------------------------------------

struct SyntheticTaskConfig {
    int n_labels = 16;
    int vocab_size = 320;
    int n_stages = 4;
    int shots_train = 50;
    int shots_val = 10;
    int shots_test = 30;
    int seq_len_min = 8;
    int seq_len_max = 14;
    TaskKind task_kind = TaskKind::single_class;
    uint64_t seed = 1;

    void validate() const;  // throws ConfigError
    int shots_total() const { return shots_train + shots_val + shots_test; }
};

// Label universe and word lists are a pure function of the config sans seed,
// so one pretrained backbone serves every trial seed. The seed drives trigger
// assignment and example sampling only.
struct SyntheticUniverse {
    std::vector<Label> labels;               // universe order
    std::vector<std::string> words;          // all content words, incl. name words
    std::vector<std::string> trigger_pool;   // words eligible as triggers
    std::vector<std::string> noise_pool;     // words never label-discriminative
};

struct SyntheticTask {
    SyntheticUniverse universe;
    std::vector<Example> pool;
    // trigger words per label, aligned with universe.labels
    std::vector<std::vector<std::string>> triggers;
};

SyntheticUniverse make_universe(const SyntheticTaskConfig& cfg);
SyntheticTask gen_synthetic_task(const SyntheticTaskConfig& cfg);

// Order-sensitive content hash, for byte-identity checks.
uint64_t pool_hash(const std::vector<Example>& pool);

// ---- JSONL interchange -----------------------------------------------------

struct DatasetManifest {
    TaskKind task_kind = TaskKind::single_class;
    std::vector<Label> labels;
};

void write_jsonl(const std::string& path, const std::vector<Example>& examples);
std::vector<Example> read_jsonl(const std::string& path, TaskKind kind);
void write_dataset_manifest(const std::string& path, const DatasetManifest& m);
DatasetManifest read_dataset_manifest(const std::string& path);

// Stage-plan manifest plus materialized splits under `dir`.
void materialize_plan(const StagePlan& plan, const std::string& dir);
StagePlan load_plan(const std::string& dir);

}  // namespace lmpt::corpus
