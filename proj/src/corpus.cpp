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
#include "lmpt/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "lmpt/errors.hpp"
#include "lmpt/rng.hpp"

namespace lmpt::corpus {

using nlohmann::json;

const char* task_kind_name(TaskKind k) {
    switch (k) {
        case TaskKind::single_class: return "single_class";
        case TaskKind::sequence_label: return "sequence_label";
        case TaskKind::relation: return "relation";
    }
    return "single_class";
}

TaskKind task_kind_from_name(const std::string& name) {
    if (name == "single_class") return TaskKind::single_class;
    if (name == "sequence_label") return TaskKind::sequence_label;
    if (name == "relation") return TaskKind::relation;
    throw ConfigError("unknown task_kind: " + name);
}

std::string normalize_ws(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    bool in_space = true;  // swallow leading spaces
    for (const char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            if (!in_space) out.push_back(' ');
            in_space = true;
        } else {
            out.push_back(c);
            in_space = false;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

bool valid_label(const Label& label) {
    if (normalize_ws(label).empty()) return false;
    return label.find_first_of("!;|") == std::string::npos;
}

std::vector<Clause> parse_clauses(const std::string& target) {
    const std::string t = normalize_ws(target);
    if (t == kNoEntityTarget) return {};
    if (t.empty()) throw MalformedTarget("empty sequence_label target");

    std::vector<Clause> clauses;
    size_t pos = 0;
    while (pos < t.size()) {
        size_t semi = t.find(';', pos);
        std::string segment = semi == std::string::npos ? t.substr(pos) : t.substr(pos, semi - pos);
        pos = semi == std::string::npos ? t.size() : semi + 1;
        segment = normalize_ws(segment);
        if (segment.empty()) {
            if (pos >= t.size()) break;  // trailing separator
            throw MalformedTarget("empty clause in target: " + target);
        }
        const size_t bang = segment.find('!');
        if (bang == std::string::npos)
            throw MalformedTarget("clause without '!': " + segment);
        if (segment.find('!', bang + 1) != std::string::npos)
            throw MalformedTarget("clause with multiple '!': " + segment);
        Clause c;
        c.span = normalize_ws(segment.substr(0, bang));
        c.type = normalize_ws(segment.substr(bang + 1));
        if (c.span.empty()) throw MalformedTarget("empty span in clause: " + segment);
        if (c.type.empty()) throw MalformedTarget("empty type in clause: " + segment);
        clauses.push_back(std::move(c));
    }
    return clauses;
}

std::string serialize_clauses(const std::vector<Clause>& clauses) {
    if (clauses.empty()) return kNoEntityTarget;
    std::string out;
    for (size_t i = 0; i < clauses.size(); ++i) {
        if (i > 0) out += ' ';
        out += clauses[i].span + " ! " + clauses[i].type + " ;";
    }
    return out;
}

LabelSet cls_of_target(const std::string& target, TaskKind kind) {
    if (kind == TaskKind::sequence_label) {
        LabelSet out;
        for (const Clause& c : parse_clauses(target)) out.insert(c.type);
        return out;
    }
    const std::string t = normalize_ws(target);
    if (t.empty()) throw MalformedTarget("empty class target");
    if (!valid_label(t)) throw MalformedTarget("target is not a label name: " + target);
    return {t};
}

std::vector<LabelSet> split_stages(const LabelSet& labels, int n_stages, uint64_t seed) {
    if (n_stages < 1) throw InvalidSplit("n_stages must be >= 1");
    if (static_cast<size_t>(n_stages) > labels.size())
        throw InvalidSplit("n_stages exceeds number of labels");

    std::vector<Label> order(labels.begin(), labels.end());
    Rng rng(substream(seed, "split_stages"));
    rng.shuffle(order);

    // Round-robin keeps sizes within 1.
    std::vector<LabelSet> out(static_cast<size_t>(n_stages));
    for (size_t i = 0; i < order.size(); ++i) out[i % n_stages].insert(order[i]);
    return out;
}

FewshotResult subsample_fewshot(const std::vector<Example>& pool, const LabelSet& labels,
                                int shots, uint64_t seed) {
    if (shots < 1) throw ConfigError("shots must be >= 1");
    FewshotResult res;
    Rng rng(substream(seed, "fewshot"));

    const bool seq = !pool.empty() && pool.front().task_kind == TaskKind::sequence_label;
    if (!seq) {
        // Exactly min(shots, available) per label, in label order.
        std::map<Label, std::vector<size_t>> by_label;
        for (size_t i = 0; i < pool.size(); ++i) {
            const LabelSet cls = cls_of_target(pool[i].target, pool[i].task_kind);
            for (const Label& l : cls)
                if (labels.count(l)) by_label[l].push_back(i);
        }
        std::vector<size_t> picked;
        for (const Label& l : labels) {
            auto it = by_label.find(l);
            const size_t avail = it == by_label.end() ? 0 : it->second.size();
            if (avail < static_cast<size_t>(shots))
                res.warnings.push_back("label '" + l + "': only " + std::to_string(avail) +
                                       " of " + std::to_string(shots) + " shots available");
            if (it == by_label.end()) continue;
            rng.shuffle(it->second);
            const size_t take = std::min<size_t>(shots, avail);
            picked.insert(picked.end(), it->second.begin(), it->second.begin() + take);
        }
        std::sort(picked.begin(), picked.end());
        for (const size_t i : picked) res.selected.push_back(pool[i]);
        return res;
    }

    // Sequence labelling: one example can cover several labels, so select
    // greedily until every label has enough covering examples.
    std::vector<size_t> order(pool.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);

    std::map<Label, int> need;
    for (const Label& l : labels) need[l] = shots;
    std::vector<size_t> picked;
    for (const size_t i : order) {
        const LabelSet cls = cls_of_target(pool[i].target, pool[i].task_kind);
        bool useful = false;
        for (const Label& l : cls) {
            auto it = need.find(l);
            if (it != need.end() && it->second > 0) useful = true;
        }
        if (!useful) continue;
        picked.push_back(i);
        for (const Label& l : cls) {
            auto it = need.find(l);
            if (it != need.end()) it->second -= 1;
        }
        bool all_done = true;
        for (const auto& [l, n] : need)
            if (n > 0) all_done = false;
        if (all_done) break;
    }
    for (const auto& [l, n] : need)
        if (n > 0)
            res.warnings.push_back("label '" + l + "': short by " + std::to_string(n) +
                                   " covering examples");
    std::sort(picked.begin(), picked.end());
    for (const size_t i : picked) res.selected.push_back(pool[i]);
    return res;
}

namespace {

bool fused_valid(const LabelSet& f, const std::vector<LabelSet>& training_sets) {
    for (const LabelSet& omega : training_sets) {
        bool intersects = false;
        bool subset = true;
        for (const Label& l : f) {
            if (omega.count(l)) intersects = true;
            else subset = false;
        }
        if (!intersects || subset) return false;
    }
    return true;
}

}  // namespace

std::vector<LabelSet> build_fused_labelsets(const std::vector<LabelSet>& training_sets,
                                            int n_fused, int size, uint64_t seed) {
    if (training_sets.size() < 2) throw InfeasibleFused("need at least 2 training stages");
    if (size < static_cast<int>(training_sets.size()))
        throw InfeasibleFused("fused size " + std::to_string(size) + " cannot intersect " +
                              std::to_string(training_sets.size()) + " stages");
    LabelSet union_set;
    for (const LabelSet& s : training_sets) union_set.insert(s.begin(), s.end());
    if (static_cast<size_t>(size) > union_set.size())
        throw InfeasibleFused("fused size exceeds label universe");

    const std::vector<Label> universe(union_set.begin(), union_set.end());
    Rng rng(substream(seed, "fused"));
    std::vector<LabelSet> out;
    for (int f = 0; f < n_fused; ++f) {
        LabelSet candidate;
        bool ok = false;
        for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
            candidate.clear();
            for (const size_t i : rng.sample_indices(universe.size(), static_cast<size_t>(size)))
                candidate.insert(universe[i]);
            ok = fused_valid(candidate, training_sets);
        }
        if (!ok) {
            // Seed one label per stage, fill the rest uniformly from the
            // remainder. Valid by construction when size >= n_stages >= 2.
            candidate.clear();
            for (const LabelSet& omega : training_sets) {
                std::vector<Label> v(omega.begin(), omega.end());
                candidate.insert(v[rng.uniform(v.size())]);
            }
            std::vector<Label> rest;
            for (const Label& l : universe)
                if (!candidate.count(l)) rest.push_back(l);
            while (candidate.size() < static_cast<size_t>(size) && !rest.empty()) {
                const size_t j = rng.uniform(rest.size());
                candidate.insert(rest[j]);
                rest.erase(rest.begin() + static_cast<ptrdiff_t>(j));
            }
            if (!fused_valid(candidate, training_sets))
                throw InfeasibleFused("no valid fused label set found");
        }
        out.push_back(std::move(candidate));
    }
    return out;
}

std::optional<Example> project_example(const Example& example, const LabelSet& label_set) {
    if (example.task_kind != TaskKind::sequence_label) {
        const LabelSet cls = cls_of_target(example.target, example.task_kind);
        for (const Label& l : cls)
            if (!label_set.count(l)) return std::nullopt;
        return example;
    }
    std::vector<Clause> kept;
    for (const Clause& c : parse_clauses(example.target))
        if (label_set.count(c.type)) kept.push_back(c);
    Example out = example;
    out.target = serialize_clauses(kept);
    return out;
}

LabelSet StagePlan::labels_up_to(size_t k) const {
    LabelSet out;
    for (size_t i = 0; i < k && i < stages.size(); ++i)
        out.insert(stages[i].labels.begin(), stages[i].labels.end());
    return out;
}

LabelSet StagePlan::all_labels() const { return labels_up_to(stages.size()); }

namespace {

// Keep projected examples that still carry information: at least one clause,
// or an originally empty annotation.
std::vector<Example> project_pool(const std::vector<Example>& pool, const LabelSet& labels,
                                  TaskKind kind) {
    std::vector<Example> out;
    for (const Example& e : pool) {
        auto p = project_example(e, labels);
        if (!p) continue;
        if (kind == TaskKind::sequence_label && p->target == kNoEntityTarget &&
            e.target != kNoEntityTarget)
            continue;
        out.push_back(std::move(*p));
    }
    return out;
}

std::vector<Example> remove_selected(const std::vector<Example>& pool,
                                     const std::vector<Example>& selected) {
    // Selected examples are pool members; drop each one occurrence-for-one.
    std::vector<Example> rest;
    std::multiset<std::pair<std::string, std::string>> sel;
    for (const Example& e : selected) sel.insert({e.input, e.target});
    for (const Example& e : pool) {
        auto it = sel.find({e.input, e.target});
        if (it != sel.end()) {
            sel.erase(it);
            continue;
        }
        rest.push_back(e);
    }
    return rest;
}

}  // namespace

StagePlan build_plan(const std::vector<Example>& pool, const LabelSet& labels, TaskKind kind,
                     const PlanConfig& cfg) {
    if (cfg.n_stages < 1) throw ConfigError("n_stages must be >= 1");
    StagePlan plan;
    plan.task_kind = kind;
    plan.seed = cfg.seed;

    // Partition the pool into train/val/test sub-pools over the full универse
    // first, so test examples can serve any regime without leaking into train.
    auto train_sel = subsample_fewshot(pool, labels, cfg.shots_train, substream(cfg.seed, "train"));
    auto rest = remove_selected(pool, train_sel.selected);
    auto val_sel = subsample_fewshot(rest, labels, cfg.shots_val, substream(cfg.seed, "val"));
    rest = remove_selected(rest, val_sel.selected);
    auto test_sel = subsample_fewshot(rest, labels, cfg.shots_test, substream(cfg.seed, "test"));

    for (auto& w : train_sel.warnings) plan.warnings.push_back("train: " + w);
    for (auto& w : val_sel.warnings) plan.warnings.push_back("val: " + w);
    for (auto& w : test_sel.warnings) plan.warnings.push_back("test: " + w);

    const std::vector<LabelSet> stage_labels = split_stages(labels, cfg.n_stages, cfg.seed);

    for (int i = 0; i < cfg.n_stages; ++i) {
        Stage st;
        st.index = i + 1;
        st.labels = stage_labels[static_cast<size_t>(i)];
        st.train = project_pool(train_sel.selected, st.labels, kind);
        st.validation = project_pool(val_sel.selected, st.labels, kind);
        plan.specific_tests.push_back(project_pool(test_sel.selected, st.labels, kind));
        plan.stages.push_back(std::move(st));
    }

    for (size_t k = 1; k <= plan.stages.size(); ++k) {
        const LabelSet seen = plan.labels_up_to(k);
        plan.agnostic_tests.push_back(project_pool(test_sel.selected, seen, kind));
    }

    if (cfg.n_fused > 0 && cfg.n_stages >= 2) {
        const auto fused_sets =
            build_fused_labelsets(stage_labels, cfg.n_fused, cfg.fused_size, cfg.seed);
        for (const LabelSet& f : fused_sets) {
            FusedStage fs;
            fs.labels = f;
            fs.test = project_pool(test_sel.selected, f, kind);
            plan.fused.push_back(std::move(fs));
        }
    }
    return plan;
}

uint64_t pool_hash(const std::vector<Example>& pool) {
    uint64_t h = 0xcbf29ce484222325ULL;
    auto mix_string = [&h](const std::string& s) {
        for (const char c : s) {
            h ^= static_cast<uint8_t>(c);
            h *= 0x100000001b3ULL;
        }
        h ^= 0x1f;
        h *= 0x100000001b3ULL;
    };
    for (const Example& e : pool) {
        mix_string(e.input);
        mix_string(e.target);
        mix_string(task_kind_name(e.task_kind));
    }
    return h;
}

// ---- JSONL -----------------------------------------------------------------

void write_jsonl(const std::string& path, const std::vector<Example>& examples) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for write: " + path);
    for (const Example& e : examples) {
        json j;
        j["input"] = e.input;
        j["target"] = e.target;
        out << j.dump() << '\n';
    }
}

std::vector<Example> read_jsonl(const std::string& path, TaskKind kind) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    std::vector<Example> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw IoError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        Example ex;
        ex.input = j.at("input").get<std::string>();
        ex.target = j.at("target").get<std::string>();
        ex.task_kind = kind;
        out.push_back(std::move(ex));
    }
    return out;
}

void write_dataset_manifest(const std::string& path, const DatasetManifest& m) {
    json j;
    j["task_kind"] = task_kind_name(m.task_kind);
    j["labels"] = m.labels;
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for write: " + path);
    out << j.dump(2) << '\n';
}

DatasetManifest read_dataset_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    json j = json::parse(in);
    DatasetManifest m;
    m.task_kind = task_kind_from_name(j.at("task_kind").get<std::string>());
    m.labels = j.at("labels").get<std::vector<std::string>>();
    return m;
}

namespace {

json labelset_json(const LabelSet& s) { return json(std::vector<Label>(s.begin(), s.end())); }

LabelSet labelset_from(const json& j) {
    LabelSet out;
    for (const auto& v : j) out.insert(v.get<std::string>());
    return out;
}

}  // namespace

void materialize_plan(const StagePlan& plan, const std::string& dir) {
    json manifest;
    manifest["task_kind"] = task_kind_name(plan.task_kind);
    manifest["seed"] = plan.seed;
    manifest["warnings"] = plan.warnings;

    json stages = json::array();
    for (size_t i = 0; i < plan.stages.size(); ++i) {
        const Stage& st = plan.stages[i];
        const std::string tag = "stage_" + std::to_string(st.index);
        write_jsonl(dir + "/" + tag + "_train.jsonl", st.train);
        write_jsonl(dir + "/" + tag + "_val.jsonl", st.validation);
        write_jsonl(dir + "/" + tag + "_test.jsonl", plan.specific_tests[i]);
        write_jsonl(dir + "/" + tag + "_agnostic.jsonl", plan.agnostic_tests[i]);
        json s;
        s["index"] = st.index;
        s["labels"] = labelset_json(st.labels);
        s["train"] = tag + "_train.jsonl";
        s["val"] = tag + "_val.jsonl";
        s["test"] = tag + "_test.jsonl";
        s["agnostic"] = tag + "_agnostic.jsonl";
        stages.push_back(s);
    }
    manifest["stages"] = stages;

    json fused = json::array();
    for (size_t i = 0; i < plan.fused.size(); ++i) {
        const std::string tag = "fused_" + std::to_string(i + 1);
        write_jsonl(dir + "/" + tag + "_test.jsonl", plan.fused[i].test);
        json f;
        f["labels"] = labelset_json(plan.fused[i].labels);
        f["test"] = tag + "_test.jsonl";
        fused.push_back(f);
    }
    manifest["fused"] = fused;

    std::ofstream out(dir + "/plan.json");
    if (!out) throw IoError("cannot open for write: " + dir + "/plan.json");
    out << manifest.dump(2) << '\n';
}

StagePlan load_plan(const std::string& dir) {
    std::ifstream in(dir + "/plan.json");
    if (!in) throw IoError("cannot open: " + dir + "/plan.json");
    json manifest = json::parse(in);

    StagePlan plan;
    plan.task_kind = task_kind_from_name(manifest.at("task_kind").get<std::string>());
    plan.seed = manifest.at("seed").get<uint64_t>();
    plan.warnings = manifest.at("warnings").get<std::vector<std::string>>();

    for (const auto& s : manifest.at("stages")) {
        Stage st;
        st.index = s.at("index").get<int>();
        st.labels = labelset_from(s.at("labels"));
        st.train = read_jsonl(dir + "/" + s.at("train").get<std::string>(), plan.task_kind);
        st.validation = read_jsonl(dir + "/" + s.at("val").get<std::string>(), plan.task_kind);
        plan.specific_tests.push_back(
            read_jsonl(dir + "/" + s.at("test").get<std::string>(), plan.task_kind));
        plan.agnostic_tests.push_back(
            read_jsonl(dir + "/" + s.at("agnostic").get<std::string>(), plan.task_kind));
        plan.stages.push_back(std::move(st));
    }
    for (const auto& f : manifest.at("fused")) {
        FusedStage fs;
        fs.labels = labelset_from(f.at("labels"));
        fs.test = read_jsonl(dir + "/" + f.at("test").get<std::string>(), plan.task_kind);
        plan.fused.push_back(std::move(fs));
    }
    return plan;
}

}  // namespace lmpt::corpus
