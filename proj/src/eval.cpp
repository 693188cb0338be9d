// Copyright 2026-present the bowsim project
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

#include "bowsim/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>

namespace bowsim {

namespace {

// Unbiased draw from [0, n) via rejection; avoids the
// implementation-defined std::uniform_int_distribution.
std::uint64_t
bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) {
            return r % n;
        }
    }
}

void
shuffle_ids(std::vector<std::uint32_t>& ids, std::mt19937_64& rng) {
    for (std::size_t i = ids.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(bounded_draw(rng, i));
        std::swap(ids[i - 1], ids[j]);
    }
}

// Runs fn(i, thread_id) for every i in [0, n); results must be written to
// per-i slots so the schedule cannot affect output.
void
parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t, unsigned)>& fn) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i, 0);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned tid = 0; tid < threads; ++tid) {
        pool.emplace_back([&, tid] {
            try {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= n) {
                        return;
                    }
                    fn(i, tid);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(n);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace

std::vector<std::vector<std::uint32_t>>
FoldAssignment::members() const {
    std::vector<std::vector<std::uint32_t>> out(num_folds);
    for (std::uint32_t id = 0; id < fold_of.size(); ++id) {
        out[fold_of[id]].push_back(id);
    }
    return out;
}

FoldAssignment
assign_folds(std::size_t num_docs, std::uint32_t num_folds, std::uint64_t seed) {
    if (num_folds < 1) {
        throw std::invalid_argument("assign_folds: need at least one fold");
    }
    std::vector<std::uint32_t> order(num_docs);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    shuffle_ids(order, rng);
    FoldAssignment folds;
    folds.num_folds = num_folds;
    folds.fold_of.resize(num_docs);
    for (std::size_t i = 0; i < order.size(); ++i) {
        folds.fold_of[order[i]] = static_cast<std::uint32_t>(i % num_folds);
    }
    return folds;
}

FoldAssignment
assign_folds_stratified(std::span<const std::uint32_t> labels, std::uint32_t num_folds, std::uint64_t seed) {
    if (num_folds < 1) {
        throw std::invalid_argument("assign_folds: need at least one fold");
    }
    std::uint32_t num_labels = 0;
    for (std::uint32_t label : labels) {
        num_labels = std::max(num_labels, label + 1);
    }
    std::vector<std::vector<std::uint32_t>> groups(num_labels);
    for (std::uint32_t id = 0; id < labels.size(); ++id) {
        groups[labels[id]].push_back(id);
    }
    std::mt19937_64 rng(seed);
    FoldAssignment folds;
    folds.num_folds = num_folds;
    folds.fold_of.resize(labels.size());
    std::size_t cursor = 0;
    for (auto& group : groups) {
        shuffle_ids(group, rng);
        for (std::uint32_t id : group) {
            folds.fold_of[id] = static_cast<std::uint32_t>(cursor++ % num_folds);
        }
    }
    return folds;
}

double
precision_at_k(const RankedList& ranked,
               std::uint32_t query_label,
               std::span<const std::uint32_t> labels,
               std::size_t k) {
    if (k < 1 || k > ranked.size()) {
        throw std::invalid_argument("precision_at_k: k must lie in [1, ranking size]");
    }
    std::size_t relevant = 0;
    for (std::size_t i = 0; i < k; ++i) {
        relevant += labels[ranked[i].doc_id] == query_label ? 1 : 0;
    }
    return static_cast<double>(relevant) / static_cast<double>(k);
}

double
average_precision_at_k(const RankedList& ranked,
                       std::uint32_t query_label,
                       std::span<const std::uint32_t> labels,
                       std::size_t k,
                       bool* truncated) {
    if (k < 1) {
        throw std::invalid_argument("average_precision_at_k: k must be at least 1");
    }
    const std::size_t depth = std::min(k, ranked.size());
    if (truncated != nullptr) {
        *truncated = depth < k;
    }
    if (depth == 0) {
        return 0.0;
    }
    std::size_t relevant = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < depth; ++i) {
        relevant += labels[ranked[i].doc_id] == query_label ? 1 : 0;
        sum += static_cast<double>(relevant) / static_cast<double>(i + 1);
    }
    return sum / static_cast<double>(depth);
}

std::uint32_t
majority_label(const RankedList& neighbors, std::span<const std::uint32_t> labels) {
    if (neighbors.empty()) {
        throw std::invalid_argument("majority_label: empty neighbor list");
    }
    std::uint32_t max_label = 0;
    for (const auto& entry : neighbors) {
        max_label = std::max(max_label, labels[entry.doc_id]);
    }
    std::vector<std::uint32_t> counts(std::size_t{max_label} + 1, 0);
    for (const auto& entry : neighbors) {
        ++counts[labels[entry.doc_id]];
    }
    std::uint32_t best = 0;
    for (const auto& entry : neighbors) {
        best = std::max(best, counts[labels[entry.doc_id]]);
    }
    for (const auto& entry : neighbors) {
        if (counts[labels[entry.doc_id]] == best) {
            return labels[entry.doc_id];
        }
    }
    return labels[neighbors.front().doc_id];
}

std::uint32_t
knn_classify(const Document& query,
             const Scorer& scorer,
             std::span<const std::uint32_t> labels,
             std::size_t k,
             Scorer::Workspace& ws) {
    return majority_label(scorer.top_k(query, k, ws), labels);
}

std::uint32_t
knn_classify(const Document& query,
             const Corpus& corpus,
             std::span<const std::uint32_t> train_ids,
             const MeasureConfig& config,
             std::size_t k) {
    const FrequencyIndex index = FrequencyIndex::build(corpus, train_ids);
    std::optional<ClassTermStats> stats;
    if (config.needs_class_stats()) {
        stats = class_term_stats(corpus, train_ids);
    }
    Scorer scorer(corpus, train_ids, index, config, stats ? &*stats : nullptr);
    std::vector<std::uint32_t> labels(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        labels[i] = corpus.docs[i].label;
    }
    Scorer::Workspace ws;
    return knn_classify(query, scorer, labels, k, ws);
}

double
mean_of(std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

double
std_error_of(std::span<const double> values) {
    if (values.size() < 2) {
        throw std::invalid_argument("std_error_of: need at least two values");
    }
    const bool all_equal = std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); });
    if (all_equal) {
        return 0.0;
    }
    const double mean = mean_of(values);
    double sum_sq = 0.0;
    for (double v : values) {
        const double d = v - mean;
        sum_sq += d * d;
    }
    const double n = static_cast<double>(values.size());
    return std::sqrt(sum_sq / (n - 1.0)) / std::sqrt(n);
}

bool
significantly_different(double mean_a, double se_a, double mean_b, double se_b) {
    return std::abs(mean_a - mean_b) > 2.0 * se_a + 2.0 * se_b;
}

EvalReport
cross_validate(const Corpus& corpus, std::span<const MeasureConfig> configs, const EvalOptions& options) {
    if (configs.empty()) {
        throw std::invalid_argument("cross_validate: no measure configs given");
    }
    if (options.folds < 2) {
        throw std::invalid_argument("cross_validate: need at least 2 folds");
    }
    if (options.k < 1) {
        throw std::invalid_argument("cross_validate: k must be at least 1");
    }
    if (options.task == EvalTask::classification && corpus.num_classes < 2) {
        throw std::invalid_argument("cross_validate: classification needs a corpus with at least 2 classes");
    }
    for (const auto& config : configs) {
        validate(config);
    }

    std::vector<std::uint32_t> labels(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        labels[i] = corpus.docs[i].label;
    }

    const FoldAssignment folds = options.stratified
                                     ? assign_folds_stratified(labels, options.folds, options.seed)
                                     : assign_folds(corpus.size(), options.folds, options.seed);
    const auto fold_members = folds.members();
    for (std::uint32_t f = 0; f < options.folds; ++f) {
        if (fold_members[f].empty()) {
            throw std::invalid_argument("cross_validate: fold " + std::to_string(f) + " has no documents");
        }
    }

    const bool any_class_stats =
        std::any_of(configs.begin(), configs.end(), [](const MeasureConfig& c) { return c.needs_class_stats(); });

    EvalReport report;
    report.task = options.task;
    report.k = options.k;
    report.folds = options.folds;
    report.seed = options.seed;
    report.stratified = options.stratified;
    report.configs.resize(configs.size());
    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
        report.configs[ci].name = configs[ci].display_name();
        report.configs[ci].per_run.resize(options.folds);
    }

    unsigned threads = options.threads;
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    std::vector<Scorer::Workspace> workspaces(threads);

    for (std::uint32_t f = 0; f < options.folds; ++f) {
        const std::vector<std::uint32_t>& queries = fold_members[f];
        std::vector<std::uint32_t> train;
        train.reserve(corpus.size() - queries.size());
        for (std::uint32_t id = 0; id < corpus.size(); ++id) {
            if (folds.fold_of[id] != f) {
                train.push_back(id);
            }
        }
        const FrequencyIndex index = FrequencyIndex::build(corpus, train);
        std::optional<ClassTermStats> stats;
        if (any_class_stats) {
            stats = class_term_stats(corpus, train);
        }
        for (std::size_t ci = 0; ci < configs.size(); ++ci) {
            const Scorer scorer(
                corpus, train, index, configs[ci], configs[ci].needs_class_stats() ? &*stats : nullptr);
            std::vector<double> values(queries.size());
            std::vector<std::uint8_t> truncated(queries.size(), 0);
            parallel_for(queries.size(), threads, [&](std::size_t qi, unsigned tid) {
                const LabeledDocument& labeled = corpus.docs[queries[qi]];
                const RankedList ranked = scorer.top_k(labeled.doc, options.k, workspaces[tid]);
                if (options.task == EvalTask::retrieval) {
                    bool was_truncated = false;
                    values[qi] = average_precision_at_k(ranked, labeled.label, labels, options.k, &was_truncated);
                    truncated[qi] = was_truncated ? 1 : 0;
                } else {
                    values[qi] = majority_label(ranked, labels) == labeled.label ? 1.0 : 0.0;
                }
            });
            report.configs[ci].per_run[f] = mean_of(values);
            report.configs[ci].truncated_queries +=
                static_cast<std::uint64_t>(std::count(truncated.begin(), truncated.end(), std::uint8_t{1}));
        }
    }

    for (auto& config : report.configs) {
        config.mean = mean_of(config.per_run);
        config.std_error = std_error_of(config.per_run);
    }
    report.different.assign(configs.size(), std::vector<std::uint8_t>(configs.size(), 0));
    for (std::size_t i = 0; i < configs.size(); ++i) {
        for (std::size_t j = 0; j < configs.size(); ++j) {
            report.different[i][j] = i != j && significantly_different(report.configs[i].mean,
                                                                       report.configs[i].std_error,
                                                                       report.configs[j].mean,
                                                                       report.configs[j].std_error)
                                         ? 1
                                         : 0;
        }
    }
    return report;
}

std::vector<std::string>
preset_configs(std::string_view name) {
    if (name == "standard") {
        return {"bm25", "cosine.tf-idf", "cosine.tf", "wjaccard.tf-idf", "wjaccard.tf", "sp"};
    }
    if (name == "standard-binary") {
        return {"bm25", "cosine.idf", "cosine", "wjaccard.idf", "wjaccard", "sp"};
    }
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

}  // namespace bowsim
