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

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "bowsim/scorer.hpp"

namespace bowsim {

// Deterministic fold split: a seeded shuffle followed by round-robin
// assignment, so fold sizes differ by at most one. The shuffle uses a
// fixed in-house Fisher-Yates over std::mt19937_64 draws, making the
// split reproducible across platforms and standard libraries.
struct FoldAssignment {
    std::uint32_t num_folds = 0;
    std::vector<std::uint32_t> fold_of;  // indexed by document id

    // Ascending document ids per fold.
    std::vector<std::vector<std::uint32_t>> members() const;
};

FoldAssignment assign_folds(std::size_t num_docs, std::uint32_t num_folds, std::uint64_t seed);

// Stratified variant: round-robin within each label so per-class
// proportions are preserved within one document per fold.
FoldAssignment assign_folds_stratified(std::span<const std::uint32_t> labels,
                                       std::uint32_t num_folds,
                                       std::uint64_t seed);

// Fraction of the first k ranked documents sharing the query label.
// Requires 1 <= k <= ranked.size(). `labels` is indexed by document id.
double precision_at_k(const RankedList& ranked,
                      std::uint32_t query_label,
                      std::span<const std::uint32_t> labels,
                      std::size_t k);

// Mean of P@1..P@depth with depth = min(k, ranked.size()). When the
// ranking is shorter than k the value is computed at the truncated depth
// and *truncated (if given) is set.
double average_precision_at_k(const RankedList& ranked,
                              std::uint32_t query_label,
                              std::span<const std::uint32_t> labels,
                              std::size_t k,
                              bool* truncated = nullptr);

// Majority vote over the neighbor labels; ties go to the label of the
// nearest neighbor within the tied set.
std::uint32_t majority_label(const RankedList& neighbors, std::span<const std::uint32_t> labels);

std::uint32_t knn_classify(const Document& query,
                           const Scorer& scorer,
                           std::span<const std::uint32_t> labels,
                           std::size_t k,
                           Scorer::Workspace& ws);
std::uint32_t knn_classify(const Document& query,
                           const Corpus& corpus,
                           std::span<const std::uint32_t> train_ids,
                           const MeasureConfig& config,
                           std::size_t k);

enum class EvalTask {
    retrieval,       // per-query AP@k, per-run MAP
    classification,  // per-query kNN hit, per-run accuracy
};

struct EvalOptions {
    EvalTask task = EvalTask::retrieval;
    std::size_t k = 25;  // ranking depth (retrieval) or neighbor count
    std::uint32_t folds = 10;
    std::uint64_t seed = 1;
    bool stratified = false;
    unsigned threads = 0;  // 0 = hardware concurrency
};

struct ConfigResult {
    std::string name;
    std::vector<double> per_run;  // one value per fold, fold order
    double mean = 0.0;
    double std_error = 0.0;
    // Queries whose ranking was shorter than k (metric computed at the
    // truncated depth).
    std::uint64_t truncated_queries = 0;

    bool operator==(const ConfigResult&) const = default;
};

struct EvalReport {
    EvalTask task = EvalTask::retrieval;
    std::size_t k = 0;
    std::uint32_t folds = 0;
    std::uint64_t seed = 0;
    bool stratified = false;
    std::vector<ConfigResult> configs;
    // different[i][j]: the two-standard-error intervals of configs i and
    // j do not overlap.
    std::vector<std::vector<std::uint8_t>> different;

    bool operator==(const EvalReport&) const = default;
};

double mean_of(std::span<const double> values);

// Sample standard deviation (n - 1) over sqrt(n). Exactly zero when all
// values are equal. Requires at least two values.
double std_error_of(std::span<const double> values);

bool significantly_different(double mean_a, double se_a, double mean_b, double se_b);

// Seeded k-fold cross-validation of every config over the corpus. Each
// fold's documents query a scorer built over the remaining folds;
// collection statistics (frequency index, class stats) are rebuilt per
// fold from training documents only. Output is independent of the thread
// count.
EvalReport cross_validate(const Corpus& corpus, std::span<const MeasureConfig> configs, const EvalOptions& options);

// Named config bundles: "standard" (tf-weighted collection) and
// "standard-binary" (binary collection).
std::vector<std::string> preset_configs(std::string_view name);

void write_report_csv(const EvalReport& report, std::ostream& out);
void write_significance_csv(const EvalReport& report, std::ostream& out);
void write_report_json(const EvalReport& report, std::ostream& out);

}  // namespace bowsim
