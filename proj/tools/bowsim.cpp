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

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bowsim/eval.hpp"

namespace {

using bowsim::Corpus;
using bowsim::FrequencyIndex;
using bowsim::MeasureConfig;

// Machine output goes to stdout; all diagnostics go to stderr so reruns
// with identical inputs produce byte-identical stdout and report files.

struct CorpusOptions {
    std::string path;
    std::string representation = "tf";
    std::uint32_t dims = 0;  // 0 = derive from the data
};

void
add_corpus_options(CLI::App& cmd, CorpusOptions& opts) {
    cmd.add_option("--corpus", opts.path, "Corpus file (<label> <termid>:<count> ... per line)")
        ->required();
    cmd.add_option("--representation", opts.representation, "Document representation")
        ->check(CLI::IsMember({"tf", "binary"}))
        ->capture_default_str();
    cmd.add_option("--dims", opts.dims, "Dictionary size override (0 = 1 + max term id)");
}

Corpus
load(const CorpusOptions& opts) {
    std::optional<std::uint32_t> dims;
    if (opts.dims != 0) {
        dims = opts.dims;
    }
    Corpus corpus = bowsim::load_corpus(opts.path, dims);
    if (opts.representation == "binary") {
        corpus = bowsim::to_binary(corpus);
    }
    return corpus;
}

std::vector<std::uint32_t>
all_ids(const Corpus& corpus) {
    std::vector<std::uint32_t> ids(corpus.size());
    std::iota(ids.begin(), ids.end(), 0);
    return ids;
}

std::string
fixed6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

void
setup_index(CLI::App& app) {
    auto opts = std::make_shared<CorpusOptions>();
    auto out_path = std::make_shared<std::string>();
    CLI::App* cmd = app.add_subcommand("index", "Build and persist the frequency index of a corpus");
    cmd->set_config("--config");
    add_corpus_options(*cmd, *opts);
    cmd->add_option("--out", *out_path, "Output index file")->required();
    cmd->callback([opts, out_path] {
        const Corpus corpus = load(*opts);
        const auto start = std::chrono::steady_clock::now();
        const FrequencyIndex index = FrequencyIndex::build(corpus);
        const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
        index.save_file(*out_path);
        std::cout << "N=" << index.num_docs() << " M=" << index.num_terms()
                  << " avgdl=" << fixed6(index.avg_doc_length()) << "\n";
        std::cerr << "index written to " << *out_path << " (built in " << fixed6(elapsed.count()) << " ms)\n";
    });
}

struct ScoringOptions {
    std::string measure;
    std::string weighting = "none";
    bowsim::Bm25Params bm25;
};

void
add_scoring_options(CLI::App& cmd, ScoringOptions& opts, bool require_measure) {
    auto* measure = cmd.add_option("--measure", opts.measure, "Similarity measure (cosine, bm25, jaccard, wjaccard, sp)");
    if (require_measure) {
        measure->required();
    }
    cmd.add_option("--weighting", opts.weighting, "Term weighting for cosine/wjaccard (none, tf, idf, tf-idf, icf, tf-icf)")
        ->capture_default_str();
    cmd.add_option("--bm25-a", opts.bm25.a, "BM25 saturation parameter a")->capture_default_str();
    cmd.add_option("--bm25-b", opts.bm25.b, "BM25 length normalization parameter b")->capture_default_str();
}

MeasureConfig
make_config(const ScoringOptions& opts) {
    MeasureConfig config;
    config.measure = bowsim::parse_measure(opts.measure);
    config.weighting = bowsim::parse_weighting(opts.weighting);
    config.bm25 = opts.bm25;
    bowsim::validate(config);
    return config;
}

void
setup_query(CLI::App& app) {
    struct QueryState {
        CorpusOptions corpus;
        ScoringOptions scoring;
        std::string index_path;
        std::string query_line;
        std::int64_t query_doc = -1;
        bool exclude_self = false;
        std::size_t k = 10;
    };
    auto st = std::make_shared<QueryState>();
    CLI::App* cmd = app.add_subcommand("query", "Rank corpus documents against a query document");
    cmd->set_config("--config");
    add_corpus_options(*cmd, st->corpus);
    add_scoring_options(*cmd, st->scoring, /*require_measure=*/true);
    cmd->add_option("--index", st->index_path, "Load a persisted frequency index instead of rebuilding");
    auto* line_opt = cmd->add_option("--query-line", st->query_line, "Query document in corpus line format");
    auto* doc_opt = cmd->add_option("--query-doc", st->query_doc, "Query by corpus document index");
    line_opt->excludes(doc_opt);
    cmd->add_flag("--exclude-self", st->exclude_self, "Drop the query document itself from the ranking")
        ->needs(doc_opt);
    cmd->add_option("--k", st->k, "Number of results")->capture_default_str();
    cmd->callback([st] {
        const Corpus corpus = load(st->corpus);
        FrequencyIndex index;
        if (st->index_path.empty()) {
            index = FrequencyIndex::build(corpus);
        } else {
            index = FrequencyIndex::load_file(st->index_path);
            if (index.num_docs() != corpus.size() || index.num_terms() != corpus.num_terms) {
                throw std::runtime_error("index file '" + st->index_path + "' does not match the corpus");
            }
        }
        const MeasureConfig config = make_config(st->scoring);
        std::optional<bowsim::ClassTermStats> stats;
        if (config.needs_class_stats()) {
            stats = bowsim::class_term_stats(corpus);
        }

        bowsim::Document query;
        std::optional<std::uint32_t> exclude;
        if (st->query_doc >= 0) {
            if (static_cast<std::size_t>(st->query_doc) >= corpus.size()) {
                throw std::invalid_argument("query document index out of range");
            }
            query = corpus.docs[static_cast<std::size_t>(st->query_doc)].doc;
            if (st->exclude_self) {
                exclude = static_cast<std::uint32_t>(st->query_doc);
            }
        } else if (!st->query_line.empty()) {
            query = bowsim::parse_document_line(st->query_line).doc;
            if (st->corpus.representation == "binary") {
                query = bowsim::to_binary(query);
            }
        } else {
            throw std::invalid_argument("one of --query-line or --query-doc is required");
        }

        const std::vector<std::uint32_t> ids = all_ids(corpus);
        const bowsim::Scorer scorer(corpus, ids, index, config, stats ? &*stats : nullptr);
        const bowsim::RankedList ranked = scorer.top_k(query, st->k, exclude);
        for (std::size_t r = 0; r < ranked.size(); ++r) {
            std::cout << r + 1 << '\t' << ranked[r].doc_id << '\t' << fixed6(ranked[r].score) << '\n';
        }
    });
}

void
setup_eval(CLI::App& app, bool classification) {
    struct EvalState {
        CorpusOptions corpus;
        ScoringOptions scoring;
        std::vector<std::string> configs;
        std::string preset;
        std::string out_prefix;
        std::string format = "csv";
        bowsim::EvalOptions options;
    };
    auto st = std::make_shared<EvalState>();
    st->options.task = classification ? bowsim::EvalTask::classification : bowsim::EvalTask::retrieval;
    st->options.k = classification ? 5 : 25;
    const char* name = classification ? "classify" : "benchmark";
    const char* help = classification ? "Cross-validated kNN classification accuracy"
                                      : "Cross-validated retrieval quality (MAP@k)";
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->set_config("--config");
    add_corpus_options(*cmd, st->corpus);
    add_scoring_options(*cmd, st->scoring, /*require_measure=*/false);
    auto* configs_opt =
        cmd->add_option("--configs", st->configs, "Measure configs, e.g. sp,bm25,cosine.tf-idf")->delimiter(',');
    auto* preset_opt =
        cmd->add_option("--preset", st->preset, "Named config bundle (standard, standard-binary)");
    configs_opt->excludes(preset_opt);
    cmd->add_option("--k", st->options.k, classification ? "Neighbor count" : "Ranking depth")
        ->capture_default_str();
    cmd->add_option("--folds", st->options.folds, "Cross-validation folds")->capture_default_str();
    cmd->add_option("--seed", st->options.seed, "Fold assignment seed")->capture_default_str();
    cmd->add_option("--threads", st->options.threads, "Worker threads (0 = hardware)")->capture_default_str();
    cmd->add_flag("--stratified", st->options.stratified, "Stratify folds by class label");
    cmd->add_option("--out", st->out_prefix, "Output path prefix for the report files")->required();
    cmd->add_option("--format", st->format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->callback([st] {
        const Corpus corpus = load(st->corpus);
        std::vector<std::string> names = st->configs;
        if (!st->preset.empty()) {
            names = bowsim::preset_configs(st->preset);
        } else if (names.empty() && !st->scoring.measure.empty()) {
            std::string name = st->scoring.measure;
            if (st->scoring.weighting != "none") {
                name += "." + st->scoring.weighting;
            }
            names = {name};
        }
        if (names.empty()) {
            throw std::invalid_argument("no measure configs: pass --configs, --preset or --measure");
        }
        std::vector<MeasureConfig> configs;
        configs.reserve(names.size());
        for (const auto& n : names) {
            configs.push_back(bowsim::parse_measure_config(n, st->scoring.bm25));
        }
        const bowsim::EvalReport report = bowsim::cross_validate(corpus, configs, st->options);

        const std::string report_path = st->out_prefix + (st->format == "json" ? ".json" : ".csv");
        {
            std::ofstream out(report_path);
            if (!out) {
                throw std::runtime_error("cannot open '" + report_path + "' for writing");
            }
            if (st->format == "json") {
                bowsim::write_report_json(report, out);
            } else {
                bowsim::write_report_csv(report, out);
            }
        }
        const std::string sig_path = st->out_prefix + ".significance.csv";
        {
            std::ofstream out(sig_path);
            if (!out) {
                throw std::runtime_error("cannot open '" + sig_path + "' for writing");
            }
            bowsim::write_significance_csv(report, out);
        }
        std::cout << "config\tmean\tstd_error\n";
        for (const auto& config : report.configs) {
            std::cout << config.name << '\t' << fixed6(config.mean) << '\t' << fixed6(config.std_error) << '\n';
        }
        std::cerr << "report written to " << report_path << " and " << sig_path << "\n";
    });
}

}  // namespace

int
main(int argc, char** argv) {
    CLI::App app{"bag-of-words inter-document similarity toolkit"};
    app.require_subcommand(1);
    setup_index(app);
    setup_query(app);
    setup_eval(app, /*classification=*/false);
    setup_eval(app, /*classification=*/true);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
