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

#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "bowsim/eval.hpp"

namespace bowsim {

namespace {

std::string
fixed6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

const char*
task_name(EvalTask task) {
    return task == EvalTask::retrieval ? "retrieval" : "classification";
}

const char*
metric_name(EvalTask task) {
    return task == EvalTask::retrieval ? "map" : "accuracy";
}

}  // namespace

void
write_report_csv(const EvalReport& report, std::ostream& out) {
    out << "config";
    for (std::uint32_t f = 1; f <= report.folds; ++f) {
        out << ",run_" << f;
    }
    out << ",mean,std_error,truncated_queries\n";
    for (const auto& config : report.configs) {
        out << config.name;
        for (double v : config.per_run) {
            out << ',' << fixed6(v);
        }
        out << ',' << fixed6(config.mean) << ',' << fixed6(config.std_error) << ',' << config.truncated_queries
            << '\n';
    }
}

void
write_significance_csv(const EvalReport& report, std::ostream& out) {
    out << "config";
    for (const auto& config : report.configs) {
        out << ',' << config.name;
    }
    out << '\n';
    for (std::size_t i = 0; i < report.configs.size(); ++i) {
        out << report.configs[i].name;
        for (std::size_t j = 0; j < report.configs.size(); ++j) {
            if (i == j) {
                out << ",-";
            } else {
                out << ',' << (report.different[i][j] ? "different" : "not_different");
            }
        }
        out << '\n';
    }
}

void
write_report_json(const EvalReport& report, std::ostream& out) {
    nlohmann::json j;
    j["task"] = task_name(report.task);
    j["metric"] = metric_name(report.task);
    j["k"] = report.k;
    j["folds"] = report.folds;
    j["seed"] = report.seed;
    j["stratified"] = report.stratified;
    j["configs"] = nlohmann::json::array();
    for (const auto& config : report.configs) {
        nlohmann::json c;
        c["name"] = config.name;
        c["per_run"] = config.per_run;
        c["mean"] = config.mean;
        c["std_error"] = config.std_error;
        c["truncated_queries"] = config.truncated_queries;
        j["configs"].push_back(c);
    }
    j["significantly_different"] = nlohmann::json::array();
    for (const auto& row : report.different) {
        nlohmann::json r = nlohmann::json::array();
        for (std::uint8_t v : row) {
            r.push_back(v != 0);
        }
        j["significantly_different"].push_back(r);
    }
    out << j.dump(2) << '\n';
}

}  // namespace bowsim
