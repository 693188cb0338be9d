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

#include "bowsim/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string_view>

namespace bowsim {

std::uint64_t
Document::length() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::uint32_t
Document::count_of(TermId t) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), t);
    if (it == terms.end() || *it != t) {
        return 0;
    }
    return counts[static_cast<std::size_t>(it - terms.begin())];
}

Document
Document::from_pairs(std::span<const std::pair<TermId, std::uint32_t>> pairs) {
    std::vector<std::pair<TermId, std::uint32_t>> sorted(pairs.begin(), pairs.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Document doc;
    doc.terms.reserve(sorted.size());
    doc.counts.reserve(sorted.size());
    for (const auto& [term, count] : sorted) {
        if (!doc.terms.empty() && doc.terms.back() == term) {
            throw std::invalid_argument("document: duplicate term id " + std::to_string(term));
        }
        if (count == 0) {
            throw std::invalid_argument("document: zero count for term id " + std::to_string(term));
        }
        doc.terms.push_back(term);
        doc.counts.push_back(count);
    }
    return doc;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {
}

namespace {

std::uint32_t
parse_u32(std::string_view text, std::size_t line_no, const char* what) {
    if (text.empty()) {
        throw ParseError(line_no, std::string("missing ") + what);
    }
    if (text.front() == '-') {
        throw ParseError(line_no, std::string("negative ") + what + " '" + std::string(text) + "'");
    }
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc::result_out_of_range || value > std::numeric_limits<std::uint32_t>::max()) {
        throw ParseError(line_no, std::string(what) + " '" + std::string(text) + "' out of range");
    }
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError(line_no, std::string("malformed ") + what + " '" + std::string(text) + "'");
    }
    return static_cast<std::uint32_t>(value);
}

bool
is_blank_or_comment(std::string_view line) {
    auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string_view::npos || line[pos] == '#';
}

}  // namespace

LabeledDocument
parse_document_line(const std::string& line, std::size_t line_no) {
    std::istringstream tokens(line);
    std::string token;
    if (!(tokens >> token)) {
        throw ParseError(line_no, "empty document line");
    }
    LabeledDocument labeled;
    labeled.label = parse_u32(token, line_no, "label");
    std::vector<std::pair<TermId, std::uint32_t>> pairs;
    while (tokens >> token) {
        auto colon = token.find(':');
        if (colon == std::string::npos || token.find(':', colon + 1) != std::string::npos) {
            throw ParseError(line_no, "malformed entry '" + token + "', expected <termid>:<count>");
        }
        std::string_view view(token);
        TermId term = parse_u32(view.substr(0, colon), line_no, "term id");
        std::uint32_t count = parse_u32(view.substr(colon + 1), line_no, "count");
        if (count == 0) {
            throw ParseError(line_no, "zero count for term id " + std::to_string(term));
        }
        pairs.push_back({term, count});
    }
    try {
        labeled.doc = Document::from_pairs(pairs);
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
    }
    return labeled;
}

Corpus
parse_corpus(std::istream& in, std::optional<std::uint32_t> dims) {
    Corpus corpus;
    std::string line;
    std::size_t line_no = 0;
    std::uint64_t max_term_bound = 0;  // 1 + max term id seen
    std::uint64_t max_label_bound = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) {
            continue;
        }
        LabeledDocument labeled = parse_document_line(line, line_no);
        if (!labeled.doc.terms.empty()) {
            max_term_bound = std::max(max_term_bound, std::uint64_t{labeled.doc.terms.back()} + 1);
        }
        max_label_bound = std::max(max_label_bound, std::uint64_t{labeled.label} + 1);
        corpus.docs.push_back(std::move(labeled));
    }
    if (corpus.docs.empty()) {
        throw ParseError(0, "empty corpus");
    }
    if (dims.has_value()) {
        if (*dims < max_term_bound) {
            throw std::invalid_argument("dims " + std::to_string(*dims) + " smaller than 1 + max term id " +
                                        std::to_string(max_term_bound - 1));
        }
        corpus.num_terms = *dims;
    } else {
        corpus.num_terms = static_cast<std::uint32_t>(max_term_bound);
    }
    corpus.num_classes = static_cast<std::uint32_t>(max_label_bound);
    return corpus;
}

Corpus
load_corpus(const std::string& path, std::optional<std::uint32_t> dims) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open corpus file '" + path + "'");
    }
    return parse_corpus(in, dims);
}

void
serialize_corpus(const Corpus& corpus, std::ostream& out) {
    for (const auto& labeled : corpus.docs) {
        out << labeled.label;
        for (std::size_t i = 0; i < labeled.doc.terms.size(); ++i) {
            out << ' ' << labeled.doc.terms[i] << ':' << labeled.doc.counts[i];
        }
        out << '\n';
    }
}

Document
to_binary(const Document& doc) {
    Document binary;
    binary.terms = doc.terms;
    binary.counts.assign(doc.counts.size(), 1);
    return binary;
}

Corpus
to_binary(const Corpus& corpus) {
    Corpus binary;
    binary.num_terms = corpus.num_terms;
    binary.num_classes = corpus.num_classes;
    binary.docs.reserve(corpus.docs.size());
    for (const auto& labeled : corpus.docs) {
        binary.docs.push_back({to_binary(labeled.doc), labeled.label});
    }
    return binary;
}

}  // namespace bowsim
