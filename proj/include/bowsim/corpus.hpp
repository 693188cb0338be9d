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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bowsim {

using TermId = std::uint32_t;

// Sparse bag-of-words document. Parallel arrays sorted by ascending term
// id; counts are strictly positive. A term absent from `terms` has
// frequency zero.
struct Document {
    std::vector<TermId> terms;
    std::vector<std::uint32_t> counts;

    // |T_x|, the number of distinct terms.
    std::size_t num_terms() const { return terms.size(); }

    // Total token count (sum of counts).
    std::uint64_t length() const;

    // Frequency of `t`, zero if absent.
    std::uint32_t count_of(TermId t) const;

    bool operator==(const Document&) const = default;

    // Canonical form from unordered (term, count) pairs. Throws
    // std::invalid_argument on duplicate term ids or zero counts.
    static Document from_pairs(std::span<const std::pair<TermId, std::uint32_t>> pairs);
};

struct LabeledDocument {
    Document doc;
    std::uint32_t label = 0;

    bool operator==(const LabeledDocument&) const = default;
};

struct Corpus {
    std::vector<LabeledDocument> docs;
    std::uint32_t num_terms = 0;    // dictionary size M; every term id < M
    std::uint32_t num_classes = 0;  // 1 + max label

    std::size_t size() const { return docs.size(); }

    bool operator==(const Corpus&) const = default;
};

// Parse error carrying the 1-based input line number (0 when the error is
// not tied to a single line).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);

    std::size_t
    line() const {
        return line_;
    }

private:
    std::size_t line_;
};

// Line-oriented corpus text format: one document per line,
//   <label> <termid>:<count> <termid>:<count> ...
// Lines whose first non-blank character is '#' and blank lines are
// skipped. Labels and term ids are non-negative integers, counts are
// strictly positive. Entries may appear in any order on the line;
// duplicate term ids are rejected.
//
// `dims` overrides the dictionary size; it must cover every term id seen.
// Without it, M = 1 + max term id. An input with no documents is an error.
Corpus parse_corpus(std::istream& in, std::optional<std::uint32_t> dims = std::nullopt);
Corpus load_corpus(const std::string& path, std::optional<std::uint32_t> dims = std::nullopt);

void serialize_corpus(const Corpus& corpus, std::ostream& out);

// Parses one document line of the text format. The dictionary is not
// consulted; callers validate term ids against their own bound.
LabeledDocument parse_document_line(const std::string& line, std::size_t line_no = 0);

// Binary (set-of-words) projection: every stored count becomes 1.
Document to_binary(const Document& doc);
Corpus to_binary(const Corpus& corpus);

}  // namespace bowsim
