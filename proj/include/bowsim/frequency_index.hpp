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
#include <span>
#include <vector>

#include "bowsim/corpus.hpp"

namespace bowsim {

// Per-term collection statistics with cumulative frequency counts.
//
// For term i with maximum observed frequency m_i, cum(i)[j] is the number
// of collection documents whose frequency of i is <= j, for 0 <= j <= m_i.
// cum(i)[0] = N - n_i and cum(i)[m_i] = N. The arrays live in one flat
// buffer addressed through per-term offsets, so a frequency-range count is
// two loads and a subtraction.
class FrequencyIndex {
public:
    FrequencyIndex() = default;

    static FrequencyIndex build(const Corpus& corpus);
    // Builds over the sub-collection given by `doc_ids` (indices into
    // `corpus.docs`). The view must be non-empty.
    static FrequencyIndex build(const Corpus& corpus, std::span<const std::uint32_t> doc_ids);

    std::uint32_t
    num_docs() const {
        return num_docs_;
    }

    std::uint32_t
    num_terms() const {
        return num_terms_;
    }

    double
    avg_doc_length() const {
        return avg_doc_length_;
    }

    // n_i: documents containing the term. Zero for ids >= num_terms().
    std::uint32_t doc_freq(TermId t) const;

    // m_i: maximum observed frequency. Zero for unseen terms.
    std::uint32_t max_freq(TermId t) const;

    // Cumulative array of term t, size max_freq(t) + 1.
    std::span<const std::uint32_t> cum(TermId t) const;

    // |{z in collection : lo <= freq_z(t) <= hi}| in constant time.
    // Requires 1 <= lo <= hi; hi clamps to the observed maximum. Terms
    // never observed (including ids >= num_terms()) count zero.
    std::uint32_t range_count(TermId t, std::uint32_t lo, std::uint32_t hi) const;

    // |{z in collection : freq_z(t) <= j}|.
    std::uint32_t count_at_most(TermId t, std::uint32_t j) const;

    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;
    static FrequencyIndex load(std::istream& in);
    static FrequencyIndex load_file(const std::string& path);

    bool operator==(const FrequencyIndex&) const = default;

private:
    std::uint32_t num_docs_ = 0;
    std::uint32_t num_terms_ = 0;
    double avg_doc_length_ = 0.0;
    std::vector<std::uint32_t> doc_freq_;
    std::vector<std::uint32_t> max_freq_;
    std::vector<std::uint64_t> offsets_;  // size num_terms_ + 1
    std::vector<std::uint32_t> cum_;
};

}  // namespace bowsim
