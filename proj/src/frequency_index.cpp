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

#include "bowsim/frequency_index.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace bowsim {

namespace {

constexpr char kMagic[4] = {'B', 'W', 'F', 'I'};
constexpr std::uint32_t kVersion = 1;

void
write_u32(std::ostream& out, std::uint32_t v) {
    unsigned char bytes[4];
    for (int i = 0; i < 4; ++i) {
        bytes[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    }
    out.write(reinterpret_cast<const char*>(bytes), 4);
}

void
write_u64(std::ostream& out, std::uint64_t v) {
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) {
        bytes[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    }
    out.write(reinterpret_cast<const char*>(bytes), 8);
}

std::uint32_t
read_u32(std::istream& in) {
    unsigned char bytes[4];
    if (!in.read(reinterpret_cast<char*>(bytes), 4)) {
        throw std::runtime_error("index file: unexpected end of data");
    }
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
        v |= std::uint32_t{bytes[i]} << (8 * i);
    }
    return v;
}

std::uint64_t
read_u64(std::istream& in) {
    unsigned char bytes[8];
    if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
        throw std::runtime_error("index file: unexpected end of data");
    }
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= std::uint64_t{bytes[i]} << (8 * i);
    }
    return v;
}

}  // namespace

FrequencyIndex
FrequencyIndex::build(const Corpus& corpus) {
    std::vector<std::uint32_t> all(corpus.size());
    std::iota(all.begin(), all.end(), 0);
    return build(corpus, all);
}

FrequencyIndex
FrequencyIndex::build(const Corpus& corpus, std::span<const std::uint32_t> doc_ids) {
    if (doc_ids.empty()) {
        throw std::invalid_argument("frequency index: empty collection view");
    }
    FrequencyIndex index;
    index.num_docs_ = static_cast<std::uint32_t>(doc_ids.size());
    index.num_terms_ = corpus.num_terms;
    index.doc_freq_.assign(index.num_terms_, 0);
    index.max_freq_.assign(index.num_terms_, 0);

    std::uint64_t total_length = 0;
    for (std::uint32_t id : doc_ids) {
        if (id >= corpus.size()) {
            throw std::invalid_argument("frequency index: document id out of range");
        }
        const Document& doc = corpus.docs[id].doc;
        total_length += doc.length();
        for (std::size_t i = 0; i < doc.terms.size(); ++i) {
            TermId t = doc.terms[i];
            if (t >= index.num_terms_) {
                throw std::invalid_argument("frequency index: term id exceeds dictionary size");
            }
            ++index.doc_freq_[t];
            index.max_freq_[t] = std::max(index.max_freq_[t], doc.counts[i]);
        }
    }
    index.avg_doc_length_ = static_cast<double>(total_length) / static_cast<double>(index.num_docs_);

    index.offsets_.assign(index.num_terms_ + 1, 0);
    for (std::uint32_t t = 0; t < index.num_terms_; ++t) {
        index.offsets_[t + 1] = index.offsets_[t] + index.max_freq_[t] + 1;
    }
    index.cum_.assign(index.offsets_[index.num_terms_], 0);

    // Histogram pass: bucket j of term t counts documents with frequency
    // exactly j (j >= 1; bucket 0 is seeded with the zero-frequency count).
    for (std::uint32_t id : doc_ids) {
        const Document& doc = corpus.docs[id].doc;
        for (std::size_t i = 0; i < doc.terms.size(); ++i) {
            ++index.cum_[index.offsets_[doc.terms[i]] + doc.counts[i]];
        }
    }
    for (std::uint32_t t = 0; t < index.num_terms_; ++t) {
        std::uint32_t* f = index.cum_.data() + index.offsets_[t];
        f[0] = index.num_docs_ - index.doc_freq_[t];
        for (std::uint32_t j = 1; j <= index.max_freq_[t]; ++j) {
            f[j] += f[j - 1];
        }
    }
    return index;
}

std::uint32_t
FrequencyIndex::doc_freq(TermId t) const {
    return t < num_terms_ ? doc_freq_[t] : 0;
}

std::uint32_t
FrequencyIndex::max_freq(TermId t) const {
    return t < num_terms_ ? max_freq_[t] : 0;
}

std::span<const std::uint32_t>
FrequencyIndex::cum(TermId t) const {
    if (t >= num_terms_) {
        return {};
    }
    return {cum_.data() + offsets_[t], max_freq_[t] + std::size_t{1}};
}

std::uint32_t
FrequencyIndex::range_count(TermId t, std::uint32_t lo, std::uint32_t hi) const {
    if (lo < 1 || hi < lo) {
        throw std::invalid_argument("range_count: requires 1 <= lo <= hi");
    }
    if (t >= num_terms_) {
        return 0;
    }
    const std::uint32_t m = max_freq_[t];
    if (lo > m) {
        return 0;
    }
    const std::uint32_t* f = cum_.data() + offsets_[t];
    return f[std::min(hi, m)] - f[lo - 1];
}

std::uint32_t
FrequencyIndex::count_at_most(TermId t, std::uint32_t j) const {
    if (t >= num_terms_) {
        return num_docs_;
    }
    const std::uint32_t* f = cum_.data() + offsets_[t];
    return f[std::min(j, max_freq_[t])];
}

void
FrequencyIndex::save(std::ostream& out) const {
    out.write(kMagic, 4);
    write_u32(out, kVersion);
    write_u32(out, num_docs_);
    write_u32(out, num_terms_);
    write_u64(out, std::bit_cast<std::uint64_t>(avg_doc_length_));
    for (std::uint32_t t = 0; t < num_terms_; ++t) {
        write_u32(out, doc_freq_[t]);
        write_u32(out, max_freq_[t]);
        const std::uint32_t* f = cum_.data() + offsets_[t];
        for (std::uint32_t j = 0; j <= max_freq_[t]; ++j) {
            write_u32(out, f[j]);
        }
    }
    if (!out) {
        throw std::runtime_error("index file: write failed");
    }
}

void
FrequencyIndex::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open index file '" + path + "' for writing");
    }
    save(out);
}

FrequencyIndex
FrequencyIndex::load(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
        throw std::runtime_error("index file: bad magic");
    }
    const std::uint32_t version = read_u32(in);
    if (version != kVersion) {
        throw std::runtime_error("index file: unsupported version " + std::to_string(version));
    }
    FrequencyIndex index;
    index.num_docs_ = read_u32(in);
    index.num_terms_ = read_u32(in);
    index.avg_doc_length_ = std::bit_cast<double>(read_u64(in));
    index.doc_freq_.resize(index.num_terms_);
    index.max_freq_.resize(index.num_terms_);
    index.offsets_.assign(index.num_terms_ + 1, 0);
    std::vector<std::vector<std::uint32_t>> arrays(index.num_terms_);
    for (std::uint32_t t = 0; t < index.num_terms_; ++t) {
        index.doc_freq_[t] = read_u32(in);
        index.max_freq_[t] = read_u32(in);
        arrays[t].resize(index.max_freq_[t] + std::size_t{1});
        for (auto& v : arrays[t]) {
            v = read_u32(in);
        }
        index.offsets_[t + 1] = index.offsets_[t] + index.max_freq_[t] + 1;
    }
    index.cum_.reserve(index.offsets_[index.num_terms_]);
    for (auto& a : arrays) {
        index.cum_.insert(index.cum_.end(), a.begin(), a.end());
    }
    return index;
}

FrequencyIndex
FrequencyIndex::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open index file '" + path + "'");
    }
    return load(in);
}

}  // namespace bowsim
