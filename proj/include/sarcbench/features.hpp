#pragma once

// Text representation: word TF-IDF (unigram+bigram), character TF-IDF
// (3..5-grams) and five stylometric measurements, horizontally stacked
// into one non-negative sparse matrix. Fitting is deterministic; a
// fitted featurizer is immutable.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sarcbench/sparse.hpp"

namespace sarcbench {

struct TransparentStringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view sv) const noexcept {
        return std::hash<std::string_view>{}(sv);
    }
};

template <typename V>
using StringMap = std::unordered_map<std::string, V, TransparentStringHash, std::equal_to<>>;

class StopWordSet {
public:
    StopWordSet() = default;
    explicit StopWordSet(std::span<const std::string> words);
    explicit StopWordSet(std::span<const std::string_view> words);

    bool contains(std::string_view token) const { return words_.contains(token); }
    std::size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::string, TransparentStringHash, std::equal_to<>> words_;
};

// The embedded English list (see resources/stopwords_en_v1.txt).
std::vector<std::string> default_stop_word_list();
const StopWordSet& english_stop_words();

struct NgramRange {
    int lo = 1;
    int hi = 1;
};

struct FeaturizerConfig {
    std::size_t max_features_word = 20000;
    std::size_t max_features_char = 10000;
    NgramRange word_ngram_range{1, 2};
    NgramRange char_ngram_range{3, 5};
    bool lowercase = true;
    bool sublinear_tf = true;
    std::vector<std::string> stop_words = default_stop_word_list();
};

struct Vocabulary {
    StringMap<std::uint32_t> term_to_index;
    std::vector<std::string> terms;  // column -> term, lexicographically ascending
    std::vector<double> idf;         // column -> weight, each >= 1
    std::size_t doc_count = 0;       // N seen at fit time

    std::size_t size() const { return terms.size(); }
};

// Maximal runs of >= 2 Unicode word characters (letters, digits,
// underscore). The whole text is lowercased before scanning when the
// flag is set; stop words are removed after lowercasing.
std::vector<std::string> tokenize_words(std::string_view text, bool lowercase,
                                        const StopWordSet& stop_words);

// All contiguous n-grams for n in [lo, hi], shortest length first, in
// document order within each length; terms joined with single spaces.
std::vector<std::string> word_ngrams(std::span<const std::string> tokens, NgramRange range);

// Sliding codepoint windows over the (optionally lowercased) raw text,
// whitespace and punctuation included; no tokenization.
std::vector<std::string> char_ngrams(std::string_view text, NgramRange range, bool lowercase);

// Keeps the max_features most frequent terms by total occurrence count
// (ties: lexicographically smaller term wins), assigns columns in
// lexicographic term order, idf(t) = ln((1+N)/(1+df(t))) + 1.
Vocabulary fit_vocabulary(const std::vector<std::vector<std::string>>& docs,
                          std::size_t max_features);

// Per document: tf = occurrence count, weight = (1+ln tf)*idf under
// sublinear (tf*idf otherwise), row L2-normalized. Out-of-vocabulary
// terms are ignored.
CsrMatrix transform_tfidf(const Vocabulary& vocab,
                          const std::vector<std::vector<std::string>>& docs, bool sublinear);

// [chars, whitespace tokens + 1, '!'/words, '?'/words, upper/max(chars,1)],
// all measured on the raw text in Unicode scalars.
std::array<double, 5> stylometric_row(std::string_view text);
DenseMatrix stylometrics(std::span<const std::string> texts);

class FittedFeaturizer {
public:
    static FittedFeaturizer fit(const FeaturizerConfig& config,
                                std::span<const std::string> train_texts);

    // Rebuild from persisted parts; term_to_index is derived from terms.
    static FittedFeaturizer from_parts(FeaturizerConfig config, Vocabulary word_vocab,
                                       Vocabulary char_vocab);

    // hstack(word tf-idf, char tf-idf, stylometrics); width == total_width().
    CsrMatrix transform(std::span<const std::string> texts) const;

    const FeaturizerConfig& config() const { return config_; }
    const Vocabulary& word_vocab() const { return word_vocab_; }
    const Vocabulary& char_vocab() const { return char_vocab_; }
    std::size_t total_width() const { return word_vocab_.size() + char_vocab_.size() + 5; }

private:
    FittedFeaturizer() = default;

    FeaturizerConfig config_;
    StopWordSet stop_words_;
    Vocabulary word_vocab_;
    Vocabulary char_vocab_;
};

}  // namespace sarcbench
