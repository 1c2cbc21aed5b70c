#include "sarcbench/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sarcbench/errors.hpp"
#include "sarcbench/stopwords.hpp"
#include "sarcbench/unicode.hpp"

namespace sarcbench {

namespace {

void validate_config(const FeaturizerConfig& cfg) {
    auto check_range = [](NgramRange r, const char* name) {
        if (r.lo < 1 || r.lo > r.hi) {
            throw ArgumentError(std::string(name) + " n-gram range must satisfy 1 <= lo <= hi");
        }
    };
    check_range(cfg.word_ngram_range, "word");
    check_range(cfg.char_ngram_range, "char");
    if (cfg.max_features_word < 1 || cfg.max_features_char < 1) {
        throw ArgumentError("max_features must be >= 1");
    }
}

// Streaming occurrence/document-frequency accumulator. last_doc lets one
// pass maintain df without a per-document term set.
class VocabCounter {
public:
    void add_doc(std::span<const std::string> terms) {
        const std::size_t doc = docs_seen_++;
        for (const std::string& term : terms) {
            Stats& s = stats_[term];
            ++s.count;
            if (s.last_doc != doc) {
                s.last_doc = doc;
                ++s.df;
            }
        }
    }

    Vocabulary finish(std::size_t max_features) && {
        struct Row {
            std::string term;
            std::uint64_t count;
            std::uint64_t df;
        };
        std::vector<Row> rows;
        rows.reserve(stats_.size());
        for (auto& [term, s] : stats_) rows.push_back({term, s.count, s.df});
        stats_.clear();

        // Higher count first; lexicographically smaller wins a tie.
        auto better = [](const Row& a, const Row& b) {
            if (a.count != b.count) return a.count > b.count;
            return a.term < b.term;
        };
        if (rows.size() > max_features) {
            std::nth_element(rows.begin(), rows.begin() + max_features - 1, rows.end(), better);
            // nth_element leaves ties straddling the cut unordered; settle
            // the kept prefix exactly before truncating.
            std::sort(rows.begin(), rows.end(), better);
            rows.resize(max_features);
        }
        std::sort(rows.begin(), rows.end(),
                  [](const Row& a, const Row& b) { return a.term < b.term; });

        Vocabulary vocab;
        vocab.doc_count = docs_seen_;
        vocab.terms.reserve(rows.size());
        vocab.idf.reserve(rows.size());
        const double n = static_cast<double>(docs_seen_);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            vocab.terms.push_back(std::move(rows[i].term));
            vocab.idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(rows[i].df))) +
                                1.0);
            vocab.term_to_index.emplace(vocab.terms.back(), static_cast<std::uint32_t>(i));
        }
        return vocab;
    }

    std::size_t docs_seen() const { return docs_seen_; }

private:
    struct Stats {
        std::uint64_t count = 0;
        std::uint64_t df = 0;
        std::size_t last_doc = std::numeric_limits<std::size_t>::max();
    };
    StringMap<Stats> stats_;
    std::size_t docs_seen_ = 0;
};

void append_tfidf_row(const Vocabulary& vocab, std::span<const std::string> terms,
                      bool sublinear, CsrBuilder& builder) {
    std::vector<std::uint32_t> cols;
    cols.reserve(terms.size());
    for (const std::string& term : terms) {
        auto it = vocab.term_to_index.find(term);
        if (it != vocab.term_to_index.end()) cols.push_back(it->second);
    }
    std::sort(cols.begin(), cols.end());

    std::vector<std::pair<std::uint32_t, double>> entries;
    std::size_t i = 0;
    double sum_sq = 0.0;
    while (i < cols.size()) {
        std::size_t j = i;
        while (j < cols.size() && cols[j] == cols[i]) ++j;
        const auto tf = static_cast<double>(j - i);
        double w = sublinear ? 1.0 + std::log(tf) : tf;
        w *= vocab.idf[cols[i]];
        entries.emplace_back(cols[i], w);
        sum_sq += w * w;
        i = j;
    }
    if (sum_sq > 0.0) {
        const double inv = 1.0 / std::sqrt(sum_sq);
        for (auto& [col, w] : entries) w *= inv;
    }
    builder.add_row(entries);
}

}  // namespace

StopWordSet::StopWordSet(std::span<const std::string> words)
    : words_(words.begin(), words.end()) {}

StopWordSet::StopWordSet(std::span<const std::string_view> words) {
    for (std::string_view w : words) words_.emplace(w);
}

std::vector<std::string> default_stop_word_list() {
    return {std::begin(kEnglishStopWords), std::end(kEnglishStopWords)};
}

const StopWordSet& english_stop_words() {
    static const StopWordSet set{std::span<const std::string_view>(kEnglishStopWords)};
    return set;
}

std::vector<std::string> tokenize_words(std::string_view text, bool lowercase,
                                        const StopWordSet& stop_words) {
    std::u32string cps = uni::decode_utf8(text);
    if (lowercase) cps = uni::to_lower(cps);

    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < cps.size()) {
        if (!uni::is_word_char(cps[i])) {
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        while (j < cps.size() && uni::is_word_char(cps[j])) ++j;
        if (j - i >= 2) {
            std::string token = uni::encode_utf8({cps.data() + i, j - i});
            if (!stop_words.contains(token)) tokens.push_back(std::move(token));
        }
        i = j;
    }
    return tokens;
}

std::vector<std::string> word_ngrams(std::span<const std::string> tokens, NgramRange range) {
    std::vector<std::string> grams;
    for (int n = range.lo; n <= range.hi; ++n) {
        if (static_cast<std::size_t>(n) > tokens.size()) break;
        for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
            std::string gram = tokens[i];
            for (std::size_t k = 1; k < static_cast<std::size_t>(n); ++k) {
                gram += ' ';
                gram += tokens[i + k];
            }
            grams.push_back(std::move(gram));
        }
    }
    return grams;
}

std::vector<std::string> char_ngrams(std::string_view text, NgramRange range, bool lowercase) {
    std::u32string cps = uni::decode_utf8(text);
    if (lowercase) cps = uni::to_lower(cps);

    std::vector<std::string> grams;
    for (int n = range.lo; n <= range.hi; ++n) {
        if (static_cast<std::size_t>(n) > cps.size()) break;
        for (std::size_t i = 0; i + n <= cps.size(); ++i) {
            grams.push_back(uni::encode_utf8({cps.data() + i, static_cast<std::size_t>(n)}));
        }
    }
    return grams;
}

Vocabulary fit_vocabulary(const std::vector<std::vector<std::string>>& docs,
                          std::size_t max_features) {
    if (docs.empty()) throw TrainError("cannot fit a vocabulary on an empty document list");
    VocabCounter counter;
    for (const auto& doc : docs) counter.add_doc(doc);
    return std::move(counter).finish(max_features);
}

CsrMatrix transform_tfidf(const Vocabulary& vocab,
                          const std::vector<std::vector<std::string>>& docs, bool sublinear) {
    CsrBuilder builder(vocab.size());
    for (const auto& doc : docs) append_tfidf_row(vocab, doc, sublinear, builder);
    return builder.finish();
}

std::array<double, 5> stylometric_row(std::string_view text) {
    const std::u32string cps = uni::decode_utf8(text);
    std::size_t tokens = 0;
    std::size_t exclaim = 0;
    std::size_t question = 0;
    std::size_t upper = 0;
    bool in_token = false;
    for (char32_t cp : cps) {
        const bool space = uni::is_space(cp);
        if (!space && !in_token) ++tokens;
        in_token = !space;
        if (cp == U'!') ++exclaim;
        if (cp == U'?') ++question;
        if (uni::is_upper(cp)) ++upper;
    }
    const auto chars = static_cast<double>(cps.size());
    const double words = static_cast<double>(tokens) + 1.0;
    return {chars, words, static_cast<double>(exclaim) / words,
            static_cast<double>(question) / words,
            static_cast<double>(upper) / std::max(chars, 1.0)};
}

DenseMatrix stylometrics(std::span<const std::string> texts) {
    DenseMatrix m(texts.size(), 5);
    for (std::size_t i = 0; i < texts.size(); ++i) {
        const auto row = stylometric_row(texts[i]);
        std::copy(row.begin(), row.end(), m.values.begin() + static_cast<std::ptrdiff_t>(i * 5));
    }
    return m;
}

FittedFeaturizer FittedFeaturizer::fit(const FeaturizerConfig& config,
                                       std::span<const std::string> train_texts) {
    validate_config(config);
    if (train_texts.empty()) throw TrainError("cannot fit a featurizer on an empty text list");

    FittedFeaturizer f;
    f.config_ = config;
    f.stop_words_ = StopWordSet(std::span<const std::string>(config.stop_words));

    VocabCounter word_counter;
    VocabCounter char_counter;
    for (const std::string& text : train_texts) {
        const auto tokens = tokenize_words(text, config.lowercase, f.stop_words_);
        word_counter.add_doc(word_ngrams(tokens, config.word_ngram_range));
        char_counter.add_doc(char_ngrams(text, config.char_ngram_range, config.lowercase));
    }
    f.word_vocab_ = std::move(word_counter).finish(config.max_features_word);
    f.char_vocab_ = std::move(char_counter).finish(config.max_features_char);
    return f;
}

FittedFeaturizer FittedFeaturizer::from_parts(FeaturizerConfig config, Vocabulary word_vocab,
                                              Vocabulary char_vocab) {
    validate_config(config);
    for (Vocabulary* v : {&word_vocab, &char_vocab}) {
        if (v->term_to_index.empty() && !v->terms.empty()) {
            for (std::size_t i = 0; i < v->terms.size(); ++i) {
                v->term_to_index.emplace(v->terms[i], static_cast<std::uint32_t>(i));
            }
        }
        if (v->terms.size() != v->idf.size() || v->term_to_index.size() != v->terms.size()) {
            throw FormatError("vocabulary terms/idf/index sizes disagree");
        }
    }
    FittedFeaturizer f;
    f.config_ = std::move(config);
    f.stop_words_ = StopWordSet(std::span<const std::string>(f.config_.stop_words));
    f.word_vocab_ = std::move(word_vocab);
    f.char_vocab_ = std::move(char_vocab);
    return f;
}

CsrMatrix FittedFeaturizer::transform(std::span<const std::string> texts) const {
    CsrBuilder word_builder(word_vocab_.size());
    CsrBuilder char_builder(char_vocab_.size());
    DenseMatrix stylo(texts.size(), 5);

    for (std::size_t i = 0; i < texts.size(); ++i) {
        const std::string& text = texts[i];
        const auto tokens = tokenize_words(text, config_.lowercase, stop_words_);
        append_tfidf_row(word_vocab_, word_ngrams(tokens, config_.word_ngram_range),
                         config_.sublinear_tf, word_builder);
        append_tfidf_row(char_vocab_, char_ngrams(text, config_.char_ngram_range, config_.lowercase),
                         config_.sublinear_tf, char_builder);
        const auto row = stylometric_row(text);
        std::copy(row.begin(), row.end(),
                  stylo.values.begin() + static_cast<std::ptrdiff_t>(i * 5));
    }

    const CsrMatrix word_block = word_builder.finish();
    const CsrMatrix char_block = char_builder.finish();
    const CsrMatrix stylo_block = to_csr(stylo);
    return hstack({&word_block, &char_block, &stylo_block});
}

}  // namespace sarcbench
