#include "sarcbench/artifacts.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <ostream>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "sarcbench/errors.hpp"
#include "sarcbench/io.hpp"

namespace sarcbench {

namespace {

using nlohmann::ordered_json;

// ---------------------------------------------------------------------
// Writing. A minimal streaming emitter: no DOM, insertion order kept,
// numbers rendered by std::to_chars (shortest round-trip form), so
// identical content always produces identical bytes.

class JsonWriter {
public:
    explicit JsonWriter(std::ostream& out) : out_(out) {}

    void obj_begin() {
        before_value();
        out_.put('{');
        levels_.push_back({true, true});
    }
    void obj_end() {
        out_.put('}');
        levels_.pop_back();
    }
    void arr_begin() {
        before_value();
        out_.put('[');
        levels_.push_back({false, true});
    }
    void arr_end() {
        out_.put(']');
        levels_.pop_back();
    }

    void key(std::string_view k) {
        Level& level = levels_.back();
        if (!level.first) out_.put(',');
        level.first = false;
        write_string(k);
        out_.put(':');
    }

    void str(std::string_view s) {
        before_value();
        write_string(s);
    }
    void boolean(bool b) {
        before_value();
        out_ << (b ? "true" : "false");
    }
    void null() {
        before_value();
        out_ << "null";
    }
    void num(double v) {
        before_value();
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        out_.write(buf, res.ptr - buf);
    }
    void uint(std::uint64_t v) {
        before_value();
        char buf[24];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        out_.write(buf, res.ptr - buf);
    }
    void int_(std::int64_t v) {
        before_value();
        char buf[24];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        out_.write(buf, res.ptr - buf);
    }

private:
    struct Level {
        bool is_object;
        bool first;
    };

    void before_value() {
        if (levels_.empty()) return;
        Level& level = levels_.back();
        if (!level.is_object) {
            if (!level.first) out_.put(',');
            level.first = false;
        }
    }

    void write_string(std::string_view s) {
        out_.put('"');
        for (char ch : s) {
            const auto c = static_cast<unsigned char>(ch);
            switch (c) {
                case '"': out_ << "\\\""; break;
                case '\\': out_ << "\\\\"; break;
                case '\b': out_ << "\\b"; break;
                case '\f': out_ << "\\f"; break;
                case '\n': out_ << "\\n"; break;
                case '\r': out_ << "\\r"; break;
                case '\t': out_ << "\\t"; break;
                default:
                    if (c < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        out_ << buf;
                    } else {
                        out_.put(ch);
                    }
            }
        }
        out_.put('"');
    }

    std::ostream& out_;
    std::vector<Level> levels_;
};

void write_header(JsonWriter& w, std::string_view kind,
                  const std::optional<std::string>& created_at) {
    w.key("kind");
    w.str(kind);
    w.key("format_version");
    w.uint(kArtifactFormatVersion);
    w.key("created_at");
    if (created_at) {
        w.str(*created_at);
    } else {
        w.null();
    }
}

void write_provenance(JsonWriter& w, const Provenance& p) {
    w.key("provenance");
    w.obj_begin();
    w.key("seed");
    w.uint(p.seed);
    w.key("sample_size");
    w.uint(p.sample_size);
    w.key("test_fraction");
    w.num(p.test_fraction);
    w.key("corpus_fingerprint");
    w.str(p.corpus_fingerprint);
    w.obj_end();
}

void write_vocabulary(JsonWriter& w, const Vocabulary& v) {
    w.obj_begin();
    w.key("doc_count");
    w.uint(v.doc_count);
    w.key("terms");
    w.arr_begin();
    for (std::size_t i = 0; i < v.terms.size(); ++i) {
        w.obj_begin();
        w.key("term");
        w.str(v.terms[i]);
        w.key("index");
        w.uint(i);
        w.key("idf");
        w.num(v.idf[i]);
        w.obj_end();
    }
    w.arr_end();
    w.obj_end();
}

void write_featurizer(JsonWriter& w, const ModelArtifact& a) {
    w.key("featurizer");
    w.obj_begin();
    w.key("config");
    w.obj_begin();
    const FeaturizerConfig& c = a.featurizer_config;
    w.key("max_features_word");
    w.uint(c.max_features_word);
    w.key("max_features_char");
    w.uint(c.max_features_char);
    w.key("word_ngram_range");
    w.arr_begin();
    w.int_(c.word_ngram_range.lo);
    w.int_(c.word_ngram_range.hi);
    w.arr_end();
    w.key("char_ngram_range");
    w.arr_begin();
    w.int_(c.char_ngram_range.lo);
    w.int_(c.char_ngram_range.hi);
    w.arr_end();
    w.key("lowercase");
    w.boolean(c.lowercase);
    w.key("sublinear_tf");
    w.boolean(c.sublinear_tf);
    w.key("stop_words");
    w.arr_begin();
    for (const std::string& word : c.stop_words) w.str(word);
    w.arr_end();
    w.obj_end();
    w.key("word_vocab");
    write_vocabulary(w, a.word_vocab);
    w.key("char_vocab");
    write_vocabulary(w, a.char_vocab);
    w.obj_end();
}

void write_double_array(JsonWriter& w, std::span<const double> values) {
    w.arr_begin();
    for (double v : values) w.num(v);
    w.arr_end();
}

void write_model_block(JsonWriter& w, const ModelArtifact& a) {
    w.key("model");
    w.obj_begin();
    if (a.nb) {
        w.key("alpha");
        w.num(a.nb->alpha);
        w.key("class_log_prior");
        write_double_array(w, a.nb->class_log_prior);
        w.key("feature_log_prob");
        w.arr_begin();
        write_double_array(w, a.nb->feature_log_prob[0]);
        write_double_array(w, a.nb->feature_log_prob[1]);
        w.arr_end();
    } else if (a.linear) {
        w.key("weights");
        write_double_array(w, a.linear->weights);
        w.key("bias");
        w.num(a.linear->bias);
        w.key("converged");
        w.boolean(a.linear->converged);
        w.key("iterations");
        w.uint(a.linear->iterations);
    } else {
        w.key("seed");
        w.uint(a.forest->seed);
        w.key("n_features");
        w.uint(a.forest->n_features);
        w.key("trees");
        w.arr_begin();
        for (const Tree& tree : a.forest->trees) {
            w.obj_begin();
            w.key("feature");
            w.arr_begin();
            for (std::int32_t f : tree.feature) w.int_(f);
            w.arr_end();
            w.key("threshold");
            write_double_array(w, tree.threshold);
            w.key("left");
            w.arr_begin();
            for (std::uint32_t v : tree.left) w.uint(v);
            w.arr_end();
            w.key("right");
            w.arr_begin();
            for (std::uint32_t v : tree.right) w.uint(v);
            w.arr_end();
            w.key("count0");
            w.arr_begin();
            for (std::uint32_t v : tree.count0) w.uint(v);
            w.arr_end();
            w.key("count1");
            w.arr_begin();
            for (std::uint32_t v : tree.count1) w.uint(v);
            w.arr_end();
            w.obj_end();
        }
        w.arr_end();
    }
    w.obj_end();
}

void check_artifact_consistency(const ModelArtifact& a) {
    const int engaged = (a.nb ? 1 : 0) + (a.linear ? 1 : 0) + (a.forest ? 1 : 0);
    if (engaged != 1) {
        throw ArgumentError("model artifact must hold exactly one trained model");
    }
    const bool kind_matches = (a.kind == "nb" && a.nb) || (a.kind == "rf" && a.forest) ||
                              ((a.kind == "logreg" || a.kind == "svm") && a.linear);
    if (!kind_matches) {
        throw ArgumentError("model artifact kind '" + a.kind + "' does not match its payload");
    }
    if (a.linear) {
        const bool tag_matches = (a.kind == "logreg") ==
                                 (a.linear->kind == LinearKind::logistic);
        if (!tag_matches) {
            throw ArgumentError("linear model kind tag disagrees with artifact kind");
        }
    }
    for (const Vocabulary* v : {&a.word_vocab, &a.char_vocab}) {
        if (v->terms.size() != v->idf.size()) {
            throw ArgumentError("vocabulary terms/idf length mismatch");
        }
    }
    const std::size_t width = a.word_vocab.size() + a.char_vocab.size() + 5;
    std::size_t model_width = 0;
    if (a.nb) model_width = a.nb->n_features();
    if (a.linear) model_width = a.linear->weights.size();
    if (a.forest) model_width = a.forest->n_features;
    if (model_width != width) {
        throw ArgumentError("featurizer width " + std::to_string(width) +
                            " does not match model width " + std::to_string(model_width));
    }
}

// ---------------------------------------------------------------------
// Reading: one SAX handler covers every artifact kind, so forest node
// arrays stream directly into their vectors without an intermediate DOM.

struct ArtifactSax {
    using json = nlohmann::json;
    using number_integer_t = json::number_integer_t;
    using number_unsigned_t = json::number_unsigned_t;
    using number_float_t = json::number_float_t;
    using string_t = json::string_t;
    using binary_t = json::binary_t;

    enum class Ctx : std::uint8_t {
        Top,
        Provenance,
        Featurizer,
        Config,
        WordRange,
        CharRange,
        StopWords,
        WordVocab,
        CharVocab,
        WordTerms,
        CharTerms,
        TermObj,
        Model,
        NbPrior,
        NbProb,
        NbProbRow,
        LinWeights,
        Trees,
        TreeObj,
        TreeFeature,
        TreeThreshold,
        TreeLeft,
        TreeRight,
        TreeCount0,
        TreeCount1,
    };

    ModelArtifact art;
    std::vector<Ctx> stack;
    std::string cur_key;
    bool saw_version = false;

    Vocabulary* cur_vocab = nullptr;
    std::string term_term;
    std::uint64_t term_index = 0;
    double term_idf = 0.0;
    int term_fields = 0;

    std::size_t range_idx = 0;
    std::size_t prior_idx = 0;
    std::size_t nb_rows_done = 0;
    Tree cur_tree;

    [[noreturn]] static void fail(const std::string& msg) {
        throw FormatError("model artifact: " + msg);
    }

    Ctx ctx() const { return stack.empty() ? Ctx::Top : stack.back(); }

    bool start_object(std::size_t /*elements*/) {
        if (stack.empty()) {
            stack.push_back(Ctx::Top);
            return true;
        }
        switch (stack.back()) {
            case Ctx::Top:
                if (cur_key == "provenance") {
                    stack.push_back(Ctx::Provenance);
                } else if (cur_key == "featurizer") {
                    stack.push_back(Ctx::Featurizer);
                } else if (cur_key == "model") {
                    enter_model();
                } else {
                    fail("unexpected object for key '" + cur_key + "'");
                }
                break;
            case Ctx::Featurizer:
                if (cur_key == "config") {
                    stack.push_back(Ctx::Config);
                } else if (cur_key == "word_vocab") {
                    cur_vocab = &art.word_vocab;
                    stack.push_back(Ctx::WordVocab);
                } else if (cur_key == "char_vocab") {
                    cur_vocab = &art.char_vocab;
                    stack.push_back(Ctx::CharVocab);
                } else {
                    fail("unexpected featurizer key '" + cur_key + "'");
                }
                break;
            case Ctx::WordTerms:
            case Ctx::CharTerms:
                term_term.clear();
                term_fields = 0;
                stack.push_back(Ctx::TermObj);
                break;
            case Ctx::Trees:
                cur_tree = Tree{};
                stack.push_back(Ctx::TreeObj);
                break;
            default:
                fail("unexpected object");
        }
        return true;
    }

    void enter_model() {
        if (art.kind == "nb") {
            art.nb.emplace();
        } else if (art.kind == "logreg" || art.kind == "svm") {
            art.linear.emplace();
            art.linear->kind =
                art.kind == "logreg" ? LinearKind::logistic : LinearKind::svm;
        } else if (art.kind == "rf") {
            art.forest.emplace();
        } else if (art.kind.empty()) {
            fail("'kind' must appear before the model block");
        } else {
            fail("unknown artifact kind '" + art.kind + "'");
        }
        stack.push_back(Ctx::Model);
    }

    bool key(string_t& val) {
        cur_key = val;
        return true;
    }

    bool end_object() {
        switch (ctx()) {
            case Ctx::TermObj:
                if (term_fields != 7) fail("vocabulary entry must have term, index and idf");
                if (term_index != cur_vocab->terms.size()) {
                    fail("vocabulary indices must be contiguous and ascending");
                }
                cur_vocab->terms.push_back(std::move(term_term));
                cur_vocab->idf.push_back(term_idf);
                term_term = {};
                break;
            case Ctx::TreeObj: {
                const std::size_t nodes = cur_tree.feature.size();
                if (nodes == 0) fail("tree has no nodes");
                if (cur_tree.threshold.size() != nodes || cur_tree.left.size() != nodes ||
                    cur_tree.right.size() != nodes || cur_tree.count0.size() != nodes ||
                    cur_tree.count1.size() != nodes) {
                    fail("tree node arrays have mismatched lengths");
                }
                for (std::size_t i = 0; i < nodes; ++i) {
                    if (cur_tree.count0[i] + cur_tree.count1[i] == 0) {
                        fail("tree node with empty class counts");
                    }
                    if (cur_tree.feature[i] >= 0 &&
                        (cur_tree.left[i] >= nodes || cur_tree.right[i] >= nodes)) {
                        fail("tree child index out of range");
                    }
                }
                art.forest->trees.push_back(std::move(cur_tree));
                cur_tree = Tree{};
                break;
            }
            default:
                break;
        }
        if (!stack.empty()) stack.pop_back();
        return true;
    }

    bool start_array(std::size_t /*elements*/) {
        switch (ctx()) {
            case Ctx::Config:
                if (cur_key == "word_ngram_range") {
                    range_idx = 0;
                    stack.push_back(Ctx::WordRange);
                } else if (cur_key == "char_ngram_range") {
                    range_idx = 0;
                    stack.push_back(Ctx::CharRange);
                } else if (cur_key == "stop_words") {
                    art.featurizer_config.stop_words.clear();
                    stack.push_back(Ctx::StopWords);
                } else {
                    fail("unexpected config array '" + cur_key + "'");
                }
                break;
            case Ctx::WordVocab:
            case Ctx::CharVocab:
                if (cur_key != "terms") fail("unexpected vocabulary array '" + cur_key + "'");
                stack.push_back(stack.back() == Ctx::WordVocab ? Ctx::WordTerms
                                                               : Ctx::CharTerms);
                break;
            case Ctx::Model:
                if (art.nb && cur_key == "class_log_prior") {
                    prior_idx = 0;
                    stack.push_back(Ctx::NbPrior);
                } else if (art.nb && cur_key == "feature_log_prob") {
                    nb_rows_done = 0;
                    stack.push_back(Ctx::NbProb);
                } else if (art.linear && cur_key == "weights") {
                    stack.push_back(Ctx::LinWeights);
                } else if (art.forest && cur_key == "trees") {
                    stack.push_back(Ctx::Trees);
                } else {
                    fail("unexpected model array '" + cur_key + "'");
                }
                break;
            case Ctx::NbProb:
                if (nb_rows_done >= 2) fail("feature_log_prob must have exactly 2 rows");
                stack.push_back(Ctx::NbProbRow);
                break;
            case Ctx::TreeObj:
                if (cur_key == "feature") {
                    stack.push_back(Ctx::TreeFeature);
                } else if (cur_key == "threshold") {
                    stack.push_back(Ctx::TreeThreshold);
                } else if (cur_key == "left") {
                    stack.push_back(Ctx::TreeLeft);
                } else if (cur_key == "right") {
                    stack.push_back(Ctx::TreeRight);
                } else if (cur_key == "count0") {
                    stack.push_back(Ctx::TreeCount0);
                } else if (cur_key == "count1") {
                    stack.push_back(Ctx::TreeCount1);
                } else {
                    fail("unexpected tree array '" + cur_key + "'");
                }
                break;
            default:
                fail("unexpected array");
        }
        return true;
    }

    bool end_array() {
        switch (ctx()) {
            case Ctx::WordRange:
            case Ctx::CharRange:
                if (range_idx != 2) fail("n-gram range must have exactly 2 entries");
                break;
            case Ctx::NbPrior:
                if (prior_idx != 2) fail("class_log_prior must have exactly 2 entries");
                break;
            case Ctx::NbProbRow:
                ++nb_rows_done;
                break;
            case Ctx::NbProb:
                if (nb_rows_done != 2) fail("feature_log_prob must have exactly 2 rows");
                break;
            default:
                break;
        }
        if (!stack.empty()) stack.pop_back();
        return true;
    }

    bool handle_number(double v) {
        switch (ctx()) {
            case Ctx::Top:
                if (cur_key == "format_version") {
                    if (v != static_cast<double>(kArtifactFormatVersion)) {
                        fail("unsupported format_version " + std::to_string(v) +
                             " (this build reads version " +
                             std::to_string(kArtifactFormatVersion) + ")");
                    }
                    saw_version = true;
                } else {
                    fail("unexpected number for key '" + cur_key + "'");
                }
                break;
            case Ctx::Provenance:
                if (cur_key == "seed") {
                    art.provenance.seed = to_u64(v);
                } else if (cur_key == "sample_size") {
                    art.provenance.sample_size = to_u64(v);
                } else if (cur_key == "test_fraction") {
                    art.provenance.test_fraction = v;
                } else {
                    fail("unexpected provenance key '" + cur_key + "'");
                }
                break;
            case Ctx::Config:
                if (cur_key == "max_features_word") {
                    art.featurizer_config.max_features_word = to_u64(v);
                } else if (cur_key == "max_features_char") {
                    art.featurizer_config.max_features_char = to_u64(v);
                } else {
                    fail("unexpected config key '" + cur_key + "'");
                }
                break;
            case Ctx::WordRange:
            case Ctx::CharRange: {
                NgramRange& r = ctx() == Ctx::WordRange
                                    ? art.featurizer_config.word_ngram_range
                                    : art.featurizer_config.char_ngram_range;
                if (range_idx == 0) {
                    r.lo = static_cast<int>(v);
                } else if (range_idx == 1) {
                    r.hi = static_cast<int>(v);
                } else {
                    fail("n-gram range has more than 2 entries");
                }
                ++range_idx;
                break;
            }
            case Ctx::WordVocab:
            case Ctx::CharVocab:
                if (cur_key == "doc_count") {
                    cur_vocab->doc_count = to_u64(v);
                } else {
                    fail("unexpected vocabulary key '" + cur_key + "'");
                }
                break;
            case Ctx::TermObj:
                if (cur_key == "index") {
                    term_index = to_u64(v);
                    term_fields |= 2;
                } else if (cur_key == "idf") {
                    term_idf = v;
                    term_fields |= 4;
                } else {
                    fail("unexpected vocabulary entry key '" + cur_key + "'");
                }
                break;
            case Ctx::Model:
                if (art.nb && cur_key == "alpha") {
                    art.nb->alpha = v;
                } else if (art.linear && cur_key == "bias") {
                    art.linear->bias = v;
                } else if (art.linear && cur_key == "iterations") {
                    art.linear->iterations = to_u64(v);
                } else if (art.forest && cur_key == "seed") {
                    art.forest->seed = to_u64(v);
                } else if (art.forest && cur_key == "n_features") {
                    art.forest->n_features = to_u64(v);
                } else {
                    fail("unexpected model key '" + cur_key + "'");
                }
                break;
            case Ctx::NbPrior:
                if (prior_idx >= 2) fail("class_log_prior has more than 2 entries");
                art.nb->class_log_prior[prior_idx++] = v;
                break;
            case Ctx::NbProbRow:
                art.nb->feature_log_prob[nb_rows_done].push_back(v);
                break;
            case Ctx::LinWeights:
                art.linear->weights.push_back(v);
                break;
            case Ctx::TreeFeature:
                cur_tree.feature.push_back(static_cast<std::int32_t>(v));
                break;
            case Ctx::TreeThreshold:
                cur_tree.threshold.push_back(v);
                break;
            case Ctx::TreeLeft:
                cur_tree.left.push_back(to_u32(v));
                break;
            case Ctx::TreeRight:
                cur_tree.right.push_back(to_u32(v));
                break;
            case Ctx::TreeCount0:
                cur_tree.count0.push_back(to_u32(v));
                break;
            case Ctx::TreeCount1:
                cur_tree.count1.push_back(to_u32(v));
                break;
            default:
                fail("unexpected number");
        }
        return true;
    }

    static std::uint64_t to_u64(double v) {
        if (v < 0.0 || v != std::floor(v)) fail("expected a non-negative integer");
        return static_cast<std::uint64_t>(v);
    }

    static std::uint32_t to_u32(double v) {
        const std::uint64_t u = to_u64(v);
        if (u > std::numeric_limits<std::uint32_t>::max()) fail("integer out of range");
        return static_cast<std::uint32_t>(u);
    }

    bool number_integer(number_integer_t val) { return handle_number(static_cast<double>(val)); }
    bool number_unsigned(number_unsigned_t val) {
        return handle_number(static_cast<double>(val));
    }
    bool number_float(number_float_t val, const string_t& /*s*/) { return handle_number(val); }

    bool string(string_t& val) {
        switch (ctx()) {
            case Ctx::Top:
                if (cur_key == "kind") {
                    art.kind = val;
                } else if (cur_key == "created_at") {
                    art.created_at = val;
                } else {
                    fail("unexpected string for key '" + cur_key + "'");
                }
                break;
            case Ctx::Provenance:
                if (cur_key == "corpus_fingerprint") {
                    art.provenance.corpus_fingerprint = val;
                } else {
                    fail("unexpected provenance string '" + cur_key + "'");
                }
                break;
            case Ctx::StopWords:
                art.featurizer_config.stop_words.push_back(val);
                break;
            case Ctx::TermObj:
                if (cur_key == "term") {
                    term_term = std::move(val);
                    term_fields |= 1;
                } else {
                    fail("unexpected vocabulary entry string '" + cur_key + "'");
                }
                break;
            default:
                fail("unexpected string");
        }
        return true;
    }

    bool boolean(bool val) {
        switch (ctx()) {
            case Ctx::Config:
                if (cur_key == "lowercase") {
                    art.featurizer_config.lowercase = val;
                } else if (cur_key == "sublinear_tf") {
                    art.featurizer_config.sublinear_tf = val;
                } else {
                    fail("unexpected config boolean '" + cur_key + "'");
                }
                break;
            case Ctx::Model:
                if (art.linear && cur_key == "converged") {
                    art.linear->converged = val;
                } else {
                    fail("unexpected model boolean '" + cur_key + "'");
                }
                break;
            default:
                fail("unexpected boolean");
        }
        return true;
    }

    bool null() {
        if (ctx() == Ctx::Top && cur_key == "created_at") {
            art.created_at.reset();
            return true;
        }
        fail("unexpected null");
    }

    bool binary(binary_t& /*val*/) { fail("unexpected binary value"); }

    bool parse_error(std::size_t position, const std::string& /*last_token*/,
                     const nlohmann::detail::exception& ex) {
        fail("malformed JSON at byte " + std::to_string(position) + ": " + ex.what());
    }
};

// ---------------------------------------------------------------------
// DOM helpers for the small documents (manifest, metrics).

ordered_json parse_document(const std::filesystem::path& path, std::string_view expected_kind) {
    const std::string bytes = read_file(path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(bytes);
    } catch (const nlohmann::detail::exception& e) {
        throw FormatError(path.string() + ": malformed JSON: " + e.what());
    }
    if (!doc.is_object()) throw FormatError(path.string() + ": expected a JSON object");
    if (doc.value("kind", std::string()) != expected_kind) {
        throw FormatError(path.string() + ": expected kind '" + std::string(expected_kind) +
                          "'");
    }
    if (!doc.contains("format_version") || !doc["format_version"].is_number_integer()) {
        throw FormatError(path.string() + ": missing format_version");
    }
    const auto version = doc["format_version"].get<std::int64_t>();
    if (version != kArtifactFormatVersion) {
        throw FormatError(path.string() + ": unsupported format_version " +
                          std::to_string(version) + " (this build reads version " +
                          std::to_string(kArtifactFormatVersion) + ")");
    }
    return doc;
}

template <typename T>
T get_field(const ordered_json& j, const char* key) {
    if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::detail::exception&) {
        throw FormatError(std::string("field '") + key + "' has the wrong type");
    }
}

std::optional<std::string> get_created_at(const ordered_json& j) {
    if (!j.contains("created_at")) throw FormatError("missing field 'created_at'");
    if (j.at("created_at").is_null()) return std::nullopt;
    return get_field<std::string>(j, "created_at");
}

Provenance parse_provenance(const ordered_json& j) {
    const ordered_json block = get_field<ordered_json>(j, "provenance");
    Provenance p;
    p.seed = get_field<std::uint64_t>(block, "seed");
    p.sample_size = get_field<std::uint64_t>(block, "sample_size");
    p.test_fraction = get_field<double>(block, "test_fraction");
    p.corpus_fingerprint = get_field<std::string>(block, "corpus_fingerprint");
    return p;
}

void write_report(JsonWriter& w, const EvalReport& r) {
    w.obj_begin();
    w.key("accuracy");
    w.num(r.accuracy);
    w.key("confusion");
    w.obj_begin();
    w.key("tn");
    w.uint(r.confusion.tn);
    w.key("fp");
    w.uint(r.confusion.fp);
    w.key("fn");
    w.uint(r.confusion.fn);
    w.key("tp");
    w.uint(r.confusion.tp);
    w.obj_end();
    for (int c = 0; c < 2; ++c) {
        w.key(c == 0 ? "class0" : "class1");
        w.obj_begin();
        w.key("precision");
        w.num(r.per_class[c].precision);
        w.key("recall");
        w.num(r.per_class[c].recall);
        w.key("f1");
        w.num(r.per_class[c].f1);
        w.obj_end();
    }
    w.key("roc");
    if (r.roc) {
        w.obj_begin();
        w.key("auc");
        w.num(r.roc->auc);
        w.key("points");
        w.arr_begin();
        for (const auto& [x, y] : r.roc->points) {
            w.arr_begin();
            w.num(x);
            w.num(y);
            w.arr_end();
        }
        w.arr_end();
        w.obj_end();
    } else {
        w.null();
    }
    w.obj_end();
}

EvalReport parse_report(const ordered_json& j) {
    EvalReport r;
    r.accuracy = get_field<double>(j, "accuracy");
    const ordered_json cm = get_field<ordered_json>(j, "confusion");
    r.confusion.tn = get_field<std::uint64_t>(cm, "tn");
    r.confusion.fp = get_field<std::uint64_t>(cm, "fp");
    r.confusion.fn = get_field<std::uint64_t>(cm, "fn");
    r.confusion.tp = get_field<std::uint64_t>(cm, "tp");
    for (int c = 0; c < 2; ++c) {
        const ordered_json block = get_field<ordered_json>(j, c == 0 ? "class0" : "class1");
        r.per_class[c].precision = get_field<double>(block, "precision");
        r.per_class[c].recall = get_field<double>(block, "recall");
        r.per_class[c].f1 = get_field<double>(block, "f1");
    }
    if (!j.contains("roc")) throw FormatError("missing field 'roc'");
    if (!j.at("roc").is_null()) {
        const ordered_json roc = j.at("roc");
        RocCurve curve;
        curve.auc = get_field<double>(roc, "auc");
        for (const auto& pt : get_field<ordered_json>(roc, "points")) {
            if (!pt.is_array() || pt.size() != 2) {
                throw FormatError("roc points must be [fpr, tpr] pairs");
            }
            curve.points.emplace_back(pt[0].get<double>(), pt[1].get<double>());
        }
        r.roc = std::move(curve);
    }
    return r;
}

}  // namespace

void save_model_artifact(const std::filesystem::path& path, const ModelArtifact& artifact) {
    check_artifact_consistency(artifact);
    atomic_write_stream(path, [&](std::ostream& out) {
        JsonWriter w(out);
        w.obj_begin();
        write_header(w, artifact.kind, artifact.created_at);
        write_provenance(w, artifact.provenance);
        write_featurizer(w, artifact);
        write_model_block(w, artifact);
        w.obj_end();
    });
}

ModelArtifact load_model_artifact(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());

    ArtifactSax handler;
    nlohmann::json::sax_parse(in, &handler);
    if (!handler.saw_version) {
        throw FormatError(path.string() + ": missing format_version");
    }
    ModelArtifact art = std::move(handler.art);
    try {
        check_artifact_consistency(art);
    } catch (const ArgumentError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    return art;
}

void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
    atomic_write_stream(path, [&](std::ostream& out) {
        JsonWriter w(out);
        w.obj_begin();
        write_header(w, "manifest", manifest.created_at);
        w.key("input_path");
        w.str(manifest.input_path);
        w.key("corpus_fingerprint");
        w.str(manifest.corpus_fingerprint);
        w.key("seed");
        w.uint(manifest.seed);
        w.key("sample_size");
        w.uint(manifest.sample_size);
        w.key("test_fraction");
        w.num(manifest.test_fraction);
        w.key("loaded_rows");
        w.uint(manifest.loaded_rows);
        w.key("skipped_lines");
        w.uint(manifest.skipped_lines);
        w.key("dropped_labels");
        w.uint(manifest.dropped_labels);
        w.key("removed_blank");
        w.uint(manifest.removed_blank);
        for (int part = 0; part < 2; ++part) {
            const SplitCounts& counts = part == 0 ? manifest.train : manifest.test;
            w.key(part == 0 ? "train" : "test");
            w.obj_begin();
            w.key("total");
            w.uint(counts.total);
            w.key("class0");
            w.uint(counts.class0);
            w.key("class1");
            w.uint(counts.class1);
            w.obj_end();
        }
        w.obj_end();
    });
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
    const ordered_json doc = parse_document(path, "manifest");
    DatasetManifest m;
    m.created_at = get_created_at(doc);
    m.input_path = get_field<std::string>(doc, "input_path");
    m.corpus_fingerprint = get_field<std::string>(doc, "corpus_fingerprint");
    m.seed = get_field<std::uint64_t>(doc, "seed");
    m.sample_size = get_field<std::uint64_t>(doc, "sample_size");
    m.test_fraction = get_field<double>(doc, "test_fraction");
    m.loaded_rows = get_field<std::uint64_t>(doc, "loaded_rows");
    m.skipped_lines = get_field<std::uint64_t>(doc, "skipped_lines");
    m.dropped_labels = get_field<std::uint64_t>(doc, "dropped_labels");
    m.removed_blank = get_field<std::uint64_t>(doc, "removed_blank");
    for (int part = 0; part < 2; ++part) {
        const ordered_json block = get_field<ordered_json>(doc, part == 0 ? "train" : "test");
        SplitCounts& counts = part == 0 ? m.train : m.test;
        counts.total = get_field<std::uint64_t>(block, "total");
        counts.class0 = get_field<std::uint64_t>(block, "class0");
        counts.class1 = get_field<std::uint64_t>(block, "class1");
    }
    return m;
}

void save_metrics_document(const std::filesystem::path& path, const MetricsDocument& doc) {
    atomic_write_stream(path, [&](std::ostream& out) {
        JsonWriter w(out);
        w.obj_begin();
        write_header(w, "metrics", doc.created_at);
        write_provenance(w, doc.provenance);
        w.key("models");
        w.obj_begin();
        for (const auto& [name, report] : doc.reports) {
            w.key(name);
            write_report(w, report);
        }
        w.obj_end();
        w.obj_end();
    });
}

MetricsDocument load_metrics_document(const std::filesystem::path& path) {
    const ordered_json doc = parse_document(path, "metrics");
    MetricsDocument m;
    m.created_at = get_created_at(doc);
    m.provenance = parse_provenance(doc);
    const ordered_json models = get_field<ordered_json>(doc, "models");
    if (!models.is_object()) throw FormatError(path.string() + ": 'models' must be an object");
    for (const auto& [name, block] : models.items()) {
        try {
            m.reports.emplace_back(name, parse_report(block));
        } catch (const FormatError& e) {
            throw FormatError(path.string() + ": model '" + name + "': " + e.what());
        }
    }
    return m;
}

}  // namespace sarcbench
