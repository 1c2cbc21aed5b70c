#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "sarcbench/artifacts.hpp"
#include "sarcbench/errors.hpp"
#include "sarcbench/eval.hpp"
#include "sarcbench/features.hpp"
#include "sarcbench/io.hpp"
#include "sarcbench/models.hpp"
#include "sarcbench/sparse.hpp"

using namespace sarcbench;
namespace fs = std::filesystem;

namespace {

fs::path test_dir() {
    const fs::path dir = fs::temp_directory_path() / "sarcbench_artifact_tests";
    fs::create_directories(dir);
    return dir;
}

const std::vector<std::string>& corpus() {
    static const std::vector<std::string> texts{
        "Oh great, another Monday morning!",
        "the meeting could have been an email",
        "WOW, what a fantastic idea??",
        "plain boring statement about weather",
        "sure, that will definitely work",
        "reasonable people can disagree here",
    };
    return texts;
}

const std::vector<int>& labels() {
    static const std::vector<int> y{1, 0, 1, 0, 1, 0};
    return y;
}

FeaturizerConfig small_config() {
    FeaturizerConfig cfg;
    cfg.max_features_word = 40;
    cfg.max_features_char = 60;
    return cfg;
}

ModelArtifact base_artifact(std::string kind, const FittedFeaturizer& fz) {
    ModelArtifact a;
    a.kind = std::move(kind);
    a.provenance.seed = 42;
    a.provenance.sample_size = 6;
    a.provenance.test_fraction = 0.25;
    a.provenance.corpus_fingerprint = "fnv1a64:00112233aabbccdd";
    a.featurizer_config = fz.config();
    a.word_vocab = fz.word_vocab();
    a.char_vocab = fz.char_vocab();
    return a;
}

ModelArtifact trained_artifact(const std::string& kind) {
    const FittedFeaturizer fz = FittedFeaturizer::fit(small_config(), corpus());
    const CsrMatrix X = fz.transform(corpus());
    ModelArtifact a = base_artifact(kind, fz);
    TrainConfig tc;
    tc.rf_trees = 8;
    if (kind == "nb") {
        a.nb = train_nb(X, labels(), 1.0);
    } else if (kind == "logreg") {
        a.linear = train_logreg(X, labels(), tc);
    } else if (kind == "svm") {
        a.linear = train_linear_svm(X, labels(), tc);
    } else {
        a.forest = train_random_forest(X, labels(), tc);
    }
    return a;
}

void check_vocab_equal(const Vocabulary& got, const Vocabulary& want) {
    CHECK(got.terms == want.terms);
    CHECK(got.idf == want.idf);
    CHECK(got.doc_count == want.doc_count);
}

// Bump the version field of a compactly serialized document.
std::string with_version_99(std::string bytes) {
    const std::string needle = "\"format_version\":1";
    const std::size_t pos = bytes.find(needle);
    REQUIRE(pos != std::string::npos);
    bytes.replace(pos, needle.size(), "\"format_version\":99");
    return bytes;
}

}  // namespace

TEST_CASE("model artifacts round-trip every model kind") {
    const fs::path dir = test_dir();
    for (const std::string kind : {"nb", "logreg", "svm", "rf"}) {
        CAPTURE(kind);
        const ModelArtifact a = trained_artifact(kind);
        const fs::path path = dir / ("roundtrip_" + kind + ".json");
        save_model_artifact(path, a);
        const ModelArtifact b = load_model_artifact(path);

        CHECK(b.kind == a.kind);
        CHECK_FALSE(b.created_at.has_value());
        CHECK(b.provenance.seed == a.provenance.seed);
        CHECK(b.provenance.sample_size == a.provenance.sample_size);
        CHECK(b.provenance.test_fraction == a.provenance.test_fraction);
        CHECK(b.provenance.corpus_fingerprint == a.provenance.corpus_fingerprint);

        CHECK(b.featurizer_config.max_features_word == a.featurizer_config.max_features_word);
        CHECK(b.featurizer_config.max_features_char == a.featurizer_config.max_features_char);
        CHECK(b.featurizer_config.word_ngram_range.lo == a.featurizer_config.word_ngram_range.lo);
        CHECK(b.featurizer_config.word_ngram_range.hi == a.featurizer_config.word_ngram_range.hi);
        CHECK(b.featurizer_config.char_ngram_range.lo == a.featurizer_config.char_ngram_range.lo);
        CHECK(b.featurizer_config.char_ngram_range.hi == a.featurizer_config.char_ngram_range.hi);
        CHECK(b.featurizer_config.lowercase == a.featurizer_config.lowercase);
        CHECK(b.featurizer_config.sublinear_tf == a.featurizer_config.sublinear_tf);
        CHECK(b.featurizer_config.stop_words == a.featurizer_config.stop_words);
        check_vocab_equal(b.word_vocab, a.word_vocab);
        check_vocab_equal(b.char_vocab, a.char_vocab);

        if (kind == "nb") {
            REQUIRE(b.nb.has_value());
            CHECK(b.nb->alpha == a.nb->alpha);
            CHECK(b.nb->class_log_prior == a.nb->class_log_prior);
            CHECK(b.nb->feature_log_prob[0] == a.nb->feature_log_prob[0]);
            CHECK(b.nb->feature_log_prob[1] == a.nb->feature_log_prob[1]);
        } else if (kind == "rf") {
            REQUIRE(b.forest.has_value());
            CHECK(b.forest->seed == a.forest->seed);
            CHECK(b.forest->n_features == a.forest->n_features);
            REQUIRE(b.forest->trees.size() == a.forest->trees.size());
            for (std::size_t t = 0; t < a.forest->trees.size(); ++t) {
                CHECK(b.forest->trees[t].feature == a.forest->trees[t].feature);
                CHECK(b.forest->trees[t].threshold == a.forest->trees[t].threshold);
                CHECK(b.forest->trees[t].left == a.forest->trees[t].left);
                CHECK(b.forest->trees[t].right == a.forest->trees[t].right);
                CHECK(b.forest->trees[t].count0 == a.forest->trees[t].count0);
                CHECK(b.forest->trees[t].count1 == a.forest->trees[t].count1);
            }
        } else {
            REQUIRE(b.linear.has_value());
            CHECK(b.linear->weights == a.linear->weights);
            CHECK(b.linear->bias == a.linear->bias);
            CHECK(b.linear->kind == a.linear->kind);
            CHECK(b.linear->converged == a.linear->converged);
            CHECK(b.linear->iterations == a.linear->iterations);
        }
    }
}

TEST_CASE("a reloaded artifact reproduces its predictions exactly") {
    const fs::path path = test_dir() / "predict_nb.json";
    const ModelArtifact a = trained_artifact("nb");
    save_model_artifact(path, a);
    const ModelArtifact b = load_model_artifact(path);

    const FittedFeaturizer original = FittedFeaturizer::fit(small_config(), corpus());
    const FittedFeaturizer rebuilt =
        FittedFeaturizer::from_parts(b.featurizer_config, b.word_vocab, b.char_vocab);
    const CsrMatrix x0 = original.transform(corpus());
    const CsrMatrix x1 = rebuilt.transform(corpus());
    CHECK(x1.row_offsets == x0.row_offsets);
    CHECK(x1.col_indices == x0.col_indices);
    CHECK(x1.values == x0.values);

    const DenseMatrix p0 = nb_predict_proba(*a.nb, x0);
    const DenseMatrix p1 = nb_predict_proba(*b.nb, x1);
    CHECK(p1.values == p0.values);
}

TEST_CASE("rewriting a loaded artifact is byte-stable") {
    const fs::path dir = test_dir();
    const fs::path first = dir / "stable_a.json";
    const fs::path second = dir / "stable_b.json";
    save_model_artifact(first, trained_artifact("logreg"));
    const ModelArtifact loaded = load_model_artifact(first);
    save_model_artifact(second, loaded);
    CHECK(read_file(first) == read_file(second));
}

TEST_CASE("created_at timestamps round-trip when present") {
    const fs::path path = test_dir() / "stamped.json";
    ModelArtifact a = trained_artifact("svm");
    a.created_at = "2026-08-19T12:34:56Z";
    save_model_artifact(path, a);
    const ModelArtifact b = load_model_artifact(path);
    REQUIRE(b.created_at.has_value());
    CHECK(*b.created_at == "2026-08-19T12:34:56Z");
}

TEST_CASE("loaders reject unknown format versions") {
    const fs::path dir = test_dir();

    const fs::path model_path = dir / "versioned_model.json";
    save_model_artifact(model_path, trained_artifact("nb"));
    atomic_write_file(model_path, with_version_99(read_file(model_path)));
    CHECK_THROWS_WITH_AS(load_model_artifact(model_path),
                         doctest::Contains("unsupported format_version"), FormatError);

    const fs::path manifest_path = dir / "versioned_manifest.json";
    save_manifest(manifest_path, DatasetManifest{});
    atomic_write_file(manifest_path, with_version_99(read_file(manifest_path)));
    CHECK_THROWS_WITH_AS(load_manifest(manifest_path),
                         doctest::Contains("unsupported format_version"), FormatError);
}

TEST_CASE("loaders reject the wrong document kind and malformed JSON") {
    const fs::path dir = test_dir();

    const fs::path manifest_path = dir / "kind_check_manifest.json";
    save_manifest(manifest_path, DatasetManifest{});
    CHECK_THROWS_WITH_AS(load_metrics_document(manifest_path),
                         doctest::Contains("expected kind"), FormatError);

    const fs::path junk = dir / "junk.json";
    atomic_write_file(junk, "{ this is not json");
    CHECK_THROWS_AS(load_manifest(junk), FormatError);
    CHECK_THROWS_AS(load_model_artifact(junk), FormatError);

    CHECK_THROWS_AS(load_model_artifact(dir / "does_not_exist.json"), IoError);
}

TEST_CASE("artifact consistency is enforced at save time") {
    const fs::path path = test_dir() / "rejected.json";

    ModelArtifact none = trained_artifact("nb");
    none.nb.reset();
    CHECK_THROWS_AS(save_model_artifact(path, none), ArgumentError);

    ModelArtifact mismatched = trained_artifact("nb");
    mismatched.kind = "rf";
    CHECK_THROWS_AS(save_model_artifact(path, mismatched), ArgumentError);

    ModelArtifact double_model = trained_artifact("nb");
    double_model.linear = LinearModel{};
    CHECK_THROWS_AS(save_model_artifact(path, double_model), ArgumentError);

    ModelArtifact wrong_tag = trained_artifact("logreg");
    wrong_tag.kind = "svm";
    CHECK_THROWS_AS(save_model_artifact(path, wrong_tag), ArgumentError);

    ModelArtifact ragged = trained_artifact("nb");
    ragged.word_vocab.idf.pop_back();
    CHECK_THROWS_AS(save_model_artifact(path, ragged), ArgumentError);

    ModelArtifact narrowed = trained_artifact("nb");
    narrowed.word_vocab.terms.pop_back();
    narrowed.word_vocab.idf.pop_back();
    CHECK_THROWS_AS(save_model_artifact(path, narrowed), ArgumentError);
}

TEST_CASE("dataset manifests round-trip every field") {
    const fs::path path = test_dir() / "manifest.json";
    DatasetManifest m;
    m.created_at = "2026-08-19T01:02:03Z";
    m.input_path = "data/corpus.tsv.bz2";
    m.corpus_fingerprint = "fnv1a64:deadbeef01234567";
    m.seed = 1234;
    m.sample_size = 100000;
    m.test_fraction = 0.2;
    m.loaded_rows = 100123;
    m.skipped_lines = 7;
    m.dropped_labels = 55;
    m.removed_blank = 3;
    m.train = SplitCounts{80000, 40001, 39999};
    m.test = SplitCounts{20000, 9999, 10001};
    save_manifest(path, m);

    const DatasetManifest r = load_manifest(path);
    CHECK(r.created_at == m.created_at);
    CHECK(r.input_path == m.input_path);
    CHECK(r.corpus_fingerprint == m.corpus_fingerprint);
    CHECK(r.seed == m.seed);
    CHECK(r.sample_size == m.sample_size);
    CHECK(r.test_fraction == m.test_fraction);
    CHECK(r.loaded_rows == m.loaded_rows);
    CHECK(r.skipped_lines == m.skipped_lines);
    CHECK(r.dropped_labels == m.dropped_labels);
    CHECK(r.removed_blank == m.removed_blank);
    CHECK(r.train.total == m.train.total);
    CHECK(r.train.class0 == m.train.class0);
    CHECK(r.train.class1 == m.train.class1);
    CHECK(r.test.total == m.test.total);
    CHECK(r.test.class0 == m.test.class0);
    CHECK(r.test.class1 == m.test.class1);
}

TEST_CASE("metrics documents preserve model order and roc blocks") {
    const fs::path path = test_dir() / "metrics.json";
    MetricsDocument doc;
    doc.provenance.seed = 7;
    doc.provenance.sample_size = 3;
    doc.provenance.test_fraction = 0.5;
    doc.provenance.corpus_fingerprint = "fnv1a64:aaaabbbbccccdddd";

    const std::vector<int> y_true{1, 0, 1};
    const std::vector<int> y_pred{1, 0, 0};
    const std::vector<double> scores{0.9, 0.2, 0.4};
    doc.reports.emplace_back("svm", evaluate(y_true, y_pred));
    doc.reports.emplace_back("logreg", evaluate(y_true, y_pred, scores));
    save_metrics_document(path, doc);

    const MetricsDocument r = load_metrics_document(path);
    CHECK_FALSE(r.created_at.has_value());
    CHECK(r.provenance.seed == 7);
    CHECK(r.provenance.corpus_fingerprint == doc.provenance.corpus_fingerprint);
    REQUIRE(r.reports.size() == 2);
    CHECK(r.reports[0].first == "svm");  // insertion order survives the file
    CHECK(r.reports[1].first == "logreg");

    const EvalReport& svm = r.reports[0].second;
    CHECK(svm.accuracy == doc.reports[0].second.accuracy);
    CHECK(svm.confusion.tp == 1);
    CHECK(svm.confusion.tn == 1);
    CHECK(svm.confusion.fn == 1);
    CHECK(svm.confusion.fp == 0);
    CHECK(svm.per_class[1].f1 == doc.reports[0].second.per_class[1].f1);
    CHECK_FALSE(svm.roc.has_value());

    const EvalReport& lr = r.reports[1].second;
    REQUIRE(lr.roc.has_value());
    CHECK(lr.roc->auc == doc.reports[1].second.roc->auc);
    CHECK(lr.roc->points == doc.reports[1].second.roc->points);
}
