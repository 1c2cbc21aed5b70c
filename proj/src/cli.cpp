#include "sarcbench/cli.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <string_view>
#include <utility>

#include "sarcbench/artifacts.hpp"
#include "sarcbench/errors.hpp"
#include "sarcbench/eval.hpp"
#include "sarcbench/features.hpp"
#include "sarcbench/io.hpp"
#include "sarcbench/plots.hpp"

namespace fs = std::filesystem;

namespace sarcbench {

namespace {

constexpr std::array<std::string_view, 4> kModelOrder = {"logreg", "svm", "nb", "rf"};

std::string display_name(std::string_view kind) {
    if (kind == "logreg") return "Logistic regression";
    if (kind == "svm") return "Linear SVM";
    if (kind == "nb") return "Naive Bayes";
    return "Random forest";
}

struct OutPaths {
    fs::path dir;
    fs::path train_tsv;
    fs::path test_tsv;
    fs::path manifest;
    fs::path metrics;
    fs::path confusion_svg;
    fs::path roc_svg;

    explicit OutPaths(const std::string& output_dir)
        : dir(output_dir),
          train_tsv(dir / "train.tsv"),
          test_tsv(dir / "test.tsv"),
          manifest(dir / "manifest.json"),
          metrics(dir / "metrics.json"),
          confusion_svg(dir / "confusion_nb.svg"),
          roc_svg(dir / "roc_nb.svg") {}

    fs::path model(std::string_view kind) const {
        return dir / ("model_" + std::string(kind) + ".json");
    }
};

std::optional<std::string> stamp(const RunConfig& cfg) {
    if (cfg.no_timestamp) return std::nullopt;
    return utc_timestamp();
}

void require_file(const fs::path& path, const std::string& producer) {
    if (!fs::exists(path)) {
        throw IoError("missing " + path.string() + "; run `sarcbench " + producer + "` first");
    }
}

SplitCounts count_split(const LabeledDataset& ds) {
    SplitCounts counts;
    counts.total = ds.size();
    for (int label : ds.labels) {
        if (label == 0) {
            ++counts.class0;
        } else {
            ++counts.class1;
        }
    }
    return counts;
}

void write_split_tsv(const fs::path& path, const LabeledDataset& ds) {
    atomic_write_stream(path, [&](std::ostream& out) {
        for (std::size_t i = 0; i < ds.size(); ++i) {
            out << ds.labels[i] << '\t' << ds.texts[i] << '\n';
        }
    });
}

// Prepared splits are two-column TSV written by cmd_prepare; any
// malformed or non-binary row means the file was not produced here.
LabeledDataset load_prepared(const fs::path& path) {
    const ColumnSpec two_cols{0, 1};
    RawRecordTable table = load_sarc_tsv(path, two_cols);
    std::size_t dropped = 0;
    LabeledDataset ds = extract_labeled(table, two_cols, &dropped);
    if (table.skipped_count > 0 || dropped > 0) {
        throw CorpusError("prepared dataset " + path.string() +
                          " is corrupt; rerun `sarcbench prepare`");
    }
    return ds;
}

Provenance manifest_provenance(const DatasetManifest& manifest) {
    Provenance prov;
    prov.seed = manifest.seed;
    prov.sample_size = manifest.sample_size;
    prov.test_fraction = manifest.test_fraction;
    prov.corpus_fingerprint = manifest.corpus_fingerprint;
    return prov;
}

ModelArtifact make_artifact(std::string kind, const RunConfig& cfg,
                            const DatasetManifest& manifest,
                            const FittedFeaturizer& featurizer) {
    ModelArtifact artifact;
    artifact.kind = std::move(kind);
    artifact.created_at = stamp(cfg);
    artifact.provenance = manifest_provenance(manifest);
    artifact.featurizer_config = featurizer.config();
    artifact.word_vocab = featurizer.word_vocab();
    artifact.char_vocab = featurizer.char_vocab();
    return artifact;
}

}  // namespace

std::vector<std::string> normalize_models(const std::vector<std::string>& requested) {
    if (requested.empty()) throw ArgumentError("no models selected");
    for (const std::string& name : requested) {
        if (std::find(kModelOrder.begin(), kModelOrder.end(), name) == kModelOrder.end()) {
            throw ArgumentError("unknown model \"" + name +
                                "\" (valid: logreg, svm, nb, rf)");
        }
    }
    std::vector<std::string> out;
    for (std::string_view kind : kModelOrder) {
        if (std::find(requested.begin(), requested.end(), kind) != requested.end()) {
            out.emplace_back(kind);
        }
    }
    return out;
}

int cmd_prepare(const RunConfig& cfg) {
    if (cfg.input_path.empty()) throw ArgumentError("prepare needs --input <corpus file>");
    const OutPaths paths(cfg.output_dir);

    const std::string raw = read_file(cfg.input_path);
    const std::string fingerprint = content_fingerprint(raw);
    const RawRecordTable table = parse_sarc_tsv(raw, cfg.columns, cfg.input_path);

    std::size_t dropped = 0;
    const LabeledDataset labeled = extract_labeled(table, cfg.columns, &dropped);
    const LabeledDataset sampled = subsample(labeled, cfg.sampling);
    const LabeledDataset cleaned = clean(sampled);
    const std::size_t removed_blank = sampled.size() - cleaned.size();
    const auto [train_ds, test_ds] = stratified_split(cleaned, cfg.sampling);

    fs::create_directories(paths.dir);
    write_split_tsv(paths.train_tsv, train_ds);
    write_split_tsv(paths.test_tsv, test_ds);

    DatasetManifest manifest;
    manifest.created_at = stamp(cfg);
    manifest.input_path = cfg.input_path;
    manifest.corpus_fingerprint = fingerprint;
    manifest.seed = cfg.sampling.seed;
    manifest.sample_size = cfg.sampling.sample_size;
    manifest.test_fraction = cfg.sampling.test_fraction;
    manifest.loaded_rows = table.rows.size();
    manifest.skipped_lines = table.skipped_count;
    manifest.dropped_labels = dropped;
    manifest.removed_blank = removed_blank;
    manifest.train = count_split(train_ds);
    manifest.test = count_split(test_ds);
    save_manifest(paths.manifest, manifest);

    std::cout << "prepared " << paths.dir.string() << " from " << cfg.input_path << " ("
              << fingerprint << ")\n"
              << "  parsed " << manifest.loaded_rows << " rows, skipped "
              << manifest.skipped_lines << " malformed lines, dropped "
              << manifest.dropped_labels << " unlabeled rows, removed "
              << manifest.removed_blank << " blank texts\n"
              << "  train " << manifest.train.total << " (class 0: " << manifest.train.class0
              << ", class 1: " << manifest.train.class1 << ")\n"
              << "  test  " << manifest.test.total << " (class 0: " << manifest.test.class0
              << ", class 1: " << manifest.test.class1 << ")\n";
    return 0;
}

int cmd_train(const RunConfig& cfg) {
    const std::vector<std::string> models = normalize_models(cfg.models);
    const OutPaths paths(cfg.output_dir);
    require_file(paths.manifest, "prepare");
    require_file(paths.train_tsv, "prepare");

    const DatasetManifest manifest = load_manifest(paths.manifest);
    const LabeledDataset train_ds = load_prepared(paths.train_tsv);

    const FeaturizerConfig feat_config;
    const FittedFeaturizer featurizer = FittedFeaturizer::fit(feat_config, train_ds.texts);
    const CsrMatrix X = featurizer.transform(train_ds.texts);
    const std::span<const int> y(train_ds.labels);

    bool any_failed = false;
    for (const std::string& kind : models) {
        try {
            ModelArtifact artifact = make_artifact(kind, cfg, manifest, featurizer);
            std::string detail;
            if (kind == "nb") {
                artifact.nb = train_nb(X, y, cfg.train.nb_alpha);
            } else if (kind == "logreg") {
                artifact.linear = train_logreg(X, y, cfg.train);
                detail = " in " + std::to_string(artifact.linear->iterations) + " iterations";
            } else if (kind == "svm") {
                artifact.linear = train_linear_svm(X, y, cfg.train);
                detail = " in " + std::to_string(artifact.linear->iterations) + " iterations";
            } else {
                artifact.forest = train_random_forest(X, y, cfg.train);
                detail = " (" + std::to_string(artifact.forest->trees.size()) + " trees)";
            }
            const fs::path out = paths.model(kind);
            save_model_artifact(out, artifact);
            std::cout << "trained " << kind << detail << " -> " << out.string() << "\n";
        } catch (const std::exception& e) {
            std::cerr << "error: " << kind << ": " << e.what() << "\n";
            any_failed = true;
        }
    }
    return any_failed ? 1 : 0;
}

int cmd_evaluate(const RunConfig& cfg) {
    const std::vector<std::string> models = normalize_models(cfg.models);
    const OutPaths paths(cfg.output_dir);
    require_file(paths.manifest, "prepare");
    require_file(paths.test_tsv, "prepare");
    for (const std::string& kind : models) {
        if (!fs::exists(paths.model(kind))) {
            throw IoError("missing model artifact " + paths.model(kind).string() +
                          "; run `sarcbench train --models " + kind + "` first");
        }
    }

    const DatasetManifest manifest = load_manifest(paths.manifest);
    const LabeledDataset test_ds = load_prepared(paths.test_tsv);
    const std::span<const int> y(test_ds.labels);

    MetricsDocument doc;
    doc.created_at = stamp(cfg);
    doc.provenance = manifest_provenance(manifest);

    for (const std::string& kind : models) {
        const ModelArtifact artifact = load_model_artifact(paths.model(kind));
        const FittedFeaturizer featurizer = FittedFeaturizer::from_parts(
            artifact.featurizer_config, artifact.word_vocab, artifact.char_vocab);
        const CsrMatrix X = featurizer.transform(test_ds.texts);

        EvalReport report;
        if (kind == "nb") {
            const DenseMatrix proba = nb_predict_proba(*artifact.nb, X);
            report = evaluate(y, proba_to_labels(proba), positive_class_scores(proba));
        } else if (kind == "rf") {
            const DenseMatrix proba = forest_predict_proba(*artifact.forest, X);
            report = evaluate(y, proba_to_labels(proba));
        } else {
            report = evaluate(y, linear_predict(*artifact.linear, X));
        }
        doc.reports.emplace_back(kind, std::move(report));
    }

    save_metrics_document(paths.metrics, doc);

    char line[96];
    std::snprintf(line, sizeof(line), "%-20s %8s %10s %7s %7s", "Model", "Accuracy",
                  "Precision", "Recall", "F1");
    std::cout << line << "\n";
    for (const auto& [kind, report] : doc.reports) {
        const ClassMetrics& pos = report.per_class[1];
        std::snprintf(line, sizeof(line), "%-20s %8.3f %10.3f %7.3f %7.3f",
                      display_name(kind).c_str(), report.accuracy, pos.precision, pos.recall,
                      pos.f1);
        std::cout << line << "\n";
    }
    for (const auto& [kind, report] : doc.reports) {
        if (kind == "nb" && report.roc) {
            std::snprintf(line, sizeof(line), "Naive Bayes AUC = %.3f", report.roc->auc);
            std::cout << line << "\n";
        }
    }
    std::cout << "wrote " << paths.metrics.string() << "\n";
    return 0;
}

int cmd_plot(const RunConfig& cfg) {
    const OutPaths paths(cfg.output_dir);
    require_file(paths.model("nb"), "train --models nb");
    require_file(paths.metrics, "evaluate");

    const MetricsDocument doc = load_metrics_document(paths.metrics);
    const EvalReport* nb_report = nullptr;
    for (const auto& [kind, report] : doc.reports) {
        if (kind == "nb") nb_report = &report;
    }
    if (!nb_report) {
        throw FormatError("metrics document " + paths.metrics.string() +
                          " has no nb entry; rerun `sarcbench evaluate --models nb`");
    }
    if (!nb_report->roc) {
        throw FormatError("metrics document " + paths.metrics.string() +
                          " has no ROC data for nb; rerun `sarcbench evaluate --models nb`");
    }

    atomic_write_file(paths.confusion_svg, render_confusion_svg(nb_report->confusion));
    atomic_write_file(paths.roc_svg, render_roc_svg(*nb_report->roc));
    std::cout << "wrote " << paths.confusion_svg.string() << "\n"
              << "wrote " << paths.roc_svg.string() << "\n";
    return 0;
}

int cmd_run_all(const RunConfig& cfg) {
    const std::vector<std::string> models = normalize_models(cfg.models);
    if (int rc = cmd_prepare(cfg); rc != 0) return rc;
    if (int rc = cmd_train(cfg); rc != 0) return rc;
    if (int rc = cmd_evaluate(cfg); rc != 0) return rc;
    if (std::find(models.begin(), models.end(), "nb") != models.end()) {
        if (int rc = cmd_plot(cfg); rc != 0) return rc;
    }
    return 0;
}

}  // namespace sarcbench
