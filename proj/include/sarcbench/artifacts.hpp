#pragma once

// Versioned JSON persistence for everything a run produces: model
// artifacts, the dataset manifest and the metrics document. Files are
// written atomically and byte-stable: rewriting unchanged content
// reproduces the file exactly (timestamps excepted). Every document
// carries "kind" as its first key and a format_version that loaders
// validate before anything else.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sarcbench/eval.hpp"
#include "sarcbench/features.hpp"
#include "sarcbench/models.hpp"

namespace sarcbench {

inline constexpr int kArtifactFormatVersion = 1;

struct Provenance {
    std::uint64_t seed = 42;
    std::uint64_t sample_size = 0;
    double test_fraction = 0.2;
    std::string corpus_fingerprint;
};

// One trained pipeline: the fitted featurizer plus exactly one model,
// selected by kind ("nb", "logreg", "svm" or "rf").
struct ModelArtifact {
    std::string kind;
    std::optional<std::string> created_at;  // nullopt serializes as null
    Provenance provenance;
    FeaturizerConfig featurizer_config;
    Vocabulary word_vocab;
    Vocabulary char_vocab;
    std::optional<NbModel> nb;
    std::optional<LinearModel> linear;
    std::optional<ForestModel> forest;
};

void save_model_artifact(const std::filesystem::path& path, const ModelArtifact& artifact);

// Streaming parse: forest node arrays never pass through a DOM, so the
// peak memory cost is the artifact's in-memory size. Loaded vocabularies
// carry terms/idf only; FittedFeaturizer::from_parts rebuilds the index.
ModelArtifact load_model_artifact(const std::filesystem::path& path);

struct SplitCounts {
    std::uint64_t total = 0;
    std::uint64_t class0 = 0;
    std::uint64_t class1 = 0;
};

struct DatasetManifest {
    std::optional<std::string> created_at;
    std::string input_path;
    std::string corpus_fingerprint;
    std::uint64_t seed = 42;
    std::uint64_t sample_size = 0;
    double test_fraction = 0.2;
    std::uint64_t loaded_rows = 0;      // rows parsed from the raw file
    std::uint64_t skipped_lines = 0;    // too few fields
    std::uint64_t dropped_labels = 0;   // label not "0"/"1"
    std::uint64_t removed_blank = 0;    // whitespace-only texts
    SplitCounts train;
    SplitCounts test;
};

void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);
DatasetManifest load_manifest(const std::filesystem::path& path);

struct MetricsDocument {
    std::optional<std::string> created_at;
    Provenance provenance;
    std::vector<std::pair<std::string, EvalReport>> reports;  // keeps model order
};

void save_metrics_document(const std::filesystem::path& path, const MetricsDocument& doc);
MetricsDocument load_metrics_document(const std::filesystem::path& path);

}  // namespace sarcbench
