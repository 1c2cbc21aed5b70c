#pragma once

// Subcommand implementations behind the sarcbench executable:
// prepare -> train -> evaluate -> plot, plus run-all composing them.
// Each command returns a process exit code; fatal problems throw Error
// and per-model training failures are isolated to stderr lines.

#include <string>
#include <vector>

#include "sarcbench/corpus.hpp"
#include "sarcbench/models.hpp"

namespace sarcbench {

struct RunConfig {
    std::string input_path;
    ColumnSpec columns;
    SamplingConfig sampling;
    std::vector<std::string> models = {"logreg", "svm", "nb", "rf"};
    std::string output_dir = "out";
    bool no_timestamp = false;
    TrainConfig train;
};

// Validates model names and returns them in the fixed canonical order
// logreg, svm, nb, rf (duplicates collapsed). Empty selection or an
// unknown name throws ArgumentError.
std::vector<std::string> normalize_models(const std::vector<std::string>& requested);

int cmd_prepare(const RunConfig& cfg);
int cmd_train(const RunConfig& cfg);
int cmd_evaluate(const RunConfig& cfg);
int cmd_plot(const RunConfig& cfg);
int cmd_run_all(const RunConfig& cfg);

}  // namespace sarcbench
