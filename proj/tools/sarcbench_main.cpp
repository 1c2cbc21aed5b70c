#include <cstdint>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sarcbench/cli.hpp"
#include "sarcbench/errors.hpp"

namespace {

struct Parsed {
    sarcbench::RunConfig cfg;
    std::uint64_t seed = 42;  // drives both the sampling and forest streams

    sarcbench::RunConfig resolved() const {
        sarcbench::RunConfig out = cfg;
        out.sampling.seed = seed;
        out.train.rf_seed = seed;
        return out;
    }
};

void add_common_flags(CLI::App* cmd, Parsed& p) {
    cmd->add_option("--input", p.cfg.input_path, "Corpus TSV file, plain or bzip2");
    cmd->add_option("--label-col", p.cfg.columns.label_col, "0-based label column index");
    cmd->add_option("--text-col", p.cfg.columns.text_col, "0-based text column index");
    cmd->add_option("--sample-size", p.cfg.sampling.sample_size,
                    "Rows to subsample before splitting");
    cmd->add_option("--seed", p.seed, "Seed for sampling, splitting and forest training");
    cmd->add_option("--test-fraction", p.cfg.sampling.test_fraction,
                    "Held-out fraction, in (0, 1)");
    cmd->add_option("--models", p.cfg.models, "Subset of: logreg, svm, nb, rf")
        ->delimiter(',');
    cmd->add_option("--out", p.cfg.output_dir, "Output directory");
    cmd->add_flag("--no-timestamp", p.cfg.no_timestamp,
                  "Write null created_at fields for byte-stable reruns");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sarcasm-detection baseline toolkit"};
    app.require_subcommand(1);

    Parsed parsed;
    std::function<int(const sarcbench::RunConfig&)> action;

    struct Sub {
        const char* name;
        const char* help;
        int (*run)(const sarcbench::RunConfig&);
    };
    const Sub subs[] = {
        {"prepare", "Load, clean, subsample and split the corpus", sarcbench::cmd_prepare},
        {"train", "Fit the selected models on the prepared train split", sarcbench::cmd_train},
        {"evaluate", "Score artifacts on the test split and write metrics",
         sarcbench::cmd_evaluate},
        {"plot", "Render the confusion-matrix and ROC SVGs", sarcbench::cmd_plot},
        {"run-all", "prepare, train, evaluate and plot in sequence", sarcbench::cmd_run_all},
    };
    for (const Sub& sub : subs) {
        CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
        add_common_flags(cmd, parsed);
        cmd->callback([&action, run = sub.run] { action = run; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        return action(parsed.resolved());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
