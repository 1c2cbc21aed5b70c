#pragma once

// SARC balanced-export ingestion: TSV/bz2 loading, label extraction,
// whitespace cleaning, seeded subsampling and the stratified split.
// Every operation here is a pure function of (input, seed).

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sarcbench {

struct ColumnSpec {
    std::uint32_t label_col = 0;
    std::uint32_t text_col = 9;
};

struct SamplingConfig {
    std::size_t sample_size = 100000;
    std::uint64_t seed = 42;
    double test_fraction = 0.2;
};

struct RawRecordTable {
    std::vector<std::vector<std::string>> rows;
    std::size_t skipped_count = 0;
};

struct LabeledDataset {
    std::vector<std::string> texts;
    std::vector<int> labels;

    std::size_t size() const { return texts.size(); }
};

// Splits each line on '\t' with no quote or escape processing. Input may
// be plain text or a bzip2 stream (sniffed via the "BZh" magic); bytes
// are decoded as UTF-8 with invalid sequences replaced by U+FFFD. Lines
// with fewer than max(label_col, text_col)+1 fields are skipped and
// counted. source_name only labels error messages.
RawRecordTable parse_sarc_tsv(std::string_view data, const ColumnSpec& spec,
                              const std::string& source_name = "<memory>");

// Reads the file at path and hands its bytes to parse_sarc_tsv.
RawRecordTable load_sarc_tsv(const std::filesystem::path& path, const ColumnSpec& spec);

// Picks the label and text columns. Rows whose label field is not
// exactly "0" or "1" are dropped; the count lands in *dropped when given.
LabeledDataset extract_labeled(const RawRecordTable& table, const ColumnSpec& spec,
                               std::size_t* dropped = nullptr);

// Drops rows whose text is empty or whitespace-only (Unicode whitespace).
LabeledDataset clean(const LabeledDataset& ds);

// Uniform sample of sample_size rows without replacement, in draw order.
LabeledDataset subsample(const LabeledDataset& ds, const SamplingConfig& cfg);

// Stratified (train, test) partition. Per-class test counts follow the
// largest-remainder rule; both outputs keep the original row order.
std::pair<LabeledDataset, LabeledDataset> stratified_split(const LabeledDataset& ds,
                                                           const SamplingConfig& cfg);

}  // namespace sarcbench
