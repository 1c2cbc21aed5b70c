#include "sarcbench/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <span>
#include <string_view>

#include "sarcbench/bzip2.hpp"
#include "sarcbench/errors.hpp"
#include "sarcbench/io.hpp"
#include "sarcbench/rng.hpp"
#include "sarcbench/unicode.hpp"

namespace sarcbench {

namespace {

std::vector<std::string> split_tabs(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

bool is_blank(const std::string& text) {
    for (char32_t cp : uni::decode_utf8(text)) {
        if (!uni::is_space(cp)) return false;
    }
    return true;
}

LabeledDataset take_rows(const LabeledDataset& ds, std::span<const std::uint32_t> idx) {
    LabeledDataset out;
    out.texts.reserve(idx.size());
    out.labels.reserve(idx.size());
    for (std::uint32_t i : idx) {
        out.texts.push_back(ds.texts[i]);
        out.labels.push_back(ds.labels[i]);
    }
    return out;
}

}  // namespace

RawRecordTable parse_sarc_tsv(std::string_view data, const ColumnSpec& spec,
                              const std::string& source_name) {
    std::string decompressed;
    if (looks_like_bz2(data)) {
        decompressed = bz2_decompress(data);
        data = decompressed;
    }

    const std::size_t need = std::max(spec.label_col, spec.text_col) + std::size_t{1};

    RawRecordTable table;
    std::string_view rest = data;
    while (!rest.empty()) {
        std::size_t nl = rest.find('\n');
        std::string_view line = rest.substr(0, nl);
        rest = (nl == std::string_view::npos) ? std::string_view{} : rest.substr(nl + 1);
        if (line.empty() && rest.empty()) break;  // trailing newline, not a record
        if (line.ends_with('\r')) line.remove_suffix(1);

        std::vector<std::string> fields = split_tabs(uni::sanitize_utf8(line));
        if (fields.size() < need) {
            ++table.skipped_count;
            continue;
        }
        table.rows.push_back(std::move(fields));
    }

    if (table.rows.empty()) {
        throw CorpusError("no usable rows in " + source_name + " (skipped " +
                          std::to_string(table.skipped_count) + " malformed lines)");
    }
    return table;
}

RawRecordTable load_sarc_tsv(const std::filesystem::path& path, const ColumnSpec& spec) {
    return parse_sarc_tsv(read_file(path), spec, path.string());
}

LabeledDataset extract_labeled(const RawRecordTable& table, const ColumnSpec& spec,
                               std::size_t* dropped) {
    LabeledDataset ds;
    ds.texts.reserve(table.rows.size());
    ds.labels.reserve(table.rows.size());
    std::size_t bad = 0;
    for (const auto& row : table.rows) {
        const std::string& raw = row[spec.label_col];
        if (raw == "0") {
            ds.labels.push_back(0);
        } else if (raw == "1") {
            ds.labels.push_back(1);
        } else {
            ++bad;
            continue;
        }
        ds.texts.push_back(row[spec.text_col]);
    }
    if (dropped) *dropped = bad;
    if (ds.size() == 0) {
        throw CorpusError("no rows with a \"0\"/\"1\" label (dropped " + std::to_string(bad) +
                          " rows)");
    }
    return ds;
}

LabeledDataset clean(const LabeledDataset& ds) {
    LabeledDataset out;
    out.texts.reserve(ds.size());
    out.labels.reserve(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (is_blank(ds.texts[i])) continue;
        out.texts.push_back(ds.texts[i]);
        out.labels.push_back(ds.labels[i]);
    }
    if (out.size() == 0) throw CorpusError("every text is empty or whitespace-only");
    return out;
}

LabeledDataset subsample(const LabeledDataset& ds, const SamplingConfig& cfg) {
    if (cfg.sample_size > ds.size()) {
        throw ArgumentError("sample_size " + std::to_string(cfg.sample_size) +
                            " exceeds dataset size " + std::to_string(ds.size()));
    }
    if (cfg.sample_size == ds.size()) return ds;
    Xoshiro256ss rng(cfg.seed);
    std::vector<std::uint32_t> picked =
        sample_without_replacement(ds.size(), cfg.sample_size, rng);
    return take_rows(ds, picked);
}

std::pair<LabeledDataset, LabeledDataset> stratified_split(const LabeledDataset& ds,
                                                           const SamplingConfig& cfg) {
    if (cfg.test_fraction <= 0.0 || cfg.test_fraction >= 1.0) {
        throw ArgumentError("test_fraction must lie in (0, 1)");
    }

    // Class id -> row indices, ascending by class label then original order.
    std::map<int, std::vector<std::uint32_t>> by_class;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        by_class[ds.labels[i]].push_back(static_cast<std::uint32_t>(i));
    }
    for (const auto& [label, members] : by_class) {
        if (members.size() < 2) {
            throw CorpusError("class " + std::to_string(label) +
                              " has fewer than 2 rows; cannot split");
        }
    }

    const std::size_t n = ds.size();
    const std::size_t total_test =
        static_cast<std::size_t>(std::floor(static_cast<double>(n) * cfg.test_fraction + 0.5));

    // Largest-remainder apportionment of total_test across classes.
    struct Share {
        int label;
        std::size_t base;
        double remainder;
    };
    std::vector<Share> shares;
    std::size_t assigned = 0;
    for (const auto& [label, members] : by_class) {
        double exact = static_cast<double>(members.size()) * cfg.test_fraction;
        auto base = static_cast<std::size_t>(std::floor(exact));
        // Keep at least one training row in every class.
        if (base >= members.size()) base = members.size() - 1;
        shares.push_back({label, base, exact - std::floor(exact)});
        assigned += base;
    }
    std::stable_sort(shares.begin(), shares.end(), [](const Share& a, const Share& b) {
        if (a.remainder != b.remainder) return a.remainder > b.remainder;
        return a.label < b.label;
    });
    for (auto& share : shares) {
        if (assigned >= total_test) break;
        std::size_t room = by_class.at(share.label).size() - 1 - share.base;
        if (room == 0) continue;
        ++share.base;
        ++assigned;
    }

    std::map<int, std::size_t> test_count;
    for (const auto& share : shares) test_count[share.label] = share.base;

    // One generator drives every per-class shuffle, classes in ascending
    // label order, so the partition is a pure function of the seed.
    Xoshiro256ss rng(cfg.seed);
    std::vector<std::uint32_t> test_idx;
    std::vector<std::uint32_t> train_idx;
    for (auto& [label, members] : by_class) {
        shuffle(std::span<std::uint32_t>(members), rng);
        std::size_t k = test_count.at(label);
        test_idx.insert(test_idx.end(), members.begin(), members.begin() + k);
        train_idx.insert(train_idx.end(), members.begin() + k, members.end());
    }
    std::sort(test_idx.begin(), test_idx.end());
    std::sort(train_idx.begin(), train_idx.end());

    return {take_rows(ds, train_idx), take_rows(ds, test_idx)};
}

}  // namespace sarcbench
