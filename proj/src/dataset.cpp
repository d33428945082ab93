#include "qoe/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "qoe/rng.hpp"

namespace qoe {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& raw, size_t row, const std::string& column,
                  const std::string& origin) {
    std::string cell = trim(raw);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw std::runtime_error(origin + ": non-numeric cell \"" + raw + "\" at row " +
                                 std::to_string(row) + ", column \"" + column + "\"");
    }
    return value;
}

bool is_diff_column(const std::string& name) {
    return name.size() >= 4 && name.compare(name.size() - 4, 4, "Diff") == 0;
}

}  // namespace

std::string to_string(DiffScale scale) {
    switch (scale) {
        case DiffScale::kPercent: return "percent";
        case DiffScale::kFraction: return "fraction";
        default: return "unknown";
    }
}

std::vector<double> QualityDataset::targets() const {
    std::vector<double> y;
    y.reserve(samples.size());
    for (const Sample& s : samples) y.push_back(s.mos);
    return y;
}

std::vector<double> QualityDataset::column(size_t index) const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const Sample& s : samples) out.push_back(s.features.at(index));
    return out;
}

size_t QualityDataset::column_index(const std::string& name) const {
    for (size_t i = 0; i < column_names.size(); ++i) {
        if (column_names[i] == name) return i;
    }
    return npos;
}

void FeatureRanking::sort_and_normalize() {
    double total = 0.0;
    for (const RankedFeature& e : entries) total += e.importance;
    if (total > 0.0) {
        for (RankedFeature& e : entries) e.importance /= total;
    }
    std::sort(entries.begin(), entries.end(), [](const RankedFeature& a, const RankedFeature& b) {
        if (a.importance != b.importance) return a.importance > b.importance;
        return a.name < b.name;
    });
}

QualityDataset parse_dataset_csv(std::istream& in, const LoadOptions& options,
                                 const std::string& origin) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error(origin + ": empty file (no header row)");
    }
    const std::vector<std::string> header = split_csv_line(line);

    size_t mos_col = static_cast<size_t>(-1);
    size_t ci_col = static_cast<size_t>(-1);
    std::vector<size_t> feature_cols;
    std::vector<std::string> feature_names;
    for (size_t i = 0; i < header.size(); ++i) {
        const std::string name = trim(header[i]);
        if (name == "MOS") {
            if (mos_col != static_cast<size_t>(-1)) {
                throw std::runtime_error(origin + ": duplicate MOS column");
            }
            mos_col = i;
        } else if (name == "CI95") {
            ci_col = i;
        } else {
            feature_cols.push_back(i);
            feature_names.push_back(name);
        }
    }
    if (mos_col == static_cast<size_t>(-1)) {
        throw std::runtime_error(origin + ": missing MOS column");
    }
    {
        std::unordered_set<std::string> seen;
        for (const std::string& n : feature_names) {
            if (!seen.insert(n).second) {
                throw std::runtime_error(origin + ": duplicate column \"" + n + "\"");
            }
        }
    }

    if (options.feature_whitelist) {
        std::unordered_set<std::string> allowed(options.feature_whitelist->begin(),
                                                options.feature_whitelist->end());
        for (const std::string& n : feature_names) {
            if (!allowed.count(n)) {
                throw std::runtime_error(origin + ": column \"" + n +
                                         "\" not in the configured whitelist");
            }
        }
    }

    QualityDataset ds;
    ds.column_names = feature_names;
    ds.has_ci = ci_col != static_cast<size_t>(-1);

    size_t row = 1;  // header was row 1
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw std::runtime_error(origin + ": row " + std::to_string(row) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(header.size()));
        }
        Sample s;
        s.features.reserve(feature_cols.size());
        for (size_t j = 0; j < feature_cols.size(); ++j) {
            s.features.push_back(parse_cell(cells[feature_cols[j]], row, feature_names[j], origin));
        }
        s.mos = parse_cell(cells[mos_col], row, "MOS", origin);
        if (s.mos < 1.0 || s.mos > 5.0) {
            throw std::runtime_error(origin + ": MOS " + format_double(s.mos) + " at row " +
                                     std::to_string(row) + " outside [1,5]");
        }
        if (ds.has_ci) {
            double ci = parse_cell(cells[ci_col], row, "CI95", origin);
            if (ci < 0.0) {
                throw std::runtime_error(origin + ": negative CI95 at row " + std::to_string(row));
            }
            s.ci95 = ci;
        }
        ds.samples.push_back(std::move(s));
    }
    if (ds.samples.empty()) {
        throw std::runtime_error(origin + ": empty dataset (header only)");
    }

    // Diff-column scale detection: all observed *Diff values within [0,1]
    // with at least one nonzero reads as fractions, otherwise percentages.
    double diff_max = 0.0;
    bool any_diff = false;
    for (size_t j = 0; j < ds.column_names.size(); ++j) {
        if (!is_diff_column(ds.column_names[j])) continue;
        any_diff = true;
        for (const Sample& s : ds.samples) diff_max = std::max(diff_max, s.features[j]);
    }
    if (any_diff) {
        ds.diff_scale = (diff_max > 0.0 && diff_max <= 1.0) ? DiffScale::kFraction
                                                            : DiffScale::kPercent;
    }
    return ds;
}

QualityDataset load_dataset_csv(const std::string& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open dataset file: " + path);
    }
    return parse_dataset_csv(in, options, path);
}

std::string format_double(double value) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string dataset_to_csv(const QualityDataset& ds) {
    std::string out;
    for (const std::string& name : ds.column_names) {
        out += name;
        out += ',';
    }
    out += "MOS";
    if (ds.has_ci) out += ",CI95";
    out += '\n';
    for (const Sample& s : ds.samples) {
        for (double v : s.features) {
            out += format_double(v);
            out += ',';
        }
        out += format_double(s.mos);
        if (ds.has_ci) {
            out += ',';
            out += format_double(s.ci95.value_or(0.0));
        }
        out += '\n';
    }
    return out;
}

void write_dataset_csv(const QualityDataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write dataset file: " + path);
    }
    out << dataset_to_csv(ds);
}

QualityDataset reorder_by_ranking(const QualityDataset& ds, const FeatureRanking& ranking) {
    std::vector<size_t> order;
    order.reserve(ranking.entries.size());
    for (const RankedFeature& e : ranking.entries) {
        size_t idx = ds.column_index(e.name);
        if (idx == QualityDataset::npos) {
            throw std::invalid_argument("ranking references unknown column \"" + e.name + "\"");
        }
        order.push_back(idx);
    }
    QualityDataset out;
    out.has_ci = ds.has_ci;
    out.diff_scale = ds.diff_scale;
    out.column_names.reserve(order.size());
    for (size_t idx : order) out.column_names.push_back(ds.column_names[idx]);
    out.samples.reserve(ds.samples.size());
    for (const Sample& s : ds.samples) {
        Sample t;
        t.mos = s.mos;
        t.ci95 = s.ci95;
        t.features.reserve(order.size());
        for (size_t idx : order) t.features.push_back(s.features[idx]);
        out.samples.push_back(std::move(t));
    }
    return out;
}

QualityDataset select_top_k(const QualityDataset& ds, size_t k) {
    if (k < 1 || k > ds.feature_count()) {
        throw std::invalid_argument("select_top_k: k=" + std::to_string(k) +
                                    " outside [1," + std::to_string(ds.feature_count()) + "]");
    }
    if (k == ds.feature_count()) return ds;
    QualityDataset out;
    out.has_ci = ds.has_ci;
    out.diff_scale = ds.diff_scale;
    out.column_names.assign(ds.column_names.begin(), ds.column_names.begin() + k);
    out.samples.reserve(ds.samples.size());
    for (const Sample& s : ds.samples) {
        Sample t;
        t.mos = s.mos;
        t.ci95 = s.ci95;
        t.features.assign(s.features.begin(), s.features.begin() + k);
        out.samples.push_back(std::move(t));
    }
    return out;
}

QualityDataset shuffle(const QualityDataset& ds, uint64_t seed) {
    std::vector<size_t> perm(ds.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    rng::Rng r(rng::derive(seed, "dataset-shuffle"));
    r.shuffle(perm);
    QualityDataset out;
    out.column_names = ds.column_names;
    out.has_ci = ds.has_ci;
    out.diff_scale = ds.diff_scale;
    out.samples.reserve(ds.size());
    for (size_t idx : perm) out.samples.push_back(ds.samples[idx]);
    return out;
}

FeatureRanking load_ranking_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open ranking file: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error(path + ": empty ranking file");
    }
    FeatureRanking ranking;
    size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != 2) {
            throw std::runtime_error(path + ": ranking row " + std::to_string(row) +
                                     " must be feature,importance");
        }
        ranking.entries.push_back(
            {trim(cells[0]), parse_cell(cells[1], row, "importance", path)});
    }
    if (ranking.entries.empty()) {
        throw std::runtime_error(path + ": ranking has no rows");
    }
    return ranking;
}

void write_ranking_csv(const FeatureRanking& ranking, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write ranking file: " + path);
    }
    out << "feature,importance\n";
    for (const RankedFeature& e : ranking.entries) {
        out << e.name << ',' << format_double(e.importance) << '\n';
    }
}

}  // namespace qoe
