#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qoe {

struct Sample {
    std::vector<double> features;
    double mos = 0.0;
    // Half-width of the 95% confidence interval of the subjective score.
    std::optional<double> ci95;
};

// Scale of the *Diff columns detected at load time: the public CSVs do not
// state whether they carry percentages or fractions, so the loader inspects
// the value range and the run manifest records the verdict.
enum class DiffScale { kUnknown, kPercent, kFraction };

std::string to_string(DiffScale scale);

struct QualityDataset {
    std::vector<std::string> column_names;  // feature columns only
    std::vector<Sample> samples;
    bool has_ci = false;
    DiffScale diff_scale = DiffScale::kUnknown;

    size_t feature_count() const { return column_names.size(); }
    size_t size() const { return samples.size(); }

    std::vector<double> targets() const;
    std::vector<double> column(size_t index) const;
    // Index of a feature column by name, or npos.
    size_t column_index(const std::string& name) const;

    static constexpr size_t npos = static_cast<size_t>(-1);
};

struct RankedFeature {
    std::string name;
    double importance = 0.0;
};

// Descending by importance, ties broken by ascending column name.
// Importances are normalized to sum to 1 unless all are zero.
struct FeatureRanking {
    std::vector<RankedFeature> entries;

    size_t size() const { return entries.size(); }
    void sort_and_normalize();
};

struct LoadOptions {
    // When set, only these columns (plus MOS/CI95) are ingested; anything
    // else in the header is an error. Default ingests every extra numeric
    // column as a feature.
    std::optional<std::vector<std::string>> feature_whitelist;
};

QualityDataset load_dataset_csv(const std::string& path, const LoadOptions& options = {});
QualityDataset parse_dataset_csv(std::istream& in, const LoadOptions& options = {},
                                 const std::string& origin = "<stream>");

std::string dataset_to_csv(const QualityDataset& ds);
void write_dataset_csv(const QualityDataset& ds, const std::string& path);

// Feature columns permuted to ranking order; unranked columns dropped.
QualityDataset reorder_by_ranking(const QualityDataset& ds, const FeatureRanking& ranking);

// First k feature columns retained, order preserved. 1 <= k <= feature count.
QualityDataset select_top_k(const QualityDataset& ds, size_t k);

// Row permutation determined solely by seed.
QualityDataset shuffle(const QualityDataset& ds, uint64_t seed);

FeatureRanking load_ranking_csv(const std::string& path);
void write_ranking_csv(const FeatureRanking& ranking, const std::string& path);

// Shortest representation that round-trips exactly; used by every CSV/JSON
// emitter so identical values always produce identical bytes.
std::string format_double(double value);

}  // namespace qoe
