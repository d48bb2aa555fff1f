#pragma once

#include "hyscdg/raster.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace hyscdg {

enum class MatrixKind { BinaryChange, Semantic, Trajectory };

/// K x K counts, rows = ground truth, columns = prediction.
class ConfusionMatrix {
public:
    ConfusionMatrix() = default;
    ConfusionMatrix(int k, MatrixKind kind = MatrixKind::Semantic);

    [[nodiscard]] int k() const noexcept { return k_; }
    [[nodiscard]] MatrixKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::uint64_t at(int truth, int pred) const { return counts_.at(index(truth, pred)); }
    void add(int truth, int pred, std::uint64_t n = 1) { counts_.at(index(truth, pred)) += n; }

    [[nodiscard]] std::uint64_t row_sum(int i) const;
    [[nodiscard]] std::uint64_t col_sum(int j) const;
    [[nodiscard]] std::uint64_t diagonal() const;
    [[nodiscard]] std::uint64_t total() const;
    [[nodiscard]] const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

    /// Element-wise sum; throws Error on a size mismatch.
    void merge(const ConfusionMatrix& other);

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

private:
    [[nodiscard]] std::size_t index(int truth, int pred) const {
        return static_cast<std::size_t>(truth) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(pred);
    }

    int k_ = 0;
    MatrixKind kind_ = MatrixKind::Semantic;
    std::vector<std::uint64_t> counts_;
};

/// Adds one count per pixel where `valid` (when given) is set.
/// Throws LabelError with the pixel coordinate for labels >= K.
template <class T>
void accumulate(ConfusionMatrix& m, const Grid<T>& truth, const Grid<T>& pred, const BitMask* valid = nullptr);

extern template void accumulate(ConfusionMatrix&, const Grid<std::uint8_t>&, const Grid<std::uint8_t>&,
                                const BitMask*);
extern template void accumulate(ConfusionMatrix&, const Grid<std::uint16_t>&, const Grid<std::uint16_t>&,
                                const BitMask*);

/// A score with the degenerate-denominator flag; degenerate scores are 0.
struct Score {
    double value = 0.0;
    bool degenerate = false;
};

struct BinaryScores {
    double iou = 0.0;
    double f1 = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    bool degenerate = false;
};

/// K = 2, class 1 = change.
[[nodiscard]] BinaryScores binary_scores(const ConfusionMatrix& m);

struct SekParts {
    double kappa = 0.0;
    double iou2 = 0.0;
    Score sek;
};

/// Separated Kappa on a matrix whose category 0 is no-change.
[[nodiscard]] SekParts sek(const ConfusionMatrix& m);

/// 1/2 (BC + SC): BC = binary change IoU, SC = mean class IoU on truth-changed pixels.
[[nodiscard]] Score scs(const ConfusionMatrix& binary, const ConfusionMatrix& semantic_on_change);

struct MiouFamily {
    /// Mean IoU over classes with a nonzero union.
    Score miou;
    Score overall_iou;
    std::vector<double> per_class_iou;
    /// False where the class is absent from both truth and prediction.
    std::vector<bool> per_class_present;
    /// Mean IoU over categories >= 1 present in the ground truth.
    Score change_miou;
};

[[nodiscard]] MiouFamily miou_family(const ConfusionMatrix& m);

/// Matrices accumulated over a set of (truth, prediction) pairs.
struct EvalAccumulator {
    explicit EvalAccumulator(int class_count);

    int class_count;
    /// Binary change.
    ConfusionMatrix binary;
    /// SECOND-style: label 0 if unchanged, else 1 + class at that date; both dates.
    ConfusionMatrix change_semantic;
    /// Second-date class on truth-changed pixels.
    ConfusionMatrix semantic_on_change;
    /// Packed trajectory codes.
    ConfusionMatrix trajectory;
    /// Full semantic maps at both dates, when provided.
    ConfusionMatrix semantic;
    std::size_t pairs = 0;
    std::size_t pairs_with_semantic = 0;

    /// `valid` (optional) excludes ignored pixels.
    void add_change(const ChangeMap& truth, const ChangeMap& pred, const BitMask* valid = nullptr);
    void add_semantic(const SemanticMap& truth, const SemanticMap& pred, const BitMask* valid = nullptr);
    void merge(const EvalAccumulator& other);
};

struct MetricReport {
    std::string dataset;
    std::size_t pairs = 0;
    BinaryScores binary;
    /// Binary (no-change / change) mean IoU.
    Score miou;
    SekParts sek;
    Score scs;
    Score change_miou;
    /// From full semantic maps; degenerate when none were given.
    Score sem_miou;
    Score overall_iou;
    std::vector<double> per_class_iou;
    std::vector<bool> per_class_present;
    std::vector<double> per_trajectory_iou;
};

[[nodiscard]] MetricReport make_report(const std::string& dataset, const EvalAccumulator& acc);
[[nodiscard]] nlohmann::json to_json(const MetricReport& report);

/// Header row of report.csv.
[[nodiscard]] std::string report_csv_header();
[[nodiscard]] std::string report_csv_row(const MetricReport& report);

} // namespace hyscdg
