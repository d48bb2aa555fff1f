#include "hyscdg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace hyscdg {

ConfusionMatrix::ConfusionMatrix(int k, MatrixKind kind)
    : k_(k), kind_(kind), counts_(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0) {
    if (k < 2) throw Error("confusion matrix needs at least 2 categories");
}

std::uint64_t ConfusionMatrix::row_sum(int i) const {
    std::uint64_t s = 0;
    for (int j = 0; j < k_; ++j) s += at(i, j);
    return s;
}

std::uint64_t ConfusionMatrix::col_sum(int j) const {
    std::uint64_t s = 0;
    for (int i = 0; i < k_; ++i) s += at(i, j);
    return s;
}

std::uint64_t ConfusionMatrix::diagonal() const {
    std::uint64_t s = 0;
    for (int i = 0; i < k_; ++i) s += at(i, i);
    return s;
}

std::uint64_t ConfusionMatrix::total() const {
    std::uint64_t s = 0;
    for (const auto c : counts_) s += c;
    return s;
}

void ConfusionMatrix::merge(const ConfusionMatrix& other) {
    if (other.k_ != k_) throw Error("cannot merge confusion matrices of different sizes");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
}

template <class T>
void accumulate(ConfusionMatrix& m, const Grid<T>& truth, const Grid<T>& pred, const BitMask* valid) {
    if (!truth.same_shape(pred)) throw Error("truth and prediction rasters differ in size");
    if (valid && !valid->same_shape(truth)) throw Error("valid mask differs in size from the rasters");
    const int k = m.k();
    for (int y = 0; y < truth.height(); ++y) {
        for (int x = 0; x < truth.width(); ++x) {
            if (valid && !valid->test(x, y)) continue;
            const int t = truth(x, y);
            const int p = pred(x, y);
            if (t >= k || p >= k) {
                throw LabelError("label " + std::to_string(std::max(t, p)) + " >= " + std::to_string(k) +
                                 " at pixel (" + std::to_string(x) + ", " + std::to_string(y) + ") of the " +
                                 (t >= k ? "truth" : "prediction"));
            }
            m.add(t, p);
        }
    }
}

template void accumulate(ConfusionMatrix&, const Grid<std::uint8_t>&, const Grid<std::uint8_t>&, const BitMask*);
template void accumulate(ConfusionMatrix&, const Grid<std::uint16_t>&, const Grid<std::uint16_t>&,
                         const BitMask*);

namespace {

double ratio(std::uint64_t num, std::uint64_t den, bool& degenerate) {
    if (den == 0) {
        degenerate = true;
        return 0.0;
    }
    return static_cast<double>(num) / static_cast<double>(den);
}

double class_iou(const ConfusionMatrix& m, int i, bool& present) {
    const std::uint64_t d = m.at(i, i);
    const std::uint64_t uni = m.row_sum(i) + m.col_sum(i) - d;
    present = uni > 0;
    return present ? static_cast<double>(d) / static_cast<double>(uni) : 0.0;
}

} // namespace

BinaryScores binary_scores(const ConfusionMatrix& m) {
    if (m.k() != 2) throw Error("binary scores need a 2x2 matrix");
    const std::uint64_t tp = m.at(1, 1), fp = m.at(0, 1), fn = m.at(1, 0);
    BinaryScores s;
    s.iou = ratio(tp, tp + fp + fn, s.degenerate);
    s.f1 = ratio(2 * tp, 2 * tp + fp + fn, s.degenerate);
    s.precision = ratio(tp, tp + fp, s.degenerate);
    s.recall = ratio(tp, tp + fn, s.degenerate);
    return s;
}

SekParts sek(const ConfusionMatrix& m) {
    const int k = m.k();
    SekParts out;
    const std::uint64_t total = m.total() - m.at(0, 0);
    if (total == 0) {
        out.sek.degenerate = true;
        return out;
    }
    std::uint64_t diag = 0, fg = 0;
    double pe_num = 0.0;
    for (int i = 0; i < k; ++i) {
        std::uint64_t row = m.row_sum(i), col = m.col_sum(i);
        if (i == 0) {
            row -= m.at(0, 0);
            col -= m.at(0, 0);
        } else {
            diag += m.at(i, i);
        }
        pe_num += static_cast<double>(row) * static_cast<double>(col);
        if (i >= 1) {
            for (int j = 1; j < k; ++j) fg += m.at(i, j);
        }
    }
    const double t = static_cast<double>(total);
    const double po = static_cast<double>(diag) / t;
    const double pe = pe_num / (t * t);
    out.kappa = pe >= 1.0 ? 1.0 : (po - pe) / (1.0 - pe);
    out.iou2 = static_cast<double>(fg) / t;
    out.sek.value = std::clamp(out.kappa * std::exp(out.iou2 - 1.0), -1.0, 1.0);
    return out;
}

Score scs(const ConfusionMatrix& binary, const ConfusionMatrix& semantic_on_change) {
    if (binary.k() != 2) throw Error("SCS needs a 2x2 binary matrix");
    Score out;
    bool bc_degenerate = false;
    const std::uint64_t tp = binary.at(1, 1);
    const double bc_iou = ratio(tp, tp + binary.at(0, 1) + binary.at(1, 0), bc_degenerate);
    double sum = 0.0;
    int n = 0;
    for (int i = 1; i < semantic_on_change.k(); ++i) {
        bool present = false;
        const double v = class_iou(semantic_on_change, i, present);
        if (present) {
            sum += v;
            ++n;
        }
    }
    const double sc = n > 0 ? sum / n : 0.0;
    out.degenerate = bc_degenerate || n == 0;
    out.value = 0.5 * (bc_iou + sc);
    return out;
}

MiouFamily miou_family(const ConfusionMatrix& m) {
    MiouFamily out;
    const int k = m.k();
    out.per_class_iou.resize(static_cast<std::size_t>(k));
    out.per_class_present.resize(static_cast<std::size_t>(k));
    double sum = 0.0, change_sum = 0.0;
    int n = 0, change_n = 0;
    for (int i = 0; i < k; ++i) {
        bool present = false;
        const double v = class_iou(m, i, present);
        out.per_class_iou[static_cast<std::size_t>(i)] = v;
        out.per_class_present[static_cast<std::size_t>(i)] = present;
        if (present) {
            sum += v;
            ++n;
        }
        if (i >= 1 && m.row_sum(i) > 0) {
            change_sum += v;
            ++change_n;
        }
    }
    out.miou = n > 0 ? Score{sum / n, false} : Score{0.0, true};
    out.change_miou = change_n > 0 ? Score{change_sum / change_n, false} : Score{0.0, true};
    const std::uint64_t d = m.diagonal(), t = m.total();
    out.overall_iou.value = ratio(d, 2 * t - d, out.overall_iou.degenerate);
    return out;
}

EvalAccumulator::EvalAccumulator(int k)
    : class_count(k),
      binary(2, MatrixKind::BinaryChange),
      change_semantic(k + 1, MatrixKind::Semantic),
      semantic_on_change(k + 1, MatrixKind::Semantic),
      trajectory(k * k + 1, MatrixKind::Trajectory),
      semantic(k, MatrixKind::Semantic) {}

void EvalAccumulator::add_change(const ChangeMap& truth, const ChangeMap& pred, const BitMask* valid) {
    if (!truth.same_shape(pred)) throw Error("truth and prediction change maps differ in size");
    if (valid && !valid->same_shape(truth)) throw Error("valid mask differs in size from the change maps");
    const int k = class_count;
    const int codes = k * k + 1;
    for (int y = 0; y < truth.height(); ++y) {
        for (int x = 0; x < truth.width(); ++x) {
            if (valid && !valid->test(x, y)) continue;
            const int t = truth(x, y), p = pred(x, y);
            if (t >= codes || p >= codes) {
                throw LabelError("change code " + std::to_string(std::max(t, p)) + " out of range at pixel (" +
                                 std::to_string(x) + ", " + std::to_string(y) + ")");
            }
            trajectory.add(t, p);
            binary.add(t != 0, p != 0);
            int t1 = 0, t2 = 0, p1 = 0, p2 = 0;
            if (t != 0) {
                const auto [a, b] = ChangeMap::decode(static_cast<std::uint16_t>(t), k);
                t1 = a + 1;
                t2 = b + 1;
            }
            if (p != 0) {
                const auto [a, b] = ChangeMap::decode(static_cast<std::uint16_t>(p), k);
                p1 = a + 1;
                p2 = b + 1;
            }
            change_semantic.add(t1, p1);
            change_semantic.add(t2, p2);
            if (t != 0) {
                semantic_on_change.add(t1, p1);
                semantic_on_change.add(t2, p2);
            }
        }
    }
    ++pairs;
}

void EvalAccumulator::add_semantic(const SemanticMap& truth, const SemanticMap& pred, const BitMask* valid) {
    accumulate(semantic, truth, pred, valid);
}

void EvalAccumulator::merge(const EvalAccumulator& other) {
    if (other.class_count != class_count) throw Error("cannot merge evaluations over different class counts");
    binary.merge(other.binary);
    change_semantic.merge(other.change_semantic);
    semantic_on_change.merge(other.semantic_on_change);
    trajectory.merge(other.trajectory);
    semantic.merge(other.semantic);
    pairs += other.pairs;
    pairs_with_semantic += other.pairs_with_semantic;
}

MetricReport make_report(const std::string& dataset, const EvalAccumulator& acc) {
    MetricReport r;
    r.dataset = dataset;
    r.pairs = acc.pairs;
    r.binary = binary_scores(acc.binary);
    r.miou = miou_family(acc.binary).miou;
    r.sek = sek(acc.change_semantic);
    r.scs = scs(acc.binary, acc.semantic_on_change);
    const MiouFamily traj = miou_family(acc.trajectory);
    r.change_miou = traj.change_miou;
    r.per_trajectory_iou = traj.per_class_iou;
    if (acc.pairs_with_semantic > 0) {
        const MiouFamily sem = miou_family(acc.semantic);
        r.sem_miou = sem.miou;
        r.overall_iou = sem.overall_iou;
        r.per_class_iou = sem.per_class_iou;
        r.per_class_present = sem.per_class_present;
    } else {
        r.sem_miou = {0.0, true};
        r.overall_iou = {0.0, true};
    }
    return r;
}

namespace {

nlohmann::json score_json(const Score& s) { return {{"value", s.value}, {"degenerate", s.degenerate}}; }

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

nlohmann::json to_json(const MetricReport& r) {
    nlohmann::json traj = nlohmann::json::object();
    for (std::size_t code = 1; code < r.per_trajectory_iou.size(); ++code) {
        if (r.per_trajectory_iou[code] > 0.0) traj[std::to_string(code)] = r.per_trajectory_iou[code];
    }
    nlohmann::json per_class = nlohmann::json::array();
    for (std::size_t i = 0; i < r.per_class_iou.size(); ++i) {
        per_class.push_back(r.per_class_present[i] ? nlohmann::json(r.per_class_iou[i]) : nlohmann::json());
    }
    return {{"dataset", r.dataset},
            {"pairs", r.pairs},
            {"iou", score_json({r.binary.iou, r.binary.degenerate})},
            {"f1", score_json({r.binary.f1, r.binary.degenerate})},
            {"precision", r.binary.precision},
            {"recall", r.binary.recall},
            {"miou", score_json(r.miou)},
            {"overall_iou", score_json(r.overall_iou)},
            {"sek", {{"value", r.sek.sek.value}, {"degenerate", r.sek.sek.degenerate},
                     {"kappa", r.sek.kappa}, {"iou2", r.sek.iou2}}},
            {"scs", score_json(r.scs)},
            {"change_miou", score_json(r.change_miou)},
            {"sem_miou", score_json(r.sem_miou)},
            {"per_class_iou", per_class},
            {"per_trajectory_iou", traj}};
}

std::string report_csv_header() { return "dataset,pairs,iou,f1,miou,overall_iou,sek,scs,change_miou,sem_miou"; }

std::string report_csv_row(const MetricReport& r) {
    std::string row = csv_field(r.dataset) + "," + std::to_string(r.pairs);
    for (const double v : {r.binary.iou, r.binary.f1, r.miou.value, r.overall_iou.value, r.sek.sek.value,
                           r.scs.value, r.change_miou.value, r.sem_miou.value}) {
        row += "," + format_double(v);
    }
    return row;
}

} // namespace hyscdg
