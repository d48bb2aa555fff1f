#pragma once

#include "hyscdg/class_table.hpp"
#include "hyscdg/raster.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hyscdg {

enum class Scenario { Sequential, LowData, Mixed, ZeroShot };

[[nodiscard]] std::string to_string(Scenario s);
/// Accepts "sequential", "low-data", "mixed", "zero-shot"; throws ConfigError otherwise.
[[nodiscard]] Scenario scenario_from_string(const std::string& s);

enum class Origin { Target, Source };

struct ManifestEntry {
    std::string pair_id;
    Origin origin = Origin::Target;
    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct ManifestSpec {
    Scenario scenario = Scenario::LowData;
    std::string target_id;
    std::string source_id;
    /// Subset fraction (low-data) or target ratio (mixed), in percent.
    double percent = 100.0;
    std::size_t epoch_length = 0;
    bool repetitions = false;
    std::uint64_t seed = 0;
    nlohmann::json remap;
};

struct Manifest {
    ManifestSpec spec;
    std::vector<ManifestEntry> entries;

    [[nodiscard]] std::size_t count(Origin origin) const;
};

/// ceil(fraction / 100 * N) distinct pairs, shuffled by seed. Throws ConfigError when the
/// fraction is outside (0, 100] or yields no sample.
[[nodiscard]] Manifest subsample(const std::vector<std::string>& target, double fraction, std::uint64_t seed);

/// Exactly round(ratio / 100 * epoch) target entries and the remainder from the source.
/// Each side is drawn without replacement when it is large enough, with replacement otherwise.
[[nodiscard]] Manifest mix(const std::vector<std::string>& target, const std::vector<std::string>& source,
                           double ratio, std::size_t epoch_length, std::uint64_t seed);

/// Target entry count of a mixed manifest, half-up rounding.
[[nodiscard]] std::size_t mix_target_count(double ratio, std::size_t epoch_length);

/// The full source (shuffled) followed by the full target (shuffled).
[[nodiscard]] Manifest sequential(const std::vector<std::string>& source, const std::vector<std::string>& target,
                                  std::uint64_t seed);

/// Source entries only; evaluation on the target happens through the remap table.
[[nodiscard]] Manifest zero_shot(const std::vector<std::string>& source, std::uint64_t seed);

[[nodiscard]] nlohmann::json to_json(const Manifest& manifest);

inline constexpr ClassId kIgnoreLabel = 255;

/// `remap.json`: {"map": {old: new}, "drop": [old...], "new_class_table": [...]}.
class RemapTable {
public:
    RemapTable() = default;
    /// Throws ConfigError for malformed tables, ids out of range or classes both mapped and dropped.
    static RemapTable from_json(const nlohmann::json& j);
    static RemapTable load(const std::filesystem::path& path);
    static RemapTable identity(int class_count);

    /// Throws ConfigError unless every class of `source_count` is mapped or dropped.
    void require_total(int source_count) const;

    /// kIgnoreLabel for dropped classes; throws LabelError for unmapped ones.
    [[nodiscard]] ClassId apply(ClassId c) const;
    [[nodiscard]] int target_count() const noexcept { return target_count_; }
    [[nodiscard]] const std::optional<ClassTable>& target_table() const noexcept { return target_table_; }
    [[nodiscard]] nlohmann::json to_json() const;

private:
    /// -1 unmapped, -2 dropped.
    std::vector<int> table_;
    int target_count_ = 0;
    std::optional<ClassTable> target_table_;
};

struct RemappedPair {
    SemanticMap first;
    SemanticMap second;
    ChangeMap change;
    /// False where either date carries a dropped class.
    BitMask valid;
};

/// Remapped semantic map; dropped classes become kIgnoreLabel.
[[nodiscard]] SemanticMap remap_semantic(const SemanticMap& map, const RemapTable& table);

/// Remaps both dates and recomputes the change map under the new labels. Pixels whose
/// classes merge become unchanged; pixels touching a dropped class are 0 and invalid.
[[nodiscard]] RemappedPair remap_pair(const SemanticMap& first, const SemanticMap& second,
                                      const RemapTable& table);

/// Remaps a packed change map alone. Unchanged pixels stay valid (their class is unknown).
[[nodiscard]] std::pair<ChangeMap, BitMask> remap_change(const ChangeMap& change, int source_count,
                                                         const RemapTable& table);

} // namespace hyscdg
