#pragma once

#include "hyscdg/raster.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hyscdg {

using Rgb = std::array<std::uint8_t, 3>;

struct ClassInfo {
    std::string name;
    Rgb color{};
    bool main = true;
    /// Levels used by the procedural synthesizer for the NIR and elevation bands.
    std::uint8_t nir_level = 128;
    std::uint8_t elevation_level = 0;

    friend bool operator==(const ClassInfo&, const ClassInfo&) = default;
};

/// Land-cover nomenclature with legend colors. Colors must be pairwise distinct.
class ClassTable {
public:
    ClassTable(std::string id, std::vector<ClassInfo> classes);

    /// The 16-class land-cover nomenclature with its published legend colors.
    static ClassTable flair16();

    static ClassTable from_json(const nlohmann::json& j);
    static ClassTable load(const std::filesystem::path& path);
    [[nodiscard]] nlohmann::json to_json() const;

    [[nodiscard]] const std::string& id() const noexcept { return id_; }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(classes_.size()); }
    [[nodiscard]] const ClassInfo& operator[](ClassId c) const { return classes_.at(c); }
    [[nodiscard]] const std::vector<ClassInfo>& classes() const noexcept { return classes_; }

    [[nodiscard]] std::optional<ClassId> find_color(const Rgb& color) const noexcept;
    [[nodiscard]] std::optional<ClassId> find_name(const std::string& name) const noexcept;

private:
    std::string id_;
    std::vector<ClassInfo> classes_;
};

} // namespace hyscdg
