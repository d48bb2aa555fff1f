#include "hyscdg/class_table.hpp"

#include <fstream>
#include <set>

namespace hyscdg {

ClassTable::ClassTable(std::string id, std::vector<ClassInfo> classes)
    : id_(std::move(id)), classes_(std::move(classes)) {
    if (classes_.size() < 2) throw ConfigError("class table needs at least two classes");
    if (classes_.size() > 255) throw ConfigError("class table supports at most 255 classes");
    std::set<Rgb> colors;
    for (const auto& c : classes_) {
        if (!colors.insert(c.color).second) {
            throw ConfigError("class table '" + id_ + "': duplicate legend color for " + c.name);
        }
    }
}

ClassTable ClassTable::flair16() {
    // name, color, main, nir level, elevation level
    return ClassTable("flair-16", {
        {"Building", {219, 14, 154}, true, 90, 180},
        {"Pervious surface", {147, 142, 123}, true, 110, 5},
        {"Impervious surface", {248, 12, 0}, true, 70, 0},
        {"Bare soil", {169, 113, 1}, true, 120, 0},
        {"Water", {21, 83, 174}, true, 20, 0},
        {"Coniferous", {25, 74, 38}, true, 170, 160},
        {"Deciduous", {70, 228, 131}, true, 200, 140},
        {"Brushwood", {243, 166, 13}, true, 180, 40},
        {"Vineyard", {102, 0, 130}, true, 160, 20},
        {"Herbaceous vegetation", {85, 255, 0}, true, 210, 5},
        {"Agricultural land", {255, 243, 13}, true, 190, 5},
        {"Plowed land", {228, 223, 124}, true, 130, 0},
        {"Swimming pool", {61, 230, 235}, true, 30, 0},
        {"Snow", {255, 255, 255}, true, 240, 0},
        {"Clear cut", {138, 179, 160}, true, 150, 10},
        {"Mixed", {107, 113, 79}, true, 180, 120},
    });
}

ClassTable ClassTable::from_json(const nlohmann::json& j) {
    try {
        std::vector<ClassInfo> classes;
        for (const auto& c : j.at("classes")) {
            ClassInfo info;
            info.name = c.at("name").get<std::string>();
            const auto col = c.at("color").get<std::vector<int>>();
            if (col.size() != 3) throw ConfigError("class color must have 3 components");
            for (int k = 0; k < 3; ++k) info.color[k] = static_cast<std::uint8_t>(col[k]);
            info.main = c.value("main", true);
            info.nir_level = static_cast<std::uint8_t>(c.value("nir", 128));
            info.elevation_level = static_cast<std::uint8_t>(c.value("elevation", 0));
            classes.push_back(std::move(info));
        }
        return ClassTable(j.value("id", std::string("custom")), std::move(classes));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed class table: ") + e.what());
    }
}

ClassTable ClassTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open class table " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("class table " + path.string() + ": " + e.what());
    }
    return from_json(j);
}

nlohmann::json ClassTable::to_json() const {
    nlohmann::json classes = nlohmann::json::array();
    for (const auto& c : classes_) {
        classes.push_back({{"name", c.name},
                           {"color", {c.color[0], c.color[1], c.color[2]}},
                           {"main", c.main},
                           {"nir", c.nir_level},
                           {"elevation", c.elevation_level}});
    }
    return {{"id", id_}, {"classes", classes}};
}

std::optional<ClassId> ClassTable::find_color(const Rgb& color) const noexcept {
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        if (classes_[i].color == color) return static_cast<ClassId>(i);
    }
    return std::nullopt;
}

std::optional<ClassId> ClassTable::find_name(const std::string& name) const noexcept {
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        if (classes_[i].name == name) return static_cast<ClassId>(i);
    }
    return std::nullopt;
}

} // namespace hyscdg
