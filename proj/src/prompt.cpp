#include "hyscdg/prompt.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <regex>

namespace hyscdg {

std::vector<ClassId> salient_classes(const SemanticMap& map, const BitMask& core,
                                     const ClassStats& stats, double tau) {
    if (!(tau > 0.0)) throw ConfigError("salience ratio threshold must be positive");
    if (!map.same_shape(core)) throw Error("mask and map shapes differ");
    const int k = stats.class_count();
    std::vector<std::uint64_t> local(static_cast<std::size_t>(k), 0);
    std::uint64_t area = 0;
    for (std::size_t i = 0; i < map.size(); ++i) {
        if (!core[i]) continue;
        if (map[i] >= k) throw LabelError("label outside the class statistics");
        ++local[map[i]];
        ++area;
    }
    if (area == 0) return {};

    struct Candidate {
        double ratio;
        ClassId id;
    };
    std::vector<Candidate> picked;
    for (int c = 0; c < k; ++c) {
        if (local[c] == 0) continue;
        const double f_local = static_cast<double>(local[c]) / static_cast<double>(area);
        const double f_global = stats.frequency(static_cast<ClassId>(c));
        if (f_local > tau * f_global) {
            const double ratio =
                f_global > 0.0 ? f_local / f_global : std::numeric_limits<double>::infinity();
            picked.push_back({ratio, static_cast<ClassId>(c)});
        }
    }
    std::stable_sort(picked.begin(), picked.end(),
                     [](const Candidate& a, const Candidate& b) { return a.ratio > b.ratio; });
    std::vector<ClassId> out;
    for (std::size_t i = 0; i < picked.size() && i < kMaxSalientClasses; ++i) out.push_back(picked[i].id);
    return out;
}

std::string render_prompt(const PromptSpec& spec) {
    std::vector<std::string> clauses;
    if (!spec.semantic.empty()) {
        std::string phrase;
        for (std::size_t i = 0; i < spec.semantic.size(); ++i) {
            std::string name = spec.semantic[i];
            if (name.empty()) continue;
            if (!phrase.empty()) {
                name[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(name[0])));
                phrase += " and ";
            }
            phrase += name;
        }
        if (!phrase.empty()) clauses.push_back(std::move(phrase));
    }
    if (!spec.locality.empty()) clauses.push_back("locality of " + spec.locality);
    if (!spec.region.empty()) clauses.push_back(spec.region);
    if (!spec.time_of_day.empty()) clauses.push_back("in the " + spec.time_of_day);
    if (!spec.season.empty()) clauses.push_back("during " + spec.season);

    std::string out;
    for (const auto& c : clauses) {
        if (!out.empty()) out += ", ";
        out += c;
    }
    if (out.empty()) return out;
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out + ".";
}

std::string season_of_month(int month) {
    switch (month) {
    case 12: case 1: case 2: return "Winter";
    case 3: case 4: case 5: return "Spring";
    case 6: case 7: case 8: return "Summer";
    case 9: case 10: case 11: return "Autumn";
    default: return {};
    }
}

std::string time_of_day_of_hour(int hour) {
    if (hour < 0 || hour > 23) return {};
    if (hour >= 5 && hour < 12) return "morning";
    if (hour >= 12 && hour < 17) return "afternoon";
    if (hour >= 17 && hour < 21) return "evening";
    return "night";
}

void apply_acquisition_time(PromptSpec& spec, const std::string& iso_timestamp) {
    static const std::regex pattern(R"(^(\d{4})-(\d{2})-(\d{2})(?:[T ](\d{2}):(\d{2}))?)");
    std::smatch m;
    spec.season.clear();
    spec.time_of_day.clear();
    if (!std::regex_search(iso_timestamp, m, pattern)) return;
    spec.season = season_of_month(std::stoi(m[2].str()));
    if (m[4].matched) spec.time_of_day = time_of_day_of_hour(std::stoi(m[4].str()));
}

} // namespace hyscdg
