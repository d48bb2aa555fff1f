#pragma once

#include "hyscdg/class_table.hpp"
#include "hyscdg/instance_store.hpp"
#include "hyscdg/raster.hpp"

#include <string>
#include <vector>

namespace hyscdg {

/// Text prompt parts: where, when, and what is salient in the inpainted area.
struct PromptSpec {
    std::string locality;
    std::string region;
    std::string time_of_day;
    std::string season;
    std::vector<std::string> semantic;

    friend bool operator==(const PromptSpec&, const PromptSpec&) = default;
};

inline constexpr double kDefaultSalienceRatio = 1.5;
inline constexpr std::size_t kMaxSalientClasses = 3;

/// Classes whose frequency inside `core` exceeds tau * global frequency, by descending
/// ratio (ties by class id), at most three.
[[nodiscard]] std::vector<ClassId> salient_classes(const SemanticMap& map, const BitMask& core,
                                                   const ClassStats& stats,
                                                   double tau = kDefaultSalienceRatio);

/// "<semantic>, locality of <locality>, <region>, in the <time>, during <season>."
/// Missing parts are left out without leaving empty separators behind.
[[nodiscard]] std::string render_prompt(const PromptSpec& spec);

/// Meteorological season ("Winter", "Spring", "Summer", "Autumn") of a month in 1..12.
[[nodiscard]] std::string season_of_month(int month);
/// "night" (21-5h), "morning" (5-12h), "afternoon" (12-17h), "evening" (17-21h).
[[nodiscard]] std::string time_of_day_of_hour(int hour);

/// Fills time-of-day and season from an ISO-8601 local timestamp; empty strings when unparseable.
void apply_acquisition_time(PromptSpec& spec, const std::string& iso_timestamp);

} // namespace hyscdg
