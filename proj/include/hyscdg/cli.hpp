#pragma once

#include <atomic>
#include <iosfwd>
#include <string>
#include <vector>

namespace hyscdg {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFatal = 1;
/// Some variants or tiles failed; outputs are usable but incomplete.
inline constexpr int kPartial = 2;
inline constexpr int kUsage = 64;
} // namespace exit_code

/// Entry point of the `hyscdg` tool. `args` excludes the program name. When `stop` becomes
/// true, generation finishes in-flight tiles, writes a partial index and returns kPartial.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                const std::atomic<bool>* stop = nullptr);

} // namespace hyscdg
