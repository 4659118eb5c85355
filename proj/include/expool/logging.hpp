#pragma once

#include <string_view>

namespace expool {

// Minimal stderr logger.  Each category logs its first few occurrences and
// then goes quiet (a per-day warning inside a 2^16-day game would drown the
// output); nothing here affects traces or results.
void log_warn(std::string_view category, std::string_view message);
void log_info(std::string_view category, std::string_view message);

// Suppress (or restore) output globally, e.g. inside tests.
void log_mute(bool mute);

}  // namespace expool
