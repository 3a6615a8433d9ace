#pragma once

#include <string>
#include <string_view>

namespace cadence {

// Porter stemmer, reference variant (with the bli -> ble and logi -> log
// rules). Expects a lowercase ASCII word; words of two letters or fewer are
// returned unchanged.
[[nodiscard]] std::string porter_stem(std::string_view word);

} // namespace cadence
