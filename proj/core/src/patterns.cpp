#include "cadence/patterns.hpp"

#include "cadence/error.hpp"
#include "cadence/ward.hpp"

#include <set>

namespace cadence {

std::vector<WindowVector> extract_windows(std::span<const ReleaseEvent> events, int window,
                                          Day span_end) {
    if (window < 1) {
        throw DomainError("window must be >= 1");
    }
    std::set<Day> days;
    for (const auto& ev : events) {
        if (!events.empty() && ev.app_id != events.front().app_id) {
            throw DomainError("extract_windows expects the events of a single app");
        }
        days.insert(ev.day);
    }
    std::vector<WindowVector> out;
    for (const auto& ev : events) {
        if (add_days(ev.day, window) > span_end) continue;
        WindowVector v{ev.app_id, ev.day, std::vector<std::uint8_t>(static_cast<std::size_t>(window), 0)};
        for (auto it = days.upper_bound(ev.day); it != days.end(); ++it) {
            const int offset = days_between(ev.day, *it);
            if (offset > window) break;
            v.bits[static_cast<std::size_t>(offset - 1)] = 1;
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<WindowVector> extract_windows(const AppHistory& history, int window) {
    if (history.empty()) return {};
    const auto events = derive_releases(history);
    return extract_windows(events, window, history.last_day());
}

std::vector<std::vector<double>> as_rows(std::span<const WindowVector> vectors) {
    std::vector<std::vector<double>> rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) {
        rows.emplace_back(v.bits.begin(), v.bits.end());
    }
    return rows;
}

std::vector<std::vector<double>> aggregate_patterns(std::span<const WindowVector> vectors,
                                                    const Clustering& clustering) {
    if (vectors.size() != clustering.labels.size()) {
        throw DomainError("cluster labels do not align with the vectors");
    }
    if (vectors.empty()) return {};
    const std::size_t width = vectors.front().bits.size();
    std::vector<std::vector<double>> sums(static_cast<std::size_t>(clustering.k),
                                          std::vector<double>(width, 0.0));
    std::vector<int> counts(static_cast<std::size_t>(clustering.k), 0);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].bits.size() != width) {
            throw DomainError("window vectors differ in length");
        }
        const auto c = static_cast<std::size_t>(clustering.labels[i]);
        ++counts[c];
        for (std::size_t d = 0; d < width; ++d) sums[c][d] += vectors[i].bits[d];
    }
    for (std::size_t c = 0; c < sums.size(); ++c) {
        if (counts[c] == 0) {
            throw DomainError("cluster " + std::to_string(c) + " is empty");
        }
        for (double& v : sums[c]) v /= counts[c];
    }
    return sums;
}

} // namespace cadence
