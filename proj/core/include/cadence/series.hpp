#pragma once

#include "cadence/dates.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cadence {

// Daily-stepped real series. Values are finite and there is at least one.
class Series {
public:
    Series(std::vector<double> values, Day origin);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] Day origin() const noexcept { return origin_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] Day day_at(std::size_t i) const { return add_days(origin_, static_cast<int>(i)); }

    // Contiguous sub-range [offset, offset + count).
    [[nodiscard]] Series slice(std::size_t offset, std::size_t count) const;

private:
    std::vector<double> values_;
    Day origin_;
};

} // namespace cadence
