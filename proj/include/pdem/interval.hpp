#pragma once

#include <limits>
#include <ostream>

namespace pdem {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
    double lo = -kInf;
    double hi = kInf;

    [[nodiscard]] constexpr bool contains(double x) const noexcept { return x > lo && x < hi; }
    [[nodiscard]] constexpr bool empty() const noexcept { return !(lo < hi); }
    [[nodiscard]] constexpr bool finite_lo() const noexcept { return lo > -kInf; }
    [[nodiscard]] constexpr bool finite_hi() const noexcept { return hi < kInf; }
    [[nodiscard]] constexpr double width() const noexcept { return hi - lo; }

    [[nodiscard]] constexpr Interval intersect(const Interval& o) const noexcept {
        return {lo > o.lo ? lo : o.lo, hi < o.hi ? hi : o.hi};
    }

    friend constexpr bool operator==(const Interval&, const Interval&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Interval& iv) {
        return os << '(' << iv.lo << ", " << iv.hi << ')';
    }
};

}  // namespace pdem
