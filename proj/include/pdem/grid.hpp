#pragma once

#include <string>

#include "pdem/error.hpp"
#include "pdem/interval.hpp"

namespace pdem {

/// Uniform grid on [xmin, xmax]: interior nodes x_i = xmin + i h, i = 1..n,
/// with h = (xmax - xmin) / (n + 1). The endpoints x_0 and x_{n+1} carry the
/// boundary conditions and are not unknowns.
class Grid {
public:
    static constexpr int kMinNodes = 16;

    Grid(double xmin, double xmax, int n) : xmin_(xmin), xmax_(xmax), n_(n) {
        if (!(xmax > xmin)) throw ParameterError("grid: xmax must exceed xmin");
        if (n < kMinNodes) {
            throw ParameterError("grid: need at least " + std::to_string(kMinNodes) +
                                 " interior nodes, got " + std::to_string(n));
        }
    }

    [[nodiscard]] double xmin() const noexcept { return xmin_; }
    [[nodiscard]] double xmax() const noexcept { return xmax_; }
    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] double h() const noexcept { return (xmax_ - xmin_) / (n_ + 1); }

    /// Node i for i = 0..n+1 (0 and n+1 are the endpoints).
    [[nodiscard]] double node(int i) const noexcept {
        if (i == 0) return xmin_;
        if (i == n_ + 1) return xmax_;
        return xmin_ + i * h();
    }

    /// Same interval with h halved; every node of *this is a node of the result.
    [[nodiscard]] Grid refined() const { return Grid(xmin_, xmax_, 2 * n_ + 1); }

    [[nodiscard]] bool inside(const Interval& domain) const noexcept {
        return domain.contains(node(1)) && domain.contains(node(n_));
    }

private:
    double xmin_;
    double xmax_;
    int n_;
};

}  // namespace pdem
