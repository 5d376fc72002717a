#pragma once

#include <vector>

#include "shadow_transport/measure.hpp"

namespace shadow_transport {

struct Cell {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
};

/// Finitely supported measure on pairs (x, y), cells sorted by (x, y).
class DiscreteCoupling {
public:
    DiscreteCoupling() = default;

    /// Merges cells at coinciding (x, y) and drops non-positive weights.
    explicit DiscreteCoupling(std::vector<Cell> cells);

    const std::vector<Cell>& cells() const noexcept { return cells_; }
    bool empty() const noexcept { return cells_.empty(); }

    DiscreteMeasure first_marginal() const;
    DiscreteMeasure second_marginal() const;

    /// Weight of the cell at (x, y), 0 if absent.
    double weight(double x, double y) const;

    /// Second marginal of the cells whose source satisfies lo <= x.
    DiscreteMeasure targets_from_sources_at_least(double lo) const;

    /// Largest violation of sum_y y*pi(x,y) <= x*mu(x) over source atoms.
    double max_supermartingale_violation() const;

private:
    std::vector<Cell> cells_;
};

/// Largest cell-wise |a - b| over the union of supports.
double max_cell_gap(const DiscreteCoupling& a, const DiscreteCoupling& b);

}  // namespace shadow_transport
