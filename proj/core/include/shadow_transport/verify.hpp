#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "shadow_transport/coupling_types.hpp"
#include "shadow_transport/measure.hpp"
#include "shadow_transport/simplex.hpp"

namespace shadow_transport {

struct CostFunction {
    std::function<double(double, double)> evaluate;
    std::string name;
    // Declared conditions on the cross-difference c(x2,.) - c(x1,.), x1 < x2.
    bool cross_difference_decreasing = false;
    bool cross_difference_convex = false;

    double operator()(double x, double y) const { return evaluate(x, y); }
};

/// c(x, y) = g(x) * exp(-beta * y) with g strictly increasing and beta > 0.
CostFunction spence_mirrlees_cost(std::function<double(double)> g = {}, double beta = 1.0);

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    double value = 0.0;
    DiscreteCoupling coupling;
    double duality_gap = 0.0;
};

inline constexpr std::size_t kDefaultLpCellCap = 2500;

/// Minimum-cost supermartingale coupling of mu and nu by dense simplex.
/// Throws SizeCap when atoms(mu) * atoms(nu) exceeds `cap`.
LpResult lp_min_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostFunction& cost,
                     std::size_t cap = kDefaultLpCellCap);

/// Same polytope with an explicit cost matrix indexed [atom of mu][atom of nu].
LpResult lp_min_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     const std::vector<std::vector<double>>& cost, std::size_t cap = kDefaultLpCellCap);

double coupling_cost(const DiscreteCoupling& pi, const CostFunction& cost);

/// Smallest put value at k over sub-measures theta <= nu of mass(mu) whose put
/// potential dominates P_mu at every breakpoint. Throws OrderViolation unless
/// mu <=_pcd nu.
double shadow_put_oracle(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double k);

enum class InstanceKind { GeneralCd, EqualMeans };

/// Random pair with mu <=_cd nu by construction: nu on a 0.01 grid, mu the
/// barycentres of a random column-stochastic split of nu, shifted up.
/// The grid has 401 points, so m > 401 throws OutOfRange.
std::pair<DiscreteMeasure, DiscreteMeasure> random_instance(std::uint64_t seed, std::size_t n, std::size_t m,
                                                            InstanceKind kind);

}  // namespace shadow_transport
