#include "shadow_transport/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "shadow_transport/error.hpp"
#include "shadow_transport/potentials.hpp"

namespace shadow_transport {

CostFunction spence_mirrlees_cost(std::function<double(double)> g, double beta) {
    if (!(beta > 0.0)) throw Error(ErrorCode::OutOfRange, "cost exponent must be positive");
    CostFunction c;
    if (g) {
        c.evaluate = [g = std::move(g), beta](double x, double y) { return g(x) * std::exp(-beta * y); };
        c.name = "g(x)*exp(-" + std::to_string(beta) + "*y)";
    } else {
        c.evaluate = [beta](double x, double y) { return x * std::exp(-beta * y); };
        c.name = beta == 1.0 ? "x*exp(-y)" : "x*exp(-" + std::to_string(beta) + "*y)";
    }
    // (g(x2) - g(x1)) * exp(-beta*y) with g increasing: decreasing and convex in y.
    c.cross_difference_decreasing = true;
    c.cross_difference_convex = true;
    return c;
}

LpResult lp_min_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     const std::vector<std::vector<double>>& cost, std::size_t cap) {
    const std::size_t n = mu.size();
    const std::size_t m = nu.size();
    if (n * m > cap) {
        throw Error(ErrorCode::SizeCap,
                    "LP with " + std::to_string(n * m) + " cells exceeds the cap of " + std::to_string(cap));
    }
    if (cost.size() != n || std::any_of(cost.begin(), cost.end(), [m](const auto& r) { return r.size() != m; })) {
        throw Error(ErrorCode::OutOfRange, "cost matrix does not match the measures");
    }
    LinearProgram lp;
    lp.cost.resize(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) lp.cost[i * m + j] = cost[i][j];
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(n * m, 0.0);
        std::vector<double> drift(n * m, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            row[i * m + j] = 1.0;
            drift[i * m + j] = nu[j].x;
        }
        lp.a_eq.push_back(std::move(row));
        lp.b_eq.push_back(mu[i].w);
        lp.a_le.push_back(std::move(drift));
        lp.b_le.push_back(mu[i].x * mu[i].w);
    }
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> col(n * m, 0.0);
        for (std::size_t i = 0; i < n; ++i) col[i * m + j] = 1.0;
        lp.a_eq.push_back(std::move(col));
        lp.b_eq.push_back(nu[j].w);
    }

    const LpSolution sol = solve_lp(lp);
    LpResult out;
    out.status = sol.status;
    if (sol.status != LpStatus::Optimal) return out;
    out.value = sol.objective;
    out.duality_gap = sol.duality_gap;
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double w = sol.x[i * m + j];
            if (w > 1e-14) cells.push_back({mu[i].x, nu[j].x, w});
        }
    }
    out.coupling = DiscreteCoupling(std::move(cells));
    return out;
}

LpResult lp_min_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostFunction& cost,
                     std::size_t cap) {
    if (mu.size() * nu.size() > cap) {
        throw Error(ErrorCode::SizeCap, "LP with " + std::to_string(mu.size() * nu.size()) +
                                            " cells exceeds the cap of " + std::to_string(cap));
    }
    std::vector<std::vector<double>> c(mu.size(), std::vector<double>(nu.size()));
    for (std::size_t i = 0; i < mu.size(); ++i) {
        for (std::size_t j = 0; j < nu.size(); ++j) c[i][j] = cost(mu[i].x, nu[j].x);
    }
    return lp_min_cost(mu, nu, c, cap);
}

double coupling_cost(const DiscreteCoupling& pi, const CostFunction& cost) {
    double total = 0.0;
    for (const Cell& c : pi.cells()) total += c.w * cost(c.x, c.y);
    return total;
}

double shadow_put_oracle(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double k) {
    if (!order_check(OrderRelation::PCD, mu, nu)) {
        throw Error(ErrorCode::OrderViolation, "put oracle requires mu <=_pcd nu");
    }
    const std::size_t m = nu.size();
    auto put = [](double strike, double y) { return std::max(strike - y, 0.0); };

    LinearProgram lp;
    lp.cost.resize(m);
    for (std::size_t j = 0; j < m; ++j) lp.cost[j] = put(k, nu[j].x);
    lp.a_eq.push_back(std::vector<double>(m, 1.0));
    lp.b_eq.push_back(mu.mass());
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> cap(m, 0.0);
        cap[j] = 1.0;
        lp.a_le.push_back(std::move(cap));
        lp.b_le.push_back(nu[j].w);
    }
    const PiecewiseLinear p_mu = put_potential(mu);
    for (double strike : (mu + nu).positions()) {
        std::vector<double> row(m);
        for (std::size_t j = 0; j < m; ++j) row[j] = -put(strike, nu[j].x);
        lp.a_le.push_back(std::move(row));
        lp.b_le.push_back(-p_mu(strike));
    }
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) {
        throw Error(ErrorCode::InternalInvariant, std::string("put oracle LP is ") + std::string(to_string(sol.status)));
    }
    return sol.objective;
}

std::pair<DiscreteMeasure, DiscreteMeasure> random_instance(std::uint64_t seed, std::size_t n, std::size_t m,
                                                            InstanceKind kind) {
    if (n == 0 || m == 0) throw Error(ErrorCode::OutOfRange, "random instance needs at least one atom each");
    if (m > 401) throw Error(ErrorCode::OutOfRange, "the target grid has only 401 points");
    std::mt19937_64 rng(seed);
    // Portable uniform on [0,1): the standard distributions are not
    // reproducible across standard libraries.
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    std::vector<int> grid;
    while (grid.size() < m) {
        const int g = static_cast<int>(unit() * 401.0) - 200;
        if (std::find(grid.begin(), grid.end(), g) == grid.end()) grid.push_back(g);
    }
    std::sort(grid.begin(), grid.end());
    std::vector<double> ys(m);
    std::vector<double> ws(m);
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        ys[j] = grid[j] / 100.0;
        ws[j] = 0.1 + unit();
        total += ws[j];
    }
    for (double& w : ws) w /= total;

    // Column-stochastic split of nu among n sources, sparse so that some
    // sources sit exactly on atoms of nu.
    std::vector<std::vector<double>> pi(n, std::vector<double>(m, 0.0));
    for (std::size_t j = 0; j < m; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            pi[i][j] = unit() < 0.35 ? 0.0 : 0.05 + unit();
            col += pi[i][j];
        }
        if (col == 0.0) {
            const auto i = static_cast<std::size_t>(unit() * static_cast<double>(n)) % n;
            pi[i][j] = 1.0;
            col = 1.0;
        }
        for (std::size_t i = 0; i < n; ++i) pi[i][j] *= ws[j] / col;
    }

    std::vector<Atom> mu_atoms;
    for (std::size_t i = 0; i < n; ++i) {
        double mass = 0.0;
        double moment = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            mass += pi[i][j];
            moment += pi[i][j] * ys[j];
        }
        if (mass <= 0.0) continue;
        double x = moment / mass;
        if (kind == InstanceKind::GeneralCd && unit() >= 0.5) x += 2.0 * unit();
        for (double y : ys) {
            if (std::abs(x - y) <= 1e-9) x = y;
        }
        mu_atoms.push_back({x, mass});
    }
    std::vector<Atom> nu_atoms(m);
    for (std::size_t j = 0; j < m; ++j) nu_atoms[j] = {ys[j], ws[j]};
    return {DiscreteMeasure(std::move(mu_atoms), 0.0), DiscreteMeasure(std::move(nu_atoms), 0.0)};
}

}  // namespace shadow_transport
