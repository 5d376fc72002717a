#include "shadow_transport_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "shadow_transport/coupling.hpp"
#include "shadow_transport/decomposition.hpp"
#include "shadow_transport/error.hpp"
#include "shadow_transport/potentials.hpp"
#include "shadow_transport/shadow.hpp"
#include "shadow_transport/verify.hpp"

namespace shadow_transport::cli {

namespace {

namespace jio = shadow_transport::json;
using json = jio::json;

const std::map<std::string, LiftKind> kLifts = {{"decreasing", LiftKind::DecreasingQuantile},
                                                {"increasing", LiftKind::IncreasingQuantile},
                                                {"uniform", LiftKind::Uniform}};

struct Options {
    std::string mu_path;
    std::string nu_path;
    std::string out_path;
    std::string lift = "decreasing";
    std::string emit = "coupling";
    std::string target = "potentials";
    std::string format = "json";
    double u = 0.5;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::size_t max_atoms = 6;
};

// Points at which a PWL is worth plotting: its breakpoints padded on both
// sides so the tails are visible.
std::vector<double> plot_grid(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.empty()) return {-1.0, 0.0, 1.0};
    const double pad = std::max(1.0, 0.25 * (xs.back() - xs.front()));
    xs.insert(xs.begin(), xs.front() - pad);
    xs.push_back(xs.back() + pad);
    return xs;
}

std::string csv_cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// A table: column names plus rows of numbers.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    json to_json() const {
        json j = json::object();
        for (std::size_t c = 0; c < columns.size(); ++c) {
            json col = json::array();
            for (const auto& r : rows) col.push_back(jio::number(r[c]));
            j[columns[c]] = std::move(col);
        }
        return j;
    }

    std::string to_csv() const {
        std::ostringstream s;
        for (std::size_t c = 0; c < columns.size(); ++c) s << (c ? "," : "") << columns[c];
        s << '\n';
        for (const auto& r : rows) {
            for (std::size_t c = 0; c < r.size(); ++c) s << (c ? "," : "") << csv_cell(jio::number(r[c]));
            s << '\n';
        }
        return s.str();
    }
};

Table potentials_table(const DiscreteMeasure& m) {
    const Potentials p = potentials(m);
    Table t{{"k", "P", "C", "U"}, {}};
    for (double k : plot_grid(m.positions())) t.rows.push_back({k, p.put(k), p.call(k), p.u(k)});
    return t;
}

Table rs_table(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    const DecreasingCoupling d = pi_decreasing(mu, nu);
    std::vector<double> us;
    for (const FlowSegment& s : d.lifted.segments()) {
        us.push_back(s.u_lo);
        us.push_back(0.5 * (s.u_lo + s.u_hi));
    }
    Table t{{"u", "G", "R", "S", "phi"}, {}};
    for (double u : us) {
        const SupportingPoints r = rs_at(mu, nu, u);
        t.rows.push_back({u, r.source, r.lower, r.upper, r.slope});
    }
    return t;
}

json rows_json(const Table& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row = json::object();
        for (std::size_t c = 0; c < t.columns.size(); ++c) row[t.columns[c]] = jio::number(r[c]);
        rows.push_back(std::move(row));
    }
    return {{"rows", std::move(rows)}};
}

Table c_curve_table(const CCurve& c) {
    Table t{{"u", "c"}, {}};
    const auto& us = c.curve.breakpoints();
    const auto& cs = c.curve.values();
    for (std::size_t i = 0; i < us.size(); ++i) t.rows.push_back({us[i], cs[i]});
    return t;
}

void write(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) {
        throw std::filesystem::filesystem_error("cannot write", path,
                                                std::make_error_code(std::errc::permission_denied));
    }
    f << text;
}

void report_error(std::ostream& err, std::string_view code, const std::string& detail) {
    err << json{{"error", code}, {"detail", detail}}.dump() << '\n';
}

class Runner {
public:
    explicit Runner(const Options& o) : o_(o) {}

    DiscreteMeasure mu() const { return jio::read_measure(o_.mu_path); }
    DiscreteMeasure nu() const { return jio::read_measure(o_.nu_path); }

    LiftSpec lift(const DiscreteMeasure& mu) const { return make_lift(kLifts.at(o_.lift), mu); }

    int shadow_cmd(std::ostream& out) const {
        emit(jio::to_json(shadow(mu(), nu())), out);
        return kSuccess;
    }

    int couple_cmd(std::ostream& out) const {
        const DiscreteMeasure m = mu();
        const DiscreteMeasure n = nu();
        if (o_.emit == "rs-curve") {
            if (o_.lift != "decreasing") {
                throw Error(ErrorCode::InvalidLift, "rs-curve is defined for the decreasing lift only");
            }
            emit(rows_json(rs_table(m, n)), out);
            return kSuccess;
        }
        const LiftedCoupling lc = lifted_shadow_coupling(lift(m), m, n);
        if (o_.emit == "coupling") emit(jio::to_json(project(lc)), out);
        if (o_.emit == "lifted") emit(jio::to_json(lc), out);
        if (o_.emit == "ccurve") emit(jio::to_json(c_curve(lc)), out);
        return kSuccess;
    }

    int rs_curve_cmd(std::ostream& out) const {
        emit(rows_json(rs_table(mu(), nu())), out);
        return kSuccess;
    }

    int c_curve_cmd(std::ostream& out) const {
        const DiscreteMeasure m = mu();
        emit(jio::to_json(c_curve(lift(m), m, nu())), out);
        return kSuccess;
    }

    int decompose_cmd(std::ostream& out) const {
        emit(jio::to_json(irreducible_decompose(mu(), nu())), out);
        return kSuccess;
    }

    int verify_cmd(std::ostream& out) const {
        const VerifyReport r = verify_experiment(o_.trials, o_.seed, o_.max_atoms);
        emit(to_json(r), out);
        return r.failures.empty() ? kSuccess : kDomainError;
    }

    int stability_cmd(std::ostream& out) const {
        const StabilityReport r = stability_experiment(o_.trials, o_.seed);
        emit(to_json(r), out);
        const bool ok = r.violations == 0 && r.initial_violations == 0 && r.target_violations == 0;
        return ok ? kSuccess : kDomainError;
    }

    int plot_cmd(std::ostream& out) const {
        const bool csv = o_.format == "csv";
        if (o_.target == "potentials") {
            if (csv) {
                std::string text = tag_csv("mu", potentials_table(mu()));
                if (!o_.nu_path.empty()) text += tag_csv("nu", potentials_table(nu()), false);
                write(text, o_.out_path, out);
            } else {
                json j = {{"mu", potentials_table(mu()).to_json()}};
                if (!o_.nu_path.empty()) j["nu"] = potentials_table(nu()).to_json();
                emit(j, out);
            }
            return kSuccess;
        }
        const DiscreteMeasure m = mu();
        const DiscreteMeasure n = nu();
        Table t;
        json extra = json::object();
        if (o_.target == "e-hull") {
            const PiecewiseLinear e = e_function(m, n, o_.u);
            const PiecewiseLinear hull = convex_hull(e);
            t.columns = {"k", "E", "hull"};
            std::vector<double> xs = e.breakpoints();
            xs.insert(xs.end(), hull.breakpoints().begin(), hull.breakpoints().end());
            for (double k : plot_grid(xs)) t.rows.push_back({k, e(k), hull(k)});
            extra["u"] = jio::number(o_.u);
        } else if (o_.target == "rs-curve") {
            t = rs_table(m, n);
        } else {
            t = c_curve_table(c_curve(lift(m), m, n));
        }
        if (csv) {
            write(t.to_csv(), o_.out_path, out);
        } else {
            json j = t.to_json();
            for (auto& [k, v] : extra.items()) j[k] = v;
            emit(j, out);
        }
        return kSuccess;
    }

private:
    static std::string tag_csv(const std::string& tag, const Table& t, bool header = true) {
        std::istringstream in(t.to_csv());
        std::string line;
        std::string text;
        bool first = true;
        while (std::getline(in, line)) {
            if (first) {
                if (header) text += "measure," + line + '\n';
                first = false;
            } else {
                text += tag + "," + line + '\n';
            }
        }
        return text;
    }

    void emit(const json& j, std::ostream& out) const { write(j.dump() + '\n', o_.out_path, out); }

    const Options& o_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Supermartingale shadow measures and the decreasing coupling", "shadow_transport"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("--out", o.out_path, "Write output to this file instead of stdout");

    auto measures = [&](CLI::App* sub, bool need_nu = true) {
        sub->add_option("--mu", o.mu_path, "Initial measure (JSON)")->required();
        auto* nu = sub->add_option("--nu", o.nu_path, "Target measure (JSON)");
        if (need_nu) nu->required();
    };
    auto lift_option = [&](CLI::App* sub) {
        sub->add_option("--lift", o.lift, "Lift of mu")->check(CLI::IsMember({"decreasing", "increasing", "uniform"}));
    };

    auto* shadow_cmd = app.add_subcommand("shadow", "Shadow of mu in nu and its defect");
    measures(shadow_cmd);
    auto* couple = app.add_subcommand("couple", "Lifted shadow coupling");
    measures(couple);
    lift_option(couple);
    couple->add_option("--emit", o.emit, "What to emit")
        ->check(CLI::IsMember({"coupling", "lifted", "ccurve", "rs-curve"}));
    auto* rs = app.add_subcommand("rs-curve", "R(u), S(u), phi(u) of the decreasing coupling");
    measures(rs);
    auto* cc = app.add_subcommand("c-curve", "Mean-defect curve and martingale set of a lift");
    measures(cc);
    lift_option(cc);
    auto* dec = app.add_subcommand("decompose", "Irreducible decomposition along the zeros of P_nu - P_mu");
    measures(dec);
    auto* ver = app.add_subcommand("verify", "Compare the decreasing coupling with the LP optimum");
    ver->add_option("--trials", o.trials, "Number of random instances")->default_val(200);
    ver->add_option("--seed", o.seed, "Random seed")->default_val(1);
    ver->add_option("--max-atoms", o.max_atoms, "Largest number of atoms per measure")
        ->default_val(6)
        ->check(CLI::Range(1, 50));
    auto* stab = app.add_subcommand("stability", "Wasserstein stability of the shadow on random quadruples");
    stab->add_option("--trials", o.trials, "Number of random quadruples")->default_val(500)->check(CLI::PositiveNumber);
    stab->add_option("--seed", o.seed, "Random seed")->default_val(7);
    auto* plot = app.add_subcommand("plot-data", "Plottable series");
    measures(plot, false);
    lift_option(plot);
    plot->add_option("--target", o.target, "Series to emit")
        ->check(CLI::IsMember({"potentials", "e-hull", "rs-curve", "c-curve"}));
    plot->add_option("--u", o.u, "Level for e-hull")->check(CLI::Range(0.0, 1.0));
    plot->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        report_error(err, "UsageError", e.what());
        return kUsageError;
    }

    try {
        const Runner r(o);
        if (shadow_cmd->parsed()) return r.shadow_cmd(out);
        if (couple->parsed()) return r.couple_cmd(out);
        if (rs->parsed()) return r.rs_curve_cmd(out);
        if (cc->parsed()) return r.c_curve_cmd(out);
        if (dec->parsed()) return r.decompose_cmd(out);
        if (ver->parsed()) return r.verify_cmd(out);
        if (stab->parsed()) return r.stability_cmd(out);
        if (plot->parsed()) {
            if (o.target != "potentials" && o.nu_path.empty()) {
                report_error(err, "UsageError", "--nu is required for target " + o.target);
                return kUsageError;
            }
            return r.plot_cmd(out);
        }
    } catch (const std::filesystem::filesystem_error& e) {
        report_error(err, "UsageError", e.what());
        return kUsageError;
    } catch (const Error& e) {
        report_error(err, to_string(e.code()), e.what());
        return e.code() == ErrorCode::ParseError ? kUsageError : kDomainError;
    } catch (const std::exception& e) {
        report_error(err, "InternalInvariant", e.what());
        return kDomainError;
    }
    report_error(err, "UsageError", "no subcommand given");
    return kUsageError;
}

}  // namespace shadow_transport::cli
