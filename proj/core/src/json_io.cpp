#include "shadow_transport/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "shadow_transport/error.hpp"

namespace shadow_transport::json {

json number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    if (v == std::trunc(v) && std::abs(v) < 9.0e15) return static_cast<std::int64_t>(v);
    return v;
}

double parse_number(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw Error(ErrorCode::ParseError, "expected a number, got " + j.dump());
}

json to_json(const DiscreteMeasure& m) {
    json atoms = json::array();
    for (const Atom& a : m.atoms()) atoms.push_back({{"x", number(a.x)}, {"w", number(a.w)}});
    return {{"atoms", std::move(atoms)}};
}

json to_json(const PiecewiseLinear& f) {
    json bps = json::array();
    json vals = json::array();
    for (double x : f.breakpoints()) bps.push_back(number(x));
    for (double y : f.values()) vals.push_back(number(y));
    json out = {{"breakpoints", std::move(bps)},
                {"values", std::move(vals)},
                {"lslope", number(f.left_slope())},
                {"rslope", number(f.right_slope())}};
    if (f.is_line()) out["intercept"] = number(f.intercept());
    return out;
}

json to_json(const DiscreteCoupling& pi) {
    json cells = json::array();
    for (const Cell& c : pi.cells()) cells.push_back({{"x", number(c.x)}, {"y", number(c.y)}, {"w", number(c.w)}});
    return {{"cells", std::move(cells)}};
}

json to_json(const ShadowResult& s) { return {{"shadow", to_json(s.shadow)}, {"defect", number(s.defect)}}; }

json to_json(const LiftedCoupling& lc) {
    json segs = json::array();
    for (const FlowSegment& s : lc.segments()) {
        json flows = json::array();
        for (const Flow& f : s.flows) {
            flows.push_back({{"x", number(f.x)}, {"y", number(f.y)}, {"rate", number(f.rate)}});
        }
        segs.push_back({{"u_lo", number(s.u_lo)}, {"u_hi", number(s.u_hi)}, {"flows", std::move(flows)}});
    }
    return {{"segments", std::move(segs)}};
}

json to_json(const CCurve& c) {
    json set = json::array();
    for (const Interval& i : c.martingale_set) set.push_back({{"lo", number(i.lo)}, {"hi", number(i.hi)}});
    return {{"curve", to_json(c.curve)}, {"martingale_set", std::move(set)}};
}

json to_json(const Decomposition& d) {
    json comps = json::array();
    for (const Component& c : d.components) {
        comps.push_back({{"kind", std::string(to_string(c.kind))},
                         {"lo", number(c.lo)},
                         {"hi", number(c.hi)},
                         {"mu", to_json(c.mu)},
                         {"nu", to_json(c.nu)}});
    }
    return {{"x_star", number(d.x_star)}, {"components", std::move(comps)}};
}

DiscreteMeasure parse_measure(const json& j) {
    if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array()) {
        throw Error(ErrorCode::ParseError, "measure must be an object with an \"atoms\" array");
    }
    std::vector<Atom> atoms;
    for (const json& a : j["atoms"]) {
        if (!a.is_object() || !a.contains("x") || !a.contains("w")) {
            throw Error(ErrorCode::ParseError, "atom must have \"x\" and \"w\": " + a.dump());
        }
        atoms.push_back({parse_number(a["x"]), parse_number(a["w"])});
    }
    return make_measure(std::move(atoms));
}

PiecewiseLinear parse_pwl(const json& j) {
    try {
        std::vector<double> xs;
        std::vector<double> ys;
        for (const json& x : j.at("breakpoints")) xs.push_back(parse_number(x));
        for (const json& y : j.at("values")) ys.push_back(parse_number(y));
        const double ls = parse_number(j.at("lslope"));
        const double rs = parse_number(j.at("rslope"));
        if (xs.empty()) return PiecewiseLinear::line(j.contains("intercept") ? parse_number(j["intercept"]) : 0.0, ls);
        return PiecewiseLinear(std::move(xs), std::move(ys), ls, rs);
    } catch (const nlohmann::ordered_json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

json read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::filesystem::filesystem_error("cannot open", path,
                                                std::make_error_code(std::errc::no_such_file_or_directory));
    }
    try {
        return json::parse(in);
    } catch (const nlohmann::ordered_json::parse_error& e) {
        throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
}

DiscreteMeasure read_measure(const std::filesystem::path& path) { return parse_measure(read_file(path)); }

}  // namespace shadow_transport::json
