#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "latmax/bounds.hpp"
#include "latmax/experiments.hpp"

namespace latmax {

using json = nlohmann::json;

// One row of a result table: a dimension, a named quantity, its value, the
// bound it was held against, and whether it passed.
struct CsvRow {
    int dim = 0;
    std::string param;
    double value = 0.0;
    double bound = 0.0;
    bool pass = false;
};

// %.17g round-trips doubles exactly, so equal inputs give identical bytes.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string to_csv(const std::vector<CsvRow>& rows) {
    std::string out = "d,param,value,bound,pass\n";
    for (const auto& row : rows) {
        out += std::to_string(row.dim);
        out += ',';
        out += row.param;
        out += ',';
        out += format_double(row.value);
        out += ',';
        out += format_double(row.bound);
        out += ',';
        out += row.pass ? '1' : '0';
        out += '\n';
    }
    return out;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << content;
    if (!f) throw std::runtime_error("write to " + path + " failed");
}

inline void write_csv(const std::string& path, const std::vector<CsvRow>& rows) {
    write_file(path, to_csv(rows));
}

// JSON summary envelope shared by every command: what ran, with which seed
// and parameters, what came out, and the overall verdict.
inline json make_summary(const std::string& command, std::uint64_t seed, json params, json results,
                         bool pass) {
    json j;
    j["command"] = command;
    j["seed"] = seed;
    j["params"] = std::move(params);
    j["results"] = std::move(results);
    j["pass"] = pass;
    return j;
}

inline json to_json(const WorstPoint& w) {
    json j;
    j["dim"] = w.dim;
    j["params"] = w.params;
    j["xi"] = w.xi;
    return j;
}

inline json to_json(const BoundReport& r) {
    json j;
    j["bound"] = r.bound_name;
    j["seed"] = r.seed;
    j["samples"] = r.samples;
    j["observed_constant"] = r.observed_constant;
    if (r.has_fixed_bound) j["fixed_bound"] = r.fixed_bound;
    j["pass"] = r.pass;
    j["worst"] = to_json(r.worst);
    return j;
}

inline json to_json(const GrowthCurve& c) {
    json j;
    j["xs"] = c.xs;
    j["ys"] = c.ys;
    j["fit"] = c.fit;
    return j;
}

inline json to_json(const ComparisonReport& r) {
    json j;
    j["dim"] = r.dim;
    j["t"] = r.t;
    j["factor"] = r.factor;
    j["trials"] = r.trials;
    j["points"] = r.points;
    j["violations"] = r.violations;
    j["worst_slack"] = r.worst_slack;
    return j;
}

inline json to_json(const RieszGrowthPoint& p) {
    json j;
    j["dim"] = p.dim;
    j["side"] = p.side;
    j["numerator"] = p.numerator;
    j["denominator"] = p.denominator;
    j["ratio"] = p.ratio;
    j["previous_ratio"] = p.previous_ratio;
    j["stabilized"] = p.stabilized;
    j["lower_bound"] = p.lower_bound;
    j["green_bound"] = p.green_bound;
    return j;
}

inline json to_json(const RieszGrowthReport& r) {
    json j;
    j["q"] = r.q;
    j["B"] = r.B;
    j["rel_tol"] = r.rel_tol;
    j["all_stabilized"] = r.all_stabilized;
    j["pass"] = r.pass;
    j["curve"] = to_json(r.curve);
    json pts = json::array();
    for (const auto& p : r.points) pts.push_back(to_json(p));
    j["points"] = pts;
    return j;
}

} // namespace latmax
