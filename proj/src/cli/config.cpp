#include "cli/config.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "cli/report.hpp"
#include "insulab/eigen_disk.hpp"
#include "insulab/errors.hpp"

namespace insulab::cli {

namespace {

using nlohmann::json;

double parse_number(const std::string& text, const char* what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw validation_error(std::string(what) + ": cannot parse '" + text + "'");
    }
    if (pos != text.size())
        throw validation_error(std::string(what) + ": trailing junk in '" + text + "'");
    return v;
}

}  // namespace

double resolve_m_expression(const std::string& expr, int n, double R) {
    std::string text = expr;
    bool uses_m0 = false;
    if (text.size() >= 2 && text.substr(text.size() - 2) == "m0") {
        uses_m0 = true;
        text = text.substr(0, text.size() - 2);
    }
    double factor = 1.0;
    if (!text.empty()) factor = parse_number(text, "m expression");
    double value = factor;
    if (uses_m0)
        value *= eigen::m0_threshold(ball::BallConfig::make(n, R));
    if (!(value > 0.0) || !std::isfinite(value))
        throw validation_error("m expression: '" + expr + "' is not positive");
    return value;
}

std::vector<double> resolve_m_grid(const std::string& expr, int n, double R) {
    const auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, sep)) parts.push_back(item);
        return parts;
    };

    if (expr.rfind("log:", 0) == 0 || expr.rfind("lin:", 0) == 0) {
        const bool logspace = expr[1] == 'o';
        const auto parts = split(expr.substr(4), ':');
        if (parts.size() != 3)
            throw validation_error("m grid: expected {log|lin}:LO:HI:N");
        const double lo = resolve_m_expression(parts[0], n, R);
        const double hi = resolve_m_expression(parts[1], n, R);
        const long count = std::lround(parse_number(parts[2], "m grid count"));
        if (count < 1 || !(hi > lo))
            throw validation_error("m grid: need HI > LO and N >= 1");
        std::vector<double> grid(count);
        for (long i = 0; i < count; ++i) {
            const double u = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
            grid[i] = logspace ? lo * std::pow(hi / lo, u) : lo + (hi - lo) * u;
        }
        return grid;
    }

    std::vector<double> grid;
    for (const auto& item : split(expr, ','))
        grid.push_back(resolve_m_expression(item, n, R));
    if (grid.empty()) throw validation_error("m grid: empty");
    return grid;
}

std::string RunConfig::to_json() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    const auto field = [&](const char* key, const Value& v) {
        if (!first) os << ",";
        os << "\"" << key << "\":" << format_value_json(v);
        first = false;
    };
    field("command", command);
    field("n", static_cast<std::int64_t>(n));
    field("R", R);
    os << (first ? "" : ",") << "\"f\":[";
    for (std::size_t i = 0; i < f_coeffs.size(); ++i)
        os << (i ? "," : "") << format_value_json(f_coeffs[i]);
    os << "]";
    if (m_expr) field("m", *m_expr);
    if (m_grid_expr) field("m_grid", *m_grid_expr);
    if (smax) field("smax", static_cast<std::int64_t>(*smax));
    if (fs_tables) field("fs", true);
    if (problem) field("problem", *problem);
    if (s) field("s", static_cast<std::int64_t>(*s));
    if (a) field("a", *a);
    if (dt) field("dt", *dt);
    if (n_r) field("nr", static_cast<std::int64_t>(*n_r));
    if (n_theta) field("ntheta", static_cast<std::int64_t>(*n_theta));
    field("format", format);
    if (!out_path.empty()) field("out", out_path);
    if (!dump_path.empty()) field("dump", dump_path);
    os << "}";
    return os.str();
}

RunConfig RunConfig::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw validation_error(std::string("config parse: ") + e.what());
    }
    RunConfig cfg;
    cfg.command = j.value("command", "");
    cfg.n = j.value("n", 2);
    cfg.R = j.value("R", 1.0);
    if (j.contains("f")) cfg.f_coeffs = j["f"].get<std::vector<double>>();
    if (j.contains("m")) cfg.m_expr = j["m"].get<std::string>();
    if (j.contains("m_grid")) cfg.m_grid_expr = j["m_grid"].get<std::string>();
    if (j.contains("smax")) cfg.smax = j["smax"].get<int>();
    cfg.fs_tables = j.value("fs", false);
    if (j.contains("problem")) cfg.problem = j["problem"].get<std::string>();
    if (j.contains("s")) cfg.s = j["s"].get<int>();
    if (j.contains("a")) cfg.a = j["a"].get<double>();
    if (j.contains("dt")) cfg.dt = j["dt"].get<double>();
    if (j.contains("nr")) cfg.n_r = j["nr"].get<int>();
    if (j.contains("ntheta")) cfg.n_theta = j["ntheta"].get<int>();
    cfg.format = j.value("format", "json");
    cfg.out_path = j.value("out", "");
    cfg.dump_path = j.value("dump", "");
    return cfg;
}

}  // namespace insulab::cli
