#pragma once

// Run configuration shared by all subcommands, with the symbolic "m0" token
// in material-amount expressions and a canonical JSON round trip.

#include <optional>
#include <string>
#include <vector>

namespace insulab::cli {

struct RunConfig {
    std::string command;
    int n = 2;
    double R = 1.0;
    std::vector<double> f_coeffs{1.0};
    std::optional<std::string> m_expr;       // e.g. "1", "2m0", "1e6"
    std::optional<std::string> m_grid_expr;  // e.g. "log:1.01m0:1e6:40" or "1,2m0"
    std::optional<int> smax;
    bool fs_tables = false;
    std::optional<std::string> problem;  // fem-verify: "energy" | "eigen"
    std::optional<int> s;
    std::optional<double> a;
    std::optional<double> dt;
    std::optional<int> n_r;
    std::optional<int> n_theta;
    std::string format = "json";
    std::string out_path;   // empty: stdout
    std::string dump_path;  // empty: no mesh dump

    std::string to_json() const;
    static RunConfig from_json(const std::string& text);
};

// Evaluates an m expression; "Xm0" multiplies X by the threshold for (n, R).
// Throws validation_error on malformed input or nonpositive result.
double resolve_m_expression(const std::string& expr, int n, double R);

// "log:LO:HI:N", "lin:LO:HI:N", or a comma list of m expressions.
std::vector<double> resolve_m_grid(const std::string& expr, int n, double R);

}  // namespace insulab::cli
