#include "cli/report.hpp"

#include <cstdio>

namespace insulab::cli {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

void write_pairs(std::ostream& os,
                 const std::vector<std::pair<std::string, Value>>& pairs,
                 const char* indent, bool trailing_comma) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        os << indent << '"' << escape(pairs[i].first)
           << "\": " << format_value_json(pairs[i].second);
        if (i + 1 < pairs.size() || trailing_comma) os << ',';
        os << '\n';
    }
}

}  // namespace

std::string format_value_json(const Value& v) {
    if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
    return '"' + escape(std::get<std::string>(v)) + '"';
}

void write_json(std::ostream& os, const Report& report) {
    os << "{\n  \"command\": \"" << escape(report.command) << "\",\n";
    os << "  \"config\": {\n";
    write_pairs(os, report.config, "    ", false);
    os << "  },\n";
    os << "  \"results\": {\n";
    write_pairs(os, report.results, "    ", !report.tables.empty());
    for (std::size_t t = 0; t < report.tables.size(); ++t) {
        const Table& tab = report.tables[t];
        os << "    \"" << escape(tab.name) << "\": [\n";
        for (std::size_t r = 0; r < tab.rows.size(); ++r) {
            os << "      {";
            for (std::size_t c = 0; c < tab.columns.size(); ++c) {
                os << '"' << escape(tab.columns[c])
                   << "\": " << format_value_json(tab.rows[r][c]);
                if (c + 1 < tab.columns.size()) os << ", ";
            }
            os << '}' << (r + 1 < tab.rows.size() ? "," : "") << '\n';
        }
        os << "    ]" << (t + 1 < report.tables.size() ? "," : "") << '\n';
    }
    os << "  }\n}\n";
}

namespace {

// RFC 4180 quoting for cells containing separators or quotes.
std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_cell(const Value& v) {
    if (const auto* s = std::get_if<std::string>(&v)) return csv_quote(*s);
    return format_value_json(v);
}

}  // namespace

void write_csv(std::ostream& os, const Report& report) {
    const Table* primary = report.tables.empty() ? nullptr : &report.tables.front();

    bool first = true;
    const auto emit = [&](const std::string& cell) {
        if (!first) os << ',';
        os << cell;
        first = false;
    };
    for (const auto& [k, v] : report.config) emit(report.command + ".config." + k);
    for (const auto& [k, v] : report.results) emit(report.command + "." + k);
    if (primary)
        for (const auto& c : primary->columns)
            emit(report.command + "." + primary->name + "." + c);
    os << '\n';

    const std::size_t nrows = primary ? primary->rows.size() : 1;
    for (std::size_t r = 0; r < nrows; ++r) {
        first = true;
        for (const auto& [k, v] : report.config) emit(csv_cell(v));
        for (const auto& [k, v] : report.results) emit(csv_cell(v));
        if (primary)
            for (const auto& cell : primary->rows[r]) emit(csv_cell(cell));
        os << '\n';
    }
}

}  // namespace insulab::cli
