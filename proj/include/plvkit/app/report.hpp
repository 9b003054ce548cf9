#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "plvkit/connectivity.hpp"
#include "plvkit/errors.hpp"
#include "plvkit/ini.hpp"
#include "plvkit/io.hpp"
#include "plvkit/types.hpp"

namespace plvkit::app {

// Fixed-point display with halves rounded away from zero (printf's
// round-half-even would turn -5.4058 into -5.405 at some magnitudes).
inline std::string format_fixed(double v, int decimals) {
    double scale = 1.0;
    for (int i = 0; i < decimals; ++i) scale *= 10.0;
    const long long r = std::llround(v * scale);
    const bool neg = r < 0;
    std::string digits = std::to_string(neg ? -r : r);
    if (decimals == 0) return (neg ? "-" : "") + digits;
    if (digits.size() <= static_cast<std::size_t>(decimals))
        digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
    return (neg ? "-" : "") + digits;
}

// p-values below display resolution print as exact zero, mirroring the
// usual table convention ("0.000" means p < 0.001).
inline std::string format_p(double p, int decimals) {
    double threshold = 1.0;
    for (int i = 0; i < decimals; ++i) threshold /= 10.0;
    if (p < threshold) return format_fixed(0.0, decimals);
    return format_fixed(p, decimals);
}

inline std::string class_table_filename(Paradigm paradigm) {
    return std::string(paradigm_name(paradigm)) + "_class_table.csv";
}

inline std::string region_report_filename(Paradigm paradigm) {
    return std::string(paradigm_name(paradigm)) + "_region_report.csv";
}

inline std::string render_class_table_csv(const ClassTable& table, int mean_decimals) {
    std::string out = "subject";
    for (const auto& label : table.class_labels) out += "," + label;
    out += "\n";
    for (std::size_t s = 0; s < table.subject_ids.size(); ++s) {
        out += table.subject_ids[s];
        for (double v : table.values[s]) out += "," + format_fixed(v, mean_decimals);
        out += "\n";
    }
    out += "Avg.";
    for (double v : table.avg) out += "," + format_fixed(v, mean_decimals);
    out += "\nStd.";
    for (double v : table.std_dev) out += "," + format_fixed(v, mean_decimals);
    out += "\n";
    return out;
}

inline std::string render_region_report_csv(const std::vector<RegionPairResult>& rows,
                                            int mean_decimals, int stat_decimals) {
    std::string out = "pair,task_mean,rest_mean,t,p,df\n";
    for (const RegionPairResult& row : rows) {
        out += std::string(region_tag(row.a)) + "-" + region_tag(row.b);
        out += "," + format_fixed(row.mean_task, mean_decimals);
        out += "," + format_fixed(row.mean_rest, mean_decimals);
        out += "," + format_fixed(row.t, stat_decimals);
        out += "," + format_p(row.p, stat_decimals);
        out += "," + std::to_string(row.df) + "\n";
    }
    return out;
}

namespace detail {

inline std::vector<std::vector<std::string>> parse_csv(const std::string& text,
                                                       const std::string& what) {
    std::vector<std::vector<std::string>> rows;
    for (const std::string& line : plvkit::split(text, '\n')) {
        const std::string trimmed = plvkit::detail::trim(line);
        if (trimmed.empty()) continue;
        rows.push_back(plvkit::split(trimmed, ','));
    }
    if (rows.size() < 2) throw data_error(what + " is empty or truncated");
    const std::size_t width = rows[0].size();
    for (const auto& row : rows)
        if (row.size() != width) throw data_error(what + " has ragged rows");
    return rows;
}

inline std::string pad(const std::string& s, std::size_t width) {
    return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

inline std::string render_aligned(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        if (widths.size() < row.size()) widths.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c)
            widths[c] = std::max(widths[c], row[c].size());
    }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) line += "  ";
            line += pad(row[c], widths[c]);
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
    }
    return out;
}

}  // namespace detail

// Human-readable rendering of one analysis directory: both CSVs per
// paradigm found, with significant region rows (p < 0.05) flagged.
inline std::string render_report_text(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir))
        throw data_error("analysis directory not found: " + dir.string());

    std::vector<std::string> class_tables;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.size() > 16 && name.rfind("_class_table.csv") == name.size() - 16)
            class_tables.push_back(name);
    }
    std::sort(class_tables.begin(), class_tables.end());
    if (class_tables.empty())
        throw data_error("no analysis outputs in " + dir.string() +
                         "; expected <paradigm>_class_table.csv and <paradigm>_region_report.csv");

    std::string out;
    for (const std::string& table_name : class_tables) {
        const std::string paradigm = table_name.substr(0, table_name.size() - 16);
        const fs::path report_path = dir / (paradigm + "_region_report.csv");
        if (!fs::exists(report_path))
            throw data_error("missing expected file " + report_path.string());

        const auto table_rows =
            detail::parse_csv(read_file(dir / table_name), table_name);
        out += "== " + paradigm + " class table ==\n";
        out += detail::render_aligned(table_rows);

        auto report_rows = detail::parse_csv(read_file(report_path), paradigm + " region report");
        if (report_rows[0].size() < 5)
            throw data_error(paradigm + " region report lacks the p column");
        out += "\n== " + paradigm + " region report ==\n";
        report_rows[0].push_back("");
        for (std::size_t r = 1; r < report_rows.size(); ++r) {
            const double p = to_double(report_rows[r][4], "region report p value");
            report_rows[r].push_back(p < 0.05 ? "*" : "");
        }
        out += detail::render_aligned(report_rows);
        out += "\n";
    }
    out += "* : p < 0.05\n";
    return out;
}

}  // namespace plvkit::app
