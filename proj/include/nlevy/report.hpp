#ifndef NLEVY_REPORT_HPP
#define NLEVY_REPORT_HPP

#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nlevy {

/// Structured record of one experiment: inputs echoed as metadata, one row
/// of observables per cell, pass flags, human-readable summary lines.
/// Identical config + seed reproduces the CSV byte for byte.
struct ExperimentReport {
    std::string id;
    std::vector<std::pair<std::string, std::string>> meta;  // config echo, seeds
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> summary;
    bool pass = false;
    double wall_seconds = 0.0;

    void set_meta(const std::string& key, const std::string& value) {
        meta.emplace_back(key, value);
    }
    void set_meta(const std::string& key, double value) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", value);
        meta.emplace_back(key, buf);
    }
    void add_row(std::vector<double> row) {
        if (row.size() != columns.size())
            throw std::invalid_argument("ExperimentReport: row width mismatch");
        rows.push_back(std::move(row));
    }
    void note(std::string line) { summary.push_back(std::move(line)); }

    void write_csv(const std::string& path) const {
        std::FILE* f = std::fopen(path.c_str(), "wb");
        if (!f) throw std::runtime_error("ExperimentReport: cannot open " + path);
        for (const auto& kv : meta)
            std::fprintf(f, "# %s = %s\n", kv.first.c_str(), kv.second.c_str());
        for (size_t c = 0; c < columns.size(); ++c)
            std::fprintf(f, "%s%s", columns[c].c_str(), c + 1 == columns.size() ? "\n" : ",");
        for (const auto& row : rows)
            for (size_t c = 0; c < row.size(); ++c)
                std::fprintf(f, "%.17g%s", row[c], c + 1 == row.size() ? "\n" : ",");
        std::fclose(f);
    }

    std::string summary_text() const {
        std::string out;
        out += "experiment " + id + ": " + (pass ? "PASS" : "FAIL") + "\n";
        for (const auto& line : summary) out += "  " + line + "\n";
        return out;
    }
};

}  // namespace nlevy

#endif
