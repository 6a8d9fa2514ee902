#pragma once

#include <algorithm>
#include <chrono>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace fundcoef::cli {

enum class Outcome { pass, fail, inconclusive };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::pass: return "pass";
        case Outcome::fail: return "fail";
        case Outcome::inconclusive: return "inconclusive";
    }
    return "?";
}

inline int exit_code(Outcome o) {
    switch (o) {
        case Outcome::pass: return 0;
        case Outcome::fail: return 1;
        case Outcome::inconclusive: return 2;
    }
    return 3;
}

/// Tabular result of one subcommand. The last column of every row is its status.
struct Report {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> notes;
    bool truncation_limited = false;  // the search found nothing within its bound
    double seconds = 0;

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }

    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& r : rows)
            if (!r.empty() && (r.back() == "fail" || r.back() == "error")) ++n;
        return n;
    }

    Outcome outcome() const {
        if (failures() > 0) return Outcome::fail;
        if (truncation_limited) return Outcome::inconclusive;
        return Outcome::pass;
    }
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

struct RenderOptions {
    bool tsv = false;
    bool failures_only = false;
};

inline void render(std::ostream& out, const Report& r, const RenderOptions& opt = {}) {
    std::vector<const std::vector<std::string>*> shown;
    for (const auto& row : r.rows)
        if (!opt.failures_only || (!row.empty() && (row.back() == "fail" || row.back() == "error"))) shown.push_back(&row);

    out << "# subcommand: " << r.subcommand << "\n";
    out << "# params:";
    for (const auto& [k, v] : r.params) out << " " << k << "=" << v;
    out << "\n";
    for (const auto& n : r.notes) out << "# note: " << n << "\n";

    if (opt.tsv) {
        for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "\t" : "") << r.columns[i];
        out << "\n";
        for (const auto* row : shown) {
            for (std::size_t i = 0; i < row->size(); ++i) out << (i ? "\t" : "") << (*row)[i];
            out << "\n";
        }
    } else {
        std::vector<std::size_t> width(r.columns.size(), 0);
        for (std::size_t i = 0; i < r.columns.size(); ++i) width[i] = r.columns[i].size();
        for (const auto* row : shown)
            for (std::size_t i = 0; i < row->size() && i < width.size(); ++i) width[i] = std::max(width[i], (*row)[i].size());
        auto line = [&](const std::vector<std::string>& cells) {
            std::string text;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) text += "  ";
                text += cells[i];
                if (i + 1 < cells.size() && i < width.size()) text.append(width[i] - std::min(width[i], cells[i].size()), ' ');
            }
            out << text << "\n";
        };
        line(r.columns);
        for (const auto* row : shown) line(*row);
    }
    out << "# rows: " << r.rows.size() << " failures: " << r.failures() << "\n";
    out << "# outcome: " << to_string(r.outcome()) << "\n";
    out << "# timing: " << r.seconds << " s\n";
}

}  // namespace fundcoef::cli
