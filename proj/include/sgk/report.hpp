#pragma once

#include <string>
#include <vector>

namespace sgk {

enum class Relation { at_most, at_least, within };

// One judged quantity: measured value, the tolerance it was judged against, and where the expectation comes from.
struct CriterionRow {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    Relation relation = Relation::at_most;
    std::string provenance;  // PAPER | DERIVED | TRIVIAL | ARTIFACT
    double low = 0.0;        // lower end for Relation::within
    bool pass() const;
};

CriterionRow at_most(std::string name, double measured, double tol, std::string provenance);
CriterionRow at_least(std::string name, double measured, double tol, std::string provenance);
CriterionRow within(std::string name, double measured, double lo, double hi, std::string provenance);

struct ReportBundle {
    std::string command;
    std::vector<CriterionRow> rows;
    std::vector<std::string> files;
    std::vector<std::string> notes;

    bool all_pass() const;
    void add(CriterionRow r) { rows.push_back(std::move(r)); }
};

std::string format_number(double v);
std::string to_string(Relation r);

// Human-readable table on one line per row.
std::string render_text(const ReportBundle& b);
std::string summary_json(const ReportBundle& b);

// Numeric table; when `labels` is filled the first header entry names a leading text column.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows = {};
    std::vector<std::string> labels = {};

    void add(std::vector<double> row) { rows.push_back(std::move(row)); }
    void add(std::string label, std::vector<double> row) {
        labels.push_back(std::move(label));
        rows.push_back(std::move(row));
    }
};

std::string to_csv(const Table& t);
void write_text(const std::string& path, const std::string& content);

struct PlotSeries {
    std::string name;
    std::vector<double> x, y;
};

// Self-contained SVG line plot; log_y plots log10 of |y| (non-positive values skipped).
std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<PlotSeries>& series, bool log_y = false);

inline const std::vector<std::string> series_header{"t",        "rho",          "rho_rate",     "energy",
                                                    "momentum", "local_norm_I", "weighted_norm"};

}  // namespace sgk
