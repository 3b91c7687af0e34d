#include "sgk/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sgk {

bool CriterionRow::pass() const {
    if (!std::isfinite(measured)) return false;
    switch (relation) {
        case Relation::at_most: return measured <= tolerance;
        case Relation::at_least: return measured >= tolerance;
        case Relation::within: return measured >= low && measured <= tolerance;
    }
    return false;
}

CriterionRow at_most(std::string name, double measured, double tol, std::string provenance) {
    return {std::move(name), measured, tol, Relation::at_most, std::move(provenance)};
}

CriterionRow at_least(std::string name, double measured, double tol, std::string provenance) {
    return {std::move(name), measured, tol, Relation::at_least, std::move(provenance)};
}

CriterionRow within(std::string name, double measured, double lo, double hi, std::string provenance) {
    return {std::move(name), measured, hi, Relation::within, std::move(provenance), lo};
}

bool ReportBundle::all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const CriterionRow& r) { return r.pass(); });
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string to_string(Relation r) {
    switch (r) {
        case Relation::at_most: return "<=";
        case Relation::at_least: return ">=";
        case Relation::within: return "in";
    }
    return "?";
}

namespace {

std::string bound_text(const CriterionRow& r) {
    if (r.relation == Relation::within) return "[" + format_number(r.low) + ", " + format_number(r.tolerance) + "]";
    return format_number(r.tolerance);
}

}  // namespace

std::string render_text(const ReportBundle& b) {
    std::ostringstream os;
    for (const auto& r : b.rows) {
        os << (r.pass() ? "PASS " : "FAIL ") << r.name << ": " << format_number(r.measured) << ' '
           << to_string(r.relation) << ' ' << bound_text(r) << "  [" << r.provenance << "]\n";
    }
    for (const auto& n : b.notes) os << "note: " << n << '\n';
    return os.str();
}

std::string summary_json(const ReportBundle& b) {
    nlohmann::ordered_json j;
    j["command"] = b.command;
    j["pass"] = b.all_pass();
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : b.rows) {
        nlohmann::ordered_json row;
        row["name"] = r.name;
        row["measured"] = std::isfinite(r.measured) ? nlohmann::ordered_json(r.measured) : nlohmann::ordered_json(nullptr);
        row["relation"] = to_string(r.relation);
        if (r.relation == Relation::within) row["low"] = r.low;
        row["tolerance"] = r.tolerance;
        row["provenance"] = r.provenance;
        row["pass"] = r.pass();
        j["rows"].push_back(row);
    }
    j["files"] = b.files;
    j["notes"] = b.notes;
    return j.dump(2) + "\n";
}

std::string to_csv(const Table& t) {
    std::ostringstream os;
    for (size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
    os << '\n';
    if (!t.labels.empty() && t.labels.size() != t.rows.size()) throw std::logic_error("to_csv: label count mismatch");
    for (size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        if (!t.labels.empty()) os << t.labels[r] << (row.empty() ? "" : ",");
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
        os << '\n';
    }
    return os.str();
}

void write_text(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<PlotSeries>& series, bool log_y) {
    const double W = 720, H = 440, L = 80, R = 20, T = 40, B = 60;
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    auto ty = [&](double y) { return log_y ? std::log10(std::abs(y)) : y; };
    auto usable = [&](double y) { return std::isfinite(y) && (!log_y || y != 0.0); };
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(s.y[i])) continue;
            x0 = std::min(x0, s.x[i]), x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, ty(s.y[i])), y1 = std::max(y1, ty(s.y[i]));
        }
    if (!(x0 < x1)) x0 = 0, x1 = 1;
    if (!(y0 < y1)) y0 -= 1, y1 += 1;
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (ty(y) - y0) / (y1 - y0) * (H - T - B); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
    os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = x0 + (x1 - x0) * k / 4.0, yv = y0 + (y1 - y0) * k / 4.0;
        const double xp = L + (W - L - R) * k / 4.0, yp = H - B - (H - T - B) * k / 4.0;
        os << "<text x=\"" << xp << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << format_number(xv) << "</text>\n";
        os << "<text x=\"" << L - 6 << "\" y=\"" << yp + 4 << "\" text-anchor=\"end\">"
           << (log_y ? "1e" + format_number(std::round(yv * 10) / 10) : format_number(yv)) << "</text>\n";
    }
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 18 << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    os << "<text x=\"18\" y=\"" << H / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << H / 2 << ")\">"
       << ylabel << "</text>\n";
    for (size_t s = 0; s < series.size(); ++s) {
        os << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << colors[s % 6] << "\" points=\"";
        for (size_t i = 0; i < series[s].x.size(); ++i)
            if (usable(series[s].y[i])) os << format_number(px(series[s].x[i])) << ',' << format_number(py(series[s].y[i])) << ' ';
        os << "\"/>\n";
        os << "<text x=\"" << L + 10 << "\" y=\"" << T + 16 + 14 * s << "\" fill=\"" << colors[s % 6] << "\">"
           << series[s].name << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace sgk
