#include "holdervar/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace holdervar {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::ordered_json to_json(const SpaceTimePoint& p) {
    nlohmann::ordered_json j;
    std::vector<double> x(p.x.begin(), p.x.begin() + p.dim);
    j["x"] = x;
    j["t"] = p.t;
    return j;
}

nlohmann::ordered_json to_json(const Witness& w) {
    nlohmann::ordered_json j;
    j["p"] = w.p;
    j["q"] = w.q;
    j["P"] = to_json(w.P);
    if (w.q >= 0) j["Q"] = to_json(w.Q);
    return j;
}

nlohmann::ordered_json to_json(const HolderReport& r) {
    nlohmann::ordered_json j;
    j["value"] = r.value;
    if (r.witness.has_value() && r.witness->p >= 0) j["witness"] = to_json(*r.witness);
    nlohmann::ordered_json b;
    for (const auto& [k, v] : r.breakdown) b[k] = v;
    j["breakdown"] = b;
    return j;
}

nlohmann::ordered_json to_json(const QuadratureMeta& m) {
    nlohmann::ordered_json j;
    j["eps_t"] = m.eps_t;
    j["spatial_rule"] = m.spatial_rule;
    j["nx"] = m.nx;
    j["time_levels"] = m.time_levels;
    return j;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != header_.size())
        throw std::invalid_argument("CsvTable: row width does not match header");
    rows_.push_back(cells);
}

std::string CsvTable::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        out += header_[i];
        out += (i + 1 < header_.size()) ? ',' : '\n';
    }
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += row[i];
            out += (i + 1 < row.size()) ? ',' : '\n';
        }
    }
    return out;
}

void CsvTable::write(const std::string& path) const { write_text_file(path, to_string()); }

std::string holder_report_csv_header() {
    return "name,value,p,q,P,Q,breakdown";
}

namespace {

std::string point_str(const SpaceTimePoint& p) {
    std::string s = "(";
    for (int a = 0; a < p.dim; ++a) {
        s += fmt_double(p.x[a]);
        s += ' ';
    }
    s += "t=" + fmt_double(p.t) + ")";
    return s;
}

} // namespace

std::string holder_report_csv_row(const std::string& name, const HolderReport& r) {
    std::string row = name + "," + fmt_double(r.value) + ",";
    if (r.witness.has_value() && r.witness->p >= 0) {
        row += std::to_string(r.witness->p) + "," + std::to_string(r.witness->q) + "," +
               point_str(r.witness->P) + "," + point_str(r.witness->Q);
    } else {
        row += ",,,";
    }
    row += ",";
    bool first = true;
    for (const auto& [k, v] : r.breakdown) {
        if (!first) row += ';';
        row += k + "=" + fmt_double(v);
        first = false;
    }
    return row;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path);
}

void write_grid_csv(const std::string& path, const GridFunction& g,
                    const std::vector<std::pair<std::string, const GridFunction*>>& extra) {
    const GridDomain& d = g.dom();
    std::vector<std::string> header;
    for (int a = 0; a < d.dim; ++a) header.push_back("x" + std::to_string(a));
    header.push_back("t");
    header.push_back("value");
    for (const auto& [name, _] : extra) header.push_back(name);
    CsvTable table(header);
    for (int id : d.cylinder_nodes()) {
        const SpaceTimePoint p = d.node_point(id);
        std::vector<std::string> row;
        for (int a = 0; a < d.dim; ++a) row.push_back(fmt_double(p.x[a]));
        row.push_back(fmt_double(p.t));
        row.push_back(fmt_double(g.at(id)));
        for (const auto& [_, gf] : extra) row.push_back(fmt_double(gf->at(id)));
        table.add_row(row);
    }
    table.write(path);
}

void write_svg_curve(const std::string& path, const std::vector<double>& xs,
                     const std::vector<double>& ys, const std::string& title, bool log_y) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("write_svg_curve: bad series");
    const double W = 640, H = 420, m = 50;
    double xmin = xs.front(), xmax = xs.front();
    for (double v : xs) {
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    auto ty = [&](double v) { return log_y ? std::log10(std::max(v, 1e-300)) : v; };
    double ymin = ty(ys.front()), ymax = ymin;
    for (double v : ys) {
        ymin = std::min(ymin, ty(v));
        ymax = std::max(ymax, ty(v));
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;

    std::string svg = "<svg xmlns='http://www.w3.org/2000/svg' width='" + fmt_double(W) +
                      "' height='" + fmt_double(H) + "'>\n<rect width='100%' height='100%' "
                      "fill='white'/>\n<text x='20' y='24' font-size='14'>" +
                      title + (log_y ? " (log y)" : "") + "</text>\n<polyline fill='none' "
                      "stroke='steelblue' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double px = m + (xs[i] - xmin) / (xmax - xmin) * (W - 2 * m);
        const double py = H - m - (ty(ys[i]) - ymin) / (ymax - ymin) * (H - 2 * m);
        svg += fmt_double(px) + "," + fmt_double(py) + " ";
    }
    svg += "'/>\n</svg>\n";
    write_text_file(path, svg);
}

} // namespace holdervar
