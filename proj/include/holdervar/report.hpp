#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "holdervar/norms.hpp"
#include "holdervar/potentials.hpp"

namespace holdervar {

/// Shortest round-trip decimal formatting; reruns with the same seed emit
/// byte-identical files.
std::string fmt_double(double v);

nlohmann::ordered_json to_json(const SpaceTimePoint& p);
nlohmann::ordered_json to_json(const Witness& w);
nlohmann::ordered_json to_json(const HolderReport& r);
nlohmann::ordered_json to_json(const QuadratureMeta& m);

/// Column-ordered CSV table with deterministic formatting.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(const std::vector<std::string>& cells);
    std::string to_string() const;
    void write(const std::string& path) const;

    static std::string cell(double v) { return fmt_double(v); }
    static std::string cell(const std::string& s) { return s; }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// HolderReport as one CSV row: name,value,p,q,P,Q,breakdown (term=value;...)
std::string holder_report_csv_header();
std::string holder_report_csv_row(const std::string& name, const HolderReport& r);

void write_text_file(const std::string& path, const std::string& content);

/// Grid values as CSV: one row per in-domain node (coords, t, value...).
void write_grid_csv(const std::string& path, const GridFunction& g,
                    const std::vector<std::pair<std::string, const GridFunction*>>& extra = {});

/// Minimal static SVG polyline plot (one series per call), for q_n and
/// convergence curves.
void write_svg_curve(const std::string& path, const std::vector<double>& xs,
                     const std::vector<double>& ys, const std::string& title, bool log_y);

} // namespace holdervar
