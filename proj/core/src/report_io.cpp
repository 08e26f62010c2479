#include "hamcheck/report_io.hpp"

#include "hamcheck/error.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hamcheck {

using ordered_json = nlohmann::ordered_json;

std::optional<ReportFormat> report_format_from_string(std::string_view name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    return std::nullopt;
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    std::string s = buf;
    if (s.find_first_not_of("-0123456789") == std::string::npos) s += ".0";
    return s;
}

namespace {

double eta_percent(const EtaResult& r) {
    return 100.0 * static_cast<double>(r.singly_labeled) /
           static_cast<double>(r.unique_glosses);
}

void consistency_csv(const ConsistencyReport& r, std::ostream& out) {
    out << "# dimension=" << to_string(r.dimension) << '\n';
    out << "# hand=" << to_string(r.hand) << '\n';
    out << "# visibility_threshold=" << format_double(r.visibility_threshold) << '\n';
    out << "# smoothing_window=" << r.smoothing_window << '\n';
    if (r.reference_line) out << "# reference_line=" << *r.reference_line << '\n';
    out << "# records=" << r.summary.records << " parse_failed=" << r.summary.parse_failed
        << " no_landmarks=" << r.summary.no_landmarks
        << " out_of_scope=" << r.summary.out_of_scope
        << " detection_failed=" << r.summary.detection_failed
        << " measured=" << r.summary.measured << '\n';
    out << "class_alias,norm,n,mean_px,std_px\n";
    for (const ConsistencyRow& row : r.rows) {
        out << row.class_alias << ',' << to_string(row.norm) << ',' << row.n << ','
            << format_double(row.mean_px) << ',';
        if (row.std_px) out << format_double(*row.std_px);
        out << '\n';
    }
}

ordered_json consistency_json(const ConsistencyReport& r) {
    ordered_json j;
    j["dimension"] = to_string(r.dimension);
    j["hand"] = to_string(r.hand);
    j["visibility_threshold"] = r.visibility_threshold;
    j["smoothing_window"] = r.smoothing_window;
    if (r.reference_line) j["reference_line"] = *r.reference_line;
    j["rows"] = ordered_json::array();
    for (const ConsistencyRow& row : r.rows) {
        ordered_json rj;
        rj["class_alias"] = row.class_alias;
        rj["class_index"] = row.class_index;
        rj["norm"] = to_string(row.norm);
        rj["n"] = row.n;
        rj["mean_px"] = row.mean_px;
        if (row.std_px) rj["std_px"] = *row.std_px;
        j["rows"].push_back(std::move(rj));
    }
    j["summary"] = {{"records", r.summary.records},
                    {"parse_failed", r.summary.parse_failed},
                    {"no_landmarks", r.summary.no_landmarks},
                    {"out_of_scope", r.summary.out_of_scope},
                    {"detection_failed", r.summary.detection_failed},
                    {"measured", r.summary.measured}};
    return j;
}

void distribution_csv(const DistributionReport& r, std::ostream& out) {
    out << "# corpus=" << r.corpus_name << '\n';
    out << "# inventory=" << r.inventory_version << '\n';
    out << "# records_counted=" << r.records_counted << " parse_failed=" << r.parse_failed
        << '\n';
    out << "block,class_index,class_alias,count\n";
    for (const DistributionBlock& block : r.blocks)
        for (const DistributionCell& cell : block.cells)
            out << to_string(block.block) << ',' << cell.class_index << ','
                << cell.class_alias << ',' << cell.count << '\n';
}

ordered_json distribution_json(const DistributionReport& r) {
    ordered_json j;
    j["corpus"] = r.corpus_name;
    j["inventory"] = r.inventory_version;
    j["records_counted"] = r.records_counted;
    j["parse_failed"] = r.parse_failed;
    j["blocks"] = ordered_json::array();
    for (const DistributionBlock& block : r.blocks) {
        ordered_json bj;
        bj["block"] = to_string(block.block);
        bj["counts"] = ordered_json::array();
        for (const DistributionCell& cell : block.cells)
            bj["counts"].push_back({{"class_index", cell.class_index},
                                    {"class_alias", cell.class_alias},
                                    {"count", cell.count}});
        j["blocks"].push_back(std::move(bj));
    }
    return j;
}

void eta_histogram_comment(const EtaResult& r, std::ostream& out) {
    out << "# histogram=";
    bool first = true;
    for (const auto& [size, groups] : r.collision_histogram) {
        if (!first) out << ',';
        out << size << ':' << groups;
        first = false;
    }
    out << '\n';
}

void eta_csv_row(const EtaResult& r, std::ostream& out) {
    out << r.unique_glosses << ',' << r.singly_labeled << ','
        << format_double(eta_percent(r)) << ',' << r.max_collision << '\n';
}

ordered_json eta_json(const EtaResult& r) {
    ordered_json j;
    j["unique_glosses"] = r.unique_glosses;
    j["singly_labeled"] = r.singly_labeled;
    j["eta"] = r.eta;
    j["eta_percent"] = eta_percent(r);
    j["max_collision"] = r.max_collision;
    ordered_json hist = ordered_json::object();
    for (const auto& [size, groups] : r.collision_histogram)
        hist[std::to_string(size)] = groups;
    j["collision_histogram"] = std::move(hist);
    return j;
}

void write_json(const ordered_json& j, std::ostream& out) { out << j.dump(2) << '\n'; }

template <typename Report>
void emit_to_file(const Report& report, ReportFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise("WriteFailed", "cannot open \"" + path + "\" for writing");
    emit_report(report, format, out);
    out.flush();
    if (!out) raise("WriteFailed", "error while writing \"" + path + "\"");
}

} // namespace

void emit_report(const ConsistencyReport& report, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::Csv) consistency_csv(report, out);
    else write_json(consistency_json(report), out);
}

void emit_report(const DistributionReport& report, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::Csv) distribution_csv(report, out);
    else write_json(distribution_json(report), out);
}

void emit_report(const EtaResult& result, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::Csv) {
        eta_histogram_comment(result, out);
        out << "unique_glosses,singly_labeled,eta_percent,max_collision\n";
        eta_csv_row(result, out);
    } else {
        write_json(eta_json(result), out);
    }
}

void emit_report(const std::map<std::string, EtaResult>& per_language, ReportFormat format,
                 std::ostream& out) {
    if (format == ReportFormat::Csv) {
        out << "language,unique_glosses,singly_labeled,eta_percent,max_collision\n";
        for (const auto& [language, result] : per_language) {
            out << language << ',';
            eta_csv_row(result, out);
        }
    } else {
        ordered_json j = ordered_json::object();
        for (const auto& [language, result] : per_language)
            j[language] = eta_json(result);
        write_json(j, out);
    }
}

void emit_report(const ConsistencyReport& report, ReportFormat format,
                 const std::string& path) {
    emit_to_file(report, format, path);
}

void emit_report(const DistributionReport& report, ReportFormat format,
                 const std::string& path) {
    emit_to_file(report, format, path);
}

void emit_report(const EtaResult& result, ReportFormat format, const std::string& path) {
    emit_to_file(result, format, path);
}

void emit_report(const std::map<std::string, EtaResult>& per_language, ReportFormat format,
                 const std::string& path) {
    emit_to_file(per_language, format, path);
}

} // namespace hamcheck
