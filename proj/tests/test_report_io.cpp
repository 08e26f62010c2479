#include "doctest.h"
#include "helpers.hpp"

#include "hamcheck/corpus_analytics.hpp"
#include "hamcheck/error.hpp"
#include "hamcheck/report_io.hpp"

#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace hamcheck;
using testutil::data_path;
using testutil::error_code_of;
using testutil::inventory;

namespace {

std::string emit_string(const auto& report, ReportFormat format) {
    std::ostringstream out;
    emit_report(report, format, out);
    return out.str();
}

EtaResult eta10_result() {
    return decoding_efficiency(
        ingest_corpus(data_path("corpora/eta10.tsv"), inventory()));
}

ConsistencyReport consistency5_report() {
    return location_consistency(
        ingest_corpus(data_path("corpora/consistency5.tsv"), inventory()),
        Dimension::TopBottom, Hand::Right, TopologyConfig::defaults_for("body33"),
        inventory());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

TEST_CASE("format_double prints the shortest form that still reads as a float") {
    CHECK(format_double(80.0) == "80.0");
    CHECK(format_double(5.0) == "5.0");
    CHECK(format_double(7.0) == "7.0");
    CHECK(format_double(0.0) == "0.0");
    CHECK(format_double(-3.0) == "-3.0");
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(2.581988897471611) == "2.581988897");
    CHECK(format_double(3.1622776601683795) == "3.16227766");
    CHECK(format_double(100.0 / 3.0) == "33.33333333");
    CHECK(format_double(1e300) == "1e+300");
}

TEST_CASE("eta report emits the documented CSV") {
    const std::string csv = emit_string(eta10_result(), ReportFormat::Csv);
    CHECK(csv ==
          "# histogram=1:8,2:1\n"
          "unique_glosses,singly_labeled,eta_percent,max_collision\n"
          "10,8,80.0,2\n");
}

TEST_CASE("eta JSON re-parses to the in-memory result") {
    const EtaResult result = eta10_result();
    const nlohmann::json j =
        nlohmann::json::parse(emit_string(result, ReportFormat::Json));
    CHECK(j["unique_glosses"] == 10);
    CHECK(j["singly_labeled"] == 8);
    CHECK(j["eta"].get<double>() == result.eta);
    CHECK(j["eta_percent"].get<double>() == 80.0);
    CHECK(j["max_collision"] == 2);
    CHECK(j["collision_histogram"]["1"] == 8);
    CHECK(j["collision_histogram"]["2"] == 1);
}

TEST_CASE("per-language CSV carries one row per language") {
    const auto per_language = decoding_efficiency_per_language(
        ingest_corpus(data_path("corpora/eta100.tsv"), inventory()));
    const std::string csv = emit_string(per_language, ReportFormat::Csv);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "language,unique_glosses,singly_labeled,eta_percent,max_collision");
    std::size_t rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == per_language.size());
}

TEST_CASE("consistency report emits the hand-checked CSV") {
    const std::string csv = emit_string(consistency5_report(), ReportFormat::Csv);
    CHECK(csv ==
          "# dimension=tb\n"
          "# hand=right\n"
          "# visibility_threshold=0.5\n"
          "# smoothing_window=1\n"
          "# records=5 parse_failed=0 no_landmarks=0 out_of_scope=0 "
          "detection_failed=0 measured=5\n"
          "class_alias,norm,n,mean_px,std_px\n"
          "LOC_HEAD,L1,4,7.0,2.581988897\n"
          "LOC_HEAD,L2,4,5.270284654,1.905815544\n"
          "LOC_CHIN,L1,1,4.0,\n"
          "LOC_CHIN,L2,1,2.828427125,\n");
}

TEST_CASE("consistency JSON mirrors the rows, omitting std when n = 1") {
    const ConsistencyReport report = consistency5_report();
    const nlohmann::json j =
        nlohmann::json::parse(emit_string(report, ReportFormat::Json));
    CHECK(j["dimension"] == "tb");
    REQUIRE(j["rows"].size() == report.rows.size());
    CHECK(j["rows"][0]["class_alias"] == "LOC_HEAD");
    CHECK(j["rows"][0]["n"] == 4);
    CHECK(j["rows"][0]["mean_px"].get<double>() == report.rows[0].mean_px);
    CHECK(j["rows"][0].contains("std_px"));
    CHECK_FALSE(j["rows"][2].contains("std_px"));
    CHECK(j["summary"]["measured"] == 5);
}

TEST_CASE("distribution CSV is dense over every block") {
    const DistributionReport report = class_distribution(
        ingest_corpus(data_path("corpora/eta100.tsv"), inventory()), inventory());
    const std::string csv = emit_string(report, ReportFormat::Csv);
    std::istringstream lines(csv);
    std::string line;
    std::size_t comment_lines = 0, data_lines = 0;
    bool saw_header = false;
    while (std::getline(lines, line)) {
        if (line.rfind("# ", 0) == 0) {
            ++comment_lines;
        } else if (line == "block,class_index,class_alias,count") {
            saw_header = true;
        } else if (!line.empty()) {
            ++data_lines;
        }
    }
    CHECK(saw_header);
    CHECK(comment_lines == 3);
    // One row per class of each of the ten slot blocks.
    std::size_t expected = 0;
    for (std::size_t s = 0; s < MultiLabel::kSlotCount; ++s)
        expected += inventory().block_count(slot_block(static_cast<Slot>(s)));
    CHECK(data_lines == expected);
    CHECK(csv.find("Symmetry,0,SYM_PAR,") != std::string::npos);
}

TEST_CASE("emitters are deterministic and file output matches stream output") {
    const EtaResult result = eta10_result();
    CHECK(emit_string(result, ReportFormat::Csv) ==
          emit_string(result, ReportFormat::Csv));
    CHECK(emit_string(result, ReportFormat::Json) ==
          emit_string(result, ReportFormat::Json));

    const auto tmp = std::filesystem::temp_directory_path() / "hamcheck_eta_test.csv";
    emit_report(result, ReportFormat::Csv, tmp.string());
    CHECK(slurp(tmp.string()) == emit_string(result, ReportFormat::Csv));
    std::filesystem::remove(tmp);
}

TEST_CASE("unwritable path raises WriteFailed") {
    CHECK(error_code_of([] {
              emit_report(EtaResult{}, ReportFormat::Csv,
                          "/nonexistent-dir/report.csv");
          }) == "WriteFailed");
}
