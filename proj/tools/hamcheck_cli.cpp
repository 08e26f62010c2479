#include "hamcheck/corpus.hpp"
#include "hamcheck/corpus_analytics.hpp"
#include "hamcheck/error.hpp"
#include "hamcheck/label_parser.hpp"
#include "hamcheck/multilabel_codec.hpp"
#include "hamcheck/pose_kinematics.hpp"
#include "hamcheck/report_io.hpp"
#include "hamcheck/symbol_inventory.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace hamcheck;

[[noreturn]] void usage_error(const std::string& message) {
    raise("UsageError", message);
}

struct Options {
    std::string inventory_path;
    std::string label_text;
    std::string multilabel_text;
    std::string corpus_path;
    std::string series_path;
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::string hand = "right";
    std::string dimension;
    std::string reference_line;
    std::string norm = "both";
    std::string role_a;
    std::string role_b;
    bool strict = false;
    bool per_language = false;
    double vmin = 0.5;
    int window = 1;
    int frame = -1;
    bool vmin_given = false;
    bool window_given = false;
    bool frame_given = false;
};

SymbolInventory open_inventory(const Options& opt) {
    if (opt.inventory_path.empty())
        usage_error("no symbol inventory given; use --inventory or set HAMCHECK_INVENTORY");
    return load_inventory(opt.inventory_path);
}

Hand parse_hand(const Options& opt) {
    const auto hand = hand_from_string(opt.hand);
    if (!hand) usage_error("--hand must be \"left\" or \"right\"");
    return *hand;
}

ReportFormat parse_format(const Options& opt) {
    const auto format = report_format_from_string(opt.format);
    if (!format) usage_error("--format must be \"csv\" or \"json\"");
    return *format;
}

TopologyConfig resolve_topology_config(const Options& opt, std::string_view topology) {
    TopologyConfig cfg = opt.config_path.empty() ? TopologyConfig::defaults_for(topology)
                                                 : load_topology_config(opt.config_path);
    if (opt.vmin_given) {
        if (opt.vmin < 0.0 || opt.vmin > 1.0) usage_error("--vmin must be in [0,1]");
        cfg.visibility_threshold = opt.vmin;
    }
    if (opt.window_given) {
        if (opt.window < 1 || opt.window % 2 == 0)
            usage_error("--window must be a positive odd integer");
        cfg.smoothing_window = opt.window;
    }
    return cfg;
}

void print_diagnostics(const std::vector<Diagnostic>& diagnostics) {
    for (const Diagnostic& d : diagnostics)
        std::cout << (d.severity == Severity::Error ? "error" : "warning") << ": " << d.code
                  << ": " << d.span.begin << ".." << d.span.end << ": " << d.message << '\n';
}

// Raises the first error diagnostic as the command's failure.
const ParsedSign& require_sign(const ParseResult& result) {
    if (result.sign) return *result.sign;
    for (const Diagnostic& d : result.diagnostics)
        if (d.severity == Severity::Error) raise(d.code, d.message);
    raise("EmptyLabel", "label did not parse");
}

int cmd_label_parse(const Options& opt) {
    const SymbolInventory inventory = open_inventory(opt);
    const ParseResult result = parse_label(opt.label_text, inventory, opt.strict);
    print_diagnostics(result.diagnostics);
    const ParsedSign& sign = require_sign(result);
    std::cout << serialize(sign, inventory, SourceForm::Alias) << '\n';
    return 0;
}

int cmd_label_encode(const Options& opt) {
    const SymbolInventory inventory = open_inventory(opt);
    const ParseResult result = parse_label(opt.label_text, inventory, opt.strict);
    const ParsedSign& sign = require_sign(result);
    std::cout << encode(sign).to_text() << '\n';
    return 0;
}

int cmd_label_decode(const Options& opt) {
    const SymbolInventory inventory = open_inventory(opt);
    if (opt.corpus_path.empty()) usage_error("decode needs --corpus");
    const MultiLabel label = MultiLabel::from_text(opt.multilabel_text);
    const Corpus corpus = ingest_corpus(opt.corpus_path, inventory);
    const CorpusIndex index = build_index(corpus);
    for (const GlossRef& ref : decode(label, index, inventory.version()))
        std::cout << ref.gloss_id << '\t' << ref.language << '\n';
    return 0;
}

int cmd_label_eta(const Options& opt) {
    const SymbolInventory inventory = open_inventory(opt);
    if (opt.corpus_path.empty()) usage_error("eta needs --corpus");
    const ReportFormat format = parse_format(opt);
    const Corpus corpus = ingest_corpus(opt.corpus_path, inventory);
    if (opt.per_language) {
        const auto results = decoding_efficiency_per_language(corpus);
        if (opt.out_path.empty()) emit_report(results, format, std::cout);
        else emit_report(results, format, opt.out_path);
    } else {
        const EtaResult result = decoding_efficiency(corpus);
        if (opt.out_path.empty()) emit_report(result, format, std::cout);
        else emit_report(result, format, opt.out_path);
    }
    return 0;
}

int cmd_pose_initial_frame(const Options& opt) {
    const LandmarkSeries series = load_landmark_series(opt.series_path);
    const TopologyConfig cfg = resolve_topology_config(opt, series.topology);
    const Hand hand = parse_hand(opt);
    const InitialFrameResult result = detect_initial_frame(series, cfg, hand);
    std::cout << to_string(hand) << ": frame=" << result.chosen
              << " candidates=" << result.candidates.size() << '\n';
    std::cout << "candidates:";
    for (const int frame : result.candidates) std::cout << ' ' << frame;
    std::cout << '\n';
    for (const std::string& note : result.notes) std::cout << "note: " << note << '\n';
    return 0;
}

int cmd_pose_distance(const Options& opt) {
    const LandmarkSeries series = load_landmark_series(opt.series_path);
    const TopologyConfig cfg = resolve_topology_config(opt, series.topology);
    const auto role_a = role_from_string(opt.role_a);
    const auto role_b = role_from_string(opt.role_b);
    if (!role_a || !role_b)
        usage_error("roles must be one of: nose, left_wrist, right_wrist, left_thumb_cmc, "
                    "right_thumb_cmc, left_thumb_mcp, right_thumb_mcp");
    if (opt.norm != "l1" && opt.norm != "l2" && opt.norm != "both")
        usage_error("--norm must be \"l1\", \"l2\", or \"both\"");
    int frame = opt.frame;
    if (!opt.frame_given) {
        frame = detect_initial_frame(series, cfg, parse_hand(opt)).chosen;
        std::cout << "frame: " << frame << '\n';
    }
    if (opt.norm != "l2")
        std::cout << "L1: "
                  << format_double(
                         pairwise_distance(series, cfg, frame, *role_a, *role_b, Norm::L1))
                  << '\n';
    if (opt.norm != "l1")
        std::cout << "L2: "
                  << format_double(
                         pairwise_distance(series, cfg, frame, *role_a, *role_b, Norm::L2))
                  << '\n';
    return 0;
}

int cmd_report_consistency(const Options& opt) {
    const SymbolInventory inventory = open_inventory(opt);
    if (opt.corpus_path.empty()) usage_error("consistency needs --corpus");
    const auto dimension = dimension_from_string(opt.dimension);
    if (!dimension) usage_error("--dimension must be \"tb\" or \"lr\"");
    if (!opt.reference_line.empty() && *dimension != Dimension::LeftRight)
        usage_error("--reference-line only applies to --dimension lr");
    const ReportFormat format = parse_format(opt);
    const Hand hand = parse_hand(opt);
    const TopologyConfig cfg = resolve_topology_config(opt, "body33");
    const Corpus corpus = ingest_corpus(opt.corpus_path, inventory);
    std::optional<std::string> reference;
    if (!opt.reference_line.empty()) reference = opt.reference_line;
    const ConsistencyReport report =
        location_consistency(corpus, *dimension, hand, cfg, inventory, reference);
    std::ostream& summary = opt.out_path.empty() ? std::cerr : std::cout;
    if (opt.out_path.empty()) emit_report(report, format, std::cout);
    else emit_report(report, format, opt.out_path);
    summary << "records: " << report.summary.records << '\n'
            << "parse_failed: " << report.summary.parse_failed << '\n'
            << "no_landmarks: " << report.summary.no_landmarks << '\n'
            << "out_of_scope: " << report.summary.out_of_scope << '\n'
            << "detection_failed: " << report.summary.detection_failed << '\n'
            << "measured: " << report.summary.measured << '\n';
    return 0;
}

int cmd_report_distribution(const Options& opt) {
    const SymbolInventory inventory = open_inventory(opt);
    if (opt.corpus_path.empty()) usage_error("distribution needs --corpus");
    const ReportFormat format = parse_format(opt);
    const Corpus corpus = ingest_corpus(opt.corpus_path, inventory);
    const DistributionReport report = class_distribution(corpus, inventory);
    std::ostream& summary = opt.out_path.empty() ? std::cerr : std::cout;
    if (opt.out_path.empty()) emit_report(report, format, std::cout);
    else emit_report(report, format, opt.out_path);
    summary << "records_counted: " << report.records_counted << '\n'
            << "parse_failed: " << report.parse_failed << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"HamNoSys 4.0 transcription toolkit: parse labels, reduce them to "
                 "numeric multilabels, analyze pose landmark series, and emit corpus "
                 "reports"};
    app.require_subcommand(1);
    Options opt;

    app.add_option("--inventory", opt.inventory_path,
                   "Symbol manifest CSV (falls back to HAMCHECK_INVENTORY)")
        ->envname("HAMCHECK_INVENTORY");

    CLI::App* label = app.add_subcommand("label", "Transcription label operations");
    label->require_subcommand(1);
    CLI::App* label_parse = label->add_subcommand(
        "parse", "Parse a label and print diagnostics plus its canonical alias form");
    label_parse->add_option("label", opt.label_text, "Raw or alias-form label")->required();
    label_parse->add_flag("--strict", opt.strict, "Treat recoverable warnings as errors");
    CLI::App* label_encode =
        label->add_subcommand("encode", "Print the 10-slot multilabel of a label");
    label_encode->add_option("label", opt.label_text, "Raw or alias-form label")->required();
    label_encode->add_flag("--strict", opt.strict, "Treat recoverable warnings as errors");
    CLI::App* label_decode = label->add_subcommand(
        "decode", "List corpus glosses whose multilabel matches the given one");
    label_decode->add_option("multilabel", opt.multilabel_text, "e.g. 3,1,-1,-1,5,2,-1,-1,-1,0")
        ->required();
    label_decode->add_option("--corpus", opt.corpus_path, "Corpus TSV")->required();
    CLI::App* label_eta =
        label->add_subcommand("eta", "Decoding efficiency of a corpus");
    label_eta->add_option("--corpus", opt.corpus_path, "Corpus TSV")->required();
    label_eta->add_flag("--per-language", opt.per_language,
                        "Partition the corpus by language tag");
    label_eta->add_option("--format", opt.format, "csv or json (default csv)");
    label_eta->add_option("--out", opt.out_path, "Write the report here instead of stdout");

    CLI::App* pose = app.add_subcommand("pose", "Landmark series operations");
    pose->require_subcommand(1);
    CLI::App* pose_initial = pose->add_subcommand(
        "initial-frame", "Detect the initial-configuration frame of one hand");
    CLI::App* pose_distance =
        pose->add_subcommand("distance", "Pixel distance between two landmark roles");
    for (CLI::App* sub : {pose_initial, pose_distance}) {
        sub->add_option("--series", opt.series_path, "Landmark JSON file")->required();
        sub->add_option("--config", opt.config_path,
                        "Topology role map JSON (default: built-in for the file's topology)");
        sub->add_option("--hand", opt.hand, "left or right (default right)");
        sub->add_option("--vmin", opt.vmin, "Visibility threshold (default 0.5)")
            ->each([&opt](const std::string&) { opt.vmin_given = true; });
        sub->add_option("--window", opt.window, "Odd smoothing window (default 1)")
            ->each([&opt](const std::string&) { opt.window_given = true; });
    }
    pose_distance->add_option("role_a", opt.role_a, "First landmark role")->required();
    pose_distance->add_option("role_b", opt.role_b, "Second landmark role")->required();
    pose_distance->add_option("--frame", opt.frame, "Frame index (default: auto-detected)")
        ->each([&opt](const std::string&) { opt.frame_given = true; });
    pose_distance->add_option("--norm", opt.norm, "l1, l2, or both (default both)");

    CLI::App* report = app.add_subcommand("report", "Corpus-level batch reports");
    report->require_subcommand(1);
    CLI::App* report_consistency = report->add_subcommand(
        "consistency", "Location-class distance statistics at the detected initial frame");
    report_consistency->add_option("--corpus", opt.corpus_path, "Corpus TSV")->required();
    report_consistency->add_option("--dimension", opt.dimension, "tb or lr")->required();
    report_consistency->add_option("--hand", opt.hand, "left or right (default right)");
    report_consistency->add_option("--reference-line", opt.reference_line,
                                   "Top-bottom alias gating lr rows (default LOC_BREAST_LINE)");
    report_consistency->add_option("--config", opt.config_path, "Topology role map JSON");
    report_consistency->add_option("--vmin", opt.vmin, "Visibility threshold (default 0.5)")
        ->each([&opt](const std::string&) { opt.vmin_given = true; });
    report_consistency->add_option("--window", opt.window, "Odd smoothing window (default 1)")
        ->each([&opt](const std::string&) { opt.window_given = true; });
    report_consistency->add_option("--format", opt.format, "csv or json (default csv)");
    report_consistency->add_option("--out", opt.out_path, "Write the report here");
    CLI::App* report_distribution =
        report->add_subcommand("distribution", "Per-block class usage counts");
    report_distribution->add_option("--corpus", opt.corpus_path, "Corpus TSV")->required();
    report_distribution->add_option("--format", opt.format, "csv or json (default csv)");
    report_distribution->add_option("--out", opt.out_path, "Write the report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (label_parse->parsed()) return cmd_label_parse(opt);
        if (label_encode->parsed()) return cmd_label_encode(opt);
        if (label_decode->parsed()) return cmd_label_decode(opt);
        if (label_eta->parsed()) return cmd_label_eta(opt);
        if (pose_initial->parsed()) return cmd_pose_initial_frame(opt);
        if (pose_distance->parsed()) return cmd_pose_distance(opt);
        if (report_consistency->parsed()) return cmd_report_consistency(opt);
        if (report_distribution->parsed()) return cmd_report_distribution(opt);
    } catch (const Error& e) {
        if (e.code() == "UsageError") {
            std::cerr << "usage error: " << e.what() << '\n';
            return 1;
        }
        std::cerr << "error: " << e.code() << ": " << e.what() << '\n';
        return 2;
    }
    return 1;
}
