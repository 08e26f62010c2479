// Microbenchmarks for the hot paths: tokenization, parsing, serialization,
// multilabel encoding, corpus-level decoding efficiency, and initial-frame
// detection on a synthetic landmark series.

#include "hamcheck/corpus.hpp"
#include "hamcheck/label_parser.hpp"
#include "hamcheck/multilabel_codec.hpp"
#include "hamcheck/pose_kinematics.hpp"
#include "hamcheck/symbol_inventory.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <string>
#include <vector>

namespace {

using namespace hamcheck;

const SymbolInventory& inventory() {
    static const SymbolInventory inv =
        load_inventory(std::string(HAMCHECK_DATA_DIR) + "/hamnosys4_reference.csv");
    return inv;
}

// Distinct but structurally typical label: handshape, finger direction,
// palm, location, one movement.
std::string sample_label(const SymbolInventory& inv, int i) {
    auto atom = [&](Block block, int index) {
        return ":" + inv.at_class(block, index).alias + ":";
    };
    return atom(Block::HandshapeBase, i % 12) +
           atom(Block::ExtendedFingerDirection, i % 26) +
           atom(Block::PalmOrientation, i % 8) + atom(Block::LocationTB, i % 36) +
           atom(Block::Movement, i % 26);
}

void bm_tokenize(benchmark::State& state) {
    const SymbolInventory& inv = inventory();
    const std::string text = sample_label(inv, 7);
    for (auto _ : state) benchmark::DoNotOptimize(tokenize(text, inv));
}
BENCHMARK(bm_tokenize);

void bm_parse_label(benchmark::State& state) {
    const SymbolInventory& inv = inventory();
    const std::string text = sample_label(inv, 7);
    for (auto _ : state) benchmark::DoNotOptimize(parse_label(text, inv));
}
BENCHMARK(bm_parse_label);

void bm_serialize(benchmark::State& state) {
    const SymbolInventory& inv = inventory();
    const ParsedSign sign = *parse_label(sample_label(inv, 7), inv).sign;
    for (auto _ : state)
        benchmark::DoNotOptimize(serialize(sign, inv, SourceForm::Alias));
}
BENCHMARK(bm_serialize);

void bm_encode(benchmark::State& state) {
    const SymbolInventory& inv = inventory();
    const ParsedSign sign = *parse_label(sample_label(inv, 7), inv).sign;
    for (auto _ : state) benchmark::DoNotOptimize(encode(sign));
}
BENCHMARK(bm_encode);

Corpus synthetic_corpus(const SymbolInventory& inv, int glosses) {
    Corpus corpus;
    corpus.name = "bench";
    corpus.inventory_version = inv.version();
    for (int i = 0; i < glosses; ++i) {
        GlossRecord record;
        record.gloss_id = "b" + std::to_string(i);
        record.language = "DGS";
        record.gloss_text = "gloss-" + std::to_string(i);
        record.hamnosys = sample_label(inv, i);
        record.parse_status = ParseStatus::Ok;
        record.sign = parse_label(record.hamnosys, inv).sign;
        corpus.records.push_back(std::move(record));
    }
    return corpus;
}

void bm_decoding_efficiency(benchmark::State& state) {
    const Corpus corpus = synthetic_corpus(inventory(), static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(decoding_efficiency(corpus));
}
BENCHMARK(bm_decoding_efficiency)->Arg(100)->Arg(1000);

LandmarkSeries synthetic_series(int frames) {
    LandmarkSeries series;
    series.topology = "hand21";
    series.fps = 30.0;
    series.width = 256;
    series.height = 256;
    series.frames.resize(static_cast<std::size_t>(frames));
    for (int t = 0; t < frames; ++t) {
        LandmarkFrame& frame = series.frames[static_cast<std::size_t>(t)];
        frame.index = t;
        frame.points.assign(21, LandmarkPoint{0.5, 0.5, 0.0, 1.0});
        const double v = 0.5 + 0.4 * std::sin(t / 7.0);
        for (int p = 0; p < 3; ++p) {
            frame.points[static_cast<std::size_t>(p)].x = v + 0.01 * p;
            frame.points[static_cast<std::size_t>(p)].y = v + 0.005 + 0.01 * p;
        }
    }
    return series;
}

void bm_detect_initial_frame(benchmark::State& state) {
    const LandmarkSeries series = synthetic_series(static_cast<int>(state.range(0)));
    TopologyConfig cfg = TopologyConfig::defaults_for("hand21");
    cfg.smoothing_window = 5;
    for (auto _ : state)
        benchmark::DoNotOptimize(detect_initial_frame(series, cfg, Hand::Right));
}
BENCHMARK(bm_detect_initial_frame)->Arg(120)->Arg(1200);

} // namespace

BENCHMARK_MAIN();
