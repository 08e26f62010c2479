#include "hamcheck/corpus_analytics.hpp"

#include "hamcheck/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace hamcheck {

void StatAccumulator::add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
}

void StatAccumulator::merge(const StatAccumulator& other) {
    if (other.n == 0) return;
    if (n == 0) {
        *this = other;
        return;
    }
    const double delta = other.mean - mean;
    const double total = static_cast<double>(n + other.n);
    mean += delta * static_cast<double>(other.n) / total;
    m2 += other.m2 +
          delta * delta * static_cast<double>(n) * static_cast<double>(other.n) / total;
    n += other.n;
}

double StatAccumulator::sample_std() const {
    return std::sqrt(m2 / static_cast<double>(n - 1));
}

std::string_view to_string(Dimension dimension) {
    return dimension == Dimension::TopBottom ? "tb" : "lr";
}

std::optional<Dimension> dimension_from_string(std::string_view name) {
    if (name == "tb") return Dimension::TopBottom;
    if (name == "lr") return Dimension::LeftRight;
    return std::nullopt;
}

ConsistencyAccumulator::ConsistencyAccumulator(Dimension dimension, Hand hand,
                                               TopologyConfig cfg,
                                               std::optional<int> reference_tb)
    : dimension_(dimension), hand_(hand), cfg_(std::move(cfg)),
      reference_tb_(reference_tb) {}

void ConsistencyAccumulator::add(const GlossRecord& record) {
    ++summary_.records;
    if (!record.sign) {
        ++summary_.parse_failed;
        return;
    }
    if (record.landmark_path.empty()) {
        ++summary_.no_landmarks;
        return;
    }
    const MultiLabel label = encode(*record.sign);
    int cls;
    if (dimension_ == Dimension::TopBottom) {
        cls = label[Slot::LocationTB];  // -1 becomes the synthetic neutral class
    } else {
        if (!reference_tb_ || label[Slot::LocationTB] != *reference_tb_ ||
            label[Slot::LocationLR] < 0) {
            ++summary_.out_of_scope;
            return;
        }
        cls = label[Slot::LocationLR];
    }
    double l1, l2;
    try {
        const LandmarkSeries series = load_landmark_series(record.landmark_path);
        const InitialFrameResult initial = detect_initial_frame(series, cfg_, hand_);
        const Role wrist = hand_ == Hand::Right ? Role::RightWrist : Role::LeftWrist;
        l1 = pairwise_distance(series, cfg_, initial.chosen, Role::Nose, wrist, Norm::L1);
        l2 = pairwise_distance(series, cfg_, initial.chosen, Role::Nose, wrist, Norm::L2);
    } catch (const Error&) {
        ++summary_.detection_failed;
        return;
    }
    cells_[{cls, 0}].add(l1);
    cells_[{cls, 1}].add(l2);
    ++summary_.measured;
}

void ConsistencyAccumulator::merge(const ConsistencyAccumulator& other) {
    for (const auto& [key, stats] : other.cells_) cells_[key].merge(stats);
    summary_.records += other.summary_.records;
    summary_.parse_failed += other.summary_.parse_failed;
    summary_.no_landmarks += other.summary_.no_landmarks;
    summary_.out_of_scope += other.summary_.out_of_scope;
    summary_.detection_failed += other.summary_.detection_failed;
    summary_.measured += other.summary_.measured;
}

ConsistencyReport ConsistencyAccumulator::finalize(const SymbolInventory& inventory) const {
    ConsistencyReport report;
    report.dimension = dimension_;
    report.hand = hand_;
    report.visibility_threshold = cfg_.visibility_threshold;
    report.smoothing_window = cfg_.smoothing_window;
    if (reference_tb_)
        report.reference_line = inventory.at_class(Block::LocationTB, *reference_tb_).alias;
    report.summary = summary_;

    const Block block =
        dimension_ == Dimension::TopBottom ? Block::LocationTB : Block::LocationLR;
    std::vector<std::pair<int, int>> keys;
    keys.reserve(cells_.size());
    for (const auto& [key, stats] : cells_) keys.push_back(key);
    // Classes ascending with the synthetic neutral class (-1) last.
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        const int ca = a.first < 0 ? std::numeric_limits<int>::max() : a.first;
        const int cb = b.first < 0 ? std::numeric_limits<int>::max() : b.first;
        return std::tie(ca, a.second) < std::tie(cb, b.second);
    });
    for (const auto& key : keys) {
        const StatAccumulator& stats = cells_.at(key);
        ConsistencyRow row;
        row.class_index = key.first;
        row.class_alias =
            key.first < 0 ? "neutral" : inventory.at_class(block, key.first).alias;
        row.norm = key.second == 0 ? Norm::L1 : Norm::L2;
        row.n = stats.n;
        row.mean_px = stats.mean;
        if (stats.n >= 2) row.std_px = stats.sample_std();
        report.rows.push_back(std::move(row));
    }
    return report;
}

ConsistencyReport location_consistency(const Corpus& corpus, Dimension dimension,
                                       Hand hand, const TopologyConfig& cfg,
                                       const SymbolInventory& inventory,
                                       const std::optional<std::string>& reference_alias) {
    std::optional<int> reference_tb;
    if (dimension == Dimension::LeftRight) {
        const std::string alias = reference_alias.value_or("LOC_BREAST_LINE");
        const SymbolEntry* entry = inventory.find(alias);
        if (!entry || entry->block != Block::LocationTB)
            raise("InvalidReferenceLine",
                  "reference line \"" + alias + "\" is not a top-bottom location symbol");
        reference_tb = entry->class_index;
    }
    ConsistencyAccumulator acc(dimension, hand, cfg, reference_tb);
    for (const GlossRecord& record : corpus.records) acc.add(record);
    ConsistencyReport report = acc.finalize(inventory);
    if (report.rows.empty())
        raise("NoEligibleRecords",
              "no record in \"" + corpus.name + "\" could be measured for the " +
                  std::string(to_string(dimension)) + " dimension");
    return report;
}

DistributionAccumulator::DistributionAccumulator(const SymbolInventory& inventory) {
    for (std::size_t s = 0; s < MultiLabel::kSlotCount; ++s)
        counts_[s].assign(inventory.block_count(slot_block(static_cast<Slot>(s))), 0);
}

void DistributionAccumulator::add(const GlossRecord& record) {
    if (!record.sign) {
        ++parse_failed_;
        return;
    }
    const MultiLabel label = encode(*record.sign);
    for (std::size_t s = 0; s < MultiLabel::kSlotCount; ++s) {
        const int value = label.slots[s];
        if (value < 0) continue;
        if (static_cast<std::size_t>(value) >= counts_[s].size())
            counts_[s].resize(static_cast<std::size_t>(value) + 1, 0);
        ++counts_[s][static_cast<std::size_t>(value)];
    }
    ++records_counted_;
}

void DistributionAccumulator::merge(const DistributionAccumulator& other) {
    for (std::size_t s = 0; s < MultiLabel::kSlotCount; ++s) {
        if (counts_[s].size() < other.counts_[s].size())
            counts_[s].resize(other.counts_[s].size(), 0);
        for (std::size_t c = 0; c < other.counts_[s].size(); ++c)
            counts_[s][c] += other.counts_[s][c];
    }
    records_counted_ += other.records_counted_;
    parse_failed_ += other.parse_failed_;
}

DistributionReport DistributionAccumulator::finalize(const SymbolInventory& inventory) const {
    DistributionReport report;
    report.inventory_version = inventory.version();
    report.records_counted = records_counted_;
    report.parse_failed = parse_failed_;
    for (std::size_t s = 0; s < MultiLabel::kSlotCount; ++s) {
        DistributionBlock block;
        block.block = slot_block(static_cast<Slot>(s));
        for (std::size_t c = 0; c < counts_[s].size(); ++c) {
            DistributionCell cell;
            cell.class_index = static_cast<int>(c);
            const SymbolEntry* entry = inventory.find_by_class(block.block, cell.class_index);
            cell.class_alias = entry ? entry->alias : "";
            cell.count = counts_[s][c];
            block.cells.push_back(std::move(cell));
        }
        report.blocks.push_back(std::move(block));
    }
    return report;
}

DistributionReport class_distribution(const Corpus& corpus, const SymbolInventory& inventory) {
    DistributionAccumulator acc(inventory);
    for (const GlossRecord& record : corpus.records) acc.add(record);
    DistributionReport report = acc.finalize(inventory);
    report.corpus_name = corpus.name;
    if (report.records_counted == 0)
        raise("AllRecordsUnparsable",
              "no record in \"" + corpus.name + "\" has a usable parse");
    return report;
}

} // namespace hamcheck
