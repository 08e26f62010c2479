#pragma once

#include "hamcheck/corpus.hpp"
#include "hamcheck/multilabel_codec.hpp"
#include "hamcheck/pose_kinematics.hpp"
#include "hamcheck/symbol_inventory.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hamcheck {

/// Streaming mean/variance cell (Welford update, Chan merge), so partial
/// results from any corpus partitioning merge into the serial answer.
struct StatAccumulator {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;  // sum of squared deviations from the mean

    void add(double x);
    void merge(const StatAccumulator& other);
    double sample_std() const;  // divisor n-1; only valid when n >= 2
};

enum class Dimension { TopBottom, LeftRight };

std::string_view to_string(Dimension dimension);
std::optional<Dimension> dimension_from_string(std::string_view name);

struct ConsistencyRow {
    int class_index = 0;      // -1 for the synthetic neutral class
    std::string class_alias;  // "neutral" when class_index is -1
    Norm norm = Norm::L1;
    std::size_t n = 0;
    double mean_px = 0.0;
    std::optional<double> std_px;  // absent when n == 1
};

struct ConsistencySummary {
    std::size_t records = 0;
    std::size_t parse_failed = 0;
    std::size_t no_landmarks = 0;      // record has no landmark file
    std::size_t out_of_scope = 0;      // not in the requested dimension's scope
    std::size_t detection_failed = 0;  // pose loading, frame detection, or visibility
    std::size_t measured = 0;
};

struct ConsistencyReport {
    Dimension dimension = Dimension::TopBottom;
    Hand hand = Hand::Right;
    double visibility_threshold = 0.5;
    int smoothing_window = 1;
    std::optional<std::string> reference_line;  // alias; LeftRight runs only
    std::vector<ConsistencyRow> rows;  // classes ascending, neutral last, L1 before L2
    ConsistencySummary summary;
};

/// Per-record nose-to-wrist distance statistics grouped by location class.
/// add() is order-independent and merge() is associative, so a corpus may be
/// partitioned arbitrarily and the merged result equals the serial one.
class ConsistencyAccumulator {
public:
    ConsistencyAccumulator(Dimension dimension, Hand hand, TopologyConfig cfg,
                           std::optional<int> reference_tb);

    void add(const GlossRecord& record);
    void merge(const ConsistencyAccumulator& other);
    ConsistencyReport finalize(const SymbolInventory& inventory) const;

private:
    Dimension dimension_;
    Hand hand_;
    TopologyConfig cfg_;
    std::optional<int> reference_tb_;
    std::map<std::pair<int, int>, StatAccumulator> cells_;  // (class, norm) -> stats
    ConsistencySummary summary_;
};

/// Table-style location consistency over a corpus. For TopBottom, records
/// without a tb class form the synthetic "neutral" class; for LeftRight,
/// only records whose tb class equals the reference line participate
/// (default: the LOC_BREAST_LINE alias). Distances are measured at the
/// detected initial frame between the nose and the requested hand's wrist.
/// Errors: InvalidReferenceLine, NoEligibleRecords.
ConsistencyReport location_consistency(const Corpus& corpus, Dimension dimension,
                                       Hand hand, const TopologyConfig& cfg,
                                       const SymbolInventory& inventory,
                                       const std::optional<std::string>& reference_alias = {});

struct DistributionCell {
    int class_index = 0;
    std::string class_alias;
    std::size_t count = 0;
};

struct DistributionBlock {
    Block block = Block::Symmetry;
    std::vector<DistributionCell> cells;  // dense over the block, zeros included
};

struct DistributionReport {
    std::string corpus_name;
    std::string inventory_version;
    std::vector<DistributionBlock> blocks;  // one per multilabel slot, slot order
    std::size_t records_counted = 0;
    std::size_t parse_failed = 0;
};

/// Per-slot class counts over encoded multilabels; sentinel slots count as
/// block-absent. Same partitioning guarantee as ConsistencyAccumulator.
class DistributionAccumulator {
public:
    explicit DistributionAccumulator(const SymbolInventory& inventory);

    void add(const GlossRecord& record);
    void merge(const DistributionAccumulator& other);
    DistributionReport finalize(const SymbolInventory& inventory) const;

private:
    std::array<std::vector<std::size_t>, MultiLabel::kSlotCount> counts_;
    std::size_t records_counted_ = 0;
    std::size_t parse_failed_ = 0;
};

/// Errors: AllRecordsUnparsable.
DistributionReport class_distribution(const Corpus& corpus, const SymbolInventory& inventory);

} // namespace hamcheck
