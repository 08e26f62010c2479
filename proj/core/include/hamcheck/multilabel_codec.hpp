#pragma once

#include "hamcheck/corpus.hpp"
#include "hamcheck/label_parser.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hamcheck {

/// The ten multilabel slots, in storage order.
enum class Slot : std::size_t {
    Symmetry,
    HandshapeBase,
    Thumb,
    Bending,
    Efd,
    Palm,
    LocationLR,
    LocationTB,
    Distance,
    MovementPrimary,
};

/// Block whose class indices a slot carries.
Block slot_block(Slot slot);
std::string_view slot_name(Slot slot);

/// Fixed-length numeric reduction of a ParsedSign. Slot values are class
/// indices of the slot's block; -1 marks an absent optional block. The
/// reduction drops non-manual features, the second hand, alternation
/// alternates, and every movement atom after the first.
struct MultiLabel {
    static constexpr std::size_t kSlotCount = 10;
    static constexpr int kAbsent = -1;

    std::array<int, kSlotCount> slots;

    MultiLabel() { slots.fill(kAbsent); }

    int& operator[](Slot s) { return slots[static_cast<std::size_t>(s)]; }
    int operator[](Slot s) const { return slots[static_cast<std::size_t>(s)]; }

    auto operator<=>(const MultiLabel&) const = default;

    /// Comma-separated text form, e.g. "3,1,-1,-1,5,2,-1,-1,-1,0".
    std::string to_text() const;

    /// Parses the text form. Errors: MalformedMultiLabel.
    static MultiLabel from_text(std::string_view text);
};

MultiLabel encode(const ParsedSign& sign);

struct GlossRef {
    std::string gloss_id;
    std::string language;

    bool operator==(const GlossRef&) const = default;
};

/// Exact inverse mapping multilabel -> glosses carrying it. Buckets are
/// sorted by gloss_id, so the index is identical for any record order.
class CorpusIndex {
public:
    const std::string& inventory_version() const { return inventory_version_; }
    std::size_t size() const { return buckets_.size(); }
    const std::vector<GlossRef>* find(const MultiLabel& label) const;

private:
    friend CorpusIndex build_index(const Corpus& corpus);

    std::map<MultiLabel, std::vector<GlossRef>> buckets_;
    std::string inventory_version_;
};

/// Errors: EmptyCorpus.
CorpusIndex build_index(const Corpus& corpus);

/// All glosses whose encoded multilabel equals `label`, sorted by gloss_id.
std::vector<GlossRef> decode(const MultiLabel& label, const CorpusIndex& index);

/// Same, but first checks that the index was built over the same inventory
/// version. Errors: InventoryVersionMismatch.
std::vector<GlossRef> decode(const MultiLabel& label, const CorpusIndex& index,
                             std::string_view inventory_version);

struct EtaResult {
    std::size_t unique_glosses = 0;
    std::size_t singly_labeled = 0;
    double eta = 0.0;  // singly_labeled / unique_glosses
    std::map<std::size_t, std::size_t> collision_histogram;  // group size -> groups
    std::size_t max_collision = 0;
};

/// Decoding efficiency over distinct gloss texts. A gloss is singly labeled
/// iff no other gloss shares its multilabel. Glosses whose records all
/// failed to parse are excluded. Errors: EmptyCorpus, AllRecordsUnparsable.
EtaResult decoding_efficiency(const Corpus& corpus);

/// Per-language partition of the same computation. Languages with no
/// parseable record are omitted.
std::map<std::string, EtaResult> decoding_efficiency_per_language(const Corpus& corpus);

} // namespace hamcheck
