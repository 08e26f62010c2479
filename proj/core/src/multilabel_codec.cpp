#include "hamcheck/multilabel_codec.hpp"

#include "hamcheck/error.hpp"

#include <algorithm>
#include <charconv>

namespace hamcheck {

Block slot_block(Slot slot) {
    switch (slot) {
    case Slot::Symmetry: return Block::Symmetry;
    case Slot::HandshapeBase: return Block::HandshapeBase;
    case Slot::Thumb: return Block::ThumbPosition;
    case Slot::Bending: return Block::Bending;
    case Slot::Efd: return Block::ExtendedFingerDirection;
    case Slot::Palm: return Block::PalmOrientation;
    case Slot::LocationLR: return Block::LocationLR;
    case Slot::LocationTB: return Block::LocationTB;
    case Slot::Distance: return Block::LocationDistance;
    case Slot::MovementPrimary: return Block::Movement;
    }
    return Block::Punctuation;
}

std::string_view slot_name(Slot slot) {
    switch (slot) {
    case Slot::Symmetry: return "symmetry";
    case Slot::HandshapeBase: return "handshape_base";
    case Slot::Thumb: return "thumb";
    case Slot::Bending: return "bending";
    case Slot::Efd: return "efd";
    case Slot::Palm: return "palm";
    case Slot::LocationLR: return "location_lr";
    case Slot::LocationTB: return "location_tb";
    case Slot::Distance: return "distance";
    case Slot::MovementPrimary: return "movement_primary";
    }
    return "";
}

std::string MultiLabel::to_text() const {
    std::string out;
    for (std::size_t i = 0; i < kSlotCount; ++i) {
        if (i) out += ',';
        out += std::to_string(slots[i]);
    }
    return out;
}

MultiLabel MultiLabel::from_text(std::string_view text) {
    MultiLabel label;
    std::size_t slot = 0;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        const std::string_view field =
            text.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
        if (slot >= kSlotCount)
            raise("MalformedMultiLabel", "expected exactly 10 comma-separated slots, got more");
        int value = 0;
        const auto [ptr, ec] =
            std::from_chars(field.data(), field.data() + field.size(), value);
        if (ec != std::errc{} || ptr != field.data() + field.size() || value < kAbsent)
            raise("MalformedMultiLabel",
                  "slot " + std::to_string(slot) + " is not an integer >= -1: \"" +
                      std::string(field) + "\"");
        label.slots[slot++] = value;
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (slot != kSlotCount)
        raise("MalformedMultiLabel", "expected exactly 10 comma-separated slots, got " +
                                         std::to_string(slot));
    return label;
}

MultiLabel encode(const ParsedSign& sign) {
    MultiLabel label;
    if (sign.symmetry) label[Slot::Symmetry] = *sign.symmetry;
    label[Slot::HandshapeBase] = sign.handshape.base;
    if (sign.handshape.thumb) label[Slot::Thumb] = *sign.handshape.thumb;
    if (sign.handshape.bending) label[Slot::Bending] = *sign.handshape.bending;
    label[Slot::Efd] = sign.hand_position.efd.primary;
    label[Slot::Palm] = sign.hand_position.palm.primary;
    if (sign.location) {
        if (sign.location->lr) label[Slot::LocationLR] = *sign.location->lr;
        if (sign.location->tb) label[Slot::LocationTB] = *sign.location->tb;
        if (sign.location->distance) label[Slot::Distance] = *sign.location->distance;
    }
    if (!sign.movement.empty()) {
        const MovementAtom& first = sign.movement.front();
        label[Slot::MovementPrimary] =
            movement_range(to_subclass(first.kind)).begin + first.class_index;
    }
    return label;
}

const std::vector<GlossRef>* CorpusIndex::find(const MultiLabel& label) const {
    const auto it = buckets_.find(label);
    return it == buckets_.end() ? nullptr : &it->second;
}

CorpusIndex build_index(const Corpus& corpus) {
    if (corpus.records.empty()) raise("EmptyCorpus", "corpus has no records to index");
    CorpusIndex index;
    index.inventory_version_ = corpus.inventory_version;
    for (const GlossRecord& r : corpus.records) {
        if (!r.sign) continue;
        index.buckets_[encode(*r.sign)].push_back({r.gloss_id, r.language});
    }
    for (auto& [label, refs] : index.buckets_)
        std::sort(refs.begin(), refs.end(),
                  [](const GlossRef& a, const GlossRef& b) { return a.gloss_id < b.gloss_id; });
    return index;
}

std::vector<GlossRef> decode(const MultiLabel& label, const CorpusIndex& index) {
    const std::vector<GlossRef>* refs = index.find(label);
    return refs ? *refs : std::vector<GlossRef>{};
}

std::vector<GlossRef> decode(const MultiLabel& label, const CorpusIndex& index,
                             std::string_view inventory_version) {
    if (index.inventory_version() != inventory_version)
        raise("InventoryVersionMismatch",
              "index was built with inventory \"" + index.inventory_version() +
                  "\" but the active inventory is \"" + std::string(inventory_version) + "\"");
    return decode(label, index);
}

namespace {

// Groups distinct gloss texts by multilabel. A gloss appearing on several
// records keeps its lexicographically smallest label so the grouping does
// not depend on record order.
EtaResult eta_over(const std::vector<const GlossRecord*>& records) {
    std::map<std::string, MultiLabel> per_gloss;
    for (const GlossRecord* r : records) {
        if (!r->sign) continue;
        const MultiLabel label = encode(*r->sign);
        const auto [it, inserted] = per_gloss.try_emplace(r->gloss_text, label);
        if (!inserted && label < it->second) it->second = label;
    }
    if (per_gloss.empty())
        raise("AllRecordsUnparsable", "no record in the corpus has a usable parse");

    std::map<MultiLabel, std::size_t> groups;
    for (const auto& [gloss, label] : per_gloss) ++groups[label];

    EtaResult result;
    result.unique_glosses = per_gloss.size();
    for (const auto& [label, size] : groups) {
        ++result.collision_histogram[size];
        if (size == 1) ++result.singly_labeled;
        result.max_collision = std::max(result.max_collision, size);
    }
    result.eta = static_cast<double>(result.singly_labeled) /
                 static_cast<double>(result.unique_glosses);
    return result;
}

} // namespace

EtaResult decoding_efficiency(const Corpus& corpus) {
    if (corpus.records.empty()) raise("EmptyCorpus", "corpus has no records");
    std::vector<const GlossRecord*> all;
    all.reserve(corpus.records.size());
    for (const GlossRecord& r : corpus.records) all.push_back(&r);
    return eta_over(all);
}

std::map<std::string, EtaResult> decoding_efficiency_per_language(const Corpus& corpus) {
    if (corpus.records.empty()) raise("EmptyCorpus", "corpus has no records");
    std::map<std::string, std::vector<const GlossRecord*>> partitions;
    for (const GlossRecord& r : corpus.records) partitions[r.language].push_back(&r);
    std::map<std::string, EtaResult> results;
    for (const auto& [language, records] : partitions) {
        const bool any = std::any_of(records.begin(), records.end(),
                                     [](const GlossRecord* r) { return r->sign.has_value(); });
        if (!any) continue;
        results.emplace(language, eta_over(records));
    }
    return results;
}

} // namespace hamcheck
