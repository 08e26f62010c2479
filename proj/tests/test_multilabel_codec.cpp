#include "doctest.h"
#include "helpers.hpp"

#include "hamcheck/error.hpp"
#include "hamcheck/multilabel_codec.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace hamcheck;
using testutil::data_path;
using testutil::error_code_of;
using testutil::inventory;
using testutil::random_sign;

namespace {

ParsedSign parse_ok(const std::string& label) {
    ParseResult r = parse_label(label, inventory());
    REQUIRE(r.ok());
    return *r.sign;
}

Corpus eta10() { return ingest_corpus(data_path("corpora/eta10.tsv"), inventory()); }
Corpus eta100() { return ingest_corpus(data_path("corpora/eta100.tsv"), inventory()); }

// Brute-force grouping oracle: assigns each distinct gloss text its smallest
// record multilabel, then decides "singly labeled" by comparing every gloss
// against every other one.
struct OracleEta {
    std::size_t unique = 0;
    std::size_t singly = 0;
    std::map<std::size_t, std::size_t> histogram;
    std::size_t max_group = 0;
};

OracleEta oracle_eta(const Corpus& corpus) {
    std::map<std::string, std::array<int, 10>> per_gloss;
    for (const GlossRecord& r : corpus.records) {
        if (!r.sign) continue;
        const std::array<int, 10> label = encode(*r.sign).slots;
        auto [it, fresh] = per_gloss.emplace(r.gloss_text, label);
        if (!fresh && label < it->second) it->second = label;
    }
    OracleEta out;
    out.unique = per_gloss.size();
    std::vector<std::array<int, 10>> labels;
    for (const auto& [text, label] : per_gloss) labels.push_back(label);
    std::set<std::array<int, 10>> counted;
    for (std::size_t a = 0; a < labels.size(); ++a) {
        std::size_t group = 0;
        for (std::size_t b = 0; b < labels.size(); ++b)
            if (labels[b] == labels[a]) ++group;
        if (group == 1) ++out.singly;
        if (counted.insert(labels[a]).second) {
            ++out.histogram[group];
            out.max_group = std::max(out.max_group, group);
        }
    }
    return out;
}

} // namespace

TEST_CASE("multilabel text form round-trips") {
    const std::string text = "3,1,-1,-1,5,2,-1,-1,-1,0";
    const MultiLabel label = MultiLabel::from_text(text);
    CHECK(label[Slot::Symmetry] == 3);
    CHECK(label[Slot::HandshapeBase] == 1);
    CHECK(label[Slot::Thumb] == -1);
    CHECK(label[Slot::Efd] == 5);
    CHECK(label[Slot::MovementPrimary] == 0);
    CHECK(label.to_text() == text);
}

TEST_CASE("malformed multilabel text is rejected") {
    CHECK(error_code_of([] { MultiLabel::from_text("1,2,3"); }) ==
          "MalformedMultiLabel");
    CHECK(error_code_of([] {
              MultiLabel::from_text("a,1,-1,-1,5,2,-1,-1,-1,0");
          }) == "MalformedMultiLabel");
    CHECK(error_code_of([] {
              MultiLabel::from_text("-2,1,-1,-1,5,2,-1,-1,-1,0");
          }) == "MalformedMultiLabel");
    CHECK(error_code_of([] {
              MultiLabel::from_text("3,1,-1,-1,5,2,-1,-1,-1,0,");
          }) == "MalformedMultiLabel");
}

TEST_CASE("encode maps blocks to slots and drops reduced features") {
    SUBCASE("neutral-space sign") {
        const MultiLabel label =
            encode(parse_ok(":SYM_PAR::HS_FIST::EFD_U::PALM_AWAY::MOV_STRAIGHT_U:"));
        CHECK(label.to_text() == "0,0,-1,-1,0,0,-1,-1,-1,0");
    }
    SUBCASE("only mandatory blocks: three non-sentinel slots") {
        const MultiLabel label = encode(parse_ok(":HS_FLAT::EFD_U::PALM_L:"));
        int set_slots = 0;
        for (int v : label.slots)
            if (v != MultiLabel::kAbsent) ++set_slots;
        CHECK(set_slots == 3);
    }
    SUBCASE("alternation contributes its primary index") {
        const MultiLabel label =
            encode(parse_ok(":HS_FLAT::EFD_U::BACKSLASH::EFD_UL::PALM_L:"));
        CHECK(label[Slot::Efd] == 0);
    }
    SUBCASE("movement slot is kind base plus kind-local index") {
        CHECK(encode(parse_ok(":HS_FLAT::EFD_U::PALM_L::MOV_CURVED_U:"))
                  [Slot::MovementPrimary] == 26);
        CHECK(encode(parse_ok(":HS_FLAT::EFD_U::PALM_L::MOV_CIRC:"))
                  [Slot::MovementPrimary] == 34);
        CHECK(encode(parse_ok(":HS_FLAT::EFD_U::PALM_L::MOV_TARGET:"))
                  [Slot::MovementPrimary] == 35);
    }
    SUBCASE("non-manual, second hand, and movement tail are dropped") {
        const MultiLabel plain = encode(parse_ok(":HS_FLAT::EFD_U::PALM_L:"));
        CHECK(encode(parse_ok(":NM_RAISED_BROWS::HS_FLAT::EFD_U::PALM_L:")) == plain);
        CHECK(encode(parse_ok(
                  "[:HS_FIST::EFD_D::PALM_R:]:HS_FLAT::EFD_U::PALM_L:")) == plain);
        const MultiLabel one_move =
            encode(parse_ok(":HS_FLAT::EFD_U::PALM_L::MOV_STRAIGHT_U:"));
        CHECK(encode(parse_ok(":HS_FLAT::EFD_U::PALM_L::MOV_STRAIGHT_U::MOV_SEQ:"
                              ":MOV_CIRC:")) == one_move);
    }
    SUBCASE("every non-sentinel slot is within its block count") {
        std::mt19937 rng(7);
        for (int iter = 0; iter < 200; ++iter) {
            const MultiLabel label = encode(random_sign(rng, inventory()));
            for (std::size_t s = 0; s < MultiLabel::kSlotCount; ++s) {
                const int v = label.slots[s];
                if (v == MultiLabel::kAbsent) continue;
                CHECK(v >= 0);
                CHECK(static_cast<std::size_t>(v) <
                      inventory().block_count(slot_block(static_cast<Slot>(s))));
            }
            CHECK(label[Slot::HandshapeBase] != MultiLabel::kAbsent);
            CHECK(label[Slot::Efd] != MultiLabel::kAbsent);
            CHECK(label[Slot::Palm] != MultiLabel::kAbsent);
        }
    }
}

TEST_CASE("build_index is order-independent and matches a set oracle") {
    const Corpus corpus = eta10();
    const CorpusIndex index = build_index(corpus);

    std::set<std::array<int, 10>> distinct;
    for (const GlossRecord& r : corpus.records)
        if (r.sign) distinct.insert(encode(*r.sign).slots);
    CHECK(index.size() == distinct.size());

    Corpus shuffled = corpus;
    std::mt19937 rng(3);
    std::shuffle(shuffled.records.begin(), shuffled.records.end(), rng);
    const CorpusIndex index2 = build_index(shuffled);
    CHECK(index2.size() == index.size());
    for (const GlossRecord& r : corpus.records) {
        if (!r.sign) continue;
        const MultiLabel label = encode(*r.sign);
        CHECK(decode(label, index) == decode(label, index2));
    }
}

TEST_CASE("decode returns colliding glosses sorted by id") {
    const Corpus corpus = eta10();
    const CorpusIndex index = build_index(corpus);
    // g008 and g009 are the engineered collision pair of the bundled corpus.
    const MultiLabel label = encode(parse_ok(":HS_CEE::EFD_A::PALM_AWAY:"));
    const std::vector<GlossRef> refs = decode(label, index);
    REQUIRE(refs.size() == 2);
    CHECK(refs[0].gloss_id == "g008");
    CHECK(refs[1].gloss_id == "g009");

    SUBCASE("unseen multilabel decodes to nothing") {
        MultiLabel unseen;
        unseen[Slot::HandshapeBase] = 11;
        unseen[Slot::Efd] = 25;
        unseen[Slot::Palm] = 7;
        CHECK(decode(unseen, index).empty());
    }
    SUBCASE("round-trip containment over the whole corpus") {
        for (const GlossRecord& r : corpus.records) {
            if (!r.sign) continue;
            const std::vector<GlossRef> got = decode(encode(*r.sign), index);
            CHECK(std::any_of(got.begin(), got.end(), [&](const GlossRef& g) {
                return g.gloss_id == r.gloss_id;
            }));
        }
    }
    SUBCASE("version check") {
        CHECK(decode(label, index, inventory().version()).size() == 2);
        CHECK(error_code_of([&] { decode(label, index, "other-version"); }) ==
              "InventoryVersionMismatch");
    }
}

TEST_CASE("decoding efficiency on the 10-gloss corpus") {
    const EtaResult r = decoding_efficiency(eta10());
    CHECK(r.unique_glosses == 10);
    CHECK(r.singly_labeled == 8);
    CHECK(r.eta == doctest::Approx(0.8).epsilon(1e-12));
    REQUIRE(r.collision_histogram.size() == 2);
    CHECK(r.collision_histogram.at(1) == 8);
    CHECK(r.collision_histogram.at(2) == 1);
    CHECK(r.max_collision == 2);
}

TEST_CASE("decoding efficiency matches the brute-force oracle on eta100") {
    const Corpus corpus = eta100();
    const EtaResult r = decoding_efficiency(corpus);
    const OracleEta oracle = oracle_eta(corpus);
    CHECK(r.unique_glosses == oracle.unique);
    CHECK(r.singly_labeled == oracle.singly);
    CHECK(r.collision_histogram == oracle.histogram);
    CHECK(r.max_collision == oracle.max_group);
    CHECK(r.eta == doctest::Approx(0.8).epsilon(1e-12));

    SUBCASE("histogram sizes sum back to the gloss count") {
        std::size_t total = 0;
        for (const auto& [size, groups] : r.collision_histogram)
            total += size * groups;
        CHECK(total == r.unique_glosses);
    }
    SUBCASE("invariant under record permutation") {
        Corpus shuffled = corpus;
        std::mt19937 rng(11);
        std::shuffle(shuffled.records.begin(), shuffled.records.end(), rng);
        const EtaResult r2 = decoding_efficiency(shuffled);
        CHECK(r2.unique_glosses == r.unique_glosses);
        CHECK(r2.singly_labeled == r.singly_labeled);
        CHECK(r2.collision_histogram == r.collision_histogram);
        CHECK(r2.eta == r.eta);
    }
}

TEST_CASE("fully injective corpus has eta 1.0") {
    std::istringstream in(
        "gloss_id\tlanguage\tgloss_text\thamnosys\tlandmark_path\n"
        "a\tDGS\tw\t:HS_FLAT::EFD_U::PALM_L:\t\n"
        "b\tDGS\tx\t:HS_FIST::EFD_U::PALM_L:\t\n"
        "c\tDGS\ty\t:HS_INDEX::EFD_U::PALM_L:\t\n"
        "d\tDGS\tz\t:HS_CEE::EFD_U::PALM_L:\t\n");
    const Corpus corpus = ingest_corpus(in, "t", "", inventory());
    const EtaResult r = decoding_efficiency(corpus);
    CHECK(r.unique_glosses == 4);
    CHECK(r.eta == 1.0);
    CHECK(r.max_collision == 1);
}

TEST_CASE("grouping is by distinct gloss text, not by record") {
    // Two records of the same gloss: dropping one must not change eta.
    const std::string rows =
        "a\tDGS\tsame\t:HS_FLAT::EFD_U::PALM_L:\t\n"
        "b\tDGS\tother\t:HS_FIST::EFD_D::PALM_R:\t\n";
    const std::string dup = "c\tDGS\tsame\t:HS_FLAT::EFD_U::PALM_L::MOV_CIRC:\t\n";
    std::istringstream small(
        "gloss_id\tlanguage\tgloss_text\thamnosys\tlandmark_path\n" + rows);
    std::istringstream big(
        "gloss_id\tlanguage\tgloss_text\thamnosys\tlandmark_path\n" + rows + dup);
    const EtaResult without = decoding_efficiency(ingest_corpus(small, "s", "", inventory()));
    const EtaResult with = decoding_efficiency(ingest_corpus(big, "b", "", inventory()));
    CHECK(with.unique_glosses == without.unique_glosses);
    CHECK(with.singly_labeled == without.singly_labeled);
    CHECK(with.eta == without.eta);
}

TEST_CASE("per-language efficiency partitions the corpus") {
    const std::map<std::string, EtaResult> per_language =
        decoding_efficiency_per_language(eta100());
    REQUIRE(per_language.size() == 4);
    std::size_t total_unique = 0;
    for (const auto& [language, result] : per_language) {
        total_unique += result.unique_glosses;
        CHECK(result.eta > 0.0);
        CHECK(result.eta <= 1.0);
    }
    // Gloss texts are distinct across the bundled corpus, so the partition
    // covers every gloss exactly once.
    CHECK(total_unique == 100);
}

TEST_CASE("eta errors") {
    Corpus empty;
    CHECK(error_code_of([&] { decoding_efficiency(empty); }) == "EmptyCorpus");
    CHECK(error_code_of([&] { build_index(empty); }) == "EmptyCorpus");

    Corpus unparsable;
    GlossRecord r;
    r.gloss_id = "a";
    r.gloss_text = "x";
    r.parse_status = ParseStatus::Failed;
    unparsable.records.push_back(r);
    CHECK(error_code_of([&] { decoding_efficiency(unparsable); }) ==
          "AllRecordsUnparsable");
}
