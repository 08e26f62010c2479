#pragma once

// Shared fixtures for the test binaries: repo data paths, a lazily loaded
// reference inventory, and a random-sign generator used by the round-trip
// property tests.

#include "hamcheck/error.hpp"
#include "hamcheck/label_parser.hpp"
#include "hamcheck/symbol_inventory.hpp"

#include <functional>
#include <random>
#include <string>

namespace testutil {

inline std::string data_path(const std::string& rel) {
    return std::string(HAMCHECK_DATA_DIR) + "/" + rel;
}

inline const hamcheck::SymbolInventory& inventory() {
    static const hamcheck::SymbolInventory inv =
        hamcheck::load_inventory(data_path("hamnosys4_reference.csv"));
    return inv;
}

/// Runs fn and returns the hamcheck::Error code it throws, or "" if it
/// does not throw.
inline std::string error_code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const hamcheck::Error& e) {
        return e.code();
    }
    return {};
}

/// Uniformly random valid ParsedSign over the inventory's blocks. Movement
/// starts Sequential and locations are never engaged-but-empty, so every
/// generated sign has a canonical serialization that reparses to itself.
inline hamcheck::ParsedSign random_sign(std::mt19937& rng,
                                        const hamcheck::SymbolInventory& inv) {
    using namespace hamcheck;
    auto count = [&](Block b) { return static_cast<int>(inv.block_count(b)); };
    auto pick = [&](Block b) {
        return std::uniform_int_distribution<int>(0, count(b) - 1)(rng);
    };
    auto chance = [&](double p) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
    };
    auto alternation = [&](Block b, double alt_p) {
        Alternation a;
        a.primary = pick(b);
        if (chance(alt_p)) a.alternate = pick(b);
        return a;
    };
    auto location = [&]() {
        HandLocation loc;
        if (chance(0.5)) loc.lr = pick(Block::LocationLR);
        if (chance(0.6)) loc.tb = pick(Block::LocationTB);
        if (chance(0.4)) loc.distance = pick(Block::LocationDistance);
        if (!loc.lr && !loc.tb && !loc.distance) loc.tb = pick(Block::LocationTB);
        return loc;
    };
    auto handshape = [&]() {
        Handshape hs;
        hs.base = pick(Block::HandshapeBase);
        if (chance(0.4)) hs.thumb = pick(Block::ThumbPosition);
        if (chance(0.4)) hs.bending = pick(Block::Bending);
        return hs;
    };

    ParsedSign sign;
    if (chance(0.5)) sign.symmetry = pick(Block::Symmetry);
    while (chance(0.3) && sign.non_manual.size() < 3)
        sign.non_manual.push_back(pick(Block::NonManual));
    sign.handshape = handshape();
    sign.hand_position.efd = alternation(Block::ExtendedFingerDirection, 0.3);
    sign.hand_position.palm = alternation(Block::PalmOrientation, 0.3);
    if (chance(0.5)) sign.location = location();

    const int atoms = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int k = 0; k < atoms; ++k) {
        MovementAtom atom;
        const int which = std::uniform_int_distribution<int>(0, 3)(rng);
        atom.kind = static_cast<MovementKind>(which);
        const MovementRange range = movement_range(to_subclass(atom.kind));
        atom.class_index =
            std::uniform_int_distribution<int>(0, range.end - range.begin - 1)(rng);
        atom.combination = (k > 0 && chance(0.5)) ? Combination::Parallel
                                                  : Combination::Sequential;
        sign.movement.push_back(atom);
    }

    if (chance(0.3)) {
        SecondHand second;
        second.handshape = handshape();
        second.hand_position.efd = alternation(Block::ExtendedFingerDirection, 0.2);
        second.hand_position.palm = alternation(Block::PalmOrientation, 0.2);
        if (chance(0.4)) second.location = location();
        sign.second_hand = second;
    }
    return sign;
}

} // namespace testutil
