#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hamcheck {

/// The six HamNoSys building blocks, split into the sub-blocks that carry
/// their own symbol sets, plus structural punctuation.
enum class Block {
    Symmetry,
    NonManual,
    HandshapeBase,
    ThumbPosition,
    Bending,
    ExtendedFingerDirection,
    PalmOrientation,
    LocationLR,
    LocationTB,
    LocationDistance,
    Movement,
    Punctuation,
};

/// Movement symbols carry a sub-kind; all other blocks have none.
enum class MovementSubclass {
    Straight,
    Curved,
    Circular,
    Targeted,
    Combinator,
};

std::string_view to_string(Block block);
std::string_view to_string(MovementSubclass subclass);
std::optional<Block> block_from_string(std::string_view name);
std::optional<MovementSubclass> movement_subclass_from_string(std::string_view name);

/// Half-open range of Movement class indices reserved for a subclass.
struct MovementRange {
    int begin = 0;
    int end = 0;
};

/// The numeric reduction packs movement kinds at fixed offsets, so the
/// Movement block layout is pinned: straight 0-25, curved 26-33, circular
/// 34, targeted 35, combinators 36-37. Manifests that place a movement
/// symbol outside its subclass range are rejected at load time.
constexpr MovementRange movement_range(MovementSubclass subclass) {
    switch (subclass) {
    case MovementSubclass::Straight:   return {0, 26};
    case MovementSubclass::Curved:     return {26, 34};
    case MovementSubclass::Circular:   return {34, 35};
    case MovementSubclass::Targeted:   return {35, 36};
    case MovementSubclass::Combinator: return {36, 38};
    }
    return {0, 0};
}

struct SymbolEntry {
    char32_t codepoint = 0;
    std::string alias;
    Block block = Block::Punctuation;
    std::optional<MovementSubclass> subclass;
    int class_index = 0;   // dense 0..N-1 within the block, manifest row order
    std::string display_name;

    bool operator==(const SymbolEntry&) const = default;
};

/// Immutable symbol alphabet loaded from a manifest CSV. Safe to share
/// across threads once constructed.
class SymbolInventory {
public:
    static SymbolInventory from_entries(std::vector<SymbolEntry> entries,
                                        std::string version);

    const std::vector<SymbolEntry>& entries() const { return entries_; }
    const std::string& version() const { return version_; }

    std::size_t block_count(Block block) const;
    std::size_t size() const { return entries_.size(); }

    const SymbolEntry* find(char32_t codepoint) const;
    const SymbolEntry* find(std::string_view alias) const;
    const SymbolEntry* find_by_class(Block block, int class_index) const;

    /// Lookup that throws UnknownSymbol when the key is absent.
    const SymbolEntry& lookup(char32_t codepoint) const;
    const SymbolEntry& lookup(std::string_view alias) const;
    const SymbolEntry& at_class(Block block, int class_index) const;

    bool operator==(const SymbolInventory& other) const {
        return entries_ == other.entries_ && version_ == other.version_;
    }

private:
    std::vector<SymbolEntry> entries_;
    std::string version_;
    std::unordered_map<char32_t, std::size_t> by_codepoint_;
    std::unordered_map<std::string, std::size_t> by_alias_;
    std::unordered_map<int, std::vector<std::size_t>> by_block_;  // Block -> entry ids in class order
};

/// Loads the manifest CSV. Errors: DuplicateSymbol, GapInIndices,
/// MissingBlock, MalformedRow, MovementLayoutMismatch, FileUnreadable.
SymbolInventory load_inventory(const std::string& manifest_path);

/// Stream variant; `origin` names the source in error messages.
SymbolInventory load_inventory(std::istream& in, const std::string& origin);

} // namespace hamcheck
