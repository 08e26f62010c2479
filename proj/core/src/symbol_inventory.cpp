#include "hamcheck/symbol_inventory.hpp"

#include "hamcheck/error.hpp"
#include "hamcheck/utf8.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace hamcheck {

namespace {

constexpr std::array<std::pair<Block, std::string_view>, 12> kBlockNames{{
    {Block::Symmetry, "Symmetry"},
    {Block::NonManual, "NonManual"},
    {Block::HandshapeBase, "HandshapeBase"},
    {Block::ThumbPosition, "ThumbPosition"},
    {Block::Bending, "Bending"},
    {Block::ExtendedFingerDirection, "ExtendedFingerDirection"},
    {Block::PalmOrientation, "PalmOrientation"},
    {Block::LocationLR, "LocationLR"},
    {Block::LocationTB, "LocationTB"},
    {Block::LocationDistance, "LocationDistance"},
    {Block::Movement, "Movement"},
    {Block::Punctuation, "Punctuation"},
}};

constexpr std::array<std::pair<MovementSubclass, std::string_view>, 5> kSubclassNames{{
    {MovementSubclass::Straight, "Straight"},
    {MovementSubclass::Curved, "Curved"},
    {MovementSubclass::Circular, "Circular"},
    {MovementSubclass::Targeted, "Targeted"},
    {MovementSubclass::Combinator, "Combinator"},
}};

// Blocks a transcription cannot do without.
constexpr std::array<Block, 3> kMandatoryBlocks{
    Block::HandshapeBase,
    Block::ExtendedFingerDirection,
    Block::PalmOrientation,
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void malformed_row(const std::string& origin, std::size_t line, const std::string& why) {
    raise("MalformedRow", origin + ":" + std::to_string(line) + ": " + why);
}

} // namespace

std::string_view to_string(Block block) {
    for (const auto& [b, name] : kBlockNames)
        if (b == block) return name;
    return "?";
}

std::string_view to_string(MovementSubclass subclass) {
    for (const auto& [s, name] : kSubclassNames)
        if (s == subclass) return name;
    return "?";
}

std::optional<Block> block_from_string(std::string_view name) {
    for (const auto& [b, n] : kBlockNames)
        if (n == name) return b;
    return std::nullopt;
}

std::optional<MovementSubclass> movement_subclass_from_string(std::string_view name) {
    for (const auto& [s, n] : kSubclassNames)
        if (n == name) return s;
    return std::nullopt;
}

SymbolInventory SymbolInventory::from_entries(std::vector<SymbolEntry> entries,
                                              std::string version) {
    SymbolInventory inv;
    inv.entries_ = std::move(entries);
    inv.version_ = std::move(version);
    for (std::size_t i = 0; i < inv.entries_.size(); ++i) {
        const auto& e = inv.entries_[i];
        inv.by_codepoint_.emplace(e.codepoint, i);
        inv.by_alias_.emplace(e.alias, i);
        auto& ids = inv.by_block_[static_cast<int>(e.block)];
        if (ids.size() <= static_cast<std::size_t>(e.class_index))
            ids.resize(e.class_index + 1, static_cast<std::size_t>(-1));
        ids[e.class_index] = i;
    }
    return inv;
}

std::size_t SymbolInventory::block_count(Block block) const {
    auto it = by_block_.find(static_cast<int>(block));
    return it == by_block_.end() ? 0 : it->second.size();
}

const SymbolEntry* SymbolInventory::find(char32_t codepoint) const {
    auto it = by_codepoint_.find(codepoint);
    return it == by_codepoint_.end() ? nullptr : &entries_[it->second];
}

const SymbolEntry* SymbolInventory::find(std::string_view alias) const {
    auto it = by_alias_.find(std::string(alias));
    return it == by_alias_.end() ? nullptr : &entries_[it->second];
}

const SymbolEntry* SymbolInventory::find_by_class(Block block, int class_index) const {
    auto it = by_block_.find(static_cast<int>(block));
    if (it == by_block_.end()) return nullptr;
    if (class_index < 0 || static_cast<std::size_t>(class_index) >= it->second.size()) return nullptr;
    return &entries_[it->second[class_index]];
}

const SymbolEntry& SymbolInventory::lookup(char32_t codepoint) const {
    if (const auto* e = find(codepoint)) return *e;
    raise("UnknownSymbol", "no symbol with code point U+" + [&] {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04X", static_cast<unsigned>(codepoint));
        return std::string(buf);
    }());
}

const SymbolEntry& SymbolInventory::lookup(std::string_view alias) const {
    if (const auto* e = find(alias)) return *e;
    raise("UnknownSymbol", "no symbol with alias \"" + std::string(alias) + "\"");
}

const SymbolEntry& SymbolInventory::at_class(Block block, int class_index) const {
    if (const auto* e = find_by_class(block, class_index)) return *e;
    raise("IndexOutOfRange", "class index " + std::to_string(class_index) + " out of range for block " +
                                 std::string(to_string(block)) + " (count " +
                                 std::to_string(block_count(block)) + ")");
}

SymbolInventory load_inventory(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) raise("FileUnreadable", "cannot open manifest \"" + manifest_path + "\"");
    return load_inventory(in, manifest_path);
}

SymbolInventory load_inventory(std::istream& in, const std::string& origin) {
    std::vector<SymbolEntry> entries;
    std::vector<std::size_t> entry_lines;
    std::string version = "unversioned";

    std::unordered_map<char32_t, std::size_t> seen_cp;    // codepoint -> line
    std::unordered_map<std::string, std::size_t> seen_alias;
    std::unordered_map<int, int> next_index;              // block -> expected class_index

    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        if (sv.front() == '#') {
            constexpr std::string_view kVersionTag = "# version:";
            if (std::string_view(line).substr(0, kVersionTag.size()) == kVersionTag)
                version = std::string(trim(std::string_view(line).substr(kVersionTag.size())));
            continue;
        }
        if (!header_seen) {
            if (sv != "codepoint_hex,alias,block,subclass,class_index,display_name")
                malformed_row(origin, line_no, "unexpected header \"" + std::string(sv) + "\"");
            header_seen = true;
            continue;
        }

        // First five fields are comma-separated; the rest is the display name.
        std::array<std::string_view, 5> fields;
        std::string_view rest = sv;
        for (auto& field : fields) {
            auto comma = rest.find(',');
            if (comma == std::string_view::npos)
                malformed_row(origin, line_no, "expected 6 columns");
            field = trim(rest.substr(0, comma));
            rest.remove_prefix(comma + 1);
        }
        const std::string_view display = trim(rest);

        SymbolEntry entry;
        char* end = nullptr;
        const std::string cp_str(fields[0]);
        const unsigned long cp = std::strtoul(cp_str.c_str(), &end, 16);
        if (cp_str.empty() || end != cp_str.c_str() + cp_str.size() || cp > 0x10FFFF)
            malformed_row(origin, line_no, "bad codepoint_hex \"" + cp_str + "\"");
        entry.codepoint = static_cast<char32_t>(cp);

        entry.alias = std::string(fields[1]);
        if (entry.alias.empty()) malformed_row(origin, line_no, "empty alias");
        for (char c : entry.alias)
            if (!(std::isupper(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_'))
                malformed_row(origin, line_no, "alias \"" + entry.alias + "\" must be uppercase ASCII identifiers");

        auto block = block_from_string(fields[2]);
        if (!block) malformed_row(origin, line_no, "unknown block \"" + std::string(fields[2]) + "\"");
        entry.block = *block;

        if (!fields[3].empty()) {
            auto sub = movement_subclass_from_string(fields[3]);
            if (!sub) malformed_row(origin, line_no, "unknown subclass \"" + std::string(fields[3]) + "\"");
            if (entry.block != Block::Movement)
                malformed_row(origin, line_no, "subclass only valid for Movement rows");
            entry.subclass = sub;
        } else if (entry.block == Block::Movement) {
            malformed_row(origin, line_no, "Movement rows require a subclass");
        }

        const std::string idx_str(fields[4]);
        const long idx = std::strtol(idx_str.c_str(), &end, 10);
        if (idx_str.empty() || end != idx_str.c_str() + idx_str.size() || idx < 0)
            malformed_row(origin, line_no, "bad class_index \"" + idx_str + "\"");
        entry.class_index = static_cast<int>(idx);

        entry.display_name = std::string(display);

        if (auto it = seen_cp.find(entry.codepoint); it != seen_cp.end())
            raise("DuplicateSymbol", origin + ": code point U+" + cp_str + " appears on lines " +
                                         std::to_string(it->second) + " and " + std::to_string(line_no));
        if (auto it = seen_alias.find(entry.alias); it != seen_alias.end())
            raise("DuplicateSymbol", origin + ": alias \"" + entry.alias + "\" appears on lines " +
                                         std::to_string(it->second) + " and " + std::to_string(line_no));
        seen_cp.emplace(entry.codepoint, line_no);
        seen_alias.emplace(entry.alias, line_no);

        int& expected = next_index[static_cast<int>(entry.block)];
        if (entry.class_index != expected)
            raise("GapInIndices", origin + ":" + std::to_string(line_no) + ": block " +
                                      std::string(to_string(entry.block)) + " expects class_index " +
                                      std::to_string(expected) + ", got " +
                                      std::to_string(entry.class_index) +
                                      " (indices must be dense in row order)");
        ++expected;

        entries.push_back(std::move(entry));
        entry_lines.push_back(line_no);
    }

    if (!header_seen) malformed_row(origin, line_no ? line_no : 1, "missing header row");

    for (Block block : kMandatoryBlocks) {
        if (next_index.find(static_cast<int>(block)) == next_index.end())
            raise("MissingBlock", origin + ": mandatory block " + std::string(to_string(block)) +
                                      " has no entries");
    }

    // The numeric reduction hardwires where each movement kind sits inside
    // the Movement block, so reject manifests that deviate from that packing.
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (e.block != Block::Movement) continue;
        const MovementRange range = movement_range(*e.subclass);
        if (e.class_index < range.begin || e.class_index >= range.end)
            raise("MovementLayoutMismatch",
                  origin + ":" + std::to_string(entry_lines[i]) + ": Movement subclass " +
                      std::string(to_string(*e.subclass)) + " must use class indices " +
                      std::to_string(range.begin) + ".." + std::to_string(range.end - 1) +
                      ", got " + std::to_string(e.class_index));
    }

    return SymbolInventory::from_entries(std::move(entries), std::move(version));
}

} // namespace hamcheck
