#pragma once

#include "hamcheck/symbol_inventory.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hamcheck {

/// Half-open byte range into the source string.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    bool operator==(const Span&) const = default;
};

enum class SourceForm { Raw, Alias };

struct Token {
    const SymbolEntry* entry = nullptr;  // borrowed from the inventory
    Span span;
    SourceForm form = SourceForm::Raw;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    Span span;
    std::string message;
};

/// Primary class index plus an optional intermediate-position alternate
/// from the same block ("U\UL" style input).
struct Alternation {
    int primary = 0;
    std::optional<int> alternate;

    bool operator==(const Alternation&) const = default;
};

enum class MovementKind { Straight, Curved, Circular, Targeted };
enum class Combination { Sequential, Parallel };

MovementSubclass to_subclass(MovementKind kind);

struct MovementAtom {
    MovementKind kind = MovementKind::Straight;
    int class_index = 0;            // dense within the kind
    Combination combination = Combination::Sequential;  // vs. previous atom

    bool operator==(const MovementAtom&) const = default;
};

struct Handshape {
    int base = 0;
    std::optional<int> thumb;
    std::optional<int> bending;

    bool operator==(const Handshape&) const = default;
};

struct HandPosition {
    Alternation efd;
    Alternation palm;

    bool operator==(const HandPosition&) const = default;
};

struct HandLocation {
    std::optional<int> lr;
    std::optional<int> tb;
    std::optional<int> distance;   // absent means standard distance

    bool operator==(const HandLocation&) const = default;
};

/// Explicitly bracketed description of the second hand.
struct SecondHand {
    Handshape handshape;
    HandPosition hand_position;
    std::optional<HandLocation> location;

    bool operator==(const SecondHand&) const = default;
};

/// Structured six-block sign. Absent location means neutral space.
struct ParsedSign {
    std::optional<int> symmetry;
    std::vector<int> non_manual;
    Handshape handshape;
    HandPosition hand_position;
    std::optional<HandLocation> location;
    std::vector<MovementAtom> movement;
    std::optional<SecondHand> second_hand;

    bool operator==(const ParsedSign&) const = default;
};

struct TokenizeResult {
    std::vector<Token> tokens;
    std::vector<Diagnostic> diagnostics;

    bool ok() const;
};

struct ParseResult {
    std::optional<ParsedSign> sign;   // engaged iff no Error diagnostics
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return sign.has_value(); }
    bool has_errors() const;
};

/// Splits a transcription into symbol tokens. Raw symbols are single code
/// points from the inventory; alias atoms are written `:ALIAS:`. Whitespace
/// between tokens is skipped. Stops at the first unrecognized symbol
/// (UnknownSymbol) or unterminated alias atom (UnterminatedAlias).
TokenizeResult tokenize(std::string_view source, const SymbolInventory& inventory);

/// Parses a token stream into a ParsedSign, consuming blocks in order:
/// [symmetry] [non-manual...] handshape [thumb] [bending] efd palm
/// [location] [second-hand brackets] movement...
///
/// Out-of-order tokens are skipped with a BlockOrderViolation warning so
/// inconsistent corpus labels still yield a result; `strict` promotes all
/// warnings to errors. The location distance symbol is accepted before or
/// after the body-part symbol and normalized to the canonical order.
ParseResult parse_sign(std::span<const Token> tokens, bool strict = false);

/// tokenize + parse_sign, merging diagnostics.
ParseResult parse_label(std::string_view source, const SymbolInventory& inventory,
                        bool strict = false);

/// Emits the canonical form of a sign (Raw glyphs or `:ALIAS:` atoms).
/// Throws IndexOutOfRange when a class index does not exist in the
/// inventory. Canonical output reparses to an equal ParsedSign.
std::string serialize(const ParsedSign& sign, const SymbolInventory& inventory,
                      SourceForm form);

} // namespace hamcheck
