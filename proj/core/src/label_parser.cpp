#include "hamcheck/label_parser.hpp"

#include "hamcheck/error.hpp"
#include "hamcheck/utf8.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

namespace hamcheck {
namespace {

// Structural symbols are identified by codepoint, not by alias, so renamed
// manifests keep working as long as they map the conventional characters.
constexpr char32_t kBackslash = U'\\';
constexpr char32_t kOpenBracket = U'[';
constexpr char32_t kCloseBracket = U']';

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Consumption order of the sign blocks. Location sub-blocks share a rank so
// lr/tb/distance can arrive in any order within the location block.
int block_rank(Block block) {
    switch (block) {
    case Block::Symmetry: return 0;
    case Block::NonManual: return 1;
    case Block::HandshapeBase: return 2;
    case Block::ThumbPosition: return 3;
    case Block::Bending: return 4;
    case Block::ExtendedFingerDirection: return 5;
    case Block::PalmOrientation: return 6;
    case Block::LocationLR:
    case Block::LocationTB:
    case Block::LocationDistance: return 7;
    case Block::Movement: return 8;
    case Block::Punctuation: return -1;
    }
    return -1;
}

std::string codepoint_name(char32_t cp) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
    return buf;
}

struct Parser {
    std::span<const Token> toks;
    bool strict;

    std::size_t i = 0;
    std::vector<Diagnostic> diags;
    ParsedSign sign;
    bool base_seen = false;
    bool efd_seen = false;
    bool palm_seen = false;
    int min_rank = 0;
    std::optional<std::pair<Combination, Span>> pending_combinator;

    const Token* peek(std::size_t ahead = 0) const {
        return i + ahead < toks.size() ? &toks[i + ahead] : nullptr;
    }

    static bool is_punct(const Token& t, char32_t cp) {
        return t.entry->block == Block::Punctuation && t.entry->codepoint == cp;
    }

    void report(Severity severity, std::string code, Span span, std::string message) {
        diags.push_back({severity, std::move(code), span, std::move(message)});
    }

    Span end_span() const {
        std::size_t end = toks.empty() ? 0 : toks.back().span.end;
        return {end, end};
    }

    // Consumes "\ X" following a primary symbol when X belongs to `block`.
    std::optional<int> take_alternate(Block block) {
        const Token* bs = peek();
        if (!bs || !is_punct(*bs, kBackslash)) return std::nullopt;
        const Token* rhs = peek(1);
        if (rhs && rhs->entry->block != Block::Punctuation && rhs->entry->block == block) {
            i += 2;
            return rhs->entry->class_index;
        }
        report(Severity::Error, "DanglingAlternation", bs->span,
               "backslash must join two symbols of the same block");
        ++i;
        return std::nullopt;
    }

    // Alternations are only representable for finger direction and palm
    // orientation; elsewhere the alternate is parsed but dropped.
    void drop_alternate(Block block) {
        const Token* bs = peek();
        if (!bs || !is_punct(*bs, kBackslash)) return;
        if (take_alternate(block)) {
            report(Severity::Warning, "UnsupportedAlternation",
                   {bs->span.begin, toks[i - 1].span.end},
                   "intermediate positions only apply to finger direction and palm "
                   "orientation; alternate symbol ignored");
        }
    }

    Alternation take_alternation(Block block) {
        Alternation alt;
        alt.primary = toks[i].entry->class_index;
        ++i;
        alt.alternate = take_alternate(block);
        return alt;
    }

    void take_location(std::optional<HandLocation>& location) {
        const SymbolEntry& e = *toks[i].entry;
        const Span span = toks[i].span;
        ++i;
        if (!location) location.emplace();
        std::optional<int>* slot;
        const char* name;
        switch (e.block) {
        case Block::LocationLR: slot = &location->lr; name = "left-right"; break;
        case Block::LocationTB: slot = &location->tb; name = "body-part"; break;
        default: slot = &location->distance; name = "distance"; break;
        }
        if (*slot) {
            report(Severity::Warning, "DuplicateLocation", span,
                   std::string(name) + " location given twice; keeping the first");
        } else {
            *slot = e.class_index;
        }
        drop_alternate(e.block);
    }

    void take_movement() {
        const SymbolEntry& e = *toks[i].entry;
        const Span span = toks[i].span;
        ++i;
        min_rank = 8;
        const MovementRange range = movement_range(*e.subclass);
        if (e.subclass == MovementSubclass::Combinator) {
            Combination comb = e.class_index == range.begin ? Combination::Sequential
                                                            : Combination::Parallel;
            if (sign.movement.empty()) {
                report(Severity::Warning, "DanglingCombinator", span,
                       "combinator has no movement atom on its left; ignored");
            } else if (pending_combinator) {
                report(Severity::Warning, "DanglingCombinator", pending_combinator->second,
                       "combinator has no movement atom on its right; ignored");
                pending_combinator = {comb, span};
            } else {
                pending_combinator = {comb, span};
            }
            return;
        }
        MovementAtom atom;
        switch (*e.subclass) {
        case MovementSubclass::Straight: atom.kind = MovementKind::Straight; break;
        case MovementSubclass::Curved: atom.kind = MovementKind::Curved; break;
        case MovementSubclass::Circular: atom.kind = MovementKind::Circular; break;
        default: atom.kind = MovementKind::Targeted; break;
        }
        atom.class_index = e.class_index - range.begin;
        if (pending_combinator) {
            atom.combination = pending_combinator->first;
            pending_combinator.reset();
        }
        sign.movement.push_back(atom);
        drop_alternate(Block::Movement);
    }

    // Emits one warning for an out-of-order token and skips the whole run of
    // tokens that cannot start a block at or past the current position.
    void skip_out_of_order(int floor) {
        const Token& t = toks[i];
        report(Severity::Warning, "BlockOrderViolation", t.span,
               std::string(to_string(t.entry->block)) +
                   " symbol appears after its block was closed; skipping");
        ++i;
        while (i < toks.size()) {
            const SymbolEntry& e = *toks[i].entry;
            if (e.block == Block::Punctuation || block_rank(e.block) >= floor) break;
            ++i;
        }
    }

    void require(bool seen, const char* block_name, Span span) {
        if (!seen)
            report(Severity::Error, "MissingMandatoryBlock", span,
                   std::string("no ") + block_name + " symbol in the label");
    }

    void parse_second_hand() {
        const Token open = toks[i];
        if (sign.second_hand) {
            report(Severity::Error, "DuplicateSecondHand", open.span,
                   "only one bracketed second-hand description is supported");
            ++i;
            while (i < toks.size() && !is_punct(toks[i], kCloseBracket)) ++i;
            if (i < toks.size()) ++i;
            return;
        }
        if (min_rank >= 8)
            report(Severity::Warning, "BlockOrderViolation", open.span,
                   "second-hand description belongs before the movement block");
        ++i;
        SecondHand second;
        bool base = false, efd = false, palm = false;
        int rank = 2;
        bool closed = false;
        while (i < toks.size()) {
            const Token& t = toks[i];
            const SymbolEntry& e = *t.entry;
            if (e.block == Block::Punctuation) {
                if (e.codepoint == kCloseBracket) {
                    ++i;
                    closed = true;
                    break;
                }
                if (e.codepoint == kOpenBracket) {
                    report(Severity::Error, "NestedSecondHand", t.span,
                           "bracket groups cannot nest");
                    ++i;
                    continue;
                }
                report(Severity::Error, "DanglingAlternation", t.span,
                       "backslash must join two symbols of the same block");
                ++i;
                continue;
            }
            const int r = block_rank(e.block);
            if (r < 2 || r > 7) {
                report(Severity::Warning, "BlockOrderViolation", t.span,
                       "a second-hand description holds only handshape, hand "
                       "position, and location symbols; skipping");
                ++i;
                continue;
            }
            if (r < rank) {
                skip_out_of_order(rank);
                continue;
            }
            switch (e.block) {
            case Block::HandshapeBase:
                second.handshape.base = e.class_index;
                base = true;
                ++i;
                rank = 3;
                drop_alternate(e.block);
                break;
            case Block::ThumbPosition:
                second.handshape.thumb = e.class_index;
                ++i;
                rank = 4;
                drop_alternate(e.block);
                break;
            case Block::Bending:
                second.handshape.bending = e.class_index;
                ++i;
                rank = 5;
                drop_alternate(e.block);
                break;
            case Block::ExtendedFingerDirection:
                second.hand_position.efd = take_alternation(e.block);
                efd = true;
                rank = 6;
                break;
            case Block::PalmOrientation:
                second.hand_position.palm = take_alternation(e.block);
                palm = true;
                rank = 7;
                break;
            default:
                take_location(second.location);
                rank = 7;
                break;
            }
        }
        if (!closed)
            report(Severity::Error, "UnclosedSecondHand", open.span,
                   "second-hand description is missing its closing bracket");
        const Span at = closed ? toks[i - 1].span : end_span();
        require(base, "second-hand base handshape", at);
        require(efd, "second-hand extended finger direction", at);
        require(palm, "second-hand palm orientation", at);
        sign.second_hand = std::move(second);
    }

    ParseResult run() {
        ParseResult result;
        if (toks.empty()) {
            report(Severity::Error, "EmptyLabel", {0, 0}, "label contains no symbols");
            result.diagnostics = std::move(diags);
            return result;
        }
        while (i < toks.size()) {
            const Token& t = toks[i];
            const SymbolEntry& e = *t.entry;
            if (e.block == Block::Punctuation) {
                if (e.codepoint == kOpenBracket) {
                    parse_second_hand();
                } else if (e.codepoint == kCloseBracket) {
                    report(Severity::Warning, "StrayBracket", t.span,
                           "closing bracket without an open second-hand description");
                    ++i;
                } else {
                    report(Severity::Error, "DanglingAlternation", t.span,
                           "backslash must join two symbols of the same block");
                    ++i;
                }
                continue;
            }
            const int r = block_rank(e.block);
            if (r < min_rank) {
                skip_out_of_order(min_rank);
                continue;
            }
            switch (e.block) {
            case Block::Symmetry:
                sign.symmetry = e.class_index;
                ++i;
                min_rank = 1;
                drop_alternate(e.block);
                break;
            case Block::NonManual:
                sign.non_manual.push_back(e.class_index);
                ++i;
                min_rank = 1;
                drop_alternate(e.block);
                break;
            case Block::HandshapeBase:
                sign.handshape.base = e.class_index;
                base_seen = true;
                ++i;
                min_rank = 3;
                drop_alternate(e.block);
                break;
            case Block::ThumbPosition:
                sign.handshape.thumb = e.class_index;
                ++i;
                min_rank = 4;
                drop_alternate(e.block);
                break;
            case Block::Bending:
                sign.handshape.bending = e.class_index;
                ++i;
                min_rank = 5;
                drop_alternate(e.block);
                break;
            case Block::ExtendedFingerDirection:
                sign.hand_position.efd = take_alternation(e.block);
                efd_seen = true;
                min_rank = 6;
                break;
            case Block::PalmOrientation:
                sign.hand_position.palm = take_alternation(e.block);
                palm_seen = true;
                min_rank = 7;
                break;
            case Block::LocationLR:
            case Block::LocationTB:
            case Block::LocationDistance:
                take_location(sign.location);
                min_rank = 7;
                break;
            default:
                take_movement();
                break;
            }
        }
        if (pending_combinator)
            report(Severity::Warning, "DanglingCombinator", pending_combinator->second,
                   "combinator has no movement atom on its right; ignored");
        require(base_seen, "base handshape", end_span());
        require(efd_seen, "extended finger direction", end_span());
        require(palm_seen, "palm orientation", end_span());
        if (strict)
            for (auto& d : diags) d.severity = Severity::Error;
        const bool failed = std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
            return d.severity == Severity::Error;
        });
        if (!failed) result.sign = std::move(sign);
        result.diagnostics = std::move(diags);
        return result;
    }
};

} // namespace

MovementSubclass to_subclass(MovementKind kind) {
    switch (kind) {
    case MovementKind::Straight: return MovementSubclass::Straight;
    case MovementKind::Curved: return MovementSubclass::Curved;
    case MovementKind::Circular: return MovementSubclass::Circular;
    default: return MovementSubclass::Targeted;
    }
}

bool TokenizeResult::ok() const {
    return std::none_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) {
        return d.severity == Severity::Error;
    });
}

bool ParseResult::has_errors() const {
    return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) {
        return d.severity == Severity::Error;
    });
}

TokenizeResult tokenize(std::string_view source, const SymbolInventory& inventory) {
    TokenizeResult result;
    std::size_t pos = 0;
    while (pos < source.size()) {
        const char c = source[pos];
        if (is_space(c)) {
            ++pos;
            continue;
        }
        if (c == ':') {
            const std::size_t close = source.find(':', pos + 1);
            if (close == std::string_view::npos) {
                result.diagnostics.push_back({Severity::Error, "UnterminatedAlias",
                                              {pos, source.size()},
                                              "alias atom is missing its closing colon"});
                break;
            }
            const std::string_view name = source.substr(pos + 1, close - pos - 1);
            const SymbolEntry* entry = inventory.find(name);
            if (!entry) {
                result.diagnostics.push_back({Severity::Error, "UnknownSymbol",
                                              {pos, close + 1},
                                              "unknown alias \"" + std::string(name) + "\""});
                break;
            }
            result.tokens.push_back({entry, {pos, close + 1}, SourceForm::Alias});
            pos = close + 1;
            continue;
        }
        const utf8::DecodeResult dec = utf8::decode(source, pos);
        if (!dec.ok) {
            result.diagnostics.push_back({Severity::Error, "UnknownSymbol",
                                          {pos, pos + dec.length},
                                          "malformed UTF-8 byte sequence"});
            break;
        }
        const SymbolEntry* entry = inventory.find(dec.codepoint);
        if (!entry) {
            result.diagnostics.push_back({Severity::Error, "UnknownSymbol",
                                          {pos, pos + dec.length},
                                          "symbol " + codepoint_name(dec.codepoint) +
                                              " is not in the inventory"});
            break;
        }
        result.tokens.push_back({entry, {pos, pos + dec.length}, SourceForm::Raw});
        pos += dec.length;
    }
    return result;
}

ParseResult parse_sign(std::span<const Token> tokens, bool strict) {
    Parser parser{tokens, strict};
    return parser.run();
}

ParseResult parse_label(std::string_view source, const SymbolInventory& inventory,
                        bool strict) {
    TokenizeResult lexed = tokenize(source, inventory);
    if (!lexed.ok()) {
        ParseResult result;
        result.diagnostics = std::move(lexed.diagnostics);
        return result;
    }
    ParseResult result = parse_sign(lexed.tokens, strict);
    result.diagnostics.insert(result.diagnostics.begin(),
                              std::make_move_iterator(lexed.diagnostics.begin()),
                              std::make_move_iterator(lexed.diagnostics.end()));
    return result;
}

namespace {

struct Emitter {
    const SymbolInventory& inv;
    SourceForm form;
    std::string out;

    void emit(const SymbolEntry& e) {
        if (form == SourceForm::Alias) {
            out += ':';
            out += e.alias;
            out += ':';
        } else {
            utf8::append(out, e.codepoint);
        }
    }

    void emit_class(Block block, int class_index) { emit(inv.at_class(block, class_index)); }

    void emit_punct(char32_t cp) {
        const SymbolEntry* e = inv.find(cp);
        if (!e)
            raise("IndexOutOfRange",
                  "inventory has no structural symbol " + codepoint_name(cp));
        emit(*e);
    }

    void emit_alternation(Block block, const Alternation& alt) {
        emit_class(block, alt.primary);
        if (alt.alternate) {
            emit_punct(kBackslash);
            emit_class(block, *alt.alternate);
        }
    }

    void emit_handshape(const Handshape& hs) {
        emit_class(Block::HandshapeBase, hs.base);
        if (hs.thumb) emit_class(Block::ThumbPosition, *hs.thumb);
        if (hs.bending) emit_class(Block::Bending, *hs.bending);
    }

    void emit_hand_position(const HandPosition& hp) {
        emit_alternation(Block::ExtendedFingerDirection, hp.efd);
        emit_alternation(Block::PalmOrientation, hp.palm);
    }

    void emit_location(const std::optional<HandLocation>& loc) {
        if (!loc) return;
        if (loc->lr) emit_class(Block::LocationLR, *loc->lr);
        if (loc->tb) emit_class(Block::LocationTB, *loc->tb);
        if (loc->distance) emit_class(Block::LocationDistance, *loc->distance);
    }

    void emit_movement(const MovementAtom& atom, bool first) {
        const MovementRange comb = movement_range(MovementSubclass::Combinator);
        if (!first)
            emit_class(Block::Movement,
                       comb.begin + (atom.combination == Combination::Sequential ? 0 : 1));
        const MovementRange range = movement_range(to_subclass(atom.kind));
        if (atom.class_index < 0 || atom.class_index >= range.end - range.begin)
            raise("IndexOutOfRange",
                  "movement class " + std::to_string(atom.class_index) +
                      " out of range for its kind");
        emit_class(Block::Movement, range.begin + atom.class_index);
    }
};

} // namespace

std::string serialize(const ParsedSign& sign, const SymbolInventory& inventory,
                      SourceForm form) {
    Emitter em{inventory, form};
    if (sign.symmetry) em.emit_class(Block::Symmetry, *sign.symmetry);
    if (sign.second_hand) {
        em.emit_punct(kOpenBracket);
        em.emit_handshape(sign.second_hand->handshape);
        em.emit_hand_position(sign.second_hand->hand_position);
        em.emit_location(sign.second_hand->location);
        em.emit_punct(kCloseBracket);
    }
    for (int nm : sign.non_manual) em.emit_class(Block::NonManual, nm);
    em.emit_handshape(sign.handshape);
    em.emit_hand_position(sign.hand_position);
    em.emit_location(sign.location);
    for (std::size_t k = 0; k < sign.movement.size(); ++k)
        em.emit_movement(sign.movement[k], k == 0);
    return em.out;
}

} // namespace hamcheck
