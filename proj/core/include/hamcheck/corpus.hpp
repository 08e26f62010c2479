#pragma once

#include "hamcheck/label_parser.hpp"
#include "hamcheck/symbol_inventory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hamcheck {

enum class ParseStatus {
    Ok,         // parsed with no diagnostics
    Recovered,  // parsed, but only after skipping or normalizing symbols
    Failed,     // no usable parse; excluded from label-dependent analyses
};

std::string_view to_string(ParseStatus status);

struct GlossRecord {
    std::string gloss_id;
    std::string language;
    std::string gloss_text;
    std::string hamnosys;
    std::string landmark_path;  // empty when the record has no pose data
    ParseStatus parse_status = ParseStatus::Failed;
    std::optional<ParsedSign> sign;  // engaged unless parse_status == Failed
};

struct Corpus {
    std::string name;
    std::vector<GlossRecord> records;
    std::string inventory_version;

    std::size_t count(ParseStatus status) const;
};

/// Reads a corpus TSV (header: gloss_id, language, gloss_text, hamnosys,
/// landmark_path) and parses every label against `inventory`. Failed records
/// are kept so reports can count them. Relative landmark paths are resolved
/// against the TSV's directory.
///
/// Errors: FileUnreadable, MalformedRow, DuplicateGlossId, EmptyCorpus.
Corpus ingest_corpus(const std::string& tsv_path, const SymbolInventory& inventory);

/// Stream variant; `origin` names the source in errors and sets the corpus
/// name; `base_dir` resolves relative landmark paths ("" keeps them as-is).
Corpus ingest_corpus(std::istream& in, const std::string& origin,
                     const std::string& base_dir, const SymbolInventory& inventory);

} // namespace hamcheck
