#include "hamcheck/corpus.hpp"

#include "hamcheck/error.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <unordered_map>

namespace hamcheck {

namespace fs = std::filesystem;

std::string_view to_string(ParseStatus status) {
    switch (status) {
    case ParseStatus::Ok: return "Ok";
    case ParseStatus::Recovered: return "Recovered";
    case ParseStatus::Failed: return "Failed";
    }
    return "";
}

std::size_t Corpus::count(ParseStatus status) const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(),
                      [&](const GlossRecord& r) { return r.parse_status == status; }));
}

namespace {

constexpr std::string_view kHeader = "gloss_id\tlanguage\tgloss_text\thamnosys\tlandmark_path";

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t tab = line.find('\t', pos);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(pos));
            return fields;
        }
        fields.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
}

} // namespace

Corpus ingest_corpus(std::istream& in, const std::string& origin,
                     const std::string& base_dir, const SymbolInventory& inventory) {
    Corpus corpus;
    corpus.name = origin;
    corpus.inventory_version = inventory.version();

    std::unordered_map<std::string, std::size_t> seen_ids;  // gloss_id -> line number
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kHeader)
                raise("MalformedRow", origin + ":" + std::to_string(line_no) +
                                          ": header must be \"" + std::string(kHeader) + "\"");
            header_seen = true;
            continue;
        }
        const auto fields = split_tabs(line);
        if (fields.size() != 5)
            raise("MalformedRow", origin + ":" + std::to_string(line_no) + ": expected 5 "
                                      "tab-separated fields, got " +
                                      std::to_string(fields.size()));

        GlossRecord record;
        record.gloss_id = std::string(fields[0]);
        record.language = std::string(fields[1]);
        record.gloss_text = std::string(fields[2]);
        record.hamnosys = std::string(fields[3]);
        record.landmark_path = std::string(fields[4]);
        if (record.gloss_id.empty())
            raise("MalformedRow", origin + ":" + std::to_string(line_no) + ": empty gloss_id");

        const auto [it, inserted] = seen_ids.emplace(record.gloss_id, line_no);
        if (!inserted)
            raise("DuplicateGlossId", origin + ": gloss_id \"" + record.gloss_id +
                                          "\" appears on lines " + std::to_string(it->second) +
                                          " and " + std::to_string(line_no));

        if (!record.landmark_path.empty() && !base_dir.empty() &&
            fs::path(record.landmark_path).is_relative())
            record.landmark_path = (fs::path(base_dir) / record.landmark_path).string();

        ParseResult parsed = parse_label(record.hamnosys, inventory, false);
        if (parsed.sign) {
            record.parse_status =
                parsed.diagnostics.empty() ? ParseStatus::Ok : ParseStatus::Recovered;
            record.sign = std::move(parsed.sign);
        } else {
            record.parse_status = ParseStatus::Failed;
        }
        corpus.records.push_back(std::move(record));
    }
    if (!header_seen)
        raise("MalformedRow", origin + ": missing header row");
    if (corpus.records.empty())
        raise("EmptyCorpus", origin + ": no records after the header");
    return corpus;
}

Corpus ingest_corpus(const std::string& tsv_path, const SymbolInventory& inventory) {
    std::ifstream in(tsv_path);
    if (!in)
        raise("FileUnreadable", "cannot open corpus \"" + tsv_path + "\"");
    const fs::path p(tsv_path);
    Corpus corpus =
        ingest_corpus(in, p.filename().string(), p.parent_path().string(), inventory);
    corpus.name = p.stem().string();
    return corpus;
}

} // namespace hamcheck
