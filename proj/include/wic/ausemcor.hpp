#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wic/corpus.hpp"

namespace wic {

struct SenseAnnotation {
    std::string lemma;
    Pos pos = Pos::Noun;  // NOUN or VERB only
    std::string sense_key;
    std::string supersense;
    Span char_span;
};

struct SenseSentence {
    std::string doc_id;
    std::string text;
    std::vector<SenseAnnotation> annotations;
};

struct AuSemCorConfig {
    int max_pairs_per_lemma = 2;  // per class
    std::optional<std::int64_t> target_size;
    std::uint64_t seed = 0;
    bool require_distinct_documents = false;
};

struct SemcorLoadReport {
    std::vector<SenseSentence> sentences;
    int dropped_annotations = 0;
    std::vector<std::string> warnings;
};

// Reads semcor3.0-style SGML tagfiles (a single file or a directory scanned
// recursively). Keeps noun/verb annotations whose sense key resolves to a
// supersense; everything else is dropped with a counted warning.
SemcorLoadReport load_semcor(const std::filesystem::path& path);

// Lexicographer file name ("noun.animal", "verb.motion", ...) encoded in the
// sense key's lex_filenum. Errors on malformed keys or unknown file numbers.
std::string supersense_of(const std::string& sense_key);

struct AuSemCorStats {
    std::int64_t pairs = 0;
    std::int64_t true_pairs = 0;
    std::int64_t false_pairs = 0;
    std::int64_t unique_lemmas = 0;
    std::map<std::string, std::int64_t> by_pos;
    std::string to_json() const;
};

struct AuSemCorResult {
    WicDataset dataset;
    AuSemCorStats stats;
};

// T pairs share lemma, POS, and sense key; F pairs share lemma and POS but
// differ in both sense key and supersense. Deterministic under config.seed.
AuSemCorResult build_ausemcor(const std::vector<SenseSentence>& sentences,
                              const AuSemCorConfig& config);

}  // namespace wic
