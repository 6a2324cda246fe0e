#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wic/util.hpp"

namespace wic {

enum class Pos { Noun, Verb, Adj, Adv };
enum class Label { T, F };
enum class SignalMode { None, Signal1Quotes, Signal2Append };

std::string to_string(Pos pos);
Pos pos_from_string(std::string_view s);
std::string to_string(Label label);
Label label_from_string(std::string_view s);
std::string to_string(SignalMode mode);
SignalMode signal_from_string(std::string_view s);

// Half-open interval [start, end) in Unicode code points.
struct Span {
    std::int64_t start = 0;
    std::int64_t end = 0;
    bool operator==(const Span&) const = default;
};

struct WicPair {
    std::string id;
    std::string lemma;
    Pos pos = Pos::Noun;
    std::string lang1;
    std::string lang2;
    std::string sentence1;
    std::string sentence2;
    std::optional<Span> span1;
    std::optional<Span> span2;
    std::optional<Label> label;
    std::string source;
    // In-memory marker of the signal already applied; not serialized.
    SignalMode signal = SignalMode::None;

    std::string target1() const;  // surface string under span1
    std::string target2() const;
};

struct WicDataset {
    std::string name;
    std::vector<WicPair> pairs;

    std::size_t size() const { return pairs.size(); }
    bool empty() const { return pairs.empty(); }
};

// Empty result iff all WicPair invariants hold. Violations are data, not exceptions.
std::vector<std::string> validate_pair(const WicPair& pair);
// Per-pair violations prefixed with the pair id, plus duplicate-id checks.
std::vector<std::string> validate_dataset(const WicDataset& dataset);

// ---- canonical on-disk format -------------------------------------------
// Pair file: JSON-lines, one object per pair, keys exactly
//   {id, lemma, pos, lang1, lang2, sentence1, sentence2, start1, end1, start2, end2}
// in that order, UTF-8, spans in Unicode code points (null when absent).
// Gold file: "id<TAB>tag" with tag in {T, F}, one per line.

std::string pair_to_json_line(const WicPair& pair);
std::string pairs_to_jsonl(const WicDataset& dataset);
WicDataset load_pairs(const std::filesystem::path& path, const std::string& name = "");
void write_pairs(const WicDataset& dataset, const std::filesystem::path& path);

std::map<std::string, Label> load_gold(const std::filesystem::path& path);
void write_gold(const WicDataset& dataset, const std::filesystem::path& path);
// Errors if the gold id set and the dataset id set differ; lists missing/extra ids.
void attach_gold(WicDataset& dataset, const std::map<std::string, Label>& gold);

WicDataset load_mclwic(const std::filesystem::path& pairs_path,
                       const std::optional<std::filesystem::path>& gold_path = std::nullopt);

// ---- upstream adapters ----------------------------------------------------
struct LoadReport {
    WicDataset dataset;
    int skipped = 0;
    std::vector<std::string> warnings;
};

// WiC layout: <dir>/*.data.txt, five tab-separated columns
// (target, pos, tokenIdx1-tokenIdx2, sentence1, sentence2), spans rebuilt by
// whitespace tokenization; labels from the sibling *.gold.txt when present.
LoadReport load_wic(const std::filesystem::path& dir);

// XL-WiC layout: <dir>/<lang>_{train,valid,test}.txt, nine tab-separated
// columns (target, pos, start1, end1, start2, end2, sentence1, sentence2, 0/1).
// Keeps only the requested languages (upper-case ISO-639-1 codes).
LoadReport load_xlwic(const std::filesystem::path& dir, const std::set<std::string>& languages);

// ---- splits and concatenation --------------------------------------------
std::pair<WicDataset, WicDataset> split_random(const WicDataset& dataset, double ratio,
                                               std::uint64_t seed);
// Train/dev lemma vocabularies are strictly disjoint.
std::pair<WicDataset, WicDataset> split_oov(const WicDataset& dataset, double ratio,
                                            std::uint64_t seed);
WicDataset concat(const std::vector<WicDataset>& datasets);

}  // namespace wic
