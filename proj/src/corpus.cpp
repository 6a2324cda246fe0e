#include "wic/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wic {

using ordered_json = nlohmann::ordered_json;

std::string to_string(Pos pos) {
    switch (pos) {
        case Pos::Noun: return "NOUN";
        case Pos::Verb: return "VERB";
        case Pos::Adj: return "ADJ";
        case Pos::Adv: return "ADV";
    }
    throw Error("bad Pos value");
}

Pos pos_from_string(std::string_view s) {
    if (s == "NOUN" || s == "N") return Pos::Noun;
    if (s == "VERB" || s == "V") return Pos::Verb;
    if (s == "ADJ" || s == "A") return Pos::Adj;
    if (s == "ADV" || s == "R") return Pos::Adv;
    throw Error("unknown part of speech: '" + std::string(s) + "'");
}

std::string to_string(Label label) { return label == Label::T ? "T" : "F"; }

Label label_from_string(std::string_view s) {
    if (s == "T") return Label::T;
    if (s == "F") return Label::F;
    throw Error("unknown label: '" + std::string(s) + "' (expected T or F)");
}

std::string to_string(SignalMode mode) {
    switch (mode) {
        case SignalMode::None: return "none";
        case SignalMode::Signal1Quotes: return "signal1";
        case SignalMode::Signal2Append: return "signal2";
    }
    throw Error("bad SignalMode value");
}

SignalMode signal_from_string(std::string_view s) {
    if (s == "none") return SignalMode::None;
    if (s == "signal1") return SignalMode::Signal1Quotes;
    if (s == "signal2") return SignalMode::Signal2Append;
    throw Error("unknown signal mode: '" + std::string(s) + "'");
}

std::string WicPair::target1() const {
    if (!span1) throw Error("pair " + id + " has no span1");
    return utf8::substr(sentence1, static_cast<std::size_t>(span1->start),
                        static_cast<std::size_t>(span1->end));
}

std::string WicPair::target2() const {
    if (!span2) throw Error("pair " + id + " has no span2");
    return utf8::substr(sentence2, static_cast<std::size_t>(span2->start),
                        static_cast<std::size_t>(span2->end));
}

namespace {

void check_span(const std::optional<Span>& span, const std::string& sentence, int which,
                std::vector<std::string>& out) {
    if (!span) return;
    const std::string name = "span" + std::to_string(which);
    const auto len = static_cast<std::int64_t>(utf8::cp_count(sentence));
    if (span->start == span->end) {
        out.push_back("empty " + name);
        return;
    }
    if (span->start < 0 || span->start > span->end || span->end > len) {
        out.push_back(name + " out of bounds");
        return;
    }
    const std::string target = utf8::substr(sentence, static_cast<std::size_t>(span->start),
                                            static_cast<std::size_t>(span->end));
    if (target.find('\n') != std::string::npos) {
        out.push_back(name + " target contains newline");
    }
}

}  // namespace

std::vector<std::string> validate_pair(const WicPair& pair) {
    std::vector<std::string> out;
    check_span(pair.span1, pair.sentence1, 1, out);
    check_span(pair.span2, pair.sentence2, 2, out);
    return out;
}

std::vector<std::string> validate_dataset(const WicDataset& dataset) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const WicPair& pair : dataset.pairs) {
        for (const std::string& v : validate_pair(pair)) {
            out.push_back(pair.id + ": " + v);
        }
        if (!seen.insert(pair.id).second) {
            out.push_back("duplicate id: " + pair.id);
        }
    }
    return out;
}

// ---- canonical format -------------------------------------------------------

std::string pair_to_json_line(const WicPair& pair) {
    ordered_json j;
    j["id"] = pair.id;
    j["lemma"] = pair.lemma;
    j["pos"] = to_string(pair.pos);
    j["lang1"] = pair.lang1;
    j["lang2"] = pair.lang2;
    j["sentence1"] = pair.sentence1;
    j["sentence2"] = pair.sentence2;
    if (pair.span1) {
        j["start1"] = pair.span1->start;
        j["end1"] = pair.span1->end;
    } else {
        j["start1"] = nullptr;
        j["end1"] = nullptr;
    }
    if (pair.span2) {
        j["start2"] = pair.span2->start;
        j["end2"] = pair.span2->end;
    } else {
        j["start2"] = nullptr;
        j["end2"] = nullptr;
    }
    return j.dump();
}

std::string pairs_to_jsonl(const WicDataset& dataset) {
    std::string out;
    for (const WicPair& pair : dataset.pairs) {
        out += pair_to_json_line(pair);
        out += '\n';
    }
    return out;
}

namespace {

const std::vector<std::string> kCanonicalKeys = {
    "id", "lemma", "pos", "lang1", "lang2", "sentence1", "sentence2",
    "start1", "end1", "start2", "end2"};

std::optional<Span> span_from_json(const ordered_json& j, const char* skey, const char* ekey,
                                   int line_no) {
    const auto& s = j.at(skey);
    const auto& e = j.at(ekey);
    if (s.is_null() != e.is_null()) {
        throw Error("line " + std::to_string(line_no) + ": " + skey + "/" + ekey +
                    " must both be set or both be null");
    }
    if (s.is_null()) return std::nullopt;
    if (!s.is_number_integer() || !e.is_number_integer()) {
        throw Error("line " + std::to_string(line_no) + ": " + skey + "/" + ekey +
                    " must be integers");
    }
    return Span{s.get<std::int64_t>(), e.get<std::int64_t>()};
}

WicPair pair_from_json_line(const std::string& line, int line_no, const std::string& source) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const std::exception& ex) {
        throw Error("line " + std::to_string(line_no) + ": malformed JSON (" + ex.what() + ")");
    }
    if (!j.is_object()) {
        throw Error("line " + std::to_string(line_no) + ": record is not a JSON object");
    }
    for (const std::string& key : kCanonicalKeys) {
        if (!j.contains(key)) {
            throw Error("line " + std::to_string(line_no) + ": missing key '" + key + "'");
        }
    }
    if (j.size() != kCanonicalKeys.size()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (std::find(kCanonicalKeys.begin(), kCanonicalKeys.end(), it.key()) ==
                kCanonicalKeys.end()) {
                throw Error("line " + std::to_string(line_no) + ": unexpected key '" + it.key() +
                            "'");
            }
        }
    }
    WicPair pair;
    try {
        pair.id = j.at("id").get<std::string>();
        pair.lemma = j.at("lemma").get<std::string>();
        pair.pos = pos_from_string(j.at("pos").get<std::string>());
        pair.lang1 = j.at("lang1").get<std::string>();
        pair.lang2 = j.at("lang2").get<std::string>();
        pair.sentence1 = j.at("sentence1").get<std::string>();
        pair.sentence2 = j.at("sentence2").get<std::string>();
    } catch (const Error&) {
        throw;
    } catch (const std::exception& ex) {
        throw Error("line " + std::to_string(line_no) + ": " + ex.what());
    }
    pair.span1 = span_from_json(j, "start1", "end1", line_no);
    pair.span2 = span_from_json(j, "start2", "end2", line_no);
    pair.source = source;

    const std::vector<std::string> violations = validate_pair(pair);
    if (!violations.empty()) {
        std::string msg = "line " + std::to_string(line_no) + " (id " + pair.id + "):";
        for (const std::string& v : violations) msg += " " + v + ";";
        throw Error(msg);
    }
    return pair;
}

std::string join_ids(const std::vector<std::string>& ids) {
    std::string out;
    const std::size_t limit = std::min<std::size_t>(ids.size(), 10);
    for (std::size_t i = 0; i < limit; ++i) {
        if (i) out += ", ";
        out += ids[i];
    }
    if (ids.size() > limit) out += ", … (" + std::to_string(ids.size()) + " total)";
    return out;
}

}  // namespace

WicDataset load_pairs(const std::filesystem::path& path, const std::string& name) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    WicDataset dataset;
    dataset.name = name.empty() ? path.stem().string() : name;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        WicPair pair = pair_from_json_line(line, line_no, dataset.name);
        dataset.pairs.push_back(std::move(pair));
    }
    const std::vector<std::string> violations = validate_dataset(dataset);
    if (!violations.empty()) {
        throw Error(path.string() + ": " + violations.front());
    }
    return dataset;
}

void write_pairs(const WicDataset& dataset, const std::filesystem::path& path) {
    atomic_write(path, pairs_to_jsonl(dataset));
}

std::map<std::string, Label> load_gold(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::map<std::string, Label> gold;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cols = split_on(line, '\t');
        if (cols.size() != 2) {
            throw Error(path.string() + " line " + std::to_string(line_no) +
                        ": expected 'id<TAB>tag'");
        }
        Label label;
        try {
            label = label_from_string(trim(cols[1]));
        } catch (const Error& ex) {
            throw Error(path.string() + " line " + std::to_string(line_no) + ": " + ex.what());
        }
        if (!gold.emplace(cols[0], label).second) {
            throw Error(path.string() + " line " + std::to_string(line_no) + ": duplicate id " +
                        cols[0]);
        }
    }
    return gold;
}

void write_gold(const WicDataset& dataset, const std::filesystem::path& path) {
    std::string out;
    for (const WicPair& pair : dataset.pairs) {
        if (!pair.label) throw Error("pair " + pair.id + " has no label; cannot write gold");
        out += pair.id;
        out += '\t';
        out += to_string(*pair.label);
        out += '\n';
    }
    atomic_write(path, out);
}

void attach_gold(WicDataset& dataset, const std::map<std::string, Label>& gold) {
    std::vector<std::string> missing;  // in dataset, not in gold
    for (WicPair& pair : dataset.pairs) {
        auto it = gold.find(pair.id);
        if (it == gold.end()) {
            missing.push_back(pair.id);
        } else {
            pair.label = it->second;
        }
    }
    std::set<std::string> ids;
    for (const WicPair& pair : dataset.pairs) ids.insert(pair.id);
    std::vector<std::string> extra;  // in gold, not in dataset
    for (const auto& [id, label] : gold) {
        if (!ids.count(id)) extra.push_back(id);
    }
    if (!missing.empty() || !extra.empty()) {
        std::string msg = "gold id mismatch;";
        if (!missing.empty()) msg += " missing from gold: " + join_ids(missing) + ";";
        if (!extra.empty()) msg += " extra in gold: " + join_ids(extra);
        throw Error(msg);
    }
}

WicDataset load_mclwic(const std::filesystem::path& pairs_path,
                       const std::optional<std::filesystem::path>& gold_path) {
    WicDataset dataset = load_pairs(pairs_path);
    if (gold_path) {
        attach_gold(dataset, load_gold(*gold_path));
    }
    return dataset;
}

// ---- upstream adapters ------------------------------------------------------

namespace {

// Whitespace tokens with [start, end) code point extents.
std::vector<std::pair<std::string, Span>> whitespace_tokens(const std::string& sentence) {
    std::vector<std::pair<std::string, Span>> tokens;
    std::string current;
    std::int64_t cp = 0;
    std::int64_t start = 0;
    const auto flush = [&](std::int64_t end_cp) {
        if (!current.empty()) {
            tokens.emplace_back(current, Span{start, end_cp});
            current.clear();
        }
    };
    std::size_t i = 0;
    while (i < sentence.size()) {
        const unsigned char b = static_cast<unsigned char>(sentence[i]);
        std::size_t len = 1;
        if ((b & 0x80) != 0) {
            while (i + len < sentence.size() &&
                   (static_cast<unsigned char>(sentence[i + len]) & 0xC0) == 0x80) {
                ++len;
            }
        }
        const bool ws = len == 1 && std::isspace(b);
        if (ws) {
            flush(cp);
        } else {
            if (current.empty()) start = cp;
            current.append(sentence, i, len);
        }
        ++cp;
        i += len;
    }
    flush(cp);
    return tokens;
}

}  // namespace

LoadReport load_wic(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw Error(dir.string() + " is not a directory");
    LoadReport report;
    report.dataset.name = "WiC";

    std::vector<fs::path> data_files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string fname = entry.path().filename().string();
        if (fname.size() > 9 && fname.ends_with(".data.txt")) data_files.push_back(entry.path());
    }
    std::sort(data_files.begin(), data_files.end());
    if (data_files.empty()) throw Error("no *.data.txt files under " + dir.string());

    for (const fs::path& data_path : data_files) {
        const std::string split_name =
            data_path.filename().string().substr(0, data_path.filename().string().size() - 9);
        const fs::path gold_path = dir / (split_name + ".gold.txt");
        std::vector<std::optional<Label>> labels;
        if (fs::exists(gold_path)) {
            std::ifstream gin(gold_path);
            std::string gline;
            while (std::getline(gin, gline)) {
                const std::string tag = trim(gline);
                if (tag.empty()) continue;
                labels.push_back(label_from_string(tag));
            }
        }

        std::ifstream in(data_path);
        if (!in) throw Error("cannot open " + data_path.string());
        std::string line;
        int line_no = 0;
        int row = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (trim(line).empty()) continue;
            const std::vector<std::string> cols = split_on(line, '\t');
            if (cols.size() != 5) {
                throw Error(data_path.string() + " line " + std::to_string(line_no) +
                            ": expected 5 tab-separated columns, got " +
                            std::to_string(cols.size()));
            }
            WicPair pair;
            pair.id = "wic." + split_name + "." + std::to_string(row);
            pair.lemma = cols[0];
            pair.pos = pos_from_string(cols[1]);
            pair.lang1 = "en";
            pair.lang2 = "en";
            pair.sentence1 = cols[3];
            pair.sentence2 = cols[4];
            pair.source = "WiC";

            const std::vector<std::string> idx = split_on(cols[2], '-');
            bool ok = idx.size() == 2;
            if (ok) {
                try {
                    const std::size_t t1 = std::stoul(idx[0]);
                    const std::size_t t2 = std::stoul(idx[1]);
                    const auto toks1 = whitespace_tokens(pair.sentence1);
                    const auto toks2 = whitespace_tokens(pair.sentence2);
                    if (t1 >= toks1.size() || t2 >= toks2.size()) {
                        ok = false;
                    } else {
                        pair.span1 = toks1[t1].second;
                        pair.span2 = toks2[t2].second;
                    }
                } catch (const std::exception&) {
                    ok = false;
                }
            }
            if (!ok) {
                ++report.skipped;
                report.warnings.push_back(data_path.filename().string() + " line " +
                                          std::to_string(line_no) +
                                          ": span reconstruction failed, record skipped");
                if (static_cast<std::size_t>(row) < labels.size()) ++row;
                continue;
            }
            if (static_cast<std::size_t>(row) < labels.size()) pair.label = labels[row];
            ++row;
            report.dataset.pairs.push_back(std::move(pair));
        }
    }
    return report;
}

namespace {

const std::set<std::string> kXlwicLanguages = {"BG", "DA", "DE", "ET", "FA", "FR", "HR",
                                               "IT", "JA", "KO", "NL", "RU", "ZH"};

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

LoadReport load_xlwic(const std::filesystem::path& dir, const std::set<std::string>& languages) {
    namespace fs = std::filesystem;
    for (const std::string& lang : languages) {
        if (!kXlwicLanguages.count(lang)) {
            throw Error("unknown XL-WiC language code: " + lang);
        }
    }
    LoadReport report;
    report.dataset.name = "XL-WiC";
    if (languages.empty()) return report;
    if (!fs::is_directory(dir)) throw Error(dir.string() + " is not a directory");

    for (const std::string& lang : languages) {  // std::set iterates sorted
        const std::string ll = lower(lang);
        for (const char* split_name : {"train", "valid", "test"}) {
            const fs::path path = dir / (ll + "_" + split_name + ".txt");
            if (!fs::exists(path)) continue;
            std::ifstream in(path);
            if (!in) throw Error("cannot open " + path.string());
            std::string line;
            int line_no = 0;
            int row = 0;
            while (std::getline(in, line)) {
                ++line_no;
                if (trim(line).empty()) continue;
                const std::vector<std::string> cols = split_on(line, '\t');
                if (cols.size() != 9) {
                    throw Error(path.string() + " line " + std::to_string(line_no) +
                                ": expected 9 tab-separated columns, got " +
                                std::to_string(cols.size()));
                }
                WicPair pair;
                pair.id = "xlwic." + ll + "." + split_name + "." + std::to_string(row);
                ++row;
                pair.lemma = cols[0];
                pair.pos = pos_from_string(cols[1]);
                pair.lang1 = ll;
                pair.lang2 = ll;
                pair.sentence1 = cols[6];
                pair.sentence2 = cols[7];
                pair.source = "XL-WiC:" + lang;
                const std::string tag = trim(cols[8]);
                if (tag == "1") {
                    pair.label = Label::T;
                } else if (tag == "0") {
                    pair.label = Label::F;
                } else {
                    throw Error(path.string() + " line " + std::to_string(line_no) +
                                ": label must be 0 or 1");
                }
                try {
                    pair.span1 = Span{std::stoll(cols[2]), std::stoll(cols[3])};
                    pair.span2 = Span{std::stoll(cols[4]), std::stoll(cols[5])};
                } catch (const std::exception&) {
                    pair.span1.reset();
                }
                if (!pair.span1 || !pair.span2 || !validate_pair(pair).empty()) {
                    ++report.skipped;
                    report.warnings.push_back(path.filename().string() + " line " +
                                              std::to_string(line_no) +
                                              ": invalid span, record skipped");
                    continue;
                }
                report.dataset.pairs.push_back(std::move(pair));
            }
        }
    }
    return report;
}

// ---- splits ------------------------------------------------------------------

namespace {

void check_split_args(const WicDataset& dataset, double ratio) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw Error("split ratio must be in (0, 1)");
    if (dataset.size() < 2) throw Error("dataset too small to split (need at least 2 pairs)");
}

std::pair<WicDataset, WicDataset> split_by_dev_indices(const WicDataset& dataset,
                                                       const std::set<std::size_t>& dev_idx) {
    WicDataset train;
    WicDataset dev;
    train.name = dataset.name + ".train";
    dev.name = dataset.name + ".dev";
    for (std::size_t i = 0; i < dataset.pairs.size(); ++i) {
        (dev_idx.count(i) ? dev : train).pairs.push_back(dataset.pairs[i]);
    }
    return {std::move(train), std::move(dev)};
}

}  // namespace

std::pair<WicDataset, WicDataset> split_random(const WicDataset& dataset, double ratio,
                                               std::uint64_t seed) {
    check_split_args(dataset, ratio);
    const auto n = dataset.size();
    const auto dev_size = static_cast<std::size_t>(round_half_up((1.0 - ratio) * n));
    std::vector<std::size_t> indices(n);
    for (std::size_t i = 0; i < n; ++i) indices[i] = i;
    Rng rng(seed);
    rng.shuffle(indices);
    std::set<std::size_t> dev_idx(indices.begin(), indices.begin() + dev_size);
    return split_by_dev_indices(dataset, dev_idx);
}

std::pair<WicDataset, WicDataset> split_oov(const WicDataset& dataset, double ratio,
                                            std::uint64_t seed) {
    check_split_args(dataset, ratio);
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < dataset.pairs.size(); ++i) {
        groups[dataset.pairs[i].lemma].push_back(i);
    }
    if (groups.size() < 2) {
        throw Error("out-of-vocabulary split needs at least two distinct lemmas");
    }

    std::vector<std::string> lemmas;
    for (const auto& [lemma, idx] : groups) lemmas.push_back(lemma);
    Rng rng(seed);
    rng.shuffle(lemmas);
    // Largest groups first; the seeded shuffle breaks size ties.
    std::stable_sort(lemmas.begin(), lemmas.end(), [&](const auto& a, const auto& b) {
        return groups[a].size() > groups[b].size();
    });

    const auto quota = round_half_up((1.0 - ratio) * static_cast<double>(dataset.size()));
    std::set<std::size_t> dev_idx;
    std::vector<std::string> dev_lemmas;
    std::int64_t dev_count = 0;
    for (const std::string& lemma : lemmas) {
        const auto g = static_cast<std::int64_t>(groups[lemma].size());
        if (std::abs(dev_count + g - quota) < std::abs(dev_count - quota)) {
            dev_lemmas.push_back(lemma);
            dev_count += g;
        }
    }
    if (dev_lemmas.empty()) {
        dev_lemmas.push_back(lemmas.back());  // smallest group after the sort
    } else if (dev_lemmas.size() == lemmas.size()) {
        dev_lemmas.pop_back();
    }
    for (const std::string& lemma : dev_lemmas) {
        for (std::size_t i : groups[lemma]) dev_idx.insert(i);
    }
    return split_by_dev_indices(dataset, dev_idx);
}

WicDataset concat(const std::vector<WicDataset>& datasets) {
    WicDataset out;
    std::set<std::string> ids;
    for (std::size_t d = 0; d < datasets.size(); ++d) {
        if (d) out.name += "+";
        out.name += datasets[d].name;
        for (const WicPair& pair : datasets[d].pairs) {
            WicPair copy = pair;
            if (!ids.insert(copy.id).second) {
                copy.id = copy.source + "." + copy.id;
                if (!ids.insert(copy.id).second) {
                    throw Error("unresolvable id collision on concat: " + pair.id);
                }
            }
            out.pairs.push_back(std::move(copy));
        }
    }
    return out;
}

}  // namespace wic
