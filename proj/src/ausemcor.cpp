#include "wic/ausemcor.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

namespace wic {

// ---- supersenses ------------------------------------------------------------

namespace {

const char* kLexFiles[45] = {
    "adj.all",           // 00
    "adj.pert",          // 01
    "adv.all",           // 02
    "noun.Tops",         // 03
    "noun.act",          // 04
    "noun.animal",       // 05
    "noun.artifact",     // 06
    "noun.attribute",    // 07
    "noun.body",         // 08
    "noun.cognition",    // 09
    "noun.communication",// 10
    "noun.event",        // 11
    "noun.feeling",      // 12
    "noun.food",         // 13
    "noun.group",        // 14
    "noun.location",     // 15
    "noun.motive",       // 16
    "noun.object",       // 17
    "noun.person",       // 18
    "noun.phenomenon",   // 19
    "noun.plant",        // 20
    "noun.possession",   // 21
    "noun.process",      // 22
    "noun.quantity",     // 23
    "noun.relation",     // 24
    "noun.shape",        // 25
    "noun.state",        // 26
    "noun.substance",    // 27
    "noun.time",         // 28
    "verb.body",         // 29
    "verb.change",       // 30
    "verb.cognition",    // 31
    "verb.communication",// 32
    "verb.competition",  // 33
    "verb.consumption",  // 34
    "verb.contact",      // 35
    "verb.creation",     // 36
    "verb.emotion",      // 37
    "verb.motion",       // 38
    "verb.perception",   // 39
    "verb.possession",   // 40
    "verb.social",       // 41
    "verb.stative",      // 42
    "verb.weather",      // 43
    "adj.ppl",           // 44
};

// Parses "lemma%ss_type:lex_filenum:lex_id[:head:head_id]" into its fields.
struct SenseKeyParts {
    std::string lemma;
    int ss_type = 0;
    int lex_filenum = 0;
};

SenseKeyParts parse_sense_key(const std::string& sense_key) {
    const std::size_t percent = sense_key.find('%');
    if (percent == std::string::npos || percent == 0) {
        throw Error("malformed sense key: '" + sense_key + "'");
    }
    const std::vector<std::string> fields = split_on(sense_key.substr(percent + 1), ':');
    if (fields.size() != 5) {
        throw Error("malformed sense key: '" + sense_key + "' (expected 5 ':' fields)");
    }
    SenseKeyParts parts;
    parts.lemma = sense_key.substr(0, percent);
    try {
        parts.ss_type = std::stoi(fields[0]);
        parts.lex_filenum = std::stoi(fields[1]);
    } catch (const std::exception&) {
        throw Error("malformed sense key: '" + sense_key + "'");
    }
    if (parts.ss_type < 1 || parts.ss_type > 5) {
        throw Error("sense key '" + sense_key + "' has unknown ss_type " +
                    std::to_string(parts.ss_type));
    }
    if (parts.lex_filenum < 0 || parts.lex_filenum > 44) {
        throw Error("sense key '" + sense_key + "' has unknown lexicographer file number " +
                    std::to_string(parts.lex_filenum));
    }
    return parts;
}

}  // namespace

std::string supersense_of(const std::string& sense_key) {
    return kLexFiles[parse_sense_key(sense_key).lex_filenum];
}

// ---- SemCor SGML parsing ------------------------------------------------------

namespace {

// Attribute values in semcor tagfiles are unquoted: <wf cmd=done pos=NN lemma=bank ...>
std::map<std::string, std::string> parse_attributes(std::string_view tag_body) {
    std::map<std::string, std::string> attrs;
    for (const std::string& field : split_on(std::string(tag_body), ' ')) {
        const std::size_t eq = field.find('=');
        if (eq == std::string::npos || eq == 0) continue;
        attrs[field.substr(0, eq)] = field.substr(eq + 1);
    }
    return attrs;
}

struct SemcorToken {
    std::string surface;
    std::optional<SenseAnnotation> annotation;  // span filled in later
};

void append_token(SenseSentence& sentence, const SemcorToken& token) {
    std::string surface = token.surface;
    std::replace(surface.begin(), surface.end(), '_', ' ');
    const auto start = static_cast<std::int64_t>(
        utf8::cp_count(sentence.text) + (sentence.text.empty() ? 0 : 1));
    if (!sentence.text.empty()) sentence.text += ' ';
    sentence.text += surface;
    if (token.annotation) {
        SenseAnnotation ann = *token.annotation;
        ann.char_span = Span{start, start + static_cast<std::int64_t>(utf8::cp_count(surface))};
        sentence.annotations.push_back(std::move(ann));
    }
}

void parse_semcor_file(const std::filesystem::path& path, SemcorLoadReport& report) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::string line;
    std::string doc_id = path.filename().string();
    std::optional<SenseSentence> current;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t.starts_with("<context ")) {
            const auto attrs = parse_attributes(t.substr(9, t.size() - 10));
            if (auto it = attrs.find("filename"); it != attrs.end()) doc_id = it->second;
        } else if (t.starts_with("<s ") || t == "<s>") {
            current = SenseSentence{};
            current->doc_id = doc_id;
        } else if (t.starts_with("</s>")) {
            if (current && !current->text.empty()) report.sentences.push_back(std::move(*current));
            current.reset();
        } else if (current && t.starts_with("<wf ")) {
            const std::size_t close = t.find('>');
            const std::size_t open_end = t.rfind("</wf>");
            if (close == std::string::npos || open_end == std::string::npos || open_end < close) {
                continue;
            }
            SemcorToken token;
            token.surface = t.substr(close + 1, open_end - close - 1);
            if (token.surface.empty()) continue;
            const auto attrs = parse_attributes(t.substr(4, close - 4));
            const auto cmd = attrs.find("cmd");
            const auto lemma = attrs.find("lemma");
            const auto lexsn = attrs.find("lexsn");
            if (cmd != attrs.end() && cmd->second == "done" && lemma != attrs.end() &&
                lexsn != attrs.end()) {
                // a token may carry several ';'-separated lexsns; use the first
                const std::string first_lexsn = split_on(lexsn->second, ';')[0];
                const std::string sense_key = lemma->second + "%" + first_lexsn;
                try {
                    const SenseKeyParts parts = parse_sense_key(sense_key);
                    if (parts.ss_type == 1 || parts.ss_type == 2) {
                        SenseAnnotation ann;
                        ann.lemma = lemma->second;
                        ann.pos = parts.ss_type == 1 ? Pos::Noun : Pos::Verb;
                        ann.sense_key = sense_key;
                        ann.supersense = kLexFiles[parts.lex_filenum];
                        token.annotation = std::move(ann);
                    }
                    // adjective/adverb/satellite senses are skipped silently
                } catch (const Error& ex) {
                    ++report.dropped_annotations;
                    if (report.warnings.size() < 50) {
                        report.warnings.push_back(doc_id + ": " + ex.what());
                    }
                }
            }
            append_token(*current, token);
        } else if (current && t.starts_with("<punc>")) {
            const std::size_t open_end = t.rfind("</punc>");
            if (open_end != std::string::npos && open_end > 6) {
                append_token(*current, SemcorToken{t.substr(6, open_end - 6), std::nullopt});
            }
        }
    }
}

}  // namespace

SemcorLoadReport load_semcor(const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    SemcorLoadReport report;
    std::vector<fs::path> files;
    if (fs::is_directory(path)) {
        for (const auto& entry : fs::recursive_directory_iterator(path)) {
            if (!entry.is_regular_file()) continue;
            std::ifstream probe(entry.path());
            std::string head;
            std::getline(probe, head);
            if (trim(head).starts_with("<contextfile")) files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
    } else if (fs::exists(path)) {
        files.push_back(path);
    } else {
        throw Error("no such SemCor path: " + path.string());
    }
    if (files.empty()) throw Error("no SemCor tagfiles found under " + path.string());
    for (const fs::path& file : files) parse_semcor_file(file, report);
    return report;
}

// ---- pair construction ---------------------------------------------------------

namespace {

struct Occurrence {
    std::size_t sentence;  // index into the sentences vector
    std::size_t annotation;
};

struct Candidate {
    Occurrence left;
    Occurrence right;
    std::size_t order;  // scan position, for deterministic output ids
};

struct GroupPicks {
    std::string lemma;
    Pos pos = Pos::Noun;
    std::vector<Candidate> t_picks;
    std::vector<Candidate> f_picks;
};

// Bounds the quadratic pair scan for very frequent lemmas.
constexpr std::size_t kMaxScannedPairs = 20000;

}  // namespace

AuSemCorResult build_ausemcor(const std::vector<SenseSentence>& sentences,
                              const AuSemCorConfig& config) {
    if (config.max_pairs_per_lemma < 1) throw Error("max_pairs_per_lemma must be >= 1");
    if (config.target_size && *config.target_size < 0) throw Error("target_size must be >= 0");

    std::map<std::pair<std::string, Pos>, std::vector<Occurrence>> groups;
    for (std::size_t s = 0; s < sentences.size(); ++s) {
        for (std::size_t a = 0; a < sentences[s].annotations.size(); ++a) {
            const SenseAnnotation& ann = sentences[s].annotations[a];
            groups[{ann.lemma, ann.pos}].push_back(Occurrence{s, a});
        }
    }

    const auto quota = static_cast<std::size_t>(config.max_pairs_per_lemma);
    std::vector<GroupPicks> picked;
    for (auto& [key, occurrences] : groups) {
        if (occurrences.size() < 2) continue;
        Rng rng(config.seed ^ fnv1a64(key.first + "#" + to_string(key.second)));
        rng.shuffle(occurrences);

        GroupPicks picks;
        picks.lemma = key.first;
        picks.pos = key.second;
        std::set<std::pair<std::size_t, std::size_t>> used_t;
        std::set<std::pair<std::size_t, std::size_t>> used_f;

        const std::size_t k = occurrences.size();
        std::size_t scanned = 0;
        std::size_t order = 0;
        for (std::size_t gap = 1; gap < k; ++gap) {
            for (std::size_t i = 0; i + gap < k; ++i) {
                if (picks.t_picks.size() >= quota && picks.f_picks.size() >= quota) break;
                if (++scanned > kMaxScannedPairs) break;
                const Occurrence& lo = occurrences[i];
                const Occurrence& ro = occurrences[i + gap];
                if (lo.sentence == ro.sentence) continue;
                const SenseSentence& ls = sentences[lo.sentence];
                const SenseSentence& rs = sentences[ro.sentence];
                if (ls.text == rs.text) continue;
                if (config.require_distinct_documents && ls.doc_id == rs.doc_id) continue;
                const SenseAnnotation& la = ls.annotations[lo.annotation];
                const SenseAnnotation& ra = rs.annotations[ro.annotation];
                const auto sent_key = std::minmax(lo.sentence, ro.sentence);
                if (la.sense_key == ra.sense_key) {
                    if (picks.t_picks.size() < quota && !used_t.count(sent_key)) {
                        used_t.insert(sent_key);
                        picks.t_picks.push_back(Candidate{lo, ro, order++});
                    }
                } else if (la.supersense != ra.supersense) {
                    if (picks.f_picks.size() < quota && !used_f.count(sent_key)) {
                        used_f.insert(sent_key);
                        picks.f_picks.push_back(Candidate{lo, ro, order++});
                    }
                }
            }
            if ((picks.t_picks.size() >= quota && picks.f_picks.size() >= quota) ||
                scanned > kMaxScannedPairs) {
                break;
            }
        }
        if (!picks.t_picks.empty() || !picks.f_picks.empty()) {
            picked.push_back(std::move(picks));
        }
    }

    // Flatten into per-class pools ordered by (lemma, pos, pick index).
    struct Emit {
        const GroupPicks* group;
        const Candidate* candidate;
        Label label;
    };
    std::vector<Emit> pool_t;
    std::vector<Emit> pool_f;
    for (const GroupPicks& g : picked) {
        for (const Candidate& c : g.t_picks) pool_t.push_back({&g, &c, Label::T});
        for (const Candidate& c : g.f_picks) pool_f.push_back({&g, &c, Label::F});
    }

    // Trim the larger class so |#T - #F| <= max(2, 0.01 * N) holds for the output.
    const std::size_t m = std::min(pool_t.size(), pool_f.size());
    const std::size_t slack = std::max<std::size_t>(2, 2 * m / 99);
    auto& larger = pool_t.size() >= pool_f.size() ? pool_t : pool_f;
    larger.resize(std::min(larger.size(), m + slack));

    std::vector<Emit> selected;
    selected.reserve(pool_t.size() + pool_f.size());
    for (std::size_t i = 0; i < std::max(pool_t.size(), pool_f.size()); ++i) {
        if (i < pool_t.size()) selected.push_back(pool_t[i]);
        if (i < pool_f.size()) selected.push_back(pool_f[i]);
    }
    if (config.target_size && selected.size() > static_cast<std::size_t>(*config.target_size)) {
        selected.resize(static_cast<std::size_t>(*config.target_size));
    }

    std::sort(selected.begin(), selected.end(), [](const Emit& a, const Emit& b) {
        const auto ka = std::tie(a.group->lemma, a.group->pos, a.label, a.candidate->order);
        const auto kb = std::tie(b.group->lemma, b.group->pos, b.label, b.candidate->order);
        return ka < kb;
    });

    AuSemCorResult result;
    result.dataset.name = "AuSemCor";
    std::set<std::string> lemmas;
    for (std::size_t n = 0; n < selected.size(); ++n) {
        const Emit& e = selected[n];
        const SenseSentence& ls = sentences[e.candidate->left.sentence];
        const SenseSentence& rs = sentences[e.candidate->right.sentence];
        const SenseAnnotation& la = ls.annotations[e.candidate->left.annotation];
        const SenseAnnotation& ra = rs.annotations[e.candidate->right.annotation];
        WicPair pair;
        pair.id = "ausemcor." + std::to_string(n);
        pair.lemma = e.group->lemma;
        pair.pos = e.group->pos;
        pair.lang1 = "en";
        pair.lang2 = "en";
        pair.sentence1 = ls.text;
        pair.sentence2 = rs.text;
        pair.span1 = la.char_span;
        pair.span2 = ra.char_span;
        pair.label = e.label;
        pair.source = "AuSemCor";
        result.dataset.pairs.push_back(std::move(pair));

        ++result.stats.pairs;
        (e.label == Label::T ? result.stats.true_pairs : result.stats.false_pairs)++;
        ++result.stats.by_pos[to_string(e.group->pos)];
        lemmas.insert(e.group->lemma);
    }
    result.stats.unique_lemmas = static_cast<std::int64_t>(lemmas.size());
    return result;
}

std::string AuSemCorStats::to_json() const {
    nlohmann::ordered_json j;
    j["pairs"] = pairs;
    j["true_pairs"] = true_pairs;
    j["false_pairs"] = false_pairs;
    j["unique_lemmas"] = unique_lemmas;
    j["by_pos"] = by_pos;
    return j.dump(2) + "\n";
}

}  // namespace wic
