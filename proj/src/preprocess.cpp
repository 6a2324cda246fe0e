#include "wic/preprocess.hpp"

namespace wic {

namespace {

// Inserts '" ' before and ' "' after the span; the span shifts right by the
// two inserted code points.
void quote_target(std::string& sentence, Span& span) {
    const auto len = static_cast<std::int64_t>(utf8::cp_count(sentence));
    if (span.start < 0 || span.start >= span.end || span.end > len) {
        throw Error("signal 1 requires a valid target span");
    }
    const std::string before = utf8::substr(sentence, 0, static_cast<std::size_t>(span.start));
    const std::string target = utf8::substr(sentence, static_cast<std::size_t>(span.start),
                                            static_cast<std::size_t>(span.end));
    const std::string after =
        utf8::substr(sentence, static_cast<std::size_t>(span.end), static_cast<std::size_t>(len));
    sentence = before + "\" " + target + " \"" + after;
    span.start += 2;
    span.end += 2;
}

}  // namespace

WicPair apply_signal1(const WicPair& pair) {
    if (pair.signal != SignalMode::None) {
        throw Error("pair " + pair.id + " already carries signal '" + to_string(pair.signal) +
                    "'");
    }
    if (!pair.span1 || !pair.span2) {
        throw Error("pair " + pair.id + ": signal 1 needs character spans in both sentences");
    }
    WicPair out = pair;
    quote_target(out.sentence1, *out.span1);
    quote_target(out.sentence2, *out.span2);
    out.signal = SignalMode::Signal1Quotes;
    return out;
}

WicPair apply_signal2(const WicPair& pair) {
    if (pair.signal != SignalMode::None) {
        throw Error("pair " + pair.id + " already carries signal '" + to_string(pair.signal) +
                    "'");
    }
    WicPair out = pair;
    out.sentence2 += " " + out.lemma;
    out.signal = SignalMode::Signal2Append;
    return out;
}

WicPair apply_signal(const WicPair& pair, SignalMode mode) {
    switch (mode) {
        case SignalMode::None: return pair;
        case SignalMode::Signal1Quotes: return apply_signal1(pair);
        case SignalMode::Signal2Append: return apply_signal2(pair);
    }
    throw Error("bad SignalMode value");
}

WicDataset apply_signal(const WicDataset& dataset, SignalMode mode) {
    WicDataset out;
    out.name = dataset.name;
    out.pairs.reserve(dataset.size());
    for (const WicPair& pair : dataset.pairs) {
        out.pairs.push_back(apply_signal(pair, mode));
    }
    return out;
}

WicPair reverse_pair(const WicPair& pair) {
    WicPair out = pair;
    std::swap(out.sentence1, out.sentence2);
    std::swap(out.lang1, out.lang2);
    std::swap(out.span1, out.span2);
    out.id += ".rev";
    return out;
}

WicDataset augment_reversal(const WicDataset& dataset) {
    for (const WicPair& pair : dataset.pairs) {
        if (pair.id.ends_with(".rev")) {
            throw Error("dataset already reversal-augmented (found id " + pair.id + ")");
        }
    }
    WicDataset out;
    out.name = dataset.name + "_rev";
    out.pairs.reserve(dataset.size() * 2);
    out.pairs = dataset.pairs;
    for (const WicPair& pair : dataset.pairs) {
        out.pairs.push_back(reverse_pair(pair));
    }
    return out;
}

}  // namespace wic
