#pragma once

#include "wic/corpus.hpp"

namespace wic {

// Wraps both target occurrences in spaced ASCII double quotes:
//   "Click the right mouse button" -> "Click the right \" mouse \" button".
// Spans are shifted so they keep selecting the identical surface string.
// Requires valid spans on both sentences.
WicPair apply_signal1(const WicPair& pair);

// Appends the lemma to sentence2, separated by a single space.
WicPair apply_signal2(const WicPair& pair);

// Dispatch on mode; SignalMode::None returns the pair unchanged.
WicPair apply_signal(const WicPair& pair, SignalMode mode);
WicDataset apply_signal(const WicDataset& dataset, SignalMode mode);

// Swaps sentence/lang/span 1<->2; label and lemma are preserved; id gets ".rev".
WicPair reverse_pair(const WicPair& pair);

// Appends a reversed copy of every pair after the original block.
// Errors if the dataset already contains ".rev" ids.
WicDataset augment_reversal(const WicDataset& dataset);

}  // namespace wic
