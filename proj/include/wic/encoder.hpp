#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wic/corpus.hpp"

namespace wic {

inline constexpr const char* kClsToken = "[CLS]";
inline constexpr const char* kSepToken = "[SEP]";

struct TokenRef {
    std::string piece;
    std::optional<Span> offsets;  // code points into the source sentence; nullopt = special
    int segment = 1;              // 1 or 2

    bool special() const { return !offsets.has_value(); }
};

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // token_count x hidden_dim

// Single-text encoding, no special tokens.
struct Encoded {
    std::vector<TokenRef> tokens;
    Mat vectors;
};

// Pair encoding laid out as [CLS] s1-tokens [SEP] s2-tokens [SEP].
struct EncodedPair {
    std::vector<TokenRef> tokens;
    Mat vectors;
    Vec cls_vector;
};

struct EncoderCaps {
    bool trainable = false;
    bool multilingual = false;
};

class EncoderBackend {
public:
    virtual ~EncoderBackend() = default;
    virtual std::string name() const = 0;
    virtual int hidden_dim() const = 0;
    virtual EncoderCaps capabilities() const = 0;
    virtual EncodedPair encode_pair(std::string_view sentence1, std::string_view sentence2) const = 0;
    virtual Encoded encode(std::string_view text) const = 0;
    // Options needed to reconstruct this backend via make_backend (JSON text).
    virtual std::string options_json() const = 0;
};

// Backends with parameters the training loop may update.
class TrainableEncoder : public EncoderBackend {
public:
    virtual std::span<double> parameters() = 0;
    virtual std::span<const double> parameters() const = 0;
    // Accumulates d(loss)/d(parameters) into grad given d(loss)/d(vectors).
    virtual void backward(const std::vector<TokenRef>& tokens, const Mat& vectors,
                          const Mat& grad_vectors, std::span<double> grad) const = 0;
};

// Deterministic test/desk-scale encoder: whitespace tokens split into pieces
// of at most 4 code points, seeded hash embeddings, and a trainable one-layer
// context mixer over a +-1 token window.
class ToyEncoder : public TrainableEncoder {
public:
    explicit ToyEncoder(int hidden_dim = 16, std::uint64_t seed = 1);

    std::string name() const override { return "toy"; }
    int hidden_dim() const override { return dim_; }
    EncoderCaps capabilities() const override { return {true, true}; }
    EncodedPair encode_pair(std::string_view sentence1, std::string_view sentence2) const override;
    Encoded encode(std::string_view text) const override;
    std::string options_json() const override;

    std::span<double> parameters() override { return params_; }
    std::span<const double> parameters() const override { return params_; }
    void backward(const std::vector<TokenRef>& tokens, const Mat& vectors,
                  const Mat& grad_vectors, std::span<double> grad) const override;

    // Seeded hash embedding of one piece (pre-mixer input).
    Vec base_embedding(std::string_view piece) const;
    static std::vector<TokenRef> tokenize(std::string_view text, int segment);

    std::uint64_t seed() const { return seed_; }

private:
    Mat mix(const std::vector<TokenRef>& tokens) const;

    int dim_;
    std::uint64_t seed_;
    // layout: W_self | W_left | W_right (dim x dim each, row major) | bias
    std::vector<double> params_;
};

// Registry keyed by backend name; options are backend-specific JSON.
using BackendFactory =
    std::function<std::shared_ptr<EncoderBackend>(const std::string& options_json)>;
void register_backend(const std::string& name, BackendFactory factory);
std::shared_ptr<EncoderBackend> make_backend(const std::string& name,
                                             const std::string& options_json = "{}");

}  // namespace wic
