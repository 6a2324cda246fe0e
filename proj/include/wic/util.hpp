#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wic {

// Data/validation problems surface as wic::Error; the CLI maps it to exit 1.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// All character offsets in this codebase are Unicode code point offsets into
// UTF-8 encoded strings.
namespace utf8 {

std::size_t cp_count(std::string_view s);

// Byte offset of the cp_index-th code point; cp_index == cp_count(s) maps to s.size().
std::size_t cp_to_byte(std::string_view s, std::size_t cp_index);

std::string substr(std::string_view s, std::size_t cp_start, std::size_t cp_end);

}  // namespace utf8

// mt19937_64 with self-contained draw algorithms so that results are
// reproducible across standard libraries (std::shuffle and the standard
// distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, n); n must be > 0.
    std::uint64_t below(std::uint64_t n);

    double uniform();  // [0, 1)
    double normal(double mean, double stddev);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
        }
    }

private:
    std::mt19937_64 engine_;
};

std::uint64_t fnv1a64(std::string_view s);

// floor(x + 0.5); the rounding rule used for split sizes.
std::int64_t round_half_up(double x);

std::string read_file(const std::filesystem::path& path);

// Write via temp file + rename in the same directory.
void atomic_write(const std::filesystem::path& path, std::string_view content);

std::vector<std::string> split_on(std::string_view s, char delim);
std::string trim(std::string_view s);

}  // namespace wic
