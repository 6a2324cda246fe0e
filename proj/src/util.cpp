#include "wic/util.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wic {

namespace utf8 {

static bool is_continuation(unsigned char b) { return (b & 0xC0) == 0x80; }

std::size_t cp_count(std::string_view s) {
    std::size_t n = 0;
    for (unsigned char b : s) {
        if (!is_continuation(b)) ++n;
    }
    return n;
}

std::size_t cp_to_byte(std::string_view s, std::size_t cp_index) {
    std::size_t cp = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!is_continuation(static_cast<unsigned char>(s[i]))) {
            if (cp == cp_index) return i;
            ++cp;
        }
    }
    if (cp_index == cp) return s.size();
    throw Error("code point index " + std::to_string(cp_index) +
                " out of range for string of " + std::to_string(cp) + " code points");
}

std::string substr(std::string_view s, std::size_t cp_start, std::size_t cp_end) {
    if (cp_end < cp_start) throw Error("invalid code point range");
    const std::size_t b0 = cp_to_byte(s, cp_start);
    const std::size_t b1 = cp_to_byte(s, cp_end);
    return std::string(s.substr(b0, b1 - b0));
}

}  // namespace utf8

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw Error("Rng::below(0)");
    // rejection sampling to keep the draw unbiased
    const std::uint64_t threshold = (~std::uint64_t{0} - n + 1) % n;  // 2^64 mod n
    std::uint64_t r;
    do {
        r = next_u64();
    } while (r < threshold);
    return r % n;
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal(double mean, double stddev) {
    // Box-Muller, one value per call
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * M_PI * u2);
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : s) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::int64_t round_half_up(double x) {
    return static_cast<std::int64_t>(std::floor(x + 0.5));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    fs::path dir = path.parent_path();
    if (dir.empty()) dir = ".";
    fs::create_directories(dir);
    fs::path tmp = dir / (path.filename().string() + ".tmp." +
                          std::to_string(static_cast<unsigned long>(::getpid())));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw Error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::vector<std::string> split_on(std::string_view s, char delim) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(delim, pos);
        if (next == std::string_view::npos) {
            out.emplace_back(s.substr(pos));
            break;
        }
        out.emplace_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

std::string trim(std::string_view s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

}  // namespace wic
