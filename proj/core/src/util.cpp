#include "awlab/util.hpp"

#include <cmath>
#include <numbers>

namespace awlab::util {

std::pair<double, double> gauss_pair(std::uint64_t key1, std::uint64_t key2) {
    // u1 in (0,1]: shift the 53-bit integer by one so log(u1) is finite.
    const double u1 = (static_cast<double>(key1 >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = u01(key2);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

std::complex<double> gauss_complex(std::uint64_t key1, std::uint64_t key2) {
    auto [g1, g2] = gauss_pair(key1, key2);
    // Re, Im each N(0, 1/2) so that E|z|^2 = 1.
    const double s = std::sqrt(0.5);
    return {s * g1, s * g2};
}

double pairwise_sum(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n == 0) return 0.0;
    if (n <= 4) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

// ── base64 ─────────────────────────────────────────────────────────────────────

namespace {
constexpr char kAlphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int decode_char(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
}
} // namespace

std::string base64_encode(std::span<const unsigned char> bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= bytes.size(); i += 3) {
        const unsigned v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
        out += kAlphabet[(v >> 18) & 63];
        out += kAlphabet[(v >> 12) & 63];
        out += kAlphabet[(v >> 6) & 63];
        out += kAlphabet[v & 63];
    }
    const std::size_t rest = bytes.size() - i;
    if (rest == 1) {
        const unsigned v = bytes[i] << 16;
        out += kAlphabet[(v >> 18) & 63];
        out += kAlphabet[(v >> 12) & 63];
        out += "==";
    } else if (rest == 2) {
        const unsigned v = (bytes[i] << 16) | (bytes[i + 1] << 8);
        out += kAlphabet[(v >> 18) & 63];
        out += kAlphabet[(v >> 12) & 63];
        out += kAlphabet[(v >> 6) & 63];
        out += '=';
    }
    return out;
}

std::vector<unsigned char> base64_decode(const std::string& text) {
    if (text.size() % 4 != 0)
        throw std::invalid_argument("base64_decode: length must be a multiple of 4");
    std::vector<unsigned char> out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        int vals[4];
        int pad = 0;
        for (int j = 0; j < 4; ++j) {
            const char c = text[i + j];
            if (c == '=') {
                // Padding is only legal in the last two slots of the last group.
                if (i + 4 != text.size() || j < 2)
                    throw std::invalid_argument("base64_decode: misplaced padding");
                vals[j] = 0;
                ++pad;
            } else {
                if (pad > 0)
                    throw std::invalid_argument("base64_decode: data after padding");
                vals[j] = decode_char(c);
                if (vals[j] < 0)
                    throw std::invalid_argument("base64_decode: invalid character");
            }
        }
        const unsigned v = (vals[0] << 18) | (vals[1] << 12) | (vals[2] << 6) | vals[3];
        out.push_back(static_cast<unsigned char>((v >> 16) & 0xFF));
        if (pad < 2) out.push_back(static_cast<unsigned char>((v >> 8) & 0xFF));
        if (pad < 1) out.push_back(static_cast<unsigned char>(v & 0xFF));
    }
    return out;
}

} // namespace awlab::util
