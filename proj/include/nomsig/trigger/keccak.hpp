#ifndef NOMSIG_TRIGGER_KECCAK_HPP_
#define NOMSIG_TRIGGER_KECCAK_HPP_

// Keccak-256 with the original 0x01 padding (as used for Ethereum
// addresses), not the FIPS-202 SHA3-256 padding.

#include <array>
#include <bit>
#include <cstdint>
#include <span>

namespace nomsig::trigger {

namespace detail {

inline constexpr std::array<uint64_t, 24> kRoundConstants = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
    0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

// Rotation offsets and lane permutation of rho/pi, walked along the pi cycle.
inline constexpr std::array<int, 24> kRho = {1,  3,  6,  10, 15, 21, 28, 36, 45, 55, 2,  14,
                                             27, 41, 56, 8,  25, 43, 62, 18, 39, 61, 20, 44};
inline constexpr std::array<int, 24> kPi = {10, 7,  11, 17, 18, 3, 5,  16, 8,  21, 24, 4,
                                            15, 23, 19, 13, 12, 2, 20, 14, 22, 9,  6,  1};

inline void keccak_f1600(std::array<uint64_t, 25>& a)
{
    for (uint64_t rc : kRoundConstants) {
        std::array<uint64_t, 5> c;
        for (int x = 0; x < 5; ++x) c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
        for (int x = 0; x < 5; ++x) {
            uint64_t d = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 25; y += 5) a[y + x] ^= d;
        }
        uint64_t cur = a[1];
        for (int i = 0; i < 24; ++i) {
            uint64_t next = a[kPi[i]];
            a[kPi[i]] = std::rotl(cur, kRho[i]);
            cur = next;
        }
        for (int y = 0; y < 25; y += 5) {
            std::array<uint64_t, 5> row;
            for (int x = 0; x < 5; ++x) row[x] = a[y + x];
            for (int x = 0; x < 5; ++x) a[y + x] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
        }
        a[0] ^= rc;
    }
}

}  // namespace detail

inline std::array<uint8_t, 32> keccak256(std::span<const uint8_t> data)
{
    constexpr std::size_t kRate = 136;
    std::array<uint64_t, 25> st{};
    auto absorb = [&](const uint8_t* block) {
        for (std::size_t i = 0; i < kRate / 8; ++i) {
            uint64_t lane = 0;
            for (int b = 7; b >= 0; --b) lane = (lane << 8) | block[i * 8 + static_cast<std::size_t>(b)];
            st[i] ^= lane;
        }
        detail::keccak_f1600(st);
    };

    std::size_t off = 0;
    for (; data.size() - off >= kRate; off += kRate) absorb(data.data() + off);
    std::array<uint8_t, kRate> last{};
    std::size_t rest = data.size() - off;
    for (std::size_t i = 0; i < rest; ++i) last[i] = data[off + i];
    last[rest] ^= 0x01;
    last[kRate - 1] ^= 0x80;
    absorb(last.data());

    std::array<uint8_t, 32> out;
    for (std::size_t i = 0; i < 32; ++i) out[i] = static_cast<uint8_t>(st[i / 8] >> (8 * (i % 8)));
    return out;
}

}  // namespace nomsig::trigger

#endif  // NOMSIG_TRIGGER_KECCAK_HPP_
