#ifndef NOMSIG_ALGEBRA_U256_HPP_
#define NOMSIG_ALGEBRA_U256_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nomsig::algebra {

using u128 = unsigned __int128;

// Plain 256-bit unsigned integer, little-endian 64-bit limbs. Used for
// moduli, exponents and canonical (non-Montgomery) field values.
struct U256 {
    std::array<uint64_t, 4> limb{};

    constexpr U256() = default;
    constexpr explicit U256(uint64_t v) : limb{v, 0, 0, 0} {}
    constexpr U256(uint64_t l0, uint64_t l1, uint64_t l2, uint64_t l3) : limb{l0, l1, l2, l3} {}

    static constexpr U256 from_dec(std::string_view s)
    {
        U256 r;
        for (char ch : s) {
            if (ch < '0' || ch > '9') throw std::invalid_argument("U256: bad decimal digit");
            uint64_t carry = static_cast<uint64_t>(ch - '0');
            for (auto& l : r.limb) {
                u128 t = static_cast<u128>(l) * 10u + carry;
                l = static_cast<uint64_t>(t);
                carry = static_cast<uint64_t>(t >> 64);
            }
            if (carry != 0) throw std::overflow_error("U256: decimal literal too large");
        }
        return r;
    }

    static constexpr U256 from_hex(std::string_view s)
    {
        if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
        if (s.size() > 64) throw std::overflow_error("U256: hex literal too large");
        U256 r;
        for (char ch : s) {
            uint64_t d = 0;
            if (ch >= '0' && ch <= '9') d = static_cast<uint64_t>(ch - '0');
            else if (ch >= 'a' && ch <= 'f') d = static_cast<uint64_t>(ch - 'a' + 10);
            else if (ch >= 'A' && ch <= 'F') d = static_cast<uint64_t>(ch - 'A' + 10);
            else throw std::invalid_argument("U256: bad hex digit");
            r = r.shl(4);
            r.limb[0] |= d;
        }
        return r;
    }

    static constexpr U256 from_be_bytes(std::span<const uint8_t> b)
    {
        if (b.size() > 32) throw std::invalid_argument("U256: more than 32 bytes");
        U256 r;
        for (uint8_t byte : b) {
            r = r.shl(8);
            r.limb[0] |= byte;
        }
        return r;
    }

    constexpr std::array<uint8_t, 32> to_be_bytes() const
    {
        std::array<uint8_t, 32> out{};
        for (std::size_t i = 0; i < 32; ++i) {
            out[31 - i] = static_cast<uint8_t>(limb[i / 8] >> (8 * (i % 8)));
        }
        return out;
    }

    constexpr bool is_zero() const { return (limb[0] | limb[1] | limb[2] | limb[3]) == 0; }
    constexpr bool bit(std::size_t i) const { return i < 256 && ((limb[i / 64] >> (i % 64)) & 1u) != 0; }

    constexpr std::size_t bit_length() const
    {
        for (std::size_t i = 4; i-- > 0;) {
            if (limb[i] != 0) {
                std::size_t n = 64;
                uint64_t v = limb[i];
                while ((v >> 63) == 0) {
                    v <<= 1;
                    --n;
                }
                return i * 64 + n;
            }
        }
        return 0;
    }

    constexpr U256 shl(unsigned n) const
    {
        U256 r;
        if (n >= 256) return r;
        const unsigned w = n / 64, b = n % 64;
        for (unsigned i = 3 + 1; i-- > w;) {
            uint64_t v = limb[i - w] << b;
            if (b != 0 && i - w >= 1) v |= limb[i - w - 1] >> (64 - b);
            r.limb[i] = v;
        }
        return r;
    }

    constexpr U256 shr(unsigned n) const
    {
        U256 r;
        if (n >= 256) return r;
        const unsigned w = n / 64, b = n % 64;
        for (unsigned i = 0; i + w < 4; ++i) {
            uint64_t v = limb[i + w] >> b;
            if (b != 0 && i + w + 1 < 4) v |= limb[i + w + 1] << (64 - b);
            r.limb[i] = v;
        }
        return r;
    }

    // Returns the borrow.
    constexpr uint64_t sub_in_place(const U256& o)
    {
        uint64_t borrow = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            u128 t = static_cast<u128>(limb[i]) - o.limb[i] - borrow;
            limb[i] = static_cast<uint64_t>(t);
            borrow = static_cast<uint64_t>(t >> 64) & 1u;
        }
        return borrow;
    }

    // Returns the carry.
    constexpr uint64_t add_in_place(const U256& o)
    {
        uint64_t carry = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            u128 t = static_cast<u128>(limb[i]) + o.limb[i] + carry;
            limb[i] = static_cast<uint64_t>(t);
            carry = static_cast<uint64_t>(t >> 64);
        }
        return carry;
    }

    constexpr U256 operator+(const U256& o) const
    {
        U256 r = *this;
        r.add_in_place(o);
        return r;
    }
    constexpr U256 operator-(const U256& o) const
    {
        U256 r = *this;
        r.sub_in_place(o);
        return r;
    }

    constexpr U256 div_small(uint64_t d, uint64_t* rem = nullptr) const
    {
        U256 q;
        u128 r = 0;
        for (std::size_t i = 4; i-- > 0;) {
            u128 cur = (r << 64) | limb[i];
            q.limb[i] = static_cast<uint64_t>(cur / d);
            r = cur % d;
        }
        if (rem != nullptr) *rem = static_cast<uint64_t>(r);
        return q;
    }

    constexpr std::strong_ordering operator<=>(const U256& o) const
    {
        for (std::size_t i = 4; i-- > 0;) {
            if (limb[i] != o.limb[i]) return limb[i] <=> o.limb[i];
        }
        return std::strong_ordering::equal;
    }
    constexpr bool operator==(const U256&) const = default;

    std::string to_hex() const
    {
        static constexpr char digits[] = "0123456789abcdef";
        std::string s;
        for (uint8_t b : to_be_bytes()) {
            s.push_back(digits[b >> 4]);
            s.push_back(digits[b & 0xF]);
        }
        return s;
    }

    std::string to_dec() const
    {
        if (is_zero()) return "0";
        std::string s;
        U256 v = *this;
        while (!v.is_zero()) {
            uint64_t rem = 0;
            v = v.div_small(10, &rem);
            s.insert(s.begin(), static_cast<char>('0' + rem));
        }
        return s;
    }
};

}  // namespace nomsig::algebra

#endif  // NOMSIG_ALGEBRA_U256_HPP_
