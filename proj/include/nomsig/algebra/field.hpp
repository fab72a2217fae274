#ifndef NOMSIG_ALGEBRA_FIELD_HPP_
#define NOMSIG_ALGEBRA_FIELD_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "nomsig/algebra/u256.hpp"

namespace nomsig::algebra {

namespace detail {

// -p^{-1} mod 2^64 by Newton iteration.
constexpr uint64_t mont_inv64(uint64_t p0)
{
    uint64_t x = 1;
    for (int i = 0; i < 7; ++i) x *= 2 - p0 * x;
    return ~x + 1;
}

// (v + v) mod m, for v < m.
constexpr U256 mod_double(const U256& v, const U256& m)
{
    U256 r = v;
    uint64_t carry = r.add_in_place(v);
    if (carry != 0 || r >= m) r.sub_in_place(m);
    return r;
}

// 2^k mod m.
constexpr U256 pow2_mod(unsigned k, const U256& m)
{
    U256 r(1);
    if (r >= m) r.sub_in_place(m);
    for (unsigned i = 0; i < k; ++i) r = mod_double(r, m);
    return r;
}

}  // namespace detail

// Prime field element in Montgomery form. `Params::modulus` must be an odd
// prime below 2^256.
template <class Params>
class Fp {
public:
    static constexpr U256 modulus = Params::modulus;
    static constexpr uint64_t inv = detail::mont_inv64(modulus.limb[0]);
    static constexpr U256 r1 = detail::pow2_mod(256, modulus);
    static constexpr U256 r2 = detail::pow2_mod(512, modulus);
    static constexpr U256 r3 = detail::pow2_mod(768, modulus);

    constexpr Fp() = default;

    static constexpr Fp zero() { return Fp{}; }
    static constexpr Fp one() { return from_raw(r1); }

    static constexpr Fp from_u64(uint64_t v) { return from_canonical(U256(v)); }

    // Requires v < modulus.
    static constexpr Fp from_canonical(const U256& v)
    {
        Fp a = from_raw(v);
        return a * from_raw(r2);
    }

    static std::optional<Fp> from_canonical_checked(const U256& v)
    {
        if (v >= modulus) return std::nullopt;
        return from_canonical(v);
    }

    // Reduces an arbitrary 256-bit integer.
    static constexpr Fp reduce(U256 v)
    {
        while (v >= modulus) v.sub_in_place(modulus);
        return from_canonical(v);
    }

    // Big-endian bytes of any length, reduced mod p (Horner in base 2^64).
    static Fp reduce_be_bytes(std::span<const uint8_t> bytes)
    {
        const Fp base = from_raw(r2);  // 2^256 mod p, as a field element
        Fp acc;
        std::size_t head = bytes.size() % 32;
        std::size_t pos = 0;
        if (head != 0) {
            acc = reduce(U256::from_be_bytes(bytes.subspan(0, head)));
            pos = head;
        }
        for (; pos < bytes.size(); pos += 32) {
            acc = acc * base + reduce(U256::from_be_bytes(bytes.subspan(pos, 32)));
        }
        return acc;
    }

    constexpr U256 to_canonical() const
    {
        Fp one_raw = from_raw(U256(1));
        return (*this * one_raw).v_;
    }

    std::array<uint8_t, 32> to_be_bytes() const { return to_canonical().to_be_bytes(); }

    constexpr bool is_zero() const { return v_.is_zero(); }
    constexpr bool operator==(const Fp& o) const { return v_ == o.v_; }

    constexpr Fp operator+(const Fp& o) const
    {
        const auto& a = v_.limb;
        const auto& b = o.v_.limb;
        u128 c = static_cast<u128>(a[0]) + b[0];
        uint64_t s0 = static_cast<uint64_t>(c);
        c = static_cast<u128>(a[1]) + b[1] + (c >> 64);
        uint64_t s1 = static_cast<uint64_t>(c);
        c = static_cast<u128>(a[2]) + b[2] + (c >> 64);
        uint64_t s2 = static_cast<uint64_t>(c);
        c = static_cast<u128>(a[3]) + b[3] + (c >> 64);
        uint64_t s3 = static_cast<uint64_t>(c);
        return from_raw(reduce_once(s0, s1, s2, s3, static_cast<uint64_t>(c >> 64)));
    }

    constexpr Fp operator-(const Fp& o) const
    {
        const auto& a = v_.limb;
        const auto& b = o.v_.limb;
        const auto& p = modulus.limb;
        u128 d = static_cast<u128>(a[0]) - b[0];
        uint64_t s0 = static_cast<uint64_t>(d);
        d = static_cast<u128>(a[1]) - b[1] - ((d >> 64) & 1u);
        uint64_t s1 = static_cast<uint64_t>(d);
        d = static_cast<u128>(a[2]) - b[2] - ((d >> 64) & 1u);
        uint64_t s2 = static_cast<uint64_t>(d);
        d = static_cast<u128>(a[3]) - b[3] - ((d >> 64) & 1u);
        uint64_t s3 = static_cast<uint64_t>(d);
        const uint64_t mask = 0 - static_cast<uint64_t>((d >> 64) & 1u);
        u128 c = static_cast<u128>(s0) + (p[0] & mask);
        s0 = static_cast<uint64_t>(c);
        c = static_cast<u128>(s1) + (p[1] & mask) + (c >> 64);
        s1 = static_cast<uint64_t>(c);
        c = static_cast<u128>(s2) + (p[2] & mask) + (c >> 64);
        s2 = static_cast<uint64_t>(c);
        c = static_cast<u128>(s3) + (p[3] & mask) + (c >> 64);
        s3 = static_cast<uint64_t>(c);
        return from_raw(U256(s0, s1, s2, s3));
    }

    constexpr Fp operator-() const { return Fp{} - *this; }

    [[gnu::noinline]] constexpr Fp operator*(const Fp& o) const
    {
        // CIOS Montgomery multiplication.
        const auto& a = v_.limb;
        const auto& b = o.v_.limb;
        const auto& p = modulus.limb;
        uint64_t t0 = 0, t1 = 0, t2 = 0, t3 = 0, t4 = 0;
#pragma GCC unroll 4
        for (int i = 0; i < 4; ++i) {
            const uint64_t bi = b[i];
            u128 c = static_cast<u128>(a[0]) * bi + t0;
            t0 = static_cast<uint64_t>(c);
            c = static_cast<u128>(a[1]) * bi + t1 + (c >> 64);
            t1 = static_cast<uint64_t>(c);
            c = static_cast<u128>(a[2]) * bi + t2 + (c >> 64);
            t2 = static_cast<uint64_t>(c);
            c = static_cast<u128>(a[3]) * bi + t3 + (c >> 64);
            t3 = static_cast<uint64_t>(c);
            c = static_cast<u128>(t4) + (c >> 64);
            t4 = static_cast<uint64_t>(c);
            const uint64_t t5 = static_cast<uint64_t>(c >> 64);

            const uint64_t m = t0 * inv;
            c = static_cast<u128>(m) * p[0] + t0;
            c = static_cast<u128>(m) * p[1] + t1 + (c >> 64);
            t0 = static_cast<uint64_t>(c);
            c = static_cast<u128>(m) * p[2] + t2 + (c >> 64);
            t1 = static_cast<uint64_t>(c);
            c = static_cast<u128>(m) * p[3] + t3 + (c >> 64);
            t2 = static_cast<uint64_t>(c);
            c = static_cast<u128>(t4) + (c >> 64);
            t3 = static_cast<uint64_t>(c);
            t4 = t5 + static_cast<uint64_t>(c >> 64);
        }
        return from_raw(reduce_once(t0, t1, t2, t3, t4));
    }

    constexpr Fp& operator+=(const Fp& o) { return *this = *this + o; }
    constexpr Fp& operator-=(const Fp& o) { return *this = *this - o; }
    constexpr Fp& operator*=(const Fp& o) { return *this = *this * o; }

    constexpr Fp square() const { return *this * *this; }
    constexpr Fp dbl() const { return *this + *this; }

    constexpr Fp pow(const U256& e) const
    {
        Fp result = one();
        for (std::size_t i = e.bit_length(); i-- > 0;) {
            result = result.square();
            if (e.bit(i)) result *= *this;
        }
        return result;
    }

    // Zero maps to zero. Binary extended Euclid on the Montgomery
    // representative, then a correction by R^3.
    Fp inverse() const
    {
        if (is_zero()) return {};
        U256 u = v_, v = modulus;
        U256 x1(1), x2(0);
        auto halve = [](U256& x) {
            uint64_t carry = 0;
            if ((x.limb[0] & 1u) != 0) carry = x.add_in_place(modulus);
            x = x.shr(1);
            x.limb[3] |= carry << 63;
        };
        const U256 one(1);
        while (u != one && v != one) {
            while ((u.limb[0] & 1u) == 0) {
                u = u.shr(1);
                halve(x1);
            }
            while ((v.limb[0] & 1u) == 0) {
                v = v.shr(1);
                halve(x2);
            }
            if (u >= v) {
                u.sub_in_place(v);
                if (x1.sub_in_place(x2) != 0) x1.add_in_place(modulus);
            } else {
                v.sub_in_place(u);
                if (x2.sub_in_place(x1) != 0) x2.add_in_place(modulus);
            }
        }
        return from_raw(u == one ? x1 : x2) * from_raw(r3);
    }

    Fp inverse_by_fermat() const { return pow(modulus - U256(2)); }

    // Legendre symbol: 1, -1 (as p-1) or 0.
    constexpr Fp legendre() const { return pow((modulus - U256(1)).shr(1)); }

    // Square root for p = 3 mod 4.
    std::optional<Fp> sqrt() const
    {
        static_assert((modulus.limb[0] & 3u) == 3u, "sqrt requires p = 3 mod 4");
        Fp root = pow((modulus + U256(1)).shr(2));
        if (root.square() != *this) return std::nullopt;
        return root;
    }

    // Parity-free sign: true when the canonical value exceeds (p-1)/2.
    bool is_lexicographically_largest() const
    {
        return to_canonical() > (modulus - U256(1)).shr(1);
    }

    // Raw Montgomery limbs, for hashing containers etc.
    constexpr const U256& raw() const { return v_; }

private:
    // (t4:t3:t2:t1:t0) - p if that is non-negative, else the low 256 bits.
    static constexpr U256 reduce_once(uint64_t t0, uint64_t t1, uint64_t t2, uint64_t t3, uint64_t t4)
    {
        const auto& p = modulus.limb;
        u128 d = static_cast<u128>(t0) - p[0];
        uint64_t d0 = static_cast<uint64_t>(d);
        d = static_cast<u128>(t1) - p[1] - ((d >> 64) & 1u);
        uint64_t d1 = static_cast<uint64_t>(d);
        d = static_cast<u128>(t2) - p[2] - ((d >> 64) & 1u);
        uint64_t d2 = static_cast<uint64_t>(d);
        d = static_cast<u128>(t3) - p[3] - ((d >> 64) & 1u);
        uint64_t d3 = static_cast<uint64_t>(d);
        // keep t when the subtraction borrowed past t4
        const uint64_t borrow = static_cast<uint64_t>((d >> 64) & 1u) & static_cast<uint64_t>(t4 == 0);
        const uint64_t keep = 0 - borrow;
        return U256((t0 & keep) | (d0 & ~keep), (t1 & keep) | (d1 & ~keep), (t2 & keep) | (d2 & ~keep),
                    (t3 & keep) | (d3 & ~keep));
    }

    static constexpr Fp from_raw(const U256& v)
    {
        Fp a;
        a.v_ = v;
        return a;
    }

    U256 v_{};
};

}  // namespace nomsig::algebra

#endif  // NOMSIG_ALGEBRA_FIELD_HPP_
