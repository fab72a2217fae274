#ifndef NOMSIG_ALGEBRA_RNG_HPP_
#define NOMSIG_ALGEBRA_RNG_HPP_

#include <openssl/rand.h>

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>

#include "nomsig/algebra/bn254.hpp"
#include "nomsig/algebra/hash.hpp"

namespace nomsig::algebra {

// Deterministic byte stream: SHA-512(seed || counter) blocks. Seeded from
// an integer for reproducible runs or from the OS for real use.
class Rng {
public:
    using result_type = uint64_t;

    explicit Rng(uint64_t seed)
    {
        for (int i = 0; i < 8; ++i) seed_[static_cast<std::size_t>(i)] = static_cast<uint8_t>(seed >> (56 - 8 * i));
    }

    explicit Rng(std::span<const uint8_t, 32> seed) { std::copy(seed.begin(), seed.end(), seed_.begin()); }

    static Rng from_os()
    {
        std::array<uint8_t, 32> s{};
        if (RAND_bytes(s.data(), static_cast<int>(s.size())) != 1) throw std::runtime_error("RAND_bytes failed");
        return Rng(std::span<const uint8_t, 32>(s));
    }

    // Independent child stream, labelled.
    Rng fork(std::string_view label)
    {
        std::array<uint8_t, 32> s{};
        fill(s);
        Digest d(EVP_sha256());
        d.update(s).update(as_bytes(label));
        Bytes out = d.finish();
        std::copy(out.begin(), out.end(), s.begin());
        return Rng(std::span<const uint8_t, 32>(s));
    }

    void fill(std::span<uint8_t> out)
    {
        for (uint8_t& b : out) {
            if (pos_ == block_.size()) refill();
            b = block_[pos_++];
        }
    }

    uint64_t next_u64()
    {
        std::array<uint8_t, 8> b{};
        fill(b);
        uint64_t v = 0;
        for (uint8_t x : b) v = (v << 8) | x;
        return v;
    }

    // Uniform in [0, r): 512 random bits reduced modulo r.
    bn254::Fr scalar()
    {
        std::array<uint8_t, 64> b{};
        fill(b);
        return bn254::Fr::reduce_be_bytes(b);
    }

    bn254::Fr nonzero_scalar()
    {
        for (;;) {
            bn254::Fr s = scalar();
            if (!s.is_zero()) return s;
        }
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return next_u64(); }

private:
    void refill()
    {
        std::array<uint8_t, 8> ctr{};
        for (int i = 0; i < 8; ++i) ctr[static_cast<std::size_t>(i)] = static_cast<uint8_t>(counter_ >> (56 - 8 * i));
        ++counter_;
        Bytes out = Digest(EVP_sha512()).update(seed_).update(ctr).finish();
        std::copy(out.begin(), out.end(), block_.begin());
        pos_ = 0;
    }

    std::array<uint8_t, 32> seed_{};
    uint64_t counter_ = 0;
    std::array<uint8_t, 64> block_{};
    std::size_t pos_ = 64;
};

}  // namespace nomsig::algebra

#endif  // NOMSIG_ALGEBRA_RNG_HPP_
