#ifndef NOMSIG_ALGEBRA_HASH_HPP_
#define NOMSIG_ALGEBRA_HASH_HPP_

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <stdexcept>
#include <string_view>

#include "nomsig/algebra/bn254.hpp"
#include "nomsig/bytes.hpp"

namespace nomsig::algebra {

inline constexpr std::size_t kEll = 256;
inline constexpr std::string_view kH1Tag = "NOMSIG-H1";
inline constexpr std::string_view kH2Tag = "NOMSIG-H2";

// Fixed-length bit string of kEll bits. Bits are numbered 1..kEll, most
// significant bit of byte 0 first.
class BitString {
public:
    BitString() = default;
    explicit BitString(const std::array<uint8_t, kEll / 8>& bytes) : bytes_(bytes) {}

    bool bit(std::size_t i) const
    {
        if (i < 1 || i > kEll) throw std::out_of_range("BitString index outside [1, ell]");
        const std::size_t k = i - 1;
        return ((bytes_[k / 8] >> (7 - k % 8)) & 1u) != 0;
    }

    std::size_t hamming_weight() const
    {
        std::size_t n = 0;
        for (uint8_t b : bytes_) n += static_cast<std::size_t>(std::popcount(b));
        return n;
    }

    static BitString all_zero() { return BitString{}; }
    static BitString all_one()
    {
        std::array<uint8_t, kEll / 8> b{};
        b.fill(0xFF);
        return BitString{b};
    }

    const std::array<uint8_t, kEll / 8>& bytes() const { return bytes_; }
    bool operator==(const BitString&) const = default;

private:
    std::array<uint8_t, kEll / 8> bytes_{};
};

namespace detail {

struct MdCtxDeleter {
    void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};

}  // namespace detail

// Streaming digest over OpenSSL's EVP interface.
class Digest {
public:
    explicit Digest(const EVP_MD* md) : ctx_(EVP_MD_CTX_new())
    {
        if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), md, nullptr) != 1) throw std::runtime_error("EVP_DigestInit_ex failed");
    }

    Digest& update(ByteView data)
    {
        if (!data.empty() && EVP_DigestUpdate(ctx_.get(), data.data(), data.size()) != 1)
            throw std::runtime_error("EVP_DigestUpdate failed");
        return *this;
    }

    // Appends u64be(len) || data.
    Digest& update_prefixed(ByteView data)
    {
        std::array<uint8_t, 8> len{};
        uint64_t n = data.size();
        for (int i = 7; i >= 0; --i, n >>= 8) len[static_cast<std::size_t>(i)] = static_cast<uint8_t>(n);
        update(len);
        return update(data);
    }

    Bytes finish()
    {
        Bytes out(EVP_MAX_MD_SIZE);
        unsigned int len = 0;
        if (EVP_DigestFinal_ex(ctx_.get(), out.data(), &len) != 1) throw std::runtime_error("EVP_DigestFinal_ex failed");
        out.resize(len);
        return out;
    }

private:
    std::unique_ptr<EVP_MD_CTX, detail::MdCtxDeleter> ctx_;
};

inline std::array<uint8_t, 32> sha256(ByteView data)
{
    Bytes d = Digest(EVP_sha256()).update(data).finish();
    std::array<uint8_t, 32> out;
    std::copy(d.begin(), d.end(), out.begin());
    return out;
}

inline std::array<uint8_t, 64> sha512(ByteView data)
{
    Bytes d = Digest(EVP_sha512()).update(data).finish();
    std::array<uint8_t, 64> out;
    std::copy(d.begin(), d.end(), out.begin());
    return out;
}

inline std::array<uint8_t, 32> hmac_sha256(ByteView key, ByteView data)
{
    std::array<uint8_t, 32> out{};
    unsigned int len = 0;
    if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(), out.data(), &len) ==
        nullptr)
        throw std::runtime_error("HMAC failed");
    return out;
}

// H1: SHA-256 over lp(tag) || lp(part_1) || ... || lp(part_n), where lp is
// the 8-byte big-endian length prefix.
inline BitString hash_h1(std::initializer_list<ByteView> parts)
{
    Digest d(EVP_sha256());
    d.update_prefixed(as_bytes(kH1Tag));
    for (ByteView p : parts) d.update_prefixed(p);
    Bytes out = d.finish();
    std::array<uint8_t, kEll / 8> b{};
    std::copy(out.begin(), out.end(), b.begin());
    return BitString{b};
}

inline BitString hash_h1(ByteView data) { return hash_h1({data}); }

// H2: SHA-512 over the same framing, read as a 512-bit big-endian integer
// and reduced modulo the group order.
inline bn254::Fr hash_h2(std::initializer_list<ByteView> parts)
{
    Digest d(EVP_sha512());
    d.update_prefixed(as_bytes(kH2Tag));
    for (ByteView p : parts) d.update_prefixed(p);
    Bytes out = d.finish();
    return bn254::Fr::reduce_be_bytes(out);
}

inline bn254::Fr hash_h2(ByteView data) { return hash_h2({data}); }

}  // namespace nomsig::algebra

#endif  // NOMSIG_ALGEBRA_HASH_HPP_
