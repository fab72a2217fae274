#ifndef NOMSIG_TRIGGER_ECDSA_HPP_
#define NOMSIG_TRIGGER_ECDSA_HPP_

// Recoverable ECDSA over secp256k1 with Ethereum-style addresses. Messages
// are hashed with Keccak-256; nonces follow RFC 6979 with HMAC-SHA256, and
// only low-s signatures are produced or accepted.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "nomsig/algebra/curve.hpp"
#include "nomsig/algebra/field.hpp"
#include "nomsig/algebra/hash.hpp"
#include "nomsig/algebra/rng.hpp"
#include "nomsig/bytes.hpp"
#include "nomsig/error.hpp"
#include "nomsig/trigger/keccak.hpp"

namespace nomsig::trigger {

using algebra::U256;

struct SecpFpParams {
    static constexpr U256 modulus =
        U256::from_hex("FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFC2F");
};
struct SecpFnParams {
    static constexpr U256 modulus =
        U256::from_hex("FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141");
};

using SecpFp = algebra::Fp<SecpFpParams>;
using SecpFn = algebra::Fp<SecpFnParams>;

struct SecpCurve {
    using Field = SecpFp;
    static SecpFp b() { return SecpFp::from_u64(7); }
};

using SecpPoint = algebra::JacobianPoint<SecpCurve>;

inline const SecpPoint& secp_generator()
{
    static const SecpPoint g{
        SecpFp::from_canonical(U256::from_hex("79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798")),
        SecpFp::from_canonical(U256::from_hex("483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8"))};
    return g;
}

inline const algebra::FixedBaseTable<SecpPoint>& secp_table()
{
    static const algebra::FixedBaseTable<SecpPoint> t(secp_generator());
    return t;
}

using Address = std::array<uint8_t, 20>;

struct EcdsaKeyPair {
    SecpPoint vk;
    SecpFn sk;
};

struct EcdsaSignature {
    U256 r;
    U256 s;
    uint8_t recovery_id = 0;

    // r || s || recovery-id
    std::array<uint8_t, 65> to_bytes() const
    {
        std::array<uint8_t, 65> out{};
        auto rb = r.to_be_bytes();
        auto sb = s.to_be_bytes();
        std::copy(rb.begin(), rb.end(), out.begin());
        std::copy(sb.begin(), sb.end(), out.begin() + 32);
        out[64] = recovery_id;
        return out;
    }
    static EcdsaSignature from_bytes(ByteView b)
    {
        if (b.size() != 65) throw Error(ErrorCode::kMalformedEncoding, "ECDSA signature must be 65 bytes");
        return {U256::from_be_bytes(b.subspan(0, 32)), U256::from_be_bytes(b.subspan(32, 32)), b[64]};
    }
    bool operator==(const EcdsaSignature&) const = default;
};

inline const U256& half_order()
{
    static const U256 h = SecpFn::modulus.shr(1);
    return h;
}

inline std::array<uint8_t, 64> encode_uncompressed(const SecpPoint& vk)
{
    auto a = vk.to_affine();
    std::array<uint8_t, 64> out{};
    auto x = a.x.to_be_bytes();
    auto y = a.y.to_be_bytes();
    std::copy(x.begin(), x.end(), out.begin());
    std::copy(y.begin(), y.end(), out.begin() + 32);
    return out;
}

inline SecpPoint decode_uncompressed(ByteView b)
{
    if (b.size() != 64) throw Error(ErrorCode::kMalformedEncoding, "public key must be 64 bytes");
    auto x = SecpFp::from_canonical_checked(U256::from_be_bytes(b.subspan(0, 32)));
    auto y = SecpFp::from_canonical_checked(U256::from_be_bytes(b.subspan(32, 32)));
    if (!x || !y) throw Error(ErrorCode::kMalformedEncoding, "public key coordinate out of range");
    if (!SecpPoint::on_curve(*x, *y)) throw Error(ErrorCode::kNotOnCurve, "public key not on secp256k1");
    return SecpPoint{*x, *y};
}

inline Address address_of(const SecpPoint& vk)
{
    auto h = keccak256(encode_uncompressed(vk));
    Address a;
    std::copy(h.begin() + 12, h.end(), a.begin());
    return a;
}

// Mixed-case checksum encoding with a 0x prefix.
inline std::string address_to_string(const Address& a)
{
    std::string lower = to_hex(a);
    auto h = keccak256(as_bytes(lower));
    std::string out = "0x";
    for (std::size_t i = 0; i < lower.size(); ++i) {
        char ch = lower[i];
        int nibble = (i % 2 == 0) ? (h[i / 2] >> 4) : (h[i / 2] & 0x0F);
        if (ch >= 'a' && ch <= 'f' && nibble >= 8) ch = static_cast<char>(ch - 'a' + 'A');
        out.push_back(ch);
    }
    return out;
}

inline Address address_from_string(std::string_view s)
{
    if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
    std::string lower(s);
    for (auto& ch : lower)
        if (ch >= 'A' && ch <= 'F') ch = static_cast<char>(ch - 'A' + 'a');
    Bytes b = from_hex(lower);
    if (b.size() != 20) throw Error(ErrorCode::kMalformedEncoding, "address must be 20 bytes");
    Address a;
    std::copy(b.begin(), b.end(), a.begin());
    return a;
}

inline EcdsaKeyPair ecdsa_keypair_from_secret(const SecpFn& sk)
{
    if (sk.is_zero()) throw Error(ErrorCode::kMalformedEncoding, "ECDSA secret key must be nonzero");
    return {secp_table().mul(sk.to_canonical()), sk};
}

inline EcdsaKeyPair ecdsa_keygen(algebra::Rng& rng)
{
    for (;;) {
        std::array<uint8_t, 64> wide;
        rng.fill(wide);
        auto sk = SecpFn::reduce_be_bytes(wide);
        if (!sk.is_zero()) return ecdsa_keypair_from_secret(sk);
    }
}

namespace detail {

// RFC 6979 section 3.2 with HMAC-SHA256 and qlen = 256.
inline U256 rfc6979_nonce(const SecpFn& sk, const std::array<uint8_t, 32>& digest)
{
    const auto x = sk.to_be_bytes();
    const auto h1 = SecpFn::reduce(U256::from_be_bytes(digest)).to_be_bytes();
    std::array<uint8_t, 32> v;
    std::array<uint8_t, 32> k{};
    v.fill(0x01);
    auto step = [&](uint8_t sep, bool with_data) {
        Bytes in(v.begin(), v.end());
        in.push_back(sep);
        if (with_data) {
            append(in, x);
            append(in, h1);
        }
        k = algebra::hmac_sha256(k, in);
        v = algebra::hmac_sha256(k, v);
    };
    step(0x00, true);
    step(0x01, true);
    for (;;) {
        v = algebra::hmac_sha256(k, v);
        U256 cand = U256::from_be_bytes(v);
        if (!cand.is_zero() && cand < SecpFn::modulus) return cand;
        step(0x00, false);
    }
}

}  // namespace detail

inline std::array<uint8_t, 32> message_hash(ByteView m) { return keccak256(m); }

inline EcdsaSignature ecdsa_sign_digest(const SecpFn& sk, const std::array<uint8_t, 32>& digest)
{
    const U256 n = SecpFn::modulus;
    const auto e = SecpFn::reduce(U256::from_be_bytes(digest));
    for (;;) {
        U256 kv = detail::rfc6979_nonce(sk, digest);
        auto R = secp_table().mul(kv).to_affine();
        U256 rx = R.x.to_canonical();
        auto r = SecpFn::reduce(rx);
        if (r.is_zero()) continue;
        auto k = SecpFn::from_canonical(kv);
        auto s = k.inverse() * (e + r * sk);
        if (s.is_zero()) continue;
        uint8_t recid = static_cast<uint8_t>((R.y.to_canonical().limb[0] & 1u) | (rx >= n ? 2u : 0u));
        U256 sv = s.to_canonical();
        if (sv > half_order()) {
            sv = n - sv;
            recid ^= 1u;
        }
        return {r.to_canonical(), sv, recid};
    }
}

inline EcdsaSignature ecdsa_sign(const SecpFn& sk, ByteView m) { return ecdsa_sign_digest(sk, message_hash(m)); }

inline SecpPoint ecdsa_recover_digest(const EcdsaSignature& sig, const std::array<uint8_t, 32>& digest)
{
    const U256& n = SecpFn::modulus;
    if (sig.r.is_zero() || sig.r >= n || sig.s.is_zero() || sig.s >= n)
        throw Error(ErrorCode::kRecoveryFailed, "r or s out of range");
    if (sig.s > half_order()) throw Error(ErrorCode::kRecoveryFailed, "non-canonical high s");
    if (sig.recovery_id > 3) throw Error(ErrorCode::kRecoveryFailed, "recovery id above 3");

    U256 x = sig.r;
    if ((sig.recovery_id & 2u) != 0) {
        if (x.add_in_place(n) != 0 || x >= SecpFp::modulus)
            throw Error(ErrorCode::kRecoveryFailed, "r + n exceeds the field");
    }
    auto fx = SecpFp::from_canonical(x);
    auto fy = (fx.square() * fx + SecpCurve::b()).sqrt();
    if (!fy) throw Error(ErrorCode::kRecoveryFailed, "r is not the x-coordinate of a curve point");
    if ((fy->to_canonical().limb[0] & 1u) != (sig.recovery_id & 1u)) *fy = -*fy;
    SecpPoint R{fx, *fy};

    auto r = SecpFn::from_canonical(sig.r);
    auto s = SecpFn::from_canonical(sig.s);
    auto e = SecpFn::reduce(U256::from_be_bytes(digest));
    auto rinv = r.inverse();
    auto u1 = -(e * rinv);
    auto u2 = s * rinv;
    auto Q = secp_table().mul(u1.to_canonical()) + R.mul(u2.to_canonical());
    if (Q.is_identity()) throw Error(ErrorCode::kRecoveryFailed, "recovered the point at infinity");
    return Q;
}

inline SecpPoint ecdsa_recover(const EcdsaSignature& sig, ByteView m)
{
    return ecdsa_recover_digest(sig, message_hash(m));
}

// Throws RecoveryFailed for malformed signatures; false on address mismatch.
inline bool verify_against_address(const EcdsaSignature& sig, ByteView m, const Address& addr)
{
    return address_of(ecdsa_recover(sig, m)) == addr;
}

}  // namespace nomsig::trigger

#endif  // NOMSIG_TRIGGER_ECDSA_HPP_
