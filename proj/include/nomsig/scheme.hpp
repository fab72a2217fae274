#ifndef NOMSIG_SCHEME_HPP_
#define NOMSIG_SCHEME_HPP_

// Nominative signatures over an asymmetric pairing, with a Waters-signature
// core. Every algorithm is templated on the pairing backend so the whole
// scheme can also run over the exponent-tracking mock group.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nomsig/algebra/backend.hpp"
#include "nomsig/algebra/hash.hpp"
#include "nomsig/algebra/rng.hpp"
#include "nomsig/bytes.hpp"
#include "nomsig/error.hpp"
#include "nomsig/gasmodel.hpp"

namespace nomsig {

using algebra::BitString;
using algebra::Rng;
using algebra::Scalar;
using algebra::hash_h1;
using algebra::hash_h2;

using algebra::kEll;
inline constexpr int kSecurityLevel = 128;

template <class B>
struct PublicParams {
    using Backend = B;
    int security = kSecurityLevel;
    std::size_t ell = kEll;
    typename B::G1 g1;
    typename B::G2 g2;

    bool operator==(const PublicParams&) const = default;
};

template <class B>
PublicParams<B> setup(int security)
{
    if (security != kSecurityLevel)
        throw Error(ErrorCode::kUnsupportedSecurityLevel, "only 128-bit security is supported");
    return {kSecurityLevel, kEll, B::G1::generator(), B::G2::generator()};
}

namespace detail {

template <class Elem>
void append_all(Bytes& out, std::span<const Elem> elems)
{
    for (const auto& e : elems) append(out, e.to_bytes());
}

}  // namespace detail

template <class B>
struct SignerPublicKey {
    typename B::G1 gS;
    typename B::G2 hS;
    std::vector<typename B::G2> u;  // u_0 .. u_ell

    // Canonical concatenation in field order; the input to every hash that
    // names pk_S.
    Bytes to_bytes() const
    {
        Bytes out = gS.to_bytes();
        append(out, hS.to_bytes());
        detail::append_all<typename B::G2>(out, u);
        return out;
    }
    bool operator==(const SignerPublicKey&) const = default;
};

template <class B>
struct SignerSecretKey {
    Scalar alphaS;
    bool operator==(const SignerSecretKey&) const = default;
};

template <class B>
struct SignerKeys {
    SignerPublicKey<B> pk;
    SignerSecretKey<B> sk;
};

template <class B>
struct NomineePublicKey {
    typename B::G1 gN;
    typename B::G2 hN;
    typename B::G2 k;
    std::vector<typename B::G2> uPrime;  // u'_0 .. u'_ell
    typename B::G2 x1;
    typename B::G2 x2;

    Bytes to_bytes() const
    {
        Bytes out = gN.to_bytes();
        append(out, hN.to_bytes());
        append(out, k.to_bytes());
        detail::append_all<typename B::G2>(out, uPrime);
        append(out, x1.to_bytes());
        append(out, x2.to_bytes());
        return out;
    }
    bool operator==(const NomineePublicKey&) const = default;
};

template <class B>
struct NomineeSecretKey {
    Scalar alphaN;
    std::vector<Scalar> vPrime;  // v'_0 .. v'_ell
    Scalar y1;
    Scalar y2;
    bool operator==(const NomineeSecretKey&) const = default;
};

template <class B>
struct NomineeKeys {
    NomineePublicKey<B> pk;
    NomineeSecretKey<B> sk;
};

template <class B>
struct DeltaMsg {
    typename B::G1 d1;
    typename B::G2 d2;
    typename B::G2 d3;
    bool operator==(const DeltaMsg&) const = default;
};

template <class B>
struct NomSignature {
    typename B::G1 s1;
    typename B::G1 s2;
    typename B::G2 s3;
    Scalar s;
    bool operator==(const NomSignature&) const = default;
};

template <class B>
struct VerificationToken {
    typename B::G1 tk1;
    typename B::G1 tk2;
    bool operator==(const VerificationToken&) const = default;
};

// ---------------------------------------------------------------------------
// Waters hash

template <class G>
struct WatersResult {
    G value;
    uint64_t multiplications = 0;
};

// u_0 * prod_{i : m_i = 1} u_i. Multiplications counted = Hamming weight of m.
template <class G>
WatersResult<G> waters_eval(std::span<const G> bases, const BitString& m)
{
    if (bases.size() != kEll + 1)
        throw Error(ErrorCode::kLengthMismatch, "Waters bases must have ell + 1 entries");
    WatersResult<G> r{bases[0], 0};
    for (std::size_t i = 1; i <= kEll; ++i) {
        if (!m.bit(i)) continue;
        r.value = r.value * bases[i];
        ++r.multiplications;
    }
    return r;
}

// v'_0 + sum v'_i m_i, the discrete log of F_N(m) known to the nominee.
inline Scalar waters_exponent(std::span<const Scalar> v, const BitString& m)
{
    if (v.size() != kEll + 1) throw Error(ErrorCode::kLengthMismatch, "Waters exponents must have ell + 1 entries");
    Scalar acc = v[0];
    for (std::size_t i = 1; i <= kEll; ++i)
        if (m.bit(i)) acc += v[i];
    return acc;
}

// ---------------------------------------------------------------------------
// Key generation

template <class B>
SignerKeys<B> keygen_signer(const PublicParams<B>& par, Rng& rng)
{
    SignerKeys<B> keys;
    keys.sk.alphaS = rng.scalar();
    keys.pk.gS = par.g1.pow(keys.sk.alphaS);
    keys.pk.hS = B::G2::generator_pow(rng.scalar());
    keys.pk.u.reserve(kEll + 1);
    for (std::size_t i = 0; i <= kEll; ++i) keys.pk.u.push_back(B::G2::generator_pow(rng.scalar()));
    B::G2::normalize(keys.pk.u);
    return keys;
}

template <class B>
NomineeKeys<B> keygen_nominee(const PublicParams<B>& par, Rng& rng)
{
    NomineeKeys<B> keys;
    auto& sk = keys.sk;
    auto& pk = keys.pk;
    sk.alphaN = rng.scalar();
    sk.y1 = rng.nonzero_scalar();
    sk.y2 = rng.nonzero_scalar();
    sk.vPrime.reserve(kEll + 1);
    for (std::size_t i = 0; i <= kEll; ++i) sk.vPrime.push_back(rng.scalar());

    pk.gN = par.g1.pow(sk.alphaN);
    pk.hN = B::G2::generator_pow(rng.scalar());
    pk.k = B::G2::generator_pow(rng.scalar());
    pk.uPrime.reserve(kEll + 1);
    for (const auto& v : sk.vPrime) pk.uPrime.push_back(B::G2::generator_pow(v));
    pk.x1 = B::G2::generator_pow(sk.y1.inverse());
    pk.x2 = B::G2::generator_pow(sk.y2.inverse());
    B::G2::normalize(pk.uPrime);
    return keys;
}

// ---------------------------------------------------------------------------
// Derived values shared by Receive, Convert, TkVerify and the protocols

inline BitString message_digest(ByteView pkN_bytes, ByteView m) { return hash_h1({pkN_bytes, m}); }

template <class B>
Scalar signature_scalar_t(const SignerPublicKey<B>& pkS, const typename B::G1& s1, const typename B::G1& s2,
                          ByteView m)
{
    Bytes pk = pkS.to_bytes();
    Bytes a = s1.to_bytes();
    Bytes b = s2.to_bytes();
    return hash_h2({pk, a, b, m});
}

template <class B>
struct DerivedValues {
    BitString MS;
    Scalar t;
    typename B::G2 MN;
    BitString MNbits;
    // F_S(M_S) * F_N(M_Nbits), and the group multiplications spent on it.
    typename B::G2 combined_hash;
    uint64_t waters_multiplications = 0;
};

template <class B>
DerivedValues<B> derive_values(const SignerPublicKey<B>& pkS, const NomineePublicKey<B>& pkN, ByteView m,
                               const NomSignature<B>& sigma)
{
    DerivedValues<B> d;
    d.MS = message_digest(pkN.to_bytes(), m);
    d.t = signature_scalar_t(pkS, sigma.s1, sigma.s2, m);
    d.MN = B::G2::generator_pow(d.t) * pkN.k.pow(sigma.s);
    d.MNbits = hash_h1(d.MN.to_bytes());
    auto fs = waters_eval<typename B::G2>(pkS.u, d.MS);
    auto fn = waters_eval<typename B::G2>(pkN.uPrime, d.MNbits);
    d.combined_hash = fs.value * fn.value;
    d.waters_multiplications = fs.multiplications + fn.multiplications + 1;
    return d;
}

// ---------------------------------------------------------------------------
// Pairing-product checks

template <class B>
using PairingTerm = std::pair<typename B::G1, typename B::G2>;

template <class B>
bool product_is_one(std::initializer_list<PairingTerm<B>> terms)
{
    std::vector<PairingTerm<B>> v(terms);
    return B::pairing_product(v).is_identity();
}

// e(gS, hS) * e(d1, F_S(M_S)) == e(g1, d3)
template <class B>
bool waters_equation_holds(const PublicParams<B>& par, const SignerPublicKey<B>& pkS, const typename B::G2& fs,
                           const DeltaMsg<B>& delta)
{
    return product_is_one<B>({{pkS.gS, pkS.hS}, {delta.d1, fs}, {par.g1.inverse(), delta.d3}});
}

// e(d1, g2) == e(g1, d2)
template <class B>
bool randomness_consistent(const PublicParams<B>& par, const DeltaMsg<B>& delta)
{
    return product_is_one<B>({{delta.d1, par.g2}, {par.g1.inverse(), delta.d2}});
}

// ---------------------------------------------------------------------------
// Sign

template <class B>
DeltaMsg<B> sign_with(const PublicParams<B>& par, const NomineePublicKey<B>& pkN, ByteView m,
                      const SignerKeys<B>& signer, const Scalar& r)
{
    BitString ms = message_digest(pkN.to_bytes(), m);
    auto fs = waters_eval<typename B::G2>(signer.pk.u, ms).value;
    DeltaMsg<B> d;
    d.d1 = par.g1.pow(r);
    d.d2 = par.g2.pow(r);
    d.d3 = signer.pk.hS.pow(signer.sk.alphaS) * fs.pow(r);
    return d;
}

template <class B>
DeltaMsg<B> sign(const PublicParams<B>& par, const NomineePublicKey<B>& pkN, ByteView m,
                 const SignerKeys<B>& signer, Rng& rng)
{
    return sign_with(par, pkN, m, signer, rng.scalar());
}

// ---------------------------------------------------------------------------
// Receive

struct ReceiveRandomness {
    Scalar r;
    Scalar r_prime;
    Scalar s;
};

inline ReceiveRandomness draw_receive_randomness(Rng& rng)
{
    ReceiveRandomness rr;
    rr.r = rng.scalar();
    rr.r_prime = rng.scalar();
    rr.s = rng.scalar();
    return rr;
}

// Both Waters checks of Receive; true only if each holds.
template <class B>
bool delta_valid(const PublicParams<B>& par, const SignerPublicKey<B>& pkS, const NomineePublicKey<B>& pkN,
                 ByteView m, const DeltaMsg<B>& delta)
{
    BitString ms = message_digest(pkN.to_bytes(), m);
    auto fs = waters_eval<typename B::G2>(pkS.u, ms).value;
    bool waters = waters_equation_holds(par, pkS, fs, delta);
    bool consistent = randomness_consistent(par, delta);
    return waters && consistent;
}

template <class B>
std::optional<NomSignature<B>> receive_with(const PublicParams<B>& par, const SignerPublicKey<B>& pkS, ByteView m,
                                            const DeltaMsg<B>& delta, const NomineeKeys<B>& nominee,
                                            const ReceiveRandomness& rr)
{
    BitString ms = message_digest(nominee.pk.to_bytes(), m);
    auto fs = waters_eval<typename B::G2>(pkS.u, ms).value;
    bool waters = waters_equation_holds(par, pkS, fs, delta);
    bool consistent = randomness_consistent(par, delta);
    if (!(waters && consistent)) return std::nullopt;

    const auto& sk = nominee.sk;
    auto d1p = delta.d1 * par.g1.pow(rr.r_prime);
    auto d2p = delta.d2 * par.g2.pow(rr.r_prime);
    auto d3p = delta.d3 * fs.pow(rr.r_prime);
    auto g1r = par.g1.pow(rr.r);

    NomSignature<B> sigma;
    sigma.s1 = (d1p / g1r).pow(sk.y1.inverse());
    sigma.s2 = g1r.pow(sk.y2.inverse());
    sigma.s = rr.s;
    Scalar t = signature_scalar_t(pkS, sigma.s1, sigma.s2, m);
    auto mn = par.g2.pow(t) * nominee.pk.k.pow(rr.s);
    BitString mn_bits = hash_h1(mn.to_bytes());
    sigma.s3 = d3p * nominee.pk.hN.pow(sk.alphaN) * d2p.pow(waters_exponent(sk.vPrime, mn_bits));
    return sigma;
}

template <class B>
std::optional<NomSignature<B>> receive(const PublicParams<B>& par, const SignerPublicKey<B>& pkS, ByteView m,
                                       const DeltaMsg<B>& delta, const NomineeKeys<B>& nominee, Rng& rng)
{
    return receive_with(par, pkS, m, delta, nominee, draw_receive_randomness(rng));
}

// ---------------------------------------------------------------------------
// Convert

// e(g1, s3) == e(gS, hS) e(gN, hN) e(a, F_S(M_S) F_N(M_N)), with a = tk1 tk2.
template <class B>
bool signature_equation_holds(const PublicParams<B>& par, const SignerPublicKey<B>& pkS,
                              const NomineePublicKey<B>& pkN, const NomSignature<B>& sigma,
                              const typename B::G1& a, const typename B::G2& combined_hash)
{
    return product_is_one<B>(
        {{par.g1.inverse(), sigma.s3}, {pkS.gS, pkS.hS}, {pkN.gN, pkN.hN}, {a, combined_hash}});
}

template <class B>
std::optional<VerificationToken<B>> convert(const PublicParams<B>& par, const SignerPublicKey<B>& pkS, ByteView m,
                                            const NomSignature<B>& sigma, const NomineeKeys<B>& nominee)
{
    auto d = derive_values(pkS, nominee.pk, m, sigma);
    VerificationToken<B> tk{sigma.s1.pow(nominee.sk.y1), sigma.s2.pow(nominee.sk.y2)};
    if (!signature_equation_holds(par, pkS, nominee.pk, sigma, tk.tk1 * tk.tk2, d.combined_hash))
        return std::nullopt;
    return tk;
}

// ---------------------------------------------------------------------------
// TkVerify

struct TkVerifyResult {
    bool accept = false;
    gas::OpCounts counts;
};

inline constexpr uint64_t kTkVerifyPairings = 8;

// Evaluates all three equations unconditionally so the operation count is
// the one a contract would pay for.
template <class B>
TkVerifyResult tk_verify(const PublicParams<B>& par, const SignerPublicKey<B>& pkS, const NomineePublicKey<B>& pkN,
                         ByteView m, const NomSignature<B>& sigma, const VerificationToken<B>& tk)
{
    auto d = derive_values(pkS, pkN, m, sigma);
    bool eq1 = product_is_one<B>({{sigma.s1, par.g2}, {tk.tk1.inverse(), pkN.x1}});
    bool eq2 = product_is_one<B>({{sigma.s2, par.g2}, {tk.tk2.inverse(), pkN.x2}});
    bool eq3 = signature_equation_holds(par, pkS, pkN, sigma, tk.tk1 * tk.tk2, d.combined_hash);

    TkVerifyResult res;
    res.accept = eq1 && eq2 && eq3;
    res.counts.pairing_pairs = kTkVerifyPairings;
    // F_S and F_N evaluations, F_S * F_N, and tk1 * tk2.
    res.counts.ec_additions = d.waters_multiplications + 1;
    // g2^t and k^s, then their product.
    res.counts.unpriced_scalar_muls = 2;
    res.counts.unpriced_additions = 1;
    return res;
}

}  // namespace nomsig

#endif  // NOMSIG_SCHEME_HPP_
