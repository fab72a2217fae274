#ifndef NOMSIG_ALGEBRA_BN254_HPP_
#define NOMSIG_ALGEBRA_BN254_HPP_

// Barreto-Naehrig curve with 254-bit prime (the curve behind the Ethereum
// bn128 precompiles): base field tower, G1, G2 on the sextic D-type twist,
// and the optimal ate pairing.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nomsig/algebra/curve.hpp"
#include "nomsig/algebra/field.hpp"
#include "nomsig/algebra/u256.hpp"

namespace nomsig::algebra::bn254 {

struct FqParams {
    static constexpr U256 modulus =
        U256::from_dec("21888242871839275222246405745257275088696311157297823662689037894645226208583");
};
struct FrParams {
    static constexpr U256 modulus =
        U256::from_dec("21888242871839275222246405745257275088548364400416034343698204186575808495617");
};

using Fq = Fp<FqParams>;
using Fr = Fp<FrParams>;

// Curve parameter u; the ate loop runs over 6u + 2.
inline constexpr uint64_t kCurveU = 4965661367192848881ULL;
inline constexpr U256 kAteLoopCount = U256::from_dec("29793968203157093288");
inline constexpr U256 kG2Cofactor =
    U256::from_dec("21888242871839275222246405745257275088844257914179612981679871602714643921549");

// Fq2 = Fq[i] / (i^2 + 1)
struct Fq2 {
    Fq c0, c1;

    static Fq2 zero() { return {}; }
    static Fq2 one() { return {Fq::one(), Fq::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
    bool operator==(const Fq2&) const = default;

    Fq2 operator+(const Fq2& o) const { return {c0 + o.c0, c1 + o.c1}; }
    Fq2 operator-(const Fq2& o) const { return {c0 - o.c0, c1 - o.c1}; }
    Fq2 operator-() const { return {-c0, -c1}; }
    Fq2 operator*(const Fq2& o) const
    {
        Fq v0 = c0 * o.c0;
        Fq v1 = c1 * o.c1;
        return {v0 - v1, (c0 + c1) * (o.c0 + o.c1) - v0 - v1};
    }
    Fq2 operator*(const Fq& s) const { return {c0 * s, c1 * s}; }
    Fq2& operator+=(const Fq2& o) { return *this = *this + o; }
    Fq2& operator-=(const Fq2& o) { return *this = *this - o; }
    Fq2& operator*=(const Fq2& o) { return *this = *this * o; }

    Fq2 square() const
    {
        Fq a = c0 * c1;
        return {(c0 + c1) * (c0 - c1), a.dbl()};
    }
    Fq2 dbl() const { return {c0.dbl(), c1.dbl()}; }
    Fq2 conj() const { return {c0, -c1}; }

    Fq2 inverse() const
    {
        Fq t = (c0.square() + c1.square()).inverse();
        return {c0 * t, -(c1 * t)};
    }

    // Multiplication by xi = 9 + i.
    Fq2 mul_by_xi() const
    {
        Fq nine_c0 = c0.dbl().dbl().dbl() + c0;
        Fq nine_c1 = c1.dbl().dbl().dbl() + c1;
        return {nine_c0 - c1, nine_c1 + c0};
    }

    Fq2 pow(const U256& e) const
    {
        Fq2 r = one();
        for (std::size_t i = e.bit_length(); i-- > 0;) {
            r = r.square();
            if (e.bit(i)) r *= *this;
        }
        return r;
    }

    std::optional<Fq2> sqrt() const
    {
        if (is_zero()) return zero();
        static const U256 e1 = (FqParams::modulus - U256(3)).shr(2);
        static const U256 e2 = (FqParams::modulus - U256(1)).shr(1);
        const Fq2 minus_one{-Fq::one(), Fq::zero()};
        Fq2 a1 = pow(e1);
        Fq2 alpha = a1.square() * *this;
        Fq2 a0 = alpha.conj() * alpha;
        if (a0 == minus_one) return std::nullopt;
        Fq2 x0 = a1 * *this;
        Fq2 x;
        if (alpha == minus_one) {
            x = {-x0.c1, x0.c0};
        } else {
            x = (one() + alpha).pow(e2) * x0;
        }
        if (x.square() != *this) return std::nullopt;
        return x;
    }

    bool is_lexicographically_largest() const
    {
        if (!c1.is_zero()) return c1.is_lexicographically_largest();
        return c0.is_lexicographically_largest();
    }
};

inline Fq2 xi() { return {Fq::from_u64(9), Fq::one()}; }

// Fq6 = Fq2[v] / (v^3 - xi)
struct Fq6 {
    Fq2 c0, c1, c2;

    static Fq6 zero() { return {}; }
    static Fq6 one() { return {Fq2::one(), Fq2::zero(), Fq2::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
    bool operator==(const Fq6&) const = default;

    Fq6 operator+(const Fq6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
    Fq6 operator-(const Fq6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
    Fq6 operator-() const { return {-c0, -c1, -c2}; }

    Fq6 operator*(const Fq6& o) const
    {
        Fq2 t0 = c0 * o.c0;
        Fq2 t1 = c1 * o.c1;
        Fq2 t2 = c2 * o.c2;
        return {
            ((c1 + c2) * (o.c1 + o.c2) - t1 - t2).mul_by_xi() + t0,
            (c0 + c1) * (o.c0 + o.c1) - t0 - t1 + t2.mul_by_xi(),
            (c0 + c2) * (o.c0 + o.c2) - t0 - t2 + t1,
        };
    }

    // Multiplication by (b0 + b1 v).
    Fq6 mul_by_01(const Fq2& b0, const Fq2& b1) const
    {
        Fq2 t0 = c0 * b0;
        Fq2 t1 = c1 * b1;
        return {
            ((c1 + c2) * b1 - t1).mul_by_xi() + t0,
            (c0 + c1) * (b0 + b1) - t0 - t1,
            (c0 + c2) * b0 - t0 + t1,
        };
    }

    Fq6 mul_by_fq2(const Fq2& s) const { return {c0 * s, c1 * s, c2 * s}; }

    Fq6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }

    Fq6 square() const { return *this * *this; }

    Fq6 inverse() const
    {
        Fq2 a = c0.square() - (c1 * c2).mul_by_xi();
        Fq2 b = c2.square().mul_by_xi() - c0 * c1;
        Fq2 c = c1.square() - c0 * c2;
        Fq2 f = c0 * a + (c2 * b + c1 * c).mul_by_xi();
        Fq2 fi = f.inverse();
        return {a * fi, b * fi, c * fi};
    }
};

namespace detail {

// Powers of xi^{(p-1)/6}: gamma[k] = xi^{k(p-1)/6}, k = 0..5.
inline const std::array<Fq2, 6>& frobenius_gamma()
{
    static const std::array<Fq2, 6> table = [] {
        std::array<Fq2, 6> g;
        g[0] = Fq2::one();
        g[1] = xi().pow((FqParams::modulus - U256(1)).div_small(6));
        for (std::size_t k = 2; k < 6; ++k) g[k] = g[k - 1] * g[1];
        return g;
    }();
    return table;
}

}  // namespace detail

// Fq12 = Fq6[w] / (w^2 - v); coefficient layout by power of w:
// c0 = (w^0, w^2, w^4), c1 = (w^1, w^3, w^5).
struct Fq12 {
    Fq6 c0, c1;

    static Fq12 zero() { return {}; }
    static Fq12 one() { return {Fq6::one(), Fq6::zero()}; }

    bool is_one() const { return *this == one(); }
    bool operator==(const Fq12&) const = default;

    Fq12 operator*(const Fq12& o) const
    {
        Fq6 t0 = c0 * o.c0;
        Fq6 t1 = c1 * o.c1;
        return {t0 + t1.mul_by_v(), (c0 + c1) * (o.c0 + o.c1) - t0 - t1};
    }
    Fq12& operator*=(const Fq12& o) { return *this = *this * o; }

    Fq12 square() const
    {
        Fq6 ab = c0 * c1;
        Fq6 s = (c0 + c1) * (c0 + c1.mul_by_v());
        return {s - ab - ab.mul_by_v(), ab + ab};
    }

    // Multiplication by a line a + b w + c w^3 with a in Fq.
    Fq12 mul_by_line(const Fq& a, const Fq2& b, const Fq2& c) const
    {
        Fq2 a2{a, Fq::zero()};
        Fq6 t0 = c0.mul_by_fq2(a2);
        Fq6 t1 = c1.mul_by_01(b, c);
        Fq6 mixed = (c0 + c1).mul_by_01(a2 + b, c);
        return {t0 + t1.mul_by_v(), mixed - t0 - t1};
    }

    Fq12 conj() const { return {c0, -c1}; }

    Fq12 inverse() const
    {
        Fq6 t = (c0.square() - c1.square().mul_by_v()).inverse();
        return {c0 * t, -(c1 * t)};
    }

    Fq12 frobenius() const
    {
        const auto& g = detail::frobenius_gamma();
        return {
            {c0.c0.conj(), c0.c1.conj() * g[2], c0.c2.conj() * g[4]},
            {c1.c0.conj() * g[1], c1.c1.conj() * g[3], c1.c2.conj() * g[5]},
        };
    }

    Fq12 pow(const U256& e) const
    {
        Fq12 r = one();
        for (std::size_t i = e.bit_length(); i-- > 0;) {
            r = r.square();
            if (e.bit(i)) r *= *this;
        }
        return r;
    }

    // Coefficients in serialization order.
    std::array<Fq, 12> coefficients() const
    {
        return {c0.c0.c0, c0.c0.c1, c0.c1.c0, c0.c1.c1, c0.c2.c0, c0.c2.c1,
                c1.c0.c0, c1.c0.c1, c1.c1.c0, c1.c1.c1, c1.c2.c0, c1.c2.c1};
    }

    static Fq12 from_coefficients(const std::array<Fq, 12>& c)
    {
        return {{{c[0], c[1]}, {c[2], c[3]}, {c[4], c[5]}}, {{c[6], c[7]}, {c[8], c[9]}, {c[10], c[11]}}};
    }
};

struct G1Curve {
    using Field = Fq;
    static Fq b() { return Fq::from_u64(3); }
};

struct G2Curve {
    using Field = Fq2;
    static Fq2 b()
    {
        static const Fq2 twist_b = Fq2{Fq::from_u64(3), Fq::zero()} * xi().inverse();
        return twist_b;
    }
};

using G1Point = JacobianPoint<G1Curve>;
using G2Point = JacobianPoint<G2Curve>;

inline const G1Point& g1_generator()
{
    static const G1Point g{Fq::from_u64(1), Fq::from_u64(2)};
    return g;
}

inline const G2Point& g2_generator()
{
    static const G2Point g{
        Fq2{Fq::from_canonical(U256::from_dec(
                "10857046999023057135944570762232829481370756359578518086990519993285655852781")),
            Fq::from_canonical(U256::from_dec(
                "11559732032986387107991004021392285783925812861821192530917403151452391805634"))},
        Fq2{Fq::from_canonical(U256::from_dec(
                "8495653923123431417604973247489272438418190587263600148770280649306958101930")),
            Fq::from_canonical(U256::from_dec(
                "4082367875863433681332203403145435568316851327593401208105741076214120093531"))},
    };
    return g;
}

inline const FixedBaseTable<G1Point>& g1_table()
{
    static const FixedBaseTable<G1Point> t{g1_generator()};
    return t;
}

inline const FixedBaseTable<G2Point>& g2_table()
{
    static const FixedBaseTable<G2Point> t{g2_generator()};
    return t;
}

inline bool g2_in_subgroup(const G2Point& q) { return q.mul(FrParams::modulus).is_identity(); }

// --- pairing -------------------------------------------------------------

namespace detail {

struct AffineG2 {
    Fq2 x, y;
};

// Untwisted Frobenius on the twist: (x, y) -> (conj(x) g2, conj(y) g3).
inline AffineG2 twist_frobenius(const AffineG2& q)
{
    const auto& g = frobenius_gamma();
    return {q.x.conj() * g[2], q.y.conj() * g[3]};
}

struct LineCoeffs {
    Fq2 b;  // coefficient of w (before scaling by x_P): -lambda
    Fq2 c;  // coefficient of w^3: lambda x_T - y_T
};

// Line through T with slope lambda, evaluated at P = (xp, yp) gives
// yp - lambda xp w + (lambda xT - yT) w^3.
inline void apply_line(Fq12& f, const Fq2& lambda, const AffineG2& t, const Fq& xp, const Fq& yp)
{
    Fq2 b = -(lambda * xp);
    Fq2 c = lambda * t.x - t.y;
    f = f.mul_by_line(yp, b, c);
}

inline Fq2 double_step(AffineG2& t)
{
    Fq2 xx = t.x.square();
    Fq2 lambda = (xx.dbl() + xx) * t.y.dbl().inverse();
    Fq2 x3 = lambda.square() - t.x.dbl();
    Fq2 y3 = lambda * (t.x - x3) - t.y;
    t = {x3, y3};
    return lambda;
}

inline Fq2 add_slope(const AffineG2& t, const AffineG2& q) { return (q.y - t.y) * (q.x - t.x).inverse(); }

inline void add_step(AffineG2& t, const AffineG2& q, const Fq2& lambda)
{
    Fq2 x3 = lambda.square() - t.x - q.x;
    Fq2 y3 = lambda * (t.x - x3) - t.y;
    t = {x3, y3};
}

}  // namespace detail

struct PairingInput {
    G1Point p;
    G2Point q;
};

// Product of Miller loops, sharing the squarings. Pairs with an identity
// component contribute 1.
inline Fq12 miller_loop(std::span<const PairingInput> pairs)
{
    struct State {
        Fq xp, yp;
        detail::AffineG2 q, t;
    };
    std::vector<State> st;
    st.reserve(pairs.size());
    for (const auto& in : pairs) {
        if (in.p.is_identity() || in.q.is_identity()) continue;
        auto pa = in.p.to_affine();
        auto qa = in.q.to_affine();
        detail::AffineG2 q{qa.x, qa.y};
        st.push_back({pa.x, pa.y, q, q});
    }
    Fq12 f = Fq12::one();
    if (st.empty()) return f;

    for (std::size_t i = kAteLoopCount.bit_length() - 1; i-- > 0;) {
        f = f.square();
        for (auto& s : st) {
            detail::AffineG2 before = s.t;
            Fq2 lambda = detail::double_step(s.t);
            detail::apply_line(f, lambda, before, s.xp, s.yp);
        }
        if (kAteLoopCount.bit(i)) {
            for (auto& s : st) {
                Fq2 lambda = detail::add_slope(s.t, s.q);
                detail::apply_line(f, lambda, s.t, s.xp, s.yp);
                detail::add_step(s.t, s.q, lambda);
            }
        }
    }
    for (auto& s : st) {
        detail::AffineG2 q1 = detail::twist_frobenius(s.q);
        detail::AffineG2 q2 = detail::twist_frobenius(q1);
        q2.y = -q2.y;
        Fq2 lambda = detail::add_slope(s.t, q1);
        detail::apply_line(f, lambda, s.t, s.xp, s.yp);
        detail::add_step(s.t, q1, lambda);
        lambda = detail::add_slope(s.t, q2);
        detail::apply_line(f, lambda, s.t, s.xp, s.yp);
    }
    return f;
}

namespace detail {

inline Fq12 pow_u(const Fq12& a)
{
    Fq12 r = Fq12::one();
    for (int i = 63; i >= 0; --i) {
        r = r.square();
        if ((kCurveU >> i) & 1u) r *= a;
    }
    return r;
}

}  // namespace detail

// Raises to (p^12 - 1) / r.
inline Fq12 final_exponentiation(const Fq12& in)
{
    // Easy part: (p^6 - 1)(p^2 + 1).
    Fq12 t1 = in.conj() * in.inverse();
    t1 = t1.frobenius().frobenius() * t1;

    // Hard part: (p^4 - p^2 + 1) / r via the u-adic decomposition.
    Fq12 fp = t1.frobenius();
    Fq12 fp2 = fp.frobenius();
    Fq12 fp3 = fp2.frobenius();

    Fq12 fu = detail::pow_u(t1);
    Fq12 fu2 = detail::pow_u(fu);
    Fq12 fu3 = detail::pow_u(fu2);

    Fq12 y3 = fu.frobenius().conj();
    Fq12 fu2p = fu2.frobenius();
    Fq12 fu3p = fu3.frobenius();
    Fq12 y2 = fu2.frobenius().frobenius();

    Fq12 y0 = fp * fp2 * fp3;
    Fq12 y1 = t1.conj();
    Fq12 y5 = fu2.conj();
    Fq12 y4 = (fu * fu2p).conj();
    Fq12 y6 = (fu3 * fu3p).conj();

    Fq12 t0 = y6.square() * y4 * y5;
    Fq12 acc = y3 * y5 * t0;
    t0 = t0 * y2;
    acc = (acc.square() * t0).square();
    t0 = acc * y1;
    acc = acc * y0;
    return t0.square() * acc;
}

inline Fq12 pairing(const G1Point& p, const G2Point& q)
{
    PairingInput in{p, q};
    return final_exponentiation(miller_loop(std::span<const PairingInput>(&in, 1)));
}

inline Fq12 pairing_product(std::span<const PairingInput> pairs)
{
    return final_exponentiation(miller_loop(pairs));
}

// --- encoding ------------------------------------------------------------
//
// G1: 32 bytes, big-endian x. G2: 64 bytes, x.c1 || x.c0. In the first byte,
// 0x80 flags the point at infinity (all other bits zero) and 0x40 flags the
// lexicographically larger y.

enum class DecodeError { kMalformedEncoding, kNotOnCurve, kNotInSubgroup };

inline constexpr uint8_t kInfinityFlag = 0x80;
inline constexpr uint8_t kSignFlag = 0x40;

inline std::array<uint8_t, 32> encode_g1(const G1Point& p)
{
    std::array<uint8_t, 32> out{};
    if (p.is_identity()) {
        out[0] = kInfinityFlag;
        return out;
    }
    auto a = p.to_affine();
    out = a.x.to_be_bytes();
    if (a.y.is_lexicographically_largest()) out[0] |= kSignFlag;
    return out;
}

namespace detail {

inline bool infinity_encoding_ok(std::span<const uint8_t> in)
{
    if (in[0] != kInfinityFlag) return false;
    for (std::size_t i = 1; i < in.size(); ++i) {
        if (in[i] != 0) return false;
    }
    return true;
}

inline std::optional<Fq> read_fq(std::span<const uint8_t, 32> bytes, bool strip_flags)
{
    std::array<uint8_t, 32> b{};
    std::copy(bytes.begin(), bytes.end(), b.begin());
    if (strip_flags) b[0] &= 0x3F;
    return Fq::from_canonical_checked(U256::from_be_bytes(b));
}

}  // namespace detail

inline std::pair<std::optional<G1Point>, DecodeError> decode_g1(std::span<const uint8_t> in)
{
    if (in.size() != 32) return {std::nullopt, DecodeError::kMalformedEncoding};
    if ((in[0] & kInfinityFlag) != 0) {
        if (!detail::infinity_encoding_ok(in)) return {std::nullopt, DecodeError::kMalformedEncoding};
        return {G1Point::identity(), DecodeError::kMalformedEncoding};
    }
    auto x = detail::read_fq(in.first<32>(), true);
    if (!x) return {std::nullopt, DecodeError::kMalformedEncoding};
    auto y = (x->square() * *x + G1Curve::b()).sqrt();
    if (!y) return {std::nullopt, DecodeError::kNotOnCurve};
    bool want_large = (in[0] & kSignFlag) != 0;
    if (y->is_lexicographically_largest() != want_large) *y = -*y;
    // y = 0 has no sign choice; reject the flagged variant as non-canonical.
    if (y->is_zero() && want_large) return {std::nullopt, DecodeError::kMalformedEncoding};
    // Cofactor 1: every curve point lies in the prime-order group.
    return {G1Point{*x, *y}, DecodeError::kMalformedEncoding};
}

inline std::array<uint8_t, 64> encode_g2(const G2Point& p)
{
    std::array<uint8_t, 64> out{};
    if (p.is_identity()) {
        out[0] = kInfinityFlag;
        return out;
    }
    auto a = p.to_affine();
    auto hi = a.x.c1.to_be_bytes();
    auto lo = a.x.c0.to_be_bytes();
    std::copy(hi.begin(), hi.end(), out.begin());
    std::copy(lo.begin(), lo.end(), out.begin() + 32);
    if (a.y.is_lexicographically_largest()) out[0] |= kSignFlag;
    return out;
}

inline std::pair<std::optional<G2Point>, DecodeError> decode_g2(std::span<const uint8_t> in)
{
    if (in.size() != 64) return {std::nullopt, DecodeError::kMalformedEncoding};
    if ((in[0] & kInfinityFlag) != 0) {
        if (!detail::infinity_encoding_ok(in)) return {std::nullopt, DecodeError::kMalformedEncoding};
        return {G2Point::identity(), DecodeError::kMalformedEncoding};
    }
    auto c1 = detail::read_fq(in.first<32>(), true);
    auto c0 = detail::read_fq(in.subspan<32, 32>(), false);
    if (!c0 || !c1) return {std::nullopt, DecodeError::kMalformedEncoding};
    Fq2 x{*c0, *c1};
    auto y = (x.square() * x + G2Curve::b()).sqrt();
    if (!y) return {std::nullopt, DecodeError::kNotOnCurve};
    bool want_large = (in[0] & kSignFlag) != 0;
    if (y->is_lexicographically_largest() != want_large) *y = -*y;
    if (y->is_zero() && want_large) return {std::nullopt, DecodeError::kMalformedEncoding};
    G2Point q{x, *y};
    if (!g2_in_subgroup(q)) return {std::nullopt, DecodeError::kNotInSubgroup};
    return {q, DecodeError::kMalformedEncoding};
}

inline std::array<uint8_t, 384> encode_gt(const Fq12& v)
{
    std::array<uint8_t, 384> out{};
    auto coeffs = v.coefficients();
    for (std::size_t i = 0; i < 12; ++i) {
        auto b = coeffs[i].to_be_bytes();
        std::copy(b.begin(), b.end(), out.begin() + 32 * i);
    }
    return out;
}

inline std::pair<std::optional<Fq12>, DecodeError> decode_gt(std::span<const uint8_t> in)
{
    if (in.size() != 384) return {std::nullopt, DecodeError::kMalformedEncoding};
    std::array<Fq, 12> coeffs;
    for (std::size_t i = 0; i < 12; ++i) {
        auto c = Fq::from_canonical_checked(U256::from_be_bytes(in.subspan(32 * i, 32)));
        if (!c) return {std::nullopt, DecodeError::kMalformedEncoding};
        coeffs[i] = *c;
    }
    Fq12 v = Fq12::from_coefficients(coeffs);
    if (!v.pow(FrParams::modulus).is_one()) return {std::nullopt, DecodeError::kNotInSubgroup};
    return {v, DecodeError::kMalformedEncoding};
}

// Try-and-increment map to G2: candidate x from the seed and a counter,
// then cofactor clearing. Nobody learns a discrete log of the output.
template <class Expand>
G2Point map_to_g2(Expand&& expand_to_fq_pair)
{
    for (uint32_t ctr = 0;; ++ctr) {
        auto [c0, c1] = expand_to_fq_pair(ctr);
        Fq2 x{c0, c1};
        auto y = (x.square() * x + G2Curve::b()).sqrt();
        if (!y) continue;
        G2Point q = G2Point{x, *y}.mul(kG2Cofactor);
        if (!q.is_identity()) return q;
    }
}

}  // namespace nomsig::algebra::bn254

#endif  // NOMSIG_ALGEBRA_BN254_HPP_
