#ifndef NOMSIG_ALGEBRA_BACKEND_HPP_
#define NOMSIG_ALGEBRA_BACKEND_HPP_

// Two interchangeable pairing backends with one element interface:
//
//   RealBackend  - BN254 with the optimal ate pairing.
//   MockBackend  - every element is its discrete log w.r.t. the fixed
//                  generator; the group law adds exponents and the pairing
//                  multiplies them. Used as a brute-force oracle.
//
// Group elements are written multiplicatively: `a * b`, `a.pow(k)`,
// `a.inverse()`.

#include <array>
#include <concepts>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "nomsig/algebra/bn254.hpp"
#include "nomsig/algebra/hash.hpp"
#include "nomsig/algebra/rng.hpp"
#include "nomsig/bytes.hpp"
#include "nomsig/error.hpp"

namespace nomsig::algebra {

using Scalar = bn254::Fr;

inline Bytes scalar_to_bytes(const Scalar& s)
{
    auto b = s.to_be_bytes();
    return Bytes(b.begin(), b.end());
}

inline Scalar scalar_from_bytes(ByteView b)
{
    if (b.size() != 32) throw Error(ErrorCode::kMalformedEncoding, "scalar must be 32 bytes");
    auto s = Scalar::from_canonical_checked(U256::from_be_bytes(b));
    if (!s) throw Error(ErrorCode::kMalformedEncoding, "scalar not below the group order");
    return *s;
}

namespace detail {

[[noreturn]] inline void throw_decode(bn254::DecodeError e, std::string_view what)
{
    switch (e) {
    case bn254::DecodeError::kNotOnCurve: throw Error(ErrorCode::kNotOnCurve, std::string(what));
    case bn254::DecodeError::kNotInSubgroup: throw Error(ErrorCode::kNotInSubgroup, std::string(what));
    case bn254::DecodeError::kMalformedEncoding: break;
    }
    throw Error(ErrorCode::kMalformedEncoding, std::string(what));
}

}  // namespace detail

struct RealBackend {
    static constexpr std::string_view kName = "bn254";

    class G1 {
    public:
        static constexpr std::size_t kEncodedSize = 32;

        G1() = default;
        explicit G1(const bn254::G1Point& p) : p_(p) {}

        static G1 identity() { return G1{}; }
        static G1 generator() { return G1{bn254::g1_generator()}; }
        static G1 generator_pow(const Scalar& k) { return G1{bn254::g1_table().mul(k.to_canonical())}; }

        G1 operator*(const G1& o) const { return G1{p_ + o.p_}; }
        G1 operator/(const G1& o) const { return G1{p_ - o.p_}; }
        G1 pow(const Scalar& k) const { return G1{p_.mul(k.to_canonical())}; }
        G1 inverse() const { return G1{-p_}; }
        bool is_identity() const { return p_.is_identity(); }
        bool operator==(const G1& o) const { return p_ == o.p_; }

        Bytes to_bytes() const
        {
            auto b = bn254::encode_g1(p_);
            return Bytes(b.begin(), b.end());
        }
        static G1 from_bytes(ByteView b)
        {
            auto [pt, err] = bn254::decode_g1(b);
            if (!pt) detail::throw_decode(err, "G1 element");
            return G1{*pt};
        }

        const bn254::G1Point& point() const { return p_; }

    private:
        bn254::G1Point p_;
    };

    class G2 {
    public:
        static constexpr std::size_t kEncodedSize = 64;

        G2() = default;
        explicit G2(const bn254::G2Point& p) : p_(p) {}

        static G2 identity() { return G2{}; }
        static G2 generator() { return G2{bn254::g2_generator()}; }
        static G2 generator_pow(const Scalar& k) { return G2{bn254::g2_table().mul(k.to_canonical())}; }

        G2 operator*(const G2& o) const { return G2{p_ + o.p_}; }
        G2 operator/(const G2& o) const { return G2{p_ - o.p_}; }
        G2 pow(const Scalar& k) const { return G2{p_.mul(k.to_canonical())}; }
        G2 inverse() const { return G2{-p_}; }
        bool is_identity() const { return p_.is_identity(); }
        bool operator==(const G2& o) const { return p_ == o.p_; }

        Bytes to_bytes() const
        {
            auto b = bn254::encode_g2(p_);
            return Bytes(b.begin(), b.end());
        }
        static G2 from_bytes(ByteView b)
        {
            auto [pt, err] = bn254::decode_g2(b);
            if (!pt) detail::throw_decode(err, "G2 element");
            return G2{*pt};
        }

        const bn254::G2Point& point() const { return p_; }

        // Rescales to Z = 1 so later encodings and additions are cheaper.
        static void normalize(std::span<G2> elems)
        {
            std::vector<bn254::G2Point> pts;
            pts.reserve(elems.size());
            for (const auto& e : elems) pts.push_back(e.p_);
            bn254::G2Point::normalize_batch(pts);
            for (std::size_t i = 0; i < elems.size(); ++i) elems[i].p_ = pts[i];
        }

    private:
        bn254::G2Point p_;
    };

    class GT {
    public:
        static constexpr std::size_t kEncodedSize = 384;

        GT() : v_(bn254::Fq12::one()) {}
        explicit GT(const bn254::Fq12& v) : v_(v) {}

        static GT identity() { return GT{}; }

        GT operator*(const GT& o) const { return GT{v_ * o.v_}; }
        // Elements of GT lie in the cyclotomic subgroup, where the inverse
        // is the conjugate.
        GT inverse() const { return GT{v_.conj()}; }
        GT operator/(const GT& o) const { return *this * o.inverse(); }
        GT pow(const Scalar& k) const { return GT{v_.pow(k.to_canonical())}; }
        bool is_identity() const { return v_.is_one(); }
        bool operator==(const GT& o) const { return v_ == o.v_; }

        Bytes to_bytes() const
        {
            auto b = bn254::encode_gt(v_);
            return Bytes(b.begin(), b.end());
        }
        static GT from_bytes(ByteView b)
        {
            auto [v, err] = bn254::decode_gt(b);
            if (!v) detail::throw_decode(err, "GT element");
            return GT{*v};
        }

        const bn254::Fq12& value() const { return v_; }

    private:
        bn254::Fq12 v_;
    };

    static GT pairing(const G1& a, const G2& b) { return GT{bn254::pairing(a.point(), b.point())}; }

    static GT pairing_product(std::span<const std::pair<G1, G2>> pairs)
    {
        std::vector<bn254::PairingInput> in;
        in.reserve(pairs.size());
        for (const auto& [a, b] : pairs) in.push_back({a.point(), b.point()});
        return GT{bn254::pairing_product(in)};
    }

    // Deterministic map to G2 with no known discrete log.
    static G2 hash_to_g2(std::string_view tag, ByteView data)
    {
        return G2{bn254::map_to_g2([&](uint32_t ctr) {
            std::array<uint8_t, 4> c{static_cast<uint8_t>(ctr >> 24), static_cast<uint8_t>(ctr >> 16),
                                     static_cast<uint8_t>(ctr >> 8), static_cast<uint8_t>(ctr)};
            auto part = [&](uint8_t which) {
                Digest d(EVP_sha512());
                d.update_prefixed(as_bytes(tag)).update_prefixed(data).update_prefixed(c);
                d.update_prefixed(ByteView(&which, 1));
                Bytes h = d.finish();
                return bn254::Fq::reduce_be_bytes(h);
            };
            return std::pair{part(0), part(1)};
        })};
    }
};

struct MockBackend {
    static constexpr std::string_view kName = "mock";

    template <int kGroup>
    class Elem {
    public:
        static constexpr std::size_t kEncodedSize = 32;

        Elem() = default;
        explicit Elem(const Scalar& exponent) : e_(exponent) {}

        static Elem identity() { return Elem{}; }
        static Elem generator() { return Elem{Scalar::one()}; }
        static Elem generator_pow(const Scalar& k) { return Elem{k}; }

        Elem operator*(const Elem& o) const { return Elem{e_ + o.e_}; }
        Elem operator/(const Elem& o) const { return Elem{e_ - o.e_}; }
        Elem pow(const Scalar& k) const { return Elem{e_ * k}; }
        Elem inverse() const { return Elem{-e_}; }
        bool is_identity() const { return e_.is_zero(); }
        bool operator==(const Elem& o) const { return e_ == o.e_; }

        Bytes to_bytes() const { return scalar_to_bytes(e_); }
        static Elem from_bytes(ByteView b) { return Elem{scalar_from_bytes(b)}; }

        // Discrete log with respect to the generator.
        const Scalar& exponent() const { return e_; }

        static void normalize(std::span<Elem>) {}

    private:
        Scalar e_;
    };

    using G1 = Elem<1>;
    using G2 = Elem<2>;
    using GT = Elem<3>;

    static GT pairing(const G1& a, const G2& b) { return GT{a.exponent() * b.exponent()}; }

    static GT pairing_product(std::span<const std::pair<G1, G2>> pairs)
    {
        Scalar acc;
        for (const auto& [a, b] : pairs) acc += a.exponent() * b.exponent();
        return GT{acc};
    }

    static G2 hash_to_g2(std::string_view tag, ByteView data)
    {
        Digest d(EVP_sha512());
        d.update_prefixed(as_bytes(tag)).update_prefixed(data);
        Bytes h = d.finish();
        return G2{Scalar::reduce_be_bytes(h)};
    }
};

template <class B>
concept PairingBackend = requires(const typename B::G1& a, const typename B::G2& b, const Scalar& k) {
    { B::kName } -> std::convertible_to<std::string_view>;
    { B::pairing(a, b) } -> std::same_as<typename B::GT>;
    { a.pow(k) } -> std::same_as<typename B::G1>;
    { b.pow(k) } -> std::same_as<typename B::G2>;
    { a.to_bytes() } -> std::same_as<Bytes>;
    { B::G1::generator_pow(k) } -> std::same_as<typename B::G1>;
    { B::G2::generator_pow(k) } -> std::same_as<typename B::G2>;
    { B::hash_to_g2(std::string_view{}, ByteView{}) } -> std::same_as<typename B::G2>;
};

static_assert(PairingBackend<RealBackend>);
static_assert(PairingBackend<MockBackend>);

}  // namespace nomsig::algebra

#endif  // NOMSIG_ALGEBRA_BACKEND_HPP_
