#include <gtest/gtest.h>

#include <set>

#include "nomsig/algebra/backend.hpp"
#include "nomsig/algebra/bn254.hpp"
#include "nomsig/algebra/hash.hpp"
#include "nomsig/algebra/rng.hpp"
#include "vectors.hpp"

using namespace nomsig;
using namespace nomsig::algebra;

namespace {

using Fq = bn254::Fq;
using Fr = bn254::Fr;


TEST(Field, MontgomeryRoundTrip)
{
    U256 v = U256::from_dec("1234567890123456789012345678901234567890");
    EXPECT_EQ(Fq::from_canonical(v).to_canonical(), v);
    EXPECT_EQ(Fq::one().to_canonical(), U256(1));
    EXPECT_TRUE(Fq::zero().is_zero());
}

TEST(Field, InverseMatchesFermat)
{
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        std::array<uint8_t, 64> w;
        rng.fill(w);
        Fq a = Fq::reduce_be_bytes(w);
        if (a.is_zero()) continue;
        EXPECT_EQ(a.inverse(), a.inverse_by_fermat());
        EXPECT_EQ(a * a.inverse(), Fq::one());
    }
    EXPECT_TRUE(Fq::zero().inverse().is_zero());
}

TEST(Field, SqrtOfSquares)
{
    Rng rng(12);
    for (int i = 0; i < 50; ++i) {
        std::array<uint8_t, 64> w;
        rng.fill(w);
        Fq a = Fq::reduce_be_bytes(w);
        auto r = a.square().sqrt();
        ASSERT_TRUE(r.has_value());
        EXPECT_EQ(r->square(), a.square());
    }
}

TEST(Field, WideReductionMatchesHorner)
{
    // 2^256 mod r computed by doubling, compared with reducing 1 || 0^32.
    Bytes b(33, 0);
    b[0] = 1;
    Fr two256 = Fr::one();
    for (int i = 0; i < 256; ++i) two256 = two256.dbl();
    EXPECT_EQ(Fr::reduce_be_bytes(b), two256);
}

TEST(Curve, FixedBaseMatchesVariableBase)
{
    Rng rng(13);
    for (int i = 0; i < 20; ++i) {
        Fr k = rng.scalar();
        EXPECT_EQ(bn254::g1_table().mul(k.to_canonical()), bn254::g1_generator().mul(k.to_canonical()));
        EXPECT_EQ(bn254::g2_table().mul(k.to_canonical()), bn254::g2_generator().mul(k.to_canonical()));
    }
}

TEST(Curve, GroupOrderAnnihilatesGenerators)
{
    EXPECT_TRUE(bn254::g1_generator().mul(Fr::modulus).is_identity());
    EXPECT_TRUE(bn254::g2_generator().mul(Fr::modulus).is_identity());
}

TEST(Curve, AdditionLaws)
{
    auto g = bn254::g2_generator();
    auto a = g.mul(U256(5));
    auto b = g.mul(U256(7));
    EXPECT_EQ(a + b, g.mul(U256(12)));
    EXPECT_EQ(a + a, a.dbl());
    EXPECT_TRUE((a - a).is_identity());
    EXPECT_EQ(a + bn254::G2Point::identity(), a);
}

TEST(Curve, BatchNormalizationPreservesPoints)
{
    std::vector<bn254::G2Point> pts;
    for (uint64_t i = 1; i <= 9; ++i) pts.push_back(bn254::g2_generator().mul(U256(i * 1000003)));
    pts.push_back(bn254::G2Point::identity());
    auto copy = pts;
    bn254::G2Point::normalize_batch(pts);
    for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(pts[i], copy[i]);
    EXPECT_EQ(pts[0].z(), bn254::Fq2::one());
}

TEST(Encoding, PinnedGroupEncodings)
{
    EXPECT_EQ(to_hex(bn254::encode_g1(bn254::g1_generator())), vectors::kG1Generator);
    EXPECT_EQ(to_hex(bn254::encode_g1(bn254::g1_generator().mul(U256(7)))), vectors::kG1Times7);
    EXPECT_EQ(to_hex(bn254::encode_g1(-bn254::g1_generator().mul(U256(7)))), vectors::kG1TimesMinus7);
    EXPECT_EQ(to_hex(bn254::encode_g2(bn254::g2_generator())), vectors::kG2Generator);
    EXPECT_EQ(to_hex(bn254::encode_g2(bn254::g2_generator().mul(U256(11)))), vectors::kG2Times11);
    EXPECT_EQ(to_hex(bn254::encode_g2(-bn254::g2_generator().mul(U256(11)))), vectors::kG2TimesMinus11);
}

TEST(Encoding, RandomRoundTrips)
{
    Rng rng(14);
    for (int i = 0; i < 1000; ++i) {
        auto a = RealBackend::G1::generator_pow(rng.scalar());
        ASSERT_EQ(RealBackend::G1::from_bytes(a.to_bytes()), a);
    }
    for (int i = 0; i < 1000; ++i) {
        auto b = RealBackend::G2::generator_pow(rng.scalar());
        ASSERT_EQ(RealBackend::G2::from_bytes(b.to_bytes()), b);
    }
    auto e = RealBackend::pairing(RealBackend::G1::generator(), RealBackend::G2::generator());
    for (int i = 0; i < 20; ++i) {
        auto v = e.pow(rng.scalar());
        ASSERT_EQ(RealBackend::GT::from_bytes(v.to_bytes()), v);
    }
}

TEST(Encoding, IdentityRoundTrips)
{
    EXPECT_TRUE(RealBackend::G1::from_bytes(RealBackend::G1::identity().to_bytes()).is_identity());
    EXPECT_TRUE(RealBackend::G2::from_bytes(RealBackend::G2::identity().to_bytes()).is_identity());
    EXPECT_TRUE(RealBackend::GT::from_bytes(RealBackend::GT::identity().to_bytes()).is_identity());
}

TEST(Encoding, EncodingIsCanonical)
{
    // Each element has exactly one accepted encoding: flipping the sign bit
    // gives the negated point, never an alias.
    auto a = RealBackend::G1::generator_pow(Fr::from_u64(99));
    Bytes b = a.to_bytes();
    b[0] ^= 0x40;
    EXPECT_EQ(RealBackend::G1::from_bytes(b), a.inverse());
}

void expect_error(ErrorCode code, const std::function<void()>& fn)
{
    try {
        fn();
        ADD_FAILURE() << "expected " << error_name(code);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

TEST(Encoding, RejectsAllOnes)
{
    expect_error(ErrorCode::kMalformedEncoding, [] { RealBackend::G1::from_bytes(Bytes(32, 0xFF)); });
    expect_error(ErrorCode::kMalformedEncoding, [] { RealBackend::G2::from_bytes(Bytes(64, 0xFF)); });
    expect_error(ErrorCode::kMalformedEncoding, [] { RealBackend::GT::from_bytes(Bytes(384, 0xFF)); });
}

TEST(Encoding, RejectsWrongLengthsAndDirtyInfinity)
{
    expect_error(ErrorCode::kMalformedEncoding, [] { RealBackend::G1::from_bytes(Bytes(31, 0)); });
    expect_error(ErrorCode::kMalformedEncoding, [] { RealBackend::G2::from_bytes(Bytes(65, 0)); });
    Bytes inf(32, 0);
    inf[0] = 0x80;
    inf[31] = 1;
    expect_error(ErrorCode::kMalformedEncoding, [&] { RealBackend::G1::from_bytes(inf); });
    Bytes scalar(32, 0xFF);
    expect_error(ErrorCode::kMalformedEncoding, [&] { scalar_from_bytes(scalar); });
}

TEST(Encoding, RejectsPointsOffTheCurve)
{
    // x = 0: y^2 = 3 has no root in Fq.
    Bytes b(32, 0);
    bool found = false;
    for (uint8_t x = 0; x < 50 && !found; ++x) {
        b[31] = x;
        auto xv = Fq::from_u64(x);
        if (!(xv.square() * xv + Fq::from_u64(3)).sqrt()) {
            found = true;
            expect_error(ErrorCode::kNotOnCurve, [&] { RealBackend::G1::from_bytes(b); });
        }
    }
    EXPECT_TRUE(found);
}

TEST(Encoding, RejectsTwistPointsOutsideTheSubgroup)
{
    // A point on the twist that is not in the order-r subgroup.
    bool found = false;
    for (uint64_t x = 1; x < 100 && !found; ++x) {
        bn254::Fq2 xv{Fq::from_u64(x), Fq::one()};
        auto y = (xv.square() * xv + bn254::G2Curve::b()).sqrt();
        if (!y) continue;
        bn254::G2Point q{xv, *y};
        if (bn254::g2_in_subgroup(q)) continue;
        found = true;
        auto enc = bn254::encode_g2(q);
        expect_error(ErrorCode::kNotInSubgroup, [&] { RealBackend::G2::from_bytes(enc); });
    }
    EXPECT_TRUE(found);
}

TEST(Encoding, RejectsGtElementsOutsideTheSubgroup)
{
    Bytes b(384, 0);
    b[31] = 2;  // the constant 2 in Fq12
    expect_error(ErrorCode::kNotInSubgroup, [&] { RealBackend::GT::from_bytes(b); });
}

TEST(Pairing, PinnedValues)
{
    auto e = RealBackend::pairing(RealBackend::G1::generator(), RealBackend::G2::generator());
    EXPECT_EQ(to_hex(e.to_bytes()), vectors::kPairingGenerators);
    auto e77 = RealBackend::pairing(RealBackend::G1::generator_pow(Fr::from_u64(7)),
                                    RealBackend::G2::generator_pow(Fr::from_u64(11)));
    EXPECT_EQ(to_hex(e77.to_bytes()), vectors::kPairing7x11);
}

TEST(Pairing, IdentityArguments)
{
    EXPECT_TRUE(RealBackend::pairing(RealBackend::G1::identity(), RealBackend::G2::generator()).is_identity());
    EXPECT_TRUE(RealBackend::pairing(RealBackend::G1::generator(), RealBackend::G2::identity()).is_identity());
}

TEST(Pairing, BilinearForSmallExponents)
{
    auto g = RealBackend::pairing(RealBackend::G1::generator(), RealBackend::G2::generator());
    auto e = RealBackend::pairing(RealBackend::G1::generator_pow(Fr::from_u64(3)),
                                  RealBackend::G2::generator_pow(Fr::from_u64(5)));
    EXPECT_EQ(e, g.pow(Fr::from_u64(15)));
}

TEST(Pairing, BilinearForRandomExponents)
{
    Rng rng(15);
    auto g = RealBackend::pairing(RealBackend::G1::generator(), RealBackend::G2::generator());
    for (int i = 0; i < 5; ++i) {
        Fr a = rng.scalar(), b = rng.scalar();
        auto e = RealBackend::pairing(RealBackend::G1::generator_pow(a), RealBackend::G2::generator_pow(b));
        EXPECT_EQ(e, g.pow(a * b));
    }
}

TEST(Pairing, NonDegenerateWithOrderR)
{
    auto g = RealBackend::pairing(RealBackend::G1::generator(), RealBackend::G2::generator());
    EXPECT_FALSE(g.is_identity());
    EXPECT_TRUE(RealBackend::GT{g.value().pow(Fr::modulus)}.is_identity());
}

TEST(Pairing, ProductMatchesIndividualPairings)
{
    Rng rng(16);
    std::vector<std::pair<RealBackend::G1, RealBackend::G2>> terms;
    RealBackend::GT expect;
    for (int i = 0; i < 4; ++i) {
        auto a = RealBackend::G1::generator_pow(rng.scalar());
        auto b = RealBackend::G2::generator_pow(rng.scalar());
        terms.emplace_back(a, b);
        expect = expect * RealBackend::pairing(a, b);
    }
    EXPECT_EQ(RealBackend::pairing_product(terms), expect);
}

TEST(Mock, PairingMultipliesExponents)
{
    auto e = MockBackend::pairing(MockBackend::G1::generator_pow(Fr::from_u64(7)),
                                  MockBackend::G2::generator_pow(Fr::from_u64(11)));
    EXPECT_EQ(e.exponent(), Fr::from_u64(77));
    EXPECT_TRUE(MockBackend::pairing(MockBackend::G1::identity(), MockBackend::G2::generator()).is_identity());
}

TEST(Mock, GroupLawAddsExponents)
{
    auto a = MockBackend::G2::generator_pow(Fr::from_u64(5));
    auto b = MockBackend::G2::generator_pow(Fr::from_u64(9));
    EXPECT_EQ((a * b).exponent(), Fr::from_u64(14));
    EXPECT_EQ((a / b).exponent(), -Fr::from_u64(4));
    EXPECT_EQ(a.pow(Fr::from_u64(3)).exponent(), Fr::from_u64(15));
    EXPECT_EQ(MockBackend::G1::from_bytes(a.to_bytes()).exponent(), a.exponent());
}

TEST(Mock, AgreesWithRealOnRandomTraces)
{
    Rng rng(17);
    for (int i = 0; i < 5; ++i) {
        Fr a = rng.scalar(), b = rng.scalar(), c = rng.scalar(), d = rng.scalar();
        bool real = RealBackend::pairing(RealBackend::G1::generator_pow(a), RealBackend::G2::generator_pow(b)) ==
                    RealBackend::pairing(RealBackend::G1::generator_pow(c), RealBackend::G2::generator_pow(d));
        bool mock = MockBackend::pairing(MockBackend::G1::generator_pow(a), MockBackend::G2::generator_pow(b)) ==
                    MockBackend::pairing(MockBackend::G1::generator_pow(c), MockBackend::G2::generator_pow(d));
        EXPECT_EQ(real, mock);
        // Same check with equal products on purpose.
        Fr e = a * b * c.inverse();
        bool real_eq = RealBackend::pairing(RealBackend::G1::generator_pow(a), RealBackend::G2::generator_pow(b)) ==
                       RealBackend::pairing(RealBackend::G1::generator_pow(c), RealBackend::G2::generator_pow(e));
        bool mock_eq = MockBackend::pairing(MockBackend::G1::generator_pow(a), MockBackend::G2::generator_pow(b)) ==
                       MockBackend::pairing(MockBackend::G1::generator_pow(c), MockBackend::G2::generator_pow(e));
        EXPECT_TRUE(real_eq);
        EXPECT_TRUE(mock_eq);
    }
}

TEST(Hash, PinnedH1)
{
    EXPECT_EQ(to_hex(hash_h1(ByteView{}).bytes()), vectors::kH1Empty);
    EXPECT_EQ(to_hex(hash_h1(as_bytes("abc")).bytes()), vectors::kH1Abc);
    EXPECT_EQ(to_hex(hash_h1({as_bytes("ab"), as_bytes("c")}).bytes()), vectors::kH1TwoParts);
}

TEST(Hash, H1FramingSeparatesPartBoundaries)
{
    EXPECT_NE(hash_h1({as_bytes("ab"), as_bytes("c")}), hash_h1({as_bytes("a"), as_bytes("bc")}));
    EXPECT_NE(hash_h1(as_bytes("abc")), hash_h1({as_bytes("ab"), as_bytes("c")}));
}

TEST(Hash, PinnedH2)
{
    EXPECT_EQ(to_hex(scalar_to_bytes(hash_h2(ByteView{}))), vectors::kH2Empty);
    EXPECT_EQ(to_hex(scalar_to_bytes(hash_h2(as_bytes("abc")))), vectors::kH2Abc);
}

TEST(Hash, DeterministicAndCollisionFreeOnCorpus)
{
    std::set<std::string> h1s, h2s;
    for (int i = 0; i < 2000; ++i) {
        std::string s = "message-" + std::to_string(i);
        EXPECT_EQ(hash_h1(as_bytes(s)), hash_h1(as_bytes(s)));
        h1s.insert(to_hex(hash_h1(as_bytes(s)).bytes()));
        h2s.insert(to_hex(scalar_to_bytes(hash_h2(as_bytes(s)))));
    }
    EXPECT_EQ(h1s.size(), 2000u);
    EXPECT_EQ(h2s.size(), 2000u);
}

TEST(Hash, H2OutputInRange)
{
    Rng rng(18);
    for (int i = 0; i < 10000; ++i) {
        std::array<uint8_t, 24> in;
        rng.fill(in);
        ASSERT_LT(hash_h2(in).to_canonical(), Fr::modulus);
    }
}

TEST(Hash, BitStringIndexing)
{
    std::array<uint8_t, 32> b{};
    b[0] = 0x80;  // bit 1
    b[31] = 0x01; // bit 256
    BitString s(b);
    EXPECT_TRUE(s.bit(1));
    EXPECT_FALSE(s.bit(2));
    EXPECT_TRUE(s.bit(256));
    EXPECT_EQ(s.hamming_weight(), 2u);
    EXPECT_THROW((void)s.bit(0), std::out_of_range);
    EXPECT_THROW((void)s.bit(257), std::out_of_range);
    EXPECT_EQ(BitString::all_one().hamming_weight(), 256u);
}

TEST(Hash, HashToG2IsDeterministicAndValid)
{
    auto a = RealBackend::hash_to_g2("tag", as_bytes("x"));
    auto b = RealBackend::hash_to_g2("tag", as_bytes("x"));
    auto c = RealBackend::hash_to_g2("tag", as_bytes("y"));
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    EXPECT_FALSE(a.is_identity());
    EXPECT_TRUE(bn254::g2_in_subgroup(a.point()));
}

TEST(Rng, SeededStreamsAreReproducible)
{
    Rng a(42), b(42), c(43);
    EXPECT_EQ(a.scalar(), b.scalar());
    EXPECT_NE(Rng(42).scalar(), c.scalar());
    EXPECT_NE(Rng(42).fork("x").scalar(), Rng(42).fork("y").scalar());
    EXPECT_FALSE(Rng(7).nonzero_scalar().is_zero());
}

}  // namespace
