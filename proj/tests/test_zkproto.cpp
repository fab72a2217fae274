#include <gtest/gtest.h>

#include "nomsig/zkproto.hpp"
#include "support.hpp"

using namespace nomsig;
using namespace nomsig::algebra;
using namespace nomsig::zk;
using testsupport::expect_error;
using testsupport::shared_pipeline;

namespace {

template <class B>
class ZkTest : public ::testing::Test {
protected:
    const testsupport::Pipeline<B>& p = shared_pipeline<B>();

    ConfirmStatement<B> valid() const { return derive_statement(p.par, p.signer.pk, p.nominee.pk, p.m, p.sigma); }

    ConfirmStatement<B> invalid() const
    {
        auto bad = p.sigma;
        bad.s3 = bad.s3 * p.par.g2;
        return derive_statement(p.par, p.signer.pk, p.nominee.pk, p.m, bad);
    }
};
TYPED_TEST_SUITE(ZkTest, testsupport::Backends, testsupport::BackendNames);

TYPED_TEST(ZkTest, StatementIsDeterministicAndMatchesWitness)
{
    auto a = this->valid();
    auto b = this->valid();
    EXPECT_EQ(a, b);
    EXPECT_TRUE(a.holds_for(this->p.nominee.sk.y1, this->p.nominee.sk.y2));
    EXPECT_FALSE(this->invalid().holds_for(this->p.nominee.sk.y1, this->p.nominee.sk.y2));
}

TYPED_TEST(ZkTest, ConfirmCompleteOnValidSignature)
{
    Rng rng(1);
    for (int i = 0; i < 3; ++i) {
        auto out = run_confirm(this->valid(), this->p.nominee.sk, rng);
        EXPECT_TRUE(out.accept);
        EXPECT_TRUE(transcript_accepts(this->valid(), out.transcript));
        EXPECT_EQ(out.transcript.messages().size(), 5u);
    }
}

TYPED_TEST(ZkTest, ConfirmRejectsInvalidSignature)
{
    Rng rng(2);
    EXPECT_FALSE(run_confirm(this->invalid(), this->p.nominee.sk, rng).accept);
}

TYPED_TEST(ZkTest, DisavowCompleteOnInvalidSignature)
{
    Rng rng(3);
    for (int i = 0; i < 3; ++i) {
        auto out = run_disavow(this->invalid(), this->p.nominee.sk, rng);
        EXPECT_TRUE(out.accept);
        EXPECT_TRUE(transcript_accepts(this->invalid(), out.transcript));
    }
}

TYPED_TEST(ZkTest, DisavowRejectsValidSignature)
{
    Rng rng(4);
    auto out = run_disavow(this->valid(), this->p.nominee.sk, rng);
    EXPECT_FALSE(out.accept);
    // An honest prover is forced to C = 1, which the verifier refuses
    // before opening its challenge.
    ASSERT_TRUE(out.transcript.first);
    EXPECT_TRUE(out.transcript.first->C.is_identity());
    EXPECT_FALSE(out.transcript.opening.has_value());
}

TYPED_TEST(ZkTest, WrongWitnessConfirmRejects)
{
    Rng rng(5);
    for (int i = 0; i < 5; ++i) {
        ConfirmProver<TypeParam> prover(this->valid(), rng.scalar(), rng.scalar(), rng);
        ConfirmVerifier<TypeParam> verifier(this->valid(), rng);
        EXPECT_FALSE(run_session(prover, verifier, deliver_unchanged).accept);
    }
}

TYPED_TEST(ZkTest, WrongWitnessDisavowRejects)
{
    Rng rng(6);
    for (int i = 0; i < 5; ++i) {
        DisavowProver<TypeParam> prover(this->invalid(), rng.scalar(), rng.scalar(), rng);
        DisavowVerifier<TypeParam> verifier(this->invalid(), rng);
        EXPECT_FALSE(run_session(prover, verifier, deliver_unchanged).accept);
    }
}

TYPED_TEST(ZkTest, ProverAbortsOnBadOpening)
{
    Rng rng(7);
    auto channel = [](Pass pass, Bytes b) {
        if (pass == Pass::kOpening) b[31] ^= 1;  // c' != c
        return b;
    };
    auto out = run_confirm(this->valid(), this->p.nominee.sk, rng, channel);
    EXPECT_TRUE(out.prover_aborted);
    EXPECT_FALSE(out.accept);
    EXPECT_FALSE(out.transcript.response.has_value());
}

TYPED_TEST(ZkTest, OutOfOrderCallsThrow)
{
    Rng rng(8);
    ConfirmProver<TypeParam> prover(this->valid(), this->p.nominee.sk.y1, this->p.nominee.sk.y2, rng);
    expect_error(ErrorCode::kProtocolOrder, [&] { (void)prover.respond(Opening{}); });
    ConfirmVerifier<TypeParam> verifier(this->valid(), rng);
    expect_error(ErrorCode::kProtocolOrder, [&] { (void)verifier.decide(ConfirmResponse{}); });
}

TYPED_TEST(ZkTest, SimulatedTranscriptsVerify)
{
    Rng rng(9);
    EXPECT_TRUE(transcript_accepts(this->valid(), simulate_confirm(this->valid(), Verdict::kAccept, rng)));
    EXPECT_FALSE(transcript_accepts(this->valid(), simulate_confirm(this->valid(), Verdict::kReject, rng)));
    EXPECT_TRUE(transcript_accepts(this->invalid(), simulate_disavow(this->invalid(), Verdict::kAccept, rng)));
    EXPECT_FALSE(transcript_accepts(this->invalid(), simulate_disavow(this->invalid(), Verdict::kReject, rng)));
}

TYPED_TEST(ZkTest, SimulatorWithoutChallengeForeknowledgeFails)
{
    // Build the first message for one challenge, then face another.
    Rng rng(10);
    auto st = this->valid();
    auto t = simulate_confirm(st, Verdict::kAccept, rng);
    Opening other{rng.scalar(), rng.scalar()};
    t.commitment = Commitment<TypeParam>{commit<TypeParam>(other.c, other.rho)};
    t.opening = other;
    EXPECT_FALSE(transcript_accepts(st, t));
}

TYPED_TEST(ZkTest, ExtractionRecoversWitness)
{
    Rng rng(11);
    typename ConfirmProver<TypeParam>::Nonces n{rng.scalar(), rng.scalar()};
    auto run = [&](const Opening& o) {
        ConfirmProver<TypeParam> prover(this->valid(), this->p.nominee.sk.y1, this->p.nominee.sk.y2, n);
        ConfirmVerifier<TypeParam> verifier(this->valid(), o);
        auto out = run_session(prover, verifier, deliver_unchanged);
        EXPECT_TRUE(out.accept);
        return *out.transcript.response;
    };
    Opening o1{rng.scalar(), rng.scalar()}, o2{rng.scalar(), rng.scalar()};
    auto w = extract_witness(o1.c, run(o1), o2.c, run(o2));
    ASSERT_TRUE(w);
    EXPECT_EQ(w->first, this->p.nominee.sk.y1);
    EXPECT_EQ(w->second, this->p.nominee.sk.y2);
    EXPECT_FALSE(extract_witness(o1.c, run(o1), o1.c, run(o1)));
}

TYPED_TEST(ZkTest, MessagesRoundTrip)
{
    Rng rng(12);
    auto out = run_confirm(this->valid(), this->p.nominee.sk, rng);
    const auto& t = out.transcript;
    EXPECT_EQ(ConfirmFirst<TypeParam>::from_bytes(t.first->to_bytes()).to_bytes(), t.first->to_bytes());
    EXPECT_EQ(ConfirmResponse::from_bytes(t.response->to_bytes()).to_bytes(), t.response->to_bytes());
    EXPECT_EQ(Opening::from_bytes(t.opening->to_bytes()).to_bytes(), t.opening->to_bytes());
    expect_error(ErrorCode::kMalformedEncoding, [] { (void)ConfirmResponse::from_bytes(Bytes(10, 0)); });
}

TEST(MockOracle, RandomS3BreaksStatement)
{
    const auto& p = shared_pipeline<MockBackend>();
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        auto bad = p.sigma;
        bad.s3 = MockBackend::G2::generator_pow(rng.scalar());
        auto st = derive_statement(p.par, p.signer.pk, p.nominee.pk, p.m, bad);
        EXPECT_FALSE(st.holds_for(p.nominee.sk.y1, p.nominee.sk.y2));
    }
}

TEST(MockOracle, DishonestDisavowOnValidSignatureRejects)
{
    // A cheating prover with C != 1 on a valid signature cannot answer the
    // challenge: the equations force C = D^beta with D = 1.
    const auto& p = shared_pipeline<MockBackend>();
    auto st = derive_statement(p.par, p.signer.pk, p.nominee.pk, p.m, p.sigma);
    Rng rng(14);
    int accepts = 0;
    for (int i = 0; i < 100; ++i) {
        DisavowProver<MockBackend> prover(st, p.nominee.sk.y1 + rng.nonzero_scalar(), p.nominee.sk.y2, rng);
        DisavowVerifier<MockBackend> verifier(st, rng);
        if (run_session(prover, verifier, deliver_unchanged).accept) ++accepts;
    }
    EXPECT_EQ(accepts, 0);
}

}  // namespace
