#ifndef NOMSIG_TESTS_SUPPORT_HPP_
#define NOMSIG_TESTS_SUPPORT_HPP_

#include <functional>
#include <string>

#include <gtest/gtest.h>

#include "nomsig/algebra/backend.hpp"
#include "nomsig/error.hpp"
#include "nomsig/scheme.hpp"

namespace testsupport {

using nomsig::Bytes;
using nomsig::algebra::Rng;

// One honest run of Setup, KeyGen, Sign, Receive and Convert.
template <class B>
struct Pipeline {
    nomsig::PublicParams<B> par;
    nomsig::SignerKeys<B> signer;
    nomsig::NomineeKeys<B> nominee;
    Bytes m;
    nomsig::DeltaMsg<B> delta;
    nomsig::NomSignature<B> sigma;
    nomsig::VerificationToken<B> tk;
};

template <class B>
Pipeline<B> make_pipeline(uint64_t seed, std::string msg = "invest 500 in project 7")
{
    Rng rng(seed);
    Pipeline<B> p;
    p.par = nomsig::setup<B>(128);
    p.signer = nomsig::keygen_signer(p.par, rng);
    p.nominee = nomsig::keygen_nominee(p.par, rng);
    p.m.assign(msg.begin(), msg.end());
    p.delta = nomsig::sign(p.par, p.nominee.pk, p.m, p.signer, rng);
    auto s = nomsig::receive(p.par, p.signer.pk, p.m, p.delta, p.nominee, rng);
    if (!s) throw std::logic_error("honest receive rejected");
    p.sigma = *s;
    auto tk = nomsig::convert(p.par, p.signer.pk, p.m, p.sigma, p.nominee);
    if (!tk) throw std::logic_error("honest convert rejected");
    p.tk = *tk;
    return p;
}

// Keygen dominates the cost on the real backend; share one pipeline per
// backend across a test binary.
template <class B>
const Pipeline<B>& shared_pipeline()
{
    static const Pipeline<B> p = make_pipeline<B>(20240601);
    return p;
}

inline void expect_error(nomsig::ErrorCode code, const std::function<void()>& fn)
{
    try {
        fn();
        ADD_FAILURE() << "expected " << nomsig::error_name(code);
    } catch (const nomsig::Error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

using Backends = ::testing::Types<nomsig::algebra::RealBackend, nomsig::algebra::MockBackend>;

struct BackendNames {
    template <class T>
    static std::string GetName(int)
    {
        return std::string(T::kName);
    }
};

}  // namespace testsupport

#endif  // NOMSIG_TESTS_SUPPORT_HPP_
