#ifndef NOMSIG_ZKPROTO_HPP_
#define NOMSIG_ZKPROTO_HPP_

// Four-pass Confirm and Disavow protocols. The verifier first commits to its
// challenge with a Pedersen commitment over G2, the prover sends the sigma
// protocol's first message, the verifier opens the commitment and the prover
// answers. Committing first is what makes the sigma protocol zero-knowledge
// against verifiers that pick their challenge adaptively.

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "nomsig/scheme.hpp"

namespace nomsig::zk {

enum class Pass : uint8_t {
    kCommitment = 1,
    kFirstMessage = 2,
    kOpening = 3,
    kResponse = 4,
    kVerdict = 5,
};

inline constexpr std::string_view pass_name(Pass p)
{
    switch (p) {
    case Pass::kCommitment: return "commitment";
    case Pass::kFirstMessage: return "first-message";
    case Pass::kOpening: return "opening";
    case Pass::kResponse: return "response";
    case Pass::kVerdict: return "verdict";
    }
    return "unknown";
}

// Independent commitment base with no known discrete log to g2.
template <class B>
const typename B::G2& pedersen_base()
{
    static const typename B::G2 h = [] {
        auto v = B::hash_to_g2("NOMSIG-PEDERSEN", as_bytes("challenge commitment base"));
        std::vector<typename B::G2> one{v};
        B::G2::normalize(one);
        return one[0];
    }();
    return h;
}

namespace detail {

class Reader {
public:
    explicit Reader(ByteView b) : b_(b) {}

    ByteView take(std::size_t n)
    {
        if (b_.size() - pos_ < n) throw Error(ErrorCode::kMalformedEncoding, "protocol message truncated");
        ByteView out = b_.subspan(pos_, n);
        pos_ += n;
        return out;
    }
    template <class T>
    T elem()
    {
        return T::from_bytes(take(T::kEncodedSize));
    }
    Scalar scalar() { return algebra::scalar_from_bytes(take(32)); }
    void finish() const
    {
        if (pos_ != b_.size()) throw Error(ErrorCode::kMalformedEncoding, "trailing bytes in protocol message");
    }

private:
    ByteView b_;
    std::size_t pos_ = 0;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Statement

template <class B>
struct ConfirmStatement {
    typename B::GT e1, e2, e3, e4;
    typename B::G2 x1, x2, g2ref;
    bool operator==(const ConfirmStatement&) const = default;

    // True iff e1 = e2 e3^y1 e4^y2; only the nominee can evaluate it.
    bool holds_for(const Scalar& y1, const Scalar& y2) const { return e1 == e2 * e3.pow(y1) * e4.pow(y2); }
};

template <class B>
ConfirmStatement<B> derive_statement(const PublicParams<B>& par, const SignerPublicKey<B>& pkS,
                                     const NomineePublicKey<B>& pkN, ByteView m, const NomSignature<B>& sigma)
{
    auto d = derive_values(pkS, pkN, m, sigma);
    ConfirmStatement<B> st;
    st.e1 = B::pairing(par.g1, sigma.s3);
    std::vector<std::pair<typename B::G1, typename B::G2>> keys{{pkS.gS, pkS.hS}, {pkN.gN, pkN.hN}};
    st.e2 = B::pairing_product(keys);
    st.e3 = B::pairing(sigma.s1, d.combined_hash);
    st.e4 = B::pairing(sigma.s2, d.combined_hash);
    st.x1 = pkN.x1;
    st.x2 = pkN.x2;
    st.g2ref = par.g2;
    return st;
}

// ---------------------------------------------------------------------------
// Messages

template <class B>
struct Commitment {
    typename B::G2 com;

    Bytes to_bytes() const { return com.to_bytes(); }
    static Commitment from_bytes(ByteView b)
    {
        detail::Reader r(b);
        Commitment c{r.template elem<typename B::G2>()};
        r.finish();
        return c;
    }
    bool operator==(const Commitment&) const = default;
};

struct Opening {
    Scalar c;
    Scalar rho;

    Bytes to_bytes() const
    {
        Bytes out = algebra::scalar_to_bytes(c);
        append(out, algebra::scalar_to_bytes(rho));
        return out;
    }
    static Opening from_bytes(ByteView b)
    {
        detail::Reader r(b);
        Opening o{r.scalar(), r.scalar()};
        r.finish();
        return o;
    }
    bool operator==(const Opening&) const = default;
};

template <class B>
typename B::G2 commit(const Scalar& c, const Scalar& rho)
{
    return B::G2::generator_pow(c) * pedersen_base<B>().pow(rho);
}

template <class B>
bool opening_valid(const Commitment<B>& com, const Opening& o)
{
    return commit<B>(o.c, o.rho) == com.com;
}

template <class B>
struct ConfirmFirst {
    typename B::G2 t1, t2;
    typename B::GT t3;

    Bytes to_bytes() const
    {
        Bytes out = t1.to_bytes();
        append(out, t2.to_bytes());
        append(out, t3.to_bytes());
        return out;
    }
    static ConfirmFirst from_bytes(ByteView b)
    {
        detail::Reader r(b);
        ConfirmFirst f;
        f.t1 = r.template elem<typename B::G2>();
        f.t2 = r.template elem<typename B::G2>();
        f.t3 = r.template elem<typename B::GT>();
        r.finish();
        return f;
    }
    bool operator==(const ConfirmFirst&) const = default;
};

struct ConfirmResponse {
    Scalar z1, z2;

    Bytes to_bytes() const
    {
        Bytes out = algebra::scalar_to_bytes(z1);
        append(out, algebra::scalar_to_bytes(z2));
        return out;
    }
    static ConfirmResponse from_bytes(ByteView b)
    {
        detail::Reader r(b);
        ConfirmResponse z{r.scalar(), r.scalar()};
        r.finish();
        return z;
    }
    bool operator==(const ConfirmResponse&) const = default;
};

template <class B>
struct DisavowFirst {
    typename B::GT C;
    typename B::G2 t1, t2;
    typename B::GT t3;

    Bytes to_bytes() const
    {
        Bytes out = C.to_bytes();
        append(out, t1.to_bytes());
        append(out, t2.to_bytes());
        append(out, t3.to_bytes());
        return out;
    }
    static DisavowFirst from_bytes(ByteView b)
    {
        detail::Reader r(b);
        DisavowFirst f;
        f.C = r.template elem<typename B::GT>();
        f.t1 = r.template elem<typename B::G2>();
        f.t2 = r.template elem<typename B::G2>();
        f.t3 = r.template elem<typename B::GT>();
        r.finish();
        return f;
    }
    bool operator==(const DisavowFirst&) const = default;
};

struct DisavowResponse {
    Scalar z1, z2, z3;

    Bytes to_bytes() const
    {
        Bytes out = algebra::scalar_to_bytes(z1);
        append(out, algebra::scalar_to_bytes(z2));
        append(out, algebra::scalar_to_bytes(z3));
        return out;
    }
    static DisavowResponse from_bytes(ByteView b)
    {
        detail::Reader r(b);
        DisavowResponse z{r.scalar(), r.scalar(), r.scalar()};
        r.finish();
        return z;
    }
    bool operator==(const DisavowResponse&) const = default;
};

// ---------------------------------------------------------------------------
// Verification equations

// x1^z1 = t1 g2^c, x2^z2 = t2 g2^c, e3^z1 e4^z2 = t3 (e1/e2)^c
template <class B>
bool confirm_equations_hold(const ConfirmStatement<B>& st, const ConfirmFirst<B>& f, const Scalar& c,
                            const ConfirmResponse& z)
{
    auto g2c = st.g2ref.pow(c);
    bool a = st.x1.pow(z.z1) == f.t1 * g2c;
    bool b = st.x2.pow(z.z2) == f.t2 * g2c;
    bool d = st.e3.pow(z.z1) * st.e4.pow(z.z2) == f.t3 * (st.e1 / st.e2).pow(c);
    return a && b && d;
}

// C != 1, x1^z1 g2^-z3 = t1, x2^z2 g2^-z3 = t2, (e2/e1)^z3 e3^z1 e4^z2 = t3 C^c
template <class B>
bool disavow_equations_hold(const ConfirmStatement<B>& st, const DisavowFirst<B>& f, const Scalar& c,
                            const DisavowResponse& z)
{
    if (f.C.is_identity()) return false;
    auto g2z3 = st.g2ref.pow(z.z3);
    bool a = st.x1.pow(z.z1) / g2z3 == f.t1;
    bool b = st.x2.pow(z.z2) / g2z3 == f.t2;
    bool d = (st.e2 / st.e1).pow(z.z3) * st.e3.pow(z.z1) * st.e4.pow(z.z2) == f.t3 * f.C.pow(c);
    return a && b && d;
}

// ---------------------------------------------------------------------------
// Transcripts

template <class B, class First, class Response>
struct Transcript {
    std::optional<Commitment<B>> commitment;
    std::optional<First> first;
    std::optional<Opening> opening;
    std::optional<Response> response;
    std::optional<bool> verdict;

    // Serialized messages in pass order, as far as the session got.
    std::vector<std::pair<Pass, Bytes>> messages() const
    {
        std::vector<std::pair<Pass, Bytes>> out;
        if (commitment) out.emplace_back(Pass::kCommitment, commitment->to_bytes());
        if (first) out.emplace_back(Pass::kFirstMessage, first->to_bytes());
        if (opening) out.emplace_back(Pass::kOpening, opening->to_bytes());
        if (response) out.emplace_back(Pass::kResponse, response->to_bytes());
        if (verdict) out.emplace_back(Pass::kVerdict, Bytes{static_cast<uint8_t>(*verdict ? 1 : 0)});
        return out;
    }
};

template <class B>
using ConfirmTranscript = Transcript<B, ConfirmFirst<B>, ConfirmResponse>;
template <class B>
using DisavowTranscript = Transcript<B, DisavowFirst<B>, DisavowResponse>;

// Re-checks a complete transcript from the verifier's point of view.
template <class B>
bool transcript_accepts(const ConfirmStatement<B>& st, const ConfirmTranscript<B>& t)
{
    if (!t.commitment || !t.first || !t.opening || !t.response) return false;
    if (!opening_valid(*t.commitment, *t.opening)) return false;
    return confirm_equations_hold(st, *t.first, t.opening->c, *t.response);
}

template <class B>
bool transcript_accepts(const ConfirmStatement<B>& st, const DisavowTranscript<B>& t)
{
    if (!t.commitment || !t.first || !t.opening || !t.response) return false;
    if (!opening_valid(*t.commitment, *t.opening)) return false;
    return disavow_equations_hold(st, *t.first, t.opening->c, *t.response);
}

// ---------------------------------------------------------------------------
// Party state machines

namespace detail {

inline void require(bool ok, std::string_view what)
{
    if (!ok) throw Error(ErrorCode::kProtocolOrder, std::string(what));
}

}  // namespace detail

template <class B>
class ConfirmProver {
public:
    struct Nonces {
        Scalar a1, a2;
    };

    ConfirmProver(ConfirmStatement<B> st, Scalar y1, Scalar y2, Rng& rng)
        : ConfirmProver(std::move(st), y1, y2, Nonces{rng.scalar(), rng.scalar()})
    {
    }
    ConfirmProver(ConfirmStatement<B> st, Scalar y1, Scalar y2, Nonces n)
        : st_(std::move(st)), y1_(y1), y2_(y2), n_(n)
    {
    }

    ConfirmFirst<B> first_message(const Commitment<B>& com)
    {
        detail::require(stage_ == 0, "prover first message sent twice");
        com_ = com;
        stage_ = 1;
        return {st_.x1.pow(n_.a1), st_.x2.pow(n_.a2), st_.e3.pow(n_.a1) * st_.e4.pow(n_.a2)};
    }

    ConfirmResponse respond(const Opening& o)
    {
        detail::require(stage_ == 1, "prover asked to respond before committing");
        stage_ = 2;
        if (!opening_valid(com_, o)) throw Error(ErrorCode::kAbortBadOpening, "challenge does not match commitment");
        return {n_.a1 + o.c * y1_, n_.a2 + o.c * y2_};
    }

private:
    ConfirmStatement<B> st_;
    Scalar y1_, y2_;
    Nonces n_;
    Commitment<B> com_;
    int stage_ = 0;
};

template <class B>
class DisavowProver {
public:
    struct Nonces {
        Scalar beta;  // must be nonzero
        Scalar a1, a2, b;
    };

    DisavowProver(ConfirmStatement<B> st, Scalar y1, Scalar y2, Rng& rng)
        : DisavowProver(std::move(st), y1, y2, Nonces{rng.nonzero_scalar(), rng.scalar(), rng.scalar(), rng.scalar()})
    {
    }
    DisavowProver(ConfirmStatement<B> st, Scalar y1, Scalar y2, Nonces n)
        : st_(std::move(st)), y1_(y1), y2_(y2), n_(n)
    {
    }

    DisavowFirst<B> first_message(const Commitment<B>& com)
    {
        detail::require(stage_ == 0, "prover first message sent twice");
        com_ = com;
        stage_ = 1;
        // D = e2 e3^y1 e4^y2 / e1 is 1 exactly when the signature is valid.
        auto D = st_.e2 * st_.e3.pow(y1_) * st_.e4.pow(y2_) / st_.e1;
        auto g2b = st_.g2ref.pow(n_.b);
        DisavowFirst<B> f;
        f.C = D.pow(n_.beta);
        f.t1 = st_.x1.pow(n_.a1) / g2b;
        f.t2 = st_.x2.pow(n_.a2) / g2b;
        f.t3 = (st_.e2 / st_.e1).pow(n_.b) * st_.e3.pow(n_.a1) * st_.e4.pow(n_.a2);
        return f;
    }

    DisavowResponse respond(const Opening& o)
    {
        detail::require(stage_ == 1, "prover asked to respond before committing");
        stage_ = 2;
        if (!opening_valid(com_, o)) throw Error(ErrorCode::kAbortBadOpening, "challenge does not match commitment");
        Scalar cb = o.c * n_.beta;
        return {n_.a1 + cb * y1_, n_.a2 + cb * y2_, n_.b + cb};
    }

private:
    ConfirmStatement<B> st_;
    Scalar y1_, y2_;
    Nonces n_;
    Commitment<B> com_;
    int stage_ = 0;
};

// Verifier for either protocol; the first-message type selects the equations.
template <class B, class First, class Response>
class Verifier {
public:
    Verifier(ConfirmStatement<B> st, Rng& rng) : Verifier(std::move(st), Opening{rng.scalar(), rng.scalar()}) {}
    Verifier(ConfirmStatement<B> st, Opening o) : st_(std::move(st)), open_(o) {}

    Commitment<B> commitment()
    {
        detail::require(stage_ == 0, "commitment sent twice");
        stage_ = 1;
        return {commit<B>(open_.c, open_.rho)};
    }

    // Returns the opening, or nothing if the first message already forces a
    // reject (a disavowal with C = 1).
    std::optional<Opening> receive_first(const First& f)
    {
        detail::require(stage_ == 1, "first message before commitment");
        stage_ = 2;
        first_ = f;
        if constexpr (std::is_same_v<First, DisavowFirst<B>>) {
            if (f.C.is_identity()) {
                stage_ = 3;
                verdict_ = false;
                return std::nullopt;
            }
        }
        return open_;
    }

    bool decide(const Response& z)
    {
        detail::require(stage_ == 2, "response before opening");
        stage_ = 3;
        if constexpr (std::is_same_v<First, DisavowFirst<B>>)
            verdict_ = disavow_equations_hold(st_, first_, open_.c, z);
        else
            verdict_ = confirm_equations_hold(st_, first_, open_.c, z);
        return *verdict_;
    }

    std::optional<bool> verdict() const { return verdict_; }
    const Opening& opening() const { return open_; }

private:
    ConfirmStatement<B> st_;
    Opening open_;
    First first_{};
    std::optional<bool> verdict_;
    int stage_ = 0;
};

template <class B>
using ConfirmVerifier = Verifier<B, ConfirmFirst<B>, ConfirmResponse>;
template <class B>
using DisavowVerifier = Verifier<B, DisavowFirst<B>, DisavowResponse>;

// ---------------------------------------------------------------------------
// In-process runs

// Carries one serialized message between the parties. The default delivers
// bytes unchanged; tests substitute tampering or logging channels.
using Channel = std::function<Bytes(Pass, Bytes)>;

inline Bytes deliver_unchanged(Pass, Bytes b) { return b; }

template <class B, class First, class Response>
struct Outcome {
    bool accept = false;
    bool prover_aborted = false;
    Transcript<B, First, Response> transcript;
};

template <class B>
using ConfirmOutcome = Outcome<B, ConfirmFirst<B>, ConfirmResponse>;
template <class B>
using DisavowOutcome = Outcome<B, DisavowFirst<B>, DisavowResponse>;

template <class B, class Prover, class First, class Response>
Outcome<B, First, Response> run_session(Prover& prover, Verifier<B, First, Response>& verifier,
                                        const Channel& channel)
{
    Outcome<B, First, Response> out;
    auto& t = out.transcript;

    t.commitment = Commitment<B>::from_bytes(channel(Pass::kCommitment, verifier.commitment().to_bytes()));
    t.first = First::from_bytes(channel(Pass::kFirstMessage, prover.first_message(*t.commitment).to_bytes()));
    auto opening = verifier.receive_first(*t.first);
    if (!opening) {
        t.verdict = false;
        return out;
    }
    t.opening = Opening::from_bytes(channel(Pass::kOpening, opening->to_bytes()));
    try {
        t.response = Response::from_bytes(channel(Pass::kResponse, prover.respond(*t.opening).to_bytes()));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::kAbortBadOpening) throw;
        out.prover_aborted = true;
        t.verdict = false;
        return out;
    }
    out.accept = verifier.decide(*t.response);
    t.verdict = out.accept;
    return out;
}

template <class B>
ConfirmOutcome<B> run_confirm(const ConfirmStatement<B>& st, const NomineeSecretKey<B>& sk, Rng& rng,
                              const Channel& channel = deliver_unchanged)
{
    ConfirmProver<B> prover(st, sk.y1, sk.y2, rng);
    ConfirmVerifier<B> verifier(st, rng);
    return run_session(prover, verifier, channel);
}

template <class B>
DisavowOutcome<B> run_disavow(const ConfirmStatement<B>& st, const NomineeSecretKey<B>& sk, Rng& rng,
                              const Channel& channel = deliver_unchanged)
{
    DisavowProver<B> prover(st, sk.y1, sk.y2, rng);
    DisavowVerifier<B> verifier(st, rng);
    return run_session(prover, verifier, channel);
}

// ---------------------------------------------------------------------------
// Simulation and extraction

enum class Verdict { kAccept, kReject };

// Without any witness: picks the challenge first, then solves the
// verification equations for the first message.
template <class B>
ConfirmTranscript<B> simulate_confirm(const ConfirmStatement<B>& st, Verdict target, Rng& rng)
{
    Opening o{rng.scalar(), rng.scalar()};
    ConfirmResponse z{rng.scalar(), rng.scalar()};
    auto g2c = st.g2ref.pow(o.c);
    ConfirmFirst<B> f;
    f.t1 = st.x1.pow(z.z1) / g2c;
    f.t2 = st.x2.pow(z.z2) / g2c;
    f.t3 = st.e3.pow(z.z1) * st.e4.pow(z.z2) / (st.e1 / st.e2).pow(o.c);
    if (target == Verdict::kReject) z.z1 += Scalar::one();

    ConfirmTranscript<B> t;
    t.commitment = Commitment<B>{commit<B>(o.c, o.rho)};
    t.first = f;
    t.opening = o;
    t.response = z;
    t.verdict = target == Verdict::kAccept;
    return t;
}

// C is a uniformly random element of GT, as it is for an honest prover on
// an invalid signature.
template <class B>
DisavowTranscript<B> simulate_disavow(const ConfirmStatement<B>& st, Verdict target, Rng& rng)
{
    Opening o{rng.scalar(), rng.scalar()};
    DisavowResponse z{rng.scalar(), rng.scalar(), rng.scalar()};
    DisavowFirst<B> f;
    f.C = B::pairing(B::G1::generator(), B::G2::generator()).pow(rng.nonzero_scalar());
    auto g2z3 = st.g2ref.pow(z.z3);
    f.t1 = st.x1.pow(z.z1) / g2z3;
    f.t2 = st.x2.pow(z.z2) / g2z3;
    f.t3 = (st.e2 / st.e1).pow(z.z3) * st.e3.pow(z.z1) * st.e4.pow(z.z2) / f.C.pow(o.c);
    if (target == Verdict::kReject) z.z3 += Scalar::one();

    DisavowTranscript<B> t;
    t.commitment = Commitment<B>{commit<B>(o.c, o.rho)};
    t.first = f;
    t.opening = o;
    t.response = z;
    t.verdict = target == Verdict::kAccept;
    return t;
}

// Special soundness: two accepting answers to one first message under
// different challenges reveal the witness.
inline std::optional<std::pair<Scalar, Scalar>> extract_witness(const Scalar& c, const ConfirmResponse& z,
                                                                const Scalar& c2, const ConfirmResponse& z2)
{
    Scalar dc = c - c2;
    if (dc.is_zero()) return std::nullopt;
    Scalar inv = dc.inverse();
    return std::pair{(z.z1 - z2.z1) * inv, (z.z2 - z2.z2) * inv};
}

}  // namespace nomsig::zk

#endif  // NOMSIG_ZKPROTO_HPP_
