#ifndef NOMSIG_CONTRACT_HPP_
#define NOMSIG_CONTRACT_HPP_

// Simulated escrow contract: the operator is paid the investment once the
// investor publishes a valid verification token together with an ECDSA
// authorized transfer. Single-writer; callers order submissions.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string_view>

#include "nomsig/bytes.hpp"
#include "nomsig/error.hpp"
#include "nomsig/gasmodel.hpp"
#include "nomsig/scheme.hpp"
#include "nomsig/trigger/ecdsa.hpp"

namespace nomsig::contract {

using trigger::Address;

class WalletLedger {
public:
    void credit(const Address& a, uint64_t amount) { balances_[a] += amount; }

    uint64_t balance_of(const Address& a) const
    {
        auto it = balances_.find(a);
        if (it == balances_.end()) throw Error(ErrorCode::kUnknownAddress, trigger::address_to_string(a));
        return it->second;
    }

    void transfer(const Address& from, const Address& to, uint64_t amount)
    {
        uint64_t have = balance_of(from);
        if (have < amount) throw Error(ErrorCode::kInsufficientFunds, "balance below transfer amount");
        balances_[from] = have - amount;
        balances_[to] += amount;
    }

    uint64_t total_supply() const
    {
        uint64_t t = 0;
        for (const auto& [_, v] : balances_) t += v;
        return t;
    }

    const std::map<Address, uint64_t>& balances() const { return balances_; }
    bool operator==(const WalletLedger&) const = default;

private:
    std::map<Address, uint64_t> balances_;
};

enum class Phase { kDeployed, kAdvancePaid, kSignatureStored, kExecuted };

inline constexpr std::string_view phase_name(Phase p)
{
    switch (p) {
    case Phase::kDeployed: return "Deployed";
    case Phase::kAdvancePaid: return "AdvancePaid";
    case Phase::kSignatureStored: return "SignatureStored";
    case Phase::kExecuted: return "Executed";
    }
    return "Unknown";
}

struct Transaction {
    Address from{};
    Address to{};
    uint64_t amount = 0;
    uint64_t nonce = 0;

    static constexpr std::size_t kEncodedSize = 56;

    // from || to || amount (8 bytes BE) || nonce (8 bytes BE)
    Bytes to_bytes() const
    {
        Bytes out(from.begin(), from.end());
        out.insert(out.end(), to.begin(), to.end());
        for (uint64_t v : {amount, nonce})
            for (int i = 7; i >= 0; --i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
        return out;
    }
    static Transaction from_bytes(ByteView b)
    {
        if (b.size() != kEncodedSize) throw Error(ErrorCode::kMalformedTransaction, "transaction must be 56 bytes");
        Transaction t;
        std::copy(b.begin(), b.begin() + 20, t.from.begin());
        std::copy(b.begin() + 20, b.begin() + 40, t.to.begin());
        auto be64 = [&](std::size_t off) {
            uint64_t v = 0;
            for (std::size_t i = 0; i < 8; ++i) v = (v << 8) | b[off + i];
            return v;
        };
        t.amount = be64(40);
        t.nonce = be64(48);
        return t;
    }
    bool operator==(const Transaction&) const = default;
};

template <class B>
struct TriggerSubmission {
    VerificationToken<B> tk;
    Transaction M;
    trigger::EcdsaSignature sigE;
};

struct Transfer {
    Address from;
    Address to;
    uint64_t amount = 0;
    bool operator==(const Transfer&) const = default;
};

struct ExecutionReceipt {
    bool accept = false;
    bool token_valid = false;
    bool ecdsa_valid = false;
    gas::GasReport gas;
    std::optional<Transfer> transfer;
};

template <class B>
struct ContractState {
    Phase phase = Phase::kDeployed;
    Bytes m;
    Address operator_address{};
    Address investor_address{};
    uint64_t advance_required = 0;
    uint64_t investment_amount = 0;
    std::optional<NomSignature<B>> stored_sigma;
    PublicParams<B> par;
    SignerPublicKey<B> pkS;
    NomineePublicKey<B> pkN;
    std::set<uint64_t> used_nonces;
    // Rejected triggers leave the contract armed in SignatureStored; this
    // counts them.
    uint64_t rejected_attempts = 0;
};

template <class B>
ContractState<B> deploy(Bytes m, const Address& operator_addr, const Address& investor_addr,
                        const SignerPublicKey<B>& pkS, const NomineePublicKey<B>& pkN, const PublicParams<B>& par,
                        uint64_t advance_required, uint64_t investment_amount)
{
    if (advance_required == 0 || investment_amount == 0)
        throw Error(ErrorCode::kInvalidAmounts, "advance and investment must be positive");
    ContractState<B> st;
    st.m = std::move(m);
    st.operator_address = operator_addr;
    st.investor_address = investor_addr;
    st.advance_required = advance_required;
    st.investment_amount = investment_amount;
    st.par = par;
    st.pkS = pkS;
    st.pkN = pkN;
    return st;
}

namespace detail {

inline void require_phase(Phase have, Phase want)
{
    if (have != want)
        throw Error(ErrorCode::kWrongPhase,
                    "contract is " + std::string(phase_name(have)) + ", expected " + std::string(phase_name(want)));
}

}  // namespace detail

template <class B>
void pay_advance(ContractState<B>& st, WalletLedger& ledger, uint64_t amount)
{
    detail::require_phase(st.phase, Phase::kDeployed);
    if (amount < st.advance_required) throw Error(ErrorCode::kInsufficientAdvance, "advance below required amount");
    ledger.transfer(st.investor_address, st.operator_address, amount);
    st.phase = Phase::kAdvancePaid;
}

// No verification is possible here: the signature is invisible until the
// nominee converts it.
template <class B>
void store_signature(ContractState<B>& st, const NomSignature<B>& sigma)
{
    detail::require_phase(st.phase, Phase::kAdvancePaid);
    st.stored_sigma = sigma;
    st.phase = Phase::kSignatureStored;
}

// Funds move only when the token verifies and the transfer is signed by the
// investor. A nonce is consumed once a transfer carrying it has been
// authenticated by the investor's signature, whatever the token verdict.
template <class B>
ExecutionReceipt submit_trigger(ContractState<B>& st, WalletLedger& ledger, const TriggerSubmission<B>& sub,
                                const gas::CostTable& table = {},
                                std::optional<uint64_t> gas_price_wei = std::nullopt)
{
    detail::require_phase(st.phase, Phase::kSignatureStored);
    const auto& M = sub.M;
    if (M.from != st.investor_address || M.to != st.operator_address || M.amount != st.investment_amount)
        throw Error(ErrorCode::kMalformedTransaction, "transaction does not match the contract terms");
    if (st.used_nonces.contains(M.nonce)) throw Error(ErrorCode::kNonceReplayed, std::to_string(M.nonce));

    auto tv = tk_verify(st.par, st.pkS, st.pkN, st.m, *st.stored_sigma, sub.tk);
    bool ecdsa_ok = false;
    try {
        ecdsa_ok = trigger::verify_against_address(sub.sigE, M.to_bytes(), st.investor_address);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::kRecoveryFailed) throw;
    }

    ExecutionReceipt rc;
    rc.token_valid = tv.accept;
    rc.ecdsa_valid = ecdsa_ok;
    rc.gas = gas::make_report(tv.counts, table, gas_price_wei);
    rc.accept = tv.accept && ecdsa_ok;
    if (rc.accept) {
        ledger.transfer(M.from, M.to, M.amount);
        rc.transfer = Transfer{M.from, M.to, M.amount};
        st.phase = Phase::kExecuted;
    } else {
        ++st.rejected_attempts;
    }
    if (ecdsa_ok) st.used_nonces.insert(M.nonce);
    return rc;
}

inline uint64_t balance_of(const WalletLedger& ledger, const Address& a) { return ledger.balance_of(a); }

// What anyone can read from the chain. Holds no key material beyond the
// public keys the contract was deployed with.
struct PublicView {
    Phase phase;
    Bytes m;
    std::optional<Bytes> sigma;
    Address operator_address;
    Address investor_address;
    uint64_t advance_required;
    uint64_t investment_amount;
    std::set<uint64_t> used_nonces;
    uint64_t rejected_attempts;
};

template <class B>
Bytes signature_bytes(const NomSignature<B>& s)
{
    Bytes out = s.s1.to_bytes();
    append(out, s.s2.to_bytes());
    append(out, s.s3.to_bytes());
    append(out, algebra::scalar_to_bytes(s.s));
    return out;
}

template <class B>
PublicView query_state(const ContractState<B>& st)
{
    PublicView v{st.phase,
                 st.m,
                 std::nullopt,
                 st.operator_address,
                 st.investor_address,
                 st.advance_required,
                 st.investment_amount,
                 st.used_nonces,
                 st.rejected_attempts};
    if (st.stored_sigma) v.sigma = signature_bytes(*st.stored_sigma);
    return v;
}

}  // namespace nomsig::contract

#endif  // NOMSIG_CONTRACT_HPP_
