#ifndef NOMSIG_IO_HPP_
#define NOMSIG_IO_HPP_

// Versioned JSON envelopes for every artifact that crosses a process
// boundary: {schema_version, kind, role, fields}. Group elements and scalars
// are hex strings of their canonical encodings, in the field order of the
// corresponding type.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>

#include "json.hpp"

#include "nomsig/contract.hpp"
#include "nomsig/error.hpp"
#include "nomsig/gasmodel.hpp"
#include "nomsig/scheme.hpp"
#include "nomsig/trigger/ecdsa.hpp"

namespace nomsig::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace kind {
inline constexpr std::string_view kParams = "params";
inline constexpr std::string_view kKey = "key";
inline constexpr std::string_view kDelta = "delta";
inline constexpr std::string_view kSigma = "sigma";
inline constexpr std::string_view kToken = "token";
inline constexpr std::string_view kTransaction = "transaction";
inline constexpr std::string_view kTranscriptMsg = "transcript-msg";
inline constexpr std::string_view kContractState = "contract-state";
inline constexpr std::string_view kLedger = "ledger";
inline constexpr std::string_view kReceipt = "receipt";
}  // namespace kind

namespace role {
inline constexpr std::string_view kPublic = "public";
inline constexpr std::string_view kSigner = "signer";
inline constexpr std::string_view kSignerPublic = "signer-public";
inline constexpr std::string_view kNominee = "nominee";
inline constexpr std::string_view kNomineePublic = "nominee-public";
inline constexpr std::string_view kWallet = "wallet";
inline constexpr std::string_view kProver = "prover";
inline constexpr std::string_view kVerifier = "verifier";
}  // namespace role

struct Envelope {
    std::string kind;
    std::string role;
    Json fields = Json::object();

    Json to_json() const
    {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["kind"] = kind;
        j["role"] = role;
        j["fields"] = fields;
        return j;
    }

    static Envelope from_json(const Json& j)
    {
        try {
            if (!j.is_object()) throw Error(ErrorCode::kMalformedEncoding, "envelope must be a JSON object");
            if (j.at("schema_version").get<int>() != kSchemaVersion)
                throw Error(ErrorCode::kUnknownSchemaVersion, j.at("schema_version").dump());
            Envelope e{j.at("kind").get<std::string>(), j.at("role").get<std::string>(), j.at("fields")};
            if (!e.fields.is_object()) throw Error(ErrorCode::kMalformedEncoding, "envelope fields must be an object");
            return e;
        } catch (const nlohmann::json::exception& ex) {
            throw Error(ErrorCode::kMalformedEncoding, ex.what());
        }
    }

    void expect(std::string_view k) const
    {
        if (kind != k) throw Error(ErrorCode::kWrongArtifactKind, "expected " + std::string(k) + ", got " + kind);
    }
    void expect(std::string_view k, std::string_view r) const
    {
        expect(k);
        if (role != r)
            throw Error(ErrorCode::kWrongArtifactKind, "expected role " + std::string(r) + ", got " + role);
    }
};

// ---------------------------------------------------------------------------
// Files

inline std::string read_text(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorCode::kMalformedEncoding, "cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Write to a sibling temporary, then rename, so readers never observe a
// partially written file.
inline void write_text_atomic(const std::filesystem::path& p, std::string_view text)
{
    auto tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << text;
        if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, p);
}

inline Envelope parse_envelope(std::string_view text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kMalformedEncoding, e.what());
    }
    return Envelope::from_json(j);
}

inline Envelope read_envelope(const std::filesystem::path& p) { return parse_envelope(read_text(p)); }

inline void write_envelope(const std::filesystem::path& p, const Envelope& e)
{
    write_text_atomic(p, e.to_json().dump(2) + "\n");
}

// Polls until `p` exists or the timeout expires.
inline bool wait_for_file(const std::filesystem::path& p, std::chrono::milliseconds timeout)
{
    auto deadline = std::chrono::steady_clock::now() + timeout;
    while (!std::filesystem::exists(p)) {
        if (std::chrono::steady_clock::now() >= deadline) return false;
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    return true;
}

// ---------------------------------------------------------------------------
// Field helpers

namespace detail {

inline const Json& field(const Json& f, std::string_view name)
{
    auto it = f.find(std::string(name));
    if (it == f.end()) throw Error(ErrorCode::kMalformedEncoding, "missing field '" + std::string(name) + "'");
    return *it;
}

inline Bytes hex_field(const Json& f, std::string_view name)
{
    const auto& v = field(f, name);
    if (!v.is_string()) throw Error(ErrorCode::kMalformedEncoding, "field '" + std::string(name) + "' must be hex");
    return from_hex(v.get<std::string>());
}

inline uint64_t u64_field(const Json& f, std::string_view name)
{
    const auto& v = field(f, name);
    if (!v.is_number_unsigned())
        throw Error(ErrorCode::kMalformedEncoding, "field '" + std::string(name) + "' must be a non-negative integer");
    return v.get<uint64_t>();
}

template <class T>
T elem_field(const Json& f, std::string_view name)
{
    return T::from_bytes(hex_field(f, name));
}

inline Scalar scalar_field(const Json& f, std::string_view name)
{
    return algebra::scalar_from_bytes(hex_field(f, name));
}

template <class T>
std::vector<T> elem_list(const Json& f, std::string_view name)
{
    const auto& v = field(f, name);
    if (!v.is_array()) throw Error(ErrorCode::kMalformedEncoding, "field '" + std::string(name) + "' must be a list");
    std::vector<T> out;
    out.reserve(v.size());
    for (const auto& item : v) {
        if (!item.is_string()) throw Error(ErrorCode::kMalformedEncoding, "list entries must be hex");
        out.push_back(T::from_bytes(from_hex(item.get<std::string>())));
    }
    return out;
}

inline std::vector<Scalar> scalar_list(const Json& f, std::string_view name)
{
    const auto& v = field(f, name);
    if (!v.is_array()) throw Error(ErrorCode::kMalformedEncoding, "field '" + std::string(name) + "' must be a list");
    std::vector<Scalar> out;
    for (const auto& item : v) {
        if (!item.is_string()) throw Error(ErrorCode::kMalformedEncoding, "list entries must be hex");
        out.push_back(algebra::scalar_from_bytes(from_hex(item.get<std::string>())));
    }
    return out;
}

template <class T>
Json hex_list(const std::vector<T>& v)
{
    Json a = Json::array();
    for (const auto& e : v) a.push_back(to_hex(e.to_bytes()));
    return a;
}

inline Json hex_list(const std::vector<Scalar>& v)
{
    Json a = Json::array();
    for (const auto& e : v) a.push_back(to_hex(algebra::scalar_to_bytes(e)));
    return a;
}

inline std::string hex(const Scalar& s) { return to_hex(algebra::scalar_to_bytes(s)); }

inline void check_length(std::size_t n, std::string_view what)
{
    if (n != kEll + 1) throw Error(ErrorCode::kLengthMismatch, std::string(what) + " must have ell + 1 entries");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scheme artifacts

template <class B>
Envelope encode_params(const PublicParams<B>& par)
{
    Envelope e{std::string(kind::kParams), std::string(role::kPublic)};
    e.fields["backend"] = std::string(B::kName);
    e.fields["security"] = par.security;
    e.fields["ell"] = par.ell;
    e.fields["g1"] = to_hex(par.g1.to_bytes());
    e.fields["g2"] = to_hex(par.g2.to_bytes());
    return e;
}

template <class B>
PublicParams<B> decode_params(const Envelope& e)
{
    e.expect(kind::kParams);
    const auto& f = e.fields;
    if (!detail::field(f, "backend").is_string() || detail::field(f, "backend").get<std::string>() != B::kName)
        throw Error(ErrorCode::kMalformedEncoding, "params were generated for a different backend");
    if (!detail::field(f, "security").is_number_integer())
        throw Error(ErrorCode::kMalformedEncoding, "security must be an integer");
    auto par = setup<B>(detail::field(f, "security").get<int>());
    if (detail::u64_field(f, "ell") != kEll) throw Error(ErrorCode::kMalformedEncoding, "unsupported ell");
    if (detail::elem_field<typename B::G1>(f, "g1") != par.g1 || detail::elem_field<typename B::G2>(f, "g2") != par.g2)
        throw Error(ErrorCode::kMalformedEncoding, "params carry non-standard generators");
    return par;
}

template <class B>
void put_signer_public(Json& f, const SignerPublicKey<B>& pk)
{
    f["gS"] = to_hex(pk.gS.to_bytes());
    f["hS"] = to_hex(pk.hS.to_bytes());
    f["u"] = detail::hex_list(pk.u);
}

template <class B>
SignerPublicKey<B> get_signer_public(const Json& f)
{
    SignerPublicKey<B> pk;
    pk.gS = detail::elem_field<typename B::G1>(f, "gS");
    pk.hS = detail::elem_field<typename B::G2>(f, "hS");
    pk.u = detail::elem_list<typename B::G2>(f, "u");
    detail::check_length(pk.u.size(), "u");
    return pk;
}

template <class B>
void put_nominee_public(Json& f, const NomineePublicKey<B>& pk)
{
    f["gN"] = to_hex(pk.gN.to_bytes());
    f["hN"] = to_hex(pk.hN.to_bytes());
    f["k"] = to_hex(pk.k.to_bytes());
    f["uPrime"] = detail::hex_list(pk.uPrime);
    f["x1"] = to_hex(pk.x1.to_bytes());
    f["x2"] = to_hex(pk.x2.to_bytes());
}

template <class B>
NomineePublicKey<B> get_nominee_public(const Json& f)
{
    NomineePublicKey<B> pk;
    pk.gN = detail::elem_field<typename B::G1>(f, "gN");
    pk.hN = detail::elem_field<typename B::G2>(f, "hN");
    pk.k = detail::elem_field<typename B::G2>(f, "k");
    pk.uPrime = detail::elem_list<typename B::G2>(f, "uPrime");
    detail::check_length(pk.uPrime.size(), "uPrime");
    pk.x1 = detail::elem_field<typename B::G2>(f, "x1");
    pk.x2 = detail::elem_field<typename B::G2>(f, "x2");
    return pk;
}

template <class B>
Envelope encode_signer_public(const SignerPublicKey<B>& pk)
{
    Envelope e{std::string(kind::kKey), std::string(role::kSignerPublic)};
    put_signer_public(e.fields, pk);
    return e;
}

template <class B>
Envelope encode_signer(const SignerKeys<B>& keys)
{
    Envelope e{std::string(kind::kKey), std::string(role::kSigner)};
    put_signer_public(e.fields, keys.pk);
    e.fields["alphaS"] = detail::hex(keys.sk.alphaS);
    return e;
}

// Accepts a full signer key as well as its public half.
template <class B>
SignerPublicKey<B> decode_signer_public(const Envelope& e)
{
    e.expect(kind::kKey);
    if (e.role != role::kSigner && e.role != role::kSignerPublic)
        throw Error(ErrorCode::kWrongArtifactKind, "expected a signer key, got role " + e.role);
    return get_signer_public<B>(e.fields);
}

template <class B>
SignerKeys<B> decode_signer(const Envelope& e)
{
    e.expect(kind::kKey, role::kSigner);
    SignerKeys<B> keys{get_signer_public<B>(e.fields), {detail::scalar_field(e.fields, "alphaS")}};
    B::G2::normalize(keys.pk.u);
    return keys;
}

template <class B>
Envelope encode_nominee_public(const NomineePublicKey<B>& pk)
{
    Envelope e{std::string(kind::kKey), std::string(role::kNomineePublic)};
    put_nominee_public(e.fields, pk);
    return e;
}

template <class B>
Envelope encode_nominee(const NomineeKeys<B>& keys)
{
    Envelope e{std::string(kind::kKey), std::string(role::kNominee)};
    put_nominee_public(e.fields, keys.pk);
    e.fields["alphaN"] = detail::hex(keys.sk.alphaN);
    e.fields["vPrime"] = detail::hex_list(keys.sk.vPrime);
    e.fields["y1"] = detail::hex(keys.sk.y1);
    e.fields["y2"] = detail::hex(keys.sk.y2);
    return e;
}

template <class B>
NomineePublicKey<B> decode_nominee_public(const Envelope& e)
{
    e.expect(kind::kKey);
    if (e.role != role::kNominee && e.role != role::kNomineePublic)
        throw Error(ErrorCode::kWrongArtifactKind, "expected a nominee key, got role " + e.role);
    return get_nominee_public<B>(e.fields);
}

template <class B>
NomineeKeys<B> decode_nominee(const Envelope& e)
{
    e.expect(kind::kKey, role::kNominee);
    NomineeKeys<B> keys;
    keys.pk = get_nominee_public<B>(e.fields);
    keys.sk.alphaN = detail::scalar_field(e.fields, "alphaN");
    keys.sk.vPrime = detail::scalar_list(e.fields, "vPrime");
    detail::check_length(keys.sk.vPrime.size(), "vPrime");
    keys.sk.y1 = detail::scalar_field(e.fields, "y1");
    keys.sk.y2 = detail::scalar_field(e.fields, "y2");
    if (keys.sk.y1.is_zero() || keys.sk.y2.is_zero())
        throw Error(ErrorCode::kMalformedEncoding, "y1 and y2 must be nonzero");
    return keys;
}

template <class B>
Envelope encode_delta(const DeltaMsg<B>& d)
{
    Envelope e{std::string(kind::kDelta), std::string(role::kSigner)};
    e.fields["d1"] = to_hex(d.d1.to_bytes());
    e.fields["d2"] = to_hex(d.d2.to_bytes());
    e.fields["d3"] = to_hex(d.d3.to_bytes());
    return e;
}

template <class B>
DeltaMsg<B> decode_delta(const Envelope& e)
{
    e.expect(kind::kDelta);
    return {detail::elem_field<typename B::G1>(e.fields, "d1"), detail::elem_field<typename B::G2>(e.fields, "d2"),
            detail::elem_field<typename B::G2>(e.fields, "d3")};
}

template <class B>
void put_sigma(Json& f, const NomSignature<B>& s)
{
    f["s1"] = to_hex(s.s1.to_bytes());
    f["s2"] = to_hex(s.s2.to_bytes());
    f["s3"] = to_hex(s.s3.to_bytes());
    f["s"] = detail::hex(s.s);
}

template <class B>
NomSignature<B> get_sigma(const Json& f)
{
    return {detail::elem_field<typename B::G1>(f, "s1"), detail::elem_field<typename B::G1>(f, "s2"),
            detail::elem_field<typename B::G2>(f, "s3"), detail::scalar_field(f, "s")};
}

template <class B>
Envelope encode_sigma(const NomSignature<B>& s)
{
    Envelope e{std::string(kind::kSigma), std::string(role::kNominee)};
    put_sigma(e.fields, s);
    return e;
}

template <class B>
NomSignature<B> decode_sigma(const Envelope& e)
{
    e.expect(kind::kSigma);
    return get_sigma<B>(e.fields);
}

template <class B>
Envelope encode_token(const VerificationToken<B>& tk)
{
    Envelope e{std::string(kind::kToken), std::string(role::kNominee)};
    e.fields["tk1"] = to_hex(tk.tk1.to_bytes());
    e.fields["tk2"] = to_hex(tk.tk2.to_bytes());
    return e;
}

template <class B>
VerificationToken<B> decode_token(const Envelope& e)
{
    e.expect(kind::kToken);
    return {detail::elem_field<typename B::G1>(e.fields, "tk1"), detail::elem_field<typename B::G1>(e.fields, "tk2")};
}

// ---------------------------------------------------------------------------
// Wallets and transactions

inline Envelope encode_wallet(const trigger::EcdsaKeyPair& kp)
{
    Envelope e{std::string(kind::kKey), std::string(role::kWallet)};
    e.fields["sk"] = to_hex(kp.sk.to_be_bytes());
    e.fields["address"] = trigger::address_to_string(trigger::address_of(kp.vk));
    return e;
}

inline trigger::EcdsaKeyPair decode_wallet(const Envelope& e)
{
    e.expect(kind::kKey, role::kWallet);
    Bytes sk = detail::hex_field(e.fields, "sk");
    if (sk.size() != 32) throw Error(ErrorCode::kMalformedEncoding, "wallet key must be 32 bytes");
    auto v = trigger::SecpFn::from_canonical_checked(algebra::U256::from_be_bytes(sk));
    if (!v) throw Error(ErrorCode::kMalformedEncoding, "wallet key out of range");
    return trigger::ecdsa_keypair_from_secret(*v);
}

inline std::string address_field(const Json& f, std::string_view name)
{
    const auto& v = detail::field(f, name);
    if (!v.is_string()) throw Error(ErrorCode::kMalformedEncoding, "address must be a string");
    return v.get<std::string>();
}

// The signed transfer half of a trigger submission: M and sigE.
inline Envelope encode_transaction(const contract::Transaction& tx, const trigger::EcdsaSignature& sig)
{
    Envelope e{std::string(kind::kTransaction), std::string(role::kWallet)};
    e.fields["from"] = trigger::address_to_string(tx.from);
    e.fields["to"] = trigger::address_to_string(tx.to);
    e.fields["amount"] = tx.amount;
    e.fields["nonce"] = tx.nonce;
    e.fields["sigE"] = to_hex(sig.to_bytes());
    return e;
}

inline std::pair<contract::Transaction, trigger::EcdsaSignature> decode_transaction(const Envelope& e)
{
    e.expect(kind::kTransaction);
    contract::Transaction tx;
    try {
        tx.from = trigger::address_from_string(address_field(e.fields, "from"));
        tx.to = trigger::address_from_string(address_field(e.fields, "to"));
        tx.amount = detail::u64_field(e.fields, "amount");
        tx.nonce = detail::u64_field(e.fields, "nonce");
    } catch (const Error& err) {
        throw Error(ErrorCode::kMalformedTransaction, err.what());
    }
    auto sig = trigger::EcdsaSignature::from_bytes(detail::hex_field(e.fields, "sigE"));
    return {tx, sig};
}

// ---------------------------------------------------------------------------
// Contract state and receipts

template <class B>
Envelope encode_contract(const contract::ContractState<B>& st)
{
    Envelope e{std::string(kind::kContractState), std::string(role::kPublic)};
    auto& f = e.fields;
    f["phase"] = std::string(contract::phase_name(st.phase));
    f["m"] = to_hex(st.m);
    f["operator"] = trigger::address_to_string(st.operator_address);
    f["investor"] = trigger::address_to_string(st.investor_address);
    f["advance_required"] = st.advance_required;
    f["investment_amount"] = st.investment_amount;
    if (st.stored_sigma) {
        Json s = Json::object();
        put_sigma(s, *st.stored_sigma);
        f["sigma"] = s;
    } else {
        f["sigma"] = nullptr;
    }
    f["used_nonces"] = Json(std::vector<uint64_t>(st.used_nonces.begin(), st.used_nonces.end()));
    f["rejected_attempts"] = st.rejected_attempts;
    f["params"] = encode_params(st.par).fields;
    Json pkS = Json::object();
    put_signer_public(pkS, st.pkS);
    f["pkS"] = pkS;
    Json pkN = Json::object();
    put_nominee_public(pkN, st.pkN);
    f["pkN"] = pkN;
    return e;
}

template <class B>
contract::ContractState<B> decode_contract(const Envelope& e)
{
    e.expect(kind::kContractState);
    const auto& f = e.fields;
    contract::ContractState<B> st;
    const auto& phase = detail::field(f, "phase");
    bool found = false;
    for (auto p : {contract::Phase::kDeployed, contract::Phase::kAdvancePaid, contract::Phase::kSignatureStored,
                   contract::Phase::kExecuted}) {
        if (phase.is_string() && phase.get<std::string>() == contract::phase_name(p)) {
            st.phase = p;
            found = true;
        }
    }
    if (!found) throw Error(ErrorCode::kMalformedEncoding, "unknown contract phase");
    st.m = detail::hex_field(f, "m");
    st.operator_address = trigger::address_from_string(address_field(f, "operator"));
    st.investor_address = trigger::address_from_string(address_field(f, "investor"));
    st.advance_required = detail::u64_field(f, "advance_required");
    st.investment_amount = detail::u64_field(f, "investment_amount");
    const auto& sigma = detail::field(f, "sigma");
    if (!sigma.is_null()) st.stored_sigma = get_sigma<B>(sigma);
    if ((st.phase == contract::Phase::kSignatureStored || st.phase == contract::Phase::kExecuted) != st.stored_sigma.has_value())
        throw Error(ErrorCode::kMalformedEncoding, "stored signature inconsistent with phase");
    const auto& nonces = detail::field(f, "used_nonces");
    if (!nonces.is_array()) throw Error(ErrorCode::kMalformedEncoding, "used_nonces must be a list");
    for (const auto& n : nonces) {
        if (!n.is_number_unsigned()) throw Error(ErrorCode::kMalformedEncoding, "nonces must be integers");
        st.used_nonces.insert(n.get<uint64_t>());
    }
    st.rejected_attempts = detail::u64_field(f, "rejected_attempts");
    st.par = decode_params<B>(Envelope{std::string(kind::kParams), std::string(role::kPublic), detail::field(f, "params")});
    st.pkS = get_signer_public<B>(detail::field(f, "pkS"));
    st.pkN = get_nominee_public<B>(detail::field(f, "pkN"));
    B::G2::normalize(st.pkS.u);
    B::G2::normalize(st.pkN.uPrime);
    return st;
}

// Balances live in their own file so that operations which move no funds
// leave it untouched.
inline Envelope encode_ledger(const contract::WalletLedger& ledger)
{
    Envelope e{std::string(kind::kLedger), std::string(role::kPublic)};
    Json l = Json::object();
    for (const auto& [addr, bal] : ledger.balances()) l[trigger::address_to_string(addr)] = bal;
    e.fields["balances"] = l;
    return e;
}

inline contract::WalletLedger decode_ledger(const Envelope& e)
{
    e.expect(kind::kLedger);
    contract::WalletLedger ledger;
    const auto& l = detail::field(e.fields, "balances");
    if (!l.is_object()) throw Error(ErrorCode::kMalformedEncoding, "balances must be an object");
    for (const auto& [addr, bal] : l.items()) {
        if (!bal.is_number_unsigned()) throw Error(ErrorCode::kMalformedEncoding, "balances must be integers");
        ledger.credit(trigger::address_from_string(addr), bal.get<uint64_t>());
    }
    return ledger;
}

inline Envelope encode_receipt(const contract::ExecutionReceipt& rc)
{
    Envelope e{std::string(kind::kReceipt), std::string(role::kPublic)};
    auto& f = e.fields;
    f["verdict"] = rc.accept ? "accept" : "reject";
    f["token_valid"] = rc.token_valid;
    f["ecdsa_valid"] = rc.ecdsa_valid;
    f["gas"] = gas::to_json(rc.gas);
    if (rc.transfer) {
        f["transfer"] = {{"from", trigger::address_to_string(rc.transfer->from)},
                         {"to", trigger::address_to_string(rc.transfer->to)},
                         {"amount", rc.transfer->amount}};
    } else {
        f["transfer"] = nullptr;
    }
    return e;
}

}  // namespace nomsig::io

#endif  // NOMSIG_IO_HPP_
