// nomsig: command-line front end for the nominative-signature escrow flow.
//
// Exit codes: 0 success/accept, 1 reject, 2 malformed input.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "nomsig/contract.hpp"
#include "nomsig/gasmodel.hpp"
#include "nomsig/io.hpp"
#include "nomsig/scheme.hpp"
#include "nomsig/trigger/ecdsa.hpp"
#include "nomsig/zkproto.hpp"

namespace fs = std::filesystem;
using namespace nomsig;

namespace {

using B = algebra::RealBackend;

constexpr int kExitOk = 0;
constexpr int kExitReject = 1;
constexpr int kExitMalformed = 2;

int exit_code_for(ErrorCode c)
{
    switch (c) {
    case ErrorCode::kMalformedEncoding:
    case ErrorCode::kNotOnCurve:
    case ErrorCode::kNotInSubgroup:
    case ErrorCode::kUnsupportedSecurityLevel:
    case ErrorCode::kLengthMismatch:
    case ErrorCode::kMalformedTransaction:
    case ErrorCode::kUnknownSchemaVersion:
    case ErrorCode::kWrongArtifactKind:
        return kExitMalformed;
    default:
        return kExitReject;
    }
}

struct Options {
    std::optional<uint64_t> seed;
    std::string params = "params.json";
    std::string out;
    std::string public_out;
    std::string signer;
    std::string signer_pub;
    std::string nominee;
    std::string nominee_pub;
    std::string message;
    std::string message_file;
    std::string delta;
    std::string sigma;
    std::string token;
    std::string tx;
    std::string state;
    std::string wallet;
    std::string receipt;
    std::string receipt_out;
    std::string role;
    std::string transport_dir;
    std::string out_dir;
    std::string ledger;
    std::string cost_table;
    std::optional<uint64_t> gas_price;
    std::string operator_addr;
    std::string investor_addr;
    std::vector<std::string> fund;
    uint64_t advance = 0;
    uint64_t investment = 0;
    uint64_t amount = 0;
    uint64_t nonce = 0;
    uint64_t pairings = kTkVerifyPairings;
    uint64_t additions = 256;
    int security = kSecurityLevel;
    uint64_t timeout_ms = 120'000;
};

Rng make_rng(const Options& o, std::string_view label)
{
    Rng base = o.seed ? Rng(*o.seed) : Rng::from_os();
    return base.fork(label);
}

Bytes load_message(const Options& o)
{
    if (!o.message_file.empty()) {
        std::string text = io::read_text(o.message_file);
        return Bytes(text.begin(), text.end());
    }
    return to_bytes(o.message);
}

void require(const std::string& value, std::string_view flag)
{
    if (value.empty()) throw Error(ErrorCode::kMalformedEncoding, "missing required option " + std::string(flag));
}

PublicParams<B> load_params(const Options& o) { return io::decode_params<B>(io::read_envelope(o.params)); }

gas::CostTable load_cost_table(const Options& o)
{
    return o.cost_table.empty() ? gas::CostTable{} : gas::CostTable::load(o.cost_table);
}

void print_receipt(const contract::ExecutionReceipt& rc)
{
    std::cout << (rc.accept ? "accept" : "reject") << "\n";
    std::cout << "token=" << (rc.token_valid ? "valid" : "invalid") << " ecdsa=" << (rc.ecdsa_valid ? "valid" : "invalid")
              << "\n";
    std::cout << gas::format_report(rc.gas) << "\n";
    if (rc.transfer)
        std::cout << "transfer " << trigger::address_to_string(rc.transfer->from) << " -> "
                  << trigger::address_to_string(rc.transfer->to) << " amount=" << rc.transfer->amount << "\n";
}

// ---------------------------------------------------------------------------
// Scheme commands

int cmd_setup(const Options& o)
{
    auto par = setup<B>(o.security);
    io::write_envelope(o.out.empty() ? o.params : o.out, io::encode_params(par));
    return kExitOk;
}

int cmd_keygen_signer(const Options& o)
{
    require(o.out, "--out");
    auto par = load_params(o);
    auto rng = make_rng(o, "keygen-signer");
    auto keys = keygen_signer(par, rng);
    io::write_envelope(o.out, io::encode_signer(keys));
    if (!o.public_out.empty()) io::write_envelope(o.public_out, io::encode_signer_public(keys.pk));
    return kExitOk;
}

int cmd_keygen_nominee(const Options& o)
{
    require(o.out, "--out");
    auto par = load_params(o);
    auto rng = make_rng(o, "keygen-nominee");
    auto keys = keygen_nominee(par, rng);
    io::write_envelope(o.out, io::encode_nominee(keys));
    if (!o.public_out.empty()) io::write_envelope(o.public_out, io::encode_nominee_public(keys.pk));
    return kExitOk;
}

int cmd_keygen_wallet(const Options& o)
{
    require(o.out, "--out");
    auto rng = make_rng(o, "keygen-wallet");
    auto kp = trigger::ecdsa_keygen(rng);
    io::write_envelope(o.out, io::encode_wallet(kp));
    std::cout << trigger::address_to_string(trigger::address_of(kp.vk)) << "\n";
    return kExitOk;
}

int cmd_sign(const Options& o)
{
    require(o.signer, "--signer");
    require(o.nominee_pub, "--nominee-pub");
    require(o.out, "--out");
    auto par = load_params(o);
    auto signer = io::decode_signer<B>(io::read_envelope(o.signer));
    auto pkN = io::decode_nominee_public<B>(io::read_envelope(o.nominee_pub));
    auto rng = make_rng(o, "sign");
    auto delta = sign(par, pkN, load_message(o), signer, rng);
    io::write_envelope(o.out, io::encode_delta(delta));
    return kExitOk;
}

int cmd_receive(const Options& o)
{
    require(o.signer_pub, "--signer-pub");
    require(o.nominee, "--nominee");
    require(o.delta, "--delta");
    require(o.out, "--out");
    auto par = load_params(o);
    auto pkS = io::decode_signer_public<B>(io::read_envelope(o.signer_pub));
    auto nominee = io::decode_nominee<B>(io::read_envelope(o.nominee));
    auto delta = io::decode_delta<B>(io::read_envelope(o.delta));
    auto rng = make_rng(o, "receive");
    auto sigma = receive(par, pkS, load_message(o), delta, nominee, rng);
    if (!sigma) {
        std::cout << "reject: delta does not verify\n";
        return kExitReject;
    }
    io::write_envelope(o.out, io::encode_sigma(*sigma));
    std::cout << "accept\n";
    return kExitOk;
}

int cmd_convert(const Options& o)
{
    require(o.signer_pub, "--signer-pub");
    require(o.nominee, "--nominee");
    require(o.sigma, "--sigma");
    require(o.out, "--out");
    auto par = load_params(o);
    auto pkS = io::decode_signer_public<B>(io::read_envelope(o.signer_pub));
    auto nominee = io::decode_nominee<B>(io::read_envelope(o.nominee));
    auto sigma = io::decode_sigma<B>(io::read_envelope(o.sigma));
    auto tk = convert(par, pkS, load_message(o), sigma, nominee);
    if (!tk) {
        std::cout << "reject: signature does not verify under the nominee key\n";
        return kExitReject;
    }
    io::write_envelope(o.out, io::encode_token(*tk));
    std::cout << "accept\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// Interactive protocols over a directory of numbered message files

class FileTransport {
public:
    FileTransport(fs::path dir, std::string protocol, std::chrono::milliseconds timeout)
        : dir_(std::move(dir)), protocol_(std::move(protocol)), timeout_(timeout)
    {
    }

    fs::path path(zk::Pass p) const
    {
        auto idx = static_cast<int>(p);
        return dir_ / ("0" + std::to_string(idx) + "-" + std::string(zk::pass_name(p)) + ".json");
    }

    // Removes messages from an earlier session.
    void reset() const
    {
        fs::create_directories(dir_);
        for (auto p : {zk::Pass::kCommitment, zk::Pass::kFirstMessage, zk::Pass::kOpening, zk::Pass::kResponse,
                       zk::Pass::kVerdict})
            fs::remove(path(p));
    }

    void send(zk::Pass p, std::string_view role, io::Json extra) const
    {
        io::Envelope e{std::string(io::kind::kTranscriptMsg), std::string(role)};
        e.fields["session_id"] = session_;
        e.fields["protocol"] = protocol_;
        e.fields["pass_index"] = static_cast<int>(p);
        for (auto& [k, v] : extra.items()) e.fields[k] = v;
        io::write_envelope(path(p), e);
    }

    void send_payload(zk::Pass p, std::string_view role, const Bytes& payload) const
    {
        send(p, role, io::Json{{"payload", to_hex(payload)}});
    }

    // Waits for the first of `passes` to appear and returns it.
    std::pair<zk::Pass, io::Envelope> receive_any(std::initializer_list<zk::Pass> passes)
    {
        auto deadline = std::chrono::steady_clock::now() + timeout_;
        for (;;) {
            for (auto p : passes) {
                if (!fs::exists(path(p))) continue;
                auto e = io::read_envelope(path(p));
                e.expect(io::kind::kTranscriptMsg);
                const auto& f = e.fields;
                if (!f.contains("protocol") || f["protocol"] != protocol_)
                    throw Error(ErrorCode::kMalformedEncoding, "message belongs to a different protocol");
                if (!f.contains("pass_index") || f["pass_index"] != static_cast<int>(p))
                    throw Error(ErrorCode::kMalformedEncoding, "message pass index mismatch");
                if (!f.contains("session_id") || !f["session_id"].is_string())
                    throw Error(ErrorCode::kMalformedEncoding, "message lacks a session id");
                if (session_.empty()) session_ = f["session_id"].get<std::string>();
                if (f["session_id"] != session_) throw Error(ErrorCode::kMalformedEncoding, "session id mismatch");
                return {p, e};
            }
            if (std::chrono::steady_clock::now() >= deadline)
                throw Error(ErrorCode::kProtocolOrder, "timed out waiting for the peer");
            std::this_thread::sleep_for(std::chrono::milliseconds(10));
        }
    }

    Bytes receive_payload(zk::Pass p)
    {
        auto [_, e] = receive_any({p});
        return io::detail::hex_field(e.fields, "payload");
    }

    void set_session(std::string s) { session_ = std::move(s); }

private:
    fs::path dir_;
    std::string protocol_;
    std::chrono::milliseconds timeout_;
    std::string session_;
};

template <class Prover, class First, class Response>
int run_prover(FileTransport& t, Prover& prover, std::string_view name)
{
    auto com = zk::Commitment<B>::from_bytes(t.receive_payload(zk::Pass::kCommitment));
    t.send_payload(zk::Pass::kFirstMessage, io::role::kProver, prover.first_message(com).to_bytes());
    auto [pass, env] = t.receive_any({zk::Pass::kOpening, zk::Pass::kVerdict});
    if (pass == zk::Pass::kOpening) {
        auto opening = zk::Opening::from_bytes(io::detail::hex_field(env.fields, "payload"));
        try {
            t.send_payload(zk::Pass::kResponse, io::role::kProver, prover.respond(opening).to_bytes());
        } catch (const Error& e) {
            if (e.code() != ErrorCode::kAbortBadOpening) throw;
            t.send(zk::Pass::kResponse, io::role::kProver, io::Json{{"abort", true}});
            std::cout << name << " prover: abort (" << e.what() << ")\n";
            return kExitReject;
        }
        env = t.receive_any({zk::Pass::kVerdict}).second;
    }
    bool accept = io::detail::field(env.fields, "verdict") == "accept";
    std::cout << name << " prover: verdict " << (accept ? "accept" : "reject") << "\n";
    return accept ? kExitOk : kExitReject;
}

template <class First, class Response>
int run_verifier(FileTransport& t, zk::Verifier<B, First, Response>& verifier, Rng& rng, std::string_view name)
{
    std::array<uint8_t, 16> sid;
    rng.fill(sid);
    t.reset();
    t.set_session(to_hex(sid));
    t.send_payload(zk::Pass::kCommitment, io::role::kVerifier, verifier.commitment().to_bytes());
    auto first = First::from_bytes(t.receive_payload(zk::Pass::kFirstMessage));
    bool accept = false;
    if (auto opening = verifier.receive_first(first)) {
        t.send_payload(zk::Pass::kOpening, io::role::kVerifier, opening->to_bytes());
        auto [_, env] = t.receive_any({zk::Pass::kResponse});
        if (env.fields.contains("abort")) {
            std::cout << name << " verifier: prover aborted\n";
        } else {
            accept = verifier.decide(Response::from_bytes(io::detail::hex_field(env.fields, "payload")));
        }
    }
    t.send(zk::Pass::kVerdict, io::role::kVerifier, io::Json{{"verdict", accept ? "accept" : "reject"}});
    std::cout << name << " verifier: verdict " << (accept ? "accept" : "reject") << "\n";
    return accept ? kExitOk : kExitReject;
}

int cmd_protocol(const Options& o, bool disavow)
{
    const std::string name = disavow ? "disavow" : "confirm";
    require(o.transport_dir, "--transport-dir");
    require(o.signer_pub, "--signer-pub");
    require(o.sigma, "--sigma");
    auto par = load_params(o);
    auto pkS = io::decode_signer_public<B>(io::read_envelope(o.signer_pub));
    auto sigma = io::decode_sigma<B>(io::read_envelope(o.sigma));
    Bytes m = load_message(o);
    FileTransport t(o.transport_dir, name, std::chrono::milliseconds(o.timeout_ms));
    auto rng = make_rng(o, name + "-" + o.role);

    if (o.role == io::role::kProver) {
        require(o.nominee, "--nominee");
        auto nominee = io::decode_nominee<B>(io::read_envelope(o.nominee));
        auto st = zk::derive_statement(par, pkS, nominee.pk, m, sigma);
        if (disavow) {
            zk::DisavowProver<B> p(st, nominee.sk.y1, nominee.sk.y2, rng);
            return run_prover<zk::DisavowProver<B>, zk::DisavowFirst<B>, zk::DisavowResponse>(t, p, name);
        }
        zk::ConfirmProver<B> p(st, nominee.sk.y1, nominee.sk.y2, rng);
        return run_prover<zk::ConfirmProver<B>, zk::ConfirmFirst<B>, zk::ConfirmResponse>(t, p, name);
    }
    if (o.role == io::role::kVerifier) {
        const std::string& key = o.nominee_pub.empty() ? o.nominee : o.nominee_pub;
        require(key, "--nominee-pub");
        auto pkN = io::decode_nominee_public<B>(io::read_envelope(key));
        auto st = zk::derive_statement(par, pkS, pkN, m, sigma);
        if (disavow) {
            zk::DisavowVerifier<B> v(st, rng);
            return run_verifier(t, v, rng, name);
        }
        zk::ConfirmVerifier<B> v(st, rng);
        return run_verifier(t, v, rng, name);
    }
    throw Error(ErrorCode::kMalformedEncoding, "--role must be prover or verifier");
}

// ---------------------------------------------------------------------------
// Contract commands

// The ledger defaults to a sibling of the state file: state.json pairs
// with state.ledger.json.
fs::path ledger_path_for(const fs::path& state) { return fs::path(state).replace_extension(".ledger.json"); }

fs::path ledger_path(const Options& o) { return o.ledger.empty() ? ledger_path_for(o.state) : fs::path(o.ledger); }

struct LoadedContract {
    contract::ContractState<B> st;
    contract::WalletLedger ledger;
    std::optional<contract::WalletLedger> loaded_ledger;
};

LoadedContract load_contract(const Options& o)
{
    require(o.state, "--state");
    auto st = io::decode_contract<B>(io::read_envelope(o.state));
    auto ledger = io::decode_ledger(io::read_envelope(ledger_path(o)));
    return {std::move(st), ledger, ledger};
}

// The ledger file is rewritten only when balances moved.
void save_contract(const Options& o, const LoadedContract& c)
{
    io::write_envelope(o.state, io::encode_contract(c.st));
    if (c.ledger != c.loaded_ledger) io::write_envelope(ledger_path(o), io::encode_ledger(c.ledger));
}

int cmd_deploy(const Options& o)
{
    require(o.signer_pub, "--signer-pub");
    require(o.nominee_pub, "--nominee-pub");
    require(o.operator_addr, "--operator");
    require(o.investor_addr, "--investor");
    require(o.state, "--state");
    auto par = load_params(o);
    auto pkS = io::decode_signer_public<B>(io::read_envelope(o.signer_pub));
    auto pkN = io::decode_nominee_public<B>(io::read_envelope(o.nominee_pub));
    LoadedContract c{contract::deploy(load_message(o), trigger::address_from_string(o.operator_addr),
                                      trigger::address_from_string(o.investor_addr), pkS, pkN, par, o.advance,
                                      o.investment),
                     {},
                     std::nullopt};
    c.ledger.credit(c.st.operator_address, 0);
    c.ledger.credit(c.st.investor_address, 0);
    for (const auto& entry : o.fund) {
        auto eq = entry.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::kMalformedEncoding, "--fund expects ADDRESS=AMOUNT");
        uint64_t amount = 0;
        try {
            amount = std::stoull(entry.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error(ErrorCode::kMalformedEncoding, "--fund amount must be an integer");
        }
        c.ledger.credit(trigger::address_from_string(entry.substr(0, eq)), amount);
    }
    save_contract(o, c);
    std::cout << "deployed phase=" << contract::phase_name(c.st.phase) << "\n";
    return kExitOk;
}

int cmd_pay_advance(const Options& o)
{
    auto c = load_contract(o);
    contract::pay_advance(c.st, c.ledger, o.amount);
    save_contract(o, c);
    std::cout << "phase=" << contract::phase_name(c.st.phase) << "\n";
    return kExitOk;
}

int cmd_store_sig(const Options& o)
{
    require(o.sigma, "--sigma");
    auto c = load_contract(o);
    contract::store_signature(c.st, io::decode_sigma<B>(io::read_envelope(o.sigma)));
    save_contract(o, c);
    std::cout << "phase=" << contract::phase_name(c.st.phase) << "\n";
    return kExitOk;
}

int cmd_sign_tx(const Options& o)
{
    require(o.wallet, "--wallet");
    require(o.out, "--out");
    auto c = load_contract(o);
    auto kp = io::decode_wallet(io::read_envelope(o.wallet));
    contract::Transaction tx{trigger::address_of(kp.vk), c.st.operator_address, c.st.investment_amount, o.nonce};
    auto sig = trigger::ecdsa_sign(kp.sk, tx.to_bytes());
    io::write_envelope(o.out, io::encode_transaction(tx, sig));
    return kExitOk;
}

int cmd_trigger(const Options& o)
{
    require(o.token, "--token");
    require(o.tx, "--tx");
    auto c = load_contract(o);
    auto tk = io::decode_token<B>(io::read_envelope(o.token));
    auto [tx, sig] = io::decode_transaction(io::read_envelope(o.tx));
    auto rc = contract::submit_trigger(c.st, c.ledger, {tk, tx, sig}, load_cost_table(o), o.gas_price);
    save_contract(o, c);
    if (!o.receipt_out.empty()) io::write_envelope(o.receipt_out, io::encode_receipt(rc));
    print_receipt(rc);
    return rc.accept ? kExitOk : kExitReject;
}

int cmd_query_state(const Options& o)
{
    auto c = load_contract(o);
    auto v = contract::query_state(c.st);
    io::Json j;
    j["phase"] = std::string(contract::phase_name(v.phase));
    j["m"] = to_hex(v.m);
    j["sigma"] = v.sigma ? io::Json(to_hex(*v.sigma)) : io::Json(nullptr);
    j["operator"] = trigger::address_to_string(v.operator_address);
    j["investor"] = trigger::address_to_string(v.investor_address);
    j["advance_required"] = v.advance_required;
    j["investment_amount"] = v.investment_amount;
    j["rejected_attempts"] = v.rejected_attempts;
    io::Json balances = io::Json::object();
    for (const auto& [addr, bal] : c.ledger.balances()) balances[trigger::address_to_string(addr)] = bal;
    j["balances"] = balances;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_report_gas(const Options& o)
{
    gas::OpCounts counts{o.pairings, o.additions};
    if (!o.receipt.empty()) {
        auto e = io::read_envelope(o.receipt);
        e.expect(io::kind::kReceipt);
        const auto& g = io::detail::field(e.fields, "gas");
        counts.pairing_pairs = io::detail::u64_field(g, "pairings");
        counts.ec_additions = io::detail::u64_field(g, "ec_additions");
        counts.unpriced_scalar_muls = io::detail::u64_field(g, "unpriced_scalar_muls");
        counts.unpriced_additions = io::detail::u64_field(g, "unpriced_additions");
    }
    auto table = load_cost_table(o);
    auto report = gas::make_report(counts, table, o.gas_price.value_or(gas::kDefaultGasPriceWei));
    auto ratio = gas::ratio_vs_ecrecover(report);
    std::cout << gas::format_report(report) << "\n";
    std::cout << "ratio_vs_ecrecover=" << ratio.num << "/" << ratio.den << " (" << ratio.to_double() << ")\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// Demo: the whole honest pipeline in one process

int cmd_demo(const Options& o)
{
    Rng rng = make_rng(o, "demo");
    const Bytes m = o.message.empty() && o.message_file.empty() ? to_bytes("investment program v1: solar farm")
                                                                : load_message(o);
    auto par = setup<B>(kSecurityLevel);
    auto signer = keygen_signer(par, rng);
    auto nominee = keygen_nominee(par, rng);
    auto operator_wallet = trigger::ecdsa_keygen(rng);
    auto investor_wallet = trigger::ecdsa_keygen(rng);
    auto op_addr = trigger::address_of(operator_wallet.vk);
    auto inv_addr = trigger::address_of(investor_wallet.vk);
    std::cout << "operator " << trigger::address_to_string(op_addr) << "\n";
    std::cout << "investor " << trigger::address_to_string(inv_addr) << "\n";

    contract::WalletLedger ledger;
    ledger.credit(op_addr, 0);
    ledger.credit(inv_addr, 1'000);
    auto st = contract::deploy(m, op_addr, inv_addr, signer.pk, nominee.pk, par, 100, 500);
    contract::pay_advance(st, ledger, 100);
    std::cout << "step 1 advance paid, phase=" << contract::phase_name(st.phase) << "\n";

    auto delta = sign(par, nominee.pk, m, signer, rng);
    std::cout << "step 2 delta issued\n";
    auto sigma = receive(par, signer.pk, m, delta, nominee, rng);
    if (!sigma) {
        std::cout << "reject\n";
        return kExitReject;
    }
    contract::store_signature(st, *sigma);
    std::cout << "step 3 signature stored, phase=" << contract::phase_name(st.phase) << "\n";
    const fs::path dir = o.out_dir;
    if (!o.out_dir.empty()) {
        fs::create_directories(dir);
        io::write_text_atomic(dir / "message.txt", std::string(m.begin(), m.end()));
        io::write_envelope(dir / "params.json", io::encode_params(par));
        io::write_envelope(dir / "signer.json", io::encode_signer(signer));
        io::write_envelope(dir / "signer.pub.json", io::encode_signer_public(signer.pk));
        io::write_envelope(dir / "nominee.json", io::encode_nominee(nominee));
        io::write_envelope(dir / "nominee.pub.json", io::encode_nominee_public(nominee.pk));
        io::write_envelope(dir / "operator-wallet.json", io::encode_wallet(operator_wallet));
        io::write_envelope(dir / "investor-wallet.json", io::encode_wallet(investor_wallet));
        io::write_envelope(dir / "delta.json", io::encode_delta(delta));
        io::write_envelope(dir / "sigma.json", io::encode_sigma(*sigma));
        // The contract armed and waiting for a trigger.
        io::write_envelope(dir / "armed-state.json", io::encode_contract(st));
        io::write_envelope(ledger_path_for(dir / "armed-state.json"), io::encode_ledger(ledger));
    }

    auto statement = zk::derive_statement(par, signer.pk, nominee.pk, m, *sigma);
    auto confirm = zk::run_confirm(statement, nominee.sk, rng);
    std::cout << "step 4 confirm " << (confirm.accept ? "accept" : "reject") << "\n";

    auto tk = convert(par, signer.pk, m, *sigma, nominee);
    if (!tk) {
        std::cout << "reject\n";
        return kExitReject;
    }
    contract::Transaction tx{inv_addr, op_addr, st.investment_amount, 0};
    auto sigE = trigger::ecdsa_sign(investor_wallet.sk, tx.to_bytes());
    std::cout << "step 5 token and transfer submitted\n";
    if (!o.out_dir.empty()) {
        io::write_envelope(dir / "token.json", io::encode_token(*tk));
        io::write_envelope(dir / "tx.json", io::encode_transaction(tx, sigE));
    }
    auto rc = contract::submit_trigger(st, ledger, {*tk, tx, sigE}, load_cost_table(o),
                                       o.gas_price.value_or(gas::kDefaultGasPriceWei));
    std::cout << "step 6 ";
    print_receipt(rc);
    if (!o.out_dir.empty()) {
        io::write_envelope(dir / "state.json", io::encode_contract(st));
        io::write_envelope(ledger_path_for(dir / "state.json"), io::encode_ledger(ledger));
        io::write_envelope(dir / "receipt.json", io::encode_receipt(rc));
    }
    std::cout << "balances operator=" << ledger.balance_of(op_addr) << " investor=" << ledger.balance_of(inv_addr)
              << "\n";
    return rc.accept && confirm.accept ? kExitOk : kExitReject;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Nominative-signature investment escrow"};
    app.require_subcommand(1);
    Options o;

    auto seed = [&](CLI::App* s) {
        s->add_option("--seed", o.seed, "Deterministic randomness seed");
    };
    auto params = [&](CLI::App* s) { s->add_option("--params", o.params, "Public parameters file"); };
    auto message = [&](CLI::App* s) {
        s->add_option("--message", o.message, "Message (program source) as a literal string");
        s->add_option("--message-file", o.message_file, "Message read from a file");
    };
    auto gas_opts = [&](CLI::App* s) {
        s->add_option("--cost-table", o.cost_table, "JSON cost table overriding the defaults");
        s->add_option("--gas-price", o.gas_price, "Gas price in wei");
    };

    std::map<CLI::App*, std::function<int(const Options&)>> handlers;
    auto sub = [&](const char* name, const char* desc, std::function<int(const Options&)> fn) {
        auto* s = app.add_subcommand(name, desc);
        handlers[s] = std::move(fn);
        return s;
    };

    auto* s_setup = sub("setup", "Write public parameters", cmd_setup);
    s_setup->add_option("--security", o.security, "Security level in bits");
    s_setup->add_option("--out", o.out, "Output file (default: --params)");
    params(s_setup);

    for (auto [name, fn] : {std::pair{"keygen-signer", &cmd_keygen_signer}, std::pair{"keygen-nominee", &cmd_keygen_nominee}}) {
        auto* s = sub(name, "Generate a key pair", fn);
        params(s);
        seed(s);
        s->add_option("--out", o.out, "Full key file");
        s->add_option("--public-out", o.public_out, "Public key file");
    }

    auto* s_wallet = sub("keygen-wallet", "Generate a secp256k1 wallet", cmd_keygen_wallet);
    seed(s_wallet);
    s_wallet->add_option("--out", o.out, "Wallet file");

    auto* s_sign = sub("sign", "Signer: issue delta for a nominee", cmd_sign);
    params(s_sign);
    seed(s_sign);
    message(s_sign);
    s_sign->add_option("--signer", o.signer, "Signer key file");
    s_sign->add_option("--nominee-pub", o.nominee_pub, "Nominee public key file");
    s_sign->add_option("--out", o.out, "Delta output file");

    auto* s_recv = sub("receive", "Nominee: turn delta into a nominative signature", cmd_receive);
    params(s_recv);
    seed(s_recv);
    message(s_recv);
    s_recv->add_option("--signer-pub", o.signer_pub, "Signer public key file");
    s_recv->add_option("--nominee", o.nominee, "Nominee key file");
    s_recv->add_option("--delta", o.delta, "Delta file");
    s_recv->add_option("--out", o.out, "Signature output file");

    auto* s_conv = sub("convert", "Nominee: produce a verification token", cmd_convert);
    params(s_conv);
    message(s_conv);
    s_conv->add_option("--signer-pub", o.signer_pub, "Signer public key file");
    s_conv->add_option("--nominee", o.nominee, "Nominee key file");
    s_conv->add_option("--sigma", o.sigma, "Signature file");
    s_conv->add_option("--out", o.out, "Token output file");

    for (bool disavow : {false, true}) {
        auto* s = sub(disavow ? "disavow" : "confirm",
                      disavow ? "Interactive disavowal of a signature" : "Interactive confirmation of a signature",
                      [disavow](const Options& opts) { return cmd_protocol(opts, disavow); });
        params(s);
        seed(s);
        message(s);
        s->add_option("--role", o.role, "prover or verifier")->required();
        s->add_option("--transport-dir", o.transport_dir, "Directory for exchanged message files")->required();
        s->add_option("--signer-pub", o.signer_pub, "Signer public key file");
        s->add_option("--nominee", o.nominee, "Nominee key file (prover)");
        s->add_option("--nominee-pub", o.nominee_pub, "Nominee public key file (verifier)");
        s->add_option("--sigma", o.sigma, "Signature file");
        s->add_option("--timeout-ms", o.timeout_ms, "How long to wait for the peer");
    }

    auto* s_deploy = sub("deploy", "Deploy the escrow contract", cmd_deploy);
    params(s_deploy);
    message(s_deploy);
    s_deploy->add_option("--signer-pub", o.signer_pub, "Signer public key file");
    s_deploy->add_option("--nominee-pub", o.nominee_pub, "Nominee public key file");
    s_deploy->add_option("--operator", o.operator_addr, "Operator address");
    s_deploy->add_option("--investor", o.investor_addr, "Investor address");
    s_deploy->add_option("--advance", o.advance, "Required advance payment");
    s_deploy->add_option("--investment", o.investment, "Investment amount");
    s_deploy->add_option("--fund", o.fund, "Initial balance ADDRESS=AMOUNT (repeatable)");
    s_deploy->add_option("--state", o.state, "Contract state file to create");
    s_deploy->add_option("--ledger", o.ledger, "Ledger file (default: <state>.ledger.json)");

    auto* s_pay = sub("pay-advance", "Investor pays the advance", cmd_pay_advance);
    s_pay->add_option("--state", o.state, "Contract state file");
    s_pay->add_option("--ledger", o.ledger, "Ledger file (default: <state>.ledger.json)");
    s_pay->add_option("--amount", o.amount, "Amount paid");

    auto* s_store = sub("store-sig", "Store the nominative signature in the contract", cmd_store_sig);
    s_store->add_option("--state", o.state, "Contract state file");
    s_store->add_option("--ledger", o.ledger, "Ledger file (default: <state>.ledger.json)");
    s_store->add_option("--sigma", o.sigma, "Signature file");

    auto* s_tx = sub("sign-tx", "Investor signs the transfer transaction", cmd_sign_tx);
    s_tx->add_option("--state", o.state, "Contract state file");
    s_tx->add_option("--ledger", o.ledger, "Ledger file (default: <state>.ledger.json)");
    s_tx->add_option("--wallet", o.wallet, "Investor wallet file");
    s_tx->add_option("--nonce", o.nonce, "Transaction nonce");
    s_tx->add_option("--out", o.out, "Transaction output file");

    auto* s_trig = sub("trigger", "Submit token and transaction to the contract", cmd_trigger);
    s_trig->add_option("--state", o.state, "Contract state file");
    s_trig->add_option("--ledger", o.ledger, "Ledger file (default: <state>.ledger.json)");
    s_trig->add_option("--token", o.token, "Token file");
    s_trig->add_option("--tx", o.tx, "Signed transaction file");
    s_trig->add_option("--receipt-out", o.receipt_out, "Receipt output file");
    gas_opts(s_trig);

    auto* s_query = sub("query-state", "Print the public contract view", cmd_query_state);
    s_query->add_option("--state", o.state, "Contract state file");
    s_query->add_option("--ledger", o.ledger, "Ledger file (default: <state>.ledger.json)");

    auto* s_gas = sub("report-gas", "Price a verification", cmd_report_gas);
    s_gas->add_option("--receipt", o.receipt, "Take operation counts from a receipt");
    s_gas->add_option("--pairings", o.pairings, "Pairs in the pairing-check call");
    s_gas->add_option("--additions", o.additions, "EC additions");
    gas_opts(s_gas);

    auto* s_demo = sub("demo", "Run the full honest pipeline", cmd_demo);
    seed(s_demo);
    message(s_demo);
    gas_opts(s_demo);
    s_demo->add_option("--out-dir", o.out_dir, "Write every artifact of the run to this directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitMalformed;
    }

    for (auto& [cmd, fn] : handlers) {
        if (!cmd->parsed()) continue;
        try {
            return fn(o);
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return exit_code_for(e.code());
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitMalformed;
        }
    }
    return kExitMalformed;
}
