// Drives the built nomsig binary as separate processes.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Proc {
    int code = -1;
    std::string out;
};

Proc run(const std::string& args)
{
    std::string cmd = std::string(NOMSIG_CLI_PATH) + " " + args + " 2>&1";
    Proc r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

fs::path fresh_dir(const std::string& name)
{
    auto d = fs::temp_directory_path() / ("nomsig_cli_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

// One demo run shared by the tests that consume its artifacts.
const fs::path& demo_dir()
{
    static const fs::path d = [] {
        auto dir = fresh_dir("demo");
        Proc r = run("demo --seed 42 --out-dir " + q(dir));
        if (r.code != 0) throw std::runtime_error("demo failed: " + r.out);
        return dir;
    }();
    return d;
}

TEST(Cli, DemoAcceptsWithEightPairings)
{
    Proc r = run("demo --seed 42");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("step 6 accept\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("pairings=8"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("balances operator=600 investor=400"), std::string::npos) << r.out;
}

TEST(Cli, DemoIsDeterministicGivenSeed)
{
    EXPECT_EQ(run("demo --seed 5").out, run("demo --seed 5").out);
    EXPECT_NE(run("demo --seed 5").out, run("demo --seed 6").out);
}

TEST(Cli, TamperedTokenTriggerLeavesLedgerUnchanged)
{
    auto src = demo_dir();
    auto d = fresh_dir("tamper");
    fs::copy_file(src / "armed-state.json", d / "state.json");
    fs::copy_file(src / "armed-state.ledger.json", d / "state.ledger.json");

    // Swap tk1 for another valid G1 point: still well formed, no longer valid.
    auto tok = nlohmann::json::parse(slurp(src / "token.json"));
    auto sig = nlohmann::json::parse(slurp(src / "sigma.json"));
    tok["fields"]["tk1"] = sig["fields"]["s1"];
    spit(d / "token.json", tok.dump());

    std::string ledger_before = slurp(d / "state.ledger.json");
    Proc r = run("trigger --state " + q(d / "state.json") + " --token " + q(d / "token.json") + " --tx " +
                q(src / "tx.json"));
    EXPECT_EQ(r.code, 1) << r.out;
    EXPECT_NE(r.out.find("reject"), std::string::npos);
    EXPECT_EQ(slurp(d / "state.ledger.json"), ledger_before);

    // The contract stays armed: the honest token still goes through, with a
    // fresh nonce since the first attempt consumed it.
    Proc tx = run("sign-tx --state " + q(d / "state.json") + " --wallet " + q(src / "investor-wallet.json") +
                 " --nonce 1 --out " + q(d / "tx1.json"));
    ASSERT_EQ(tx.code, 0) << tx.out;
    Proc ok = run("trigger --state " + q(d / "state.json") + " --token " + q(src / "token.json") + " --tx " +
                 q(d / "tx1.json"));
    EXPECT_EQ(ok.code, 0) << ok.out;
    EXPECT_NE(slurp(d / "state.ledger.json"), ledger_before);

    Proc replay = run("trigger --state " + q(d / "state.json") + " --token " + q(src / "token.json") + " --tx " +
                     q(d / "tx1.json"));
    EXPECT_EQ(replay.code, 1) << replay.out;
}

// Starts the verifier in the background, runs the prover, then collects
// both logs.
std::pair<Proc, Proc> two_process(const std::string& protocol, const fs::path& sigma)
{
    auto src = demo_dir();
    auto t = fresh_dir(protocol + "_transport");
    std::string common = " --params " + q(src / "params.json") + " --signer-pub " + q(src / "signer.pub.json") +
                         " --sigma " + q(sigma) + " --message-file " + q(src / "message.txt") +
                         " --transport-dir " + q(t) + " --timeout-ms 60000";
    std::string vcmd = std::string(NOMSIG_CLI_PATH) + " " + protocol + " --role verifier --seed 1 --nominee-pub " +
                       q(src / "nominee.pub.json") + common + " 2>&1";
    FILE* vp = popen(vcmd.c_str(), "r");
    Proc prover = run(protocol + " --role prover --seed 2 --nominee " + q(src / "nominee.json") + common);
    Proc verifier;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, vp)) > 0) verifier.out.append(buf, n);
    int status = pclose(vp);
    verifier.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {prover, verifier};
}

TEST(Cli, TwoProcessConfirmAccepts)
{
    auto [prover, verifier] = two_process("confirm", demo_dir() / "sigma.json");
    EXPECT_EQ(prover.code, 0) << prover.out;
    EXPECT_EQ(verifier.code, 0) << verifier.out;
    EXPECT_NE(prover.out.find("confirm prover: verdict accept"), std::string::npos) << prover.out;
    EXPECT_NE(verifier.out.find("confirm verifier: verdict accept"), std::string::npos) << verifier.out;
}

TEST(Cli, TwoProcessDisavowOfInvalidSignatureAccepts)
{
    auto d = fresh_dir("disavow");
    auto sig = nlohmann::json::parse(slurp(demo_dir() / "sigma.json"));
    sig["fields"]["s"] = std::string(63, '0') + "1";
    spit(d / "bad-sigma.json", sig.dump());
    auto [prover, verifier] = two_process("disavow", d / "bad-sigma.json");
    EXPECT_EQ(prover.code, 0) << prover.out;
    EXPECT_EQ(verifier.code, 0) << verifier.out;
    EXPECT_NE(verifier.out.find("disavow verifier: verdict accept"), std::string::npos) << verifier.out;
}

TEST(Cli, TwoProcessDisavowOfValidSignatureRejects)
{
    auto [prover, verifier] = two_process("disavow", demo_dir() / "sigma.json");
    EXPECT_EQ(prover.code, 1) << prover.out;
    EXPECT_EQ(verifier.code, 1) << verifier.out;
}

TEST(Cli, MalformedInputExitsTwo)
{
    auto d = fresh_dir("malformed");
    spit(d / "garbage.json", "{ not json");
    auto src = demo_dir();
    EXPECT_EQ(run("trigger --state " + q(src / "armed-state.json") + " --token " + q(d / "garbage.json") + " --tx " +
                  q(src / "tx.json"))
                  .code,
              2);
    auto tok = nlohmann::json::parse(slurp(src / "token.json"));
    tok["schema_version"] = 99;
    spit(d / "future.json", tok.dump());
    EXPECT_EQ(run("trigger --state " + q(src / "armed-state.json") + " --token " + q(d / "future.json") + " --tx " +
                  q(src / "tx.json"))
                  .code,
              2);
    tok = nlohmann::json::parse(slurp(src / "token.json"));
    tok["fields"]["tk1"] = std::string(64, 'f');
    spit(d / "badpoint.json", tok.dump());
    EXPECT_EQ(run("trigger --state " + q(src / "armed-state.json") + " --token " + q(d / "badpoint.json") +
                  " --tx " + q(src / "tx.json"))
                  .code,
              2);
    // A sigma file where a token is expected.
    EXPECT_EQ(run("trigger --state " + q(src / "armed-state.json") + " --token " + q(src / "sigma.json") + " --tx " +
                  q(src / "tx.json"))
                  .code,
              2);
    EXPECT_EQ(run("setup --security 80 --out " + q(d / "p.json")).code, 2);
    EXPECT_EQ(run("no-such-command").code, 2);
}

TEST(Cli, FullPipelineThroughSubcommands)
{
    auto d = fresh_dir("pipeline");
    auto f = [&](const char* name) { return q(d / name); };
    std::string par = " --params " + f("params.json");
    std::string msg = " --message 'fund the wind farm'";
    auto ok = [](const Proc& r) {
        EXPECT_EQ(r.code, 0) << r.out;
        return r;
    };

    ok(run("setup --out " + f("params.json")));
    ok(run("keygen-signer --seed 1" + par + " --out " + f("signer.json") + " --public-out " + f("signer.pub.json")));
    ok(run("keygen-nominee --seed 2" + par + " --out " + f("nominee.json") + " --public-out " +
           f("nominee.pub.json")));
    std::string op = ok(run("keygen-wallet --seed 3 --out " + f("op.json"))).out;
    std::string inv = ok(run("keygen-wallet --seed 4 --out " + f("inv.json"))).out;
    op.erase(op.find_last_not_of('\n') + 1);
    inv.erase(inv.find_last_not_of('\n') + 1);

    ok(run("sign --seed 5" + par + msg + " --signer " + f("signer.json") + " --nominee-pub " + f("nominee.pub.json") +
           " --out " + f("delta.json")));
    ok(run("receive --seed 6" + par + msg + " --signer-pub " + f("signer.pub.json") + " --nominee " +
           f("nominee.json") + " --delta " + f("delta.json") + " --out " + f("sigma.json")));
    ok(run("convert" + par + msg + " --signer-pub " + f("signer.pub.json") + " --nominee " + f("nominee.json") +
           " --sigma " + f("sigma.json") + " --out " + f("token.json")));

    ok(run("deploy" + par + msg + " --signer-pub " + f("signer.pub.json") + " --nominee-pub " + f("nominee.pub.json") +
           " --operator " + op + " --investor " + inv + " --advance 10 --investment 50 --fund " + inv +
           "=100 --state " + f("state.json")));
    ok(run("pay-advance --state " + f("state.json") + " --amount 10"));
    ok(run("store-sig --state " + f("state.json") + " --sigma " + f("sigma.json")));
    ok(run("sign-tx --state " + f("state.json") + " --wallet " + f("inv.json") + " --nonce 0 --out " + f("tx.json")));
    Proc trig = ok(run("trigger --state " + f("state.json") + " --token " + f("token.json") + " --tx " + f("tx.json") +
                      " --receipt-out " + f("receipt.json") + " --gas-price 17700000000"));
    EXPECT_NE(trig.out.find("transfer"), std::string::npos);

    Proc view = ok(run("query-state --state " + f("state.json")));
    auto j = nlohmann::json::parse(view.out);
    EXPECT_EQ(j["phase"], "Executed");
    EXPECT_EQ(j["balances"][op], 60);
    EXPECT_EQ(j["balances"][inv], 40);

    Proc gas = ok(run("report-gas --receipt " + f("receipt.json")));
    EXPECT_NE(gas.out.find("pairings=8"), std::string::npos);
    Proc fixed = ok(run("report-gas --pairings 8 --additions 256 --gas-price 17700000000"));
    EXPECT_NE(fixed.out.find("tkverify=355400"), std::string::npos) << fixed.out;
    EXPECT_NE(fixed.out.find("ratio_vs_ecrecover=1777/15"), std::string::npos) << fixed.out;

    // A signature for another message is refused by the nominee.
    Proc other = run("receive --seed 6" + par + " --message 'fund the coal plant' --signer-pub " +
                    f("signer.pub.json") + " --nominee " + f("nominee.json") + " --delta " + f("delta.json") +
                    " --out " + f("sigma2.json"));
    EXPECT_EQ(other.code, 1) << other.out;
}

}  // namespace
