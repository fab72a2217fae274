#ifndef NOMSIG_GASMODEL_HPP_
#define NOMSIG_GASMODEL_HPP_

// Gas metering against the bn128 / ecrecover precompile price list.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "nomsig/error.hpp"

namespace nomsig::gas {

// Operations executed by one verification, as the contract would run them.
struct OpCounts {
    uint64_t pairing_pairs = 0;  // pairs in the single batched pairing-check call
    uint64_t ec_additions = 0;
    // Not priced by the table; reported for transparency.
    uint64_t unpriced_scalar_muls = 0;
    uint64_t unpriced_additions = 0;

    OpCounts& operator+=(const OpCounts& o)
    {
        pairing_pairs += o.pairing_pairs;
        ec_additions += o.ec_additions;
        unpriced_scalar_muls += o.unpriced_scalar_muls;
        unpriced_additions += o.unpriced_additions;
        return *this;
    }
    bool operator==(const OpCounts&) const = default;
};

struct CostTable {
    uint64_t pairing_base = 45'000;
    uint64_t pairing_per_pair = 34'000;
    uint64_t ec_add = 150;
    uint64_t ecrecover = 3'000;

    bool operator==(const CostTable&) const = default;

    // Missing keys keep their defaults.
    static CostTable from_json(const nlohmann::json& j)
    {
        CostTable t;
        auto read = [&](const char* key, uint64_t& field) {
            if (!j.contains(key)) return;
            const auto& v = j.at(key);
            if (!v.is_number_integer() || v.get<int64_t>() < 0)
                throw Error(ErrorCode::kMalformedEncoding, std::string("cost table field '") + key + "' must be a non-negative integer");
            field = v.get<uint64_t>();
        };
        if (!j.is_object()) throw Error(ErrorCode::kMalformedEncoding, "cost table must be a JSON object");
        read("pairing_base", t.pairing_base);
        read("pairing_per_pair", t.pairing_per_pair);
        read("ec_add", t.ec_add);
        read("ecrecover", t.ecrecover);
        return t;
    }

    static CostTable load(const std::filesystem::path& path)
    {
        std::ifstream in(path);
        if (!in) throw Error(ErrorCode::kMalformedEncoding, "cannot open cost table " + path.string());
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::kMalformedEncoding, e.what());
        }
        return from_json(j);
    }

    nlohmann::json to_json() const
    {
        return {{"pairing_base", pairing_base},
                {"pairing_per_pair", pairing_per_pair},
                {"ec_add", ec_add},
                {"ecrecover", ecrecover}};
    }
};

// Gas price in wei per gas unit. The default is the snapshot implied by
// 0.00629058 ETH for 355,400 gas (17.7 gwei).
inline constexpr uint64_t kDefaultGasPriceWei = 17'700'000'000ULL;

struct Rational {
    uint64_t num = 0;
    uint64_t den = 1;

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational& o) const
    {
        return static_cast<unsigned __int128>(num) * o.den == static_cast<unsigned __int128>(o.num) * den;
    }
};

struct GasReport {
    uint64_t tkverify_gas = 0;
    uint64_t ecrecover_gas = 0;
    uint64_t total_gas = 0;
    OpCounts counts;
    std::optional<unsigned __int128> eth_cost_wei;  // present only with a configured gas price
};

inline uint64_t price_pairing_call(uint64_t n, const CostTable& table = {})
{
    return table.pairing_base + table.pairing_per_pair * n;
}

inline uint64_t meter_tkverify(const OpCounts& counts, const CostTable& table = {})
{
    return price_pairing_call(counts.pairing_pairs, table) + table.ec_add * counts.ec_additions;
}

inline uint64_t meter_ecrecover(const CostTable& table = {}) { return table.ecrecover; }

inline GasReport make_report(const OpCounts& counts, const CostTable& table = {},
                             std::optional<uint64_t> gas_price_wei = std::nullopt)
{
    GasReport r;
    r.counts = counts;
    r.tkverify_gas = meter_tkverify(counts, table);
    r.ecrecover_gas = meter_ecrecover(table);
    r.total_gas = r.tkverify_gas + r.ecrecover_gas;
    if (gas_price_wei) r.eth_cost_wei = static_cast<unsigned __int128>(r.total_gas) * *gas_price_wei;
    return r;
}

// Reduced fraction tkverify_gas / ecrecover_gas.
inline Rational ratio_vs_ecrecover(const GasReport& report)
{
    if (report.ecrecover_gas == 0) throw Error(ErrorCode::kInvalidAmounts, "ecrecover gas must be positive");
    uint64_t g = std::gcd(report.tkverify_gas, report.ecrecover_gas);
    return {report.tkverify_gas / g, report.ecrecover_gas / g};
}

// Exact decimal rendering of a wei amount in ETH.
inline std::string format_eth(unsigned __int128 wei)
{
    constexpr uint64_t kWeiPerEth = 1'000'000'000'000'000'000ULL;
    auto whole = static_cast<uint64_t>(wei / kWeiPerEth);
    auto frac = static_cast<uint64_t>(wei % kWeiPerEth);
    std::string f = std::to_string(frac);
    f.insert(f.begin(), 18 - f.size(), '0');
    while (f.size() > 1 && f.back() == '0') f.pop_back();
    return std::to_string(whole) + "." + f;
}

inline nlohmann::ordered_json to_json(const GasReport& r)
{
    nlohmann::ordered_json j;
    j["tkverify_gas"] = r.tkverify_gas;
    j["ecrecover_gas"] = r.ecrecover_gas;
    j["total_gas"] = r.total_gas;
    j["pairings"] = r.counts.pairing_pairs;
    j["ec_additions"] = r.counts.ec_additions;
    j["unpriced_scalar_muls"] = r.counts.unpriced_scalar_muls;
    j["unpriced_additions"] = r.counts.unpriced_additions;
    if (r.eth_cost_wei) j["eth_cost"] = format_eth(*r.eth_cost_wei);
    return j;
}

// One-line structured record, e.g. for receipts and CLI output.
inline std::string format_report(const GasReport& r)
{
    std::ostringstream os;
    os << "gas tkverify=" << r.tkverify_gas << " ecrecover=" << r.ecrecover_gas << " total=" << r.total_gas
       << " pairings=" << r.counts.pairing_pairs << " ec_additions=" << r.counts.ec_additions
       << " unpriced_scalar_muls=" << r.counts.unpriced_scalar_muls;
    if (r.eth_cost_wei) os << " eth=" << format_eth(*r.eth_cost_wei);
    return os.str();
}

}  // namespace nomsig::gas

#endif  // NOMSIG_GASMODEL_HPP_
