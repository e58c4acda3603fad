#include "tnum/cli.hpp"

#include "tnum/error.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace tnum::cli {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) {
        raise(Errc::ConfigError, where + " must be an object");
    }
    for (const auto& [key, value] : obj.items()) {
        if (allowed.count(key) == 0) {
            raise(Errc::ConfigError, "unknown key '" + where + key + "'");
        }
    }
}

std::uint64_t get_uint(const json& obj, const std::string& key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        raise(Errc::ConfigError, "key '" + where + key + "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

std::vector<std::uint64_t> get_uint_list(const json& obj, const std::string& key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_array()) {
        raise(Errc::ConfigError, "key '" + where + key + "' must be an array of non-negative integers");
    }
    std::vector<std::uint64_t> out;
    for (const json& x : v) {
        if (!x.is_number_unsigned() && !(x.is_number_integer() && x.get<std::int64_t>() >= 0)) {
            raise(Errc::ConfigError, "key '" + where + key + "' must be an array of non-negative integers");
        }
        out.push_back(x.get<std::uint64_t>());
    }
    return out;
}

std::vector<std::uint32_t> narrow(const std::vector<std::uint64_t>& v, const std::string& key) {
    std::vector<std::uint32_t> out;
    for (auto x : v) {
        if (x > 0xFFFFFFFFULL) {
            raise(Errc::ConfigError, "key '" + key + "' entry out of range");
        }
        out.push_back(static_cast<std::uint32_t>(x));
    }
    return out;
}

std::vector<int> as_mask(const std::vector<std::uint64_t>& v, const std::string& key) {
    std::vector<int> out;
    for (auto x : v) {
        if (x > 1) {
            raise(Errc::ConfigError, "key '" + key + "' entries must be 0 or 1");
        }
        out.push_back(static_cast<int>(x));
    }
    return out;
}

Target parse_target(const json& t) {
    check_keys(t, {"kind", "j", "k", "num", "den"}, "target.");
    Target out;
    if (!t.contains("kind") || !t.at("kind").is_string()) {
        raise(Errc::ConfigError, "key 'target.kind' must be a string");
    }
    out.kind = t.at("kind").get<std::string>();
    static const std::set<std::string> kinds{"xi", "alpha", "block", "rational", "approximant"};
    if (kinds.count(out.kind) == 0) {
        raise(Errc::ConfigError, "key 'target.kind' has unknown value '" + out.kind + "'");
    }
    if (t.contains("j")) {
        out.j = get_uint(t, "j", "target.");
    }
    if (t.contains("k")) {
        out.k = get_uint(t, "k", "target.");
    }
    if (t.contains("num")) {
        out.num = narrow(get_uint_list(t, "num", "target."), "target.num");
    }
    if (t.contains("den")) {
        out.den = narrow(get_uint_list(t, "den", "target."), "target.den");
    }
    return out;
}

} // namespace

SpecFile parse_spec(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        raise(Errc::ConfigError, std::string("malformed JSON: ") + e.what());
    }
    check_keys(doc,
               {"schema_version", "p", "e", "modulus", "r_exponent", "m_prefix", "m_tail", "mask_prefix",
                "mask_tail", "target", "poly", "j_max", "k_max", "count", "r_values"},
               "");
    if (!doc.contains("schema_version")) {
        raise(Errc::ConfigError, "missing key 'schema_version'");
    }
    if (get_uint(doc, "schema_version", "") != kSchemaVersion) {
        raise(Errc::ConfigError, "key 'schema_version' must be " + std::to_string(kSchemaVersion));
    }
    if (!doc.contains("p")) {
        raise(Errc::ConfigError, "missing key 'p'");
    }
    const std::uint64_t p = get_uint(doc, "p", "");
    const std::uint64_t e = doc.contains("e") ? get_uint(doc, "e", "") : 1;
    std::optional<std::vector<std::uint32_t>> modulus;
    if (doc.contains("modulus")) {
        modulus = narrow(get_uint_list(doc, "modulus", ""), "modulus");
    }
    const std::uint64_t s = doc.contains("r_exponent") ? get_uint(doc, "r_exponent", "") : 1;
    const std::vector<std::uint64_t> m_prefix =
        doc.contains("m_prefix") ? get_uint_list(doc, "m_prefix", "") : std::vector<std::uint64_t>{1};
    const std::uint64_t m_tail = doc.contains("m_tail") ? get_uint(doc, "m_tail", "") : 2;
    std::optional<Mask> mask;
    if (doc.contains("mask_prefix") || doc.contains("mask_tail")) {
        Mask m;
        if (doc.contains("mask_prefix")) {
            m.prefix = as_mask(get_uint_list(doc, "mask_prefix", ""), "mask_prefix");
        }
        if (doc.contains("mask_tail")) {
            m.tail = as_mask(get_uint_list(doc, "mask_tail", ""), "mask_tail");
        }
        mask = m;
    }
    if (p > 0xFFFFFFFFULL || e > 64 || s > 64) {
        raise(Errc::ConfigError, "field parameters out of range");
    }

    std::optional<MahlerSpec> spec;
    try {
        spec.emplace(Field::make(static_cast<std::uint32_t>(p), static_cast<unsigned>(e), modulus),
                     static_cast<unsigned>(s), m_prefix, m_tail, mask);
    } catch (const Error& err) {
        raise(Errc::ConfigError, err.what());
    }
    SpecFile out{*spec, Target{}, std::nullopt, std::nullopt, std::nullopt, std::nullopt, {}};
    if (doc.contains("target")) {
        out.target = parse_target(doc.at("target"));
    }
    if (doc.contains("poly")) {
        const json& poly = doc.at("poly");
        if (!poly.is_array()) {
            raise(Errc::ConfigError, "key 'poly' must be an array of coefficient arrays");
        }
        std::vector<std::vector<std::uint32_t>> rows;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            json wrap = {{"c", poly[i]}};
            rows.push_back(narrow(get_uint_list(wrap, "c", "poly."), "poly"));
        }
        out.poly = rows;
    }
    if (doc.contains("j_max")) {
        out.j_max = get_uint(doc, "j_max", "");
    }
    if (doc.contains("k_max")) {
        out.k_max = get_uint(doc, "k_max", "");
    }
    if (doc.contains("count")) {
        out.count = get_uint(doc, "count", "");
    }
    if (doc.contains("r_values")) {
        out.r_values = get_uint_list(doc, "r_values", "");
    }
    return out;
}

SpecFile load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        raise(Errc::ConfigError, "cannot read spec file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

Series target_series(const SpecFile& sf, const BigInt& horizon) {
    const MahlerSpec& spec = sf.spec;
    const Target& t = sf.target;
    if (t.kind == "xi") {
        return xi(spec, horizon);
    }
    if (t.kind == "alpha") {
        return mahler_alpha(spec.field(), spec.r(), horizon);
    }
    if (t.kind == "block") {
        return alpha_block(spec, t.j, horizon);
    }
    if (t.kind == "approximant") {
        return approximant(spec, {t.j, t.k}, horizon);
    }
    const TPoly num = TPoly::from_codes(spec.field(), t.num);
    const TPoly den = TPoly::from_codes(spec.field(), t.den);
    if (den.is_zero()) {
        raise(Errc::ConfigError, "key 'target.den' is the zero polynomial");
    }
    return series_from_rational(num, den, horizon);
}

std::optional<BigInt> first_difference(const Series& a, const Series& b, const BigInt& bound) {
    const Series d = (a - b).truncated_to(bound);
    if (d.terms().empty()) {
        return std::nullopt;
    }
    return d.terms().begin()->first;
}

} // namespace tnum::cli
