#include "tnum/cli.hpp"

#include "tnum/dioph.hpp"
#include "tnum/error.hpp"
#include "tnum/roots.hpp"
#include "tnum/scan.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>

namespace tnum::cli {

using nlohmann::json;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

namespace {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string csv() const {
        std::string out;
        auto line = [&out](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                out += (i == 0 ? "" : ",") + csv_field(cells[i]);
            }
            out += "\r\n";
        };
        line(columns);
        for (const auto& r : rows) {
            line(r);
        }
        return out;
    }
};

std::string dec(const Rational& r) { return to_decimal(r, 6); }

std::string big(const BigInt& v) { return v.str(); }

bool budget_error(Errc c) {
    return c == Errc::BudgetExceeded || c == Errc::ExponentBudgetExceeded || c == Errc::PrecisionExhausted;
}

Format format_for(const RunConfig& cfg, Format fallback) { return cfg.format_given ? cfg.format : fallback; }

const SpecFile& need_spec(const RunConfig& cfg) {
    if (!cfg.spec) {
        raise(Errc::ConfigError, "missing --spec");
    }
    return *cfg.spec;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) {
        raise(Errc::ConfigError, "cannot write '" + cfg.out_path + "'");
    }
    f << text;
}

// ---- coeffs ----

Series sparse_sum(const FieldRef& field, const std::vector<BigInt>& bases, const BigInt& horizon) {
    TermMap terms;
    const Field& F = *field;
    for (const BigInt& b : bases) {
        for (BigInt x = b; x <= horizon; x *= b) {
            Fq& c = terms[x];
            c = F.add(c, F.one());
        }
    }
    for (auto it = terms.begin(); it != terms.end();) {
        it = it->second.is_zero() ? terms.erase(it) : std::next(it);
    }
    return Series::truncated(field, terms, horizon);
}

Series coeff_oracle(const SpecFile& sf, const BigInt& bound) {
    const MahlerSpec& spec = sf.spec;
    const std::string& kind = sf.target.kind;
    if (kind == "xi") {
        std::vector<BigInt> bases;
        for (std::uint64_t t = 0; r_j(spec, t) <= bound; ++t) {
            if (spec.active(t)) {
                bases.push_back(r_j(spec, t));
            }
        }
        return sparse_sum(spec.field(), bases, bound);
    }
    if (kind == "alpha") {
        return sparse_sum(spec.field(), {spec.r()}, bound);
    }
    if (kind == "block") {
        return sparse_sum(spec.field(), {r_j(spec, sf.target.j)}, bound);
    }
    raise(Errc::ConfigError, "no direct-summation oracle for target kind '" + kind + "'");
}

int cmd_coeffs(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const SpecFile& sf = need_spec(cfg);
    const long bound = cfg.budgets.horizon.value_or(64);
    if (bound < 0) {
        raise(Errc::ConfigError, "--horizon must be >= 0");
    }
    if (bound > (1L << 22)) {
        raise(Errc::BudgetExceeded, "coefficient table bound " + std::to_string(bound));
    }
    const Series s = target_series(sf, bound);
    long start = 1;
    if (!s.terms().empty() && s.terms().begin()->first < 1) {
        start = static_cast<long>(s.terms().begin()->first);
    }
    Table t{{"n", "coefficient"}, {}};
    json rows = json::array();
    for (long n = start; n <= bound; ++n) {
        const std::uint32_t code = s.coeff(n).code;
        t.rows.push_back({std::to_string(n), std::to_string(code)});
        rows.push_back({{"n", n}, {"coefficient", code}});
    }
    std::optional<BigInt> diff;
    if (cfg.oracle) {
        diff = first_difference(s, coeff_oracle(sf, bound), bound);
    }
    if (format_for(cfg, Format::csv) == Format::csv) {
        emit(cfg, t.csv(), out);
    } else {
        json doc{{"bound", bound}, {"rows", rows}, {"target", sf.target.kind}};
        if (cfg.oracle) {
            doc["oracle_agrees"] = !diff.has_value();
        }
        emit(cfg, doc.dump(2) + "\n", out);
    }
    if (diff) {
        err << "oracle mismatch at n = " << *diff << "\n";
        return 1;
    }
    return 0;
}

// ---- verify ----

struct Instance {
    std::string label;
    std::string claimed;
    std::string measured;
    bool pass = false;
    bool skipped = false;
    json extra = json::object();
};

struct Report {
    std::vector<Instance> items;

    // Runs one check; budget errors become skipped instances.
    void run(const std::string& label, const std::function<Instance()>& fn) {
        try {
            Instance i = fn();
            i.label = label;
            items.push_back(std::move(i));
        } catch (const Error& e) {
            if (!budget_error(e.code())) {
                throw;
            }
            Instance i;
            i.label = label;
            i.skipped = true;
            i.measured = e.what();
            items.push_back(std::move(i));
        }
    }
};

std::uint64_t opt(const std::optional<std::uint64_t>& v, std::uint64_t fallback) { return v.value_or(fallback); }

void verify_frobenius(const RunConfig& cfg, const SpecFile& sf, Report& rep) {
    const BigInt horizon = cfg.budgets.horizon.value_or(1000);
    std::vector<BigInt> rs;
    for (auto r : sf.r_values) {
        rs.emplace_back(r);
    }
    if (rs.empty()) {
        rs.push_back(sf.spec.r());
    }
    for (const BigInt& r : rs) {
        rep.run("r=" + big(r) + " horizon=" + big(horizon), [&] {
            const AbsValue v = frobenius_residual(sf.spec.field(), r, horizon);
            Instance i;
            i.claimed = AbsValue::below(horizon).to_string();
            i.measured = v.to_string();
            i.pass = v.is_zero() || (v.is_below() && v.exponent >= horizon);
            return i;
        });
    }
}

Series blocks_between(const MahlerSpec& spec, std::uint64_t from, std::uint64_t to, const BigInt& horizon) {
    Series s = Series::truncated(spec.field(), {}, horizon);
    for (std::uint64_t t = from; t <= to && r_j(spec, t) <= horizon; ++t) {
        s = s + alpha_block(spec, t, horizon);
    }
    return s.truncated_to(horizon);
}

Fq term_at(const Series& s, const BigInt& n) {
    auto it = s.terms().find(n);
    return it == s.terms().end() ? Fq{} : it->second;
}

void verify_bjn(const RunConfig& cfg, const SpecFile& sf, Report& rep, bool b_side) {
    const MahlerSpec& spec = sf.spec;
    const std::uint64_t j_max = opt(sf.j_max, 3);
    const long n_max = cfg.budgets.horizon.value_or(b_side ? 256 : 64);
    for (std::uint64_t j = 0; j <= j_max; ++j) {
        rep.run("j=" + std::to_string(j) + " n<=" + std::to_string(n_max), [&] {
            const BigInt base = b_side ? r_j(spec, j + 1) : spec.r();
            const BigInt top = ipow(base, static_cast<std::uint64_t>(n_max));
            if (top > cfg.budgets.exponent.sparse) {
                raise(Errc::ExponentBudgetExceeded, "direct sum horizon");
            }
            const Series sum = b_side ? blocks_between(spec, j + 1, ~0ULL, top) : blocks_between(spec, 0, j, top);
            Instance i;
            i.pass = true;
            BigInt x = base;
            for (long n = 1; n <= n_max; ++n, x *= base) {
                const Fq formula = b_side ? b_coeff(spec, j, n) : a_coeff(spec, j, n);
                if (formula != term_at(sum, x)) {
                    i.pass = false;
                    i.extra["first_mismatch_n"] = n;
                    break;
                }
            }
            i.claimed = b_side ? "b(j,n) rule" : "a(j,n) rule";
            i.measured = i.pass ? "direct sum agrees" : "direct sum differs";
            return i;
        });
    }
}

void verify_telescope(const RunConfig& cfg, const SpecFile& sf, Report& rep) {
    const BigInt horizon = cfg.budgets.horizon.value_or(4096);
    const std::uint64_t j_max = opt(sf.j_max, 2);
    for (std::uint64_t j = 0; j <= j_max; ++j) {
        for (std::uint64_t t = 0; t <= j; ++t) {
            rep.run("t=" + std::to_string(t) + " j=" + std::to_string(j), [&] {
                const AbsValue v = telescope_residual(sf.spec, t, j, horizon);
                Instance i;
                i.claimed = AbsValue::below(horizon).to_string();
                i.measured = v.to_string();
                i.pass = v.is_zero() || (v.is_below() && v.exponent >= horizon);
                return i;
            });
        }
    }
}

void verify_annihilator(const RunConfig& cfg, const SpecFile& sf, Report& rep) {
    const MahlerSpec& spec = sf.spec;
    const BigInt horizon = cfg.budgets.horizon.value_or(256);
    for (std::uint64_t j = 0; j <= opt(sf.j_max, 2); ++j) {
        for (std::uint64_t k = 1; k <= opt(sf.k_max, 3); ++k) {
            rep.run("j=" + std::to_string(j) + " k=" + std::to_string(k), [&] {
                const ApproximantId id{j, k};
                const XPoly A = annihilator(spec, id, cfg.budgets.exponent);
                const AbsValue v = annihilator_residual(spec, id, horizon, cfg.budgets.exponent);
                const QPow h = xpoly_height(A);
                const QPow bound = approximant_height_bound(spec, id);
                Instance i;
                i.claimed = "deg_X=" + big(r_j(spec, j)) + " H<=" + bound.to_string() + " residual " +
                            AbsValue::below(horizon).to_string();
                i.measured = "deg_X=" + std::to_string(A.degree()) + " H=" + h.to_string() + " residual " +
                             v.to_string();
                i.pass = (v.is_zero() || (v.is_below() && v.exponent >= horizon)) && BigInt(A.degree()) == r_j(spec, j) &&
                         h == annihilator_height(spec, id) && !(bound < h);
                return i;
            });
        }
    }
}

void verify_distance(const SpecFile& sf, const RunConfig& cfg, Report& rep) {
    for (std::uint64_t j = 0; j <= opt(sf.j_max, 1); ++j) {
        const std::size_t count = opt(sf.count, 3);
        for (std::size_t idx = 1; idx <= count; ++idx) {
            rep.run("j=" + std::to_string(j) + " index=" + std::to_string(idx), [&] {
                const DistanceCheck c = distance_identity_check(sf.spec, j, idx, cfg.budgets.exponent);
                Instance i;
                i.claimed = AbsValue::exact(c.claimed).to_string();
                i.measured = c.measured.to_string();
                i.pass = c.pass;
                i.extra["k"] = c.id.k;
                return i;
            });
        }
    }
}

void verify_sandwich(const SpecFile& sf, const RunConfig& cfg, Report& rep) {
    for (std::uint64_t j = 0; j <= opt(sf.j_max, 1); ++j) {
        for (std::uint64_t k = 1; k <= opt(sf.k_max, 6); ++k) {
            rep.run("j=" + std::to_string(j) + " k=" + std::to_string(k), [&] {
                const SandwichCheck c = distance_sandwich(sf.spec, {j, k}, cfg.budgets.exponent);
                const bool b_zero = b_coeff(sf.spec, j, k + 1).is_zero();
                Instance i;
                i.claimed = "[" + big(c.lower) + ", " + big(c.upper) + "]";
                i.measured = c.measured.to_string();
                i.pass = c.in_window && c.at_upper == b_zero;
                i.extra["at_upper"] = c.at_upper;
                i.extra["b_next_zero"] = b_zero;
                return i;
            });
        }
    }
}

void verify_liouville(const SpecFile& sf, const RunConfig& cfg, Report& rep) {
    rep.run("rationals height<=q^3", [&] {
        const LiouvilleSummary s = liouville_rationals(sf.spec.field(), 3);
        Instance i;
        i.claimed = "0 failures";
        i.measured = std::to_string(s.failures) + " failures";
        i.pass = s.failures == 0 && s.series_mismatches == 0;
        i.extra["pairs"] = s.pairs;
        i.extra["series_checked"] = s.series_checked;
        return i;
    });
    const ApproximantLiouville a =
        liouville_approximants(sf.spec, opt(sf.j_max, 2), opt(sf.k_max, 3), cfg.budgets.exponent);
    for (const auto& p : a.pairs) {
        rep.run("alpha(" + std::to_string(p.j) + "," + std::to_string(p.k) + ") vs alpha(" + std::to_string(p.j) +
                    "," + std::to_string(p.k2) + ")",
                [&] {
                    Instance i;
                    i.claimed = "valuation <= " + big(p.check.bound);
                    i.measured = p.check.measured.to_string();
                    i.pass = p.check.pass;
                    return i;
                });
    }
    if (a.coincident + a.skipped > 0) {
        Instance i;
        i.label = "approximant pairs not checked";
        i.skipped = true;
        i.measured = std::to_string(a.coincident) + " coincident, " + std::to_string(a.skipped) + " over budget";
        rep.items.push_back(i);
    }
}

json applio_json(const ApplioReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        json x{{"k", row.k},
               {"distance_valuation", big(row.distance_valuation)},
               {"log_beta", big(row.log_beta)},
               {"distance_ratio", to_string(row.distance_ratio)},
               {"ratio_ok", row.ratio_ok},
               {"height_exponent", big(row.height_exponent)},
               {"height_ratio", to_string(row.height_ratio)},
               {"height_ok", row.height_ok},
               {"beta_ok", row.beta_ok}};
        if (row.beta_ratio) {
            x["beta_ratio"] = big(*row.beta_ratio);
        }
        rows.push_back(x);
    }
    return json{{"j", r.j},
                {"rows", rows},
                {"claimed_ratio", to_string(r.claimed_ratio)},
                {"d", to_string(r.d)},
                {"delta", to_string(r.delta)},
                {"rho", to_string(r.rho)},
                {"theta", big(r.theta)},
                {"window_lower", to_string(r.window_lower)},
                {"window_upper", to_string(r.window_upper)},
                {"window_lower_decimal", dec(r.window_lower)},
                {"window_upper_decimal", dec(r.window_upper)},
                {"all_pass", r.all_pass}};
}

void verify_applio(const SpecFile& sf, const RunConfig& cfg, Report& rep) {
    for (std::uint64_t j = 0; j <= opt(sf.j_max, 1); ++j) {
        rep.run("j=" + std::to_string(j), [&] {
            const ApplioReport r = applio_consistency(sf.spec, j, opt(sf.count, 3), cfg.budgets.exponent);
            Instance i;
            i.claimed = "ratios = " + to_string(r.claimed_ratio);
            std::string got;
            for (const auto& row : r.rows) {
                got += (got.empty() ? "" : " ") + to_string(row.distance_ratio);
            }
            i.measured = "ratios " + got + "; window [" + to_string(r.window_lower) + ", " +
                         to_string(r.window_upper) + "]";
            i.pass = r.all_pass;
            i.extra = applio_json(r);
            return i;
        });
    }
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const SpecFile& sf = need_spec(cfg);
    Report rep;
    const std::string& t = cfg.target;
    if (t == "frobenius") {
        verify_frobenius(cfg, sf, rep);
    } else if (t == "bjn") {
        verify_bjn(cfg, sf, rep, true);
    } else if (t == "ajn") {
        verify_bjn(cfg, sf, rep, false);
    } else if (t == "telescope") {
        verify_telescope(cfg, sf, rep);
    } else if (t == "annihilator") {
        verify_annihilator(cfg, sf, rep);
    } else if (t == "distance") {
        verify_distance(sf, cfg, rep);
    } else if (t == "sandwich") {
        verify_sandwich(sf, cfg, rep);
    } else if (t == "liouville") {
        verify_liouville(sf, cfg, rep);
    } else if (t == "applio") {
        verify_applio(sf, cfg, rep);
    } else {
        raise(Errc::ConfigError, "unknown verify target '" + t + "'");
    }

    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
    for (const auto& i : rep.items) {
        (i.skipped ? skipped : (i.pass ? passed : failed)) += 1;
    }
    if (format_for(cfg, Format::json) == Format::csv) {
        Table tab{{"instance", "claimed", "measured", "status"}, {}};
        for (const auto& i : rep.items) {
            tab.rows.push_back({i.label, i.claimed, i.measured, i.skipped ? "skipped" : (i.pass ? "pass" : "fail")});
        }
        emit(cfg, tab.csv(), out);
    } else {
        json items = json::array();
        for (const auto& i : rep.items) {
            json x = i.extra;
            x["instance"] = i.label;
            x["claimed"] = i.claimed;
            x["measured"] = i.measured;
            x["status"] = i.skipped ? "skipped" : (i.pass ? "pass" : "fail");
            items.push_back(x);
        }
        json doc{{"target", t},
                 {"instances", items},
                 {"passed", passed},
                 {"failed", failed},
                 {"skipped", skipped},
                 {"all_pass", failed == 0 && passed > 0}};
        emit(cfg, doc.dump(2) + "\n", out);
    }
    if (failed > 0) {
        return 1;
    }
    return passed > 0 ? 0 : 2;
}

// ---- scan ----

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
    const SpecFile& sf = need_spec(cfg);
    ScanOptions opts;
    opts.window = cfg.budgets.horizon.value_or(256);
    opts.enumeration_budget = cfg.budgets.enumeration;
    opts.threads = cfg.threads;
    opts.refine_cap = cfg.budgets.refine_cap;
    const Series s = target_series(sf, opts.window);
    RecordTable table;
    if (cfg.target == "wn") {
        table = wn_scan(s, cfg.degree, cfg.hmax, opts);
    } else if (cfg.target == "wstar") {
        table = wstar_scan(s, cfg.degree, cfg.hmax, opts);
    } else {
        raise(Errc::ConfigError, "unknown scan kind '" + cfg.target + "'");
    }
    const std::string best = table.best_exponent ? to_string(*table.best_exponent) : "";
    if (format_for(cfg, Format::csv) == Format::csv) {
        Table tab{{"h", "H_log", "witness", "value_valuation", "exponent_ratio"}, {}};
        for (const auto& r : table.rows) {
            tab.rows.push_back({std::to_string(r.h), std::to_string(r.h - 1), r.witness.to_string(),
                                big(r.value_valuation), r.exponent_ratio ? to_string(*r.exponent_ratio) : ""});
        }
        tab.rows.push_back({"best_exponent", "", "", "", best});
        emit(cfg, tab.csv(), out);
        return 0;
    }
    json rows = json::array();
    for (const auto& r : table.rows) {
        json x{{"h", r.h},
               {"H_log", r.h - 1},
               {"witness", r.witness.to_string()},
               {"value_valuation", big(r.value_valuation)},
               {"value_abs", AbsValue::exact(r.value_valuation).to_string()}};
        if (r.exponent_ratio) {
            x["exponent_ratio"] = to_string(*r.exponent_ratio);
            x["exponent_ratio_decimal"] = dec(*r.exponent_ratio);
        }
        if (r.root) {
            x["root"] = r.root->to_string();
        }
        rows.push_back(x);
    }
    json doc{{"kind", to_string(table.kind)},
             {"n", table.n},
             {"h_max", table.h_max},
             {"window", table.window},
             {"rows", rows},
             {"excluded", table.excluded},
             {"excluded_examples", table.excluded_examples},
             {"scale", "finite-scale record, not the limit exponent"}};
    if (table.best_exponent) {
        doc["best_exponent"] = best;
        doc["best_exponent_decimal"] = dec(*table.best_exponent);
    }
    emit(cfg, doc.dump(2) + "\n", out);
    return 0;
}

// ---- estimate ----

json type_json(const TypeBounds& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row{{"j", r.j}, {"lower", big(r.lower)}, {"upper_tstar", big(r.upper_tstar)}, {"upper_t", big(r.upper_t)}};
        if (t.refined_tstar) {
            row["refined_upper_tstar"] = big(r.refined_tstar);
            row["refined_upper_t"] = big(r.refined_t);
        }
        rows.push_back(row);
    }
    json doc{{"truncation_J", t.truncation},
             {"rows", rows},
             {"lower", big(t.lower)},
             {"upper_tstar", big(t.upper_tstar)},
             {"upper_t", big(t.upper_t)},
             {"scale", "finite-scale truncation: sup over 1 <= j <= J, not the limsup"}};
    if (t.refined_tstar) {
        doc["refined_upper_tstar"] = big(*t.refined_tstar);
        doc["refined_upper_t"] = big(*t.refined_t);
    }
    return doc;
}

int cmd_estimate(const RunConfig& cfg, std::ostream& out) {
    const SpecFile& sf = need_spec(cfg);
    if (cfg.target != "type" && cfg.target != "exponent") {
        raise(Errc::ConfigError, "unknown estimate target '" + cfg.target + "'");
    }
    const TypeBounds tb = type_bounds(sf.spec, opt(sf.j_max, 10));
    json doc{{"target", cfg.target}, {"type_bounds", type_json(tb)}};
    bool ok = true;
    if (cfg.target == "exponent") {
        json windows = json::array();
        for (std::uint64_t j = 0; j <= opt(sf.j_max, 1); ++j) {
            const ApplioReport r = applio_consistency(sf.spec, j, opt(sf.count, 3), cfg.budgets.exponent);
            json w = applio_json(r);
            w["scale"] = "finite-scale window for w*_{r_j}, not the limit";
            windows.push_back(w);
            ok = ok && r.all_pass;
        }
        doc["applio_windows"] = windows;
    }
    if (format_for(cfg, Format::json) == Format::csv) {
        Table tab{{"j", "lower", "upper_tstar", "upper_t", "refined_tstar", "refined_t"}, {}};
        for (const auto& r : tb.rows) {
            tab.rows.push_back({std::to_string(r.j), big(r.lower), big(r.upper_tstar), big(r.upper_t),
                                tb.refined_tstar ? big(r.refined_tstar) : "", tb.refined_t ? big(r.refined_t) : ""});
        }
        tab.rows.push_back({"sup", big(tb.lower), big(tb.upper_tstar), big(tb.upper_t),
                            tb.refined_tstar ? big(*tb.refined_tstar) : "", tb.refined_t ? big(*tb.refined_t) : ""});
        emit(cfg, tab.csv(), out);
    } else {
        emit(cfg, doc.dump(2) + "\n", out);
    }
    return ok ? 0 : 1;
}

// ---- roots ----

int cmd_roots(const RunConfig& cfg, std::ostream& out) {
    const SpecFile& sf = need_spec(cfg);
    if (!sf.poly) {
        raise(Errc::ConfigError, "missing key 'poly'");
    }
    const XPoly P = XPoly::from_codes(sf.spec.field(), *sf.poly);
    const long horizon = cfg.budgets.horizon.value_or(64);
    const auto roots = roots_in_field(P, horizon);
    if (format_for(cfg, Format::json) == Format::csv) {
        Table tab{{"index", "root", "multiplicity", "exact"}, {}};
        for (std::size_t i = 0; i < roots.size(); ++i) {
            tab.rows.push_back({std::to_string(i), roots[i].root.to_string(), std::to_string(roots[i].multiplicity),
                                roots[i].root.is_exact() ? "true" : "false"});
        }
        emit(cfg, tab.csv(), out);
        return 0;
    }
    json list = json::array();
    for (const auto& r : roots) {
        json terms = json::array();
        for (const auto& [n, c] : r.root.terms()) {
            terms.push_back({big(n), c.code});
        }
        list.push_back({{"root", r.root.to_string()},
                        {"terms", terms},
                        {"multiplicity", r.multiplicity},
                        {"exact", r.root.is_exact()},
                        {"height_bound", r.height_bound.to_string()},
                        {"degree_bound", r.degree_bound}});
    }
    json doc{{"poly", P.to_string()}, {"horizon", horizon}, {"roots", list}};
    emit(cfg, doc.dump(2) + "\n", out);
    return 0;
}

} // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.command == "coeffs") {
            return cmd_coeffs(cfg, out, err);
        }
        if (cfg.command == "verify") {
            return cmd_verify(cfg, out);
        }
        if (cfg.command == "scan") {
            return cmd_scan(cfg, out);
        }
        if (cfg.command == "estimate") {
            return cmd_estimate(cfg, out);
        }
        if (cfg.command == "roots") {
            return cmd_roots(cfg, out);
        }
        raise(Errc::ConfigError, "unknown command '" + cfg.command + "'");
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact arithmetic for T-numbers in F_q((1/T))", "tnum"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string spec_path;
    std::string format;
    long horizon = 0;
    long budget = 0;
    app.add_option("--spec", spec_path, "spec file (JSON)");
    app.add_option("--out", cfg.out_path, "output file (default stdout)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    auto* horizon_opt = app.add_option("--horizon", horizon, "coefficient bound, horizon or scan window");
    app.add_option("--hmax", cfg.hmax, "largest height shell")->check(CLI::PositiveNumber);
    app.add_option("--degree", cfg.degree, "degree bound n")->check(CLI::PositiveNumber);
    app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1U, 1024U));
    app.add_flag("--oracle", cfg.oracle, "cross-check against direct summation");
    auto* budget_opt = app.add_option("--budget", budget, "enumeration budget")->check(CLI::PositiveNumber);

    std::string verify_target;
    std::string scan_kind;
    std::string estimate_target;
    auto* coeffs = app.add_subcommand("coeffs", "coefficient table of the target series");
    auto* verify = app.add_subcommand("verify", "check identities and bounds");
    verify->add_option("target", verify_target)
        ->required()
        ->check(CLI::IsMember(
            {"frobenius", "bjn", "ajn", "telescope", "annihilator", "distance", "sandwich", "liouville", "applio"}));
    auto* scan = app.add_subcommand("scan", "brute-force exponent records");
    scan->add_option("kind", scan_kind)->required()->check(CLI::IsMember({"wn", "wstar"}));
    auto* estimate = app.add_subcommand("estimate", "truncated type and exponent windows");
    estimate->add_option("target", estimate_target)->required()->check(CLI::IsMember({"exponent", "type"}));
    auto* roots = app.add_subcommand("roots", "roots of the spec polynomial in F_q((1/T))");
    for (auto* sub : {coeffs, verify, scan, estimate, roots}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    for (auto* sub : {coeffs, verify, scan, estimate, roots}) {
        if (sub->parsed()) {
            cfg.command = sub->get_name();
        }
    }
    cfg.target = verify->parsed() ? verify_target : scan->parsed() ? scan_kind : estimate_target;
    if (!format.empty()) {
        cfg.format = format == "csv" ? Format::csv : Format::json;
        cfg.format_given = true;
    }
    if (horizon_opt->count() > 0) {
        cfg.budgets.horizon = horizon;
    }
    if (budget_opt->count() > 0) {
        cfg.budgets.enumeration = static_cast<std::uint64_t>(budget);
    }
    try {
        if (horizon_opt->count() > 0 && horizon < 0) {
            raise(Errc::ConfigError, "--horizon must be >= 0");
        }
        if (!spec_path.empty()) {
            cfg.spec = load_spec(spec_path);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return run_command(cfg, out, err);
}

} // namespace tnum::cli
