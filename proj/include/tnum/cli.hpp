#pragma once

#include "tnum/mahler.hpp"
#include "tnum/series.hpp"
#include "tnum/xpoly.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tnum::cli {

inline constexpr int kSchemaVersion = 1;

enum class Format { csv, json };

struct Target {
    // xi | alpha | block | rational | approximant
    std::string kind = "xi";
    std::uint64_t j = 0;
    std::uint64_t k = 1;
    std::vector<std::uint32_t> num{1};
    std::vector<std::uint32_t> den{1};
};

struct SpecFile {
    MahlerSpec spec;
    Target target;
    // Nested codes, ascending in X then T.
    std::optional<std::vector<std::vector<std::uint32_t>>> poly;
    std::optional<std::uint64_t> j_max;
    std::optional<std::uint64_t> k_max;
    std::optional<std::uint64_t> count;
    std::vector<std::uint64_t> r_values;
};

// Strict: unknown keys and malformed values raise ConfigError naming the key.
SpecFile parse_spec(const std::string& json_text);
SpecFile load_spec(const std::string& path);

struct Budgets {
    std::optional<long> horizon;
    std::uint64_t enumeration = 1ULL << 24U;
    BigInt refine_cap = 4096;
    ExponentBudget exponent;
};

struct RunConfig {
    std::string command;
    // verify / scan / estimate argument.
    std::string target;
    std::optional<SpecFile> spec;
    Budgets budgets;
    std::string out_path;
    Format format = Format::csv;
    bool format_given = false;
    unsigned threads = 1;
    bool oracle = false;
    long hmax = 4;
    long degree = 1;
};

// The series selected by the spec's target, known through `horizon`.
Series target_series(const SpecFile& spec, const BigInt& horizon);

// Smallest exponent n <= bound where the coefficients differ.
std::optional<BigInt> first_difference(const Series& a, const Series& b, const BigInt& bound);

std::string csv_field(const std::string& s);

// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 budget or
// configuration error.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace tnum::cli
