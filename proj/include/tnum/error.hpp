#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tnum {

enum class Errc {
    NonPrimeCharacteristic,
    ReducibleModulus,
    DivisionByZeroPoly,
    FieldMismatch,
    AllZero,
    BeyondHorizon,
    NotAPowerOfCharacteristic,
    NotAPthPower,
    PrecisionExhausted,
    ExponentBudgetExceeded,
    ZeroPolynomial,
    BudgetExceeded,
    HorizonTooSmall,
    RecursionCapExceeded,
    IndistinguishableAtHorizon,
    ZeroValueWitness,
    InvalidArgument,
    ConfigError,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what);

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

} // namespace tnum
