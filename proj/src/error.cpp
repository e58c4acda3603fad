#include "tnum/error.hpp"

namespace tnum {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::DivisionByZeroPoly: return "DivisionByZeroPoly";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::AllZero: return "AllZero";
    case Errc::BeyondHorizon: return "BeyondHorizon";
    case Errc::NotAPowerOfCharacteristic: return "NotAPowerOfCharacteristic";
    case Errc::NotAPthPower: return "NotAPthPower";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::ExponentBudgetExceeded: return "ExponentBudgetExceeded";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::HorizonTooSmall: return "HorizonTooSmall";
    case Errc::RecursionCapExceeded: return "RecursionCapExceeded";
    case Errc::IndistinguishableAtHorizon: return "IndistinguishableAtHorizon";
    case Errc::ZeroValueWitness: return "ZeroValueWitness";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void raise(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace tnum
