#pragma once

#include <stdexcept>
#include <string>

namespace sgc {

enum class errc {
    not_prime,
    reducible,
    unregistered_field,
    ctx_mismatch,
    division_by_zero,
    parse_error,
    ring_mismatch,
    division_by_zero_poly,
    both_zero,
    zero_constant_term,
    not_monic,
    zero_input,
    zero_polynomial,
    non_commuting_moduli,
    dimension_mismatch,
    not_two_sided_divisor,
    degree_out_of_range,
    lexdeg_out_of_range,
    extension_too_small,
    index_out_of_range,
    mvec_all_zero,
    bad_parameters,
    budget_exceeded,
    io_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::not_prime: return "NotPrime";
        case errc::reducible: return "Reducible";
        case errc::unregistered_field: return "UnregisteredField";
        case errc::ctx_mismatch: return "CtxMismatch";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::parse_error: return "ParseError";
        case errc::ring_mismatch: return "RingMismatch";
        case errc::division_by_zero_poly: return "DivisionByZeroPoly";
        case errc::both_zero: return "BothZero";
        case errc::zero_constant_term: return "ZeroConstantTerm";
        case errc::not_monic: return "NotMonic";
        case errc::zero_input: return "ZeroInput";
        case errc::zero_polynomial: return "ZeroPolynomial";
        case errc::non_commuting_moduli: return "NonCommutingModuli";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::not_two_sided_divisor: return "NotTwoSidedDivisor";
        case errc::degree_out_of_range: return "DegreeOutOfRange";
        case errc::lexdeg_out_of_range: return "LexdegOutOfRange";
        case errc::extension_too_small: return "ExtensionTooSmall";
        case errc::index_out_of_range: return "IndexOutOfRange";
        case errc::mvec_all_zero: return "MvecAllZero";
        case errc::bad_parameters: return "BadParameters";
        case errc::budget_exceeded: return "BudgetExceeded";
        case errc::io_error: return "IoError";
    }
    return "Unknown";
}

/// Library-wide exception; `code()` identifies the failed contract.
class error : public std::runtime_error {
  public:
    error(errc c, const std::string& what)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

}  // namespace sgc
