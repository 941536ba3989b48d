#pragma once

#include <stdexcept>
#include <string>

namespace bsa {

enum class errc {
    dimension_mismatch,
    zero_form,
    duplicate_hyperplane,
    wrong_dimension,
    multiplicity_too_high,
    bad_cardinality,
    resonant_weights,
    wrong_codegree,
    hypothesis_failed,
    lambda_one,
    out_of_scope,
    not_generic,
    decomposable_input,
    no_admissible_shift,
    conflicting_evidence,
    input_error,
    internal_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::dimension_mismatch:   return "DIMENSION_MISMATCH";
        case errc::zero_form:            return "ZERO_FORM";
        case errc::duplicate_hyperplane: return "DUPLICATE_HYPERPLANE";
        case errc::wrong_dimension:      return "WRONG_DIMENSION";
        case errc::multiplicity_too_high:return "MULTIPLICITY_TOO_HIGH";
        case errc::bad_cardinality:      return "BAD_CARDINALITY";
        case errc::resonant_weights:     return "RESONANT_WEIGHTS";
        case errc::wrong_codegree:       return "WRONG_CODEGREE";
        case errc::hypothesis_failed:    return "HYPOTHESIS_FAILED";
        case errc::lambda_one:           return "LAMBDA_ONE";
        case errc::out_of_scope:         return "OUT_OF_SCOPE";
        case errc::not_generic:          return "NOT_GENERIC";
        case errc::decomposable_input:   return "DECOMPOSABLE_INPUT";
        case errc::no_admissible_shift:  return "NO_ADMISSIBLE_SHIFT";
        case errc::conflicting_evidence: return "CONFLICTING_EVIDENCE";
        case errc::input_error:          return "INPUT_ERROR";
        case errc::internal_error:       return "INTERNAL_ERROR";
    }
    return "UNKNOWN";
}

/// Library error carrying a machine-readable code next to the message.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

// Invariant breaches that can only come from a bug, never from input.
inline void check_internal(bool ok, const std::string& what) {
    if (!ok) fail(errc::internal_error, what);
}

} // namespace bsa
