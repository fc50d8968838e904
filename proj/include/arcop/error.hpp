#pragma once

#include <stdexcept>
#include <string>

namespace arcop {

/// Domain error codes surfaced by the library. The CLI maps any of these to
/// exit code 1 with the name on stderr.
enum class Errc {
    empty_input,
    missing_month,
    non_positive_value,
    insufficient_length,
    initial_mismatch,
    degenerate_series,
    lag_too_large,
    numerical_breakdown,
    invalid_df,
    sample_size_unsupported,
    length_mismatch,
    invalid_parameter,
    boundary_point,
    tau_out_of_range,
    family_incompatible,
    no_convergence,
    insufficient_overlap,
    cutoff_out_of_range,
    parse_error,
    io_error,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }
    const char* name() const noexcept { return errc_name(code_); }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace arcop
