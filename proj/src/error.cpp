#include "arcop/error.hpp"

namespace arcop {

const char* errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::empty_input: return "EmptyInput";
        case Errc::missing_month: return "MissingMonth";
        case Errc::non_positive_value: return "NonPositiveValue";
        case Errc::insufficient_length: return "InsufficientLength";
        case Errc::initial_mismatch: return "InitialMismatch";
        case Errc::degenerate_series: return "DegenerateSeries";
        case Errc::lag_too_large: return "LagTooLarge";
        case Errc::numerical_breakdown: return "NumericalBreakdown";
        case Errc::invalid_df: return "InvalidDf";
        case Errc::sample_size_unsupported: return "SampleSizeUnsupported";
        case Errc::length_mismatch: return "LengthMismatch";
        case Errc::invalid_parameter: return "InvalidParameter";
        case Errc::boundary_point: return "BoundaryPoint";
        case Errc::tau_out_of_range: return "TauOutOfRange";
        case Errc::family_incompatible: return "FamilyIncompatible";
        case Errc::no_convergence: return "NoConvergence";
        case Errc::insufficient_overlap: return "InsufficientOverlap";
        case Errc::cutoff_out_of_range: return "CutoffOutOfRange";
        case Errc::parse_error: return "ParseError";
        case Errc::io_error: return "IoError";
    }
    return "UnknownError";
}

}  // namespace arcop
