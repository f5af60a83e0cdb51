#include "badgoods/errors.hpp"

namespace badgoods {

const char* errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::ZeroSales: return "ZeroSales";
    case Errc::InvalidRange: return "InvalidRange";
    case Errc::ZeroShelfLife: return "ZeroShelfLife";
    case Errc::ZeroCapacity: return "ZeroCapacity";
    case Errc::MissingColumn: return "MissingColumn";
    case Errc::BadCell: return "BadCell";
    case Errc::DuplicateMonth: return "DuplicateMonth";
    case Errc::EmptyFile: return "EmptyFile";
    case Errc::GapFound: return "GapFound";
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::ZeroVariance: return "ZeroVariance";
    case Errc::SeriesTooShort: return "SeriesTooShort";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::SeedMismatch: return "SeedMismatch";
    case Errc::OptimizerFailed: return "OptimizerFailed";
    case Errc::AllCandidatesFailed: return "AllCandidatesFailed";
    case Errc::InvalidHorizon: return "InvalidHorizon";
    case Errc::InadmissibleParams: return "InadmissibleParams";
    case Errc::HorizonMismatch: return "HorizonMismatch";
    case Errc::AlreadyLow: return "AlreadyLow";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
    }
    return "UnknownError";
}

} // namespace badgoods
