#pragma once

#include <stdexcept>
#include <string>

namespace badgoods {

// Every failure the library can raise, one code per distinct condition.
// The CLI maps each code to its own exit status.
enum class Errc {
    // domain
    ZeroSales,
    InvalidRange,
    ZeroShelfLife,
    ZeroCapacity,
    // ingest: structure
    MissingColumn,
    BadCell,
    DuplicateMonth,
    EmptyFile,
    // ingest: validation
    GapFound,
    InvariantViolation,
    // stats / shared series preconditions
    ZeroVariance,
    SeriesTooShort,
    LengthMismatch,
    EmptyInput,
    // forecasting
    SeedMismatch,
    OptimizerFailed,
    AllCandidatesFailed,
    InvalidHorizon,
    InadmissibleParams,
    // risk engine
    HorizonMismatch,
    AlreadyLow,
    // tooling
    ConfigError,
    IoError,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace badgoods
