#ifndef FAIRCF_ERRORS_HPP
#define FAIRCF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace faircf {

// Base class for everything thrown by this library.
struct FaircfError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : FaircfError {
    using FaircfError::FaircfError;
};

struct SingleClassData : FaircfError {
    using FaircfError::FaircfError;
};

struct TooFewSamples : FaircfError {
    using FaircfError::FaircfError;
};

struct EmptyDataset : FaircfError {
    using FaircfError::FaircfError;
};

struct ConfigError : FaircfError {
    using FaircfError::FaircfError;
};

struct NonFiniteObjective : FaircfError {
    using FaircfError::FaircfError;
};

struct NoValidCandidate : FaircfError {
    using FaircfError::FaircfError;
};

struct EmptyPool : FaircfError {
    using FaircfError::FaircfError;
};

struct MissingColumn : FaircfError {
    using FaircfError::FaircfError;
};

struct NonNumericCell : FaircfError {
    using FaircfError::FaircfError;
};

struct NonBinaryLabel : FaircfError {
    using FaircfError::FaircfError;
};

}  // namespace faircf

#endif  // FAIRCF_ERRORS_HPP
