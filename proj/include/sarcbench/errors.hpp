#pragma once

#include <stdexcept>
#include <string>

namespace sarcbench {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File unreadable, short read, decompression failure.
struct IoError : Error {
    using Error::Error;
};

// Empty corpus, stratification impossible, malformed dataset file.
struct CorpusError : Error {
    using Error::Error;
};

// Bad caller-supplied value (sample size, model list, out-of-range index).
struct ArgumentError : Error {
    using Error::Error;
};

// Dimension mismatch between matrices/vectors/models.
struct ShapeError : Error {
    using Error::Error;
};

// Training preconditions violated (single class, negative features).
struct TrainError : Error {
    using Error::Error;
};

// Metric preconditions violated (one class absent from y_true).
struct MetricError : Error {
    using Error::Error;
};

// Artifact/metrics container malformed or version not recognized.
struct FormatError : Error {
    using Error::Error;
};

}  // namespace sarcbench
