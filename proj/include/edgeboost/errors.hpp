#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edgeboost {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed source data (CSV dialect violations, unparseable cells).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& message, std::size_t row = 0)
        : Error(message), row_(row) {}

    /// 1-based row number in the source file, 0 if not applicable.
    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

/// Precondition or argument violations in computational code.
class ValueError : public Error {
public:
    using Error::Error;
};

/// Invalid or corrupt binary artifacts (.tgbm / .tgds streams).
class FormatError : public Error {
public:
    enum class Kind {
        kBadMagic,
        kBadVersion,
        kTruncated,
        kIndexOutOfRange,
        kLimitExceeded,
    };

    FormatError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Requested measurement or feature is not usable in this process.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failures (missing paths, unwritable outputs).
class IoError : public Error {
public:
    using Error::Error;
};

/// Invalid run configuration; message lists every problem found.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace edgeboost
