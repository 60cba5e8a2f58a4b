#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace scg {

/// Bad command-line usage or invalid arguments (CLI exit code 1).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Missing/unreadable/unwritable data (CLI exit code 2).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A metadata record file that does not decode.
class FormatError : public DataError {
public:
    FormatError(std::string file, std::uint64_t offset, const std::string& what)
        : DataError(file + " @ byte " + std::to_string(offset) + ": " + what),
          file_(std::move(file)), offset_(offset) {}

    const std::string& file() const noexcept { return file_; }
    std::uint64_t offset() const noexcept { return offset_; }

private:
    std::string file_;
    std::uint64_t offset_;
};

/// Graph that violates a structural invariant (e.g. cannot be serialized).
class GraphError : public DataError {
public:
    using DataError::DataError;
};

}  // namespace scg
