#pragma once

#include <stdexcept>
#include <string>

namespace csirad {

/// Malformed or unsupported file content (capture, truth CSV, scene text).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The file system refused an open/read/write.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace csirad
