#pragma once

#include <stdexcept>
#include <string>

namespace vpp {

/// File could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace vpp
