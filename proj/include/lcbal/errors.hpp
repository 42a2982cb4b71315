#pragma once

#include <stdexcept>
#include <string>

namespace lcbal {

/// Malformed input: bad indices, shape mismatches, unparsable files.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated by the caller.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace lcbal
