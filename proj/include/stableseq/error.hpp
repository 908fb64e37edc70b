#ifndef STABLESEQ_ERROR_HPP
#define STABLESEQ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace stableseq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad range, malformed spec, ...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// The input is larger than the configured cap of the requested operation.
class CapExceeded : public Error {
public:
  using Error::Error;
};

/// A bipartite-only operation received a graph that has an odd cycle.
class NotBipartite : public Error {
public:
  using Error::Error;
};

/// The operation is mathematically undefined for these inputs
/// (e.g. a validity condition of a formula fails).
class NotApplicable : public Error {
public:
  using Error::Error;
};

} // namespace stableseq

#endif // STABLESEQ_ERROR_HPP
