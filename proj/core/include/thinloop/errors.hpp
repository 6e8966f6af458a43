#ifndef THINLOOP_ERRORS_HPP
#define THINLOOP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace thinloop {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not match (group specs, complexes, trees, edge sets).
class StructuralError : public Error { public: using Error::Error; };

/// Path endpoints do not chain.
class ComposabilityError : public Error { public: using Error::Error; };

/// An operation that needs a connected complex got a disconnected one.
class ConnectivityError : public Error { public: using Error::Error; };

/// An enumeration bound exceeds its guard.
class LimitError : public Error { public: using Error::Error; };

/// A loop table does not contain a loop it is required to cover.
class CoverageError : public Error { public: using Error::Error; };

/// A loop table violates the fusion identity.
class FusionError : public Error { public: using Error::Error; };

/// A loop table disagrees with the homomorphism it induces on the cycle basis.
class InconsistencyError : public Error { public: using Error::Error; };

/// A cell move cannot be applied at the requested site.
class MoveError : public Error { public: using Error::Error; };

/// The operation is only defined for finite groups.
class UnsupportedSpecError : public Error { public: using Error::Error; };

/// A documented precondition between two arguments does not hold.
class ContractError : public Error { public: using Error::Error; };

/// Malformed textual input (group grammar, traversal tokens, JSON documents).
class ParseError : public Error { public: using Error::Error; };

} // namespace thinloop

#endif
