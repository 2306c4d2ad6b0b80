#pragma once

#include <stdexcept>
#include <string>

namespace cstarfix {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Two elements with different algebra descriptors were combined.
class DescriptorMismatchError : public Error {
public:
    explicit DescriptorMismatchError(const std::string& what) : Error(what) {}
};

/// A spectral operation was asked of an element that is not Hermitian
/// within the descriptor's tolerance.
class NotHermitianError : public Error {
public:
    explicit NotHermitianError(const std::string& what) : Error(what) {}
};

/// A fractional power was asked of an element that is not positive.
class NotPositiveError : public Error {
public:
    explicit NotPositiveError(const std::string& what) : Error(what) {}
};

/// A map was applied to a point outside its domain, or its image escaped the
/// domain, in a context where no partial result can be returned.
class DomainExitError : public Error {
public:
    explicit DomainExitError(const std::string& what) : Error(what) {}
};

/// A supplied right inverse failed its validation checks.
class BadInverseError : public Error {
public:
    explicit BadInverseError(const std::string& what) : Error(what) {}
};

/// An operation's entry requirement was not met (for example a start point
/// whose first step is not dominated by the unit element).
class PreconditionFailedError : public Error {
public:
    explicit PreconditionFailedError(const std::string& what) : Error(what) {}
};

/// A domain sampler produced a point outside its own membership predicate.
class SamplerFailureError : public Error {
public:
    explicit SamplerFailureError(const std::string& what) : Error(what) {}
};

/// A catalog name that does not exist.
class UnknownEntryError : public Error {
public:
    explicit UnknownEntryError(const std::string& what) : Error(what) {}
};

/// Scenario or spec parameters outside their documented ranges.
class BadParametersError : public Error {
public:
    explicit BadParametersError(const std::string& what) : Error(what) {}
};

}  // namespace cstarfix
