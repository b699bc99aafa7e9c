#pragma once

#include <stdexcept>
#include <string>

namespace memg {

// Error taxonomy shared across the library. Everything derives from
// MemgError so callers can catch the whole family at the CLI boundary.
class MemgError : public std::runtime_error {
public:
    explicit MemgError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file (bad JSON/CSV, missing columns, wrong types).
class ParseError : public MemgError {
public:
    explicit ParseError(const std::string& what) : MemgError(what) {}
};

// Structurally valid input violating a domain invariant; message names
// the field and the offending spec/scenario id.
class ValidationError : public MemgError {
public:
    explicit ValidationError(const std::string& what) : MemgError(what) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public MemgError {
public:
    explicit DomainError(const std::string& what) : MemgError(what) {}
};

// Storage charging and discharging in the same hour.
class MutualExclusionError : public MemgError {
public:
    explicit MutualExclusionError(const std::string& what) : MemgError(what) {}
};

// CHP operating point outside its feasible operation region.
class InfeasiblePoint : public MemgError {
public:
    explicit InfeasiblePoint(const std::string& what) : MemgError(what) {}
};

// Trading cost requested for a taxing scenario or vice versa.
class PolicyMismatch : public MemgError {
public:
    explicit PolicyMismatch(const std::string& what) : MemgError(what) {}
};

// A scenario filter matched nothing.
class EmptySetError : public MemgError {
public:
    explicit EmptySetError(const std::string& what) : MemgError(what) {}
};

// Demand cannot be met for some hour/resource even at full capacity.
class InfeasibleDispatch : public MemgError {
public:
    explicit InfeasibleDispatch(const std::string& what) : MemgError(what) {}
};

// Brute-force oracle invoked above its size bounds.
class InstanceTooLarge : public MemgError {
public:
    explicit InstanceTooLarge(const std::string& what) : MemgError(what) {}
};

// Two solutions compared across different catalogs/demands.
class IncompatibleInstances : public MemgError {
public:
    explicit IncompatibleInstances(const std::string& what) : MemgError(what) {}
};

} // namespace memg
