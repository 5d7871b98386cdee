#pragma once

#include <stdexcept>
#include <string>

namespace zsf {

/// Malformed input: bad Cayley table, unparsable sequence, unknown name.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Well-formed input outside an operation's mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A search or table would exceed its configured budget.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace zsf
