#pragma once

#include <stdexcept>
#include <string>

namespace holocirc {

// Precondition of an operation violated by the caller (bad exponent, odd k
// for an alternating sum, modulus mismatch, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested size exceeds a configured bound (graph degree, Hol exponent,
// element enumeration limit).
class ResourceBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter outside the supported range of an operation (e.g. classify n = 9).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A 2-adic split of zero was requested.
class UndefinedSplitError : public std::domain_error {
 public:
  UndefinedSplitError() : std::domain_error("2-adic split of 0 is undefined") {}
};

// Input that does not parse (element notation, connection sets, ranges).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace holocirc
