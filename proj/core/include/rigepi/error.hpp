#pragma once

#include <stdexcept>
#include <string>

namespace rigepi {

// Invalid parameters or arguments outside a documented domain.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A configured capacity (truncation cap, enumeration budget) would be exceeded.
class CapacityError : public std::length_error {
 public:
  explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

}  // namespace rigepi
