#pragma once

#include <stdexcept>
#include <string>

namespace qsb {

/// Argument outside the documented domain of an operation.
class domain_error : public std::invalid_argument {
  public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Request exceeds the dense-representation limits (qubit caps).
class capacity_error : public std::runtime_error {
  public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical invariant callers rely on failed at runtime.
class contract_error : public std::logic_error {
  public:
    explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qsb
