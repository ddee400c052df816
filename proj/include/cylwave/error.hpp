#pragma once

#include <stdexcept>
#include <string>

namespace cylwave {

enum class ErrorKind {
  validation,         // malformed or out-of-range input
  domain,             // argument outside the mathematical domain
  inconsistent_case,  // damping case contradicts the profiles
  numerical,          // factorization / convergence failure
  io,
  usage,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cylwave
