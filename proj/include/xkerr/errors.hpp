#pragma once

#include <stdexcept>
#include <string>

namespace xkerr {

// Thrown when a conditional state has vanishing weight at the requested
// measurement outcome, so no normalized post-measurement state exists.
// Callers that force outcomes by hand (rather than sampling them) must be
// prepared to catch this.
class NumericalVoidError : public std::runtime_error {
  public:
    explicit NumericalVoidError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace xkerr
