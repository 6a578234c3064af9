#pragma once

#include <stdexcept>
#include <string>

namespace oiglab {

/// A violated precondition on user-supplied data (bad class table, infeasible
/// demand, enumeration cap exceeded, ...). The CLI maps it to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oiglab
