#pragma once

#include <stdexcept>
#include <string>

namespace lowdisc {

/// Bad arguments or data violating an operation's preconditions.
struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Dimension outside the supported range of an operation.
struct unsupported_dimension : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure inside the optimizer; message carries diagnostics.
struct solver_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File read/write or parse failure; message is "path:line: detail" where applicable.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lowdisc
