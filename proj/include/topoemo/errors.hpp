#pragma once

#include <stdexcept>
#include <string>

namespace topoemo {

/// Malformed or unreadable external input (files, names, CSV rows).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Geometric or combinatorial input that the algorithms cannot handle,
/// e.g. collinear point sets or an all-zero persistence diagram.
class DegenerateInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace topoemo
