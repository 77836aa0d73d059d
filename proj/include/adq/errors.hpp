#pragma once

#include <stdexcept>
#include <string>

namespace adq {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown node id.
class lookup_error : public error {
 public:
  using error::error;
};

// Operation requires a node in the search area.
class domain_error : public error {
 public:
  using error::error;
};

// A strategy or session was invoked on a tree it does not accept.
class precondition_error : public error {
 public:
  using error::error;
};

// Structural violation while building a tree (duplicate id, dangling child, cycle, ...).
class invalid_met_error : public error {
 public:
  using error::error;
};

// Malformed ET document text.
class format_error : public error {
 public:
  using error::error;
};

class session_error : public error {
 public:
  using error::error;
};

}  // namespace adq
