#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace setlab {

// Base class for everything this library throws on purpose.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model invariant would be violated: out-of-range elements, image not
// disjoint from its tuple, budget overflow, containment failures between a
// condition's partial mapping and the ambient mapping, inconsistent inputs.
class invariant_error : public error {
 public:
  using error::error;
};

// The caller asked for something an operation does not support: wrong arity,
// missing structural flag, parameters outside the documented range.
class usage_error : public error {
 public:
  using error::error;
};

// Input document could not be decoded into a model object.
class parse_error : public error {
 public:
  using error::error;
};

// A bounded search hit its node or time budget before finishing.  Carries the
// progress made so far so callers can report it distinctly from a plain fail.
class resource_limit_error : public error {
 public:
  resource_limit_error(const std::string& what, std::uint64_t nodes, double seconds)
      : error(what), nodes_explored(nodes), seconds_elapsed(seconds) {}

  std::uint64_t nodes_explored = 0;
  double seconds_elapsed = 0.0;
};

}  // namespace setlab
