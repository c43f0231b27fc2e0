#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace esdlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside an operation's documented range.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Matrix that is not a valid two-qubit density matrix.
class InvalidState : public Error {
 public:
  using Error::Error;
};

// Robustness is only defined where sudden death occurs; separable inputs
// have no critical point.
class SeparableState : public Error {
 public:
  using Error::Error;
};

// A root search failed. `brackets` lists every sign change the scan saw
// (empty when there was none).
class RootNotFound : public Error {
 public:
  struct Bracket {
    double lo;
    double hi;
  };

  RootNotFound(const std::string& what, std::vector<Bracket> brackets = {})
      : Error(what), brackets_(std::move(brackets)) {}

  const std::vector<Bracket>& brackets() const noexcept { return brackets_; }

 private:
  std::vector<Bracket> brackets_;
};

// Problem has no well-defined answer at these parameters (e.g. a
// constraint curve that collapses to a point).
class Degenerate : public Error {
 public:
  using Error::Error;
};

}  // namespace esdlab
