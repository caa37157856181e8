#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbitwa
{

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or contract-violating input (bad automaton, bad word, duplicate support atoms, ...).
class InvalidInput : public Error
{
public:
  using Error::Error;
};

/// Raised instead of running a decision whose restricted automaton would exceed the state ceiling.
class ResourceLimitExceeded : public Error
{
public:
  ResourceLimitExceeded(std::string const &what, std::size_t required, std::size_t limit)
  : Error(what), _required(required), _limit(limit)
  {}

  std::size_t required() const { return _required; }
  std::size_t limit() const { return _limit; }

private:
  std::size_t _required;
  std::size_t _limit;
};

} // namespace orbitwa
