#pragma once

#include <stdexcept>
#include <string>

namespace abalearn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationFailed : public Error {
 public:
  using Error::Error;
};

class UnsafeRule : public Error {
 public:
  using Error::Error;
};

class EmptyUniverse : public Error {
 public:
  using Error::Error;
};

class EnumerationTruncated : public Error {
 public:
  using Error::Error;
};

class UnknownAssumption : public Error {
 public:
  using Error::Error;
};

class AssumptionAsFact : public Error {
 public:
  using Error::Error;
};

class NoMatch : public Error {
 public:
  using Error::Error;
};

class SolverSpawnFailed : public Error {
 public:
  using Error::Error;
};

class SolverOutputUnparseable : public Error {
 public:
  SolverOutputUnparseable(const std::string& what, std::string raw)
      : Error(what), raw_output(std::move(raw)) {}
  std::string raw_output;
};

}  // namespace abalearn
