#pragma once

#include <stdexcept>
#include <string>

namespace jacobi {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

class SingularMatrixError : public Error {
public:
  using Error::Error;
};

class NotHermitianError : public Error {
public:
  using Error::Error;
};

class NotPositiveError : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class EmptyGridError : public Error {
public:
  using Error::Error;
};

class InvalidPartitionError : public Error {
public:
  using Error::Error;
};

class NotPointDefectError : public Error {
public:
  using Error::Error;
};

class DegenerateFitError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace jacobi
