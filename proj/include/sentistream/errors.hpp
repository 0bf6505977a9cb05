#pragma once

#include <stdexcept>
#include <string>

namespace sentistream {

// Error taxonomy. Every failure the library reports deliberately goes
// through one of these; anything else escaping is a bug.

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

class InvalidCorpusError : public Error {
 public:
  using Error::Error;
};

class InvalidDomainError : public Error {
 public:
  using Error::Error;
};

class InvalidAspectError : public Error {
 public:
  using Error::Error;
};

class InvalidInputError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class TrainingDivergedError : public Error {
 public:
  TrainingDivergedError(const std::string& msg, int epoch, int batch)
      : Error(msg), epoch(epoch), batch(batch) {}
  int epoch;
  int batch;
};

class CheckpointError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sentistream
