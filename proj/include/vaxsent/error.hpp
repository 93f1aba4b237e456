#pragma once

#include <stdexcept>
#include <string>

namespace vaxsent {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or unwritable file.
class IoError : public Error {
 public:
  using Error::Error;
};

// A data file (table, lexicon, config) does not match its schema.
class FormatError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

class InvalidRangeError : public Error {
 public:
  using Error::Error;
};

class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

// Model file missing, precomputed id absent, or backend not compiled in.
class BackendUnavailableError : public Error {
 public:
  using Error::Error;
};

}  // namespace vaxsent
