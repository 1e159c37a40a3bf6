#pragma once

#include <stdexcept>
#include <string>

namespace finsch {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidHom : public Error {
 public:
  using Error::Error;
};

class NotLocalizationPresented : public Error {
 public:
  using Error::Error;
};

class SectionsNotPresented : public Error {
 public:
  using Error::Error;
};

class UngradedModule : public Error {
 public:
  using Error::Error;
};

class InfiniteGradedPiece : public Error {
 public:
  using Error::Error;
};

class DegreeBoundExceeded : public Error {
 public:
  using Error::Error;
};

class NotOpen : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

class Uncertified : public Error {
 public:
  using Error::Error;
};
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace finsch
