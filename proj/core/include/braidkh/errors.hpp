#pragma once

#include <stdexcept>
#include <string>

namespace braidkh {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text or JSON (bad token, missing field, bad braid letter).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The combinatorial map fails the Euler characteristic check.
class NonPlanarError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Edge directions disagree with the crossing port roles.
class OrientationError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// A state sum was requested on more crossings than the configured cap.
class SizeCapError : public Error {
 public:
  SizeCapError(int required, int cap)
      : Error("diagram has " + std::to_string(required) + " crossings, cap is " +
              std::to_string(cap)),
        required_(required),
        cap_(cap) {}

  int required() const noexcept { return required_; }
  int cap() const noexcept { return cap_; }

 private:
  int required_;
  int cap_;
};

/// Operation needs data the diagram does not carry (e.g. closure arcs).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A move site no longer matches the diagram it is applied to.
class SiteInvalidError : public Error {
 public:
  using Error::Error;
};

/// Random move generation ran out of applicable moves.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Precondition violated by the caller (wrong smoothing length, bad crossing id...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace braidkh
