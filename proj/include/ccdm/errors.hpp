#pragma once

#include <stdexcept>
#include <string>

namespace ccdm {

// Base class for every error this library raises on bad input or bad data.
// Programming errors (violated internal invariants) use assertions instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// phat places probability on a symbol the reference distribution excludes.
class SupportViolation : public Error {
public:
    using Error::Error;
};

// An operation needs strictly positive probabilities and saw a zero.
class ZeroProbability : public Error {
public:
    using Error::Error;
};

// A sequence's symbol counts differ from the prescribed composition.
class CompositionMismatch : public Error {
public:
    using Error::Error;
};

// A type-class index outside [0, |T|).
class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

// A bit block whose length differs from the code's input length m.
class LengthMismatch : public Error {
public:
    using Error::Error;
};

// Strict decoding rejected a sequence that is in the type class but not in
// the codebook image.
class NotACodeword : public Error {
public:
    using Error::Error;
};

// An enumeration was requested past the configured size limit.
class TooLarge : public Error {
public:
    using Error::Error;
};

// A drawing model was asked for the next symbol after all n draws.
class Exhausted : public Error {
public:
    using Error::Error;
};

// Malformed textual or binary input (headers, payload sizes, numbers).
class FormatError : public Error {
public:
    using Error::Error;
};

// Underlying stream or file failure.
class IoFailure : public Error {
public:
    using Error::Error;
};

} // namespace ccdm
