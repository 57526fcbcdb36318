#pragma once

#include <stdexcept>
#include <string>

namespace hotline {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// -- chunking ----------------------------------------------------------------

struct EmptyTranscript : Error {
  using Error::Error;
};

// -- gateway / backends ------------------------------------------------------

/// Transport-level failure after all retries were exhausted (or a
/// non-retryable HTTP status). `attempts` counts requests actually sent.
struct TransportError : Error {
  TransportError(const std::string& msg, int attempts_made)
      : Error(msg), attempts(attempts_made) {}
  int attempts = 0;
};

struct AuthError : Error {
  using Error::Error;
};

/// The backend answered but with an empty or refusal-classified message.
struct BackendRefusal : Error {
  using Error::Error;
};

/// Mock backend received a request without a recognized task sentinel.
struct UnknownPromptShape : Error {
  using Error::Error;
};

// -- prediction --------------------------------------------------------------

struct MissingSummary : Error {
  using Error::Error;
};

struct BadExemplarSet : Error {
  using Error::Error;
};

struct UnparseableResponse : Error {
  using Error::Error;
};

struct ScoreOutOfRange : Error {
  using Error::Error;
};

// -- manual scale / fusion ---------------------------------------------------

struct InvalidAnswer : Error {
  using Error::Error;
};

struct MissingManualScore : Error {
  using Error::Error;
};

// -- evaluation --------------------------------------------------------------

struct EmptyRun : Error {
  using Error::Error;
};

/// A metric was defined on the original sample but in zero bootstrap
/// resamples, so no interval can be estimated.
struct AllResamplesUndefined : Error {
  using Error::Error;
};

// -- pipeline ----------------------------------------------------------------

struct ConfigError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

}  // namespace hotline
