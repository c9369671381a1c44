#pragma once

#include <stdexcept>
#include <string>

namespace dronesec {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A byte-string argument has the wrong length for the operation.
struct InvalidLength : Error {
    using Error::Error;
};

/// AEAD tag verification failed; plaintext is not released.
struct AuthFailure : Error {
    using Error::Error;
};

/// PKCS#7 unpadding failed (or the ciphertext body is not block-aligned).
struct PaddingError : Error {
    using Error::Error;
};

/// Ciphertext or frame shape does not match the configured mode/protocol.
struct ModeMismatch : Error {
    using Error::Error;
};

/// Wire bytes do not decode to a well-formed frame or command.
struct DecodeError : Error {
    using Error::Error;
};

/// The 32-bit send counter is exhausted; no rollover is defined.
struct SeqExhausted : Error {
    using Error::Error;
};

/// An observation contradicts an existing codebook entry.
struct InconsistentObservation : Error {
    using Error::Error;
};

/// Configuration is malformed or internally inconsistent.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace dronesec
