#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sgdlp {

  //! Base of every exception thrown by this library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class InvalidArgument : public Error {
   public:
    using Error::Error;
  };

  //! Malformed serialized element or instance document. `position()` is a
  //! byte offset for payloads and a 1-based line number for documents.
  class ParseError : public Error {
   public:
    ParseError(std::string const& what, std::size_t position)
        : Error(what), position_(position) {}

    std::size_t position() const noexcept {
      return position_;
    }

   private:
    std::size_t position_;
  };

  //! The power sequence did not close a cycle within the step cap.
  class AperiodicAtCap : public Error {
   public:
    using Error::Error;
  };

  //! An oracle could not produce a verified logarithm.
  class NotFound : public Error {
   public:
    using Error::Error;
  };

  //! The challenge is not a power of the base.
  class PromiseViolation : public Error {
   public:
    using Error::Error;
  };

  class InternalInconsistency : public Error {
   public:
    using Error::Error;
  };

  class RetryBudgetExhausted : public Error {
   public:
    using Error::Error;
  };

}  // namespace sgdlp
