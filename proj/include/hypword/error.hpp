#ifndef HYPWORD_ERROR_HPP_
#define HYPWORD_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypword {

  // Base class for every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // An argument lies outside the domain of an operation (foreign letters,
  // partial maps, already-annotated input, ...).
  class DomainError : public Error {
   public:
    using Error::Error;
  };

  // An operation's documented precondition does not hold.
  class PreconditionError : public Error {
   public:
    using Error::Error;
  };

  // A bounded exploration exceeded its cap.
  class ResourceError : public Error {
   public:
    using Error::Error;
  };

  // A rewriting system failed validation.
  class ValidationError : public Error {
   public:
    ValidationError(std::string const& family, std::string const& what)
        : Error("family " + family + ": " + what), _family(family) {}

    std::string const& family() const noexcept {
      return _family;
    }

   private:
    std::string _family;
  };

  // Malformed text input. Lines and columns are 1-based.
  class SyntaxError : public Error {
   public:
    SyntaxError(std::size_t line, std::size_t column, std::string const& what)
        : Error("line " + std::to_string(line) + ", column "
                + std::to_string(column) + ": " + what),
          _line(line),
          _column(column) {}

    std::size_t line() const noexcept {
      return _line;
    }
    std::size_t column() const noexcept {
      return _column;
    }

   private:
    std::size_t _line;
    std::size_t _column;
  };

}  // namespace hypword

#endif  // HYPWORD_ERROR_HPP_
