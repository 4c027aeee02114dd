#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pfilter {

/// Machine-readable category carried by every library exception.
enum class ErrorKind {
  EmptyColorSet,
  UnknownState,
  UnknownSymbol,
  UnknownColor,
  NoInitialState,
  DuplicateState,
  EmptyAlphabet,
  NotDeterministic,
  NotComplete,
  NoAcceptingState,
  CapExceeded,
  BudgetExhausted,
  InvalidArgument,
  Format,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Thrown when a subset construction would exceed its state cap.
class CapExceeded : public Error {
 public:
  explicit CapExceeded(std::size_t cap)
      : Error(ErrorKind::CapExceeded,
              "state cap of " + std::to_string(cap) + " exceeded"),
        cap_(cap) {}

  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

}  // namespace pfilter
