#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace imprand {

/// Failure categories. Each maps onto one exit/status code of the C API.
enum class ErrorKind {
  domain,     // argument outside its mathematical domain
  parse,      // malformed serialized input
  depth,      // evaluation beyond the data a spec declares
  resource,   // exhaustive work beyond a configured cap
  semantics,  // request has no defined meaning (e.g. sampling an imprecise system)
  rejected,   // strategy is not an allowed bet
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

/// Caps on exhaustive enumeration. Depths are tree levels, so work is 2^depth.
struct Limits {
  std::size_t exhaustive_depth = 16;
  std::size_t global_depth = 20;
  std::size_t oracle_depth = 4;
};

}  // namespace imprand
