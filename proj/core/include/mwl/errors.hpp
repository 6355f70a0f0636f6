#pragma once

#include <stdexcept>
#include <string>

namespace mwl {

/// Error categories; the numeric value doubles as the CLI exit code.
enum class ErrorCode : int {
  coverage = 2,      // an epsilon-net could not be certified
  disconnected = 3,  // graph has more than one component (or an isolated vertex)
  io = 4,            // file system failure
  parse = 5,         // malformed input file
  precondition = 6,  // caller violated a documented precondition
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  int exit_code() const noexcept { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) throw Error(code, what);
}

}  // namespace mwl
