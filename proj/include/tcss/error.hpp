#pragma once

#include <stdexcept>
#include <string>

namespace tcss {

// Every failure the library can signal, one code per class so the CLI can
// map them onto distinct exit codes.
enum class Errc {
  NotPrime,
  ModulusTooLarge,
  ModulusMismatch,
  ZeroInverse,
  BadThreshold,
  DuplicateId,
  ZeroId,
  IdNotInGroup,
  SelfSend,
  NotCoprime,
  GroupTooSmall,
  RoundCountTooLarge,
  IncompleteRcSet,
  SearchBudgetExceeded,
  InterfaceViolation,
  Format,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace tcss
