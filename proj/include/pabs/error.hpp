#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pabs {

// Machine-readable failure classes. The CLI maps each class onto an exit code
// and prints its name.
enum class ErrorClass {
  DimMismatch,
  EmptySubspace,
  NotOrthonormal,
  NonFinite,
  SvdFailure,
  RankCondition,
  ThetaLtHalfPi,
  DimOrder,
  CountMismatch,
  InconsistentClassification,
  InvalidSpec,
};

std::string_view error_class_name(ErrorClass c) noexcept;

// True for classes that signal a violated mathematical precondition of the
// input (exit code 3 in the CLI) rather than malformed usage.
bool is_precondition(ErrorClass c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorClass c, const std::string& what)
      : std::runtime_error(what), class_(c) {}

  ErrorClass error_class() const noexcept { return class_; }
  std::string_view class_name() const noexcept {
    return error_class_name(class_);
  }

 private:
  ErrorClass class_;
};

}  // namespace pabs
