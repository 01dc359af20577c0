#pragma once

#include <cassert>
#include <string>
#include <utility>
#include <variant>

namespace arguendo {

// Error codes shared across the toolkit. Each operation documents the subset
// it can produce.
enum class Errc {
  // spans and analyses
  kNonAdjacent,
  kOverlap,
  kInvalidAnalysis,
  kBoundExceeded,
  // relation catalog
  kMissingField,
  kDuplicateName,
  // argument layer
  kSchemaMismatch,
  kCycleDetected,
  kDisconnectedFragment,
  kMultipleRoots,
  kInvalidStructure,
  kMissingArgumentativeSection,
  kSectionOrderViolation,
  kDuplicateSection,
  // planning and refinement
  kRequirementsUnmet,
  kContradiction,
  kNoPlan,
  kDepthExceeded,
  kUnmappedForm,
  kNonArgumentativeTarget,
  // contract graphs
  kDanglingReference,
  kSpanOutOfRange,
  kSelfLoop,
  kUnknownNode,
  // serialization
  kUnsupportedFormat,
};

const char* to_string(Errc code);

struct Error {
  Errc code;
  std::string message;
};

inline Error make_error(Errc code, std::string message) {
  return Error{code, std::move(message)};
}

// Value-or-error carrier used by every fallible operation. Rejections that
// are part of an operation's normal output (e.g. a ValidationReport) are not
// errors and do not go through Result.
template <typename T>
class [[nodiscard]] Result {
 public:
  Result(T value) : data_(std::move(value)) {}
  Result(Error error) : data_(std::move(error)) {}

  [[nodiscard]] bool ok() const { return std::holds_alternative<T>(data_); }

  const T& value() const& {
    assert(ok());
    return std::get<T>(data_);
  }
  T& value() & {
    assert(ok());
    return std::get<T>(data_);
  }
  T&& value() && {
    assert(ok());
    return std::get<T>(std::move(data_));
  }

  const Error& error() const {
    assert(!ok());
    return std::get<Error>(data_);
  }
  Errc code() const { return error().code; }

 private:
  std::variant<T, Error> data_;
};

// Result for operations with no payload.
class [[nodiscard]] Status {
 public:
  Status() = default;
  Status(Error error) : error_(std::move(error)), failed_(true) {}

  [[nodiscard]] bool ok() const { return !failed_; }
  const Error& error() const {
    assert(failed_);
    return error_;
  }
  Errc code() const { return error().code; }

 private:
  Error error_{};
  bool failed_ = false;
};

}  // namespace arguendo
