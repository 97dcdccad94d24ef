#pragma once

#include <stdexcept>
#include <string>

namespace taskfuse {

/// Malformed or inconsistent input data (files, headers, tables).
/// Maps to CLI exit code 2.
class FormatError : public std::runtime_error {
 public:
  enum class Code {
    Io,               // unreadable/unwritable path, truncated file
    MalformedHeader,  // header is not the expected JSON shape
    HeaderTooLarge,   // declared header length exceeds file size
    OffsetOutOfBounds,
    OverlappingOffsets,
    DuplicateName,
    UnsupportedDtype,
    BadRecord,  // malformed line/field in a text format
  };

  FormatError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// Violated operation precondition or numerical contract (incompatible
/// tensor sets, non-finite alpha, out-of-range weights). CLI exit code 3.
class ContractError : public std::runtime_error {
 public:
  explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace taskfuse
