#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace taskfuse {

/// Scalar types storable in the tensor container. Only the three float
/// types take part in arithmetic; the integer types are carried through
/// untouched.
enum class Dtype : std::uint8_t {
  F16,
  F32,
  F64,
  I8,
  I16,
  I32,
  I64,
  U8,
  U16,
  U32,
  U64,
  Bool,
};

std::size_t dtype_width(Dtype d);
const char* dtype_name(Dtype d);

/// Parses a container dtype tag ("F32", "I64", ...). Throws
/// FormatError::Code::UnsupportedDtype for anything else (including
/// tags like "BF16" that the container standard knows but this toolkit
/// does not accept).
Dtype parse_dtype(const std::string& tag);

bool is_float_dtype(Dtype d);

/// IEEE 754 binary16 <-> float, round-to-nearest-even on the way down.
float f16_bits_to_float(std::uint16_t bits);
std::uint16_t float_to_f16_bits(float value);

}  // namespace taskfuse
