#include "taskfuse/tensor.hpp"

#include <cstring>
#include <limits>

#include <Eigen/Core>

#include "taskfuse/errors.hpp"

namespace taskfuse {

std::size_t dtype_width(Dtype d) {
  switch (d) {
    case Dtype::F16:
    case Dtype::I16:
    case Dtype::U16:
      return 2;
    case Dtype::F32:
    case Dtype::I32:
    case Dtype::U32:
      return 4;
    case Dtype::F64:
    case Dtype::I64:
    case Dtype::U64:
      return 8;
    case Dtype::I8:
    case Dtype::U8:
    case Dtype::Bool:
      return 1;
  }
  return 0;
}

const char* dtype_name(Dtype d) {
  switch (d) {
    case Dtype::F16: return "F16";
    case Dtype::F32: return "F32";
    case Dtype::F64: return "F64";
    case Dtype::I8: return "I8";
    case Dtype::I16: return "I16";
    case Dtype::I32: return "I32";
    case Dtype::I64: return "I64";
    case Dtype::U8: return "U8";
    case Dtype::U16: return "U16";
    case Dtype::U32: return "U32";
    case Dtype::U64: return "U64";
    case Dtype::Bool: return "BOOL";
  }
  return "?";
}

Dtype parse_dtype(const std::string& tag) {
  if (tag == "F16") return Dtype::F16;
  if (tag == "F32") return Dtype::F32;
  if (tag == "F64") return Dtype::F64;
  if (tag == "I8") return Dtype::I8;
  if (tag == "I16") return Dtype::I16;
  if (tag == "I32") return Dtype::I32;
  if (tag == "I64") return Dtype::I64;
  if (tag == "U8") return Dtype::U8;
  if (tag == "U16") return Dtype::U16;
  if (tag == "U32") return Dtype::U32;
  if (tag == "U64") return Dtype::U64;
  if (tag == "BOOL") return Dtype::Bool;
  throw FormatError(FormatError::Code::UnsupportedDtype, "unsupported dtype \"" + tag + "\"");
}

bool is_float_dtype(Dtype d) {
  return d == Dtype::F16 || d == Dtype::F32 || d == Dtype::F64;
}

float f16_bits_to_float(std::uint16_t bits) {
  Eigen::half h = Eigen::numext::bit_cast<Eigen::half>(bits);
  return static_cast<float>(h);
}

std::uint16_t float_to_f16_bits(float value) {
  Eigen::half h(value);
  return Eigen::numext::bit_cast<std::uint16_t>(h);
}

std::size_t TensorEntry::num_elements() const {
  std::size_t n = 1;
  for (auto dim : shape) {
    n *= static_cast<std::size_t>(dim);
  }
  return n;
}

void validate_entry(const TensorEntry& entry) {
  if (entry.name.empty()) {
    throw ContractError("tensor with empty name");
  }
  for (auto dim : entry.shape) {
    if (dim < 0) {
      throw ContractError("tensor \"" + entry.name + "\" has a negative dimension");
    }
  }
  std::size_t expected = entry.num_elements() * dtype_width(entry.dtype);
  if (entry.data.size() != expected) {
    throw ContractError("tensor \"" + entry.name + "\" buffer is " +
                        std::to_string(entry.data.size()) + " bytes, expected " +
                        std::to_string(expected));
  }
}

void Checkpoint::add(TensorEntry entry) {
  validate_entry(entry);
  auto name = entry.name;
  if (!entries.emplace(name, std::move(entry)).second) {
    throw ContractError("duplicate tensor name \"" + name + "\"");
  }
}

namespace {

template <typename T>
Eigen::ArrayXd widen(const TensorEntry& entry) {
  const auto n = static_cast<Eigen::Index>(entry.num_elements());
  Eigen::ArrayXd out(n);
  const T* src = reinterpret_cast<const T*>(entry.data.data());
  for (Eigen::Index i = 0; i < n; ++i) {
    out[i] = static_cast<double>(src[i]);
  }
  return out;
}

template <typename T>
void narrow(const Eigen::ArrayXd& values, std::vector<std::uint8_t>& bytes) {
  bytes.resize(static_cast<std::size_t>(values.size()) * sizeof(T));
  T* dst = reinterpret_cast<T*>(bytes.data());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    dst[i] = static_cast<T>(values[i]);
  }
}

}  // namespace

Eigen::ArrayXd entry_to_f64(const TensorEntry& entry) {
  switch (entry.dtype) {
    case Dtype::F32:
      return widen<float>(entry);
    case Dtype::F64:
      return widen<double>(entry);
    case Dtype::F16: {
      const auto n = static_cast<Eigen::Index>(entry.num_elements());
      Eigen::ArrayXd out(n);
      const std::uint16_t* src = reinterpret_cast<const std::uint16_t*>(entry.data.data());
      for (Eigen::Index i = 0; i < n; ++i) {
        out[i] = static_cast<double>(f16_bits_to_float(src[i]));
      }
      return out;
    }
    default:
      throw ContractError(std::string("tensor \"") + entry.name + "\" has non-float dtype " +
                          dtype_name(entry.dtype));
  }
}

TensorEntry entry_from_f64(const std::string& name, Dtype dtype,
                           const std::vector<std::int64_t>& shape, const Eigen::ArrayXd& values) {
  TensorEntry entry;
  entry.name = name;
  entry.dtype = dtype;
  entry.shape = shape;
  switch (dtype) {
    case Dtype::F32:
      narrow<float>(values, entry.data);
      break;
    case Dtype::F64:
      narrow<double>(values, entry.data);
      break;
    case Dtype::F16: {
      entry.data.resize(static_cast<std::size_t>(values.size()) * 2);
      std::uint16_t* dst = reinterpret_cast<std::uint16_t*>(entry.data.data());
      for (Eigen::Index i = 0; i < values.size(); ++i) {
        dst[i] = float_to_f16_bits(static_cast<float>(values[i]));
      }
      break;
    }
    default:
      throw ContractError("cannot store float values as " + std::string(dtype_name(dtype)));
  }
  validate_entry(entry);
  return entry;
}

TensorEntry make_f32_entry(const std::string& name, const std::vector<std::int64_t>& shape,
                           const std::vector<float>& values) {
  TensorEntry entry;
  entry.name = name;
  entry.dtype = Dtype::F32;
  entry.shape = shape;
  entry.data.resize(values.size() * sizeof(float));
  std::memcpy(entry.data.data(), values.data(), entry.data.size());
  validate_entry(entry);
  return entry;
}

TensorEntry make_f64_entry(const std::string& name, const std::vector<std::int64_t>& shape,
                           const std::vector<double>& values) {
  TensorEntry entry;
  entry.name = name;
  entry.dtype = Dtype::F64;
  entry.shape = shape;
  entry.data.resize(values.size() * sizeof(double));
  std::memcpy(entry.data.data(), values.data(), entry.data.size());
  validate_entry(entry);
  return entry;
}

std::vector<float> entry_to_f32_values(const TensorEntry& entry) {
  if (entry.dtype != Dtype::F32) {
    throw ContractError("tensor \"" + entry.name + "\" is not F32");
  }
  std::vector<float> out(entry.num_elements());
  std::memcpy(out.data(), entry.data.data(), entry.data.size());
  return out;
}

}  // namespace taskfuse
