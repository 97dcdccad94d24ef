#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "taskfuse/dtype.hpp"

namespace taskfuse {

/// One named tensor: dtype, shape and its raw little-endian row-major
/// payload. The buffer is kept as stored; nothing is reinterpreted
/// until an arithmetic op asks for float64 values.
struct TensorEntry {
  std::string name;
  Dtype dtype = Dtype::F32;
  std::vector<std::int64_t> shape;
  std::vector<std::uint8_t> data;

  std::size_t num_elements() const;
  std::size_t byte_size() const { return data.size(); }

  bool operator==(const TensorEntry&) const = default;
};

/// Validates the entry invariants (non-empty name, non-negative dims,
/// buffer length = product(shape) * dtype width). Throws ContractError.
void validate_entry(const TensorEntry& entry);

/// An ordered collection of named tensors plus free-form string
/// metadata. Iteration over `entries` is lexicographic by name no
/// matter how the checkpoint was assembled. A task vector is a
/// Checkpoint whose metadata carries role = "task_vector".
struct Checkpoint {
  std::map<std::string, TensorEntry> entries;
  std::map<std::string, std::string> metadata;

  void add(TensorEntry entry);
  bool operator==(const Checkpoint&) const = default;
};

using TaskVector = Checkpoint;

/// Decodes the payload to float64, one value per element.
Eigen::ArrayXd entry_to_f64(const TensorEntry& entry);

/// Rounds a float64 array once into `dtype` storage and wraps it in an
/// entry with the given name/shape.
TensorEntry entry_from_f64(const std::string& name, Dtype dtype,
                           const std::vector<std::int64_t>& shape,
                           const Eigen::ArrayXd& values);

/// Convenience constructors used by tests and the fixture trainer.
TensorEntry make_f32_entry(const std::string& name, const std::vector<std::int64_t>& shape,
                           const std::vector<float>& values);
TensorEntry make_f64_entry(const std::string& name, const std::vector<std::int64_t>& shape,
                           const std::vector<double>& values);

std::vector<float> entry_to_f32_values(const TensorEntry& entry);

}  // namespace taskfuse
