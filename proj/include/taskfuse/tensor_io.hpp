#pragma once

#include <filesystem>

#include "taskfuse/tensor.hpp"

namespace taskfuse {

// Container layout: bytes 0..7 hold the little-endian u64 byte length N
// of a UTF-8 JSON header; the header maps tensor name ->
// {"dtype","shape","data_offsets"} plus an optional "__metadata__"
// string map; data_offsets index into the payload that starts at byte
// 8+N. This is the layout public model weights ship in, so files from
// model hubs load directly.

/// Reads a container file. Payload bytes are preserved exactly.
Checkpoint read_checkpoint(const std::filesystem::path& path);

/// Writes the canonical form: tensors in lexicographic name order,
/// contiguous offsets, no padding. Writing the same checkpoint twice
/// yields byte-identical files.
void write_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);

}  // namespace taskfuse
