#include "taskfuse/tensor_io.hpp"

#include <cstring>
#include <set>
#include <utility>

#include <nlohmann/json.hpp>

#include "taskfuse/errors.hpp"
#include "taskfuse/util.hpp"

namespace taskfuse {

namespace {

using json = nlohmann::json;

json parse_header_checking_duplicates(const char* begin, const char* end) {
  // nlohmann keeps the last value for a repeated key, so duplicate tensor
  // names have to be caught during parsing.
  bool duplicate = false;
  std::set<std::string> seen;
  json::parser_callback_t cb = [&](int depth, json::parse_event_t event, json& parsed) {
    if (depth == 1 && event == json::parse_event_t::key) {
      if (!seen.insert(parsed.get<std::string>()).second) {
        duplicate = true;
      }
    }
    return true;
  };
  json header;
  try {
    header = json::parse(begin, end, cb);
  } catch (const json::exception& e) {
    throw FormatError(FormatError::Code::MalformedHeader,
                      std::string("malformed header JSON: ") + e.what());
  }
  if (duplicate) {
    throw FormatError(FormatError::Code::DuplicateName, "duplicate tensor name in header");
  }
  if (!header.is_object()) {
    throw FormatError(FormatError::Code::MalformedHeader, "header is not a JSON object");
  }
  return header;
}

}  // namespace

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  if (bytes.size() < 8) {
    throw FormatError(FormatError::Code::MalformedHeader,
                      path.string() + ": file too small for a header length field");
  }
  std::uint64_t header_len = 0;
  std::memcpy(&header_len, bytes.data(), 8);
  if (header_len > bytes.size() - 8) {
    throw FormatError(FormatError::Code::HeaderTooLarge,
                      path.string() + ": header length " + std::to_string(header_len) +
                          " exceeds file size " + std::to_string(bytes.size()));
  }
  const char* header_begin = reinterpret_cast<const char*>(bytes.data()) + 8;
  const json header = parse_header_checking_duplicates(header_begin, header_begin + header_len);

  const std::uint8_t* payload = bytes.data() + 8 + header_len;
  const std::uint64_t payload_size = bytes.size() - 8 - header_len;

  Checkpoint ckpt;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> spans;
  for (const auto& [name, value] : header.items()) {
    if (name == "__metadata__") {
      if (!value.is_object()) {
        throw FormatError(FormatError::Code::MalformedHeader, "__metadata__ is not an object");
      }
      for (const auto& [k, v] : value.items()) {
        if (!v.is_string()) {
          throw FormatError(FormatError::Code::MalformedHeader,
                            "__metadata__ value for \"" + k + "\" is not a string");
        }
        ckpt.metadata[k] = v.get<std::string>();
      }
      continue;
    }
    if (!value.is_object() || !value.contains("dtype") || !value.contains("shape") ||
        !value.contains("data_offsets")) {
      throw FormatError(FormatError::Code::MalformedHeader,
                        "tensor \"" + name + "\" is missing dtype/shape/data_offsets");
    }
    TensorEntry entry;
    entry.name = name;
    entry.dtype = parse_dtype(value["dtype"].get<std::string>());
    const auto& shape = value["shape"];
    if (!shape.is_array()) {
      throw FormatError(FormatError::Code::MalformedHeader,
                        "tensor \"" + name + "\" shape is not an array");
    }
    for (const auto& dim : shape) {
      if (!dim.is_number_integer() || dim.get<std::int64_t>() < 0) {
        throw FormatError(FormatError::Code::MalformedHeader,
                          "tensor \"" + name + "\" has a bad dimension");
      }
      entry.shape.push_back(dim.get<std::int64_t>());
    }
    const auto& offsets = value["data_offsets"];
    if (!offsets.is_array() || offsets.size() != 2 || !offsets[0].is_number_unsigned() ||
        !offsets[1].is_number_unsigned()) {
      throw FormatError(FormatError::Code::MalformedHeader,
                        "tensor \"" + name + "\" has bad data_offsets");
    }
    const auto begin = offsets[0].get<std::uint64_t>();
    const auto end = offsets[1].get<std::uint64_t>();
    if (begin > end || end > payload_size) {
      throw FormatError(FormatError::Code::OffsetOutOfBounds,
                        "tensor \"" + name + "\" offsets [" + std::to_string(begin) + ", " +
                            std::to_string(end) + ") fall outside the payload of " +
                            std::to_string(payload_size) + " bytes");
    }
    const std::uint64_t expected = entry.num_elements() * dtype_width(entry.dtype);
    if (end - begin != expected) {
      throw FormatError(FormatError::Code::MalformedHeader,
                        "tensor \"" + name + "\" spans " + std::to_string(end - begin) +
                            " bytes but shape needs " + std::to_string(expected));
    }
    if (end > begin) {
      spans.emplace_back(begin, end);
    }
    entry.data.assign(payload + begin, payload + end);
    ckpt.entries.emplace(name, std::move(entry));
  }

  std::sort(spans.begin(), spans.end());
  for (std::size_t i = 1; i < spans.size(); ++i) {
    if (spans[i].first < spans[i - 1].second) {
      throw FormatError(FormatError::Code::OverlappingOffsets,
                        path.string() + ": tensor data ranges overlap");
    }
  }
  return ckpt;
}

void write_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  json header = json::object();
  if (!ckpt.metadata.empty()) {
    header["__metadata__"] = ckpt.metadata;
  }
  std::uint64_t offset = 0;
  std::uint64_t total = 0;
  for (const auto& [name, entry] : ckpt.entries) {
    validate_entry(entry);
    if (name != entry.name) {
      throw ContractError("entry key \"" + name + "\" disagrees with tensor name \"" +
                          entry.name + "\"");
    }
    json info;
    info["dtype"] = dtype_name(entry.dtype);
    info["shape"] = entry.shape;
    info["data_offsets"] = {offset, offset + entry.data.size()};
    header[name] = std::move(info);
    offset += entry.data.size();
    total += entry.data.size();
  }
  const std::string header_text = header.dump();

  std::vector<std::uint8_t> out;
  out.reserve(8 + header_text.size() + total);
  std::uint64_t header_len = header_text.size();
  out.resize(8);
  std::memcpy(out.data(), &header_len, 8);
  out.insert(out.end(), header_text.begin(), header_text.end());
  for (const auto& [name, entry] : ckpt.entries) {
    out.insert(out.end(), entry.data.begin(), entry.data.end());
  }
  write_file_bytes(path, out.data(), out.size());
}

}  // namespace taskfuse
