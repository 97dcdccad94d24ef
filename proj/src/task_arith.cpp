#include "taskfuse/task_arith.hpp"

#include <cmath>
#include <sstream>

#include "taskfuse/errors.hpp"
#include "taskfuse/util.hpp"

namespace taskfuse {

namespace {

void note(std::vector<std::string>* omitted, const std::string& message) {
  if (omitted != nullptr) {
    omitted->push_back(message);
  }
}

[[noreturn]] void throw_compat(const std::string& op, const std::vector<std::string>& offenders) {
  std::ostringstream msg;
  msg << op << ": incompatible checkpoints;";
  for (const auto& o : offenders) {
    msg << ' ' << o << ';';
  }
  throw ContractError(msg.str());
}

void check_dtype_agreement(const TensorEntry& a, const TensorEntry& b) {
  if (a.dtype != b.dtype) {
    throw ContractError("tensor \"" + a.name + "\" is " + dtype_name(a.dtype) +
                        " in one input and " + dtype_name(b.dtype) + " in the other");
  }
}

}  // namespace

MismatchPolicy parse_mismatch_policy(const std::string& name) {
  if (name == "strict") return MismatchPolicy::Strict;
  if (name == "skip") return MismatchPolicy::Skip;
  if (name == "intersect") return MismatchPolicy::Intersect;
  throw ContractError("unknown mismatch policy \"" + name + "\"");
}

TaskVector diff_checkpoints(const Checkpoint& domain, const Checkpoint& base,
                            MismatchPolicy policy, std::vector<std::string>* omitted) {
  if (policy == MismatchPolicy::Strict) {
    std::vector<std::string> offenders;
    for (const auto& [name, entry] : domain.entries) {
      auto it = base.entries.find(name);
      if (it == base.entries.end()) {
        offenders.push_back("\"" + name + "\" only in the domain checkpoint");
      } else if (entry.shape != it->second.shape) {
        offenders.push_back("\"" + name + "\" shape mismatch");
      }
    }
    for (const auto& [name, entry] : base.entries) {
      if (!domain.entries.contains(name)) {
        offenders.push_back("\"" + name + "\" only in the base checkpoint");
      }
    }
    if (!offenders.empty()) {
      throw_compat("diff", offenders);
    }
  }

  TaskVector tau;
  for (const auto& [name, d_entry] : domain.entries) {
    auto it = base.entries.find(name);
    if (it == base.entries.end()) {
      note(omitted, "\"" + name + "\": only in the domain checkpoint, omitted");
      continue;
    }
    const TensorEntry& b_entry = it->second;
    check_dtype_agreement(d_entry, b_entry);
    if (!is_float_dtype(d_entry.dtype)) {
      note(omitted, "\"" + name + "\": non-float dtype " + dtype_name(d_entry.dtype) +
                        ", not differenced");
      continue;
    }
    if (d_entry.shape != b_entry.shape) {
      if (policy == MismatchPolicy::Skip) {
        note(omitted, "\"" + name + "\": shape mismatch, skipped");
        continue;
      }
      throw ContractError("diff: tensor \"" + name + "\" shape mismatch");
    }
    tau.entries.emplace(
        name, entry_from_f64(name, d_entry.dtype, d_entry.shape,
                             entry_to_f64(d_entry) - entry_to_f64(b_entry)));
  }
  if (omitted != nullptr) {
    for (const auto& [name, entry] : base.entries) {
      if (!domain.entries.contains(name)) {
        note(omitted, "\"" + name + "\": only in the base checkpoint, omitted");
      }
    }
  }
  tau.metadata["role"] = "task_vector";
  return tau;
}

Checkpoint apply_task_vector(const Checkpoint& target, const TaskVector& tau, const MergeSpec& spec,
                             std::vector<std::string>* omitted) {
  if (!std::isfinite(spec.alpha)) {
    throw ContractError("alpha must be finite, got " + format_double(spec.alpha));
  }
  for (const auto& [name, entry] : tau.entries) {
    if (!is_float_dtype(entry.dtype)) {
      throw ContractError("task vector tensor \"" + name + "\" has non-float dtype " +
                          dtype_name(entry.dtype));
    }
  }

  if (spec.policy == MismatchPolicy::Strict) {
    // Non-float target tensors always pass through, so strict compares
    // the task vector's names against the target's float tensors.
    std::vector<std::string> offenders;
    for (const auto& [name, entry] : target.entries) {
      if (!is_float_dtype(entry.dtype)) {
        continue;
      }
      auto it = tau.entries.find(name);
      if (it == tau.entries.end()) {
        offenders.push_back("\"" + name + "\" only in the target checkpoint");
      } else if (entry.shape != it->second.shape) {
        offenders.push_back("\"" + name + "\" shape mismatch");
      }
    }
    for (const auto& [name, entry] : tau.entries) {
      if (!target.entries.contains(name)) {
        offenders.push_back("\"" + name + "\" only in the task vector");
      }
    }
    if (!offenders.empty()) {
      throw_compat("apply", offenders);
    }
  }

  Checkpoint merged;
  for (const auto& [name, t_entry] : target.entries) {
    auto it = tau.entries.find(name);
    if (it != tau.entries.end() && !is_float_dtype(t_entry.dtype)) {
      // tau is all-float at this point, so a shared non-float target
      // tensor is a dtype disagreement.
      check_dtype_agreement(t_entry, it->second);
    }
    if (it == tau.entries.end() || !is_float_dtype(t_entry.dtype)) {
      merged.entries.emplace(name, t_entry);
      continue;
    }
    const TensorEntry& v_entry = it->second;
    check_dtype_agreement(t_entry, v_entry);
    if (t_entry.shape != v_entry.shape) {
      if (spec.policy == MismatchPolicy::Skip) {
        note(omitted, "\"" + name + "\": shape mismatch, target passed through");
        merged.entries.emplace(name, t_entry);
        continue;
      }
      throw ContractError("apply: tensor \"" + name + "\" shape mismatch");
    }
    merged.entries.emplace(
        name, entry_from_f64(name, t_entry.dtype, t_entry.shape,
                             entry_to_f64(t_entry) + spec.alpha * entry_to_f64(v_entry)));
  }
  for (const auto& [name, entry] : tau.entries) {
    if (!target.entries.contains(name)) {
      note(omitted, "\"" + name + "\": only in the task vector, omitted");
    }
  }
  merged.metadata = target.metadata;
  merged.metadata["role"] = "merged";
  merged.metadata["alpha"] = format_double(spec.alpha);
  return merged;
}

TaskVector negate_task_vector(const TaskVector& tau) {
  TaskVector out;
  out.metadata = tau.metadata;
  for (const auto& [name, entry] : tau.entries) {
    if (!is_float_dtype(entry.dtype)) {
      throw ContractError("task vector tensor \"" + name + "\" has non-float dtype " +
                          dtype_name(entry.dtype));
    }
    out.entries.emplace(name,
                        entry_from_f64(name, entry.dtype, entry.shape, -entry_to_f64(entry)));
  }
  return out;
}

TaskVector combine_task_vectors(std::span<const WeightedTaskVector> terms) {
  if (terms.empty()) {
    throw ContractError("combine: empty term list");
  }
  const TaskVector& first = *terms.front().vector;
  for (const auto& term : terms) {
    if (!std::isfinite(term.weight)) {
      throw ContractError("combine: non-finite weight " + format_double(term.weight));
    }
    std::vector<std::string> offenders;
    for (const auto& [name, entry] : first.entries) {
      auto it = term.vector->entries.find(name);
      if (it == term.vector->entries.end()) {
        offenders.push_back("\"" + name + "\" missing from a term");
      } else {
        check_dtype_agreement(entry, it->second);
        if (entry.shape != it->second.shape) {
          offenders.push_back("\"" + name + "\" shape mismatch");
        }
      }
    }
    for (const auto& [name, entry] : term.vector->entries) {
      if (!first.entries.contains(name)) {
        offenders.push_back("\"" + name + "\" missing from the first term");
      }
    }
    if (!offenders.empty()) {
      throw_compat("combine", offenders);
    }
  }

  TaskVector out;
  for (const auto& [name, entry] : first.entries) {
    if (!is_float_dtype(entry.dtype)) {
      throw ContractError("task vector tensor \"" + name + "\" has non-float dtype " +
                          dtype_name(entry.dtype));
    }
    Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(entry.num_elements()));
    for (const auto& term : terms) {
      acc += term.weight * entry_to_f64(term.vector->entries.at(name));
    }
    out.entries.emplace(name, entry_from_f64(name, entry.dtype, entry.shape, acc));
  }
  out.metadata["role"] = "task_vector";
  return out;
}

}  // namespace taskfuse
