#pragma once

#include <span>
#include <string>
#include <vector>

#include "taskfuse/tensor.hpp"

namespace taskfuse {

/// What to do when two checkpoints do not carry the same tensors.
///  - Strict:    name sets and shapes must match exactly, else error.
///  - Intersect: operate on the name intersection; a shape mismatch
///               within the intersection is still an error.
///  - Skip:      operate on the name intersection and also drop
///               shape-mismatched tensors (as published fine-tunes do
///               when a vocabulary is resized).
/// Every omission lands in the caller's warning list; nothing is
/// dropped silently. A dtype disagreement on a shared name is an error
/// under all policies.
enum class MismatchPolicy { Strict, Skip, Intersect };

MismatchPolicy parse_mismatch_policy(const std::string& name);

struct MergeSpec {
  double alpha = 1.0;
  MismatchPolicy policy = MismatchPolicy::Strict;
};

/// Task vector extraction: tau = domain - base, elementwise, computed
/// in float64 and stored back in the input dtype. Non-float tensors are
/// never differenced; they are omitted from the result and reported.
TaskVector diff_checkpoints(const Checkpoint& domain, const Checkpoint& base,
                            MismatchPolicy policy, std::vector<std::string>* omitted = nullptr);

/// Scaled merge: out = target + alpha * tau per tensor (float64
/// accumulation, one rounding back to the storage dtype). Tensors of
/// `target` absent from `tau` pass through unchanged; non-float tensors
/// in `tau` are an error. Result metadata records role=merged and alpha.
Checkpoint apply_task_vector(const Checkpoint& target, const TaskVector& tau,
                             const MergeSpec& spec, std::vector<std::string>* omitted = nullptr);

/// Elementwise negation; apply(negate(tau), alpha) == apply(tau, -alpha).
TaskVector negate_task_vector(const TaskVector& tau);

struct WeightedTaskVector {
  const TaskVector* vector;
  double weight;
};

/// Elementwise sum(weight_i * tau_i) in float64. All vectors must be
/// pairwise compatible under Strict.
TaskVector combine_task_vectors(std::span<const WeightedTaskVector> terms);

}  // namespace taskfuse
