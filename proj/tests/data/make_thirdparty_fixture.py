#!/usr/bin/env python3
"""Regenerates thirdparty_f16.safetensors with the reference safetensors library.

The values are chosen to be exactly representable in their dtypes so the
reader test can compare with == instead of a tolerance.
"""
import numpy as np
from safetensors.numpy import save_file

tensors = {
    "layer.weight": np.array(
        [[1.0, -2.5, 0.09375], [65504.0, 6.103515625e-05, -1.5]], dtype=np.float16
    ),
    "layer.bias": np.array([0.25, -8.0], dtype=np.float32),
}

save_file(tensors, "thirdparty_f16.safetensors", metadata={"role": "pretrained"})
print("wrote thirdparty_f16.safetensors")
