"""Raw image blobs: 3x96x96 little-endian float32, channel-major."""

from pathlib import Path

import numpy as np

SHAPE = (3, 96, 96)


def read_blob(path) -> np.ndarray:
    data = np.fromfile(path, dtype="<f4")
    if data.size != np.prod(SHAPE):
        raise ValueError(f"{path}: {data.size} floats, expected {np.prod(SHAPE)}")
    return data.astype(np.float32).reshape(SHAPE)


def write_blob(path, image: np.ndarray) -> None:
    arr = np.asarray(image, dtype="<f4")
    if arr.shape != SHAPE:
        raise ValueError(f"image shape {arr.shape}, expected {SHAPE}")
    Path(path).write_bytes(np.ascontiguousarray(arr).tobytes())
