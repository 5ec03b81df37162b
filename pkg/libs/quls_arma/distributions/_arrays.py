"""Small array helpers shared by the distribution modules."""

from typing import Union

import numpy as np

ArrayLike = Union[float, np.ndarray]


def as_output(arr) -> ArrayLike:
    """Return a Python float for 0-d results and the array otherwise."""
    arr = np.asarray(arr)
    return float(arr) if arr.ndim == 0 else arr
