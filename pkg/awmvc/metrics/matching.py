from typing import List, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment


def hungarian_max(match_value: np.ndarray) -> List[Tuple[int, int]]:
    """
    Maximum-total-value one-to-one assignment of min(a, b) (row, col) pairs,
    sorted by row.
    """
    value = np.asarray(match_value, dtype=np.float64)
    if value.ndim != 2:
        raise ValueError(f"expected a 2-D value matrix, got ndim={value.ndim}")
    if not np.all(np.isfinite(value)):
        raise ValueError("value matrix contains non-finite entries")
    if value.size == 0:
        return []
    rows, cols = linear_sum_assignment(value, maximize=True)
    return [(int(r), int(c)) for r, c in zip(rows, cols)]
