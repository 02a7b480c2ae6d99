from .types import MultiViewDataset, SyntheticSpec, ViewMatrix, remap_labels
from .io import load_dataset, save_dataset, read_labels_csv, write_labels_csv
from .synthetic import generate_synthetic
from .transforms import NORMALIZE_MODES, from_arrays, normalize_views

__all__ = [
    "MultiViewDataset",
    "SyntheticSpec",
    "ViewMatrix",
    "remap_labels",
    "load_dataset",
    "save_dataset",
    "read_labels_csv",
    "write_labels_csv",
    "generate_synthetic",
    "NORMALIZE_MODES",
    "from_arrays",
    "normalize_views",
]
