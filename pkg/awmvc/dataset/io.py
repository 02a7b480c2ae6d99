"""
Dataset directories on disk.

Layout::

    <dir>/meta.json
    <dir>/<view files>      one per view, format named in meta.json
    <dir>/labels.csv        optional, one integer per line
"""
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Optional, Union

import numpy as np

from ..errors import DatasetIOError, DatasetValidationError, LabelError
from .formats import get_format
from .types import MultiViewDataset, ViewMatrix, remap_labels

logger = logging.getLogger(__name__)

META_FILE = "meta.json"
LABELS_FILE = "labels.csv"

PathLike = Union[str, Path]


def read_labels_csv(path: PathLike) -> np.ndarray:
    """Read one integer label per line. Blank lines are ignored."""
    path = Path(path)
    if not path.exists():
        raise DatasetIOError(f"labels file not found: {path}")
    values = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                values.append(int(text))
            except ValueError as e:
                raise LabelError(f"{path}:{lineno}: cannot parse label {text!r}") from e
    return np.asarray(values, dtype=np.int64)


def write_labels_csv(path: PathLike, labels: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for value in np.asarray(labels, dtype=np.int64):
            f.write(f"{int(value)}\n")


def _read_meta(directory: Path) -> dict:
    meta_path = directory / META_FILE
    if not meta_path.exists():
        raise DatasetIOError(f"{META_FILE} not found in {directory}")
    try:
        with open(meta_path, "r", encoding="utf-8") as f:
            meta = json.load(f)
    except json.JSONDecodeError as e:
        raise DatasetValidationError(f"{meta_path} is not valid JSON: {e}") from e

    if not isinstance(meta, dict):
        raise DatasetValidationError(f"{meta_path} must hold a JSON object")
    for key in ("n", "views"):
        if key not in meta:
            raise DatasetValidationError(f"{meta_path} is missing required key {key!r}")
    n = meta["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DatasetValidationError(f"{meta_path}: n must be a positive integer, got {n!r}")
    if not isinstance(meta["views"], list) or not meta["views"]:
        raise DatasetValidationError(f"{meta_path} must list at least one view")
    for index, entry in enumerate(meta["views"]):
        if not isinstance(entry, dict):
            raise DatasetValidationError(f"{meta_path}: view entry {index} must be an object, got {entry!r}")
        if not isinstance(entry.get("file"), str) or not entry["file"]:
            raise DatasetValidationError(f"{meta_path}: view entry {index} needs a 'file' name")
    return meta


def load_dataset(path: PathLike) -> MultiViewDataset:
    """
    Load and validate a dataset directory.

    Views come back in ``meta.json`` order. Every payload is checked
    against the declared ``d`` and the dataset-wide ``n`` before the
    dataset-level invariants run.
    """
    directory = Path(path)
    if not directory.is_dir():
        raise DatasetIOError(f"dataset directory not found: {directory}")

    meta = _read_meta(directory)
    n = int(meta["n"])
    views = []
    for index, entry in enumerate(meta["views"]):
        view_name = str(entry.get("name", f"view{index}"))
        view_path = directory / entry["file"]
        if not view_path.exists():
            raise DatasetIOError(f"view file not found: {view_path}")

        fmt = get_format(str(entry.get("format", "bin")))
        try:
            data = fmt.read(view_path)
        except OSError as e:
            raise DatasetIOError(f"cannot read {view_path}: {e}") from e

        declared_d = entry.get("d")
        if declared_d is not None and data.shape[0] != int(declared_d):
            raise DatasetValidationError(
                f"view {view_name!r}: meta.json declares d={declared_d} but payload has {data.shape[0]} rows"
            )
        if data.shape[1] != n:
            raise DatasetValidationError(
                f"view {view_name!r}: payload has {data.shape[1]} columns but meta.json declares n={n}"
            )
        views.append(ViewMatrix(name=view_name, data=data))

    labels: Optional[np.ndarray] = None
    labels_file = meta.get("labels_file")
    if labels_file:
        raw = read_labels_csv(directory / labels_file)
        if raw.shape[0] != n:
            raise DatasetValidationError(f"labels file has {raw.shape[0]} entries, expected n={n}")
        labels = remap_labels(raw)

    dataset = MultiViewDataset(views=tuple(views), labels=labels, name=str(meta.get("name", directory.name)))
    logger.info(
        f"[Dataset] Loaded {dataset.name!r}: n={dataset.n}, V={dataset.n_views}, dims={dataset.dims}, k_true={dataset.k_true}"
    )
    return dataset


def save_dataset(ds: MultiViewDataset, path: PathLike, fmt: str = "bin") -> Path:
    """
    Write ``ds`` under ``path`` (created if needed) and return the directory.

    The binary format reloads bit-exactly; CSV keeps 17 significant digits.
    """
    directory = Path(path)
    view_format = get_format(fmt)
    try:
        directory.mkdir(parents=True, exist_ok=True)
        entries = []
        for index, view in enumerate(ds.views):
            file_name = view_format.filename(f"view{index}")
            view_format.write(directory / file_name, view.data)
            entries.append({"name": view.name, "d": view.d, "file": file_name, "format": view_format.name})

        meta = {"name": ds.name, "n": ds.n, "views": entries}
        if ds.labels is not None:
            meta["labels_file"] = LABELS_FILE
            write_labels_csv(directory / LABELS_FILE, ds.labels)

        with open(directory / META_FILE, "w", encoding="utf-8") as f:
            json.dump(meta, f, indent=2)
    except OSError as e:
        raise DatasetIOError(f"cannot write dataset to {directory}: {e}") from e

    logger.info(f"[Dataset] Saved {ds.name!r} to {directory} ({view_format.name})")
    return directory
