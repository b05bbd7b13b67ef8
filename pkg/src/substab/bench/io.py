"""Dense matrix files (CSV and MatrixMarket) and atomic writes."""
from __future__ import annotations

import contextlib
import os
import tempfile
from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse

FORMATS = ("csv", "mtx")
_EXTENSIONS = {".csv": "csv", ".txt": "csv", ".mtx": "mtx", ".mm": "mtx"}


def detect_format(path, fmt: str | None = None) -> str:
    if fmt is not None:
        if fmt not in FORMATS:
            raise ValueError(f"unknown matrix format {fmt!r}; choose from {FORMATS}")
        return fmt
    ext = Path(path).suffix.lower()
    if ext not in _EXTENSIONS:
        raise ValueError(f"cannot infer matrix format from {str(path)!r}; pass a format")
    return _EXTENSIONS[ext]


@contextlib.contextmanager
def atomic_path(path):
    """Yield a temporary path next to ``path`` and rename it into place on success."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=path.suffix)
    os.close(fd)
    try:
        yield Path(tmp)
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmp)
        raise


def read_matrix(path, fmt: str | None = None) -> np.ndarray:
    fmt = detect_format(path, fmt)
    if fmt == "csv":
        X = np.loadtxt(path, delimiter=",", ndmin=2, dtype=float)
    else:
        X = scipy.io.mmread(str(path))
        if scipy.sparse.issparse(X):
            X = X.toarray()
        X = np.asarray(X)
        if np.iscomplexobj(X):
            raise ValueError(f"{path}: complex matrices are not supported")
        X = X.astype(float)
    return X


def write_matrix(path, X, fmt: str | None = None) -> None:
    """Write ``X`` with 17 significant digits, enough to round-trip doubles."""
    fmt = detect_format(path, fmt)
    X = np.asarray(X, dtype=float)
    with atomic_path(path) as tmp:
        if fmt == "csv":
            np.savetxt(tmp, X, delimiter=",", fmt="%.17g")
        else:
            with open(tmp, "wb") as fh:
                scipy.io.mmwrite(fh, X, precision=17)
