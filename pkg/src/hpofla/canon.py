"""Canonical text emission.

Every file this package writes must be reproducible byte for byte, so all
floating point values go through one formatter (17 significant digits) and
JSON documents are emitted with insertion key order by a small serializer
instead of whatever the stdlib default happens to be. Files are written to a
temporary name and renamed into place so readers never observe a partial
document.
"""

import json
import math
import os
import tempfile

import numpy as np


def fmt_float(x) -> str:
    """Render a finite real with 17 significant digits."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("non-finite value cannot be serialized")
    return format(x, ".17g")


def dumps_canonical(obj) -> str:
    """Serialize nested dict/list/scalar data to deterministic JSON text."""
    out = []
    _emit(obj, out, 0)
    out.append("\n")
    return "".join(out)


def _emit(v, out, depth):
    pad = "  " * depth
    inner = "  " * (depth + 1)
    if v is None:
        out.append("null")
    elif isinstance(v, (bool, np.bool_)):
        out.append("true" if v else "false")
    elif isinstance(v, (int, np.integer)):
        out.append(str(int(v)))
    elif isinstance(v, (float, np.floating)):
        out.append(fmt_float(v))
    elif isinstance(v, str):
        out.append(json.dumps(v))
    elif isinstance(v, dict):
        if not v:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, val) in enumerate(v.items()):
            if not isinstance(k, str):
                raise TypeError(f"non-string key {k!r}")
            out.append(inner + json.dumps(k) + ": ")
            _emit(val, out, depth + 1)
            out.append(",\n" if i < len(v) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(v, (list, tuple)):
        if len(v) == 0:
            out.append("[]")
            return
        out.append("[\n")
        for i, val in enumerate(v):
            out.append(inner)
            _emit(val, out, depth + 1)
            out.append(",\n" if i < len(v) - 1 else "\n")
        out.append(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(v).__name__}")


def write_text_atomic(path: str, text: str) -> None:
    """Write text to path via a temp file in the same directory plus rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
