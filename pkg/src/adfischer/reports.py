"""Matrix text files and machine-readable run reports.

Matrix files hold one row per line with whitespace-separated entries written
as ``a+bi``. Real and imaginary parts use ``repr`` of the float, the shortest
decimal string that reads back to the identical double, so a write/read cycle
is bit exact. Lines starting with ``#`` are comments.
"""

import csv
import dataclasses
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .linalg_core import as_matrix

__all__ = [
    "REPORT_VERSION", "RunReport", "to_jsonable", "format_matrix",
    "parse_matrix", "read_matrix", "write_matrix", "matrix_to_json",
    "matrix_from_json",
]

REPORT_VERSION = 1


def _format_entry(z):
    re, im = repr(float(z.real)), repr(float(z.imag))
    if not im.startswith("-"):
        im = "+" + im
    return f"{re}{im}i"


def format_matrix(A, header=None):
    A = as_matrix(A, square=False)
    lines = [] if header is None else [f"# {line}" for line in header.splitlines()]
    lines += [" ".join(_format_entry(z) for z in row) for row in A]
    return "\n".join(lines) + "\n"


def parse_matrix(text):
    """Parse the text matrix format; raises ``ValueError`` on malformed input."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            row = [complex(tok[:-1] + "j") if tok.endswith("i") else complex(float(tok))
                   for tok in line.split()]
        except ValueError:
            raise ValueError(f"line {lineno}: cannot parse entries in {line!r}") from None
        rows.append(row)
    if not rows:
        raise ValueError("no matrix rows found")
    if len({len(r) for r in rows}) != 1:
        raise ValueError("rows have different lengths")
    return as_matrix(rows, square=False)


def read_matrix(path):
    with open(path) as fh:
        return parse_matrix(fh.read())


def write_matrix(path, A, header=None):
    with open(path, "w") as fh:
        fh.write(format_matrix(A, header))


def matrix_to_json(A):
    """Nested ``[[re, im], ...]`` rows; exact because JSON floats use repr."""
    A = np.asarray(A)
    return [[[float(z.real), float(z.imag)] for z in row] for row in A]


def matrix_from_json(rows):
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def to_jsonable(obj):
    """Recursively convert dataclasses and numpy values into JSON types.

    Complex 2-D arrays become :func:`matrix_to_json` rows; other arrays
    become (nested) lists of floats.
    """
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        for name in ("overall_pass", "passed", "holds"):
            if hasattr(type(obj), name) and isinstance(getattr(type(obj), name), property):
                out[name] = bool(getattr(obj, name))
        return out
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj) and obj.ndim == 2:
            return matrix_to_json(obj)
        return to_jsonable(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return repr(x)
        return x
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


@dataclass
class RunReport:
    """Self-describing record of one CLI run.

    ``results`` and ``summary`` only hold JSON-native values so that
    ``RunReport.from_json(r.to_json()) == r``.
    """
    command: str
    inputs: dict
    results: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    versions: dict = field(default_factory=dict)
    version: int = REPORT_VERSION

    def to_json(self):
        return json.dumps(to_jsonable(dataclasses.asdict(self)), sort_keys=True,
                          indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        if data.get("version") != REPORT_VERSION:
            raise ValueError(f"unsupported report version {data.get('version')!r}")
        return cls(**data)

    def to_csv(self, columns=None):
        """Scalar fields of each result record as CSV rows."""
        rows = [{k: v for k, v in r.items() if isinstance(v, (int, float, str, bool))}
                for r in self.results]
        if columns is None:
            columns = []
            for r in rows:
                columns += [c for c in r if c not in columns]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore",
                                lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({c: repr(v) if isinstance(v, float) else v
                             for c, v in r.items()})
        return buf.getvalue()
