"""Persistence: body specs, curves (CSV and JSON) and reports, written atomically."""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import InputError
from .modulus import ModulusCurve

CURVE_COLUMNS = ("delta", "omega", "lower_bound", "upper_bound")
TAIL_COLUMNS = ("samples_used", "sampling_tol", "quad_err")


def atomic_write(path, text: str) -> Path:
    """Write ``text`` to a temporary file in the target directory, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def load_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from None


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=True) + "\n"


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        if np.isnan(v):
            return None
        if np.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def _fmt(x) -> str:
    return format(float(x), ".17g")


def curve_csv(curve: ModulusCurve) -> str:
    """CSV text: a ``# seed=`` comment line, a header, one row per delta."""
    buf = io.StringIO()
    buf.write(f"# seed={curve.seed}\n")
    w = csv.writer(buf, lineterminator="\n")
    argmax_cols = [f"argmax_{i}" for i in range(curve.dim)]
    w.writerow([*CURVE_COLUMNS, *argmax_cols, *TAIL_COLUMNS])
    for i in range(len(curve)):
        w.writerow(
            [_fmt(curve.deltas[i]), _fmt(curve.omega[i]), _fmt(curve.lower_bound[i]), _fmt(curve.upper_bound[i])]
            + [_fmt(v) for v in curve.argmax_points[i]]
            + [str(int(curve.samples_used[i])), _fmt(curve.sampling_tol[i]), _fmt(curve.quad_err[i])]
        )
    return buf.getvalue()


def read_curve_csv(path) -> ModulusCurve:
    with open(path, newline="") as fh:
        first = fh.readline().strip()
        if not first.startswith("# seed="):
            raise InputError("curve CSV must start with a '# seed=' line")
        seed = int(first.split("=", 1)[1])
        rows = list(csv.DictReader(fh))
    if not rows:
        raise InputError("curve CSV has no rows")
    dim = sum(1 for k in rows[0] if k.startswith("argmax_"))

    def col(name, typ=float):
        return np.array([typ(r[name]) for r in rows])

    return ModulusCurve(
        deltas=col("delta"),
        omega=col("omega"),
        lower_bound=col("lower_bound"),
        upper_bound=col("upper_bound"),
        argmax_points=np.column_stack([col(f"argmax_{i}") for i in range(dim)]),
        samples_used=col("samples_used", int),
        sampling_tol=col("sampling_tol"),
        quad_err=col("quad_err"),
        seed=seed,
        dim=dim,
        inradius=float("nan"),
    )


def curve_dict(curve: ModulusCurve, body_spec: dict | None = None) -> dict:
    out = {
        "deltas": curve.deltas,
        "omega": curve.omega,
        "lower_bound": curve.lower_bound,
        "upper_bound": curve.upper_bound,
        "argmax_points": curve.argmax_points,
        "samples_used": curve.samples_used,
        "sampling_tol": curve.sampling_tol,
        "quad_err": curve.quad_err,
        "seed": curve.seed,
        "dim": curve.dim,
        "inradius": curve.inradius,
        "warnings": list(curve.warnings),
    }
    if body_spec is not None:
        out["body"] = body_spec
    return to_jsonable(out)


def write_curve(curve: ModulusCurve, csv_path=None, json_path=None, body_spec: dict | None = None) -> list[Path]:
    written = []
    if csv_path is not None:
        written.append(atomic_write(csv_path, curve_csv(curve)))
    if json_path is not None:
        written.append(atomic_write(json_path, dumps(curve_dict(curve, body_spec))))
    return written
