"""File formats: structured config text, measure CSV, manifests, PPM.

The map grammar is a flat key = value list, one per line, with python-like
literals: `num = [c0, c1, ...]`, `den = [...]`. A two-element list inside a
coefficient list is a complex entry [re, im]. Everything written goes
through an atomic temp-file rename, and every artifact gets a manifest.
"""

from __future__ import annotations

import ast
import hashlib
import json
import os
import tempfile
import time

import numpy as np

from . import __version__
from .errors import ConfigError
from .maps import RationalMap
from .measures import EmpiricalMeasure


def _literal(path: str, key: str, text: str):
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError) as e:
        raise ConfigError(f"{path}: value of '{key}' is not a literal: {e}") from None


def parse_config_text(path: str) -> dict:
    """key = value lines; # comments; values are python literals."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e}") from None
    out = {}
    for lineno, line in enumerate(raw.splitlines(), 1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, val = stripped.partition("=")
        key = key.strip()
        if not key.isidentifier():
            raise ConfigError(f"{path}:{lineno}: bad key '{key}'")
        if key in out:
            raise ConfigError(f"{path}:{lineno}: duplicate key '{key}'")
        out[key] = _literal(path, key, val.strip())
    return out


def _coeff_list(path: str, key: str, val) -> list:
    if not isinstance(val, (list, tuple)) or len(val) == 0:
        raise ConfigError(f"{path}: '{key}' must be a non-empty coefficient list")
    out = []
    for i, entry in enumerate(val):
        if isinstance(entry, (int, float)):
            out.append(complex(entry))
        elif (
            isinstance(entry, (list, tuple))
            and len(entry) == 2
            and all(isinstance(x, (int, float)) for x in entry)
        ):
            out.append(complex(entry[0], entry[1]))
        else:
            raise ConfigError(
                f"{path}: '{key}' entry {i} must be a number or an [re, im] pair"
            )
    return out


def parse_map_file(path: str) -> RationalMap:
    cfg = parse_config_text(path)
    unknown = set(cfg) - {"num", "den"}
    if unknown:
        raise ConfigError(f"{path}: unknown key '{sorted(unknown)[0]}'")
    if "num" not in cfg:
        raise ConfigError(f"{path}: missing key 'num'")
    num = _coeff_list(path, "num", cfg["num"])
    den = _coeff_list(path, "den", cfg["den"]) if "den" in cfg else [1.0]
    return RationalMap(num, den)


def parse_points_file(path: str, key: str = "points") -> list:
    cfg = parse_config_text(path)
    if key not in cfg:
        raise ConfigError(f"{path}: missing key '{key}'")
    return _coeff_list(path, key, cfg[key])


def parse_complex(text: str) -> complex:
    """'re,im' or a bare real, as used by --point style flags."""
    parts = [p.strip() for p in text.split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ConfigError(f"expected 're,im' or a real number, got '{text}'")


def atomic_write_bytes(path: str, data: bytes):
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-holoscope-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def atomic_write_text(path: str, text: str):
    atomic_write_bytes(path, text.encode("utf-8"))


def _jsonable(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.complexfloating,)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    return obj


def write_json(path: str, payload: dict):
    atomic_write_text(
        path, json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n"
    )


def param_hash(params: dict) -> str:
    canon = json.dumps(_jsonable(params), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]


def _file_digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()[:16]


def write_manifest(out_path: str, workflow: str, params: dict, inputs=(), t0=None):
    """<out>.manifest.json: inputs, parameter hash, version, wall time.

    Wall time varies run to run, so manifests are excluded from the
    byte-identity guarantee; param_hash is over parameters only.
    """
    payload = {
        "workflow": workflow,
        "params": _jsonable(params),
        "param_hash": param_hash(params),
        "inputs": [
            {"path": str(p), "sha256": _file_digest(str(p))} for p in inputs
        ],
        "tool_version": __version__,
        "wall_time_s": round(time.monotonic() - t0, 3) if t0 is not None else None,
    }
    write_json(str(out_path) + ".manifest.json", payload)


def write_measure_csv(path: str, mu: EmpiricalMeasure):
    """CSV re,im,weight plus a JSON sidecar at <path>.json."""
    lines = ["re,im,weight"]
    for p, w in zip(mu.points, mu.weights):
        # repr of a Python float is the shortest round-trip form, so reruns
        # with one seed are byte-identical and nothing is lost to rounding
        lines.append(f"{float(p.real)!r},{float(p.imag)!r},{float(w)!r}")
    atomic_write_text(path, "\n".join(lines) + "\n")
    write_json(
        str(path) + ".json",
        {"seed": mu.seed, "provenance": mu.provenance, "map-hash": mu.map_hash},
    )


def read_measure_csv(path: str) -> EmpiricalMeasure:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            header = fh.readline().strip()
            if header != "re,im,weight":
                raise ConfigError(f"{path}: expected header 're,im,weight'")
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e}") from None
    except ValueError as e:
        raise ConfigError(f"{path}: malformed measure CSV: {e}") from None
    if data.shape[1] != 3:
        raise ConfigError(f"{path}: expected 3 columns")
    seed, provenance, mhash = None, "file", None
    sidecar = str(path) + ".json"
    if os.path.exists(sidecar):
        try:
            with open(sidecar, "r", encoding="utf-8") as fh:
                meta = json.load(fh)
            seed = meta.get("seed")
            provenance = meta.get("provenance", "file")
            mhash = meta.get("map-hash")
        except (OSError, json.JSONDecodeError):
            pass
    return EmpiricalMeasure(
        points=data[:, 0] + 1j * data[:, 1],
        weights=data[:, 2],
        seed=seed,
        provenance=provenance,
        map_hash=mhash,
    )


def write_ppm(path: str, rgb: np.ndarray):
    """Binary P6 image from an (h, w, 3) uint8 array."""
    if rgb.ndim != 3 or rgb.shape[2] != 3 or rgb.dtype != np.uint8:
        raise ConfigError("PPM writer expects an (h, w, 3) uint8 array")
    h, w = rgb.shape[:2]
    atomic_write_bytes(path, b"P6\n%d %d\n255\n" % (w, h) + rgb.tobytes())
