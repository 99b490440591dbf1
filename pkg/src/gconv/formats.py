"""Reading and writing the CLI's JSON and CSV files."""
import csv
import json
import math

import numpy as np

from . import symbols as sym
from .equations import IDESpec, LBSpec, PrandtlSpec, TricomiSpec, manufacture
from .gfourier import BUILTINS, LineGrid, SampledFunction, builtin

CSV_HEADER = ("coordinate", "re", "im")
FAMILY_COEFFS = {"prandtl": ("c0", "c1"), "tricomi": ("c0", "c1", "c2"), "lb": ("c0", "c1")}


class InputError(ValueError):
    """Malformed or inconsistent user input."""


def _fmt(v):
    return "%.16e" % v


def write_csv(path, coords, values):
    """Columns ``coordinate, re, im``; 17 significant digits, so doubles round-trip."""
    values = np.asarray(values, dtype=complex)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for c, v in zip(coords, values):
            w.writerow((_fmt(c), _fmt(v.real), _fmt(v.imag)))


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise InputError(f"{path}: expected header {','.join(CSV_HEADER)}")
    data = np.array([[float(x) for x in row] for row in rows[1:]])
    return data[:, 0], data[:, 1] + 1j * data[:, 2]


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, complex):
        return [_clean(obj.real), _clean(obj.imag)]
    if isinstance(obj, (np.floating, np.integer)):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def write_json(path, obj):
    with open(path, "w") as fh:
        json.dump(_clean(obj), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_json(path):
    """Parse a JSON file; syntax errors become ``InputError`` with line and column."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from None


def parse_complex(value, what="value"):
    """A number, a ``[re, im]`` pair, or a string such as ``"1-2j"``."""
    try:
        if isinstance(value, bool):
            raise TypeError
        if isinstance(value, (int, float)):
            return complex(value)
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return complex(float(value[0]), float(value[1]))
        if isinstance(value, str):
            return complex(value.replace(" ", ""))
    except (TypeError, ValueError):
        pass
    raise InputError(f"{what}: cannot read {value!r} as a complex number")


def _require(doc, key, where):
    if not isinstance(doc, dict) or key not in doc:
        raise InputError(f"{where}: missing field {key!r}")
    return doc[key]


def parse_grid(doc, T=None, N=None):
    g = doc.get("grid", {}) if isinstance(doc, dict) else {}
    T = g.get("T", 20.0) if T is None else T
    N = g.get("N", 4096) if N is None else N
    try:
        return LineGrid(float(T), int(N))
    except (TypeError, ValueError) as exc:
        raise InputError(f"grid: {exc}") from None


def parse_function(doc, grid, where="rhs", chart="G"):
    """Samples from ``{"kind": "builtin" | "samples", ...}``."""
    kind = _require(doc, "kind", where)
    scale = parse_complex(doc.get("scale", 1.0), f"{where}.scale")
    if kind == "builtin":
        name = _require(doc, "name", where)
        if name not in BUILTINS:
            raise InputError(f"{where}: unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
        f = builtin(name, grid, chart)
    elif kind == "samples":
        if "path" in doc:
            _, values = read_csv(doc["path"])
        else:
            values = [parse_complex(v, f"{where}.values") for v in _require(doc, "values", where)]
        if len(values) != grid.count:
            raise InputError(f"{where}: {len(values)} samples given, grid has {grid.count}")
        f = SampledFunction(grid, np.asarray(values), chart)
    else:
        raise InputError(f"{where}: unknown kind {kind!r}")
    return f.with_values(scale * f.values)


def parse_equation(doc, grid, freqs):
    """Build an equation spec from the JSON document described in FORMATS.md."""
    family = _require(doc, "family", "spec")
    coeffs = _require(doc, "coeffs", "spec")
    rhs = _require(doc, "rhs", "spec")
    if family in FAMILY_COEFFS:
        c = {k: parse_complex(_require(coeffs, k, "coeffs"), f"coeffs.{k}") for k in FAMILY_COEFFS[family]}
    elif family == "ide":
        c = _ide_coeffs(coeffs, grid)
    else:
        raise InputError(f"unknown family {family!r}")
    if rhs.get("kind") == "manufactured":
        solution = parse_function(_require(rhs, "solution", "rhs"), grid, "rhs.solution")
        return manufacture(family, c, solution, freqs)
    if family == "prandtl":
        return PrandtlSpec(c["c0"], c["c1"], parse_function(rhs, grid))
    if family == "tricomi":
        return TricomiSpec(c["c0"], c["c1"], c["c2"], parse_function(rhs, grid))
    if family == "lb":
        return LBSpec(c["c0"], c["c1"], parse_function(rhs, grid, chart="unit"))
    return IDESpec(c.c, parse_function(rhs, grid), c.d, c.m_k, c.n_k, c.kernels, c.m)


def _ide_coeffs(coeffs, grid):
    c = tuple(parse_complex(v, "coeffs.c") for v in _require(coeffs, "c", "coeffs"))
    d = tuple(parse_complex(v, "coeffs.d") for v in coeffs.get("d", []))
    m_k = tuple(int(v) for v in coeffs.get("m_k", []))
    n_k = tuple(int(v) for v in coeffs.get("n_k", []))
    kernels = tuple(parse_function(k, grid, f"coeffs.kernels[{i}]") for i, k in enumerate(coeffs.get("kernels", [])))
    if not len(d) == len(m_k) == len(n_k) == len(kernels):
        raise InputError("coeffs: d, m_k, n_k and kernels must have equal lengths")
    m = coeffs.get("m")
    m = len(c) - 1 if m is None else int(m)
    for k, (mk, nk) in enumerate(zip(m_k, n_k)):
        if mk + nk > m:
            raise InputError(f"order hypothesis violated: term {k} has m_k + n_k = {mk + nk} > m = {m}")
    return IDESpec(c, None, d, m_k, n_k, kernels, m)


def parse_symbol(doc, grid, freqs):
    """Symbol from ``{"family": ..., "coeffs": {...}}``."""
    family = _require(doc, "family", "symbol")
    co = doc.get("coeffs", {})

    def get(key, default=None):
        if key in co:
            return parse_complex(co[key], f"coeffs.{key}")
        if default is None:
            raise InputError(f"coeffs: missing field {key!r}")
        return default

    if family == "prandtl":
        return sym.prandtl_symbol(get("c0"), get("c1"))
    if family == "tricomi":
        return sym.tricomi_symbol(get("c0"), get("c1", 0.0), get("c2", 0.0))
    if family == "lb":
        return sym.lb_symbol(get("c0"), get("c1", 0.0))
    if family == "tanh_family":
        return sym.TanhFamily(get("c0"), get("c1", 0.0), get("c2", 0.0), float(co.get("h", np.pi)))
    if family == "constant":
        return sym.Constant(get("c"))
    if family == "polynomial":
        return sym.Polynomial(tuple(parse_complex(v, "coeffs.c") for v in _require(co, "c", "coeffs")))
    if family == "bessel":
        return sym.BesselWeight(float(_require(co, "s", "coeffs")))
    if family == "tanh":
        return sym.tanh_symbol(float(co.get("scale", np.pi)))
    if family == "coth":
        return sym.coth_symbol(float(co.get("scale", np.pi)))
    if family == "ide":
        c = _ide_coeffs(co, grid)
        return sym.ide_symbol(c.c, c.d, c.m_k, c.n_k, c.kernels, freqs, c.m)
    raise InputError(f"unknown symbol family {family!r}")
