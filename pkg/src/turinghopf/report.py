"""Versioned structured run reports with lossless text serialization.

A report is a key-tree of typed scalars: null, booleans, integers, decimal
floats (17 significant digits, enough to reproduce any IEEE double exactly),
strings, complex numbers, and numeric arrays.  The rendered document is plain
structured text (a strict JSON subset with tagged extensions), deterministic
given the tree: keys are emitted sorted, numbers in a fixed format.  Run
metadata that may legitimately differ between reruns (timestamps, host info)
lives in a segregated ``meta`` field; :func:`determinism_key` renders the
report without it, so two runs of the same configuration can be compared
byte-for-byte.

Tagged extensions (all valid JSON objects):
  ``{"__complex__": [re, im]}``                       a complex scalar
  ``{"__float__": "nan" | "inf" | "-inf"}``           non-finite floats
  ``{"__array__": {"dtype": d, "shape": s, "data": flat}}``  an ndarray
  ``{"__imap__": [[key, value], ...]}``               mapping with non-string
                                                      keys (sorted by key)
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, is_dataclass, fields as dc_fields

import numpy as np

from .errors import ConfigParse

__all__ = [
    "FORMAT_VERSION",
    "Report",
    "normalize_tree",
    "tree_equal",
    "emit",
    "parse",
    "determinism_key",
    "model_summary",
    "critical_point_summary",
    "eigensystem_summary",
    "normalform_summary",
    "amplitude_summary",
    "lines_summary",
    "region_summary",
    "scoreboard_summary",
]

FORMAT_VERSION = 1


@dataclass
class Report:
    """One run's structured results.

    ``body`` is the normalized key-tree with the analysis content; ``seed``
    echoes the random seed the run used; ``meta`` holds rerun-variable
    metadata (timestamps and the like) excluded from determinism
    comparisons.
    """

    body: dict
    seed: int = 0
    format_version: int = FORMAT_VERSION
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.body = normalize_tree(self.body)
        self.meta = normalize_tree(self.meta)

    def __eq__(self, other):
        if not isinstance(other, Report):
            return NotImplemented
        return (
            self.format_version == other.format_version
            and self.seed == other.seed
            and tree_equal(self.body, other.body)
            and tree_equal(self.meta, other.meta)
        )


# ---------------------------------------------------------------------------
# tree normalization and comparison
# ---------------------------------------------------------------------------

def normalize_tree(obj):
    """Coerce a value into the report tree vocabulary.

    Tuples become lists, numpy scalars become python scalars, numpy arrays
    stay ndarrays (serialized with dtype and shape), dataclasses become
    field dicts.  Raises ConfigParse for anything unserializable.
    """
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, complex):
        return obj
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.complexfloating):
        return complex(obj)
    if isinstance(obj, np.ndarray):
        if obj.dtype.kind not in "fiuc":
            raise ConfigParse(f"cannot serialize array dtype {obj.dtype}")
        return obj
    if isinstance(obj, dict):
        return {key: normalize_tree(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalize_tree(v) for v in obj]
    if is_dataclass(obj) and not isinstance(obj, type):
        return {
            f.name: normalize_tree(getattr(obj, f.name)) for f in dc_fields(obj)
        }
    raise ConfigParse(f"cannot serialize value of type {type(obj).__name__}")


def tree_equal(a, b) -> bool:
    """Exact structural equality of two normalized trees."""
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        if not (isinstance(a, np.ndarray) and isinstance(b, np.ndarray)):
            return False
        return (
            a.dtype == b.dtype
            and a.shape == b.shape
            and np.array_equal(a, b, equal_nan=True)
        )
    if isinstance(a, dict) and isinstance(b, dict):
        if set(a) != set(b):
            return False
        return all(tree_equal(a[k], b[k]) for k in a)
    if isinstance(a, list) and isinstance(b, list):
        return len(a) == len(b) and all(tree_equal(x, y) for x, y in zip(a, b))
    if isinstance(a, float) and isinstance(b, float):
        return (a == b) or (math.isnan(a) and math.isnan(b))
    if isinstance(a, complex) and isinstance(b, complex):
        return tree_equal(a.real, b.real) and tree_equal(a.imag, b.imag)
    if type(a) is not type(b):
        return False
    return a == b


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _format_float(x: float) -> str:
    if math.isnan(x):
        return '{"__float__": "nan"}'
    if math.isinf(x):
        return '{"__float__": "%s"}' % ("inf" if x > 0 else "-inf")
    text = format(float(x), ".17g")
    if not any(c in text for c in ".eE"):
        text += ".0"
    return text


def _sort_key(key):
    return (type(key).__name__, repr(key))


def _render(obj, indent: int, pad: str) -> str:
    nl = "\n" + pad * (indent + 1)
    close_nl = "\n" + pad * indent
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, complex):
        return '{"__complex__": [%s, %s]}' % (
            _format_float(obj.real),
            _format_float(obj.imag),
        )
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=True)
    if isinstance(obj, np.ndarray):
        flat = [
            complex(v) if obj.dtype.kind == "c" else
            (int(v) if obj.dtype.kind in "iu" else float(v))
            for v in obj.ravel()
        ]
        inner = {
            "dtype": str(obj.dtype),
            "shape": list(obj.shape),
            "data": flat,
        }
        return '{"__array__": %s}' % _render(inner, indent, pad)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        if all(isinstance(k, str) for k in obj):
            items = [
                "%s: %s" % (json.dumps(k, ensure_ascii=True),
                            _render(obj[k], indent + 1, pad))
                for k in sorted(obj)
            ]
            return "{" + nl + ("," + nl).join(items) + close_nl + "}"
        pairs = [
            [k, obj[k]] for k in sorted(obj, key=_sort_key)
        ]
        return '{"__imap__": %s}' % _render(pairs, indent, pad)
    if isinstance(obj, list):
        if not obj:
            return "[]"
        scalars = all(
            v is None or isinstance(v, (bool, int, float, complex, str))
            for v in obj
        )
        if scalars and len(obj) <= 8:
            return "[" + ", ".join(_render(v, indent, pad) for v in obj) + "]"
        items = [_render(v, indent + 1, pad) for v in obj]
        return "[" + nl + ("," + nl).join(items) + close_nl + "]"
    raise ConfigParse(f"cannot render value of type {type(obj).__name__}")


def emit(report: Report) -> str:
    """Render a report to its canonical text form (deterministic)."""
    tree = {
        "format_version": report.format_version,
        "meta": report.meta,
        "seed": report.seed,
        "body": report.body,
    }
    return _render(tree, 0, "  ") + "\n"


def determinism_key(report: Report) -> str:
    """Canonical text with the rerun-variable metadata stripped.

    Two runs of the same configuration and seeds must agree byte-for-byte
    on this rendering.
    """
    stripped = Report(
        body=report.body,
        seed=report.seed,
        format_version=report.format_version,
        meta={},
    )
    return emit(stripped)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_SPECIAL_FLOATS = {"nan": math.nan, "inf": math.inf, "-inf": -math.inf}


def _decode(obj):
    if isinstance(obj, dict):
        if set(obj) == {"__complex__"}:
            re_im = obj["__complex__"]
            return complex(float(re_im[0]), float(re_im[1]))
        if set(obj) == {"__float__"}:
            return _SPECIAL_FLOATS[obj["__float__"]]
        if set(obj) == {"__array__"}:
            inner = obj["__array__"]
            data = [_decode(v) for v in inner["data"]]
            return np.array(data, dtype=inner["dtype"]).reshape(inner["shape"])
        if set(obj) == {"__imap__"}:
            return {_decode(k): _decode(v) for k, v in obj["__imap__"]}
        return {k: _decode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_decode(v) for v in obj]
    return obj


def parse(text: str) -> Report:
    """Parse a rendered report back to an equal Report (lossless)."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigParse(f"report document is not parseable: {err}") from err
    if not isinstance(raw, dict) or "format_version" not in raw:
        raise ConfigParse("report document lacks a format_version field")
    version = raw["format_version"]
    if version != FORMAT_VERSION:
        raise ConfigParse(
            f"unsupported report format version {version!r} "
            f"(this reader handles {FORMAT_VERSION})"
        )
    try:
        return Report(
            body=_decode(raw.get("body", {})),
            seed=int(raw.get("seed", 0)),
            format_version=int(version),
            meta=_decode(raw.get("meta", {})),
        )
    except (KeyError, TypeError, ValueError) as err:
        raise ConfigParse(f"malformed report document: {err}") from err


# ---------------------------------------------------------------------------
# summarizers: pipeline objects -> report trees
# ---------------------------------------------------------------------------

def model_summary(spec) -> dict:
    """Report tree for a model description (linear data and provenance)."""
    extras = {}
    for key, val in (spec.extras or {}).items():
        try:
            extras[key] = normalize_tree(val)
        except ConfigParse:
            continue
    return {
        "name": spec.name,
        "num_species": spec.num_species,
        "domain_length": float(spec.domain_length),
        "lags": list(spec.lags),
        "diffusion": np.asarray(spec.diffusion, dtype=float),
        "diffusion_deriv": [np.asarray(d, dtype=float) for d in spec.diffusion_deriv],
        "reaction_matrices": [np.asarray(A, dtype=float) for A in spec.reaction_matrices],
        "reaction_matrices_deriv": [
            [np.asarray(A, dtype=float) for A in group]
            for group in spec.reaction_matrices_deriv
        ],
        "base_params": [float(p) for p in spec.base_params],
        "extras": extras,
    }


def critical_point_summary(cp) -> dict:
    """Report tree for a located critical point and its certificates."""
    return {
        "alpha_star": [float(a) for a in cp.alpha_star],
        "k1": cp.k1,
        "k2": cp.k2,
        "omega0": float(cp.omega0),
        "transversality": [float(t) for t in cp.transversality],
        "residuals": [float(r) for r in cp.residuals],
        "hygiene": normalize_tree(cp.hygiene),
        "guess": [float(g) for g in cp.guess],
        "iterations": cp.iterations,
        "notes": normalize_tree(cp.notes),
    }


def eigensystem_summary(eigen) -> dict:
    """Report tree for the normalized critical eigenvectors."""
    return {
        "k1": eigen.k1,
        "k2": eigen.k2,
        "omega0": float(eigen.omega0),
        "phi1_0": np.asarray(eigen.phi1_0, dtype=complex),
        "phi2_0": np.asarray(eigen.phi2_0, dtype=complex),
        "psi1_0": np.asarray(eigen.psi1_0, dtype=complex),
        "psi2_0": np.asarray(eigen.psi2_0, dtype=complex),
        "null_residuals": [float(r) for r in eigen.null_residuals],
        "normalization_residuals": [float(r) for r in eigen.normalization_residuals],
    }


def normalform_summary(nf) -> dict:
    """Report tree for the third-order normal form, both routes, and the
    second-order correction certificates."""
    records = []
    for rec in nf.h_records:
        records.append(
            {
                "monomial": rec.q,
                "mode": rec.mode,
                "rate": complex(rec.rate),
                "value_at_zero": np.asarray(rec.profile.evaluate(0.0), dtype=complex),
                "interior_residual": float(rec.interior_residual),
                "boundary_residual": float(rec.boundary_residual),
                "pinned": rec.pinned,
            }
        )
    return {
        "k1": nf.k1,
        "k2": nf.k2,
        "omega0": float(nf.omega0),
        "case_tag": nf.case_tag,
        "a1_coeffs": [complex(c) for c in nf.a1_coeffs],
        "b2_coeffs": [complex(c) for c in nf.b2_coeffs],
        "a11": complex(nf.a11),
        "a23": complex(nf.a23),
        "b12": complex(nf.b12),
        "a111": complex(nf.a111),
        "a123": complex(nf.a123),
        "b112": complex(nf.b112),
        "b223": complex(nf.b223),
        "general_route": normalize_tree(nf.general_route),
        "case_route": normalize_tree(nf.case_route),
        "route_discrepancy": float(nf.route_discrepancy),
        "h_records": records,
    }


def amplitude_summary(ampsys) -> dict:
    """Report tree for the planar amplitude system."""
    return {
        "kind": ampsys.kind,
        "eps_map": np.asarray(ampsys.eps_map, dtype=float),
        "coefficients": {k: float(v) for k, v in ampsys.coefficients.items()},
        "time_reversed": bool(ampsys.time_reversed),
        "unfolding_case": ampsys.unfolding_case,
    }


def lines_summary(lines) -> list:
    """Report tree for the critical half-lines."""
    return [
        {
            "name": ln.name,
            "eps_condition": ln.eps_condition,
            "base": [float(b) for b in ln.base],
            "direction": [float(d) for d in ln.direction],
            "slope": None if ln.slope is None else float(ln.slope),
            "halfline": ln.halfline,
        }
        for ln in lines
    ]


def region_summary(region_report) -> dict:
    """Report tree for one region's pattern inventory."""
    return {
        "region": region_report.region,
        "alpha": [float(a) for a in region_report.alpha],
        "eps": [float(e) for e in region_report.eps],
        "time_reversed": bool(region_report.time_reversed),
        "notes": region_report.notes,
        "equilibria": [
            {
                "name": eq.name,
                "point": [float(p) for p in eq.point],
                "eigenvalues": [complex(v) for v in eq.eigenvalues],
                "exists": bool(eq.exists),
            }
            for eq in region_report.equilibria
        ],
        "patterns": [
            {
                "kind": pat.kind,
                "count": pat.count,
                "morse_index": pat.morse_index,
                "members": list(pat.members),
            }
            for pat in region_report.patterns
        ],
    }


def scoreboard_summary(rows) -> list:
    """Report tree for the simulation scoreboard."""
    return [normalize_tree(row) for row in rows]
