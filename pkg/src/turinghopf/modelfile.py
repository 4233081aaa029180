"""Declarative model configuration files.

A model file describes a delayed reaction-diffusion model near an equilibrium
without any code: linear data as matrices, nonlinear data as coefficient
tensors over (species, lag) slots.  Sections:

``[model]``
    ``species`` (comma-separated names, required), ``domain_length``
    (interval is ``(0, domain_length * pi)``, required), ``diffusion``
    (per-species diagonal, required), ``diffusion_deriv1`` /
    ``diffusion_deriv2`` (per-direction parameter derivatives, default zero),
    ``base_params`` (raw parameter pair the data is taken at, default 0,0),
    ``name`` (optional), ``equilibrium`` and ``time_scale`` (optional,
    forwarded to the spec's extras).

``[lags]``
    ``values``: the discrete delays, starting at 0, strictly increasing.

``[matrices]``
    ``A<j>``: interaction matrix for lag index j, rows separated by ``;``,
    entries by whitespace or commas.  ``A<j>_deriv1`` / ``A<j>_deriv2``:
    parameter derivatives (default zero).

``[quadratic]`` / ``[cubic]``
    Sparse entries of the nonlinearity's Taylor tensors.  A slot is
    ``name@j`` (species ``name`` sampled at lag index ``j``); bare ``name``
    means lag 0.  The key lists the slots of one monomial and the value is
    that monomial's coefficient in each equation, e.g.::

        Q[u@1, v@1] = 3.6, -3.6
        C[u@1, u@1, v@1] = 1.2, -1.2

    A single number is broadcast to every equation.  The package's
    symmetric multilinear forms are the corresponding directional
    derivatives of the declared polynomial (a monomial ``c * x_a * x_b``
    contributes ``c * (x_a y_b + x_b y_a)`` to the quadratic form, and so
    on), so entries never need manual symmetrization; listing the same
    monomial twice is an error.

All parse problems raise :class:`~turinghopf.errors.ConfigParse` with the
offending section and key named.
"""

from __future__ import annotations

import configparser
import io
import re
from itertools import permutations

import numpy as np

from .errors import ConfigParse
from .model import ModelSpec, validate

__all__ = ["parse_model", "load_model"]

_SECTIONS = {"model", "lags", "matrices", "quadratic", "cubic"}
_MODEL_KEYS = {
    "name",
    "species",
    "domain_length",
    "diffusion",
    "diffusion_deriv1",
    "diffusion_deriv2",
    "base_params",
    "equilibrium",
    "time_scale",
}
_MATRIX_KEY = re.compile(r"^A(\d+)(?:_deriv([12]))?$")
_ENTRY_KEY = re.compile(r"^([QC])\[([^\]]*)\]$")
_SLOT = re.compile(r"^([A-Za-z_]\w*)(?:@(\d+))?$")


def _numbers(text: str, where: str) -> list:
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    try:
        return [float(p) for p in parts]
    except ValueError as err:
        raise ConfigParse(f"{where}: expected numbers, got {text!r}") from err


def _matrix(text: str, m: int, where: str) -> np.ndarray:
    rows = [r for r in text.split(";") if r.strip()]
    if len(rows) != m:
        raise ConfigParse(f"{where}: expected {m} rows, got {len(rows)}")
    data = []
    for row in rows:
        vals = _numbers(row, where)
        if len(vals) != m:
            raise ConfigParse(
                f"{where}: expected {m} entries per row, got {len(vals)}"
            )
        data.append(vals)
    return np.array(data, dtype=float)


def _parse_slot(token: str, species: list, n_lags: int, where: str) -> int:
    mo = _SLOT.match(token.strip())
    if mo is None:
        raise ConfigParse(f"{where}: malformed slot {token!r}")
    name, lag_txt = mo.group(1), mo.group(2)
    if name not in species:
        raise ConfigParse(
            f"{where}: unknown species {name!r} (declared: {', '.join(species)})"
        )
    lag_index = int(lag_txt) if lag_txt is not None else 0
    if lag_index >= n_lags:
        raise ConfigParse(
            f"{where}: lag index {lag_index} out of range (model has "
            f"{n_lags} lags)"
        )
    return lag_index * len(species) + species.index(name)


def _tensor_section(section, letter: str, order: int, species, n_lags):
    """Dense symmetric-derivative tensor from a sparse monomial section."""
    m = len(species)
    nm = m * n_lags
    tensor = np.zeros((m,) + (nm,) * order)
    seen = set()
    for key, value in section.items():
        where = f"[{ 'quadratic' if order == 2 else 'cubic' }] {key}"
        mo = _ENTRY_KEY.match(key.strip())
        if mo is None or mo.group(1) != letter:
            raise ConfigParse(
                f"{where}: keys must look like {letter}[slot, slot{', slot' if order == 3 else ''}]"
            )
        tokens = [t for t in mo.group(2).split(",") if t.strip()]
        if len(tokens) != order:
            raise ConfigParse(
                f"{where}: expected {order} slots, got {len(tokens)}"
            )
        slots = [_parse_slot(t, species, n_lags, where) for t in tokens]
        monomial = tuple(sorted(slots))
        if monomial in seen:
            raise ConfigParse(f"{where}: monomial already declared")
        seen.add(monomial)
        coeffs = _numbers(value, where)
        if len(coeffs) == 1:
            coeffs = coeffs * m
        if len(coeffs) != m:
            raise ConfigParse(
                f"{where}: value must have 1 or {m} numbers, got {len(coeffs)}"
            )
        w = np.array(coeffs)
        for perm in permutations(slots):
            tensor[(slice(None),) + perm] += w
    return tensor


def parse_model(text: str, name: str = "") -> ModelSpec:
    """Build a ModelSpec from model-file text; raises ConfigParse."""
    parser = configparser.ConfigParser(
        interpolation=None, delimiters=("=",), strict=True
    )
    parser.optionxform = str
    try:
        parser.read_file(io.StringIO(text))
    except configparser.Error as err:
        raise ConfigParse(f"model file is not parseable: {err}") from err

    present = set(parser.sections())
    unknown = present - _SECTIONS
    if unknown:
        raise ConfigParse(f"unknown sections: {', '.join(sorted(unknown))}")
    for required in ("model", "lags", "matrices"):
        if required not in present:
            raise ConfigParse(f"missing required section [{required}]")

    model_sec = parser["model"]
    bad = set(model_sec) - _MODEL_KEYS
    if bad:
        raise ConfigParse(f"[model]: unknown keys: {', '.join(sorted(bad))}")
    for required in ("species", "domain_length", "diffusion"):
        if required not in model_sec:
            raise ConfigParse(f"[model]: missing required key {required!r}")

    species = [s.strip() for s in model_sec["species"].split(",") if s.strip()]
    if len(set(species)) != len(species) or not species:
        raise ConfigParse("[model] species: names must be distinct and nonempty")
    m = len(species)

    try:
        domain_length = float(model_sec["domain_length"])
    except ValueError as err:
        raise ConfigParse(f"[model] domain_length: {err}") from err

    diffusion = _numbers(model_sec["diffusion"], "[model] diffusion")
    if len(diffusion) != m:
        raise ConfigParse(
            f"[model] diffusion: expected {m} entries, got {len(diffusion)}"
        )
    diffusion_deriv = []
    for key in ("diffusion_deriv1", "diffusion_deriv2"):
        if key in model_sec:
            vals = _numbers(model_sec[key], f"[model] {key}")
            if len(vals) != m:
                raise ConfigParse(
                    f"[model] {key}: expected {m} entries, got {len(vals)}"
                )
        else:
            vals = [0.0] * m
        diffusion_deriv.append(np.array(vals))

    base_params = (0.0, 0.0)
    if "base_params" in model_sec:
        vals = _numbers(model_sec["base_params"], "[model] base_params")
        if len(vals) != 2:
            raise ConfigParse("[model] base_params: expected two numbers")
        base_params = (vals[0], vals[1])

    lags_sec = parser["lags"]
    if set(lags_sec) != {"values"}:
        raise ConfigParse("[lags]: exactly one key 'values' is required")
    lags = tuple(_numbers(lags_sec["values"], "[lags] values"))
    if not lags or lags[0] != 0.0:
        raise ConfigParse("[lags] values: first lag must be exactly 0")
    if any(b <= a for a, b in zip(lags, lags[1:])):
        raise ConfigParse("[lags] values: lags must be strictly increasing")
    n_lags = len(lags)

    matrices = [None] * n_lags
    derivs = [[None] * n_lags, [None] * n_lags]
    for key, value in parser["matrices"].items():
        mo = _MATRIX_KEY.match(key.strip())
        if mo is None:
            raise ConfigParse(
                f"[matrices] {key}: keys must look like A<j> or A<j>_deriv1/2"
            )
        j = int(mo.group(1))
        if j >= n_lags:
            raise ConfigParse(
                f"[matrices] {key}: lag index {j} out of range "
                f"(model has {n_lags} lags)"
            )
        mat = _matrix(value, m, f"[matrices] {key}")
        if mo.group(2) is None:
            matrices[j] = mat
        else:
            derivs[int(mo.group(2)) - 1][j] = mat
    missing = [f"A{j}" for j, mat in enumerate(matrices) if mat is None]
    if missing:
        raise ConfigParse(f"[matrices]: missing {', '.join(missing)}")
    zero = np.zeros((m, m))
    derivs = [
        tuple(mat if mat is not None else zero for mat in group)
        for group in derivs
    ]

    quad_tensor = _tensor_section(
        parser["quadratic"] if "quadratic" in present else {},
        "Q", 2, species, n_lags,
    )
    cubic_tensor = _tensor_section(
        parser["cubic"] if "cubic" in present else {},
        "C", 3, species, n_lags,
    )

    def quadratic(X, Y):
        xf = np.concatenate([np.asarray(x) for x in X])
        yf = np.concatenate([np.asarray(y) for y in Y])
        return np.einsum("eab,a,b->e", quad_tensor, xf, yf)

    def cubic(X, Y, Z):
        xf = np.concatenate([np.asarray(x) for x in X])
        yf = np.concatenate([np.asarray(y) for y in Y])
        zf = np.concatenate([np.asarray(z) for z in Z])
        return np.einsum("eabc,a,b,c->e", cubic_tensor, xf, yf, zf)

    extras = {"species": species}
    if "equilibrium" in model_sec:
        vals = _numbers(model_sec["equilibrium"], "[model] equilibrium")
        if len(vals) != m:
            raise ConfigParse(
                f"[model] equilibrium: expected {m} entries, got {len(vals)}"
            )
        extras["equilibrium"] = tuple(vals)
    if "time_scale" in model_sec:
        try:
            extras["time_scale"] = float(model_sec["time_scale"])
        except ValueError as err:
            raise ConfigParse(f"[model] time_scale: {err}") from err

    spec = ModelSpec(
        num_species=m,
        domain_length=domain_length,
        lags=lags,
        diffusion=np.array(diffusion),
        diffusion_deriv=tuple(diffusion_deriv),
        reaction_matrices=tuple(matrices),
        reaction_matrices_deriv=tuple(derivs),
        quadratic=quadratic,
        cubic=cubic,
        family=None,
        base_params=base_params,
        name=model_sec.get("name", name or "file-model"),
        extras=extras,
    )
    validate(spec)
    return spec


def load_model(path: str) -> ModelSpec:
    """Read and parse a model file; raises ConfigParse on any failure."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise ConfigParse(f"cannot read model file {path!r}: {err}") from err
    return parse_model(text, name=str(path))
