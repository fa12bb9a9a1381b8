"""Reading and writing projection schemes as YAML documents.

Grammar (all keys lower case)::

    name: penrose                 # string
    d: 2                          # physical dimension
    n: 2                          # internal dimension
    field:
      min_poly: [-1, -1, 1]       # monic, integer coefficients from x^0 upwards
    lattice:
      pi_int:                     # n+d columns; column j = internal image of basis vector j
        - [[1, 0], [0, 0]]        # n field elements, each a list of deg rationals
    hyperplanes:
      - directions: [...]         # n-1 field vectors ...
        offset: [[0, 0], [0, 0]]  # ... or `normal: <field vector>`; offset defaults to 0
    point_group: [...]            # optional (n+d)x(n+d) integer matrices, x -> x @ g
    expected: {...}               # optional, see README
    params: {...}                 # optional free-form strings

Rationals are written as integers or as strings ``"p/q"``.
"""
from __future__ import annotations

from fractions import Fraction

import yaml

from .numberfield import NumberField
from .scheme import Hyperplane, ProjectionScheme, SchemeError, normal_to_directions


def _rat(x) -> Fraction:
    if isinstance(x, bool):
        raise SchemeError(f"malformed field data: boolean {x!r} is not a rational")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemeError(f"malformed field data: {x!r} is not a rational") from exc
    raise SchemeError(f"malformed field data: {x!r} is not a rational (write floats as \"p/q\")")


def _element(x, deg: int):
    if not isinstance(x, (list, tuple)) or len(x) != deg:
        raise SchemeError(f"malformed field data: element {x!r} must be a list of {deg} rationals")
    return tuple(_rat(c) for c in x)


def _vector(v, n: int, deg: int):
    if not isinstance(v, (list, tuple)) or len(v) != n:
        raise SchemeError(f"malformed field data: vector {v!r} must have {n} field elements")
    return tuple(_element(x, deg) for x in v)


def _require(doc: dict, key: str):
    if key not in doc:
        raise SchemeError(f"scheme file lacks required key {key!r}")
    return doc[key]


def scheme_from_dict(doc: dict) -> ProjectionScheme:
    if not isinstance(doc, dict):
        raise SchemeError("scheme file must be a mapping")
    name = str(_require(doc, "name"))
    d, n = int(_require(doc, "d")), int(_require(doc, "n"))
    if n < 1 or d < 1:
        raise SchemeError("dimensions must be positive")
    if (n + d) % n:
        raise SchemeError(f"nu=(n+d)/n not an integer: ({n}+{d})/{n}")
    field_doc = _require(doc, "field")
    try:
        field = NumberField(tuple(int(c) for c in _require(field_doc, "min_poly")))
    except (TypeError, ValueError) as exc:
        raise SchemeError(f"malformed field data: {exc}") from exc
    deg = field.degree
    cols = _require(_require(doc, "lattice"), "pi_int")
    if not isinstance(cols, list) or len(cols) != n + d:
        raise SchemeError(f"malformed field data: lattice.pi_int needs {n + d} columns")
    pi = tuple(_vector(c, n, deg) for c in cols)
    hyper = []
    for h in _require(doc, "hyperplanes") or []:
        offset = _vector(h["offset"], n, deg) if "offset" in h else tuple(field.zero() for _ in range(n))
        if "directions" in h:
            dirs = tuple(_vector(v, n, deg) for v in h["directions"])
        elif "normal" in h:
            dirs = normal_to_directions(field, _vector(h["normal"], n, deg))
        else:
            raise SchemeError("hyperplane needs `directions` or `normal`")
        hyper.append(Hyperplane(dirs, offset))
    pg = tuple(tuple(tuple(int(x) for x in row) for row in g) for g in doc.get("point_group") or [])
    scheme = ProjectionScheme(name, d, n, field, pi, tuple(hyper), pg, doc.get("expected"),
                              {str(k): str(v) for k, v in (doc.get("params") or {}).items()})
    return scheme.validate()


def parse_scheme(text: str) -> ProjectionScheme:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SchemeError(f"not a valid scheme file: {exc}") from exc
    return scheme_from_dict(doc)


def load_scheme(path) -> ProjectionScheme:
    with open(path, encoding="utf-8") as fh:
        return parse_scheme(fh.read())


def _out_rat(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _out_vec(v):
    return [[_out_rat(c) for c in x] for x in v]


def scheme_to_dict(s: ProjectionScheme) -> dict:
    doc = {
        "name": s.name,
        "d": s.d,
        "n": s.n,
        "field": {"min_poly": list(s.field.min_poly)},
        "lattice": {"pi_int": [_out_vec(c) for c in s.pi_int]},
        "hyperplanes": [{"directions": [_out_vec(v) for v in h.directions], "offset": _out_vec(h.offset)}
                        for h in s.hyperplanes],
    }
    if s.point_group:
        doc["point_group"] = [[list(r) for r in g] for g in s.point_group]
    if s.expected:
        doc["expected"] = s.expected
    if s.params:
        doc["params"] = dict(s.params)
    return doc


def dump_scheme(s: ProjectionScheme) -> str:
    return yaml.safe_dump(scheme_to_dict(s), sort_keys=False, default_flow_style=None)
