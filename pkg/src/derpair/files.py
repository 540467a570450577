"""JSON formats for presentations, cochains, and report fragments.

A presentation file looks like

    {"dimension": 2,
     "labels": ["e1", "e2"],
     "kind": "compatible-lie",
     "products": {"bracket1": [[0, 1, 0, "1"], [1, 0, 0, "-1"]],
                  "bracket2": [[0, 1, 1, "1"], [1, 0, 1, "-1"]]},
     "derivations": {}}

A product entry [i, j, k, "p/q"] says the product of basis elements i and j
has coefficient p/q on basis element k; a derivation entry [i, j, "p/q"] says
delta(e_i) has coefficient p/q on e_j.  Indices are 0-based in files even
though reports print 1-based labels e1..en.  Rationals are strings "p/q", or
"p" when the denominator is 1.  Duplicate index keys and unknown kinds are
rejected; zero coefficients are dropped on input and never emitted.

Emission is canonical (sorted entries, fixed key order, two-space indent), so
parse followed by emit is the identity on anything this module emitted.
"""

from __future__ import annotations

import json

from .cochains import AltMap, DerCochain, MultiMap
from .errors import SchemaError
from .linalg import Space, format_scalar, parse_scalar
from .structures import Presentation, Violation, validate_presentation


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise SchemaError(message)


def _load_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    _require(isinstance(doc, dict), "top-level JSON value must be an object")
    return doc


def _space_from(doc: dict) -> Space:
    dimension = doc.get("dimension")
    _require(isinstance(dimension, int) and dimension >= 1,
             "dimension must be a positive integer")
    labels = doc.get("labels")
    if labels is None:
        return Space.of_dim(dimension)
    _require(isinstance(labels, list) and all(isinstance(x, str) for x in labels),
             "labels must be a list of strings")
    return Space.of_dim(dimension, labels)


def _entries_to_map(space: Space, arity: int, entries, where: str) -> MultiMap:
    _require(isinstance(entries, list), f"{where}: entries must be a list")
    table = {}
    for entry in entries:
        _require(isinstance(entry, list) and len(entry) == arity + 2,
                 f"{where}: each entry needs {arity} input indices, one output "
                 f"index, and a coefficient")
        *indices, out, coefficient = entry
        _require(all(isinstance(i, int) for i in indices) and isinstance(out, int),
                 f"{where}: indices must be integers")
        _require(all(0 <= i < space.dimension for i in indices)
                 and 0 <= out < space.dimension,
                 f"{where}: index out of range for dimension {space.dimension}")
        key = (tuple(indices), out)
        _require(key not in table, f"{where}: duplicate entry for {entry[:-1]}")
        _require(isinstance(coefficient, str),
                 f"{where}: coefficients must be rational strings")
        table[key] = parse_scalar(coefficient)
    return MultiMap(space, arity, table)


def _map_to_entries(m) -> list:
    return [[*args, out, format_scalar(value)]
            for (args, out), value in sorted(m.coeffs.items())]


def presentation_from_dict(doc: dict, kind_override: str | None = None) -> Presentation:
    space = _space_from(doc)
    kind = kind_override if kind_override is not None else doc.get("kind")
    _require(isinstance(kind, str), "kind must be a string")
    raw_products = doc.get("products", {})
    raw_derivations = doc.get("derivations", {})
    _require(isinstance(raw_products, dict), "products must be an object")
    _require(isinstance(raw_derivations, dict), "derivations must be an object")
    products = {name: _entries_to_map(space, 2, entries, f"products.{name}")
                for name, entries in raw_products.items()}
    derivations = {name: _entries_to_map(space, 1, entries, f"derivations.{name}")
                   for name, entries in raw_derivations.items()}
    provenance = doc.get("provenance", {})
    _require(isinstance(provenance, dict), "provenance must be an object")
    p = Presentation(space, products, derivations, kind, provenance)
    validate_presentation(p)
    return p


def parse_presentation(text: str, kind_override: str | None = None) -> Presentation:
    return presentation_from_dict(_load_document(text), kind_override)


def presentation_to_dict(p: Presentation) -> dict:
    doc = {
        "dimension": p.space.dimension,
        "labels": list(p.space.labels),
        "kind": p.kind,
        "products": {name: _map_to_entries(p.products[name])
                     for name in sorted(p.products)},
        "derivations": {name: _map_to_entries(p.derivations[name])
                        for name in sorted(p.derivations)},
    }
    if p.provenance:
        doc["provenance"] = {key: p.provenance[key] for key in sorted(p.provenance)}
    return doc


def emit_presentation(p: Presentation) -> str:
    return json.dumps(presentation_to_dict(p), indent=2, ensure_ascii=False) + "\n"


# -- cochain files -----------------------------------------------------------

def _as_alternating(m: MultiMap, where: str) -> AltMap:
    # reject tables that are not genuinely alternating rather than silently
    # projecting them (which would rescale lone entries)
    alt = AltMap.from_multimap(m)
    if alt.to_multimap() != m:
        raise SchemaError(
            f"{where}: an 'alt' cochain table must be alternating (every "
            "permutation of an entry present with its sign)")
    return alt


def cochain_from_dict(doc: dict) -> DerCochain:
    """Read a cochain file: a top map and an optional shadow one arity lower."""
    space = _space_from(doc)
    flavor = doc.get("flavor")
    _require(flavor in ("multi", "alt"), 'flavor must be "multi" or "alt"')
    arity = doc.get("arity")
    _require(isinstance(arity, int) and arity >= 1,
             "arity must be a positive integer")
    top_multi = _entries_to_map(space, arity, doc.get("entries", []), "entries")
    shadow_entries = doc.get("shadow")
    shadow_multi = None
    if shadow_entries is not None:
        _require(arity >= 2, "a shadow needs top arity >= 2")
        shadow_multi = _entries_to_map(space, arity - 1, shadow_entries, "shadow")
    if flavor == "alt":
        top = _as_alternating(top_multi, "entries")
        shadow = None if shadow_multi is None else _as_alternating(shadow_multi,
                                                                   "shadow")
    else:
        top = top_multi
        shadow = shadow_multi
    if shadow is None and arity > 1:
        return DerCochain(top, (AltMap if flavor == "alt" else MultiMap)
                          .zero(space, arity - 1))
    return DerCochain(top, shadow)


def parse_cochain(text: str) -> DerCochain:
    return cochain_from_dict(_load_document(text))


def cochain_to_dict(c: DerCochain, with_shadow: bool) -> dict:
    top = c.top.to_multimap() if isinstance(c.top, AltMap) else c.top
    doc = {
        "dimension": c.space.dimension,
        "labels": list(c.space.labels),
        "flavor": c.flavor,
        "arity": c.top.arity,
        "entries": _map_to_entries(top),
    }
    if with_shadow:
        shadow = c.shadow
        if isinstance(shadow, AltMap):
            shadow = shadow.to_multimap()
        doc["shadow"] = None if shadow is None else _map_to_entries(shadow)
    return doc


def emit_cochain(c: DerCochain, with_shadow: bool) -> str:
    return json.dumps(cochain_to_dict(c, with_shadow), indent=2,
                      ensure_ascii=False) + "\n"


# -- report fragments ---------------------------------------------------------

def violation_to_dict(v: Violation, space: Space) -> dict:
    return {
        "axiom": v.axiom,
        "witness": [space.labels[i] for i in v.witness],
        "lhs": [format_scalar(x) for x in v.lhs],
        "rhs": [format_scalar(x) for x in v.rhs],
    }


def _first_nonzero_entry(value, space: Space):
    coeffs = getattr(value, "coeffs", None)
    if not coeffs:
        return None
    (args, out), coefficient = min(coeffs.items())
    return {
        "args": [space.labels[i] for i in args],
        "out": space.labels[out],
        "value": format_scalar(coefficient),
    }


def mc_to_dict(verdict, space: Space) -> dict:
    return {
        "holds": verdict.holds,
        "residuals": [
            {"name": name, "witness": _first_nonzero_entry(_flatten(value), space)}
            for name, value in verdict.residuals
        ],
    }


def _flatten(value):
    # DerCochain residuals report their top component unless only the shadow
    # is nonzero.
    if isinstance(value, DerCochain):
        if not value.top.is_zero():
            return value.top
        return value.shadow
    return value


def cohomology_to_dict(report) -> dict:
    doc = {
        "flavor": report.flavor,
        "max_degree": report.max_degree,
        "dd_zero_certified": report.dd_zero_certified,
        "degrees": [
            {
                "degree": row.degree,
                "dim_cochains": row.dim_cochains,
                "rank_d": row.rank_d,
                "dim_closed": row.dim_closed,
                "dim_exact": row.dim_exact,
                "dim_cohomology": row.dim_cohomology,
            }
            for row in report.degrees
        ],
    }
    if report.kernel_bases:
        doc["kernel_bases"] = {
            str(degree): [[format_scalar(x) for x in vec] for vec in vectors]
            for degree, vectors in sorted(report.kernel_bases.items())
        }
    return doc
