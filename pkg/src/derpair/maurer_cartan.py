"""Square-zero characterizations of structures as graded-bracket elements.

A Lie bracket w with a derivation delta packs into the pair P = (w, delta),
and (w, delta) defines a LieDer-style structure exactly when {P, P} = 0 in
the pair bracket; two such pairs are compatible exactly when additionally
{P1, P2} = 0.  The associative-side statements are identical with the
insertion bracket.  Each checker reports the nonzero bracket components as
named residuals so a failure points at the violated identity.

``deformation_check`` tests the twisted equation d_P(Q) + (1/2){Q, Q} = 0 for
a perturbation Q over a valid base P, and ``bidifferential_check`` verifies
that the operators {P1, .} and {P2, .} anticommute degree by degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .brackets import assder_bracket, dc_bracket, gerstenhaber, nijenhuis_richardson
from .cochains import AltMap, DerCochain, MultiMap
from .errors import InvalidStructureError, SchemaError, ShapeError


@dataclass
class McVerdict:
    """Outcome of a square-zero check: holds iff no residuals survive."""

    holds: bool
    residuals: list[tuple[str, object]] = field(default_factory=list)


def _verdict(named_values) -> McVerdict:
    residuals = [(name, value) for name, value in named_values
                 if not value.is_zero()]
    return McVerdict(not residuals, residuals)


def _delta_alt(delta: MultiMap) -> AltMap:
    if delta.arity != 1:
        raise ShapeError("expected a linear operator")
    return AltMap(delta.space, 1, dict(delta.coeffs))


def lie_pair(w: AltMap, delta: MultiMap) -> DerCochain:
    """Pack a bracket and an operator into one pair cochain."""
    return DerCochain(w, _delta_alt(delta))


def ass_pair(mu: MultiMap, delta: MultiMap) -> DerCochain:
    return DerCochain(mu, delta)


def mc_lieder(w: AltMap, delta: MultiMap) -> McVerdict:
    """(w, delta) squares to zero iff w is Lie and delta is a derivation of it."""
    if w.arity != 2:
        raise ShapeError("expected an alternating bilinear map")
    if delta.space != w.space:
        raise ShapeError("operands live on different spaces")
    return _verdict([
        ("[w,w]_NR", nijenhuis_richardson(w, w)),
        ("-2[w,delta]_NR",
         nijenhuis_richardson(w, _delta_alt(delta)).scale(-2)),
    ])


def mc_assder(mu: MultiMap, delta: MultiMap) -> McVerdict:
    """(mu, delta) squares to zero iff mu is associative with derivation delta."""
    if mu.arity != 2:
        raise ShapeError("expected a bilinear map")
    if delta.space != mu.space:
        raise ShapeError("operands live on different spaces")
    return _verdict([
        ("[mu,mu]_G", gerstenhaber(mu, mu)),
        ("-2[mu,delta]_G", gerstenhaber(mu, delta).scale(-2)),
    ])


def mc_pair_lieder(w1: AltMap, delta1: MultiMap,
                   w2: AltMap, delta2: MultiMap) -> McVerdict:
    """Both pairs square to zero and their mixed bracket vanishes."""
    first = mc_lieder(w1, delta1)
    second = mc_lieder(w2, delta2)
    residuals = [(f"{name}[pair1]", value) for name, value in first.residuals]
    residuals += [(f"{name}[pair2]", value) for name, value in second.residuals]
    mixed_top = nijenhuis_richardson(w1, w2)
    mixed_shadow = (nijenhuis_richardson(w1, _delta_alt(delta2))
                    + nijenhuis_richardson(w2, _delta_alt(delta1))).scale(-1)
    if not mixed_top.is_zero():
        residuals.append(("[w1,w2]_NR", mixed_top))
    if not mixed_shadow.is_zero():
        residuals.append(("-[w1,delta2]_NR-[w2,delta1]_NR", mixed_shadow))
    return McVerdict(not residuals, residuals)


def mc_pair_assder(mu1: MultiMap, delta1: MultiMap,
                   mu2: MultiMap, delta2: MultiMap) -> McVerdict:
    """Associative-side compatible pair condition."""
    first = mc_assder(mu1, delta1)
    second = mc_assder(mu2, delta2)
    residuals = [(f"{name}[pair1]", value) for name, value in first.residuals]
    residuals += [(f"{name}[pair2]", value) for name, value in second.residuals]
    mixed = assder_bracket(ass_pair(mu1, delta1), ass_pair(mu2, delta2))
    if not mixed.top.is_zero():
        residuals.append(("[mu1,mu2]_G", mixed.top))
    if mixed.shadow is not None and not mixed.shadow.is_zero():
        residuals.append(("-[mu1,delta2]_G+[delta1,mu2]_G", mixed.shadow))
    return McVerdict(not residuals, residuals)


def deformation_check(w: AltMap, delta: MultiMap,
                      w1: AltMap, delta1: MultiMap) -> McVerdict:
    """Twisted square-zero equation for a perturbation of a valid base pair.

    Holds iff d_P(Q) + (1/2){Q, Q} = 0 for P = (w, delta), Q = (w1, delta1),
    equivalently iff (w + w1, delta + delta1) is again a bracket-derivation
    pair.
    """
    base = mc_lieder(w, delta)
    if not base.holds:
        raise InvalidStructureError("base pair fails its own square-zero check")
    p = lie_pair(w, delta)
    q = lie_pair(w1, delta1)
    total = dc_bracket(p, q) + dc_bracket(q, q).scale(Fraction(1, 2))
    named = [("deformation[top]", total.top)]
    if total.shadow is not None:
        named.append(("deformation[shadow]", total.shadow))
    return _verdict(named)


def bidifferential_check(pair1: DerCochain, pair2: DerCochain,
                         flavor: str = "lieder", max_degree: int = 2) -> McVerdict:
    """Check {P1,{P2,.}} + {P2,{P1,.}} = 0 on all basis cochains per degree."""
    if pair1.space != pair2.space:
        raise ShapeError("pairs live on different spaces")
    if flavor == "lieder":
        bracket = dc_bracket
        cochain_flavor = "alt"
    elif flavor == "assder":
        bracket = assder_bracket
        cochain_flavor = "multi"
    else:
        raise SchemaError(f"unknown flavor {flavor!r}")
    if pair1.flavor != cochain_flavor or pair2.flavor != cochain_flavor:
        raise ShapeError("pair flavor does not match the requested complex")
    residuals = []
    for degree in range(1, max_degree + 1):
        for index, basis in enumerate(
                DerCochain.basis(pair1.space, degree, cochain_flavor)):
            value = (bracket(pair1, bracket(pair2, basis))
                     + bracket(pair2, bracket(pair1, basis)))
            if not value.is_zero():
                residuals.append(
                    (f"d1d2+d2d1 at degree {degree}, basis {index}", value))
    return McVerdict(not residuals, residuals)
