"""The four graded Lie brackets used throughout the package.

On multilinear maps the insertion bracket ``gerstenhaber`` detects
associativity ([mu,mu] = 0) and derivations ([mu,delta] = 0); on alternating
maps ``nijenhuis_richardson`` detects the Jacobi identity and Lie-algebra
derivations the same way.  ``dc_bracket`` extends the alternating bracket to
pairs (top, shadow) so that a Lie bracket together with a derivation becomes
a single square-zero element; ``assder_bracket`` is the associative-side
analogue.  Degrees: a map of arity k has bracket degree k-1, a pair whose top
has arity k sits in complex degree k.
"""

from __future__ import annotations

from .cochains import AltMap, DerCochain, MultiMap, circle_g, circle_nr
from .errors import ShapeError


def gerstenhaber(f: MultiMap, g: MultiMap) -> MultiMap:
    """[f,g] = f o g - (-1)^{pq} g o f with p = arity(f)-1, q = arity(g)-1."""
    if f.space != g.space:
        raise ShapeError("operands live on different spaces")
    p = f.arity - 1
    q = g.arity - 1
    second = circle_g(g, f)
    if (p * q) % 2:
        return circle_g(f, g) + second
    return circle_g(f, g) - second


def nijenhuis_richardson(f: AltMap, g: AltMap) -> AltMap:
    """[f,g] = f ob g - (-1)^{mn} g ob f with m = arity(f)-1, n = arity(g)-1."""
    if f.space != g.space:
        raise ShapeError("operands live on different spaces")
    m = f.arity - 1
    n = g.arity - 1
    second = circle_nr(g, f)
    if (m * n) % 2:
        return circle_nr(f, g) + second
    return circle_nr(f, g) - second


def dc_bracket(a: DerCochain, b: DerCochain) -> DerCochain:
    """Bracket on pairs of alternating maps.

    For a = (f_{m+1}, g_m) and b = (f_{n+1}, g_n):

        {a, b} = ([f_{m+1}, f_{n+1}],
                  (-1)^m [f_{m+1}, g_n] - (-1)^{n(m+1)} [f_{n+1}, g_m])

    with all brackets Nijenhuis-Richardson.  Output degree (top arity) is
    m + n + 1.
    """
    if a.flavor != "alt" or b.flavor != "alt":
        raise ShapeError("dc_bracket needs alternating cochains")
    if a.space != b.space:
        raise ShapeError("operands live on different spaces")
    m = a.top.arity - 1
    n = b.top.arity - 1
    top = nijenhuis_richardson(a.top, b.top)
    if m + n == 0:
        return DerCochain(top, None)
    shadow = AltMap.zero(a.space, m + n)
    if b.shadow is not None:
        shadow = shadow + nijenhuis_richardson(a.top, b.shadow).scale((-1) ** m)
    if a.shadow is not None:
        shadow = shadow - nijenhuis_richardson(b.top, a.shadow).scale((-1) ** (n * (m + 1)))
    return DerCochain(top, shadow)


def assder_bracket(a: DerCochain, b: DerCochain) -> DerCochain:
    """Bracket on pairs of multilinear maps.

    For a = (f_m, f_{m-1}) in complex degree m and b = (g_n, g_{n-1}) in
    degree n:

        [[a, b]] = ([f_m, g_n],
                    (-1)^{m+1} [f_m, g_{n-1}] + [f_{m-1}, g_n])

    with all brackets Gerstenhaber; the output sits in degree m + n - 1.
    """
    if a.flavor != "multi" or b.flavor != "multi":
        raise ShapeError("assder_bracket needs multilinear cochains")
    if a.space != b.space:
        raise ShapeError("operands live on different spaces")
    m = a.top.arity
    n = b.top.arity
    top = gerstenhaber(a.top, b.top)
    if m + n - 1 == 1:
        return DerCochain(top, None)
    shadow = MultiMap.zero(a.space, m + n - 2)
    if b.shadow is not None:
        shadow = shadow + gerstenhaber(a.top, b.shadow).scale((-1) ** (m + 1))
    if a.shadow is not None:
        shadow = shadow + gerstenhaber(a.shadow, b.top)
    return DerCochain(top, shadow)
