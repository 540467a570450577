"""Sparse multilinear and alternating maps on a based space.

A ``MultiMap`` of arity k stores the structure constants of a k-linear map
V^k -> V as a sparse table {(i1,...,ik, j): c}, meaning the value on the basis
tuple (e_i1,...,e_ik) has coefficient c on e_j.  An ``AltMap`` stores an
alternating k-linear map on strictly increasing index tuples only; evaluation
at permuted tuples picks up the permutation sign and evaluation at tuples with
a repeated index is zero.

This module also supplies the two insertion compositions these maps support:
``circle_g`` (the sum over argument-slot insertions with alternating-block
signs, arity p+1 o arity q+1 -> arity p+q+1) and ``circle_nr`` (the unshuffle
sum used on alternating maps).  The graded brackets built from them live in
``derpair.brackets``.

``DerCochain`` pairs a top map of arity n with a shadow map of arity n-1 (the
shadow is absent at n = 1); ``CompatCochain`` is an n-tuple of degree-n
``DerCochain`` values.  Coordinates of every cochain flavor are taken in
lexicographic order of index tuples, top before shadow, parts left to right,
so coboundary matrices can be assembled deterministically.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial

from .errors import ShapeError
from .linalg import ONE, ZERO, Space, as_scalar


def sort_with_sign(indices):
    """Sort a tuple, returning (sorted_tuple, parity_sign) or None on repeats."""
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(idx)):
        if idx[i - 1] == idx[i]:
            return None
    return tuple(idx), sign


def unshuffles(k: int, total: int):
    """All (k, total-k) unshuffles as (first_block, second_block, sign).

    Yields index tuples partitioning range(total) with both blocks increasing;
    sign is the parity of the permutation first_block + second_block.
    """
    everything = range(total)
    for first in itertools.combinations(everything, k):
        chosen = set(first)
        second = tuple(i for i in everything if i not in chosen)
        inversions = sum(pos - offset for offset, pos in enumerate(first))
        yield first, second, (-1) ** inversions


class _SparseMap:
    """Shared linear-space behaviour of MultiMap and AltMap.

    Instances are treated as immutable after construction (all operations
    build new maps), so sharing them across threads for reads is safe.
    """

    __slots__ = ("space", "arity", "coeffs")

    def __init__(self, space: Space, arity: int, coeffs=None):
        if arity < 1:
            raise ShapeError("arity must be >= 1")
        self.space = space
        self.arity = arity
        table = {}
        if coeffs:
            for (args, out), value in coeffs.items():
                value = as_scalar(value)
                if value == 0:
                    continue
                self._check_key(args, out)
                table[(tuple(args), out)] = value
        self.coeffs = table

    def _check_key(self, args, out):
        d = self.space.dimension
        if len(args) != self.arity:
            raise ShapeError(f"key arity {len(args)} != map arity {self.arity}")
        if not all(0 <= i < d for i in args) or not 0 <= out < d:
            raise ShapeError("basis index out of range")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (type(self) is type(other) and self.space == other.space
                and self.arity == other.arity and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((type(self).__name__, self.space, self.arity,
                     frozenset(self.coeffs.items())))

    def _require_like(self, other):
        if type(self) is not type(other) or self.space != other.space:
            raise ShapeError("operands live on different spaces")
        if self.arity != other.arity:
            raise ShapeError("operands have different arities")

    def __add__(self, other):
        self._require_like(other)
        table = dict(self.coeffs)
        for key, value in other.coeffs.items():
            total = table.get(key, ZERO) + value
            if total == 0:
                table.pop(key, None)
            else:
                table[key] = total
        return type(self)(self.space, self.arity, table)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        factor = as_scalar(factor)
        if factor == 0:
            return type(self)(self.space, self.arity, {})
        return type(self)(self.space, self.arity,
                          {key: factor * value for key, value in self.coeffs.items()})

    def __rmul__(self, factor):
        return self.scale(factor)

    def apply(self, vectors):
        """Multilinear extension: evaluate on coefficient vectors."""
        if len(vectors) != self.arity:
            raise ShapeError("argument count != arity")
        d = self.space.dimension
        out = [ZERO] * d
        for args in itertools.product(range(d), repeat=self.arity):
            factor = ONE
            for vec, i in zip(vectors, args):
                factor *= vec[i]
                if factor == 0:
                    break
            if factor == 0:
                continue
            for j, c in zip(range(d), self.eval(args)):
                if c:
                    out[j] += factor * c
        return out

    def __repr__(self):
        body = ", ".join(f"{args}->{out}: {value}"
                         for (args, out), value in sorted(self.coeffs.items()))
        return f"{type(self).__name__}(dim={self.space.dimension}, arity={self.arity}, {{{body}}})"


class MultiMap(_SparseMap):
    """Sparse k-linear map on a based space (products, operators, cochains)."""

    @staticmethod
    def zero(space: Space, arity: int) -> "MultiMap":
        return MultiMap(space, arity, {})

    @staticmethod
    def identity(space: Space) -> "MultiMap":
        return MultiMap(space, 1, {((i,), i): ONE for i in range(space.dimension)})

    @staticmethod
    def basis(space: Space, arity: int):
        """All single-entry maps, in coordinate order."""
        d = space.dimension
        for args in itertools.product(range(d), repeat=arity):
            for out in range(d):
                yield MultiMap(space, arity, {(args, out): ONE})

    @staticmethod
    def coord_length(space: Space, arity: int) -> int:
        return space.dimension ** arity * space.dimension

    def eval(self, args) -> list[Fraction]:
        """Value on a basis-index tuple as a coefficient vector."""
        args = tuple(args)
        if len(args) != self.arity:
            raise ShapeError("argument count != arity")
        out = [ZERO] * self.space.dimension
        for j in range(self.space.dimension):
            value = self.coeffs.get((args, j))
            if value is not None:
                out[j] = value
        return out

    def flip(self) -> "MultiMap":
        """Swap the two arguments of a bilinear map."""
        if self.arity != 2:
            raise ShapeError("flip needs arity 2")
        return MultiMap(self.space, 2,
                        {((b, a), out): value
                         for ((a, b), out), value in self.coeffs.items()})

    def coords(self) -> list[Fraction]:
        d = self.space.dimension
        return [self.coeffs.get((args, out), ZERO)
                for args in itertools.product(range(d), repeat=self.arity)
                for out in range(d)]

    @staticmethod
    def from_coords(space: Space, arity: int, values) -> "MultiMap":
        values = list(values)
        if len(values) != MultiMap.coord_length(space, arity):
            raise ShapeError("coordinate vector has the wrong length")
        d = space.dimension
        keys = ((args, out)
                for args in itertools.product(range(d), repeat=arity)
                for out in range(d))
        return MultiMap(space, arity,
                        {key: value for key, value in zip(keys, values) if value})


class AltMap(_SparseMap):
    """Sparse alternating k-linear map, keyed by strictly increasing tuples."""

    def _check_key(self, args, out):
        super()._check_key(args, out)
        if any(a >= b for a, b in zip(args, args[1:])):
            raise ShapeError("AltMap keys must be strictly increasing")

    @staticmethod
    def zero(space: Space, arity: int) -> "AltMap":
        return AltMap(space, arity, {})

    @staticmethod
    def identity(space: Space) -> "AltMap":
        return AltMap(space, 1, {((i,), i): ONE for i in range(space.dimension)})

    @staticmethod
    def basis(space: Space, arity: int):
        d = space.dimension
        for args in itertools.combinations(range(d), arity):
            for out in range(d):
                yield AltMap(space, arity, {(args, out): ONE})

    @staticmethod
    def coord_length(space: Space, arity: int) -> int:
        return comb(space.dimension, arity) * space.dimension

    def eval(self, args) -> list[Fraction]:
        """Signed value on any basis-index tuple (zero on repeated indices)."""
        args = tuple(args)
        if len(args) != self.arity:
            raise ShapeError("argument count != arity")
        out = [ZERO] * self.space.dimension
        sorted_sign = sort_with_sign(args)
        if sorted_sign is None:
            return out
        key, sign = sorted_sign
        for j in range(self.space.dimension):
            value = self.coeffs.get((key, j))
            if value is not None:
                out[j] = sign * value
        return out

    def coords(self) -> list[Fraction]:
        d = self.space.dimension
        return [self.coeffs.get((args, out), ZERO)
                for args in itertools.combinations(range(d), self.arity)
                for out in range(d)]

    @staticmethod
    def from_coords(space: Space, arity: int, values) -> "AltMap":
        values = list(values)
        if len(values) != AltMap.coord_length(space, arity):
            raise ShapeError("coordinate vector has the wrong length")
        d = space.dimension
        keys = ((args, out)
                for args in itertools.combinations(range(d), arity)
                for out in range(d))
        return AltMap(space, arity,
                      {key: value for key, value in zip(keys, values) if value})

    @staticmethod
    def from_multimap(m: MultiMap) -> "AltMap":
        """Antisymmetrize a MultiMap: average of signed permuted values."""
        d = m.space.dimension
        table = {}
        k = m.arity
        norm = Fraction(1, factorial(k))
        for args in itertools.combinations(range(d), k):
            acc = [ZERO] * d
            for perm in itertools.permutations(range(k)):
                sign = _perm_sign(perm)
                permuted = tuple(args[p] for p in perm)
                for j, c in zip(range(d), m.eval(permuted)):
                    if c:
                        acc[j] += sign * c
            for j, c in enumerate(acc):
                if c:
                    table[(args, j)] = c * norm
        return AltMap(m.space, k, table)

    def to_multimap(self) -> MultiMap:
        """Expand to the full (redundant) multilinear table."""
        d = self.space.dimension
        table = {}
        for (args, out), value in self.coeffs.items():
            for perm in itertools.permutations(range(len(args))):
                key = tuple(args[p] for p in perm)
                table[(key, out)] = _perm_sign(perm) * value
        return MultiMap(self.space, self.arity, table)


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def multimap_is_skew(m: MultiMap):
    """First basis pair where a bilinear map fails m(x,y) = -m(y,x), or None."""
    if m.arity != 2:
        raise ShapeError("skew check needs arity 2")
    d = m.space.dimension
    for a in range(d):
        for b in range(a, d):
            lhs = m.eval((a, b))
            rhs = [-x for x in m.eval((b, a))]
            if lhs != rhs:
                return (a, b), lhs, rhs
    return None


def circle_g(f: MultiMap, g: MultiMap) -> MultiMap:
    """Insertion composition of multilinear maps.

    For f of arity p+1 and g of arity q+1 this is the arity p+q+1 map

        (f o g)(x_1,...,x_{p+q+1})
            = sum_{i=1}^{p+1} (-1)^{(i-1)q} f(x_1,...,x_{i-1},
                                              g(x_i,...,x_{i+q}),
                                              x_{i+q+1},...,x_{p+q+1}).
    """
    if f.space != g.space:
        raise ShapeError("maps live on different spaces")
    space = f.space
    q = g.arity - 1
    out_arity = f.arity + g.arity - 1
    by_output = {}
    for (args, out), value in g.coeffs.items():
        by_output.setdefault(out, []).append((args, value))
    table = {}
    for slot in range(f.arity):
        sign = (-1) ** (slot * q)
        for (fargs, fout), fvalue in f.coeffs.items():
            for gargs, gvalue in by_output.get(fargs[slot], ()):
                key = (fargs[:slot] + gargs + fargs[slot + 1:], fout)
                total = table.get(key, ZERO) + sign * fvalue * gvalue
                if total == 0:
                    table.pop(key, None)
                else:
                    table[key] = total
    return MultiMap(space, out_arity, table)


def circle_nr(f: AltMap, g: AltMap) -> AltMap:
    """Unshuffle composition of alternating maps.

    For f of arity m+1 and g of arity n+1 this is the arity m+n+1 map

        (f ob g)(x_1,...,x_{m+n+1})
            = sum_{sigma in Sh(n+1,m)} sgn(sigma)
                  f(g(x_{sigma(1)},...,x_{sigma(n+1)}),
                    x_{sigma(n+2)},...,x_{sigma(m+n+1)}).
    """
    if f.space != g.space:
        raise ShapeError("maps live on different spaces")
    space = f.space
    d = space.dimension
    out_arity = f.arity + g.arity - 1
    table = {}
    if out_arity > d:
        return AltMap.zero(space, out_arity)
    for args in itertools.combinations(range(d), out_arity):
        acc = [ZERO] * d
        for inner, outer, sign in unshuffles(g.arity, out_arity):
            inner_args = tuple(args[i] for i in inner)
            outer_args = tuple(args[i] for i in outer)
            inner_value = g.eval(inner_args)
            for k, c in enumerate(inner_value):
                if c:
                    fvalue = f.eval((k,) + outer_args)
                    for j, fc in enumerate(fvalue):
                        if fc:
                            acc[j] += sign * c * fc
        for j, c in enumerate(acc):
            if c:
                table[(args, j)] = c
    return AltMap(space, out_arity, table)


class DerCochain:
    """A cochain of a derivation-pair complex: top map plus lower shadow.

    ``degree`` is the top arity n; the shadow has arity n-1 and is None when
    n = 1.  Both components share the space and the flavor (MultiMap for the
    associative side, AltMap for the Lie side).
    """

    __slots__ = ("top", "shadow")

    def __init__(self, top, shadow=None):
        if shadow is not None:
            if type(shadow) is not type(top):
                raise ShapeError("top and shadow must share a flavor")
            if shadow.space != top.space:
                raise ShapeError("top and shadow must share the space")
            if shadow.arity != top.arity - 1:
                raise ShapeError("shadow arity must be top arity - 1")
        elif top.arity != 1:
            raise ShapeError("shadow may be absent only in degree 1")
        self.top = top
        self.shadow = shadow

    @property
    def space(self):
        return self.top.space

    @property
    def degree(self) -> int:
        return self.top.arity

    @property
    def flavor(self):
        return "alt" if isinstance(self.top, AltMap) else "multi"

    @staticmethod
    def zero(space: Space, degree: int, flavor: str) -> "DerCochain":
        cls = AltMap if flavor == "alt" else MultiMap
        shadow = cls.zero(space, degree - 1) if degree > 1 else None
        return DerCochain(cls.zero(space, degree), shadow)

    def is_zero(self) -> bool:
        return self.top.is_zero() and (self.shadow is None or self.shadow.is_zero())

    def __eq__(self, other):
        return (isinstance(other, DerCochain) and self.top == other.top
                and self.shadow == other.shadow)

    def __hash__(self):
        return hash((self.top, self.shadow))

    def __add__(self, other):
        if not isinstance(other, DerCochain):
            return NotImplemented
        if self.degree != other.degree:
            raise ShapeError("cochain degrees differ")
        if self.shadow is None:
            return DerCochain(self.top + other.top, None)
        return DerCochain(self.top + other.top, self.shadow + other.shadow)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor) -> "DerCochain":
        shadow = None if self.shadow is None else self.shadow.scale(factor)
        return DerCochain(self.top.scale(factor), shadow)

    def __rmul__(self, factor):
        return self.scale(factor)

    def coords(self) -> list[Fraction]:
        values = self.top.coords()
        if self.shadow is not None:
            values.extend(self.shadow.coords())
        return values

    @staticmethod
    def coord_length(space: Space, degree: int, flavor: str) -> int:
        cls = AltMap if flavor == "alt" else MultiMap
        total = cls.coord_length(space, degree)
        if degree > 1:
            total += cls.coord_length(space, degree - 1)
        return total

    @staticmethod
    def from_coords(space: Space, degree: int, flavor: str, values) -> "DerCochain":
        values = list(values)
        if len(values) != DerCochain.coord_length(space, degree, flavor):
            raise ShapeError("coordinate vector has the wrong length")
        cls = AltMap if flavor == "alt" else MultiMap
        split = cls.coord_length(space, degree)
        top = cls.from_coords(space, degree, values[:split])
        shadow = None
        if degree > 1:
            shadow = cls.from_coords(space, degree - 1, values[split:])
        return DerCochain(top, shadow)

    @staticmethod
    def basis(space: Space, degree: int, flavor: str):
        """Basis cochains matching coordinate order: top slots then shadow slots."""
        cls = AltMap if flavor == "alt" else MultiMap
        zero_shadow = cls.zero(space, degree - 1) if degree > 1 else None
        for top in cls.basis(space, degree):
            yield DerCochain(top, zero_shadow)
        if degree > 1:
            zero_top = cls.zero(space, degree)
            for shadow in cls.basis(space, degree - 1):
                yield DerCochain(zero_top, shadow)

    def __repr__(self):
        return f"DerCochain(top={self.top!r}, shadow={self.shadow!r})"


class CompatCochain:
    """Degree-n cochain of a compatible-pair complex: n DerCochains of degree n."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise ShapeError("a compatible cochain needs at least one part")
        degree = len(parts)
        for part in parts:
            if not isinstance(part, DerCochain):
                raise ShapeError("parts must be DerCochains")
            if part.degree != degree:
                raise ShapeError("part degree must equal the number of parts")
            if part.space != parts[0].space or part.flavor != parts[0].flavor:
                raise ShapeError("parts must share space and flavor")
        self.parts = parts

    @property
    def space(self):
        return self.parts[0].space

    @property
    def degree(self) -> int:
        return len(self.parts)

    @property
    def flavor(self):
        return self.parts[0].flavor

    @staticmethod
    def zero(space: Space, degree: int, flavor: str) -> "CompatCochain":
        return CompatCochain([DerCochain.zero(space, degree, flavor)
                              for _ in range(degree)])

    def is_zero(self) -> bool:
        return all(part.is_zero() for part in self.parts)

    def __eq__(self, other):
        return isinstance(other, CompatCochain) and self.parts == other.parts

    def __add__(self, other):
        if not isinstance(other, CompatCochain):
            return NotImplemented
        if self.degree != other.degree:
            raise ShapeError("cochain degrees differ")
        return CompatCochain([a + b for a, b in zip(self.parts, other.parts)])

    def scale(self, factor) -> "CompatCochain":
        return CompatCochain([part.scale(factor) for part in self.parts])

    def __rmul__(self, factor):
        return self.scale(factor)

    def coords(self) -> list[Fraction]:
        values = []
        for part in self.parts:
            values.extend(part.coords())
        return values

    @staticmethod
    def coord_length(space: Space, degree: int, flavor: str) -> int:
        return degree * DerCochain.coord_length(space, degree, flavor)

    @staticmethod
    def from_coords(space: Space, degree: int, flavor: str, values) -> "CompatCochain":
        values = list(values)
        if len(values) != CompatCochain.coord_length(space, degree, flavor):
            raise ShapeError("coordinate vector has the wrong length")
        step = DerCochain.coord_length(space, degree, flavor)
        parts = [DerCochain.from_coords(space, degree, flavor,
                                        values[i * step:(i + 1) * step])
                 for i in range(degree)]
        return CompatCochain(parts)

    @staticmethod
    def basis(space: Space, degree: int, flavor: str):
        zero = DerCochain.zero(space, degree, flavor)
        for slot in range(degree):
            for part in DerCochain.basis(space, degree, flavor):
                yield CompatCochain([part if i == slot else zero
                                     for i in range(degree)])

    def __repr__(self):
        return f"CompatCochain({list(self.parts)!r})"
