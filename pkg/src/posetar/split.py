"""Decomposition of modules into indecomposable summands.

Strategy: compute End(M), find its radical via the trace bilinear form (valid
in characteristic 0), and conclude indecomposability when End/rad is one
dimensional.  Otherwise obtain a nontrivial idempotent, either from the
factored minimal polynomial of a suitable endomorphism (Chinese remainder
inside k[f]) or from a Fitting decomposition of a non-invertible one, and
recurse on the two image summands.  Over a prime field the trace form is not
trusted and the search alone decides, with SplitFailure as the honest out.
"""

from __future__ import annotations

import random
from fractions import Fraction

import sympy

from .errors import SplitFailure
from .linalg import Mat
from .rep import Morphism, Representation, hom, hom_dim, is_isomorphic


def end_basis(M: Representation) -> list[Morphism]:
    return hom(M, M)


def _coords_setup(basis: list[Morphism]):
    field = basis[0].source.field
    cols = [f.flat() for f in basis]
    B = Mat.from_columns(field, cols, len(cols[0]) if cols else 0)
    return B


def _express(B: Mat, f: Morphism):
    col = Mat.from_columns(f.source.field, [f.flat()], B.r)
    sol = B.solve(col)
    if sol is None:
        raise SplitFailure("endomorphism fell outside the computed basis")
    return tuple(sol.column(0))


def _identity_endo(M: Representation) -> Morphism:
    return Morphism(M, M, [Mat.identity(M.field, d) for d in M.dims])


def end_radical_dim(M: Representation, basis: list[Morphism] | None = None) -> int:
    """dim rad End(M) via the trace form; characteristic 0 only."""
    if basis is None:
        basis = end_basis(M)
    field = M.field
    if not field.is_rationals:
        raise SplitFailure("trace-form radical needs characteristic 0")
    n = len(basis)
    gram = [[basis[i].compose(basis[j]).trace() for j in range(n)] for i in range(n)]
    G = Mat(field, gram, n, n)
    return n - G.rank()


def is_indecomposable(M: Representation, rng: random.Random | None = None) -> bool:
    if M.is_zero():
        return False
    basis = end_basis(M)
    if len(basis) == 1:
        return True
    if M.field.is_rationals:
        return len(basis) - end_radical_dim(M, basis) == 1
    return split_once(M, rng or random.Random(0)) is None


def _min_poly_coeffs(B: Mat, f: Morphism, basis: list[Morphism]):
    """Minimal polynomial of f inside End(M), low degree first."""
    field = f.source.field
    powers = [_express(B, _identity_endo(f.source))]
    cur = _identity_endo(f.source)
    while True:
        cur = f.compose(cur)
        vec = _express(B, cur)
        cols = Mat.from_columns(field, powers + [vec], B.c)
        null = cols.nullspace()
        if null:
            dep = null[0]
            # normalize so the top coefficient is 1
            top = dep[-1]
            inv = field.inv(top)
            return [field.mul(inv, c) for c in dep]
        powers.append(vec)


def _poly_from_coeffs(coeffs):
    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(coeffs))
    return sympy.Poly(expr, t, domain="QQ")


def _endo_poly(f: Morphism, coeffs) -> Morphism:
    """Evaluate a polynomial (low-first Fraction coefficients) at f."""
    M = f.source
    acc = _identity_endo(M).scale(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = f.compose(acc).add(_identity_endo(M).scale(c))
    return acc


def _idempotent_from_factor(f: Morphism, poly: "sympy.Poly") -> Morphism | None:
    """CRT idempotent of k[f] from a nontrivial coprime factor split."""
    factors = poly.factor_list()[1]
    if len(factors) < 2:
        return None
    g = factors[0][0] ** factors[0][1]
    h = poly.quo(g)
    s, t_, one = g.gcdex(h)
    if one.degree() != 0:
        return None
    s = s.quo(one)
    # e = s*g evaluated at f is the idempotent supported on the h-part
    e_poly = (s * g).rem(poly)
    coeffs = [Fraction(str(c)) for c in reversed(sympy.Poly(e_poly, poly.gen, domain="QQ").all_coeffs())]
    if not coeffs:
        return None
    e = _endo_poly(f, coeffs)
    if e.is_zero() or e.compose(e).flat() != e.flat():
        return None
    if e.flat() == _identity_endo(f.source).flat():
        return None
    return e


def _fitting_split(f: Morphism) -> Morphism | None:
    """Stable-power idempotent-substitute: split along ker(f^N) + im(f^N)."""
    M = f.source
    n = M.total_dim()
    g = f
    for _ in range(n.bit_length() + 1):
        g = g.compose(g)
    ranks = [b.rank() for b in g.blocks]
    if all(r == d for r, d in zip(ranks, M.dims)) or all(r == 0 for r in ranks):
        return None
    return g


def split_once(M: Representation, rng: random.Random):
    """One nontrivial direct decomposition, or None when indecomposable."""
    basis = end_basis(M)
    if len(basis) <= 1:
        return None
    field = M.field
    if field.is_rationals and len(basis) - end_radical_dim(M, basis) == 1:
        return None
    B = _coords_setup(basis)

    def candidates():
        for f in basis:
            yield f
        for _ in range(40):
            coeffs = [field.of_int(rng.randint(-4, 4)) for _ in basis]
            g = basis[0].scale(coeffs[0])
            for h, c in zip(basis[1:], coeffs[1:]):
                g = g.add(h.scale(c))
            yield g

    for f in candidates():
        if f.is_zero():
            continue
        if field.is_rationals:
            coeffs = _min_poly_coeffs(B, f, basis)
            poly = _poly_from_coeffs(coeffs)
            if poly.degree() >= 2:
                e = _idempotent_from_factor(f, poly)
                if e is not None:
                    A, _ = e.image()
                    Kc, _ = e.kernel()
                    if not A.is_zero() and not Kc.is_zero():
                        return A, Kc
        g = _fitting_split(f)
        if g is not None:
            A, _ = g.image()
            Kc, _ = g.kernel()
            if not A.is_zero() and not Kc.is_zero() and A.total_dim() + Kc.total_dim() == M.total_dim():
                return A, Kc
    raise SplitFailure(f"could not split module with End of dimension {len(basis)}")


def split_indecomposables(M: Representation, rng: random.Random | None = None):
    """Complete decomposition as a list of (summand, multiplicity).

    Summands are returned in a canonical order: lexicographic dimension
    vector along the linear extension, then a hom fingerprint.
    """
    rng = rng or random.Random(0)
    if M.is_zero():
        return []
    pieces: list[Representation] = []
    stack = [M]
    while stack:
        cur = stack.pop()
        res = split_once(cur, rng)
        if res is None:
            pieces.append(cur)
        else:
            stack.extend(res)
    # group by isomorphism
    grouped: list[list[Representation]] = []
    for piece in pieces:
        for group in grouped:
            if piece.dims == group[0].dims and is_isomorphic(piece, group[0]):
                group.append(piece)
                break
        else:
            grouped.append([piece])

    P = M.poset
    order = P.linear_extension()

    def key(group):
        rep = group[0]
        dimvec = tuple(rep.dims[x] for x in order)
        finger = tuple(
            (hom_dim(rep, proj_cache[x]), hom_dim(simple_cache[x], rep)) for x in order
        )
        return (dimvec, finger)

    from .rep import projective as _projective, simple as _simple

    proj_cache = {x: _projective(P, x, M.field) for x in order}
    simple_cache = {x: _simple(P, x, M.field) for x in order}
    return [(g[0], len(g)) for g in sorted(grouped, key=key)]
