"""Constructions on stratified simplicial sets: products, joins, slices,
n-trivialization, n-cores and the cell decomposition of a monomorphism.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations

from .simplicial import (
    ComplexMap,
    Inclusion,
    SimplexRef,
    StratifiedComplex,
    id_key,
    make_complex,
    subcomplex,
    surjection_to_word,
    surjections,
    word_to_surjection,
    with_marking,
)

_DEGENERATE = re.compile(r"^((?:s\d+)+)\((.*)\)$")


def _collapses(surj) -> set[int]:
    return {i for i in range(len(surj) - 1) if surj[i] == surj[i + 1]}


def _factor(surj, rho) -> tuple[int, ...]:
    """The ``tau`` with ``surj = tau . rho``, for ``rho`` collapsing a subset of ``surj``'s collapses."""
    out = [0] * (max(rho) + 1)
    for i, r in enumerate(rho):
        out[r] = surj[i]
    return tuple(out)


def _collapse_map(m: int, J: set[int]) -> tuple[int, ...]:
    return word_to_surjection(sorted(J, reverse=True), m - len(J))


# -- product ----------------------------------------------------------------------


def product_ref(A: StratifiedComplex, B: StratifiedComplex, a: SimplexRef, b: SimplexRef) -> SimplexRef:
    """The simplex ``(a, b)`` of ``product(A, B)`` in normal form."""
    sa, sb = A.surjection(a), B.surjection(b)
    if len(sa) != len(sb):
        raise ValueError("components of a product simplex must have equal dimension")
    J = _collapses(sa) & _collapses(sb)
    if not J:
        return SimplexRef(f"({a},{b})")
    rho = _collapse_map(len(sa) - 1, J)
    a2 = A.ref_from_surjection(a.target, _factor(sa, rho))
    b2 = B.ref_from_surjection(b.target, _factor(sb, rho))
    return SimplexRef(f"({a2},{b2})", surjection_to_word(rho))


def product(A: StratifiedComplex, B: StratifiedComplex, bound: int | None = None) -> StratifiedComplex:
    """The cartesian product; a simplex is thin iff both projections are thin.

    Identifiers are ``"(a,b)"`` for the component simplices ``a`` and ``b``.
    """
    top = min(A.dimension_bound, B.dimension_bound) if bound is None else bound
    cells: list[list[str]] = [[] for _ in range(top + 1)]
    faces, marking = {}, []
    for n in range(top + 1):
        for p in range(min(n, len(A.cells) - 1) + 1):
            for q in range(min(n, len(B.cells) - 1) + 1):
                if p + q < n:
                    continue
                for sa in surjections(n, p):
                    ca = _collapses(sa)
                    for sb in surjections(n, q):
                        if ca & _collapses(sb):
                            continue
                        for x in A.cells[p]:
                            a = A.ref_from_surjection(x, sa)
                            for y in B.cells[q]:
                                b = B.ref_from_surjection(y, sb)
                                ident = f"({a},{b})"
                                cells[n].append(ident)
                                if n:
                                    faces[ident] = [product_ref(A, B, A.face(a, i), B.face(b, i))
                                                    for i in range(n + 1)]
                                    if A.is_thin(a) and B.is_thin(b):
                                        marking.append(ident)
    return make_complex(cells, faces, marking, top, f"{A.name}x{B.name}")


def projections(A: StratifiedComplex, B: StratifiedComplex, P: StratifiedComplex) -> tuple[ComplexMap, ComplexMap]:
    """The two projections out of ``P = product(A, B)``, recovered from identifiers."""
    pa, pb = {}, {}
    for x in P.ids:
        a, b = _split_pair(x)
        pa[x], pb[x] = parse_ref(a), parse_ref(b)
    return ComplexMap(P, A, pa), ComplexMap(P, B, pb)


def _split_pair(ident: str) -> tuple[str, str]:
    body = ident[1:-1]
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i], body[i + 1:]
    raise ValueError(f"{ident!r} is not a pair identifier")


def parse_ref(text: str) -> SimplexRef:
    """Inverse of ``str`` on :class:`SimplexRef`."""
    m = _DEGENERATE.match(text)
    if not m:
        return SimplexRef(text)
    word = tuple(int(w) for w in m.group(1).split("s")[1:])
    return SimplexRef(m.group(2), word)


# -- join ---------------------------------------------------------------------------


def join(A: StratifiedComplex, B: StratifiedComplex, bound: int | None = None) -> StratifiedComplex:
    """The stratified join: ``(a, b)`` is thin iff ``a`` or ``b`` is thin.

    Identifiers are ``"(a*b)"``, with an empty side written as nothing.
    """
    top = A.dimension_bound + B.dimension_bound + 1
    if bound is not None:
        top = min(top, bound)

    def jid(a: str, b: str) -> str:
        return f"({a}*{b})"

    def lift(ref: SimplexRef | None, shift: int) -> tuple[str, tuple[int, ...]]:
        if ref is None:
            return "", ()
        return ref.target, tuple(j + shift for j in ref.degeneracies)

    def jref(a: SimplexRef | None, b: SimplexRef | None, k: int) -> SimplexRef:
        ta, wa = lift(a, 0)
        tb, wb = lift(b, k + 1)
        return SimplexRef(jid(ta, tb), wb + wa)

    cells: list[list[str]] = [[] for _ in range(top + 1)]
    faces, marking = {}, []
    a_cells = [(None, -1)] + [(x, d) for d, xs in enumerate(A.cells) for x in xs]
    b_cells = [(None, -1)] + [(y, d) for d, ys in enumerate(B.cells) for y in ys]
    for x, k in a_cells:
        for y, l in b_cells:
            n = k + l + 1
            if n < 0 or n > top:
                continue
            ident = jid(x or "", y or "")
            cells[n].append(ident)
            if (x and x in A.marking) or (y and y in B.marking):
                marking.append(ident)
            if n == 0:
                continue
            fs = []
            for i in range(n + 1):
                if i <= k:
                    a = None if k == 0 else A.face(SimplexRef(x), i)
                    # a face of the A-part lowers its dimension only
                    fs.append(jref(a, SimplexRef(y) if y else None, k - 1))
                else:
                    b = None if l == 0 else B.face(SimplexRef(y), i - k - 1)
                    fs.append(jref(SimplexRef(x) if x else None, b, k))
            faces[ident] = fs
    return make_complex(cells, faces, marking, top, f"{A.name}*{B.name}")


# -- slices -------------------------------------------------------------------------


def slice(A: StratifiedComplex, sigma: SimplexRef | str, side: str = "right") -> StratifiedComplex:
    """The slice ``A/sigma`` (``side="right"``) or ``sigma\\A`` (``side="left"``).

    A ``k``-simplex of ``A/sigma`` is a ``(k+n+1)``-simplex of ``A`` whose last
    ``n+1`` vertices span ``sigma``; it is named by that simplex.  It is thin
    when every face of ``A`` spanned by the slice vertices together with any
    subset of ``sigma``'s vertices is thin, which is exactly what a map from
    ``Delta[k]_t * Delta[n]`` requires.
    """
    if isinstance(sigma, str):
        sigma = SimplexRef(sigma)
    if sigma.target not in A.dims:
        raise ValueError(f"{sigma} is not a simplex of the complex")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    n = A.ref_dim(sigma)
    top = A.dimension_bound - n - 1
    if top < 0:
        raise ValueError("the complex is not known above the dimension of sigma")
    right = side == "right"

    def parts(k: int) -> tuple[list[int], list[int]]:
        if right:
            return list(range(k + 1)), list(range(k + 1, k + n + 2))
        return list(range(n + 1, n + k + 2)), list(range(n + 1))

    def normal(rho: SimplexRef, k: int) -> SimplexRef:
        """Split ``rho`` as a slice degeneracy of a slice-nondegenerate simplex."""
        own, _ = parts(k)
        lo = own[0]
        J = {j for j in _collapses(A.surjection(rho)) if lo <= j < lo + k}
        if not J:
            return SimplexRef(str(rho))
        keep = [v for v in range(A.ref_dim(rho) + 1) if v - 1 not in J]
        base = A.act(rho, keep)
        return SimplexRef(str(base), tuple(sorted((j - lo for j in J), reverse=True)))

    cells: list[list[str]] = [[] for _ in range(top + 1)]
    faces, marking = {}, []
    for k in range(top + 1):
        own, base = parts(k)
        lo = own[0]
        for rho in A.simplices(k + n + 1):
            if A.restrict(rho, base) != sigma:
                continue
            if any(lo <= j < lo + k for j in _collapses(A.surjection(rho))):
                continue
            ident = str(rho)
            cells[k].append(ident)
            if k == 0:
                continue
            faces[ident] = [normal(A.face(rho, own[i]), k - 1) for i in range(k + 1)]
            if all(A.is_thin(A.restrict(rho, sorted(own + [base[v] for v in ys])))
                   for size in range(n + 2) for ys in combinations(range(n + 1), size)):
                marking.append(ident)
    tag = f"{A.name}/{sigma}" if right else f"{sigma}\\{A.name}"
    return make_complex(cells, faces, marking, top, tag)


# -- trivialization and core ---------------------------------------------------------


def trivialize(X: StratifiedComplex, n: int) -> StratifiedComplex:
    """Mark every simplex above dimension ``n``."""
    extra = [x for d, xs in enumerate(X.cells) if d > n for x in xs]
    return with_marking(X, X.marking | set(extra), f"tr{n}({X.name})")


def core(X: StratifiedComplex, n: int) -> StratifiedComplex:
    """The largest subcomplex whose simplices above dimension ``n`` are all thin."""
    ok: dict[str, bool] = {}
    for d, xs in enumerate(X.cells):
        for x in xs:
            ok[x] = (d <= n or x in X.marking) and all(ok[f.target] for f in X.faces.get(x, ()))
    keep = [x for x in X.ids if ok[x]]
    out = subcomplex(X, keep)
    return with_marking(out, out.marking, f"core{n}({X.name})")


# -- cell decomposition of a monomorphism ------------------------------------------------


@dataclass(frozen=True)
class Step:
    """One generator pushout: attach along a boundary, or mark along a thin top."""

    kind: str  # "attach" or "mark"
    simplex: str
    dim: int

    def __str__(self) -> str:
        return f"{self.kind} {self.dim}-simplex {self.simplex}"


def mono_decomposition(inc: Inclusion) -> list[Step]:
    """Boundary attachments and markings that build ``inc`` from its domain.

    Dimension by dimension, new simplices are attached first (identifier
    order) and then the simplices that become thin are marked.
    """
    bad = inc.map.violations()
    if bad:
        raise ValueError(f"not a stratified map: {bad[0]}")
    V = inc.codomain
    image = {inc.image(x) for x in inc.domain.ids}
    image_marked = {inc.image(x) for x in inc.domain.marking}
    steps: list[Step] = []
    for d, xs in enumerate(V.cells):
        fresh = [x for x in xs if x not in image]
        steps += [Step("attach", x, d) for x in fresh]
        steps += [Step("mark", x, d) for x in xs if x in V.marking and x not in image_marked]
    rebuilt = recompose(inc, steps)
    if rebuilt != V:
        raise RuntimeError("decomposition does not recompose to the inclusion")
    return steps


def recompose(inc: Inclusion, steps: list[Step]) -> StratifiedComplex:
    """Replay ``steps`` starting from the image of the domain, checking each one."""
    V = inc.codomain
    present = {inc.image(x) for x in inc.domain.ids}
    marked = {inc.image(x) for x in inc.domain.marking}
    for st in steps:
        if st.kind == "attach":
            if st.simplex in present:
                raise ValueError(f"{st.simplex} attached twice")
            missing = [f for f in V.faces.get(st.simplex, ()) if f.target not in present]
            if missing:
                raise ValueError(f"{st.simplex} attached before its boundary")
            present.add(st.simplex)
        elif st.kind == "mark":
            if st.simplex not in present or st.simplex in marked:
                raise ValueError(f"cannot mark {st.simplex}")
            marked.add(st.simplex)
        else:
            raise ValueError(f"unknown step kind {st.kind!r}")
    return subcomplex(V, present, marking=marked)


# -- isomorphism of small complexes ----------------------------------------------------------


def find_isomorphism(X: StratifiedComplex, Y: StratifiedComplex, budget=None) -> ComplexMap | None:
    """A bijection on nondegenerate simplices preserving faces and marking both ways."""
    from .lifting import iter_maps

    if [len(c) for c in X.cells[: X.top_dimension + 1]] != [len(c) for c in Y.cells[: Y.top_dimension + 1]]:
        return None
    if len(X.marking) != len(Y.marking):
        return None
    for m in iter_maps(X, Y, budget=budget):
        if m.is_injective and all((x in X.marking) == (m.assignment[x].target in Y.marking) for x in X.ids):
            return m
    return None


def sorted_ids(ids) -> list[str]:
    return sorted(ids, key=id_key)
