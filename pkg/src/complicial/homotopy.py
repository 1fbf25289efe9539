"""Homotopies of stratified maps and the internal hom, at small sizes.

Both are computed by enumerating maps out of products with standard
simplices, so they are only practical for very small complexes; all
searches respect a node budget.
"""

from __future__ import annotations

from .budget import ensure
from .constructions import parse_ref, product, product_ref, _split_pair
from .lifting import LiftingProblem, enumerate_extensions, iter_maps
from .simplicial import (
    ComplexMap,
    Inclusion,
    SimplexRef,
    StratifiedComplex,
    face_name,
    make_complex,
    subcomplex,
)
from . import shapes


def cylinder(X: StratifiedComplex) -> tuple[StratifiedComplex, Inclusion]:
    """``X x Delta[1]#`` with the inclusion of its two ends."""
    P = product(X, shapes.sharp_simplex(1), bound=X.top_dimension + 1)
    ends = [x for x in P.ids if parse_ref(_split_pair(x)[1]).target in ("0", "1")]
    return P, Inclusion.of_subcomplex(subcomplex(P, ends), P)


def homotopy(f: ComplexMap, g: ComplexMap, budget=None) -> ComplexMap | None:
    """A map ``X x Delta[1]# -> A`` restricting to ``f`` and ``g`` at the ends, if one exists."""
    if f.domain != g.domain or f.codomain != g.codomain:
        raise ValueError("maps must share domain and codomain")
    X, A = f.domain, f.codomain
    P, inc = cylinder(X)
    if P.top_dimension > A.dimension_bound:
        raise ValueError(f"the target must be known up to dimension {P.top_dimension}")
    attempt = {}
    for x in inc.domain.ids:
        a, b = _split_pair(x)
        end = f if parse_ref(b).target == "0" else g
        attempt[x] = end(parse_ref(a))
    found = enumerate_extensions(LiftingProblem(inc, ComplexMap(inc.domain, A, attempt)), limit=1, budget=budget)
    return found[0] if found else None


def homotopic_maps(f: ComplexMap, g: ComplexMap, budget=None) -> bool:
    return homotopy(f, g, budget) is not None


def _vertex_seq(D: StratifiedComplex, ref: SimplexRef) -> tuple[int, ...]:
    return tuple(int(v) for v in D.vertices_of(ref))


def _standard_ref(vertices) -> SimplexRef:
    """The simplex of a standard simplex with the given (weakly increasing) vertices."""
    distinct = sorted(set(vertices))
    surj = tuple(distinct.index(v) for v in vertices)
    return StratifiedComplex.ref_from_surjection(face_name(distinct), surj)


def hom_complex(X: StratifiedComplex, A: StratifiedComplex, bound: int, budget=None) -> StratifiedComplex:
    """``hom(X, A)`` up to dimension ``bound``.

    An ``n``-simplex is a map ``X x Delta[n] -> A``; it is thin when it is
    also a map out of ``X x Delta[n]_t``.  Simplices are named ``h<n>.<i>``
    in search order.
    """
    budget = ensure(budget)
    need = X.top_dimension + bound
    if need > A.dimension_bound:
        raise ValueError(f"the target must be known up to dimension {need}")
    products: dict[int, StratifiedComplex] = {}

    def prod(n: int) -> StratifiedComplex:
        if n not in products:
            products[n] = product(X, shapes.standard(n), bound=X.top_dimension + n)
        return products[n]

    def precompose(m: ComplexMap, n: int, theta) -> dict:
        k = len(theta) - 1
        D = shapes.standard(n)
        Pk = prod(k)
        src = shapes.standard(k)
        out = {}
        for x in Pk.ids:
            a, b = _split_pair(x)
            seq = tuple(theta[v] for v in _vertex_seq(src, parse_ref(b)))
            out[x] = m(product_ref(X, D, parse_ref(a), _standard_ref(seq)))
        return out

    def key(assignment: dict) -> frozenset:
        return frozenset(assignment.items())

    index: dict[int, dict[frozenset, str]] = {}
    maps: dict[int, list[tuple[str, ComplexMap]]] = {}
    cells: list[list[str]] = [[] for _ in range(bound + 1)]
    faces, marking = {}, []
    for n in range(bound + 1):
        P = prod(n)
        Pt = product(X, shapes.thin_top(n), bound=X.top_dimension + n) if n else P
        index[n], maps[n] = {}, []
        for m in iter_maps(P, A, budget=budget):
            if n and _collapses(m, n, precompose, prod, A):
                continue
            ident = f"h{n}.{len(maps[n])}"
            index[n][key(m.assignment)] = ident
            maps[n].append((ident, m))
            cells[n].append(ident)
            if n and all(A.is_thin(m(x)) for x in Pt.marking):
                marking.append(ident)
            if n:
                fs = []
                for i in range(n + 1):
                    z = ComplexMap(prod(n - 1), A, precompose(m, n, [v for v in range(n + 1) if v != i]))
                    fs.append(_normalize(z, n - 1, index, precompose, prod, A))
                faces[ident] = fs
    return make_complex(cells, faces, marking, bound, f"hom({X.name},{A.name})")


def _collapses(z: ComplexMap, n: int, precompose, prod, A) -> list[int]:
    """The ``j`` with ``z = s_j d_j z``."""
    out = []
    for j in range(n):
        face = precompose(z, n, [v for v in range(n + 1) if v != j])
        back = precompose(ComplexMap(prod(n - 1), A, face), n - 1, [v if v <= j else v - 1 for v in range(n + 1)])
        if back == dict(z.assignment):
            out.append(j)
    return out


def _normalize(z: ComplexMap, n: int, index, precompose, prod, A) -> SimplexRef:
    """The nondegenerate hom simplex and degeneracy word representing ``z``."""
    J = _collapses(z, n, precompose, prod, A)
    keep = [v for v in range(n + 1) if v - 1 not in J]
    base = precompose(z, n, keep) if J else dict(z.assignment)
    return SimplexRef(index[len(keep) - 1][frozenset(base.items())], tuple(sorted(J, reverse=True)))
