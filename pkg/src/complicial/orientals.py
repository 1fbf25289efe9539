"""Orientals via the parity calculus of faces of a simplex.

A face of ``Delta[n]`` is an ascending tuple of vertices.  Deleting the
vertex in an odd position gives an odd face, deleting one in an even
position an even face; odd faces make up the source and even faces the
target.  A cell is a pair ``(M, P)`` of well-formed face sets that are both
moved from ``M`` to ``P``.

Two independent constructions of the cells of an oriental are provided: the
closure of the atoms under sources, targets and composition, and a direct
search for all pairs satisfying the cell condition.  They are expected to
agree; the test suite compares them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .budget import ensure
from .omega import OmegaCat, OmegaFunctor, from_tables
from .simplicial import MonotoneMap

Face = tuple[int, ...]
FaceSet = frozenset

MAX_ORIENTAL = 4


def faces_of(n: int, k: int) -> list[Face]:
    return list(combinations(range(n + 1), k + 1))


def dim(a: Face) -> int:
    return len(a) - 1


def layer(S, k: int) -> frozenset:
    """``S_k``: the ``k``-dimensional elements."""
    return frozenset(a for a in S if dim(a) == k)


def upto(S, k: int) -> frozenset:
    """``|S|_k``: the elements of dimension at most ``k``."""
    return frozenset(a for a in S if dim(a) <= k)


def _delete(a: Face, parity: int) -> set[Face]:
    if len(a) < 2:
        return set()
    return {a[:i] + a[i + 1:] for i in range(parity, len(a), 2)}


def odd_faces(S) -> frozenset:
    """``S^-``: the union of the faces deleting an odd-position vertex."""
    return frozenset(f for a in S for f in _delete(a, 1))


def even_faces(S) -> frozenset:
    """``S^+``: the union of the faces deleting an even-position vertex."""
    return frozenset(f for a in S for f in _delete(a, 0))


def well_formed_violation(S) -> tuple | None:
    """``None`` if ``S`` is well formed, else the offending pair."""
    verts = sorted(a for a in S if len(a) == 1)
    if len(verts) > 1:
        return verts[0], verts[1]
    seen_src: dict[Face, Face] = {}
    seen_tgt: dict[Face, Face] = {}
    for a in sorted(S):
        for f in _delete(a, 1):
            if f in seen_src:
                return seen_src[f], a
            seen_src[f] = a
        for f in _delete(a, 0):
            if f in seen_tgt:
                return seen_tgt[f], a
            seen_tgt[f] = a
    return None


def is_well_formed(S) -> bool:
    return well_formed_violation(S) is None


def moves(S, M, P) -> bool:
    """Whether ``S`` moves ``M`` to ``P``."""
    S, M, P = frozenset(S), frozenset(M), frozenset(P)
    lo, hi = odd_faces(S), even_faces(S)
    return M == (P | lo) - hi and P == (M | hi) - lo


def _fmt(S) -> str:
    return "{" + ",".join("".join(map(str, a)) if max(a) < 10 else ".".join(map(str, a))
                          for a in sorted(S, key=lambda a: (-len(a), a))) + "}"


@dataclass(frozen=True)
class CellMP:
    """A cell of an oriental, as a pair of face sets."""

    M: frozenset
    P: frozenset

    @classmethod
    def of(cls, M, P) -> "CellMP":
        return cls(frozenset(tuple(a) for a in M), frozenset(tuple(a) for a in P))

    @cached_property
    def dimension(self) -> int:
        return max(dim(a) for a in self.M | self.P)

    def violations(self) -> list[str]:
        out = []
        if not self.M or not self.P:
            return ["empty component"]
        for name, S in (("M", self.M), ("P", self.P)):
            bad = well_formed_violation(S)
            if bad:
                out.append(f"{name} is not well formed: {bad[0]} and {bad[1]}")
        if not moves(self.M, self.M, self.P):
            out.append("M does not move M to P")
        if not moves(self.P, self.M, self.P):
            out.append("P does not move M to P")
        m = self.dimension
        if layer(self.M, m) != layer(self.P, m):
            out.append("top layers of M and P differ")
        return out

    def faces_list(self) -> tuple[list[Face], list[Face]]:
        key = lambda a: (dim(a), a)  # noqa: E731
        return sorted(self.M, key=key), sorted(self.P, key=key)

    def __str__(self) -> str:
        return f"({_fmt(self.M)},{_fmt(self.P)})"

    def __repr__(self) -> str:
        return f"CellMP{self}"


def atom(a) -> CellMP:
    """The cell generated by the face ``a``.

    Lower layers are iterated odd (resp. even) boundaries with the opposite
    boundary removed.
    """
    a = tuple(a)
    M, P = {a}, {a}
    cur_m, cur_p = frozenset([a]), frozenset([a])
    for _ in range(dim(a)):
        cur_m = odd_faces(cur_m) - even_faces(cur_m)
        cur_p = even_faces(cur_p) - odd_faces(cur_p)
        M |= cur_m
        P |= cur_p
    return CellMP(frozenset(M), frozenset(P))


def source(c: CellMP, k: int) -> CellMP:
    if k < 0:
        raise ValueError("k must be non-negative")
    return CellMP(upto(c.M, k), layer(c.M, k) | upto(c.P, k - 1))


def target(c: CellMP, k: int) -> CellMP:
    if k < 0:
        raise ValueError("k must be non-negative")
    return CellMP(upto(c.M, k - 1) | layer(c.P, k), upto(c.P, k))


def compose(c: CellMP, d: CellMP, k: int) -> CellMP:
    """``c *_k d``: ``c`` after ``d``, defined when ``s_k(c) = t_k(d)``."""
    if source(c, k) != target(d, k):
        raise ValueError(f"cells are not {k}-composable")
    M, P = d.M, d.P
    N, Q = c.M, c.P
    return CellMP(M | (N - layer(N, k)), (P - layer(P, k)) | Q)


# -- the oriental as an omega-category -------------------------------------------------


@dataclass(frozen=True)
class Derivation:
    """How a cell arises: an atom, or ``left *_k right``."""

    kind: str  # "atom" or "compose"
    face: Face = ()
    k: int = -1
    left: CellMP | None = None
    right: CellMP | None = None


@dataclass(frozen=True, eq=False)
class Oriental:
    n: int
    category: OmegaCat
    derivations: dict

    @property
    def cells(self) -> tuple:
        return self.category.elements

    def cells_of_dim(self, k: int) -> list[CellMP]:
        return sorted((c for c in self.cells if c.dimension == k), key=str)

    @property
    def top(self) -> CellMP:
        return atom(tuple(range(self.n + 1)))

    def evaluate(self, cell: CellMP, on_atom, comp):
        """Evaluate ``cell`` through its derivation.

        ``on_atom(face)`` gives the value of an atom and ``comp(k, x, y)`` the
        value of ``x *_k y``.
        """
        memo: dict = {}

        def go(c: CellMP):
            if c in memo:
                return memo[c]
            d = self.derivations[c]
            if d.kind == "atom":
                v = on_atom(d.face)
            else:
                v = comp(d.k, go(d.left), go(d.right))
            memo[c] = v
            return v

        return go(cell)


def _close(n: int, budget) -> dict[CellMP, Derivation]:
    """Cells reachable from the atoms, with a derivation for each."""
    der: dict[CellMP, Derivation] = {}
    for k in range(n + 1):
        for a in faces_of(n, k):
            der[atom(a)] = Derivation("atom", a)
    # dimension j cells use compositions along k < j only; boundaries of new
    # cells are lower-dimensional and therefore already present
    for j in range(1, n + 1):
        changed = True
        while changed:
            changed = False
            cells = sorted((c for c in der if c.dimension <= j), key=lambda c: (c.dimension, str(c)))
            for k in range(j):
                by_src: dict[CellMP, list[CellMP]] = {}
                for c in cells:
                    by_src.setdefault(source(c, k), []).append(c)
                for d in cells:
                    for c in by_src.get(target(d, k), []):
                        if max(c.dimension, d.dimension) != j:
                            continue
                        budget.spend()
                        e = compose(c, d, k)
                        if e not in der:
                            der[e] = Derivation("compose", k=k, left=c, right=d)
                            changed = True
    return der


def build_oriental(n: int, budget=None, max_n: int = MAX_ORIENTAL) -> Oriental:
    """The oriental on ``Delta[n]`` as a finite ``n``-category, by closure of its atoms."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > max_n:
        raise ValueError(f"orientals above dimension {max_n} are disabled (raise max_n)")
    budget = ensure(budget)
    der = _close(n, budget)
    cells = sorted(der, key=lambda c: (c.dimension, str(c)))
    sources = [{c: source(c, k) for c in cells} for k in range(n)]
    targets = [{c: target(c, k) for c in cells} for k in range(n)]
    comps = []
    for k in range(n):
        table = {}
        by_tgt: dict[CellMP, list[CellMP]] = {}
        for d in cells:
            by_tgt.setdefault(targets[k][d], []).append(d)
        for c in cells:
            for d in by_tgt.get(sources[k][c], []):
                budget.spend()
                e = compose(c, d, k)
                if e not in der:
                    raise RuntimeError(f"composite {e} escaped the closure")
                table[(c, d)] = e
        comps.append(table)
    C = from_tables(cells, sources, targets, comps, name=f"O{n}", complete_identities=False)
    return Oriental(n, C, der)


def enumerate_cells_search(n: int, budget=None) -> set[CellMP]:
    """All pairs ``(M, P)`` satisfying the cell condition, by backtracking.

    The top layer is chosen first; each lower layer of ``M`` must contain the
    odd boundary of the layer above minus its even boundary and avoid that
    even boundary, and the matching layer of ``P`` is then forced.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    budget = ensure(budget)
    out: set[CellMP] = set()

    def well_formed_layer(S) -> bool:
        return is_well_formed(S)

    def subsets_between(lo: frozenset, pool: list[Face]):
        free = [a for a in pool if a not in lo]
        for r in range(len(free) + 1):
            for extra in combinations(free, r):
                yield lo | frozenset(extra)

    def descend(j: int, Mj1: frozenset, Pj1: frozenset, M: frozenset, P: frozenset):
        if j < 0:
            c = CellMP(M, P)
            if not c.violations():
                out.add(c)
            return
        m_lo, m_hi = odd_faces(Mj1), even_faces(Mj1)
        p_lo, p_hi = odd_faces(Pj1), even_faces(Pj1)
        must = m_lo - m_hi
        pool = [a for a in faces_of(n, j) if a not in m_hi]
        for Mj in subsets_between(must, pool):
            budget.spend()
            if not well_formed_layer(Mj):
                continue
            Pj = (Mj | m_hi) - m_lo
            if not well_formed_layer(Pj):
                continue
            if Mj != (Pj | m_lo) - m_hi:
                continue
            if Mj != (Pj | p_lo) - p_hi or Pj != (Mj | p_hi) - p_lo:
                continue
            descend(j - 1, Mj, Pj, M | Mj, P | Pj)

    for m in range(n + 1):
        for r in range(1, len(faces_of(n, m)) + 1):
            for top in combinations(faces_of(n, m), r):
                budget.spend()
                X = frozenset(top)
                if not is_well_formed(X):
                    continue
                if m == 0:
                    if len(X) == 1:
                        out.add(CellMP(X, X))
                    continue
                descend(m - 1, X, X, X, X)
    return out


def induced_functor(phi: MonotoneMap, source_oriental: Oriental | None = None,
                    target_oriental: Oriental | None = None) -> OmegaFunctor:
    """The functor between orientals relabelling faces along an injective ``phi``."""
    if not phi.is_injective:
        raise ValueError("only injective monotone maps act on orientals")
    On = source_oriental or build_oriental(phi.source)
    Om = target_oriental or build_oriental(phi.target)

    def relabel(S) -> frozenset:
        return frozenset(tuple(phi(v) for v in a) for a in S)

    mapping = {c: CellMP(relabel(c.M), relabel(c.P)) for c in On.cells}
    return OmegaFunctor(On.category, Om.category, mapping)
