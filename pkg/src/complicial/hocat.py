"""The homotopy category of a quasi-category.

Objects are vertices and morphisms are edges up to the relation witnessed
by 2-simplices with one degenerate edge.  The relation comes in four
variants (which edge is degenerate, and in which order the two parallel
edges appear); each is closed to an equivalence relation, and whether the
closure was actually needed is reported.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lifting import is_quasicategory
from .omega import OmegaCat, category
from .simplicial import SimplexRef, StratifiedComplex

# (position of the degenerate edge, position of f, position of g) among (d0, d1, d2)
VARIANTS = {
    "right-fg": (0, 2, 1),
    "right-gf": (0, 1, 2),
    "left-fg": (2, 0, 1),
    "left-gf": (2, 1, 0),
}


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller representative for determinism
            if (str(rb), rb.degeneracies) < (str(ra), ra.degeneracies):
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass(frozen=True, eq=False)
class HomotopyCategory:
    category: OmegaCat
    classes: dict  # edge ref -> morphism name
    closure_needed: bool
    variant: str


def homotopy_relation(X: StratifiedComplex, variant: str = "right-fg") -> set[tuple[SimplexRef, SimplexRef]]:
    """Pairs ``(f, g)`` related by a 2-simplex of the given shape."""
    deg, pf, pg = VARIANTS[variant]
    T = X.table
    out = set()
    for c in T.by_dim[2]:
        fs = T.faces[c]
        if T.refs[fs[deg]].is_degenerate:
            out.add((T.refs[fs[pf]], T.refs[fs[pg]]))
    return out


def homotopy_category(X: StratifiedComplex, variant: str = "right-fg", bound: int = 3,
                      budget=None) -> HomotopyCategory:
    """Objects, edge classes and composition by inner 2-horn fillers."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown relation variant {variant!r}")
    report = is_quasicategory(X, bound, budget=budget)
    if not report.passed:
        raise ValueError("not a quasi-category: an inner horn has no filler")
    T = X.table
    edges = [T.refs[c] for c in T.by_dim[1]]
    rel = homotopy_relation(X, variant)
    uf = _UnionFind(edges)
    for f, g in rel:
        uf.union(f, g)
    classes = {e: uf.find(e) for e in edges}
    # the raw relation is already an equivalence relation iff it equals its closure
    closure = {(f, g) for f in edges for g in edges if classes[f] == classes[g]}
    closure_needed = closure != rel

    comp: dict[tuple, SimplexRef] = {}
    for c in T.by_dim[2]:
        d0, d1, d2 = (T.refs[i] for i in T.faces[c])
        key = (classes[d0], classes[d2])
        val = classes[d1]
        if comp.setdefault(key, val) != val:
            raise ValueError("composition is not well defined on homotopy classes")

    def ends(e: SimplexRef) -> tuple[str, str]:
        return X.act(e, (0,)).target, X.act(e, (1,)).target

    reps = sorted(set(classes.values()), key=lambda e: (str(e), e.degeneracies))
    name = {r: str(r) for r in reps}
    objects = [v for v in X.cells[0]]
    for v in objects:
        ident = classes[X.degenerate(SimplexRef(v), (0, 0))]
        name[ident] = v
    arrows = {name[r]: ends(r) for r in reps if name[r] not in objects}
    table = {}
    for (g, f), h in comp.items():
        ng, nf, nh = name[g], name[f], name[h]
        if ng in objects or nf in objects:
            if nh != (nf if ng in objects else ng):
                raise ValueError("identity classes are not units")
            continue
        table[(ng, nf)] = nh
    # every composable pair must have a composite
    for g in arrows:
        for f in arrows:
            if arrows[g][0] == arrows[f][1] and (g, f) not in table:
                raise ValueError(f"no filler composes {g} after {f}")
    for (g, f), h in table.items():
        for e in arrows:
            if arrows[e][1] == arrows[f][0]:
                lhs = _comp(table, objects, g, _comp(table, objects, f, e))
                rhs = _comp(table, objects, h, e)
                if lhs != rhs:
                    raise ValueError("composition of homotopy classes is not associative")
    C = category(objects, arrows, table, name=f"Ho({X.name})")
    return HomotopyCategory(C, {e: name[classes[e]] for e in edges}, closure_needed, variant)


def _comp(table, objects, g, f):
    if g in objects:
        return f
    if f in objects:
        return g
    return table[(g, f)]

