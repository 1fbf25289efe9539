"""Street nerves of finite strict omega-categories.

An ``n``-simplex is stored as its values on the atoms of the ``n``-th
oriental: one element of the category for every nonempty subset of
``[n]``.  By free generation this determines the whole functor.  The
simplices of dimension ``n`` are found by extending each ``(n-1)``-simplex
(viewed as the last face) with values on the subsets containing ``n``,
smallest first, subject to the source and target constraints obtained by
evaluating the boundary of each atom through the oriental.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .budget import ensure
from .lifting import CheckReport, LiftingProblem, Witness, enumerate_extensions, iter_maps
from .omega import (
    OmegaCat,
    OmegaFunctor,
    cells_by_boundary,
    cell_dimension,
    detect_equivalences_2,
    detect_isos_1,
    is_n_category,
    validate,
)
from .orientals import Oriental, build_oriental, source, target
from . import orientals as ori
from . import shapes
from .simplicial import SimplexRef, StratifiedComplex, make_complex

Subset = tuple[int, ...]
STRATIFICATIONS = ("identity", "saturated1", "saturated2", "sharp", "flat")


def subsets_of(n: int) -> list[Subset]:
    return [S for size in range(1, n + 2) for S in combinations(range(n + 1), size)]


@dataclass(frozen=True)
class NerveSimplex:
    """Values on the atoms of an oriental, keyed by vertex subsets."""

    arity: int
    values: tuple  # aligned with subsets_of(arity)

    def __getitem__(self, S: Subset):
        return self.values[_index(self.arity)[S]]

    def as_dict(self) -> dict:
        return dict(zip(subsets_of(self.arity), self.values))

    def face(self, i: int) -> "NerveSimplex":
        n = self.arity
        delta = [v if v < i else v + 1 for v in range(n)]
        return NerveSimplex(n - 1, tuple(self[tuple(delta[v] for v in S)] for S in subsets_of(n - 1)))

    def degeneracy(self, j: int) -> "NerveSimplex":
        sigma = [v if v <= j else v - 1 for v in range(self.arity + 2)]
        return NerveSimplex(self.arity + 1,
                            tuple(self[tuple(sorted(set(sigma[v] for v in S)))] for S in subsets_of(self.arity + 1)))

    def restrict(self, vertices) -> "NerveSimplex":
        vs = list(vertices)
        return NerveSimplex(len(vs) - 1, tuple(self[tuple(vs[v] for v in S)] for S in subsets_of(len(vs) - 1)))

    @property
    def top(self):
        return self.values[-1]


_INDEX: dict[int, dict[Subset, int]] = {}


def _index(n: int) -> dict[Subset, int]:
    if n not in _INDEX:
        _INDEX[n] = {S: i for i, S in enumerate(subsets_of(n))}
    return _INDEX[n]


def simplex_id(x: NerveSimplex) -> str:
    if x.arity == 0:
        return str(x.values[0])
    if x.arity == 1:
        return str(x.values[2])
    return "<" + "|".join(str(v) for S, v in zip(subsets_of(x.arity), x.values) if len(S) > 1) + ">"


def normal_form(x: NerveSimplex) -> tuple[NerveSimplex, tuple[int, ...]]:
    """``(base, word)`` with ``x = s_word(base)`` and ``base`` nondegenerate."""
    J = [j for j in range(x.arity) if x.face(j).degeneracy(j) == x]
    if not J:
        return x, ()
    keep = [v for v in range(x.arity + 1) if v - 1 not in J]
    return x.restrict(keep), tuple(sorted(J, reverse=True))


@dataclass(frozen=True, eq=False)
class Nerve:
    """A nerve together with the atom values of its nondegenerate simplices."""

    category: OmegaCat
    complex: StratifiedComplex
    simplices: dict  # id -> NerveSimplex
    all_simplices: dict  # dimension -> list of NerveSimplex, degenerate included
    stratification: str

    def ref(self, x: NerveSimplex) -> SimplexRef:
        base, word = normal_form(x)
        return SimplexRef(simplex_id(base), word)

    def simplex(self, ref: SimplexRef | str) -> NerveSimplex:
        if isinstance(ref, str):
            return self.simplices[ref]
        x = self.simplices[ref.target]
        for j in reversed(ref.degeneracies):
            x = x.degeneracy(j)
        return x


class _Evaluator:
    """Evaluates boundaries of atoms of an oriental on a partial assignment."""

    def __init__(self, C: OmegaCat, O: Oriental):
        self.C = C
        self.O = O
        self.bounds: dict[Subset, tuple] = {}
        for S in subsets_of(O.n):
            if len(S) > 1:
                a = ori.atom(S)
                k = len(S) - 1
                self.bounds[S] = (source(a, k - 1), target(a, k - 1))

    def value(self, cell, assignment: dict):
        return self.O.evaluate(cell, lambda f: assignment[f], lambda k, x, y: self.C.comp(k, x, y))


def _enumerate(C: OmegaCat, bound: int, budget) -> dict[int, list[NerveSimplex]]:
    out: dict[int, list[NerveSimplex]] = {0: [NerveSimplex(0, (v,)) for v in C.elements if cell_dimension(C, v) == 0]}
    cand = {k: cells_by_boundary(C, k) for k in range(bound + 1)}
    for n in range(1, bound + 1):
        O = build_oriental(n, budget=budget, max_n=max(n, ori.MAX_ORIENTAL))
        ev = _Evaluator(C, O)
        new = [S for S in subsets_of(n) if n in S]
        layer = []
        for base in out[n - 1]:
            assignment = {S: v for S, v in zip(subsets_of(n - 1), base.values)}

            def extend(i: int):
                if i == len(new):
                    layer.append(NerveSimplex(n, tuple(assignment[S] for S in subsets_of(n))))
                    return
                S = new[i]
                k = len(S) - 1
                if k == 0:
                    options = cand[0].get((), [])
                else:
                    s_cell, t_cell = ev.bounds[S]
                    try:
                        key = (ev.value(s_cell, assignment), ev.value(t_cell, assignment))
                    except ValueError:
                        return
                    options = cand[k].get(key, [])
                for v in options:
                    budget.spend()
                    assignment[S] = v
                    extend(i + 1)
                assignment.pop(S, None)

            extend(0)
        out[n] = layer
    return out


def _marking_rule(C: OmegaCat, stratification) -> Callable[[NerveSimplex], bool]:
    if callable(stratification):
        return lambda x: bool(stratification(C, x))
    if stratification == "identity":
        return lambda x: cell_dimension(C, x.top) < x.arity
    if stratification == "sharp":
        return lambda x: True
    if stratification == "flat":
        return lambda x: False
    if stratification == "saturated1":
        if not is_n_category(C, 1):
            raise ValueError("saturated1 needs a 1-category")
        isos = detect_isos_1(C)
        return lambda x: x.arity > 1 or x.top in isos
    if stratification == "saturated2":
        if not is_n_category(C, 2):
            raise ValueError("saturated2 needs a 2-category")
        cells2, equivs = detect_equivalences_2(C)
        return lambda x: x.arity > 2 or (x.top in equivs if x.arity == 1 else x.top in cells2)
    raise ValueError(f"unknown stratification {stratification!r}")


def default_bound(C: OmegaCat) -> int:
    return max((cell_dimension(C, x) for x in C.elements), default=0) + 2


def street_nerve(C: OmegaCat, bound: int | None = None, stratification="identity", budget=None,
                 check: bool = True) -> Nerve:
    """The nerve with its simplices; see :func:`nerve` for the complex alone."""
    budget = ensure(budget)
    if check:
        bad = validate(C)
        if bad:
            raise ValueError(f"not an omega-category: {bad[0]}")
    if bound is None:
        bound = default_bound(C)
    rule = _marking_rule(C, stratification)
    layers = _enumerate(C, bound, budget)
    cells: list[list[str]] = [[] for _ in range(bound + 1)]
    faces, marking, simplices = {}, [], {}
    for n, xs in layers.items():
        for x in xs:
            if normal_form(x)[1]:
                continue
            ident = simplex_id(x)
            simplices[ident] = x
            cells[n].append(ident)
            if n:
                fs = []
                for i in range(n + 1):
                    base, word = normal_form(x.face(i))
                    fs.append(SimplexRef(simplex_id(base), word))
                faces[ident] = fs
                if rule(x):
                    marking.append(ident)
    name = stratification if isinstance(stratification, str) else "custom"
    X = make_complex(cells, faces, marking, bound, f"N({C.name or 'C'})[{name}]")
    return Nerve(C, X, simplices, layers, name)


def nerve(C: OmegaCat, bound: int | None = None, stratification="identity", budget=None) -> StratifiedComplex:
    return street_nerve(C, bound, stratification, budget).complex


def simplex_functor(C: OmegaCat, x: NerveSimplex) -> OmegaFunctor:
    """The full functor from the oriental determined by the atom values of ``x``."""
    O = build_oriental(x.arity, max_n=max(x.arity, ori.MAX_ORIENTAL))
    values = x.as_dict()
    mapping = {c: O.evaluate(c, lambda f: values[f], lambda k, a, b: C.comp(k, a, b)) for c in O.cells}
    return OmegaFunctor(O.category, C, mapping)


def coskeletality_check(C: OmegaCat, n: int, bound: int, budget=None) -> CheckReport:
    """Every sphere ``dDelta[r] -> NC`` with ``n+1 < r <= bound`` has exactly one filler."""
    budget = ensure(budget)
    if not is_n_category(C, n):
        raise ValueError(f"not an {n}-category")
    X = nerve(C, bound, "flat", budget)
    problems = 0
    for r in range(n + 2, bound + 1):
        inc = shapes.boundary_inclusion(r)
        for sphere in iter_maps(inc.domain, X, budget=budget):
            problems += 1
            p = LiftingProblem(inc, sphere)
            exts = enumerate_extensions(p, limit=2, budget=budget)
            if len(exts) != 1:
                reason = "no-extension" if not exts else "non-unique"
                return CheckReport("coskeletal", "fail", bound, Witness(p, reason, tuple(exts)), problems)
    return CheckReport("coskeletal", "pass", bound, None, problems, {"n": n})
