"""Finite strict omega-categories in single-sorted form.

An :class:`OmegaCat` stores, for each level ``n`` below ``level_bound``, the
``n``-source and ``n``-target functions and the partial ``n``-composition.
Levels at or above the bound are discrete.  Composition follows the
one-category convention ``a * b`` defined when ``s(a) = t(b)``, so ``a * b``
means "``a`` after ``b``".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

Element = Hashable


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


def _key(x) -> str:
    return str(x)


@dataclass(frozen=True, eq=False)
class OmegaCat:
    elements: tuple
    level_bound: int
    source: tuple[Mapping, ...]
    target: tuple[Mapping, ...]
    compose: tuple[Mapping, ...]
    name: str = field(default="", compare=False)

    def s(self, n: int, x):
        return self.source[n][x] if n < self.level_bound else x

    def t(self, n: int, x):
        return self.target[n][x] if n < self.level_bound else x

    def composable(self, n: int, a, b) -> bool:
        return self.s(n, a) == self.t(n, b)

    def comp(self, n: int, a, b):
        """``a *_n b``; raises ``ValueError`` outside the composition domain."""
        if n >= self.level_bound:
            if a != b:
                raise ValueError(f"{a} and {b} are not {n}-composable")
            return a
        try:
            return self.compose[n][(a, b)]
        except KeyError:
            raise ValueError(f"{a} and {b} are not {n}-composable") from None

    @cached_property
    def dimension(self) -> dict:
        return {x: cell_dimension(self, x) for x in self.elements}

    def cells_of_dim(self, k: int) -> list:
        return [x for x in self.elements if self.dimension[x] == k]

    @cached_property
    def _signature(self):
        return (
            frozenset(self.elements),
            self.level_bound,
            tuple(frozenset(m.items()) for m in self.source),
            tuple(frozenset(m.items()) for m in self.target),
            tuple(frozenset(m.items()) for m in self.compose),
        )

    def __eq__(self, other):
        if not isinstance(other, OmegaCat):
            return NotImplemented
        return self._signature == other._signature

    def __hash__(self):
        return hash(self._signature)

    def __repr__(self):
        label = f"{self.name} " if self.name else ""
        return f"<OmegaCat {label}elements={len(self.elements)} levels={self.level_bound}>"


def cell_dimension(C: OmegaCat, x) -> int:
    for n in range(C.level_bound):
        if C.s(n, x) == x:
            return n
    return C.level_bound


def is_n_category(C: OmegaCat, n: int) -> bool:
    return all(cell_dimension(C, x) <= n for x in C.elements)


def from_tables(
    elements: Iterable,
    sources: Sequence[Mapping],
    targets: Sequence[Mapping],
    composites: Sequence[Mapping] | None = None,
    name: str = "",
    complete_identities: bool = True,
) -> OmegaCat:
    """Assemble an :class:`OmegaCat`, filling in unit-law composites if asked."""
    elems = tuple(sorted(set(elements), key=_key))
    bound = len(sources)
    if len(targets) != bound:
        raise ValueError("source and target tables disagree on the number of levels")
    comps = [dict(c) for c in (composites or [{}] * bound)]
    while len(comps) < bound:
        comps.append({})
    if complete_identities:
        for n in range(bound):
            s, t, c = sources[n], targets[n], comps[n]
            for a in elems:
                v = s[a]
                if t.get(v) == v:
                    c.setdefault((a, v), a)
                u = t[a]
                if s.get(u) == u:
                    c.setdefault((u, a), a)
    return OmegaCat(elems, bound, tuple(dict(s) for s in sources), tuple(dict(t) for t in targets),
                    tuple(comps), name)


def discrete(elements: Iterable, name: str = "") -> OmegaCat:
    return from_tables(elements, [], [], [], name)


def category(
    objects: Iterable[str],
    arrows: Mapping[str, tuple[str, str]],
    composition: Mapping[tuple[str, str], str] | None = None,
    name: str = "",
) -> OmegaCat:
    """A 1-category; objects double as their identity arrows.

    ``composition[(g, f)]`` is ``g`` after ``f`` for non-identity arrows.
    """
    objects = list(objects)
    s = {o: o for o in objects}
    t = {o: o for o in objects}
    for a, (x, y) in arrows.items():
        s[a], t[a] = x, y
    return from_tables(objects + list(arrows), [s], [t], [dict(composition or {})], name)


def free_category(objects: Iterable[str], arrows: Mapping[str, tuple[str, str]], name: str = "") -> OmegaCat:
    """The free category on a finite acyclic graph; composites are named ``"g.f"``."""
    objects = list(objects)
    paths: dict[str, tuple[str, str, tuple[str, ...]]] = {
        a: (x, y, (a,)) for a, (x, y) in arrows.items()
    }
    frontier = dict(paths)
    while frontier:
        new = {}
        for p, (x, y, word) in frontier.items():
            for a, (u, v) in arrows.items():
                if u == y:
                    w = (a,) + word
                    new[".".join(w)] = (x, v, w)
        if len(paths) + len(new) > 10_000:
            raise ValueError("graph is not acyclic (or too large)")
        paths.update(new)
        frontier = new
    by_word = {w: p for p, (_, _, w) in paths.items()}
    comp = {}
    for g, (_, _, wg) in paths.items():
        for f, (_, _, wf) in paths.items():
            if paths[g][0] == paths[f][1]:
                comp[(g, f)] = by_word[wg + wf]
    return category(objects, {p: (x, y) for p, (x, y, _) in paths.items()}, comp, name)


# -- validation ---------------------------------------------------------------------


def validate(C: OmegaCat) -> list[Violation]:
    """Every failed axiom instance, checked exhaustively."""
    out: list[Violation] = []
    E = set(C.elements)
    for n in range(C.level_bound):
        out += _validate_level(C, n, E)
    if out:
        return out
    for n in range(C.level_bound):
        for m in range(n):
            out += _validate_pair(C, m, n)
    return out


def _validate_level(C: OmegaCat, n: int, E: set) -> list[Violation]:
    out = []
    s, t, c = C.source[n], C.target[n], C.compose[n]
    for x in C.elements:
        if x not in s or x not in t:
            out.append(Violation("source-target", f"level {n}: {x} lacks a source or target"))
            continue
        if s[x] not in E or t[x] not in E:
            out.append(Violation("source-target", f"level {n}: boundary of {x} is not an element"))
            continue
        sx, tx = s[x], t[x]
        if not (s[sx] == sx and t[sx] == sx and t[tx] == tx and s[tx] == tx):
            out.append(Violation("source-target", f"level {n}: boundaries of {x} are not fixed points"))
    if out:
        return out
    by_target: dict = {}
    for b in C.elements:
        by_target.setdefault(t[b], []).append(b)
    expected = {(a, b) for a in C.elements for b in by_target.get(s[a], [])}
    for pair in sorted(set(c) - expected, key=_key):
        out.append(Violation("composition-domain", f"level {n}: {pair} composed but not composable"))
    for pair in sorted(expected - set(c), key=_key):
        out.append(Violation("composition-domain", f"level {n}: composite of {pair} missing"))
    for (a, b), ab in c.items():
        if ab not in E:
            out.append(Violation("composition-domain", f"level {n}: {a}*{b} = {ab} is not an element"))
    if out:
        return out
    for (a, b), ab in sorted(c.items(), key=_key):
        if s[ab] != s[b] or t[ab] != t[a]:
            out.append(Violation("composite-boundary", f"level {n}: {a}*{b}"))
    for a in C.elements:
        v, u = s[a], t[a]
        if t[v] == v and c[(a, v)] != a:
            out.append(Violation("identity", f"level {n}: {a}*{v} != {a}"))
        if s[u] == u and c[(u, a)] != a:
            out.append(Violation("identity", f"level {n}: {u}*{a} != {a}"))
    if out:
        return out
    for (a, b), ab in sorted(c.items(), key=_key):
        for x in by_target.get(s[b], []):
            lhs = c[(a, c[(b, x)])]
            rhs = c[(ab, x)]
            if lhs != rhs:
                out.append(Violation("associativity", f"level {n}: ({a}*{b})*{x}"))
    return out


def _validate_pair(C: OmegaCat, m: int, n: int) -> list[Violation]:
    out = []
    sm, tm, sn, tn = C.source[m], C.target[m], C.source[n], C.target[n]
    for x in C.elements:
        ok = (sm[sn[x]] == sm[x] == sm[tn[x]] and tm[sn[x]] == tm[x] == tm[tn[x]]
              and sn[sm[x]] == sm[x] and tn[sm[x]] == sm[x]
              and sn[tm[x]] == tm[x] and tn[tm[x]] == tm[x])
        if not ok:
            out.append(Violation("globularity", f"levels {m}<{n}: {x}"))
    if out:
        return out
    cm, cn = C.compose[m], C.compose[n]
    for (a, b), ab in sorted(cm.items(), key=_key):
        for bd, nm in ((sn, "source"), (tn, "target")):
            try:
                rhs = C.comp(m, bd[a], bd[b])
            except ValueError:
                rhs = None
            if bd[ab] != rhs:
                out.append(Violation("boundary-of-composite", f"levels {m}<{n}: {nm} of {a}*{b}"))
    if out:
        return out
    # middle four interchange: (a*_n b) *_m (a'*_n b') = (a*_m a') *_n (b*_m b')
    left_by_sm: dict = {}
    for (a, b), ab in cn.items():
        left_by_sm.setdefault(sm[a], []).append((a, b, ab))
    for (a2, b2), ab2 in sorted(cn.items(), key=_key):
        for a, b, ab in left_by_sm.get(tm[a2], []):
            try:
                lhs = C.comp(m, ab, ab2)
                rhs = C.comp(n, C.comp(m, a, a2), C.comp(m, b, b2))
            except ValueError:
                out.append(Violation("interchange", f"levels {m}<{n}: ({a},{b};{a2},{b2}) undefined"))
                continue
            if lhs != rhs:
                out.append(Violation("interchange", f"levels {m}<{n}: ({a},{b};{a2},{b2})"))
    return out


# -- functors ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OmegaFunctor:
    domain: OmegaCat
    codomain: OmegaCat
    mapping: Mapping

    def __call__(self, x):
        return self.mapping[x]

    def violations(self) -> list[Violation]:
        out = []
        D, C, F = self.domain, self.codomain, self.mapping
        cod = set(C.elements)
        for x in D.elements:
            if F.get(x) not in cod:
                out.append(Violation("functor", f"{x} has no image in the codomain"))
        if out:
            return out
        for n in range(max(D.level_bound, C.level_bound)):
            for x in D.elements:
                if F[D.s(n, x)] != C.s(n, F[x]) or F[D.t(n, x)] != C.t(n, F[x]):
                    out.append(Violation("functor", f"level {n}: boundary of {x} not preserved"))
            if n < D.level_bound:
                for (a, b), ab in D.compose[n].items():
                    try:
                        img = C.comp(n, F[a], F[b])
                    except ValueError:
                        img = None
                    if img != F[ab]:
                        out.append(Violation("functor", f"level {n}: {a}*{b} not preserved"))
        return out

    def then(self, other: "OmegaFunctor") -> "OmegaFunctor":
        return OmegaFunctor(self.domain, other.codomain, {x: other.mapping[y] for x, y in self.mapping.items()})


def identity_functor(C: OmegaCat) -> OmegaFunctor:
    return OmegaFunctor(C, C, {x: x for x in C.elements})


def find_isomorphism(C: OmegaCat, D: OmegaCat) -> OmegaFunctor | None:
    """A structure-preserving bijection ``C -> D``, by backtracking."""
    if len(C.elements) != len(D.elements):
        return None
    bound = max(C.level_bound, D.level_bound)

    def profile(X: OmegaCat, x):
        return tuple((X.s(n, x) == x, X.t(n, x) == x) for n in range(bound)) + (cell_dimension(X, x),)

    order = sorted(C.elements, key=lambda x: (cell_dimension(C, x), _key(x)))
    cands = {x: [y for y in D.elements if profile(D, y) == profile(C, x)] for x in order}
    F: dict = {}
    used: set = set()

    def consistent(x, y) -> bool:
        for n in range(bound):
            for bd_c, bd_d in ((C.s, D.s), (C.t, D.t)):
                bx = bd_c(n, x)
                if bx in F and F[bx] != bd_d(n, y):
                    return False
                if bx == x and bd_d(n, y) != y:
                    return False
        return True

    def go(i: int) -> bool:
        if i == len(order):
            return not OmegaFunctor(C, D, F).violations()
        x = order[i]
        for y in cands[x]:
            if y in used or not consistent(x, y):
                continue
            F[x] = y
            used.add(y)
            if go(i + 1):
                return True
            del F[x]
            used.discard(y)
        return False

    return OmegaFunctor(C, D, dict(F)) if go(0) else None


# -- isomorphisms and equivalences ----------------------------------------------------------


def detect_isos_1(C: OmegaCat) -> frozenset:
    """Arrows of a 1-category admitting a two-sided inverse."""
    if not is_n_category(C, 1):
        raise ValueError("detect_isos_1 expects a 1-category")
    if C.level_bound == 0:
        return frozenset(C.elements)
    out = set()
    for f in C.elements:
        for g in C.elements:
            if (C.composable(0, g, f) and C.composable(0, f, g)
                    and C.comp(0, g, f) == C.s(0, f) and C.comp(0, f, g) == C.t(0, f)):
                out.add(f)
                break
    return frozenset(out)


def invertible_2_cells(C: OmegaCat) -> frozenset:
    if C.level_bound < 2:
        return frozenset(C.elements)
    out = set()
    for a in C.elements:
        for b in C.elements:
            if (C.composable(1, a, b) and C.composable(1, b, a)
                    and C.comp(1, a, b) == C.t(1, a) and C.comp(1, b, a) == C.s(1, a)):
                out.add(a)
                break
    return frozenset(out)


def detect_equivalences_2(C: OmegaCat) -> tuple[frozenset, frozenset]:
    """``(invertible 2-cells, 1-cell equivalences)`` of a 2-category."""
    if not is_n_category(C, 2):
        raise ValueError("detect_equivalences_2 expects a 2-category")
    isos = invertible_2_cells(C)
    iso_pairs = {(C.s(1, a), C.t(1, a)) for a in isos} if C.level_bound >= 2 else {(a, a) for a in isos}
    ones = [x for x in C.elements if cell_dimension(C, x) <= 1]
    equivs = set()
    for f in ones:
        for g in ones:
            if not (C.composable(0, g, f) and C.composable(0, f, g)):
                continue
            if ((C.comp(0, g, f), C.s(0, f)) in iso_pairs
                    and (C.comp(0, f, g), C.t(0, f)) in iso_pairs):
                equivs.add(f)
                break
    return isos, frozenset(equivs)


def cells_by_boundary(C: OmegaCat, k: int) -> dict:
    """Cells of dimension at most ``k`` keyed by their ``(k-1)``-boundary."""
    out: dict = {}
    for v in C.elements:
        if C.dimension[v] > k:
            continue
        key = (C.s(k - 1, v), C.t(k - 1, v)) if k > 0 else ()
        out.setdefault(key, []).append(v)
    return out
