"""Extension search and the properties defined by lifting.

The engine assigns images to the nondegenerate simplices of the codomain of
an inclusion in dimension-ascending order.  Because all faces of a simplex are
assigned before the simplex itself, its candidate images are read off an
index of the target keyed by face tuples, so branching only happens where
the target genuinely offers a choice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import shapes
from .budget import Budget, ensure
from .simplicial import (
    ComplexMap,
    Inclusion,
    SimplexRef,
    StratifiedComplex,
    flat,
    face_name,
)


@dataclass(frozen=True, eq=False)
class LiftingProblem:
    """Extend ``attempt: U -> A`` along ``inclusion: U -> V``."""

    inclusion: Inclusion
    attempt: ComplexMap

    def __post_init__(self):
        if self.attempt.domain != self.inclusion.domain:
            raise ValueError("attempt must be defined on the domain of the inclusion")

    @property
    def target(self) -> StratifiedComplex:
        return self.attempt.codomain

    def violations(self) -> list[str]:
        return self.attempt.violations()


def _fixed(problem: LiftingProblem) -> dict[str, SimplexRef]:
    inc = problem.inclusion
    return {inc.image(x): problem.attempt.assignment[x] for x in inc.domain.ids}


def iter_maps(
    V: StratifiedComplex,
    A: StratifiedComplex,
    fixed: dict[str, SimplexRef] | None = None,
    budget: Budget | int | None = None,
) -> Iterator[ComplexMap]:
    """Every stratified map ``V -> A`` agreeing with ``fixed``, in search order."""
    budget = ensure(budget)
    if V.top_dimension > A.dimension_bound:
        raise ValueError(f"{V!r} exceeds the dimension bound of {A!r}")
    T = A.table
    codes: dict[str, int] = {}
    for x, ref in (fixed or {}).items():
        c = T.code.get(ref)
        if c is None or T.dim[c] != V.dim(x):
            return
        if x in V.marking and not T.thin[c]:
            return
        codes[x] = c
    # fixed simplices must already commute with faces
    for x, c in codes.items():
        if V.dim(x) and any(f.target in codes and _image(V, T, codes, f) != T.faces[c][i]
                            for i, f in enumerate(V.faces[x])):
            return
    order = [x for x in V.ids if x not in codes]
    n = len(order)
    marked = [x in V.marking for x in order]

    def candidates(i: int) -> list[int]:
        x = order[i]
        if V.dim(x) == 0:
            return T.vertices
        key = tuple(_image(V, T, codes, f) for f in V.faces[x])
        found = T.by_faces.get(key, ())
        if marked[i]:
            return [c for c in found if T.thin[c]]
        return found

    stack: list[Iterator[int] | None] = [None] * n
    i = 0
    while i >= 0:
        if i == n:
            yield ComplexMap(V, A, {x: T.refs[c] for x, c in codes.items()})
            i -= 1
            continue
        if stack[i] is None:
            stack[i] = iter(candidates(i))
        c = next(stack[i], None)
        if c is None:
            stack[i] = None
            codes.pop(order[i], None)
            i -= 1
            continue
        budget.spend()
        codes[order[i]] = c
        i += 1


def _image(V: StratifiedComplex, T, codes: dict[str, int], f: SimplexRef) -> int:
    c = codes[f.target]
    if not f.degeneracies:
        return c
    return T.degenerate(c, V.surjection(f))


def enumerate_maps(V, A, limit: int | None = None, budget=None) -> list[ComplexMap]:
    out = []
    for m in iter_maps(V, A, budget=budget):
        out.append(m)
        if limit is not None and len(out) >= limit:
            break
    return out


def iter_extensions(problem: LiftingProblem, budget=None) -> Iterator[ComplexMap]:
    return iter_maps(problem.inclusion.codomain, problem.target, _fixed(problem), budget)


def enumerate_extensions(problem: LiftingProblem, limit: int | None = None, budget=None) -> list[ComplexMap]:
    """All extensions of the attempt along the inclusion (at most ``limit``)."""
    out = []
    for m in iter_extensions(problem, budget):
        out.append(m)
        if limit is not None and len(out) >= limit:
            break
    return out


# -- reports ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Witness:
    """A failing lifting problem: no extension, or two distinct ones."""

    problem: LiftingProblem
    reason: str
    extensions: tuple[ComplexMap, ...] = ()

    def replay(self, budget=None) -> bool:
        """True when the witness still demonstrates the failure it claims."""
        if self.problem.violations():
            return False
        exts = enumerate_extensions(self.problem, limit=2, budget=budget)
        if self.reason == "no-extension":
            return not exts
        if self.reason == "non-unique":
            return len(exts) >= 2 and all(e.violations() == [] for e in self.extensions)
        raise ValueError(f"unknown witness reason {self.reason!r}")


@dataclass
class CheckReport:
    check: str
    verdict: str
    bound: int | None = None
    witness: Witness | None = None
    problems: int = 0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def __bool__(self) -> bool:
        return self.passed

    def __repr__(self) -> str:
        tail = f" witness={self.witness.reason}" if self.witness else ""
        return f"<CheckReport {self.check} {self.verdict} bound={self.bound} problems={self.problems}{tail}>"


def lifting_check(
    A: StratifiedComplex,
    inclusions: Iterable[Inclusion],
    name: str,
    bound: int,
    unique: bool = False,
    budget=None,
) -> CheckReport:
    """Check that every map from each domain into ``A`` extends (uniquely if asked)."""
    budget = ensure(budget)
    problems = 0
    for inc in inclusions:
        if inc.codomain.top_dimension > A.dimension_bound:
            continue
        for attempt in iter_maps(inc.domain, A, budget=budget):
            problem = LiftingProblem(inc, attempt)
            problems += 1
            exts = enumerate_extensions(problem, limit=2 if unique else 1, budget=budget)
            if not exts:
                return CheckReport(name, "fail", bound, Witness(problem, "no-extension"), problems)
            if unique and len(exts) > 1:
                return CheckReport(name, "fail", bound, Witness(problem, "non-unique", tuple(exts)), problems)
    return CheckReport(name, "pass", bound, None, problems)


def _effective(A: StratifiedComplex, bound: int) -> int:
    return min(bound, A.dimension_bound)


def is_complicial(A: StratifiedComplex, bound: int, budget=None) -> CheckReport:
    b = _effective(A, bound)
    return lifting_check(A, shapes.family("J", b), "complicial", b, budget=budget)


def is_strict_complicial(A: StratifiedComplex, bound: int, budget=None) -> CheckReport:
    b = _effective(A, bound)
    return lifting_check(A, shapes.family("J", b), "strict-complicial", b, unique=True, budget=budget)


def is_saturated(A: StratifiedComplex, bound: int, budget=None) -> CheckReport:
    """Extensions along ``Delta[3]_eq * Delta[n] -> Delta[3]# * Delta[n]``, ``n >= -1``."""
    b = _effective(A, bound)
    return lifting_check(A, shapes.family("Ks_left", b), "saturated", b, budget=budget)


def is_n_trivial(A: StratifiedComplex, n: int) -> bool:
    return all(x in A.marking for d, xs in enumerate(A.cells) if d > n for x in xs)


def is_quasicategory(X: StratifiedComplex, bound: int, budget=None) -> CheckReport:
    """Inner horn filling on the underlying simplicial set."""
    b = _effective(X, bound)
    inner = [shapes.horn_inclusion(r, k) for r in range(2, b + 1) for k in range(1, r)]
    return lifting_check(flat(X), inner, "quasicategory", b, budget=budget)


# -- equivalences ------------------------------------------------------------------


def detect_1_equivalences(A: StratifiedComplex) -> frozenset[SimplexRef]:
    """Edges ``f: x -> y`` with thin 2-simplices of boundary ``(f, 1_y, g)`` and ``(h, 1_x, f)``.

    Boundaries are listed as ``(d0, d1, d2)``; the first triangle exhibits a
    right inverse ``g`` (the horn of shape ``Lambda^2[2]``) and the second a
    left inverse ``h`` (shape ``Lambda^0[2]``).
    """
    if A.dimension_bound < 2:
        raise ValueError("1-equivalences need the 2-simplices")
    T = A.table
    right, left = set(), set()
    for c in T.by_dim[2]:
        if not T.thin[c]:
            continue
        d0, d1, d2 = T.faces[c]
        if T.refs[d1].is_degenerate:
            right.add(d0)
            left.add(d2)
    return frozenset(T.refs[c] for c in right & left)


def _face_map(n: int, image: list[int], V: StratifiedComplex) -> ComplexMap:
    D = shapes.standard(n)
    assignment = {}
    for S in shapes.subsets(n):
        assignment[face_name(S)] = SimplexRef(face_name(tuple(image[v] for v in S)))
    return ComplexMap(D, V, assignment)


def simplex_map(A: StratifiedComplex, sigma: SimplexRef) -> ComplexMap:
    """The map ``Delta[n] -> A`` classifying ``sigma``."""
    n = A.ref_dim(sigma)
    D = shapes.standard(n)
    return ComplexMap(D, A, {face_name(S): A.restrict(sigma, S) for S in shapes.subsets(n)})


def equivalence_problem(A: StratifiedComplex, sigma: SimplexRef) -> LiftingProblem:
    n = A.ref_dim(sigma)
    V = shapes.saturation_shape(-1, n - 2, False)
    image = [1, 2] + list(range(4, n + 3))
    inc = Inclusion(_face_map(n, image, V))
    return LiftingProblem(inc, simplex_map(A, sigma))


def detect_n_equivalences(A: StratifiedComplex, n: int, budget=None) -> frozenset[SimplexRef]:
    """``n``-simplices extending along ``Delta[n] -> Delta[3]_eq * Delta[n-2]``.

    Only defined for ``n``-trivial ``A``.
    """
    if n < 1:
        raise ValueError("n-equivalences need n >= 1")
    if not is_n_trivial(A, n):
        raise ValueError(f"{A!r} is not {n}-trivial")
    if A.dimension_bound < n + 2:
        raise ValueError(f"need simplices up to dimension {n + 2}")
    budget = ensure(budget)
    out = set()
    for sigma in A.simplices(n):
        if enumerate_extensions(equivalence_problem(A, sigma), limit=1, budget=budget):
            out.add(sigma)
    return frozenset(out)


# -- the 2-simplex translation ------------------------------------------------------


@dataclass(frozen=True)
class Translation:
    alpha: SimplexRef
    first_degenerate: SimplexRef
    last_degenerate: SimplexRef
    witness_first: SimplexRef
    witness_last: SimplexRef
    linked: bool


def _fill(A: StratifiedComplex, inc: Inclusion, given: dict[str, SimplexRef], budget) -> ComplexMap:
    attempt = ComplexMap(inc.domain, A, given)
    bad = attempt.violations()
    if bad:
        raise ValueError(f"horn does not define a stratified map: {bad[0]}")
    exts = enumerate_extensions(LiftingProblem(inc, attempt), limit=1, budget=budget)
    if not exts:
        raise ValueError("horn has no filler; is the target complicial?")
    return exts[0]


def translate_2_simplex(A: StratifiedComplex, alpha: SimplexRef, budget=None) -> Translation:
    """Companions of ``alpha`` with degenerate first edge and degenerate last edge.

    With ``alpha`` having edges ``f = [01]``, ``g = [12]``, ``h = [02]`` and a
    thin filler ``phi`` of the horn ``(f, g)`` with long edge ``k``:

    * the 3-simplex on ``(x, x, y, z)`` with faces ``(phi, alpha, ?, s0 f)``
      is an admissible ``Lambda^2[3]`` horn; its missing face is the
      companion with degenerate first edge;
    * the 3-simplex on ``(x, y, z, z)`` with faces ``(s1 g, ?, alpha, phi)``
      is an admissible ``Lambda^1[3]`` horn; its missing face is the
      companion with degenerate last edge.
    """
    budget = ensure(budget)
    if A.ref_dim(alpha) != 2:
        raise ValueError("translation acts on 2-simplices")
    f, g = A.face(alpha, 2), A.face(alpha, 0)
    if f.is_degenerate:
        phi = A.degenerate(g, (0, 0, 1))
    else:
        filled = _fill(A, shapes.admissible_horn_inclusion(2, 1), {
            "0": A.act(f, (0,)), "1": A.act(f, (1,)), "2": A.act(g, (1,)), "01": f, "12": g,
        }, budget)
        phi = filled("012")

    def horn_data(faces: dict[int, SimplexRef]) -> dict[str, SimplexRef]:
        out = {}
        for i, ref in faces.items():
            verts = [v for v in range(4) if v != i]
            out[face_name(verts)] = ref
            for j in range(3):
                sub = verts[:j] + verts[j + 1:]
                out[face_name(sub)] = A.face(ref, j)
                for l in range(2):
                    out[face_name(sub[:l] + sub[l + 1:])] = A.face(A.face(ref, j), l)
        return out

    s0f = A.degenerate(f, (0, 0, 1))
    first = _fill(A, shapes.admissible_horn_inclusion(3, 2),
                  horn_data({0: phi, 1: alpha, 3: s0f}), budget)
    s1g = A.degenerate(g, (0, 1, 1))
    last = _fill(A, shapes.admissible_horn_inclusion(3, 1),
                 horn_data({0: s1g, 2: alpha, 3: phi}), budget)
    hat, check = first("013"), last("023")
    marks = {A.is_thin(alpha), A.is_thin(hat), A.is_thin(check)}
    return Translation(alpha, hat, check, first("0123"), last("0123"), len(marks) == 1)
