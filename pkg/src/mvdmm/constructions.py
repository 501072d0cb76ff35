"""Degree-set constructions for distributed matrix multiplication.

Two families of solutions are built here.  Polynomial splittings pick degree
sets D_A, D_B whose reduced Minkowski sum has no collisions, so every block
product owns one coefficient of the worker polynomial product.  Matdot
splittings instead make exactly m pairs collide on one target exponent d, so
the full product A.B is the single coefficient at x^d.

Every construction enumerates its sets explicitly; the recursive size
formulas (db_size, d_size, hyp_size) are independent cross-checks, and any
mismatch raises InternalConsistencyError instead of being silently accepted.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from . import exponents
from .errors import (
    CapacityError,
    InfeasibleError,
    InternalConsistencyError,
    ParameterError,
)
from .exponents import ExponentSet, FootprintValue, Vec, minkowski_sum_q, reduce_q_vec

# Above this D_A x D_B size, pairwise sum enumeration is skipped for
# constructions whose non-collision is structural (disjoint variable blocks).
_SUM_ENUM_LIMIT = 1 << 18

DEFAULT_SEARCH_LIMIT = 10**6


# ---------------------------------------------------------------------------
# solution containers


@dataclass(frozen=True)
class PolySolution:
    """A validated polynomial splitting: row blocks of A times column blocks of B.

    ``footprint`` is the achieved footprint value of the summed degree set;
    ``design_footprint`` is the lower bound the construction guarantees.  For
    the box and separated-variables families the two coincide.
    """

    q: int
    l: int
    d_a: ExponentSet
    d_b: ExponentSet
    footprint: FootprintValue
    design_footprint: int
    xi: int
    sum_size: int
    translation_a: Vec
    translation_b: Vec

    @property
    def m(self) -> int:
        return len(self.d_a)

    @property
    def n(self) -> int:
        return len(self.d_b)

    @property
    def recovery_threshold(self) -> int:
        return self.q**self.l - self.footprint.value + 1

    @property
    def design_threshold(self) -> int:
        return self.q**self.l - self.design_footprint + 1

    def sum_set(self) -> ExponentSet:
        return minkowski_sum_q(self.d_a, self.d_b)


@dataclass(frozen=True)
class MatdotSolution:
    """A validated matdot splitting: A.B is the coefficient at x^d.

    ``pairs`` are the m matched (a, d - a) couples; ``removable_coords`` are
    1-based coordinates where d is zero (droppable via project_zero_coords).
    The quoted threshold of the scheme is ``design_threshold``; the achieved
    footprint of the explicit sum set can be strictly better.
    """

    q: int
    l: int
    d_a: ExponentSet
    d_b: ExponentSet
    degree_target: Vec
    pairs: tuple[tuple[Vec, Vec], ...]
    footprint: FootprintValue
    design_footprint: int
    xi: int
    sum_size: int
    removable_coords: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.d_a)

    @property
    def recovery_threshold(self) -> int:
        return self.q**self.l - self.footprint.value + 1

    @property
    def design_threshold(self) -> int:
        return self.q**self.l - self.design_footprint + 1

    def sum_set(self) -> ExponentSet:
        return minkowski_sum_q(self.d_a, self.d_b)


# ---------------------------------------------------------------------------
# shared factory helpers


def _box(q: int, l: int, upper: Sequence[int]) -> ExponentSet:
    return ExponentSet.of(q, l, itertools.product(*[range(u) for u in upper]))


def _star(k: Sequence[int], s: ExponentSet) -> ExponentSet:
    """Coordinatewise product k * s, the expansion that prevents collisions."""
    return ExponentSet.of(s.q, s.l, (tuple(ki * vi for ki, vi in zip(k, v)) for v in s))


def _translate(s: ExponentSet) -> tuple[ExponentSet, Vec]:
    """Shift coordinate minima to zero; the shift never hurts the footprint."""
    if not s.vectors:
        return s, (0,) * s.l
    mins = tuple(min(v[i] for v in s.vectors) for i in range(s.l))
    if all(x == 0 for x in mins):
        return s, mins
    shifted = ExponentSet.of(s.q, s.l, (tuple(x - m for x, m in zip(v, mins)) for v in s))
    return shifted, mins


def _poly_solution(
    q: int,
    l: int,
    d_a: ExponentSet,
    d_b: ExponentSet,
    design_footprint: int,
    structural: bool = False,
    normalize: bool = True,
) -> PolySolution:
    if not d_a.vectors or not d_b.vectors:
        raise InfeasibleError("degree sets must be nonempty")
    ta = tb = (0,) * l
    if normalize:
        d_a, ta = _translate(d_a)
        d_b, tb = _translate(d_b)
    m, n = len(d_a), len(d_b)
    if structural and m * n > _SUM_ENUM_LIMIT:
        # Disjoint variable blocks: sums are concatenations, so they are
        # pairwise distinct and the minimum factors over the two blocks; the
        # witness is the sum of the per-set witnesses.
        sum_size = m * n
        fa = exponents.fb(d_a)
        fbv = exponents.fb(d_b)
        witness = tuple(x + y for x, y in zip(fa.witness, fbv.witness))
        footprint = FootprintValue(math.prod(q - w for w in witness), witness)
    else:
        summed = minkowski_sum_q(d_a, d_b)
        sum_size = len(summed)
        if sum_size != m * n:
            raise InternalConsistencyError(
                f"construction produced colliding sums: |sum| = {sum_size}, expected {m * n}"
            )
        footprint = exponents.fb(summed)
    xi = exponents.xi_bound(q, l, sum_size)
    if footprint.value > xi:
        raise InternalConsistencyError(
            f"achieved footprint {footprint.value} exceeds hyperbolic bound {xi}"
        )
    if footprint.value < design_footprint:
        raise InternalConsistencyError(
            f"achieved footprint {footprint.value} below designed {design_footprint}"
        )
    return PolySolution(
        q=q, l=l, d_a=d_a, d_b=d_b, footprint=footprint,
        design_footprint=design_footprint, xi=xi, sum_size=sum_size,
        translation_a=ta, translation_b=tb,
    )


def matdot_from_sets(
    q: int, l: int, d_a: ExponentSet, d_b: ExponentSet, degree_target: Sequence[int],
    design_footprint: int | None = None,
) -> MatdotSolution:
    """Validate raw degree sets as a matdot splitting with target d.

    Raises ParameterError unless exactly m reduced pairwise sums hit d, one
    per member of each set.
    """
    d = tuple(int(x) for x in degree_target)
    if len(d) != l:
        raise ParameterError(f"target degree {d} has length {len(d)}, expected {l}")
    if len(d_a) != len(d_b):
        raise ParameterError(f"|D_A| = {len(d_a)} != |D_B| = {len(d_b)}")
    m = len(d_a)
    no_wrap = all(
        max(v[i] for v in d_a) + max(v[i] for v in d_b) < q for i in range(l)
    )
    if no_wrap:
        # No sum can wrap, so each a has the unique candidate partner d - a.
        members_b = set(d_b.vectors)
        hits = [
            (a, tuple(x - y for x, y in zip(d, a)))
            for a in d_a
            if tuple(x - y for x, y in zip(d, a)) in members_b
        ]
    else:
        hits = [
            (a, b)
            for a in d_a
            for b in d_b
            if reduce_q_vec(tuple(x + y for x, y in zip(a, b)), q) == d
        ]
    if len(hits) != m:
        raise ParameterError(
            f"{len(hits)} pairs sum to the target degree, need exactly {m}"
        )
    if len({a for a, _ in hits}) != m or len({b for _, b in hits}) != m:
        raise ParameterError("matched pairs must use every set member exactly once")
    summed = minkowski_sum_q(d_a, d_b)
    footprint = exponents.fb(summed)
    xi = exponents.xi_bound(q, l, len(summed))
    if footprint.value > xi:
        raise InternalConsistencyError(
            f"achieved footprint {footprint.value} exceeds hyperbolic bound {xi}"
        )
    removable = tuple(i + 1 for i, x in enumerate(d) if x == 0)
    if removable:
        warnings.warn(
            f"target degree is zero on coordinates {removable}; "
            "project_zero_coords() gives an equivalent lower-variable scheme",
            stacklevel=2,
        )
    return MatdotSolution(
        q=q, l=l, d_a=d_a, d_b=d_b, degree_target=d,
        pairs=tuple(sorted(hits)),
        footprint=footprint,
        design_footprint=design_footprint if design_footprint is not None else footprint.value,
        xi=xi, sum_size=len(summed), removable_coords=removable,
    )


# ---------------------------------------------------------------------------
# polynomial constructions


def box_poly(q: int, mvec: Sequence[int], nvec: Sequence[int]) -> PolySolution:
    """Hypercube degree sets: D_A a box, D_B the star-expanded box.

    Per-coordinate constraint m_i * n_i <= q keeps all sums below q, so the
    reduced sum is the plain Minkowski sum and the footprint has the closed
    form prod(q - m_i n_i + 1).
    """
    mvec, nvec = tuple(mvec), tuple(nvec)
    if len(mvec) != len(nvec):
        raise ParameterError("m and n vectors must have equal length")
    l = len(mvec)
    for i, (mi, ni) in enumerate(zip(mvec, nvec)):
        if mi < 1 or ni < 1:
            raise ParameterError(f"block counts must be >= 1, got ({mi}, {ni}) at coordinate {i + 1}")
        if mi * ni > q:
            raise ParameterError(
                f"coordinate {i + 1} violates m_i * n_i <= q: {mi} * {ni} > {q}"
            )
    d_a = _box(q, l, mvec)
    d_b = _star(mvec, _box(q, l, nvec))
    closed = math.prod(q - mi * ni + 1 for mi, ni in zip(mvec, nvec))
    sol = _poly_solution(q, l, d_a, d_b, design_footprint=closed)
    if sol.footprint.value != closed:
        raise InternalConsistencyError(
            f"box footprint {sol.footprint.value} != closed form {closed}"
        )
    return sol


def expand_db(q: int, d_a: ExponentSet, d_b_prime: ExponentSet) -> PolySolution:
    """Expand an arbitrary D_B' by the coordinate spans of D_A.

    With m_i = 1 + max span of D_A in coordinate i and D_B = m * D_B', sums
    cannot collide as long as every coordinatewise sum stays below q.
    """
    if d_a.q != q or d_b_prime.q != q or d_a.l != d_b_prime.l:
        raise ParameterError("degree sets must share (q, l)")
    l = d_a.l
    d_a, _ = _translate(d_a)
    mvec = tuple(
        1 + max(v[i] for v in d_a) - min(v[i] for v in d_a) for i in range(l)
    )
    d_b = _star(mvec, d_b_prime)
    for i in range(l):
        top = max(v[i] for v in d_a) + max(v[i] for v in d_b)
        if top >= q:
            raise ParameterError(
                f"coordinate {i + 1} violates max(a_i + b_i) < q: {top} >= {q}"
            )
    return _poly_solution(q, l, d_a, d_b, design_footprint=1)


@lru_cache(maxsize=None)
def _db_count(q: int, mvec: Vec, f: int) -> int:
    m1 = mvec[0]
    q1 = q - m1 + 1
    if len(mvec) == 1:
        return max(0, (q1 - f) // m1 + 1)
    ml = mvec[-1]
    ql = q - ml + 1
    return sum(
        _db_count(q, mvec[:-1], -(-f // (ql - ml * b)))
        for b in range(0, (ql - 1) // ml + 1)
    )


def db_size(q: int, mvec: Sequence[int], f: int, l: int | None = None) -> int:
    """Size of the expanded degree set of better_box, by recurrence."""
    mvec = tuple(mvec)
    if l is not None and l != len(mvec):
        raise ParameterError(f"l = {l} disagrees with len(mvec) = {len(mvec)}")
    _check_mvec(q, mvec)
    return _db_count(q, mvec, max(1, f))


def db_set(q: int, mvec: Sequence[int], f: int) -> ExponentSet:
    """Explicit enumeration of better_box's D_B (largest star-expanded set).

    Every factor q - m_i + 1 - m_i b_i is kept >= 1: a negative factor would
    break the expansion hypothesis even when the product stays positive.
    """
    mvec = tuple(mvec)
    _check_mvec(q, mvec)
    f = max(1, f)
    l = len(mvec)
    qs = [q - mi + 1 for mi in mvec]
    ranges = [range(0, (qi - 1) // mi + 1) for qi, mi in zip(qs, mvec)]
    out = [
        tuple(mi * bi for mi, bi in zip(mvec, b))
        for b in itertools.product(*ranges)
        if math.prod(qi - mi * bi for qi, mi, bi in zip(qs, mvec, b)) >= f
    ]
    return ExponentSet.of(q, l, out)


def _check_mvec(q: int, mvec: Vec) -> None:
    if not mvec:
        raise ParameterError("empty block-count vector")
    for i, mi in enumerate(mvec):
        if not 1 <= mi < q:
            raise ParameterError(f"coordinate {i + 1}: need 1 <= m_i < q, got {mi}")


def better_box(q: int, mvec: Sequence[int], f: int) -> PolySolution:
    """Box D_A with the largest D_B keeping the footprint at least f."""
    mvec = tuple(mvec)
    _check_mvec(q, mvec)
    f = max(1, f)
    l = len(mvec)
    d_b = db_set(q, mvec, f)
    if not d_b.vectors:
        raise InfeasibleError(f"no expanded degrees reach footprint {f} for m = {mvec}")
    expected = db_size(q, mvec, f)
    if len(d_b) != expected:
        raise InternalConsistencyError(
            f"enumerated |D_B| = {len(d_b)} != recurrence value {expected}"
        )
    d_a = _box(q, l, mvec)
    return _poly_solution(q, l, d_a, d_b, design_footprint=f)


def sep_vars(q: int, m_prime: int, n_prime: int, f_a: int, f_b: int) -> PolySolution:
    """Disjoint variable blocks: A's degrees use the first m' variables, B's
    the last n'.  The only family that splits both operands over GF(2).
    """
    if m_prime < 1 or n_prime < 1:
        raise ParameterError("variable block sizes must be >= 1")
    f_a, f_b = max(1, f_a), max(1, f_b)
    l = m_prime + n_prime
    left = exponents.hyp_set(q, m_prime, f_a)
    right = exponents.hyp_set(q, n_prime, f_b)
    if not left.vectors or not right.vectors:
        raise InfeasibleError(f"hyperbolic set empty for footprints ({f_a}, {f_b})")
    zeros_a = (0,) * n_prime
    zeros_b = (0,) * m_prime
    d_a = ExponentSet.of(q, l, (v + zeros_a for v in left))
    d_b = ExponentSet.of(q, l, (zeros_b + v for v in right))
    return _poly_solution(
        q, l, d_a, d_b, design_footprint=f_a * f_b, structural=True, normalize=False
    )


def validate_poly(d_a: ExponentSet, d_b: ExponentSet) -> "PolyValidation":
    """Brute-force audit of the non-collision condition for raw degree sets.

    Never raises on invalid input; returns a report with the offending pairs.
    """
    if d_a.q != d_b.q or d_a.l != d_b.l:
        raise ParameterError("degree sets must share (q, l)")
    q, l = d_a.q, d_a.l
    seen: dict[Vec, tuple[Vec, Vec]] = {}
    collisions: list[tuple[tuple[Vec, Vec], tuple[Vec, Vec]]] = []
    for a in d_a:
        for b in d_b:
            s = reduce_q_vec(tuple(x + y for x, y in zip(a, b)), q)
            if s in seen and seen[s] != (a, b):
                collisions.append((seen[s], (a, b)))
            else:
                seen[s] = (a, b)
    sum_size = len(seen)
    expected = len(d_a) * len(d_b)
    ok = not collisions and sum_size == expected
    summed = ExponentSet.of(q, l, seen.keys())
    footprint = exponents.fb(summed)
    xi = exponents.xi_bound(q, l, sum_size)
    return PolyValidation(
        ok=ok,
        sum_size=sum_size,
        expected_size=expected,
        collisions=tuple(collisions),
        footprint=footprint,
        recovery_threshold=q**l - footprint.value + 1,
        xi=xi,
        bound_ok=footprint.value <= xi,
    )


@dataclass(frozen=True)
class PolyValidation:
    ok: bool
    sum_size: int
    expected_size: int
    collisions: tuple
    footprint: FootprintValue
    recovery_threshold: int
    xi: int
    bound_ok: bool


# ---------------------------------------------------------------------------
# matdot constructions


def box_matdot(q: int, mvec: Sequence[int]) -> MatdotSolution:
    """Equal box degree sets with target d = m - 1 (componentwise).

    Requires 2(m_i - 1) < q in every coordinate, which rules out any real
    splitting over GF(2).
    """
    mvec = tuple(mvec)
    if not mvec:
        raise ParameterError("empty block-count vector")
    l = len(mvec)
    for i, mi in enumerate(mvec):
        if mi < 1:
            raise ParameterError(f"coordinate {i + 1}: block count must be >= 1, got {mi}")
        if 2 * (mi - 1) >= q:
            raise ParameterError(
                f"coordinate {i + 1} violates 2(m_i - 1) < q: m_i = {mi}, q = {q}"
            )
    box = _box(q, l, mvec)
    d = tuple(mi - 1 for mi in mvec)
    closed = math.prod(q - 2 * mi + 2 for mi in mvec)
    sol = matdot_from_sets(q, l, box, box, d, design_footprint=closed)
    if sol.footprint.value != closed:
        raise InternalConsistencyError(
            f"box matdot footprint {sol.footprint.value} != closed form {closed}"
        )
    return sol


def half_hyp_set(q: int, f: int, g: int, degree_target: Sequence[int]) -> list[Vec]:
    """Enumerate {a : a <= d, prod(q - 2a_i) >= f, prod(q - 2(d_i - a_i)) >= g}.

    Membership of a requires d - a to be a usable partner degree, hence the
    a <= d cap on top of the two budget conditions.
    """
    d = tuple(degree_target)
    f, g = max(1, f), max(1, g)
    out = []
    for a in itertools.product(*[range(x + 1) for x in d]):
        if math.prod(q - 2 * x for x in a) >= f and math.prod(
            q - 2 * (dx - x) for dx, x in zip(d, a)
        ) >= g:
            out.append(a)
    return out


@lru_cache(maxsize=None)
def _d_count(q: int, f: int, g: int, d: Vec) -> int:
    d1 = d[-1]
    if len(d) == 1:
        hi = min(d1, (q - f) // 2)
        lo = max(0, -(-(g - q + 2 * d1) // 2))
        return max(0, hi - lo + 1)
    return sum(
        _d_count(q, -(-f // (q - 2 * a)), -(-g // (q - 2 * d1 + 2 * a)), d[:-1])
        for a in range(0, d1 + 1)
    )


def _check_degree_target(q: int, d: Vec) -> None:
    half = -(-q // 2)  # ceil(q/2); valid degrees are 0..half-1
    for i, x in enumerate(d):
        if not 0 <= x < half:
            raise ParameterError(
                f"coordinate {i + 1}: target degree must satisfy 0 <= d_i < q/2, got {x}"
            )


def d_size(q: int, f: int, g: int, degree_target: Sequence[int]) -> int:
    """Size of the half-hyperbolic set by recurrence over coordinates."""
    d = tuple(int(x) for x in degree_target)
    _check_degree_target(q, d)
    return _d_count(q, max(1, f), max(1, g), d)


def half_hyperbolic(q: int, l: int, f: int, degree_target: Sequence[int]) -> MatdotSolution:
    """The largest symmetric matdot set with designed footprint f at target d.

    f = 0 (or 1) means unconstrained and reproduces the box construction with
    d = m - 1.
    """
    d = tuple(int(x) for x in degree_target)
    if len(d) != l:
        raise ParameterError(f"target degree {d} has length {len(d)}, expected {l}")
    _check_degree_target(q, d)
    members = half_hyp_set(q, f, f, d)
    if not members:
        raise InfeasibleError(f"no degrees reach footprint {f} at target {d}")
    expected = d_size(q, f, f, d)
    if len(members) != expected:
        raise InternalConsistencyError(
            f"enumerated size {len(members)} != recurrence value {expected}"
        )
    dset = ExponentSet.of(q, l, members)
    design = max(1, f) if f >= 1 else math.prod(q - 2 * x for x in d)
    return matdot_from_sets(q, l, dset, dset, d, design_footprint=design)


def corner_degree(q: int, l: int) -> Vec:
    """The largest admissible target degree (ceil(q/2) - 1 in each coordinate).

    This is the target the bundled appendix tables use for the symmetric
    matdot family.
    """
    return (-(-q // 2) - 1,) * l


def search_best_d(
    q: int, l: int, f: int, limit: int = DEFAULT_SEARCH_LIMIT
) -> tuple[Vec, int]:
    """Exhaustive scan of target degrees maximizing the half-hyperbolic size.

    Ties break to the lexicographically smallest degree.  Note that the
    bundled tables instead fix the corner degree (see corner_degree), which
    is not always the maximizer.
    """
    half = -(-q // 2)
    total = half**l
    if total > limit:
        raise CapacityError(f"{total} candidate degrees exceed limit {limit}")
    best_d: Vec | None = None
    best_m = -1
    for d in itertools.product(range(half), repeat=l):
        m = _d_count(q, max(1, f), max(1, f), d)
        if m > best_m:
            best_d, best_m = d, m
    return best_d, best_m


def matdot_q2_fb(sol: MatdotSolution) -> FootprintValue:
    """Closed-form footprint of any binary matdot splitting.

    Over GF(2) the footprint collapses to 2^(l - |support of the sum set|),
    so any splitting touching every variable is useless (footprint 1).
    Cross-checked against the enumerated sum set.
    """
    if sol.q != 2:
        raise ParameterError(f"closed form only applies to q = 2, got q = {sol.q}")
    summed = sol.sum_set()
    supp = exponents.support(summed)
    closed = 2 ** (sol.l - len(supp))
    actual = exponents.fb(summed)
    if actual.value != closed:
        raise InternalConsistencyError(
            f"binary matdot footprint {actual.value} != closed form {closed}"
        )
    return actual


def project_zero_coords(sol: MatdotSolution) -> MatdotSolution:
    """Drop coordinates where the target degree is zero (fewer variables,
    same footprint).  Keeps at least one coordinate."""
    drop = set(i - 1 for i in sol.removable_coords)
    keep = [i for i in range(sol.l) if i not in drop]
    if not keep:
        keep = [0]
    if len(keep) == sol.l:
        return sol
    def cut(v: Vec) -> Vec:
        return tuple(v[i] for i in keep)
    d_a = ExponentSet.of(sol.q, len(keep), (cut(v) for v in sol.d_a))
    d_b = ExponentSet.of(sol.q, len(keep), (cut(v) for v in sol.d_b))
    return matdot_from_sets(
        sol.q, len(keep), d_a, d_b, cut(sol.degree_target),
        design_footprint=max(1, sol.design_footprint // sol.q ** (sol.l - len(keep))),
    )


# ---------------------------------------------------------------------------
# descriptor resolution (shared by the CLI and the simulator)

POLY_KINDS = ("poly-box", "better-box", "sep-vars")
MATDOT_KINDS = ("matdot-box", "matdot-half")


def build(kind: str, q: int, params: Mapping[str, object]) -> PolySolution | MatdotSolution:
    """Resolve a construction descriptor to a validated solution.

    Descriptor kinds and parameters:
      poly-box    m=<vec> n=<vec>
      better-box  m=<vec> F=<int>
      sep-vars    mprime=<int> nprime=<int> F=<int> (or FA=, FB=)
      matdot-box  m=<vec>
      matdot-half l=<int> F=<int> and one of d=<vec> | d=corner | d=best
    """
    p = dict(params)

    def take(key: str):
        if key not in p:
            raise ParameterError(f"{kind} needs parameter {key!r}")
        return p.pop(key)

    def take_vec(key: str) -> Vec:
        v = take(key)
        if isinstance(v, str):
            return exponents.parse_vec(v)
        return tuple(int(x) for x in v)  # type: ignore[arg-type]

    def take_int(key: str) -> int:
        return int(take(key))  # type: ignore[arg-type]

    if kind == "poly-box":
        sol = box_poly(q, take_vec("m"), take_vec("n"))
    elif kind == "better-box":
        sol = better_box(q, take_vec("m"), take_int("F"))
    elif kind == "sep-vars":
        if "F" in p:
            f = take_int("F")
            fa = fb_ = f
        else:
            fa, fb_ = take_int("FA"), take_int("FB")
        sol = sep_vars(q, take_int("mprime"), take_int("nprime"), fa, fb_)
    elif kind == "matdot-box":
        sol = box_matdot(q, take_vec("m"))
    elif kind == "matdot-half":
        l = take_int("l")
        f = take_int("F")
        draw = take("d")
        if draw == "corner":
            d = corner_degree(q, l)
        elif draw == "best":
            d, _ = search_best_d(q, l, f)
        else:
            d = exponents.parse_vec(draw) if isinstance(draw, str) else tuple(draw)  # type: ignore[arg-type]
        sol = half_hyperbolic(q, l, f, d)
    else:
        raise ParameterError(f"unknown construction kind {kind!r}")
    if p:
        raise ParameterError(f"unused parameters for {kind}: {sorted(p)}")
    return sol


# ---------------------------------------------------------------------------
# serialization


def solution_to_text(sol: PolySolution | MatdotSolution) -> str:
    lines = [f"q={sol.q}", f"l={sol.l}"]
    if isinstance(sol, MatdotSolution):
        lines.append("kind=matdot")
        lines.append(f"d={exponents.format_vec(sol.degree_target)}")
    else:
        lines.append("kind=poly")
    lines.append(f"design_f={sol.design_footprint}")
    lines.append("DA:")
    lines.extend(exponents.format_vec(v) for v in sol.d_a)
    lines.append("DB:")
    lines.extend(exponents.format_vec(v) for v in sol.d_b)
    return "\n".join(lines) + "\n"


def solution_from_text(text: str) -> PolySolution | MatdotSolution:
    header: dict[str, str] = {}
    sets: dict[str, list[Vec]] = {"DA": [], "DB": []}
    current: str | None = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line in ("DA:", "DB:"):
            current = line[:-1]
            continue
        if current is None:
            key, _, value = line.partition("=")
            header[key.strip()] = value.strip()
        else:
            sets[current].append(exponents.parse_vec(line))
    try:
        q = int(header["q"])
        l = int(header["l"])
        kind = header["kind"]
    except KeyError as exc:
        raise ParameterError(f"missing header line {exc} in solution text") from exc
    design = int(header.get("design_f", 1))
    d_a = ExponentSet.of(q, l, sets["DA"])
    d_b = ExponentSet.of(q, l, sets["DB"])
    if kind == "matdot":
        d = exponents.parse_vec(header["d"])
        return matdot_from_sets(q, l, d_a, d_b, d, design_footprint=design)
    if kind == "poly":
        return _poly_solution(q, l, d_a, d_b, design_footprint=design, normalize=False)
    raise ParameterError(f"unknown solution kind {kind!r}")
