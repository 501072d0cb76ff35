"""The coding pipeline: split, encode, evaluate, interpolate, extract.

A multiplication A.B is distributed by splitting the operands into blocks,
attaching one block to each degree of a solution's degree set, and handing
every worker the two encoded operands evaluated at its own point.  The
products returned by any large-enough subset of workers form a linear system
whose unknowns are the coefficient blocks of the product polynomial; solving
it recovers A.B exactly.  All arithmetic is exact, so every equality test in
this module is literal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _linalg, exponents
from .constructions import MatdotSolution, PolySolution
from .errors import (
    FieldMismatchError,
    IncompleteRecoveryError,
    InsufficientResponsesError,
    InternalConsistencyError,
    ParameterError,
    ShapeError,
)
from .exponents import ExponentSet, Vec, reduce_q_vec
from .field import FieldSpec, Point

# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class MatrixFq:
    """A dense matrix of field-element indices."""

    spec: FieldSpec
    data: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(np.asarray(self.data, dtype=np.int64))
        if arr.ndim != 2:
            raise ShapeError(f"matrix data must be 2-D, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= self.spec.q):
            raise ParameterError("matrix entries must be element indices in [0, q)")
        object.__setattr__(self, "data", arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MatrixFq)
            and self.spec == other.spec
            and self.data.shape == other.data.shape
            and bool(np.array_equal(self.data, other.data))
        )

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int) -> "MatrixFq":
        return cls(spec, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "MatrixFq":
        return cls(spec, np.eye(n, dtype=np.int64))

    def to_text(self) -> str:
        head = f"{self.rows} {self.cols} {self.spec}\n"
        body = "\n".join(" ".join(str(int(x)) for x in row) for row in self.data)
        return head + body + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MatrixFq":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        r_s, c_s, spec_s = lines[0].split()
        spec = FieldSpec.from_string(spec_s)
        values = [int(tok) for ln in lines[1:] for tok in ln.split()]
        r, c = int(r_s), int(c_s)
        if len(values) != r * c:
            raise ParameterError(f"expected {r * c} entries, got {len(values)}")
        return cls(spec, np.array(values, dtype=np.int64).reshape(r, c))


def random_matrix(spec: FieldSpec, rows: int, cols: int, rng: np.random.Generator) -> MatrixFq:
    return MatrixFq(spec, rng.integers(0, spec.q, size=(rows, cols), dtype=np.int64))


def matmul(a: MatrixFq, b: MatrixFq) -> MatrixFq:
    """Exact schoolbook product; the ground-truth oracle for every decoder test."""
    if a.spec != b.spec:
        raise FieldMismatchError(f"field mismatch: {a.spec} vs {b.spec}")
    if a.cols != b.rows:
        raise ShapeError(f"inner dimensions disagree: {a.cols} vs {b.rows}")
    return MatrixFq(a.spec, a.spec.matmul(a.data, b.data))


# ---------------------------------------------------------------------------
# block splitting


@dataclass(frozen=True)
class BlockSplit:
    """One operand cut into equal blocks along one axis, zero-padded as needed."""

    spec: FieldSpec
    mode: str  # poly-a | poly-b | matdot-a | matdot-b
    count: int
    original_shape: tuple[int, int]
    padded_shape: tuple[int, int]
    padding: int
    blocks: tuple[np.ndarray, ...]

    @property
    def block_shape(self) -> tuple[int, int]:
        return self.blocks[0].shape


_SPLIT_AXIS = {"poly-a": 0, "poly-b": 1, "matdot-a": 1, "matdot-b": 0}


def _split_one(mat: MatrixFq, mode: str, count: int) -> BlockSplit:
    axis = _SPLIT_AXIS[mode]
    size = mat.data.shape[axis]
    padded = -(-size // count) * count
    pad = padded - size
    data = mat.data
    if pad:
        widths = [(0, 0), (0, 0)]
        widths[axis] = (0, pad)
        data = np.pad(data, widths)
    blocks = tuple(np.ascontiguousarray(b) for b in np.split(data, count, axis=axis))
    return BlockSplit(
        spec=mat.spec,
        mode=mode,
        count=count,
        original_shape=(mat.rows, mat.cols),
        padded_shape=data.shape,
        padding=pad,
        blocks=blocks,
    )


def split(a: MatrixFq, b: MatrixFq, mode: str, m: int, n: int | None = None) -> tuple[BlockSplit, BlockSplit]:
    """Cut A and B for a polynomial (row x column) or matdot (inner) scheme."""
    if a.spec != b.spec:
        raise FieldMismatchError(f"field mismatch: {a.spec} vs {b.spec}")
    if a.cols != b.rows:
        raise ShapeError(f"inner dimensions disagree: {a.cols} vs {b.rows}")
    if m < 1 or (n is not None and n < 1):
        raise ParameterError("block counts must be >= 1")
    if mode == "poly":
        if n is None:
            raise ParameterError("polynomial mode needs both block counts")
        return _split_one(a, "poly-a", m), _split_one(b, "poly-b", n)
    if mode == "matdot":
        sa = _split_one(a, "matdot-a", m)
        sb = _split_one(b, "matdot-b", m)
        return sa, sb
    raise ParameterError(f"unknown split mode {mode!r}")


def reassemble(blocks: BlockSplit) -> MatrixFq:
    """Concatenate blocks and trim padding; inverse of the split."""
    axis = _SPLIT_AXIS[blocks.mode]
    data = np.concatenate(blocks.blocks, axis=axis)
    r, c = blocks.original_shape
    return MatrixFq(blocks.spec, data[:r, :c])


# ---------------------------------------------------------------------------
# encoding and evaluation


@dataclass(frozen=True)
class EncodedOperand:
    """A block-matrix polynomial: one matrix block per degree vector."""

    spec: FieldSpec
    q: int
    l: int
    support: ExponentSet
    terms: Mapping[Vec, np.ndarray]
    block_shape: tuple[int, int]

    def coefficient(self, degree: Vec) -> MatrixFq:
        return MatrixFq(self.spec, self.terms[tuple(degree)])


def encode(
    blocks: BlockSplit, degrees: ExponentSet, order: Sequence[Vec] | None = None
) -> EncodedOperand:
    """Attach block i to the i-th degree.

    By default degrees are taken in lexicographic order.  An explicit
    `order` (a permutation of the set) overrides this; matdot schemes need
    it so that B's i-th block carries the degree matched to A's i-th.
    """
    if blocks.count != len(degrees):
        raise ParameterError(
            f"{blocks.count} blocks cannot be matched to {len(degrees)} degrees"
        )
    if order is None:
        seq: Sequence[Vec] = degrees.vectors
    else:
        seq = [tuple(v) for v in order]
        if sorted(seq) != list(degrees.vectors):
            raise ParameterError("explicit degree order must permute the degree set")
    terms = dict(zip(seq, blocks.blocks))
    return EncodedOperand(
        spec=blocks.spec,
        q=degrees.q,
        l=degrees.l,
        support=degrees,
        terms=terms,
        block_shape=blocks.block_shape,
    )


def monomial_value(spec: FieldSpec, point: Point, exponent: Vec) -> int:
    """Evaluate x^exponent at a point, with 0^0 = 1 so constants survive at 0."""
    value = 1
    for coord, e in zip(point, exponent):
        value = spec.mul(value, spec.pow(coord, e))
    return value


def monomial_matrix(spec: FieldSpec, support: ExponentSet, points: Sequence[Point]) -> np.ndarray:
    """Values of each support monomial (rows) at each point (columns)."""
    pts = np.asarray(points, dtype=np.int64)
    exps = np.asarray(support.vectors, dtype=np.int64)
    n_mon, n_pts = exps.shape[0], pts.shape[0]
    out = np.ones((n_mon, n_pts), dtype=np.int64)
    for c in range(support.l):
        max_e = int(exps[:, c].max(initial=0))
        col = pts[:, c]
        # pow_rows[e] = col ** e elementwise, built by repeated field products
        pow_rows = np.ones((max_e + 1, n_pts), dtype=np.int64)
        for e in range(1, max_e + 1):
            pow_rows[e] = spec.mul_arr(pow_rows[e - 1], col)
        out = spec.mul_arr(out, pow_rows[exps[:, c]])
    return out


def evaluate(op: EncodedOperand, point: Point) -> MatrixFq:
    """The encoded operand at one point: sum of block * monomial value."""
    if len(point) != op.l:
        raise ParameterError(f"point has {len(point)} coordinates, expected {op.l}")
    spec = op.spec
    acc = np.zeros(op.block_shape, dtype=np.int64)
    for degree, block in op.terms.items():
        v = monomial_value(spec, point, degree)
        if v:
            acc = spec.add_arr(acc, spec.mul_arr(np.int64(v), block))
    return MatrixFq(spec, acc)


def evaluate_many(op: EncodedOperand, points: Sequence[Point]) -> np.ndarray:
    """Evaluations at many points, shape (len(points), *block_shape)."""
    spec = op.spec
    vals = monomial_matrix(spec, op.support, points)  # (terms, points)
    flat = np.stack([op.terms[v].reshape(-1) for v in op.support.vectors])
    out = spec.matmul(vals.T, flat)  # (points, block entries)
    return out.reshape(len(points), *op.block_shape)


# ---------------------------------------------------------------------------
# interpolation system


@dataclass(frozen=True)
class InterpolationSystem:
    """The evaluation matrix of the product polynomial's monomial space.

    kappa is the number of unknown coefficients; recovery_threshold is the
    evaluation count that guarantees solvability for any point subset.
    """

    spec: FieldSpec
    support: ExponentSet
    points: tuple[Point, ...]
    matrix: np.ndarray  # (kappa, len(points))
    kappa: int
    recovery_threshold: int

    def column_of(self, point: Point) -> int:
        return self._point_index[tuple(point)]

    @property
    def _point_index(self) -> dict[Point, int]:
        return {p: j for j, p in enumerate(self.points)}

    def index_of_degree(self, degree: Vec) -> int:
        return self.support.vectors.index(tuple(degree))


def build_system(spec: FieldSpec, support: ExponentSet, points: Sequence[Point]) -> InterpolationSystem:
    """Fill the evaluation matrix and verify it has full row rank."""
    points = [tuple(p) for p in points]
    if len(set(points)) != len(points):
        raise ParameterError("evaluation points must be distinct")
    threshold = exponents.delta(support) + 1
    if len(points) < threshold:
        raise InsufficientResponsesError(threshold, len(points))
    g = monomial_matrix(spec, support, points)
    kappa = len(support)
    rank = _linalg.matrix_rank(spec, g)
    if rank != kappa:
        # Would contradict the footprint bound; surface loudly.
        raise InternalConsistencyError(
            f"evaluation matrix rank {rank} < kappa {kappa} on {len(points)} points"
        )
    return InterpolationSystem(
        spec=spec,
        support=support,
        points=tuple(points),
        matrix=g,
        kappa=kappa,
        recovery_threshold=threshold,
    )


# ---------------------------------------------------------------------------
# worker payloads and responses


@dataclass(frozen=True)
class WorkerPayload:
    index: int
    point: Point
    a_part: MatrixFq
    b_part: MatrixFq


@dataclass(frozen=True)
class WorkerResponse:
    index: int
    point: Point
    product: MatrixFq


def make_payloads(
    enc_a: EncodedOperand, enc_b: EncodedOperand, points: Sequence[Point]
) -> list[WorkerPayload]:
    vals_a = evaluate_many(enc_a, points)
    vals_b = evaluate_many(enc_b, points)
    spec = enc_a.spec
    return [
        WorkerPayload(i, tuple(p), MatrixFq(spec, vals_a[i]), MatrixFq(spec, vals_b[i]))
        for i, p in enumerate(points)
    ]


def worker_compute(payload: WorkerPayload) -> WorkerResponse:
    return WorkerResponse(payload.index, payload.point, matmul(payload.a_part, payload.b_part))


def format_response(resp: WorkerResponse) -> str:
    coords = ",".join(str(c) for c in resp.point)
    flat = " ".join(str(int(x)) for x in resp.product.data.reshape(-1))
    return f"{resp.index} {coords} {flat}"


def parse_response(line: str, spec: FieldSpec, shape: tuple[int, int]) -> WorkerResponse:
    parts = line.split()
    index = int(parts[0])
    point = tuple(int(c) for c in parts[1].split(","))
    values = np.array([int(x) for x in parts[2:]], dtype=np.int64).reshape(shape)
    return WorkerResponse(index, point, MatrixFq(spec, values))


# ---------------------------------------------------------------------------
# decoding


@dataclass
class Interpolation:
    """Recovered coefficient blocks plus the work done to get them."""

    coefficients: dict[Vec, MatrixFq]
    used_points: tuple[Point, ...]
    stats: _linalg.EliminationStats

    def __getitem__(self, degree: Vec) -> MatrixFq:
        return self.coefficients[tuple(degree)]


def interpolate(
    sys: InterpolationSystem,
    responses: Iterable[WorkerResponse],
    only: Vec | None = None,
    require_threshold: bool = True,
) -> Interpolation:
    """Solve for the product polynomial's coefficients from worker responses.

    With `only`, just the requested coefficient is recovered: the solver
    expresses that single unknown as a combination of response equations
    instead of inverting the whole system.
    """
    responses = list(responses)
    seen: set[Point] = set()
    uniq: list[WorkerResponse] = []
    for r in responses:
        p = tuple(r.point)
        if p in seen:
            continue
        seen.add(p)
        uniq.append(r)
    if require_threshold and len(uniq) < sys.recovery_threshold:
        raise InsufficientResponsesError(sys.recovery_threshold, len(uniq))
    col_index = sys._point_index
    try:
        rows = [sys.matrix[:, col_index[tuple(r.point)]] for r in uniq]
    except KeyError as exc:
        raise ParameterError(f"response at unknown point {exc}") from exc
    spec = sys.spec
    shape = uniq[0].product.data.shape
    if only is not None:
        target = sys.index_of_degree(only)
        y, used, stats = _linalg.express_unit(spec, rows, target, sys.kappa)
        stacked = np.stack([uniq[i].product.data.reshape(-1) for i in used])
        combined = spec.matmul(y.reshape(1, -1), stacked)
        stats.mult_ops += y.size * stacked.shape[1]
        stats.add_ops += y.size * stacked.shape[1]
        coeffs = {tuple(only): MatrixFq(spec, combined.reshape(shape))}
        used_points = tuple(uniq[i].point for i in used)
        return Interpolation(coeffs, used_points, stats)
    rhs = [r.product.data.reshape(-1) for r in uniq]
    x, used, stats = _linalg.solve_exact(spec, rows, rhs, sys.kappa)
    coeffs = {
        v: MatrixFq(spec, x[i].reshape(shape))
        for i, v in enumerate(sys.support.vectors)
    }
    used_points = tuple(uniq[i].point for i in used)
    return Interpolation(coeffs, used_points, stats)


def extract_poly(
    coeffs: Interpolation | Mapping[Vec, MatrixFq],
    sol: PolySolution,
    split_a: BlockSplit,
    split_b: BlockSplit,
) -> MatrixFq:
    """Assemble the block grid of A.B from recovered coefficients."""
    table = coeffs.coefficients if isinstance(coeffs, Interpolation) else coeffs
    spec = split_a.spec
    grid_rows = []
    for a_vec in sol.d_a.vectors:
        row_blocks = []
        for b_vec in sol.d_b.vectors:
            key = reduce_q_vec(tuple(x + y for x, y in zip(a_vec, b_vec)), sol.q)
            if key not in table:
                raise IncompleteRecoveryError(f"missing coefficient at {key}")
            row_blocks.append(table[key].data)
        grid_rows.append(np.concatenate(row_blocks, axis=1))
    full = np.concatenate(grid_rows, axis=0)
    r = split_a.original_shape[0]
    t = split_b.original_shape[1]
    return MatrixFq(spec, full[:r, :t])


def extract_matdot(
    coeffs: Interpolation | Mapping[Vec, MatrixFq],
    sol: MatdotSolution,
    split_a: BlockSplit,
    split_b: BlockSplit,
) -> MatrixFq:
    """A.B is the single coefficient at the solution's target degree."""
    table = coeffs.coefficients if isinstance(coeffs, Interpolation) else coeffs
    key = tuple(sol.degree_target)
    if key not in table:
        raise IncompleteRecoveryError(f"missing coefficient at {key}")
    r = split_a.original_shape[0]
    t = split_b.original_shape[1]
    return MatrixFq(split_a.spec, table[key].data[:r, :t])
