"""Reproduction of the eight bundled parameter tables as canonical TSV.

Each table is generated from its row rule and rendered byte-stably; a golden
copy ships with the package and `mvdmm table` diffs the two cell by cell.

T1/T2  box and better-box splittings over two variables (q = 19, 25),
       rows for block counts m_i = 1..6 with n_i = floor(2q / 3m_i).
T3-T6  separated-variables splittings (q = 2 with 10 and 20 variables,
       q = 64 and 128 with two), rows over power-of-two design footprints.
T7/T8  symmetric matdot splittings (q = 8, 32, three variables) at the
       corner target degree; rows step the design footprint in units of
       q^3 / 64.  The quoted k+1 column is the designed guarantee
       q^l - F + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from . import constructions, exponents
from .errors import ParameterError

TABLE_IDS = ("T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8")


@dataclass(frozen=True)
class TableSpec:
    ident: str
    q: int
    l: int
    family: str
    header: tuple[str, ...]


SPECS = {
    "T1": TableSpec("T1", 19, 2, "box",
                    ("m_i", "n_i", "m", "n", "n_better", "FB", "xi", "xi_better", "k+1")),
    "T2": TableSpec("T2", 25, 2, "box",
                    ("m_i", "n_i", "m", "n", "n_better", "FB", "xi", "xi_better", "k+1")),
    "T3": TableSpec("T3", 2, 10, "sep-vars", ("F", "m", "FB", "xi", "k+1")),
    "T4": TableSpec("T4", 2, 20, "sep-vars", ("F", "m", "FB", "xi", "k+1")),
    "T5": TableSpec("T5", 64, 2, "sep-vars", ("F", "m", "FB", "xi", "k+1")),
    "T6": TableSpec("T6", 128, 2, "sep-vars", ("F", "m", "FB", "xi", "k+1")),
    "T7": TableSpec("T7", 8, 3, "matdot-half", ("F", "m", "k+1")),
    "T8": TableSpec("T8", 32, 3, "matdot-half", ("F", "m", "k+1")),
}

_SEP_VARS_ROWS = {
    "T3": (5, 5, (2, 4, 8, 16)),
    "T4": (10, 10, (2, 4, 8, 16, 32, 64, 128, 256, 512)),
    "T5": (1, 1, (2, 4, 8, 16, 32)),
    "T6": (1, 1, (2, 4, 8, 16, 32, 64)),
}


def _box_rows(q: int) -> list[list[int]]:
    rows = []
    for mi in range(1, 7):
        ni = (2 * q) // (3 * mi)
        sol = constructions.box_poly(q, (mi, mi), (ni, ni))
        better = constructions.better_box(q, (mi, mi), sol.footprint.value)
        xi_better = exponents.xi_bound(q, 2, sol.m * better.n)
        rows.append([
            mi, ni, sol.m, sol.n, better.n,
            sol.footprint.value, sol.xi, xi_better, sol.recovery_threshold,
        ])
    return rows


def _sep_vars_rows(q: int, m_prime: int, n_prime: int, fs: tuple[int, ...]) -> list[list[int]]:
    rows = []
    for f in fs:
        sol = constructions.sep_vars(q, m_prime, n_prime, f, f)
        rows.append([f, sol.m, sol.footprint.value, sol.xi, sol.recovery_threshold])
    return rows


def _matdot_rows(q: int, l: int) -> list[list[int]]:
    corner = constructions.corner_degree(q, l)
    step = q**l // 64
    rows = []
    for k in range(8):
        f = 1 + k * step
        m = constructions.d_size(q, f, f, corner)
        rows.append([f, m, q**l - f + 1])
    return rows


def generate(ident: str) -> tuple[TableSpec, list[list[int]]]:
    if ident not in SPECS:
        raise ParameterError(f"unknown table id {ident!r} (know {', '.join(TABLE_IDS)})")
    spec = SPECS[ident]
    if spec.family == "box":
        rows = _box_rows(spec.q)
    elif spec.family == "sep-vars":
        mp, np_, fs = _SEP_VARS_ROWS[ident]
        rows = _sep_vars_rows(spec.q, mp, np_, fs)
    else:
        rows = _matdot_rows(spec.q, spec.l)
    return spec, rows


def render(spec: TableSpec, rows: list[list[int]]) -> str:
    lines = ["\t".join(spec.header)]
    lines.extend("\t".join(str(x) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


def golden_text(ident: str, golden_dir=None) -> str:
    if golden_dir is not None:
        with open(f"{golden_dir}/{ident}.tsv", "r", encoding="utf-8") as fh:
            return fh.read()
    return resources.files("mvdmm").joinpath(f"golden/{ident}.tsv").read_text("utf-8")


def diff_cells(expected: str, actual: str) -> list[str]:
    """Cell-level differences between two rendered tables (empty = match)."""
    out = []
    exp_lines = expected.strip("\n").split("\n")
    act_lines = actual.strip("\n").split("\n")
    if len(exp_lines) != len(act_lines):
        out.append(f"row count: expected {len(exp_lines)}, got {len(act_lines)}")
    for i, (el, al) in enumerate(zip(exp_lines, act_lines)):
        ec, ac = el.split("\t"), al.split("\t")
        if len(ec) != len(ac):
            out.append(f"row {i}: expected {len(ec)} cells, got {len(ac)}")
            continue
        for j, (e, a) in enumerate(zip(ec, ac)):
            if e != a:
                out.append(f"row {i} col {j}: expected {e!r}, got {a!r}")
    return out
