"""Sandwich cell machinery: half-diagram enumeration, cell coordinates,
strict-idempotent search, apex tables, and a JSON enumeration cache.

A half diagram (bottom of a cell) is a diagram n -> lambda whose lambda
through blocks each contain exactly one top node and are undecorated;
dead blocks carry one of the 3K decorations.  Left cells of the diagram
algebra fix the bottom half, right cells fix the top half (the star
image of a bottom half).
"""
from __future__ import annotations

import enum
import hashlib
import itertools
import json
import os
from dataclasses import dataclass
from fractions import Fraction

from . import algebra
from .diagram import (
    Diagram,
    factorize,
    is_member,
    parse_diagram,
    render_diagram,
    star,
    through_strands,
)
from .errors import InternalCheckError, ParseError, PreconditionError
from .families import Family, check_lambda
from .msmall import WreathElem, wreath_elements, wreath_mul
from .params import MonoidParams, ParamSet


@dataclass(frozen=True)
class HalfDiagram:
    base: Diagram  # n -> lambda
    lambda_ts: int


@dataclass(frozen=True)
class CellCoords:
    family: Family
    n: int
    lambda_ts: int
    left_index: int
    right_index: int


class ZeroPattern(enum.Enum):
    ALL_ZERO = "all-zero"
    SOME_NONZERO = "some-nonzero"


@dataclass(frozen=True)
class ApexSet:
    family: Family
    n: int
    zero_pattern: ZeroPattern
    apexes: frozenset[int]


# ---------------------------------------------------------------------------
# half-diagram enumeration
# ---------------------------------------------------------------------------


def _set_partitions(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def _half_shapes(f: Family, n: int, lam: int) -> list[Diagram]:
    """Undecorated family-admissible bottoms with lam through blocks."""
    shapes = []
    for part in _set_partitions(list(range(1, n + 1))):
        if len(part) < lam:
            continue
        for through in itertools.combinations(range(len(part)), lam):
            ordered = sorted(through, key=lambda i: min(part[i]))
            blocks = []
            for i, block in enumerate(part):
                if i in through:
                    top = ordered.index(i) + 1
                    blocks.append((tuple(block) + (-top,), 0, 0))
                else:
                    blocks.append((tuple(block), 0, 0))
            d = Diagram.make(n, lam, blocks)
            if is_member(d, f):
                shapes.append(d)
    shapes.sort(key=Diagram.sort_key)
    return shapes


def _decorate(shape: Diagram, K: int):
    """All (h, mob) in [0, K) x {0, 1, 2} assignments on dead blocks."""
    dead = [i for i, (nodes, _, _) in enumerate(shape.blocks) if all(v > 0 for v in nodes)]
    decos = [(h, mob) for h in range(K) for mob in range(3)]
    for assignment in itertools.product(decos, repeat=len(dead)):
        blocks = list(shape.blocks)
        for slot, (h, mob) in zip(dead, assignment):
            nodes, _, _ = blocks[slot]
            blocks[slot] = (nodes, h, mob)
        yield Diagram.make(shape.n, shape.m, blocks)


def enumerate_half_diagrams(
    f: Family, n: int, lambda_ts: int, K: int, cache_dir: str | None = None
) -> list[HalfDiagram]:
    """All half diagrams for the cell (f, n, lambda), deterministic order:
    shapes sorted canonically, decorations in lexicographic order."""
    check_lambda(f, n, lambda_ts)
    if K <= 0:
        raise PreconditionError("K must be positive")
    if cache_dir is not None:
        cached = _cache_load(cache_dir, f, n, lambda_ts, K)
        if cached is not None:
            return cached
    out = [
        HalfDiagram(d, lambda_ts)
        for shape in _half_shapes(f, n, lambda_ts)
        for d in _decorate(shape, K)
    ]
    if cache_dir is not None:
        _cache_store(cache_dir, f, n, lambda_ts, K, out)
    return out


# ---------------------------------------------------------------------------
# enumeration cache (JSON with schema version and checksum)
# ---------------------------------------------------------------------------

CACHE_FORMAT_VERSION = 1


def _cache_path(cache_dir: str, f: Family, n: int, lam: int, K: int) -> str:
    return os.path.join(cache_dir, f"halves_{f.value}_n{n}_l{lam}_K{K}.json")


def _cache_checksum(literals: list[str]) -> str:
    return hashlib.sha256("\n".join(literals).encode()).hexdigest()


def _cache_store(cache_dir: str, f: Family, n: int, lam: int, K: int, halves) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    literals = [render_diagram(h.base) for h in halves]
    payload = {
        "format_version": CACHE_FORMAT_VERSION,
        "family": f.value,
        "n": n,
        "lambda": lam,
        "K": K,
        "halves": literals,
        "checksum": _cache_checksum(literals),
    }
    with open(_cache_path(cache_dir, f, n, lam, K), "w") as fh:
        json.dump(payload, fh)


def _cache_load(cache_dir: str, f: Family, n: int, lam: int, K: int):
    path = _cache_path(cache_dir, f, n, lam, K)
    if not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            payload = json.load(fh)
        if payload.get("format_version") != CACHE_FORMAT_VERSION:
            return None
        literals = payload["halves"]
        if payload.get("checksum") != _cache_checksum(literals):
            return None  # corruption: regenerate
        return [HalfDiagram(parse_diagram(lit), lam) for lit in literals]
    except (OSError, json.JSONDecodeError, KeyError, ParseError):
        return None


# ---------------------------------------------------------------------------
# cell coordinates
# ---------------------------------------------------------------------------


def cell_of(d: Diagram, f: Family, mp: MonoidParams) -> CellCoords:
    """Locate a normalized family diagram in its cell: lambda is the
    through-strand count, left/right indices point into the half-diagram
    enumeration (the right half is the star image of the top)."""
    if not is_member(d, f):
        raise PreconditionError(f"diagram is not in the {f.value} family")
    lam = through_strands(d)
    fact = factorize(d, mp)
    halves = enumerate_half_diagrams(f, d.n, lam, mp.K)
    index = {h.base: i for i, h in enumerate(halves)}
    bottom = fact.bottom
    top_star = star(fact.top)
    try:
        return CellCoords(f, d.n, lam, index[bottom], index[top_star])
    except KeyError:
        raise InternalCheckError("factorized halves missing from enumeration") from None


# ---------------------------------------------------------------------------
# J-cell materialization and strict idempotents
# ---------------------------------------------------------------------------


def assemble_element(bottom: HalfDiagram, middle: WreathElem, top_star: HalfDiagram) -> Diagram:
    """The basis diagram star(top_star.base) o middle o bottom.base."""
    from .diagram import Factorization, recompose

    return recompose(
        Factorization(
            top=star(top_star.base),
            middle=middle,
            bottom=bottom.base,
            lambda_ts=bottom.lambda_ts,
        )
    )


def build_jcell(f: Family, n: int, lambda_ts: int, mp: MonoidParams) -> list[Diagram]:
    """All basis diagrams of End(n) in the family with lambda_ts through
    strands, in canonical order."""
    halves = enumerate_half_diagrams(f, n, lambda_ts, mp.K)
    out = []
    for bottom in halves:
        for top in halves:
            for mid in wreath_elements(mp, lambda_ts, planar=f.planar):
                out.append(assemble_element(bottom, mid, top))
    out.sort(key=Diagram.sort_key)
    return out


def find_strict_idempotent(
    jcell: list[Diagram], ps: ParamSet
) -> tuple[Diagram, Fraction] | None:
    """First basis element e (canonical order) with e o e = s . e modulo
    diagrams of strictly fewer through strands, s != 0.  Absence returns
    None and is a meaningful outcome."""
    if not jcell:
        return None
    lam = through_strands(jcell[0])
    if any(through_strands(d) != lam for d in jcell):
        raise PreconditionError("all J-cell elements must share the through-strand count")
    for e in sorted(jcell, key=Diagram.sort_key):
        square = algebra.compose_diagrams(e, e, ps)
        trimmed = {d: c for d, c in square.terms if through_strands(d) >= lam}
        if len(trimmed) == 1:
            (d, c), = trimmed.items()
            if d == e and c != 0:
                return e, c
    return None


# ---------------------------------------------------------------------------
# apex tables
# ---------------------------------------------------------------------------


def apex_set(f: Family, n: int, zero_pattern: ZeroPattern) -> ApexSet:
    """Apexes of simple modules by family and evaluation zero-pattern.

    zero_pattern says whether every evaluation coefficient vanishes
    (ALL_ZERO) or at least one is nonzero (SOME_NONZERO).  For the
    Brauer and Temperley-Lieb rows the split between the two columns is
    stated in the source classification with a quantifier over indices
    k >= 1 whose scope is ambiguous; the table is implemented verbatim
    per column, and parameter sets exercised in the test suite satisfy
    both readings.
    """
    full = set(range(0, n + 1))
    parity = {lam for lam in full if (n - lam) % 2 == 0}
    if f in (Family.SYMMETRIC, Family.PLANAR_SYMMETRIC):
        apexes = {n}
    elif f in (Family.ROOK, Family.PLANAR_ROOK):
        apexes = {n} if zero_pattern is ZeroPattern.ALL_ZERO else full
    elif f in (Family.BRAUER, Family.TEMPERLEY_LIEB):
        apexes = parity - {0} if zero_pattern is ZeroPattern.ALL_ZERO else parity
    elif f in (Family.ROOK_BRAUER, Family.MOTZKIN):
        apexes = parity - {0} if zero_pattern is ZeroPattern.ALL_ZERO else full
    else:  # partition families
        apexes = full - {0} if zero_pattern is ZeroPattern.ALL_ZERO else full
    return ApexSet(f, n, zero_pattern, frozenset(apexes))


# ---------------------------------------------------------------------------
# decorated diagram monoids (for brute-force Green's cross-checks)
# ---------------------------------------------------------------------------


def enumerate_family_monoid(f: Family, n: int, mp: MonoidParams) -> list[Diagram]:
    """All decorated (n, n)-diagrams of the family, handle counts below K."""
    ids = list(range(1, n + 1)) + list(range(-1, -n - 1, -1))
    out = []
    for part in _set_partitions(ids):
        shape = Diagram.make(n, n, [(tuple(b), 0, 0) for b in part])
        if not is_member(shape, f):
            continue
        out.extend(_decorate_all(shape, mp.K))
    out.sort(key=Diagram.sort_key)
    return out


def _decorate_all(shape: Diagram, K: int):
    decos = [(h, mob) for h in range(K) for mob in range(3)]
    slots = range(len(shape.blocks))
    for assignment in itertools.product(decos, repeat=len(shape.blocks)):
        blocks = [
            (shape.blocks[i][0],) + assignment[i] for i in slots
        ]
        yield Diagram.make(shape.n, shape.m, blocks)


def family_monoid_cayley(f: Family, n: int, mp: MonoidParams):
    """Cayley table of the decorated monoid with all evaluations 1.

    Returns (elements, CayleyMonoid).  Guarded by the Green's size limit.
    """
    from .msmall import CayleyMonoid
    from .errors import ResourceGuardError

    elements = enumerate_family_monoid(f, n, mp)
    if len(elements) > 5000:
        raise ResourceGuardError(
            f"decorated monoid has {len(elements)} elements; guard is 5000"
        )
    evals = algebra.all_ones_evals(mp)
    mono = CayleyMonoid.from_op(
        elements, lambda x, y: algebra.monoid_compose(x, y, mp, evals)
    )
    return elements, mono


def predicted_cells(elements: list[Diagram], f: Family, mp: MonoidParams):
    """Combinatorial prediction of the decorated monoid's Green cells.

    Every cell lives inside one through-strand layer; within the layer
    the factorization data separates cells further: two elements share a
    J-cell iff their middles are J-equivalent in the sandwiched monoid,
    an L-cell iff additionally the bottoms agree (with L-equivalent
    middles), dually for R, and an H-cell iff bottom, top and the
    middle's H-class all agree.  Returns predicted (L, R, J, H) index
    partitions in the same format as greens_cells_bruteforce.
    """
    from .msmall import greens_cells_bruteforce as greens
    from .msmall import CayleyMonoid, wreath_mul

    lambdas = sorted({through_strands(d) for d in elements})
    middle_class: dict[int, tuple] = {}
    facts = {}
    for idx, d in enumerate(elements):
        facts[idx] = factorize(d, mp)
    for lam in lambdas:
        mids = list(wreath_elements(mp, lam, planar=f.planar))
        mono = CayleyMonoid.from_op(mids, lambda x, y: wreath_mul(x, y, mp))
        cells = greens(mono)
        index = {m: i for i, m in enumerate(mids)}

        def class_map(partition):
            out = {}
            for ci, cell in enumerate(partition):
                for v in cell:
                    out[v] = ci
            return out

        l_of, r_of, j_of, h_of = (
            class_map(cells.l_cells),
            class_map(cells.r_cells),
            class_map(cells.j_cells),
            class_map(cells.h_cells),
        )
        for idx, d in enumerate(elements):
            if through_strands(d) != lam:
                continue
            mid = index[facts[idx].middle]
            middle_class[idx] = (lam, l_of[mid], r_of[mid], j_of[mid], h_of[mid])

    def group(key_fn):
        acc: dict = {}
        for idx in range(len(elements)):
            acc.setdefault(key_fn(idx), []).append(idx)
        return sorted(sorted(v) for v in acc.values())

    l_cells = group(lambda i: (facts[i].bottom, middle_class[i][0], middle_class[i][1]))
    r_cells = group(lambda i: (facts[i].top, middle_class[i][0], middle_class[i][2]))
    j_cells = group(lambda i: (middle_class[i][0], middle_class[i][3]))
    h_cells = group(
        lambda i: (facts[i].bottom, facts[i].top, middle_class[i][0], middle_class[i][4])
    )
    return l_cells, r_cells, j_cells, h_cells
