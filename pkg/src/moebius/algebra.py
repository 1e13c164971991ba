"""The linear diagram calculus: rational combinations of diagrams,
composition with closed-component evaluation and handle linearization,
plus the 0/1-valued monoid composition mode.

Composition stacks f on top of g (f o g applies g first): g's top is
identified with f's bottom, blocks merge by union-find, decorations add
on merged blocks, and every block without boundary nodes evaluates to a
series coefficient which multiplies the term.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import Diagram, reduce_mob_pair, render_diagram
from .errors import PreconditionError
from .params import (
    MonoidParams,
    ParamSet,
    Rat,
    format_rational,
    handle_reduce_monoid,
    series_coeff,
)


def evaluate_closed(dec: tuple[int, int], ps: ParamSet) -> Rat:
    """Value of a boundary-free component with decoration (h, mob).

    The crosscap count is first reduced into {0, 1, 2} (raising h), then
    the component reads alpha_h / beta_h / gamma_h for mob = 0 / 1 / 2.
    The raw h may exceed K; by the series recurrence this equals the
    handle-expanded evaluation.
    """
    h, mob = reduce_mob_pair(*dec)
    kind = ("alpha", "beta", "gamma")[mob]
    return series_coeff(ps, kind, h)


# ---------------------------------------------------------------------------
# linear combinations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinComb:
    """Finite rational combination of diagrams with common boundary."""

    n: int
    m: int
    terms: tuple[tuple[Diagram, Rat], ...]  # canonically sorted, no zeros

    @staticmethod
    def make(n: int, m: int, term_map: dict[Diagram, Rat]) -> "LinComb":
        items = []
        for d, c in term_map.items():
            if c == 0:
                continue
            if d.n != n or d.m != m:
                raise PreconditionError("all diagrams in a combination share boundaries")
            items.append((d, Fraction(c)))
        items.sort(key=lambda t: t[0].sort_key())
        return LinComb(n, m, tuple(items))

    @staticmethod
    def from_diagram(d: Diagram, coeff=1) -> "LinComb":
        return LinComb.make(d.n, d.m, {d: Fraction(coeff)})

    def term_dict(self) -> dict[Diagram, Rat]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def single(self) -> tuple[Diagram, Rat]:
        if len(self.terms) != 1:
            raise PreconditionError("combination is not a single term")
        return self.terms[0]

    def to_json(self) -> list[list[str]]:
        return [[render_diagram(d), format_rational(c)] for d, c in self.terms]


def lincomb_add(x: LinComb, y: LinComb) -> LinComb:
    if (x.n, x.m) != (y.n, y.m):
        raise PreconditionError("boundary mismatch in addition")
    acc = dict(x.terms)
    for d, c in y.terms:
        acc[d] = acc.get(d, Fraction(0)) + c
    return LinComb.make(x.n, x.m, acc)


def lincomb_scale(x: LinComb, c) -> LinComb:
    c = Fraction(c)
    return LinComb.make(x.n, x.m, {d: c * v for d, v in x.terms})


def equal(x: LinComb, y: LinComb) -> bool:
    """Structural equality of canonical forms."""
    return (x.n, x.m) == (y.n, y.m) and x.terms == y.terms


def lincomb_star(x: LinComb) -> LinComb:
    from .diagram import star

    return LinComb.make(x.m, x.n, {star(d): c for d, c in x.terms})


def lincomb_tensor(x: LinComb, y: LinComb) -> LinComb:
    from .diagram import tensor

    acc: dict[Diagram, Rat] = {}
    for d1, c1 in x.terms:
        for d2, c2 in y.terms:
            d = tensor(d1, d2)
            acc[d] = acc.get(d, Fraction(0)) + c1 * c2
    return LinComb.make(x.n + y.n, x.m + y.m, acc)


# ---------------------------------------------------------------------------
# diagram merging (shared by linear and monoid composition)
# ---------------------------------------------------------------------------


def _merge_diagrams(f: Diagram, g: Diagram):
    """Stack f over g.  Returns (open blocks, closed decorations).

    Open blocks are (nodes, h, mob) over the result boundary (g.n bottom,
    f.m top); closed decorations are (h, mob) pairs of components that
    lost all boundary nodes.
    """
    if g.m != f.n:
        raise PreconditionError(
            f"boundary mismatch: cannot stack {f.n}->{f.m} on top of {g.n}->{g.m}"
        )
    # node ids: result bottom i -> ('b', i); result top j -> ('t', j);
    # interface k (g top = f bottom) -> ('i', k)
    parent: dict = {}

    def find(v):
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def union(u, v):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[rv] = ru

    def add(v):
        if v not in parent:
            parent[v] = v

    def g_node(v):
        return ("b", v) if v > 0 else ("i", -v)

    def f_node(v):
        return ("i", v) if v > 0 else ("t", -v)

    tagged = []
    for nodes, h, mob in g.blocks:
        mapped = [g_node(v) for v in nodes]
        tagged.append((mapped, h, mob))
    for nodes, h, mob in f.blocks:
        mapped = [f_node(v) for v in nodes]
        tagged.append((mapped, h, mob))
    for mapped, _, _ in tagged:
        for v in mapped:
            add(v)
        for v in mapped[1:]:
            union(mapped[0], v)

    dec: dict = {}
    for mapped, h, mob in tagged:
        root = find(mapped[0])
        dh, dm = dec.get(root, (0, 0))
        dec[root] = (dh + h, dm + mob)

    members: dict = {}
    for v in parent:
        members.setdefault(find(v), []).append(v)

    open_blocks = []
    closed = []
    for root, vs in members.items():
        boundary = [v for kind, v in vs if kind == "b"] + [
            -v for kind, v in vs if kind == "t"
        ]
        h, mob = dec[root]
        if boundary:
            open_blocks.append((tuple(boundary), h, mob))
        else:
            closed.append((h, mob))
    return open_blocks, closed


# ---------------------------------------------------------------------------
# linear composition with handle expansion
# ---------------------------------------------------------------------------


def _expand_handles(blocks: list, coeff: Rat, ps: ParamSet, acc: dict, n: int, m: int):
    """Rewrite blocks with h >= K one at a time until all handle counts
    drop below K; terminates since each rewrite lowers that block's h."""
    for idx, (nodes, h, mob) in enumerate(blocks):
        if h >= ps.K:
            for i in range(1, ps.M_deg + 1):
                ai = ps.handle_coeffs[i - 1]
                if ai == 0:
                    continue
                nxt = list(blocks)
                nxt[idx] = (nodes, h - i, mob)
                _expand_handles(nxt, coeff * (-1) ** (i + 1) * ai, ps, acc, n, m)
            return
    d = Diagram.make(n, m, blocks)
    acc[d] = acc.get(d, Fraction(0)) + coeff


def compose_diagrams(f: Diagram, g: Diagram, ps: ParamSet) -> LinComb:
    """Composition of basis diagrams in the linear calculus."""
    open_blocks, closed = _merge_diagrams(f, g)
    coeff = Fraction(1)
    for dec in closed:
        coeff *= evaluate_closed(dec, ps)
        if coeff == 0:
            return LinComb.make(g.n, f.m, {})
    normalized = [(nodes,) + reduce_mob_pair(h, mob) for nodes, h, mob in open_blocks]
    acc: dict[Diagram, Rat] = {}
    _expand_handles(normalized, coeff, ps, acc, g.n, f.m)
    return LinComb.make(g.n, f.m, acc)


def compose(f: LinComb, g: LinComb, ps: ParamSet) -> LinComb:
    """Bilinear extension of diagram composition: f o g, g applied first."""
    if g.m != f.n:
        raise PreconditionError(
            f"boundary mismatch: cannot compose {f.n}->{f.m} with {g.n}->{g.m}"
        )
    acc: dict[Diagram, Rat] = {}
    for df, cf in f.terms:
        for dg, cg in g.terms:
            part = compose_diagrams(df, dg, ps)
            scale = cf * cg
            for d, c in part.terms:
                acc[d] = acc.get(d, Fraction(0)) + scale * c
    return LinComb.make(g.n, f.m, acc)


# ---------------------------------------------------------------------------
# monoid mode: evaluations restricted to {0, 1}, formal zero as None
# ---------------------------------------------------------------------------

MonoidEvals = dict[tuple[int, int], int]  # (mob in {0,1,2}, h in [0,K)) -> 0/1


def all_ones_evals(mp: MonoidParams) -> MonoidEvals:
    return {(mob, h): 1 for mob in range(3) for h in range(mp.K)}


def monoid_compose(
    x: Diagram | None, y: Diagram | None, mp: MonoidParams, evals: MonoidEvals
) -> Diagram | None:
    """Composition in the monoid with adjoined formal zero (None).

    Closed components look up their 0/1 value; any 0 collapses the
    product to the formal zero.  Handle counts reduce by h -> h - r.
    """
    for v in evals.values():
        if v not in (0, 1):
            raise PreconditionError("monoid evaluation table must be 0/1-valued")
    if x is None or y is None:
        return None
    open_blocks, closed = _merge_diagrams(x, y)
    for dec in closed:
        h, mob = reduce_mob_pair(*dec)
        h = handle_reduce_monoid(h, mp)
        if evals[(mob, h)] == 0:
            return None
    blocks = []
    for nodes, h, mob in open_blocks:
        h, mob = reduce_mob_pair(h, mob)
        blocks.append((nodes, handle_reduce_monoid(h, mp), mob))
    return Diagram.make(y.n, x.m, blocks)
