"""Command-line surface.

Every subcommand prints one JSON document: an envelope with the input
echo, a format version, the result, and timing metadata (suppressed by
--stable so that repeated runs are byte-identical).  CSV is available
for matrices and tables via --output csv.

Exit codes: 0 success, 2 parse error, 3 precondition violation,
4 resource guard, 5 failed internal self-check.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import algebra, cells, gram, msmall, repcount
from .diagram import (
    factorize,
    normalize_handles,
    normalize_mob,
    parse_diagram,
    render_diagram,
    star,
    tensor,
    through_strands,
)
from .errors import (
    InternalCheckError,
    ParseError,
    PreconditionError,
    ResourceGuardError,
)
from .families import Family, admissible_lambdas, family_from_name
from .params import (
    MonoidParams,
    format_rational,
    monoid_params_of,
    params_from_json,
    parse_rational,
    validate_params,
)

FORMAT_VERSION = 1


def _load_params(path: str):
    try:
        with open(path) as fh:
            return params_from_json(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read parameter file {path}: {exc}") from None


def _cache_dir(args) -> str | None:
    return getattr(args, "cache_dir", None) or os.environ.get("MOEBIUS_CACHE_DIR")


def _emit(args, result: dict, started: float) -> None:
    envelope = {
        "command": args.command,
        "format_version": FORMAT_VERSION,
        "input": {
            k: v
            for k, v in vars(args).items()
            if k not in ("command", "func", "stable", "output") and v is not None
        },
        "result": result,
    }
    if not args.stable:
        envelope["timing_ms"] = round((time.time() - started) * 1000, 3)
    json.dump(envelope, sys.stdout, sort_keys=True, default=str)
    sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------


def cmd_compose(args, t0):
    ps = _load_params(args.params)
    d1 = parse_diagram(args.diagram1)
    d2 = parse_diagram(args.diagram2)
    out = algebra.compose(
        algebra.LinComb.from_diagram(d1), algebra.LinComb.from_diagram(d2), ps
    )
    _emit(args, {"n": out.n, "m": out.m, "terms": out.to_json()}, t0)


def cmd_normalize(args, t0):
    d = normalize_mob(parse_diagram(args.diagram))
    if args.K is not None and args.r is not None:
        d = normalize_handles(d, MonoidParams(args.K, args.r))
    _emit(args, {"diagram": render_diagram(d)}, t0)


def cmd_tensor(args, t0):
    d = tensor(parse_diagram(args.diagram1), parse_diagram(args.diagram2))
    _emit(args, {"diagram": render_diagram(d)}, t0)


def cmd_star(args, t0):
    _emit(args, {"diagram": render_diagram(star(parse_diagram(args.diagram)))}, t0)


def cmd_factorize(args, t0):
    mp = MonoidParams(args.K, args.r)
    fact = factorize(normalize_mob(parse_diagram(args.diagram)), mp)
    _emit(
        args,
        {
            "lambda": fact.lambda_ts,
            "bottom": render_diagram(fact.bottom),
            "top": render_diagram(fact.top),
            "middle": {
                "perm": list(fact.middle.perm),
                "strands": [[s.i, s.j] for s in fact.middle.strands],
            },
        },
        t0,
    )


def cmd_member(args, t0):
    d = parse_diagram(args.diagram)
    from .diagram import is_member

    if args.family:
        fam = family_from_name(args.family)
        result = {fam.value: is_member(d, fam)}
    else:
        result = {f.value: is_member(d, f) for f in Family}
    _emit(args, result, t0)


DIMS_GUARD = 2_000_000


def cmd_dims(args, t0):
    fam = family_from_name(args.family)
    cache = _cache_dir(args)
    table = {}
    for lam in admissible_lambdas(fam, args.n):
        val = repcount.dim_left_cell(fam, args.n, lam, args.K, check=False)
        if args.check:
            if val > DIMS_GUARD:
                raise ResourceGuardError(
                    f"enumeration of {val} halves exceeds the guard {DIMS_GUARD}"
                )
            enum = len(
                cells.enumerate_half_diagrams(fam, args.n, lam, args.K, cache_dir=cache)
            )
            if enum != val:
                raise InternalCheckError(
                    f"closed form {val} != enumeration {enum} at lambda={lam}"
                )
        table[str(lam)] = val
    if args.output == "csv":
        for lam, val in table.items():
            sys.stdout.write(f"{lam},{val}\n")
        return
    _emit(args, {"dims": table, "checked": bool(args.check)}, t0)


def cmd_cells(args, t0):
    fam = family_from_name(args.family)
    mp = MonoidParams(args.K, args.r)
    elements, mono = cells.family_monoid_cayley(fam, args.n, mp)
    greens = msmall.greens_cells_bruteforce(mono)
    pl, pr, pj, ph = cells.predicted_cells(elements, fam, mp)
    j_constant_through = all(
        len({through_strands(elements[i]) for i in cell}) == 1
        for cell in greens.j_cells
    )
    _emit(
        args,
        {
            "elements": len(elements),
            "j_cell_sizes": sorted(len(c) for c in greens.j_cells),
            "l_cells": len(greens.l_cells),
            "r_cells": len(greens.r_cells),
            "h_cells": len(greens.h_cells),
            "j_cells_constant_through_strands": j_constant_through,
            "cells_match_factorization_prediction": (
                sorted(sorted(c) for c in greens.l_cells) == pl
                and sorted(sorted(c) for c in greens.r_cells) == pr
                and sorted(sorted(c) for c in greens.j_cells) == pj
                and sorted(sorted(c) for c in greens.h_cells) == ph
            ),
        },
        t0,
    )


def cmd_apex(args, t0):
    fam = family_from_name(args.family)
    pattern = cells.ZeroPattern(args.zero_pattern)
    result = cells.apex_set(fam, args.n, pattern)
    _emit(args, {"apexes": sorted(result.apexes)}, t0)


IDEMPOTENT_GUARD = 200_000


def cmd_idempotents(args, t0):
    fam = family_from_name(args.family)
    ps = _load_params(args.params)
    mp = monoid_params_of(ps)
    report = {}
    for lam in admissible_lambdas(fam, args.n):
        size = repcount.dim_left_cell(fam, args.n, lam, mp.K)
        middles = (3 * mp.K) ** lam
        if not fam.planar:
            for i in range(2, lam + 1):
                middles *= i
        if size * size * middles > IDEMPOTENT_GUARD:
            raise ResourceGuardError(
                f"J-cell at lambda={lam} has {size * size * middles} elements"
            )
        jcell = cells.build_jcell(fam, args.n, lam, mp)
        found = cells.find_strict_idempotent(jcell, ps)
        report[str(lam)] = (
            None
            if found is None
            else {"element": render_diagram(found[0]), "scalar": format_rational(found[1])}
        )
    _emit(args, {"strict_idempotents": report}, t0)


def cmd_monoid_m(args, t0):
    rep = msmall.m_cell_structure(MonoidParams(args.K, args.r))
    _emit(args, rep.__dict__, t0)


def cmd_conjugacy(args, t0):
    if args.sym is not None:
        mono = msmall.symmetric_group_cayley(args.sym)
        label = f"S_{args.sym}"
    else:
        mp = MonoidParams(args.K, args.r)
        if args.wreath_lambda:
            mono = msmall.wreath_cayley(mp, args.wreath_lambda)
            label = f"M({args.K},{args.r}) wr S_{args.wreath_lambda}"
        else:
            mono = msmall.cayley_of_m(mp)
            label = f"M({args.K},{args.r})"
    classes = msmall.generalized_conjugacy_classes(mono)
    result = {
        "monoid": label,
        "size": mono.size,
        "class_count": len(classes),
        "class_sizes": sorted(len(c) for c in classes),
    }
    if mono.size <= 60:
        result["classes"] = [
            sorted(str(mono.elements[v]) for v in cls) for cls in classes
        ]
    _emit(args, result, t0)


WREATH_TYPES_GUARD = 500_000


def cmd_wreath_types(args, t0):
    mp = MonoidParams(args.K, args.r)
    lam = args.lam
    total = (3 * mp.K) ** lam
    for i in range(2, lam + 1):
        total *= i
    if total > WREATH_TYPES_GUARD:
        raise ResourceGuardError(f"wreath product has {total} elements")
    classes = msmall.m_conjugacy_classes(mp)
    types = {
        msmall.wreath_type(w, classes, mp)
        for w in msmall.wreath_elements(mp, lam)
    }
    predicted = msmall.count_types(lam, len(classes))
    _emit(
        args,
        {
            "distinct_types": len(types),
            "predicted": predicted,
            "agree": len(types) == predicted,
        },
        t0,
    )


def cmd_count_simples(args, t0):
    fam = family_from_name(args.family)
    if args.field == "fp":
        if args.p is None:
            raise PreconditionError("--field fp needs --p")
        field = repcount.prime_field(args.p)
    elif args.field == "rationals":
        field = repcount.RATIONALS
    else:
        field = repcount.CHAR0_ALG_CLOSED
    query = repcount.SimpleCountQuery(fam, args.n, args.lam, field, args.r)
    result = repcount.count_simples(query)
    _emit(args, {"count": result.count, "exact": result.exact}, t0)


def cmd_gram(args, t0):
    fam = family_from_name(args.family)
    ps = _load_params(args.params)
    matrix = gram.gram_matrix(fam, args.n, args.lam, ps, cache_dir=_cache_dir(args))
    if args.order == "mob-grouped":
        matrix = gram.permute_matrix(matrix, gram.mob_grouped_order(matrix.row_labels))
    report = gram.exact_rank(matrix)
    condition = None
    prediction = None
    mp = monoid_params_of(ps)
    if mp.K == 1 and fam in (Family.ROOK, Family.PLANAR_ROOK):
        a0, b0, g0 = ps.p_alpha, ps.p_beta, ps.p_gamma
        vals = [p[0] if p else Fraction(0) for p in (a0, b0, g0)]
        condition = gram.gramcond_check(args.n, args.lam, *vals)
        if condition:
            from math import comb

            prediction = comb(args.n, args.lam) * 3 ** (args.n - args.lam)
    if args.output == "csv":
        sys.stdout.write(gram.gram_to_csv(matrix))
        return
    payload = gram.gram_to_json(matrix)
    payload.update(
        {
            "dim": len(matrix.entries),
            "rank": report.rank,
            "det": None if report.det is None else format_rational(report.det),
            "condition_holds": condition,
            "closed_form_prediction": prediction,
        }
    )
    if args.no_matrix:
        payload.pop("entries")
        payload.pop("rows")
        payload.pop("cols")
    _emit(args, payload, t0)


def cmd_rank(args, t0):
    try:
        with open(args.matrix) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read matrix file: {exc}") from None
    if args.matrix.endswith(".json"):
        try:
            data = json.loads(text)
            rows = [[parse_rational(str(x)) for x in row] for row in data]
        except (json.JSONDecodeError, TypeError) as exc:
            raise ParseError(f"bad matrix JSON: {exc}") from None
    else:
        rows = gram.matrix_from_csv(text)
    rep = gram.exact_rank(rows)
    _emit(
        args,
        {
            "rank": rep.rank,
            "det": None if rep.det is None else format_rational(rep.det),
        },
        t0,
    )


def cmd_gram_det(args, t0):
    a0 = parse_rational(args.alpha0)
    b0 = parse_rational(args.beta0)
    g0 = parse_rational(args.gamma0)
    value = gram.gram_det_closed_form_rook0(args.n, a0, b0, g0)
    result = {"det": format_rational(value)}
    if args.check:
        if args.n > 4:
            raise ResourceGuardError("--check is limited to n <= 4")
        ps = validate_params([a0], [b0], [g0], [1, -1], allow_zero_alpha=True)
        brute = gram.exact_rank(gram.gram_matrix(Family.ROOK, args.n, 0, ps)).det
        result["brute"] = format_rational(brute)
        if brute != value:
            raise InternalCheckError(
                f"closed form {value} disagrees with brute determinant {brute}"
            )
        result["agree"] = True
    _emit(args, result, t0)


def cmd_deligne(args, t0):
    delta, plus, minus = repcount.deligne_parameters(
        parse_rational(args.alpha0),
        parse_rational(args.beta0),
        parse_rational(args.gamma0),
        parse_rational(args.lam),
        parse_rational(args.sqrt_lam),
    )
    _emit(
        args,
        {
            "delta": format_rational(delta),
            "delta_plus": format_rational(plus),
            "delta_minus": format_rational(minus),
        },
        t0,
    )


def cmd_selftest(args, t0):
    import random

    checks = []

    def check(name, fn):
        try:
            fn()
            checks.append((name, True))
        except Exception:
            checks.append((name, False))

    def roexp():
        ps = validate_params([2], [0], [1], [1, -1])
        matrix = gram.gram_matrix(Family.ROOK, 1, 0, ps)
        rep = gram.exact_rank(matrix)
        assert rep.rank == 3 and rep.det == 1

    def monoid():
        rep = msmall.m_cell_structure(MonoidParams(4, 3))
        assert rep.matches_prediction

    def dims():
        assert repcount.dim_left_cell(Family.TEMPERLEY_LIEB, 3, 1, 2, check=True) == 12

    def assoc():
        rng = random.Random(args.seed)
        ps = validate_params([1, 1], [1], [1], [1, 0, -1])
        from .diagram import Diagram

        def rand_diagram(n):
            ids = list(range(1, n + 1)) + [-j for j in range(1, n + 1)]
            rng.shuffle(ids)
            blocks = []
            while ids:
                size = rng.randint(1, min(3, len(ids)))
                nodes, ids = ids[:size], ids[size:]
                blocks.append((tuple(nodes), rng.randint(0, 2), rng.randint(0, 2)))
            return Diagram.make(n, n, blocks)

        for _ in range(20):
            x, y, z = (algebra.LinComb.from_diagram(rand_diagram(3)) for _ in range(3))
            lhs = algebra.compose(algebra.compose(x, y, ps), z, ps)
            rhs = algebra.compose(x, algebra.compose(y, z, ps), ps)
            assert algebra.equal(lhs, rhs)

    check("roexp-rank", roexp)
    check("monoid-cells", monoid)
    check("dims-anchor", dims)
    check("associativity", assoc)
    ok = all(passed for _, passed in checks)
    _emit(args, {"checks": dict(checks), "ok": ok}, t0)
    if not ok:
        raise InternalCheckError("selftest failed")


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moebius",
        description="exact computations with decorated partition diagram algebras",
    )
    parser.add_argument("--stable", action="store_true", help="omit timing metadata")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=fn, output="json")
        return p

    p = add("compose", cmd_compose, help="compose two diagram literals")
    p.add_argument("diagram1")
    p.add_argument("diagram2")
    p.add_argument("--params", required=True)

    p = add("normalize", cmd_normalize, help="crosscap/handle normal form")
    p.add_argument("diagram")
    p.add_argument("--K", type=int)
    p.add_argument("--r", type=int)

    p = add("tensor", cmd_tensor, help="horizontal juxtaposition")
    p.add_argument("diagram1")
    p.add_argument("diagram2")

    p = add("star", cmd_star, help="reflect about the horizontal")
    p.add_argument("diagram")

    p = add("factorize", cmd_factorize, help="top/middle/bottom factorization")
    p.add_argument("diagram")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--r", type=int, required=True)

    p = add("member", cmd_member, help="family membership")
    p.add_argument("diagram")
    p.add_argument("--family")

    p = add("dims", cmd_dims, help="left-cell dimension table")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--check", action="store_true")
    p.add_argument("--output", choices=["json", "csv"], default="json")
    p.add_argument("--cache-dir")

    p = add("cells", cmd_cells, help="brute-force Green's cells of a decorated monoid")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--K", type=int, default=1)
    p.add_argument("--r", type=int, default=1)

    p = add("apex", cmd_apex, help="apex set for a zero pattern")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--zero-pattern", choices=["all-zero", "some-nonzero"], required=True
    )

    p = add("idempotents", cmd_idempotents, help="strict idempotents per cell")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--params", required=True)

    p = add("monoid-m", cmd_monoid_m, help="cell structure of M(K, r)")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--r", type=int, required=True)

    p = add("conjugacy", cmd_conjugacy, help="generalized conjugacy classes")
    p.add_argument("--K", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--wreath-lambda", type=int)
    p.add_argument("--sym", type=int, help="use the symmetric group S_n instead")

    p = add("wreath-types", cmd_wreath_types, help="distinct type matrices")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)

    p = add("count-simples", cmd_count_simples, help="simple-module counts")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--field", choices=["char0bar", "rationals", "fp"], required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--r", type=int, required=True)

    p = add("gram", cmd_gram, help="Gram matrix, rank, determinant")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--params", required=True)
    p.add_argument("--order", choices=["canonical", "mob-grouped"], default="canonical")
    p.add_argument("--no-matrix", action="store_true")
    p.add_argument("--output", choices=["json", "csv"], default="json")
    p.add_argument("--cache-dir")

    p = add("rank", cmd_rank, help="exact rank of a matrix file (csv or json)")
    p.add_argument("--matrix", required=True)

    p = add("gram-det", cmd_gram_det, help="closed-form rook determinant at lambda=0")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha0", required=True)
    p.add_argument("--beta0", required=True)
    p.add_argument("--gamma0", required=True)
    p.add_argument("--check", action="store_true")

    p = add("deligne", cmd_deligne, help="interpolation-category parameters")
    p.add_argument("--alpha0", required=True)
    p.add_argument("--beta0", required=True)
    p.add_argument("--gamma0", required=True)
    p.add_argument("--lam", required=True)
    p.add_argument("--sqrt-lam", required=True)

    p = add("selftest", cmd_selftest, help="run fast internal checks")
    p.add_argument("--seed", type=int, default=0)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.time()
    try:
        args.func(args, t0)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 3
    except ResourceGuardError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return 4
    except InternalCheckError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 5
    return 0


if __name__ == "__main__":
    sys.exit(main())
