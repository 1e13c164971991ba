"""Linear composition, closed-component evaluation, handle linearization,
and the 0/1 monoid mode, cross-checked against an independent classical
partition-composition oracle."""
import random
from fractions import Fraction

import pytest

from moebius import (
    Family,
    LinComb,
    MonoidParams,
    PreconditionError,
    all_ones_evals,
    compose,
    compose_diagrams,
    equal,
    evaluate_closed,
    monoid_compose,
    parse_diagram,
    series_coeff,
    star,
    through_strands,
    validate_params,
)
from moebius.algebra import lincomb_scale, lincomb_star, lincomb_tensor
from moebius.diagram import is_member

from conftest import (
    family_shapes,
    oracle_compose,
    random_family_diagram,
    random_paramsets,
)

A = "6;6;{1,2'}[0,0]|{2,4,5}[0,0]|{3,3'}[0,0]|{6,1',4',6'}[0,0]|{5'}[0,0]"
B = "6;6;{1,1'}[0,0]|{2,4,5}[0,0]|{3}[0,0]|{6,2',4',6'}[0,0]|{3'}[0,0]|{5'}[0,0]"


def lc(text):
    return LinComb.from_diagram(parse_diagram(text))


def test_evaluate_closed_examples(ps_geometric_2):
    assert evaluate_closed((0, 0), ps_geometric_2) == 2  # alpha_0
    assert evaluate_closed((1, 1), ps_geometric_2) == series_coeff(ps_geometric_2, "beta", 1)
    # three crosscaps rewrite to one handle + one crosscap
    assert evaluate_closed((0, 3), ps_geometric_2) == series_coeff(ps_geometric_2, "beta", 1)


def test_compose_partition_example(ps_geometric_2):
    out = compose(lc(A), lc(B), ps_geometric_2)
    want = lc(
        "6;6;{1,2'}[0,0]|{2,4,5}[0,0]|{3}[0,0]|{6,1',4',6'}[0,0]|{3'}[0,0]|{5'}[0,0]"
    )
    assert equal(out, want)


def test_compose_hom_example():
    # closed component evaluates to alpha_0 = 1 here
    ps = validate_params([1], [1], [1], [1, -1])
    f = lc("2;3;{1,1',2'}[0,0]|{2}[0,0]|{3'}[0,0]")
    g = lc("4;2;{1,1'}[0,0]|{2,4}[0,0]|{3}[0,0]|{2'}[0,0]")
    out = compose(f, g, ps)
    want = lc("4;3;{1,1',2'}[0,0]|{2,4}[0,0]|{3}[0,0]|{3'}[0,0]")
    assert equal(out, want)


def test_compose_loop_evaluations(ps_geometric_2):
    eps = lc("1;0;{1}[0,0]")
    eta = lc("0;1;{1'}[0,0]")
    out = compose(eps, eta, ps_geometric_2)
    assert out.terms == ((parse_diagram("0;0;"), Fraction(2)),)
    # loop with 1 + 2 crosscap dots evaluates to beta_1
    out2 = compose(lc("1;0;{1}[0,1]"), lc("0;1;{1'}[0,2]"), ps_geometric_2)
    beta1 = series_coeff(ps_geometric_2, "beta", 1)
    assert out2.terms == ((parse_diagram("0;0;"), beta1),)


def test_compose_boundary_mismatch(ps_geometric_2):
    with pytest.raises(PreconditionError):
        compose(lc("2;2;{1,1'}[0,0]|{2,2'}[0,0]"), lc("3;3;{1,1'}[0,0]|{2,2'}[0,0]|{3,3'}[0,0]"), ps_geometric_2)


def test_handle_expansion_two_terms():
    # q = 1 - T - T^2 rewrites h^2 -> h^1 + h^0 on open blocks
    ps = validate_params([1, 1], [1], [1], [1, -1, -1])
    assert ps.K == 2
    d = lc("1;1;{1,1'}[2,0]")
    out = compose(d, lc("1;1;{1,1'}[0,0]"), ps)
    want = {
        parse_diagram("1;1;{1,1'}[1,0]"): Fraction(1),
        parse_diagram("1;1;{1,1'}[0,0]"): Fraction(1),
    }
    assert out.term_dict() == want


def test_equal_examples(ps_geometric_2):
    x = lc("1;1;{1,1'}[0,0]")
    assert equal(x, lincomb_scale(x, 1))
    assert not equal(x, lc("1;1;{1,1'}[0,1]"))
    y = LinComb.make(1, 1, {parse_diagram("1;1;{1,1'}[0,0]"): Fraction(1),
                           parse_diagram("1;1;{1,1'}[0,1]"): Fraction(0)})
    assert equal(x, y)


def test_monoid_compose_tl_identity():
    mp = MonoidParams(1, 1)
    evals = all_ones_evals(mp)
    e1 = parse_diagram("3;3;{1,2}[0,0]|{1',2'}[0,0]|{3,3'}[0,0]")
    e2 = parse_diagram("3;3;{2,3}[0,0]|{2',3'}[0,0]|{1,1'}[0,0]")
    out = monoid_compose(monoid_compose(e1, e2, mp, evals), e1, mp, evals)
    assert out == e1
    # independent oracle: the diagram part with all evaluations 1
    d12, _ = oracle_compose(e1, e2)
    d121, _ = oracle_compose(d12, e1)
    assert d121 == e1


def test_monoid_compose_zero_absorbs():
    mp = MonoidParams(1, 1)
    evals = all_ones_evals(mp)
    assert monoid_compose(None, parse_diagram("1;1;{1,1'}[0,0]"), mp, evals) is None
    zero_evals = {k: 0 for k in evals}
    eps = parse_diagram("1;0;{1}[0,0]")
    eta = parse_diagram("0;1;{1'}[0,0]")
    assert monoid_compose(eps, eta, mp, zero_evals) is None


def test_monoid_compose_rejects_bad_table():
    mp = MonoidParams(1, 1)
    with pytest.raises(PreconditionError):
        monoid_compose(
            parse_diagram("1;1;{1,1'}[0,0]"),
            parse_diagram("1;1;{1,1'}[0,0]"),
            mp,
            {(0, 0): 2},
        )


def _random_lincombs(rng, shapes, ps, count):
    for _ in range(count):
        yield LinComb.from_diagram(
            random_family_diagram(rng, shapes, max_h=ps.K, max_mob=4)
        )


def test_associativity_random_families():
    rng = random.Random(20240)
    paramsets = [
        validate_params([1], [1], [1], [1, -1]),
        validate_params([1, 1], [1], [1], [1, -1, -1]),
        validate_params([2], [1, 1], [0, 1], [1, 0, 0, -1]),
    ]
    for f in Family:
        shapes = family_shapes(f, 3, 3)
        for ps in paramsets:
            for _ in range(12):
                x, y, z = list(_random_lincombs(rng, shapes, ps, 3))
                lhs = compose(compose(x, y, ps), z, ps)
                rhs = compose(x, compose(y, z, ps), ps)
                assert equal(lhs, rhs), (f, ps.q)


def test_interchange_law():
    rng = random.Random(7)
    ps = validate_params([1, 1], [1], [1], [1, -1, -1])
    shapes2 = family_shapes(Family.PARTITION, 2, 2)
    for _ in range(40):
        f1, f2, g1, g2 = (
            LinComb.from_diagram(random_family_diagram(rng, shapes2, 2, 4))
            for _ in range(4)
        )
        lhs = compose(lincomb_tensor(f1, f2), lincomb_tensor(g1, g2), ps)
        rhs = lincomb_tensor(compose(f1, g1, ps), compose(f2, g2, ps))
        assert equal(lhs, rhs)


def test_star_anti_involution():
    rng = random.Random(77)
    ps = validate_params([1, 1], [1], [1], [1, -1, -1])
    shapes = family_shapes(Family.PARTITION, 3, 3)
    for _ in range(60):
        f, g = (LinComb.from_diagram(random_family_diagram(rng, shapes, 2, 4)) for _ in range(2))
        assert equal(lincomb_star(compose(f, g, ps)), compose(lincomb_star(g), lincomb_star(f), ps))


def test_eval_handle_commutation():
    rng = random.Random(5)
    for ps in random_paramsets(rng, 10, max_K=4):
        for mob in range(3):
            for h in range(ps.K, 2 * ps.K + 1):
                direct = evaluate_closed((h, mob), ps)
                expanded = sum(
                    (-1) ** (i + 1) * ps.handle_coeffs[i - 1]
                    * evaluate_closed((h - i, mob), ps)
                    for i in range(1, ps.M_deg + 1)
                )
                assert direct == expanded


def test_through_strands_bounded_by_min():
    rng = random.Random(13)
    ps = validate_params([1], [1], [1], [1, -1])
    shapes = family_shapes(Family.PARTITION, 3, 3)
    for _ in range(100):
        x = random_family_diagram(rng, shapes, 1, 4)
        y = random_family_diagram(rng, shapes, 1, 4)
        bound = min(through_strands(x), through_strands(y))
        for d, _ in compose_diagrams(x, y, ps).terms:
            assert through_strands(d) <= bound


def test_classical_composition_cross_check(ps_ones):
    # undecorated diagrams with every coefficient 1: the production
    # composition must match the classical partition calculus at delta=1
    rng = random.Random(99)
    for n in (1, 2, 3):
        shapes = family_shapes(Family.PARTITION, n, n)
        for _ in range(60):
            x, y = rng.choice(shapes), rng.choice(shapes)
            out = compose_diagrams(x, y, ps_ones)
            d, c = out.single()
            od, _ = oracle_compose(x, y)
            assert (d, c) == (od, Fraction(1))


def test_family_closure_under_composition(ps_ones):
    from moebius import tensor

    rng = random.Random(4)
    for f in Family:
        shapes = family_shapes(f, 2, 2)
        for _ in range(30):
            x = random_family_diagram(rng, shapes, 1, 4)
            y = random_family_diagram(rng, shapes, 1, 4)
            for d, _ in compose_diagrams(x, y, ps_ones).terms:
                assert is_member(d, f)
            assert is_member(star(x), f)
            assert is_member(tensor(x, y), f)


def test_lincomb_json(ps_geometric_2):
    out = compose(lc("1;0;{1}[0,0]"), lc("0;1;{1'}[0,0]"), ps_geometric_2)
    assert out.to_json() == [["0;0;", "2"]]
