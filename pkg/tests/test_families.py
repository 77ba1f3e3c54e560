import math
import random
from functools import lru_cache

import pytest

from groupcomplexity import (
    MilnorSpec,
    abelian_invariants,
    abelian_presentation,
    cyclic_presentation,
    ell,
    ell_table,
    enumerate_cosets,
    length,
    milnor_bounds,
    milnor_closed_form_length,
    milnor_presentation,
)
from groupcomplexity.coset import verify_cyclic
from groupcomplexity.families import (
    STRATEGIES,
    divide_relator,
    seifert_group_bounds,
)
from groupcomplexity.presentation import make_presentation


@lru_cache(maxsize=None)
def _ell_oracle(p):
    """Unrestricted minimization over every divisor, for cross-checking the
    bounded divisor range used by the dp strategy."""
    best = p
    for q in range(2, p // 2 + 1):
        s, r = divmod(p, q)
        if s < 2:
            break
        best = min(best, q + 1 + r + _ell_oracle(s))
    return best


def test_ell_base_cases():
    assert ell(2) == 2 and ell(3) == 3
    assert ell(8, "base2") == 8
    for p in range(2, 6):
        assert ell(p, "base3") == p
    with pytest.raises(ValueError):
        ell(1)
    with pytest.raises(ValueError):
        ell(10, "base7")


def test_ell_dp_matches_unrestricted_oracle():
    for p in range(2, 501):
        assert ell(p, "dp") == _ell_oracle(p), p


def test_ell_dp_dominates_fixed_strategies():
    for p in range(2, 2001):
        dp = ell(p, "dp")
        assert dp <= ell(p, "base2")
        assert dp <= ell(p, "base3")
        assert dp <= p


def test_ell_table_matches_scalar():
    for strategy in STRATEGIES:
        table = ell_table(2000, strategy)
        for p in range(2, 2001):
            assert table[p] == ell(p, strategy), (p, strategy)
    with pytest.raises(ValueError):
        ell_table(1)


def test_divide_relator():
    pres = make_presentation(["a"], [(1,) * 13])
    out = divide_relator(pres, 0, 0, 13, 5, name="b")
    assert out.names == ("a", "b")
    assert out.relators == ((-2, 1, 1, 1, 1, 1), (2, 2, 1, 1, 1))
    # new length is 1 + old + q + r + s - count
    assert length(out) == 1 + 13 + 5 + 3 + 2 - 13

    with pytest.raises(ValueError):
        divide_relator(pres, 0, 0, 13, 1)
    mixed = make_presentation(["a", "b"], [(1, 2, 1)])
    with pytest.raises(ValueError):
        divide_relator(mixed, 0, 0, 3, 2)


def test_cyclic_presentation_lengths_match_ell():
    for strategy in STRATEGIES:
        for p in list(range(2, 200)) + [357, 1000, 4097]:
            pres = cyclic_presentation(p, strategy)
            assert length(pres) == ell(p, strategy), (p, strategy)


def test_cyclic_presentation_base2_357():
    pres = cyclic_presentation(357, "base2")
    assert pres.names == tuple("abcdefgh")
    assert pres.relators[-1] == (8, 8, 7, 6, 3, 1)
    assert length(pres) == 27


def test_cyclic_presentation_presents_the_right_group():
    for p in (2, 3, 7, 8, 57, 91, 147, 357, 1000):
        for strategy in STRATEGIES:
            verdict = verify_cyclic(cyclic_presentation(p, strategy), p)
            assert verdict.verified, (p, strategy, verdict)


def test_abelian_presentation_length_and_torsion():
    rng = random.Random(5)
    for _ in range(40):
        k = rng.randrange(1, 5)
        orders = [rng.randrange(2, 500) for _ in range(k)]
        pres = abelian_presentation(orders)
        assert length(pres) == sum(ell(p) for p in orders) + 2 * k * (k - 1)
        inv = abelian_invariants(pres)
        assert inv.free_rank == 0
        assert inv.torsion_order == math.prod(orders)
    with pytest.raises(ValueError):
        abelian_presentation([])


def test_abelian_presentation_group_order():
    for orders in ([4, 3], [2, 2], [6, 5, 7]):
        pres = abelian_presentation(orders)
        assert enumerate_cosets(pres).order == math.prod(orders)


def test_milnor_spec_validation():
    with pytest.raises(ValueError):
        MilnorSpec("Q", n=1)
    with pytest.raises(ValueError):
        MilnorSpec("Q", n=2, q=2)  # even cofactor
    with pytest.raises(ValueError):
        MilnorSpec("D", k=2, n=3)
    with pytest.raises(ValueError):
        MilnorSpec("D", k=3, n=4)  # even n
    with pytest.raises(ValueError):
        MilnorSpec("P24", q=3)  # shares a factor with the base order
    with pytest.raises(ValueError):
        MilnorSpec("P120", q=5)
    with pytest.raises(ValueError):
        MilnorSpec("Pprime", k=1)
    with pytest.raises(ValueError):
        MilnorSpec("X")
    assert MilnorSpec("Q", n=2, q=7).group_order == 56
    assert MilnorSpec("D", k=3, n=3).group_order == 24
    assert MilnorSpec("Pprime", k=2).group_order == 72


def test_milnor_presentation_q8():
    pres = milnor_presentation(MilnorSpec("Q", n=2))
    assert pres.relators == ((-1, 2, 1, 2), (-1, -1, 2, 2))
    assert length(pres) == milnor_closed_form_length(MilnorSpec("Q", n=2)) == 8
    assert enumerate_cosets(pres).order == 8


def test_milnor_closed_forms_small():
    cases = [
        (MilnorSpec("D", k=3, n=3), 15),
        (MilnorSpec("P24"), 15),
        (MilnorSpec("P48"), 16),
        (MilnorSpec("P120"), 17),
        (MilnorSpec("Pprime", k=2), ell(9) + 17),
        (MilnorSpec("Q", n=3, q=5), ell(3) + 6 + ell(5) + 8),
    ]
    for spec, expected in cases:
        assert milnor_closed_form_length(spec) == expected
        assert length(milnor_presentation(spec)) == expected


def test_milnor_bounds_consistent():
    for spec in (MilnorSpec("Q", n=2, q=7), MilnorSpec("D", k=3, n=5),
                 MilnorSpec("P24", q=5), MilnorSpec("P48", q=7),
                 MilnorSpec("P120", q=7), MilnorSpec("Pprime", k=2, q=5)):
        report = milnor_bounds(spec)
        assert report.value("lower-c") <= report.value("upper-c")


def test_seifert_group_bounds():
    report = seifert_group_bounds("Q", 8, q=5)
    assert report.value("lower-c") == pytest.approx(math.log2(5) + 2)
    assert report.value("lower-c") <= report.value("upper-c")
    assert report.value("lower-T") <= report.value("upper-T")

    report = seifert_group_bounds("D", 35, h=3, s=3)
    assert report.value("lower-c") == pytest.approx(math.log2(3) + 3)

    with pytest.raises(ValueError):
        seifert_group_bounds("Q", 8)  # q missing
    with pytest.raises(ValueError):
        seifert_group_bounds("Q", 8, q=1)
    with pytest.raises(ValueError):
        seifert_group_bounds("Q", 8, q=4)  # even q
    with pytest.raises(ValueError):
        seifert_group_bounds("Q", 13, q=7)  # 13/7 = [1, 1, 6]: not Zaremba
    with pytest.raises(ValueError):
        seifert_group_bounds("Z", 8, q=5)
