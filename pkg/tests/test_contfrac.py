import math

import pytest

from groupcomplexity import (
    cf_expand,
    cf_reconstruct,
    fibonacci_pair,
    is_weak_zaremba,
    is_zaremba,
    lens_bounds,
    seifert_manifold_bounds,
    zaremba_partner_scan,
)
from groupcomplexity.contfrac import (
    cf_sum_bound_check,
    sweep_sum_bounds,
)


def test_cf_expand_known_values():
    assert cf_expand(357, 64).quotients == (5, 1, 1, 2, 1, 2, 3)
    assert cf_expand(7, 1).quotients == (7,)
    assert cf_expand(8, 5).quotients == (1, 1, 1, 2)
    exp = cf_expand(357, 64)
    assert exp.sum == 15
    assert exp.max_quotient == 5
    assert exp.is_zaremba
    assert exp.is_weak_zaremba


def test_cf_expand_errors():
    with pytest.raises(ValueError):
        cf_expand(4, 2)  # not coprime
    with pytest.raises(ValueError):
        cf_expand(3, 3)
    with pytest.raises(ValueError):
        cf_expand(3, 0)


def test_cf_round_trip_exhaustive():
    for p in range(2, 121):
        for q in range(1, p):
            if math.gcd(p, q) != 1:
                continue
            exp = cf_expand(p, q)
            assert cf_reconstruct(list(exp.quotients)) == (p, q)
            # canonical form: a single quotient, or a last quotient >= 2
            assert len(exp.quotients) == 1 or exp.quotients[-1] >= 2


def test_cf_reconstruct_errors():
    with pytest.raises(ValueError):
        cf_reconstruct([])
    with pytest.raises(ValueError):
        cf_reconstruct([2, 1])  # non-canonical tail
    with pytest.raises(ValueError):
        cf_reconstruct([3, 0, 2])


def test_zaremba_predicates():
    assert is_zaremba(5, 1)  # expansion [5]
    assert not is_zaremba(6, 1)
    assert is_zaremba(8, 5)
    assert not is_zaremba(13, 7)  # [1, 1, 6]
    assert is_weak_zaremba(13, 7)  # sum 8 <= 5 * 3
    assert not is_weak_zaremba(100, 1)


def test_cf_sum_bound_check():
    s, bound, holds = cf_sum_bound_check(8, 5)
    assert (s, holds) == (5, True)
    assert bound == pytest.approx(3 * math.log2(8))
    s, bound, holds = cf_sum_bound_check(13, 7)
    assert bound == pytest.approx(10 * math.log2(13))
    assert holds
    with pytest.raises(ValueError):
        cf_sum_bound_check(7, 1)
    with pytest.raises(ValueError):
        cf_sum_bound_check(101, 50)  # quotients [2, 50]: neither notion applies


def test_partner_scan_against_brute_force():
    for p in range(3, 61):
        best_q, best_max, ok = zaremba_partner_scan(p)
        worst = {}
        for q in range(2, p):
            if math.gcd(p, q) == 1:
                worst[q] = cf_expand(p, q).max_quotient
        expected_max = min(worst.values())
        expected_q = min(q for q, m in worst.items() if m == expected_max)
        assert (best_q, best_max) == (expected_q, expected_max), p
        assert ok == (expected_max <= 5)
    with pytest.raises(ValueError):
        zaremba_partner_scan(2)


def test_fibonacci_pair():
    assert fibonacci_pair(2) == (2, 1)
    assert fibonacci_pair(10) == (89, 55)
    p, q = fibonacci_pair(30)
    assert math.gcd(p, q) == 1
    assert cf_expand(p, q).max_quotient <= 2
    with pytest.raises(ValueError):
        fibonacci_pair(1)


def test_lens_bounds():
    b = lens_bounds(8, 5)
    assert b.hypothesis == "zaremba"
    assert b.lower == pytest.approx((2 / math.log2(5)) * 3 - 1)
    assert b.upper == pytest.approx(3 * 3 - 3)
    weak = lens_bounds(13, 7)
    assert weak.hypothesis == "weak-zaremba"
    with pytest.raises(ValueError):
        lens_bounds(101, 50)


def test_seifert_manifold_bounds():
    b = seifert_manifold_bounds(8, 5)
    assert b.hypothesis == "zaremba"
    assert b.p_below_6q is True
    assert b.lower <= b.upper
    with pytest.raises(ValueError):
        seifert_manifold_bounds(7, 1)
    with pytest.raises(ValueError):
        seifert_manifold_bounds(13, 7)


def test_sweep_matches_per_pair_loop():
    expected = {"pairs": 0, "zaremba": 0, "weak_zaremba": 0, "violations": 0}
    max_p = 200
    for p in range(3, max_p + 1):
        for q in range(2, p):
            g = math.gcd(p, q)
            exp = cf_expand(p // g, q // g)
            expected["pairs"] += 1
            expected["zaremba"] += exp.is_zaremba
            expected["weak_zaremba"] += exp.is_weak_zaremba
            bad = (exp.is_zaremba and (exp.sum > 3 * math.log2(p) + 1e-9
                                       or p >= 6 * q or not exp.is_weak_zaremba)) \
                or (exp.is_weak_zaremba and exp.sum > 10 * math.log2(p) + 1e-9)
            expected["violations"] += bad
    assert sweep_sum_bounds(max_p) == expected


def test_sweep_jobs_parity_and_validation():
    assert sweep_sum_bounds(400, chunk_pairs=5000, jobs=2) == sweep_sum_bounds(400)
    with pytest.raises(ValueError):
        sweep_sum_bounds(2)
