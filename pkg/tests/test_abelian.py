import math
import random

import pytest

from groupcomplexity import (
    abelian_invariants,
    bounds_report,
    largest_root,
    make_presentation,
    parse_presentation,
    smith_normal_form,
)
from groupcomplexity.abelian import (
    AbelianInvariants,
    NoRootError,
    RelationMatrix,
    complexity_lower_bound,
    manifold_group_bounds,
    matrix_norm,
    per_relator_bound_check,
    relation_matrix,
    t_lower_bound,
)

from conftest import snf_minors_oracle


def _snf(entries):
    rows = len(entries)
    cols = len(entries[0]) if rows else 0
    return smith_normal_form(RelationMatrix(rows, cols,
                                            tuple(tuple(r) for r in entries)))


def test_smith_normal_form_known_cases():
    inv = _snf([[2, 0], [0, 3]])
    assert inv.diagonal == (1, 6)
    assert inv.free_rank == 0

    inv = _snf([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    assert inv.diagonal == (2, 2, 156)

    inv = _snf([[1, 0, 0], [0, 0, 0]])
    assert inv.diagonal == (1,)
    assert inv.free_rank == 2

    inv = _snf([[0, 0], [0, 0]])
    assert inv.diagonal == ()
    assert inv.free_rank == 2


def test_smith_normal_form_against_minors_oracle():
    rng = random.Random(42)
    for _ in range(1000):
        rows = rng.randrange(1, 4)
        cols = rng.randrange(1, 4)
        entries = [[rng.randrange(-9, 10) for _ in range(cols)]
                   for _ in range(rows)]
        inv = _snf(entries)
        factors, free_rank = snf_minors_oracle(entries, rows, cols)
        assert inv.diagonal == factors, entries
        assert inv.free_rank == free_rank, entries
        for a, b in zip(inv.diagonal, inv.diagonal[1:]):
            assert b % a == 0


def test_abelian_invariants_validation():
    with pytest.raises(ValueError):
        AbelianInvariants((4, 6), 0)
    assert AbelianInvariants((2, 6), 0).torsion_order == 12


def test_relation_matrix_and_norm():
    pres = make_presentation(["a", "b"], [(1, 1, -2), (2, 1, -1, 2)])
    mat = relation_matrix(pres)
    assert mat.entries == ((2, -1), (0, 2))
    assert matrix_norm(mat) == 5


def test_abelian_invariants_of_presentations():
    z147 = parse_presentation(
        "gens a b c d\nrel a^4 b c^4\nrel b^3 c^-1\nrel a^2 d^3 b^-1\nrel a^3 d^-1\n")
    inv = abelian_invariants(z147)
    assert inv.free_rank == 0
    assert inv.torsion_order == 147
    assert sum(1 for d in inv.diagonal if d > 1) == 1

    free = make_presentation(["a", "b"], [])
    assert abelian_invariants(free).free_rank == 2


def test_complexity_lower_bound():
    low2, low3 = complexity_lower_bound(8)
    assert low2 == pytest.approx(3.0)
    assert low3 == pytest.approx(3 * math.log(8, 3))
    assert complexity_lower_bound(1) == (0.0, 0.0)
    with pytest.raises(ValueError):
        complexity_lower_bound(0)


def test_t_lower_bound_uses_odd_part():
    assert t_lower_bound(96) == pytest.approx(1.0)  # odd part 3
    assert t_lower_bound(8) == 0.0
    assert t_lower_bound(27) == pytest.approx(3.0)


def test_per_relator_bound_check():
    pres = parse_presentation("rel b^-1 a^2\nrel b^3\n")
    lhs, rhs, holds = per_relator_bound_check(pres)
    assert holds
    assert lhs == pytest.approx(math.log2(6))
    assert rhs == pytest.approx(math.log2(3) + math.log2(3))


def test_bounds_report_contents():
    pres = parse_presentation("rel a^6\n")
    report = bounds_report(pres)
    assert report.value("lower-c") == pytest.approx(3 * math.log(6, 3))
    assert report.value("upper-c") == 6.0
    assert report.value("upper-T") == 4.0
    assert dict(report.inputs)["torsion"] == 6
    rules = {e.rule for e in report.entries}
    assert "log2-of-torsion" in rules and "presentation-length" in rules


def test_manifold_group_bounds():
    report = manifold_group_bounds(n_vertices=4, c_manifold=5)
    assert report.value("upper-c") == 15.0
    assert report.value("upper-T") == 10.0
    with pytest.raises(ValueError):
        manifold_group_bounds(n_vertices=-1)


def test_largest_root_values():
    assert largest_root(4, 0) == pytest.approx(16.0, abs=1e-9)
    root = largest_root(4, 29)
    assert 51 < root < 52
    # x = 4*log2(x) also has a smaller root, bracketed inside (1, 2)
    f = lambda x: 4 * math.log2(x) - x
    assert f(1.0) < 0 < f(2.0)


def test_largest_root_errors():
    with pytest.raises(NoRootError):
        largest_root(1, -10)
    with pytest.raises(ValueError):
        largest_root(0, 1)


def test_largest_root_satisfies_equation():
    for a, c in ((4.0, 0.0), (4.0, 29.0), (2.5, 3.0), (1.7, 5.0)):
        x = largest_root(a, c)
        assert x == pytest.approx(a * math.log2(x) + c, abs=1e-6)
