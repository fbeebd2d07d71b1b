import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import fv, level, open_anticanonical_grid
from toricd2 import (
    IncompatibleMapError,
    TensorMap,
    build_witness_map,
    d2_contains,
    extends_over_cone,
    is_diagonal_compatible,
    oracle_check,
    oracle_d2_contains,
    restrict_to_diagonal,
)
from toricd2.lattice import FracVector, enumerate_classes


def half_line_map():
    """pi_0 (x) pi_0 + pi_{1/2} (x) pi_{-1/2} in dimension 1, q = 2."""
    return TensorMap(level(2), {(fv(0, q=2), fv(0, q=2)): 1, (fv(1, q=2), fv(-1, q=2)): 1})


class TestCompatibility:
    def test_two_term_map(self):
        assert is_diagonal_compatible(half_line_map())

    def test_single_term_map(self):
        m = TensorMap(level(2), {(fv(0, q=2), fv(0, q=2)): 1})
        assert not is_diagonal_compatible(m)

    def test_zero_map(self):
        assert is_diagonal_compatible(TensorMap(level(2)))
        assert restrict_to_diagonal(TensorMap(level(2))).coeffs == {}

    def test_cancelling_class_sums(self):
        m = TensorMap(level(3), {(fv(0, q=3), fv(0, q=3)): 1, (fv(3, q=3), fv(-3, q=3)): 2})
        assert is_diagonal_compatible(m)
        assert restrict_to_diagonal(m).coeffs == {}


class TestRestriction:
    def test_two_term_map(self):
        assert restrict_to_diagonal(half_line_map()).coeffs == {fv(0, q=1): 1}

    def test_scaling(self):
        lv = level(5)
        pts = [FracVector((k,), 5) for k in range(5)]
        m = TensorMap(lv, {(a, -a): 1 for a in pts})
        assert restrict_to_diagonal(3 * m).coeffs == {fv(0, q=5): 3}

    def test_char_two(self):
        # class sums are 1 and 1 in F_2
        assert restrict_to_diagonal(half_line_map()).coeffs == {fv(0, q=2): 1}

    def test_incompatible_raises(self):
        with pytest.raises(IncompatibleMapError):
            restrict_to_diagonal(TensorMap(level(2), {(fv(0, q=2), fv(0, q=2)): 1}))


class TestExtendsOverCone:
    def test_witness_map(self, quadric):
        cert = d2_contains(quadric, level(5), fv(0, 0, q=5))
        wm = build_witness_map(fv(0, 0, q=5), cert.witnesses, level(5))
        assert extends_over_cone(wm, quadric)
        assert is_diagonal_compatible(wm)

    def test_boundary_term(self, quadric):
        m = TensorMap(level(5), {(fv(-5, -5, q=5), fv(5, 5, q=5)): 1})
        assert not extends_over_cone(m, quadric)

    def test_empty(self, quadric):
        assert extends_over_cone(TensorMap(level(5)), quadric)


class TestWitnessMap:
    def test_line(self):
        reps = {(0,): fv(0, q=2), (1,): fv(1, q=2)}
        assert build_witness_map(fv(0, q=2), reps, level(2)) == half_line_map()

    def test_incomplete(self):
        with pytest.raises(ValueError):
            build_witness_map(fv(0, q=2), {(0,): fv(0, q=2)}, level(2))


class TestOracle:
    def test_quadric_member(self, quadric):
        rep = oracle_check(quadric, level(5), fv(0, 0, q=5))
        assert rep.verdict
        assert all(line.startswith("PASS") for line in rep.transcript[1:])
        assert restrict_to_diagonal(rep.witness_map).coeffs == {fv(0, 0, q=5): 1}

    def test_quadric_non_member(self, quadric):
        rep = oracle_check(quadric, level(5), fv(0, -1, q=5))
        assert not rep.verdict
        assert rep.missing_class == (0, 2)

    def test_quadric_char_two(self, quadric):
        assert not oracle_d2_contains(quadric, level(2), fv(0, 0, q=2))

    def test_precondition(self, quadric):
        with pytest.raises(ValueError):
            oracle_check(quadric, level(5), fv(-5, 0, q=5))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_oracle_agrees_with_criterion_quadric(quadric, p):
    for d in open_anticanonical_grid(quadric, p):
        assert oracle_d2_contains(quadric, level(p), d) == d2_contains(quadric, level(p), d).is_member, d


# --- properties --------------------------------------------------------------------


def random_compatible_map(rng, lv, n, degrees):
    """Sum over degrees of maps with equal class sums (one class sum value per degree)."""
    q, p = lv.q, lv.p
    support = {}
    for d in degrees:
        target = rng.randrange(p)
        for cls in enumerate_classes(lv, n):
            reps = [FracVector([c + q * rng.randrange(-2, 3) for c in cls], q) for _ in range(rng.randrange(1, 3))]
            coeffs = [rng.randrange(p) for _ in reps[:-1]]
            coeffs.append((target - sum(coeffs)) % p)
            for a, c in zip(reps, coeffs):
                key = (a, d - a)
                support[key] = (support.get(key, 0) + c) % p
    return TensorMap(lv, support)


degree_points = st.lists(st.tuples(st.integers(-4, 4)), min_size=1, max_size=3, unique=True)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5]), degree_points)
def test_gradedness(seed, p, degs):
    rng = random.Random(seed)
    lv = level(p)
    degrees = [FracVector(d, lv.q) for d in degs]
    m = random_compatible_map(rng, lv, 1, degrees)
    assert is_diagonal_compatible(m)
    slices = m.degree_slices()
    assert is_diagonal_compatible(m) == all(is_diagonal_compatible(s) for s in slices.values())
    # perturb one slice: whole map compatible iff every slice is
    if m.support:
        key = next(iter(m.support))
        broken = m + TensorMap(lv, {key: 1})
        assert is_diagonal_compatible(broken) == all(
            is_diagonal_compatible(s) for s in broken.degree_slices().values()
        )


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([3, 5]), degree_points, degree_points)
def test_linearity(seed, p, degs1, degs2):
    rng = random.Random(seed)
    lv = level(p)
    m1 = random_compatible_map(rng, lv, 1, [FracVector(d, lv.q) for d in degs1])
    m2 = random_compatible_map(rng, lv, 1, [FracVector(d, lv.q) for d in degs2])
    if not (is_diagonal_compatible(m1) and is_diagonal_compatible(m2)):
        return
    total = m1 + m2
    assert is_diagonal_compatible(total)
    r1, r2, r = (restrict_to_diagonal(x).coeffs for x in (m1, m2, total))
    expected = {u: (r1.get(u, 0) + r2.get(u, 0)) % p for u in set(r1) | set(r2)}
    assert r == {u: c for u, c in expected.items() if c}
    c = rng.randrange(1, p)
    assert restrict_to_diagonal(c * m1).coeffs == {u: (c * v) % p for u, v in r1.items()}
