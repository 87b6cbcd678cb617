"""Prime-to-p signatures: solver oracles, exhaustive invariance for m <= 12,
group-structure validation, and the moduli/tameness report."""

import itertools
import random
from fractions import Fraction
from math import gcd

import pytest

from padic_sr.errors import NoSolution, NotFaithful
from padic_sr.metacyclic import (
    MetacyclicSpec,
    moduli_and_tails_note,
    psolvable_quotient,
    signature_solver,
    tails_graph,
)
from padic_sr.graph import check_vanishing_cycles, validate_structure


def _p_for(m):
    """A prime p with a faithful order-m cyclic action on Z/p (n = 1), or a
    suitable n, for test specs."""
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 53, 61, 73):
        if (p - 1) % m == 0:
            return p, 1
    raise AssertionError(f"no test prime for m = {m}")


def test_solver_oracles():
    p, n = _p_for(2)
    sol = signature_solver(MetacyclicSpec(p, n, 2, (1, 1, 0)))
    assert sol.sigmas() == (Fraction(1, 2), Fraction(1, 2), Fraction(0))
    p, n = _p_for(3)
    sol = signature_solver(MetacyclicSpec(p, n, 3, (1, 2, 0)))
    assert sol.sigmas() == (Fraction(1, 3), Fraction(2, 3), Fraction(0))


def test_all_zero_rejected():
    with pytest.raises(NoSolution):
        MetacyclicSpec(5, 1, 2, (0, 0, 0))
    with pytest.raises(NoSolution):
        MetacyclicSpec(5, 1, 2, (2, 4, 6))  # all = 0 mod m


def test_bad_sum_rejected():
    with pytest.raises(NoSolution):
        MetacyclicSpec(5, 1, 4, (1, 1, 1))


def _admissible(m):
    for a in itertools.product(range(m), repeat=3):
        if all(x == 0 for x in a):
            continue
        if sum(a) % m != 0:
            continue
        yield a


@pytest.mark.parametrize("m", range(2, 13))
def test_exhaustive_solver_m_up_to_12(m):
    p, n = _p_for(m)
    for a in _admissible(m):
        spec = MetacyclicSpec(p, n, m, a)
        sol = signature_solver(spec)
        sigmas = sol.sigmas()
        # existence, the defining congruence, and the (0,1) window
        for (h, mi, sig), ai in zip(sol.points, spec.exponents):
            eff = (m - ai) % m if sol.flipped else ai
            if eff % m == 0:
                assert sig == 0 and mi == 1
            else:
                g = gcd(m, eff)
                assert mi == m // g
                assert 0 < sig < 1
                assert (h - eff // g) % mi == 0
        # the normalization: primitive sigmas sum to exactly 1
        assert sum(sigmas) == 1
        # permutation invariance
        perm = (a[2], a[0], a[1])
        psol = signature_solver(MetacyclicSpec(p, n, m, perm))
        assert psol.sigmas() == (sigmas[2], sigmas[0], sigmas[1])
        # representative invariance under a_i -> a_i + m
        shifted = tuple(x + m for x in a)
        assert signature_solver(
            MetacyclicSpec(p, n, m, shifted)).sigmas() == sigmas


def test_uniqueness_of_window_representative():
    """For each congruence class mod m_i there is exactly one h with
    sigma = h/m_i in (0, 1) in the canonical range."""
    for m in range(2, 13):
        for a in range(1, m):
            g = gcd(m, a)
            mi = m // g
            window = [h for h in range(1, mi)
                      if (h - a // g) % mi == 0 and 0 < Fraction(h, mi) < 1]
            assert len(window) == 1


def test_psolvable_quotient():
    rep = psolvable_quotient(5, 1, 4)
    assert rep["m_G"] == 4 and rep["faithful"]
    assert psolvable_quotient(5, 2, 1)["quotient"] == "Z/5^2"
    with pytest.raises(NotFaithful):
        psolvable_quotient(5, 1, 3)  # 3 does not divide 4
    with pytest.raises(NotFaithful):
        psolvable_quotient(2, 4, 8)  # (Z/16)^x has no cyclic order-8 subgroup
    assert psolvable_quotient(2, 4, 4)["faithful"]
    assert psolvable_quotient(3, 2, 6)["faithful"]


def test_tails_graph_satisfies_vanishing_cycles():
    for m, a in [(2, (1, 1, 0)), (4, (3, 3, 2)), (6, (1, 2, 3))]:
        p, n = _p_for(m)
        spec = MetacyclicSpec(p, n, m, a)
        sol = signature_solver(spec)
        g = tails_graph(spec, sol)
        assert g.mG == m
        assert validate_structure(g) == []
        assert check_vanishing_cycles(g) == 0


def test_moduli_and_tails_note():
    rep = moduli_and_tails_note(MetacyclicSpec(5, 2, 2, (1, 1, 0)))
    assert rep["vanishes_at_n"] is True
    assert rep["graph_violations"] == []
    assert rep["vanishing_cycles_residual"] == "0"
    assert "K_2" in rep["moduli_field"]
    assert "tame extension" in rep["stable_model_field"]
    # one wild point: the template has exactly two primitive tails
    assert sum(1 for pt in rep["signature"]["points"]
               if pt["sigma"] != "0") == 2
