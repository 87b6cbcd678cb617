"""Ramification filtrations: brute-force cyclotomic oracle, quadrature
oracle for the Herbrand function, round-trips, composition laws, and the
Kummer-step conductor facts."""

import random
from fractions import Fraction
from math import gcd, lcm

import pytest

from padic_sr.errors import (
    ConductorDivisibleByP,
    EmptyList,
    MalformedFiltration,
    TermDegreeDivisibleByP,
)
from padic_sr.ramification import (
    ConductorValue,
    FieldTower,
    Filtration,
    TowerStep,
    artin_schreier_conductor,
    artin_schreier_genus,
    compositum_conductor,
    conductor_over_base,
    cyclotomic_filtration,
    cyclotomic_lower_filtration,
    cyclotomic_tower,
    herbrand_convert,
    herbrand_phi,
    herbrand_psi,
    kummer_step_conductor,
    tame_top_conductor,
)
from padic_sr.tower import Tower


# -- brute-force cyclotomic oracle -------------------------------------------

def _vp(x, p):
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _cyclotomic_lower_oracle(p, n):
    """Lower filtration of (Z/p^n)^x from i_G(sigma_a) = p^t with
    p^t || (a - 1), computed by direct enumeration."""
    q = p ** n
    units = [a for a in range(1, q) if a % p != 0]
    i_of = {}
    for a in units:
        if a == 1:
            continue
        t = _vp(a - 1, p)
        i_of[a] = p ** t
    degree = len(units)

    def order_lower(i):
        # |G_i| = #{sigma : i_G(sigma) >= i + 1} (+ identity)
        return 1 + sum(1 for v in i_of.values() if v >= i + 1)

    # a jump at position i means |G_{i+1}| < |G_i|; the recorded order is the
    # order just after the jump
    jumps = []
    cur = order_lower(0)
    i = 0
    while cur > 1:
        nxt = order_lower(i + 1)
        if nxt < cur:
            jumps.append((Fraction(i), nxt))
            cur = nxt
        i += 1
    return Filtration(tuple(jumps), degree, "lower")


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cyclotomic_against_bruteforce(p, n):
    assert cyclotomic_lower_filtration(p, n) == _cyclotomic_lower_oracle(p, n)
    upper = cyclotomic_filtration(p, n)
    lo = 1 if p == 2 else 0
    assert [j for j, _ in upper.jumps] == [Fraction(k)
                                           for k in range(lo, n)]
    assert upper.conductor() == n - 1
    # the n-th upper group vanishes
    assert upper.order_at(Fraction(n)) == 1


def test_cyclotomic_quotient_invariance():
    """Dropping the smallest subgroup of Gal(K_n/K_0) gives Gal(K_{n-1}/K_0):
    upper jumps are invariant under quotients."""
    for p in (3, 5, 2):
        for n in (2, 3, 4):
            big = cyclotomic_filtration(p, n)
            small = cyclotomic_filtration(p, n - 1) if n > 1 else None
            # quotient by the last (order-p ... order-1) step: drop the top jump
            # and divide the surviving orders by p
            quot_jumps = tuple((j, o // p) for j, o in big.jumps[:-1])
            quot = Filtration(quot_jumps, big.degree // p, "upper")
            if small is not None:
                assert quot == small


# -- Herbrand: quadrature oracle and round-trips -----------------------------

def _phi_quadrature(lower, t):
    """Step-function quadrature of integral_0^t |G_x|/|G_0| dx on a grid
    refining every breakpoint."""
    t = Fraction(t)
    if t <= 0:
        return t
    den = t.denominator
    for j, _ in lower.jumps:
        den = lcm(den, j.denominator)
    h = Fraction(1, 2 * den)
    steps = int(t / h)
    acc = Fraction(0)
    for k in range(steps):
        mid = h * k + h / 2
        acc += h * Fraction(lower.order_at(mid), lower.degree)
    return acc


def _random_lower_filtration(rng):
    degree = 1
    orders = []
    # a decreasing divisor chain
    n_steps = rng.randint(1, 4)
    primes = [2, 3, 5, 7]
    chain = [1]
    for _ in range(n_steps):
        chain.append(chain[-1] * rng.choice(primes))
    chain = sorted(set(chain), reverse=True)
    degree = chain[0]
    orders = chain[1:]
    jumps = []
    pos = rng.randint(0, 2)
    for o in orders:
        jumps.append((Fraction(pos), o))
        pos += rng.randint(1, 9)
    return Filtration(tuple(jumps), degree, "lower")


def test_herbrand_roundtrip_100_random():
    rng = random.Random(20260824)
    for _ in range(100):
        f = _random_lower_filtration(rng)
        up = herbrand_convert(f, "lower_to_upper")
        back = herbrand_convert(up, "upper_to_lower")
        assert back == f
        u = Fraction(rng.randint(0, 40), rng.randint(1, 5))
        assert herbrand_phi(f, herbrand_psi(f, u)) == u
        assert herbrand_psi(f, herbrand_phi(f, u)) == u


def test_phi_against_quadrature_oracle():
    rng = random.Random(5)
    fils = [cyclotomic_lower_filtration(3, 3),
            cyclotomic_lower_filtration(5, 2),
            cyclotomic_lower_filtration(2, 4)]
    fils += [_random_lower_filtration(rng) for _ in range(5)]
    for f in fils:
        for t in (Fraction(1), Fraction(5, 2), Fraction(9), Fraction(26)):
            assert herbrand_phi(f, t) == _phi_quadrature(f, t)


def test_single_wild_jump_scaling():
    """One wild jump u with full group p*m: upper jump follows the Herbrand
    integral through the tame drop."""
    f = Filtration(((Fraction(0), 5), (Fraction(7), 1)), 15, "lower")
    up = herbrand_convert(f, "lower_to_upper")
    assert up.jumps == ((Fraction(0), 5), (Fraction(7, 3), 1))


def test_malformed_filtrations():
    with pytest.raises(MalformedFiltration):
        Filtration(((Fraction(2), 3), (Fraction(1), 1)), 6, "lower")
    with pytest.raises(MalformedFiltration):
        Filtration(((Fraction(1), 4),), 6, "lower")  # 4 does not divide 6
    with pytest.raises(MalformedFiltration):
        Filtration(((Fraction(1), 2),), 6, "lower")  # does not reach 1
    with pytest.raises(MalformedFiltration):
        Filtration((), 6, "lower")


# -- composition laws ---------------------------------------------------------

def test_compositum_tame_laws_100_random():
    rng = random.Random(99)
    for _ in range(100):
        hs = [Fraction(rng.randint(0, 30), rng.randint(1, 6))
              for _ in range(rng.randint(1, 5))]
        h = compositum_conductor(hs)
        assert h == max(hs)
        assert compositum_conductor([h]) == h                 # idempotent
        assert compositum_conductor(list(reversed(hs))) == h  # commutative
        bigger = hs + [h + 1]
        assert compositum_conductor(bigger) >= h              # monotone
        assert tame_top_conductor(h) == h                     # tame identity
    with pytest.raises(EmptyList):
        compositum_conductor([])


def test_artin_schreier_formulas():
    assert artin_schreier_genus(2, 5) == 2
    assert artin_schreier_genus(1, 7) == 0
    assert artin_schreier_genus(3, 5) == 4
    # h must be prime to p: the formula's hypothesis is enforced
    with pytest.raises(ConductorDivisibleByP):
        artin_schreier_genus(3, 3)
    assert artin_schreier_conductor([1, 2], 5) == 2
    assert artin_schreier_conductor([7], 3) == 7
    with pytest.raises(TermDegreeDivisibleByP):
        artin_schreier_conductor([3], 3)
    with pytest.raises(EmptyList):
        artin_schreier_conductor([], 3)


# -- Kummer step conductors ---------------------------------------------------

def test_kummer_step_conductor_facts():
    K1 = cyclotomic_tower(3, 1)
    # cube root of an element of valuation prime to 3: exact cap p e/(p-1)
    cv = kummer_step_conductor(K1, 3, 3)
    assert (cv.kind, cv.value) == ("exact", Fraction(3))
    # a cube: trivial step
    cv = kummer_step_conductor(K1, 8, 3)
    assert (cv.kind, cv.value) == ("exact", Fraction(0))
    # a unit at a prime-to-p level below the cap
    cv = kummer_step_conductor(K1, 2, 3)
    assert (cv.kind, cv.value) == ("exact", Fraction(1))
    # degree 9: telescoped bound e/(p-1) + k e + 1
    cv = kummer_step_conductor(K1, 5, 9)
    assert cv.kind == "bound"
    assert cv.value == Fraction(6)


def test_conductor_over_base():
    assert conductor_over_base(3, 2, 3) == Fraction(7, 6)
    # h below the tame part stays as the cyclotomic part's max
    assert conductor_over_base(3, 3, 0) == Fraction(2)


def test_field_tower_json_roundtrip():
    ft = FieldTower(3, (TowerStep("cyclotomic", level=2),
                        TowerStep("kummer", exponent=3, radicand="a/(a+b)",
                                  conductor=ConductorValue("exact",
                                                           Fraction(3, 2))),
                        TowerStep("tame")),
                    (("case", "iii"), ("n", 2)))
    doc = ft.to_json()
    assert FieldTower.from_json(doc) == ft
