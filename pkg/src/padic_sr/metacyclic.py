"""Covers with a nontrivial prime-to-p action: deformation-datum signatures
at the branch points of the degree-m quotient cover, structure of p-solvable
Galois groups with cyclic p-Sylow, and the moduli-field/tameness report.

The quotient cover is z^m = (x - x_1)^a1 (x - x_2)^a2 (x - x_3)^a3 with
a_1 + a_2 + a_3 = 0 (mod m); points with a_i = 0 (mod m) are the wild branch
points of the full cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NoSolution, NotFaithful
from .graph import (
    Component,
    DecoratedGraph,
    GraphEdge,
    check_vanishing_cycles,
    validate_structure,
)
from .jsonutil import ratstr
from .ramification import compositum_conductor, tame_top_conductor


@dataclass(frozen=True)
class MetacyclicSpec:
    p: int
    n: int
    m: int
    exponents: tuple  # (a_1, a_2, a_3), taken mod m

    def __post_init__(self):
        if self.m < 2:
            raise NoSolution("m must be >= 2; m = 1 is the cyclic case")
        if len(self.exponents) != 3:
            raise NoSolution("exactly three branch points are required")
        object.__setattr__(self, "exponents",
                           tuple(a % self.m for a in self.exponents))
        if all(a == 0 for a in self.exponents):
            raise NoSolution("not all a_i may be 0 (mod m)")
        if sum(self.exponents) % self.m != 0:
            raise NoSolution("a_1 + a_2 + a_3 must be 0 (mod m)")
        _check_faithful(self.p, self.n, self.m)

    def to_json(self):
        return {"p": self.p, "n": self.n, "m": self.m,
                "exponents": list(self.exponents)}


@dataclass(frozen=True)
class SignatureSolution:
    # per branch point: (h_i, m_i, sigma_i); sigma_i = 0 at wild points
    points: tuple
    flipped: bool  # whether the inverse character a_i -> m - a_i was taken

    def sigmas(self):
        return tuple(pt[2] for pt in self.points)

    def to_json(self):
        return {
            "points": [{"h": h, "m": mi, "sigma": ratstr(sig)}
                       for h, mi, sig in self.points],
            "flipped": self.flipped,
        }


def _solve_one(m: int, a: int):
    """(h_i, m_i, sigma_i) for one branch point of the degree-m cover."""
    if a % m == 0:
        return (0, 1, Fraction(0))  # wild point
    g = gcd(m, a)
    mi = m // g
    # h_i = (a_i / g) mod m_i, the unique representative with sigma in (0, 1)
    h = (a // g) % mi
    if h == 0:
        raise NoSolution(f"no representative with sigma in (0, 1) for "
                         f"a_i = {a}, m = {m}")
    return (h, mi, Fraction(h, mi))


def signature_solver(spec: MetacyclicSpec) -> SignatureSolution:
    """The invariants (h_i, m_i, sigma_i) of the deformation data at the
    branch points, normalized so the primitive-tail sigmas sum to 1."""
    m = spec.m
    pts = tuple(_solve_one(m, a) for a in spec.exponents)
    total = sum(pt[2] for pt in pts)
    flipped = False
    if total != 1:
        # the inverse character replaces each sigma by 1 - sigma at the
        # primitive points; with three primitive points the sum 2 becomes 1
        pts = tuple(_solve_one(m, (m - a) % m) for a in spec.exponents)
        flipped = True
        total = sum(pt[2] for pt in pts)
    if total != 1:
        raise NoSolution(
            f"primitive sigmas sum to {total} under both characters"
        )
    return SignatureSolution(pts, flipped)


def _check_faithful(p: int, n: int, m: int):
    """m must be the order of a cyclic subgroup of (Z/p^n)^x."""
    if m == 1:
        return
    if (p ** (n - 1) * (p - 1)) % m != 0:
        raise NotFaithful(
            f"m = {m} does not divide the order p^(n-1)(p-1) of "
            f"Aut(Z/{p}^{n})"
        )
    if p == 2:
        # (Z/2^n)^x is Z/2 x Z/2^(n-2) for n >= 3: largest cyclic subgroup
        # has order 2^(n-2) (order 2 when n = 2, trivial when n = 1)
        cyc = 1 if n == 1 else (2 if n == 2 else 2 ** (n - 2))
        if cyc % m != 0:
            raise NotFaithful(
                f"(Z/2^{n})^x has no cyclic subgroup of order {m}"
            )
    # for odd p the unit group is cyclic, so divisibility suffices


def psolvable_quotient(p: int, n: int, m_G: int) -> dict:
    """Structure of the relevant quotient of a p-solvable group with cyclic
    p-Sylow Z/p^n: the semidirect product Z/p^n x| Z/m_G with faithful
    conjugation action."""
    _check_faithful(p, n, m_G)
    if m_G == 1:
        return {"quotient": f"Z/{p}^{n}", "m_G": 1,
                "note": "cyclic case: no prime-to-p action"}
    return {
        "quotient": f"Z/{p}^{n} x| Z/{m_G}",
        "m_G": m_G,
        "faithful": True,
        "note": "conjugation action of Z/m_G on Z/p^n is faithful",
    }


def tails_graph(spec: MetacyclicSpec, sol: SignatureSolution) -> DecoratedGraph:
    """The star-shaped decorated graph forced when the prime-to-p action is
    nontrivial: the original p^n-component plus one primitive etale tail per
    branch point with sigma_i > 0."""
    comps = [Component(id="X0", inertia_exponent=spec.n, kind="original",
                       branch_points={f"x{i + 1}": spec.n
                                      for i, (_, _, s) in
                                      enumerate(sol.points) if s == 0})]
    edges = []
    for i, (h, mi, sig) in enumerate(sol.points):
        if sig == 0:
            continue
        cid = f"T{i + 1}"
        comps.append(Component(id=cid, inertia_exponent=0, kind="tail",
                               tail_kind="primitive",
                               branch_points={f"x{i + 1}": 0},
                               sigma_b=sig))
        edges.append(GraphEdge("X0", cid, sigma_eff=sig))
    return DecoratedGraph(spec.p, spec.n, tuple(comps), tuple(edges),
                          mG=spec.m)


def moduli_and_tails_note(spec: MetacyclicSpec) -> dict:
    """Structural report for m_G > 1: every tail is primitive, the field of
    moduli lies in K_n, the stable model is defined over a tame extension of
    K_n, and hence the n-th upper ramification group over the base
    vanishes."""
    sol = signature_solver(spec)
    g = tails_graph(spec, sol)
    violations = validate_structure(g)
    residual = check_vanishing_cycles(g)
    # K_n/K_0 is cyclotomic with conductor n-1; a tame top changes nothing
    h = tame_top_conductor(compositum_conductor([Fraction(spec.n - 1)]))
    return {
        "spec": spec.to_json(),
        "signature": sol.to_json(),
        "tails": "all tails are primitive; no new or inseparable tails",
        "moduli_field": f"contained in K_{spec.n} = K_0(zeta_{{{spec.p}^"
                        f"{spec.n}}})",
        "stable_model_field": f"a tame extension of K_{spec.n}",
        "conductor": ratstr(h),
        "vanishes_at_n": h < spec.n,
        "graph_violations": violations,
        "vanishing_cycles_residual": ratstr(residual),
    }
