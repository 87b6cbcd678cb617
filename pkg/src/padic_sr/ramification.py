"""Higher ramification filtrations and conductors.

Filtrations are step functions u -> |G^u| (or |G_u|) recorded by their jumps;
Herbrand conversion is exact piecewise-linear arithmetic over the rationals.
The conductor of an extension is its greatest upper-numbering jump.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import (
    ConductorDivisibleByP,
    EmptyList,
    MalformedFiltration,
    RadicandZero,
    SearchInconclusive,
    TermDegreeDivisibleByP,
)
from .jsonutil import parse_rat, ratstr
from .tower import Tower, TowerElement


@dataclass(frozen=True)
class Filtration:
    """Jumps of a ramification filtration of a totally ramified extension.

    jumps: sorted tuple of (jump, group order immediately after the jump);
    degree is |G_0|.  The order before the first jump is the degree; orders
    strictly decrease to 1 at the last jump.
    """

    jumps: tuple
    degree: int
    numbering: str  # "upper" | "lower"

    def __post_init__(self):
        jumps = tuple((Fraction(j), int(o)) for j, o in self.jumps)
        object.__setattr__(self, "jumps", jumps)
        self.validate()

    def validate(self):
        if self.numbering not in ("upper", "lower"):
            raise MalformedFiltration("numbering must be upper or lower")
        if self.degree < 1:
            raise MalformedFiltration("degree must be positive")
        prev_j = None
        prev_o = self.degree
        for j, o in self.jumps:
            if j < 0:
                raise MalformedFiltration("jumps must be >= 0")
            if prev_j is not None and j <= prev_j:
                raise MalformedFiltration("jumps must strictly increase")
            if o >= prev_o:
                raise MalformedFiltration("orders must strictly decrease")
            if prev_o % o != 0:
                raise MalformedFiltration("orders must divide predecessors")
            prev_j, prev_o = j, o
        if self.jumps and self.jumps[-1][1] != 1:
            raise MalformedFiltration("filtration must terminate at order 1")
        if not self.jumps and self.degree != 1:
            raise MalformedFiltration("nontrivial group needs jumps")

    def order_at(self, t: Fraction) -> int:
        """|G_t| (resp. |G^t|) just after position t."""
        o = self.degree
        for j, oo in self.jumps:
            if t >= j:
                o = oo
            else:
                break
        return o

    def conductor(self) -> Fraction:
        if self.numbering != "upper":
            raise MalformedFiltration("conductor reads the upper numbering")
        return self.jumps[-1][0] if self.jumps else Fraction(0)

    def to_json(self):
        return {
            "numbering": self.numbering,
            "degree": self.degree,
            "jumps": [[ratstr(j), o] for j, o in self.jumps],
        }


def herbrand_phi(lower: Filtration, t: Fraction) -> Fraction:
    """phi(t) = integral_0^t |G_x| / |G_0| dx, exact."""
    if lower.numbering != "lower":
        raise MalformedFiltration("phi consumes a lower-numbering filtration")
    t = Fraction(t)
    if t <= 0:
        return t
    acc = Fraction(0)
    pos = Fraction(0)
    order = lower.degree
    for j, o in lower.jumps:
        if j <= 0:
            order = o
            continue
        seg_end = min(j, t)
        if seg_end > pos:
            acc += (seg_end - pos) * Fraction(order, lower.degree)
            pos = seg_end
        if t <= j:
            return acc
        order = o
    acc += (t - pos) * Fraction(order, lower.degree)
    return acc


def herbrand_psi(lower: Filtration, u: Fraction) -> Fraction:
    """Inverse of phi, exact."""
    u = Fraction(u)
    if u <= 0:
        return u
    acc = Fraction(0)
    pos = Fraction(0)
    order = lower.degree
    for j, o in lower.jumps:
        if j <= 0:
            order = o
            continue
        slope = Fraction(order, lower.degree)
        seg = (j - pos) * slope
        if acc + seg >= u:
            return pos + (u - acc) / slope
        acc += seg
        pos = j
        order = o
    slope = Fraction(order, lower.degree)
    return pos + (u - acc) / slope


def herbrand_convert(f: Filtration, direction: str) -> Filtration:
    """Convert between upper and lower numbering, exactly."""
    if direction not in ("lower_to_upper", "upper_to_lower"):
        raise ValueError("direction must be lower_to_upper or upper_to_lower")
    if direction == "lower_to_upper":
        if f.numbering != "lower":
            raise MalformedFiltration("expected a lower-numbering filtration")
        jumps = tuple((herbrand_phi(f, j), o) for j, o in f.jumps)
        return Filtration(jumps, f.degree, "upper")
    if f.numbering != "upper":
        raise MalformedFiltration("expected an upper-numbering filtration")
    # psi is built from the lower filtration, which we recover incrementally:
    # on each upper segment the lower slope is degree/order ratio inverted
    lower_jumps = []
    pos_u = Fraction(0)
    pos_l = Fraction(0)
    order = f.degree
    for j, o in f.jumps:
        if j <= 0:
            lower_jumps.append((j, o))
            order = o
            continue
        # lower length of the segment = upper length / (order/degree)
        pos_l = pos_l + (j - pos_u) * Fraction(f.degree, order)
        pos_u = j
        lower_jumps.append((pos_l, o))
        order = o
    return Filtration(tuple(lower_jumps), f.degree, "lower")


def cyclotomic_lower_filtration(p: int, n: int) -> Filtration:
    """Lower-numbering filtration of Gal(Q_p(zeta_{p^n})/Q_p):
    jumps at 0, p-1, p^2-1, ..., p^(n-1)-1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    degree = (p - 1) * p ** (n - 1)
    jumps = []
    if p > 2:  # p = 2 has no tame part, so the order does not drop at 0
        jumps.append((Fraction(0), p ** (n - 1)))
    for k in range(1, n):
        jumps.append((Fraction(p ** k - 1), p ** (n - 1 - k)))
    return Filtration(tuple(jumps), degree, "lower")


def cyclotomic_filtration(p: int, n: int) -> Filtration:
    """Upper-numbering filtration of K_n/K_0: jumps exactly {0, ..., n-1}."""
    return herbrand_convert(cyclotomic_lower_filtration(p, n),
                            "lower_to_upper")


def compositum_conductor(hs) -> Fraction:
    hs = [Fraction(h) for h in hs]
    if not hs:
        raise EmptyList("compositum of no extensions")
    if any(h < 0 for h in hs):
        raise ValueError("conductors must be >= 0")
    return max(hs)


def tame_top_conductor(h) -> Fraction:
    """A tame extension on top of a ramified one preserves the conductor."""
    return Fraction(h)


def artin_schreier_genus(h: int, p: int) -> int:
    if h < 1:
        raise ValueError("conductor must be >= 1")
    if h % p == 0:
        raise ConductorDivisibleByP(f"h = {h} is divisible by p = {p}")
    return (h - 1) * (p - 1) // 2


def artin_schreier_conductor(degrees, p: int) -> int:
    degrees = list(degrees)
    if not degrees:
        raise EmptyList("g has no terms")
    for deg in degrees:
        if deg % p == 0:
            raise TermDegreeDivisibleByP(
                f"term degree {deg} is divisible by p = {p}"
            )
    return max(degrees)


# -- field towers ------------------------------------------------------------

@dataclass(frozen=True)
class ConductorValue:
    kind: str  # "exact" | "bound"
    value: Fraction

    def to_json(self):
        return {"kind": self.kind, "value": ratstr(self.value)}


@dataclass(frozen=True)
class TowerStep:
    kind: str  # "cyclotomic" | "kummer" | "tame"
    # cyclotomic: level n; kummer: exponent m and radicand description;
    # tame: degree (0 = unspecified tame extension)
    level: int = 0
    exponent: int = 0
    radicand: str = ""
    conductor: ConductorValue | None = None

    def to_json(self):
        doc = {"kind": self.kind}
        if self.kind == "cyclotomic":
            doc["level"] = self.level
        elif self.kind == "kummer":
            doc["exponent"] = self.exponent
            doc["radicand"] = self.radicand
        elif self.kind == "tame":
            doc["degree"] = self.level
        if self.conductor is not None:
            doc["conductor"] = self.conductor.to_json()
        return doc


@dataclass(frozen=True)
class FieldTower:
    prime: int
    steps: tuple
    # machine-readable construction parameters (case label, exponents, ...)
    meta: tuple = ()

    def meta_dict(self):
        return dict(self.meta)

    def to_json(self):
        return {"prime": self.prime,
                "steps": [s.to_json() for s in self.steps],
                "meta": {k: v for k, v in self.meta}}

    @classmethod
    def from_json(cls, doc):
        steps = []
        for s in doc["steps"]:
            cond = s.get("conductor")
            cv = None
            if cond is not None:
                cv = ConductorValue(cond["kind"], parse_rat(cond["value"]))
            if s["kind"] == "cyclotomic":
                steps.append(TowerStep("cyclotomic", level=s["level"],
                                       conductor=cv))
            elif s["kind"] == "kummer":
                steps.append(TowerStep("kummer", exponent=s["exponent"],
                                       radicand=s.get("radicand", ""),
                                       conductor=cv))
            else:
                steps.append(TowerStep("tame", level=s.get("degree", 0),
                                       conductor=cv))
        meta = tuple(sorted(doc.get("meta", {}).items()))
        return cls(doc["prime"], tuple(steps), meta)


# -- Kummer step conductors --------------------------------------------------

def _unit_level_maximize(tower: Tower, u: TowerElement, cap: int):
    """Maximize j = v_pi(u w^(-p) - 1) over p-th powers w.

    Greedy over the documented search set {1} and 1 + c pi^(j/p) corrections
    with integer residues c (the residue field of the cyclotomic tower is
    F_p).  Returns the achieved level, possibly cap when u is a p-th power.
    """
    p = tower.p
    R = tower.ram_index
    pi = tower.uniformizer()
    cur = u
    while True:
        w = cur - 1
        if w.is_zero():
            return cap
        j = tower.val(w) * R
        if j.denominator != 1:
            raise SearchInconclusive("level outside the value group")
        j = int(j)
        if j >= cap:
            return cap
        if j % p != 0:
            return j
        # p | j: try to push the level with w = 1 + c pi^(j/p); the leading
        # residue r satisfies c^p = r with c = r in F_p
        improved = False
        for c in range(1, p):
            cand = cur * ((1 + c * pi ** (j // p)).inverse() ** p)
            cw = cand - 1
            if cw.is_zero():
                return cap
            jj = tower.val(cw) * R
            if jj.denominator == 1 and int(jj) > j:
                cur = cand
                improved = True
                break
        if not improved:
            raise SearchInconclusive(
                f"cannot raise the unit level past {j} (divisible by p)"
            )


def kummer_step_conductor(level, u, m: int) -> ConductorValue:
    """Conductor of K(u^(1/m))/K for K = Q_p(zeta_{p^level}) (or an explicit
    Tower), m a p-power, in the standard upper numbering of K.

    Degree-p steps are computed from the unit-filtration position of the
    radicand; higher p-powers and radicands outside the cyclotomic field get
    certified bounds.  Values are tagged exact or bound, never guessed.
    """
    if isinstance(level, Tower):
        tower = level
        p = tower.p
    else:
        raise TypeError("level must be a Tower (use cyclotomic_tower)")
    if isinstance(u, TowerElement):
        uu = tower.coerce(u)
    else:
        uu = tower.rational(Fraction(u))
    if uu.is_zero():
        raise RadicandZero("radicand is zero")
    k = 0
    mm = m
    while mm % p == 0:
        mm //= p
        k += 1
    if mm != 1 or k < 1:
        raise ValueError("m must be a positive power of p")
    if not tower.ram_exact:
        return ConductorValue("bound", Fraction(0))  # unreachable in practice
    e = tower.ram_index
    cap = p * e // (p - 1) if (p * e) % (p - 1) == 0 else None
    cap_frac = Fraction(p * e, p - 1)
    if k > 1:
        # telescoped bound over the p-power chain: a character of order p^k
        # kills U^(j + k e) for j > e/(p-1)
        return ConductorValue("bound", Fraction(e // (p - 1) + k * e + 1))
    # degree-p step
    v = tower.val(uu) * e
    if v.denominator != 1:
        raise SearchInconclusive("radicand valuation outside the value group")
    v = int(v)
    if v % p != 0:
        # Eisenstein-type: totally ramified with the maximal conductor
        if cap is None:
            return ConductorValue("bound", cap_frac)
        return ConductorValue("exact", Fraction(cap))
    pi = tower.uniformizer()
    if pi is None or tower.val(pi) * e != 1:
        return ConductorValue("bound", cap_frac)
    unit = uu * (pi.inverse() ** v)
    try:
        j = _unit_level_maximize(tower, unit, cap if cap is not None else 0)
    except SearchInconclusive:
        return ConductorValue("bound", cap_frac)
    if cap is not None and j >= cap:
        return ConductorValue("exact", Fraction(0))
    return ConductorValue("exact", Fraction(cap) - j)


def cyclotomic_tower(p: int, level: int) -> Tower:
    """The tower Q(zeta_{p^level}) with its p-adic certificates."""
    if level < 1:
        raise ValueError("level must be >= 1")
    return Tower(p).adjoin_root_of_unity(p ** level)


def conductor_over_base(p: int, n: int, h_sub) -> Fraction:
    """Conductor over K_0 of an extension L/K_n with upper conductor h_sub
    over K_n: max(n - 1, phi_{K_n/K_0}(h_sub))."""
    h_sub = Fraction(h_sub)
    if n == 0:
        return h_sub
    lower = cyclotomic_lower_filtration(p, n)
    return max(Fraction(n - 1), herbrand_phi(lower, h_sub))
