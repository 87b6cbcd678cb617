"""End-to-end computation of the stable reduction of a three-point cyclic
p-power cover of the line: branch signature, new-tail locus, decorated
reduction graph, torsor certification, stable-model field tower, and the
conductor certificate.

Covers are y^(p^n) = c x^a (x-1)^b with the model constant
c = d^(-a) (d-1)^(-b), normalized so the cover is totally ramified above 0
and infinity and ramified of index p^s above 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CertificationFailed,
    Disconnected,
    NotThreePoint,
    UnsupportedCase,
)
from .graph import Component, DecoratedGraph, GraphEdge, sigma_eff_outward
from .jsonutil import ratstr
from .ramification import (
    ConductorValue,
    FieldTower,
    Filtration,
    TowerStep,
    compositum_conductor,
    cyclotomic_tower,
    herbrand_phi,
    kummer_step_conductor,
)
from .series import (
    ReductionVerdict,
    binom_falling,
    classify_torsor_reduction,
    expand_disk,
)
from .tower import Tower, square_class_K2_K3, vp_rational


def _vp_int(x: int, p: int) -> int:
    if x == 0:
        raise ZeroDivisionError("v(0)")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class CoverSpec:
    p: int
    n: int
    a: int
    b: int
    s: int
    indices: tuple  # ramification indices above (0, 1, infinity)
    swaps: tuple = ()  # Moebius normalizations applied, outermost first
    original: tuple = ()  # (a, b) as given before normalization

    def to_json(self):
        return {
            "p": self.p, "n": self.n, "a": self.a, "b": self.b, "s": self.s,
            "indices": list(self.indices),
            "swaps": list(self.swaps),
            "original": list(self.original),
        }


def branch_signature(p: int, n: int, a: int, b: int) -> CoverSpec:
    """Ramification indices of y^(p^n) = x^a (x-1)^b above 0, 1, infinity,
    normalized (by Moebius swaps) so 0 and infinity are totally ramified."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if p == 2 and n < 2:
        raise NotThreePoint("there are no three-point Z/2-covers")
    original = (a, b)
    exps = {"0": a, "1": b, "inf": -(a + b)}
    vals = {}
    for key, ex in exps.items():
        vals[key] = n if ex == 0 else min(_vp_int(ex, p), n)
    if sum(1 for v in vals.values() if v == 0) < 2:
        raise Disconnected(
            "fewer than two of a, b, a+b are prime to p; the cover is "
            "disconnected"
        )
    if any(v >= n for v in vals.values()):
        raise NotThreePoint("a branch point has trivial ramification index")
    swaps = []
    if vals["0"] > 0:
        # x -> 1 - x exchanges 0 and 1
        a, b = b, a
        swaps.append("x -> 1 - x")
    if _vp_int(a + b, p) > 0:
        # x -> x/(x-1) fixes 0 and exchanges 1 and infinity;
        # the exponent above the new x = 1 is the old exponent at infinity
        b = -(a + b)
        swaps.append("x -> x/(x-1)")
    s = n - _vp_int(b, p)
    indices = (p ** (n - vals["0"]), p ** (n - vals["1"]),
               p ** (n - vals["inf"]))
    return CoverSpec(p, n, a, b, s, indices, tuple(swaps), original)


# -- the new etale tail ------------------------------------------------------

@dataclass(frozen=True)
class NewTailLocus:
    case: str  # "rational" | "p3s1" | "p2"
    tower: Tower
    d: object  # TowerElement
    e: object  # TowerElement
    v_e: Fraction
    description: str


def _p2_sqrt_tower(p2spec, j: int):
    """Tower containing sqrt(2^(n-j) b i) for the given cover, realized as
    (1+i)^(2n-s-j) * w with w^2 a certified non-square unit of Q_2(i)."""
    p, n, s, b = p2spec.p, p2spec.n, p2spec.s, p2spec.b
    if p != 2:
        raise UnsupportedCase("p = 2 construction requested for odd p")
    b_odd = b // (2 ** (n - s))
    t = Tower(2).adjoin_radical(2, -1, "i")
    i = t.gen(0)
    k = 2 * n - s - j
    # sqrt(2^(n-j) b i) = (1+i)^k * w with w^2 = (-i)^k * b_odd * i,
    # since ((1+i)^k)^2 = 2^k i^k and 2^k * b_odd = 2^(n-j) b / i^k * ...
    unit = ((-i) ** k) * b_odd * i
    # b_odd = +/-1 degenerates the radicand to +/-1, whose square root is
    # already in Q_2(i); adjoin a generator only in the genuine case
    if (unit - 1).is_zero():
        t2, w = t, t.rational(1)
    elif (unit + 1).is_zero():
        t2, w = t, i
    else:
        t2 = t.adjoin_radical(2, unit, "w")
        w = t2.gen(1)
    root = ((1 + t2.gen(0)) ** k) * w
    return t2, root


def new_tail_locus(spec: CoverSpec) -> NewTailLocus:
    """Center d and radius valuation v(e) = (2n - s + 1/(p-1))/2 of the disk
    of the unique new etale tail, with the case-correct center."""
    p, n, s, a, b = spec.p, spec.n, spec.s, spec.a, spec.b
    v_e = Fraction(2 * n - s + Fraction(1, p - 1), 2)
    if p == 2:
        tower, root = _p2_sqrt_tower(spec, 0)
        d = tower.rational(Fraction(a, a + b)) + root * Fraction(1, (a + b) ** 2)
        # v(e) = (2n - s + 1)/2; realized as a power of (1+i), v(1+i) = 1/2
        e = (1 + tower.gen(0)) ** (2 * n - s + 1)
        return NewTailLocus("p2", tower, d, e, v_e,
                            "a/(a+b) + sqrt(2^n b i)/(a+b)^2")
    if p == 3 and s == 1 and n > 1:
        # d = a/(a+b) + cbrt(3^(2n+1) C(b,3))/(a+b)
        rad = Fraction(3 ** (2 * n + 1)) * binom_falling(b, 3)
        t1 = Tower(3).adjoin_radical(4, 3, "pi")
        tower = t1.adjoin_radical(3, rad, "t")
        d = tower.rational(Fraction(a, a + b)) + \
            tower.gen(1) * Fraction(1, a + b)
        e = tower.gen(0) ** (4 * n - 1)
        return NewTailLocus("p3s1", tower, d, e, v_e,
                            "a/(a+b) + cbrt(3^(2n+1) binom(b,3))/(a+b)")
    # p > 3, or p = 3 with s > 1 or s = n = 1: rational center
    D = 2 * (p - 1)
    k = (2 * n - s) * (p - 1) + 1
    tower = Tower(p).adjoin_radical(D, p, "pi")
    d = tower.rational(Fraction(a, a + b))
    e = tower.gen(0) ** k
    return NewTailLocus("rational", tower, d, e, v_e, "a/(a+b)")


def certify_tail(spec: CoverSpec, L: int | None = None) -> ReductionVerdict:
    """Expand the cover on the new-tail disk and classify the reduction."""
    locus = new_tail_locus(spec)
    exp = expand_disk(spec, locus.d, locus.e, L)
    return classify_torsor_reduction(exp)


# -- inseparable tails -------------------------------------------------------

@dataclass(frozen=True)
class InsepTail:
    j: int  # a p^j-tail
    center: str
    radius_valuation: Fraction
    tail_kind: str  # "primitive" | "new"

    def to_json(self):
        return {"j": self.j, "center": self.center,
                "radius_valuation": ratstr(self.radius_valuation),
                "tail_kind": self.tail_kind}


def inseparable_tails(spec: CoverSpec):
    """The inseparable tails forced by the structure results: the x = 1 tail
    whenever s < n, plus the small-prime extra tails."""
    p, n, s = spec.p, spec.n, spec.s
    if s == n:
        return []
    out = [InsepTail(s, "1", n - s + Fraction(1, p - 1), "primitive")]
    if p == 3 and s >= 2:
        out.append(InsepTail(
            s - 1,
            "d' = a/(a+b) + cbrt(3^(2(n-s)+3) binom(b,3))/(a+b)",
            Fraction(n - s) + Fraction(2, 3), "new"))
    if p == 2:
        for j in range(1, s):
            out.append(InsepTail(
                j, f"d_{j} = a/(a+b) + sqrt(2^(n-{j}) b i)/(a+b)^2",
                Fraction(2 * n - s - j + 1, 2), "new"))
    return out


# -- the decorated graph -----------------------------------------------------

def _upstairs(spec, inertia: int, has_larger_neighbor: bool):
    """(count, genus, conductor, note) of the covering curve over a
    p^inertia-component."""
    p, n, s = spec.p, spec.n, spec.s
    i = inertia
    if not has_larger_neighbor:
        return p ** (n - i), 0, None, "radicial"
    if p == 2:
        if i == 0:
            return (2 ** (n - 2), None, None,
                    "mu_4-torsors, first upper jump 1")
        return 2 ** (n - i - 1), None, None, "p = 2 covering structure"
    cond = 1 if (s < n and i >= s) else 2
    genus = (cond - 1) * (p - 1) // 2
    return p ** (n - i - 1), genus, cond, ""


def build_stable_graph(spec: CoverSpec) -> DecoratedGraph:
    """The decorated augmented dual graph of the stable reduction.

    For p = 2, and for p = 3 with 1 < s < n, the shape beyond the
    certified tails follows the same template and is flagged
    lower-confidence in the signature table.
    """
    p, n, s = spec.p, spec.n, spec.s
    q = Fraction(1, p - 1)
    comps = []
    edges = []  # (source, target, epaisseur)
    flags = []

    def add(cid, inertia, kind, tail_kind="none", radius=None, center=None,
            sigma_b=None, branch_points=None):
        comps.append(dict(id=cid, inertia=inertia, kind=kind,
                          tail_kind=tail_kind, radius=radius, center=center,
                          sigma_b=sigma_b, branch_points=branch_points or {}))

    if s == n:
        if p == 2:
            raise UnsupportedCase("p = 2 covers cannot have three totally "
                                  "ramified points")
        # chain: X_i has inertia p^(n-i) at radius valuation (i + 1/(p-1))/2
        add("X0", n, "original", radius=Fraction(0), center="d",
            branch_points={"0": n, "1": n, "inf": n})
        prev = "X0"
        prev_r = Fraction(0)
        for i in range(1, n + 1):
            r = Fraction(i + q, 2)
            if i == n:
                add(f"X{i}", 0, "tail", "new", radius=r, center="d",
                    sigma_b=Fraction(2))
            else:
                add(f"X{i}", n - i, "interior", radius=r, center="d")
            edges.append((prev, f"X{i}", r - prev_r))
            prev, prev_r = f"X{i}", r
        wild_on = {"0bar": "X0", "1bar": "X0", "infbar": "X0"}
    else:
        add("X0", n, "original", radius=Fraction(0), center="d",
            branch_points={"0": n, "inf": n})
        prev = "X0"
        prev_r = Fraction(0)
        chain_lo = s + 2 if p == 2 else s + 1
        for i in range(n - 1, chain_lo - 1, -1):
            r = n - i + q
            add(f"X{n - i}", i, "interior", radius=r, center="d")
            edges.append((prev, f"X{n - i}", r - prev_r))
            prev, prev_r = f"X{n - i}", r
        r_star = Fraction(n - s)
        add("Xstar", s + 1, "interior", radius=r_star, center="d")
        edges.append((prev, "Xstar", r_star - prev_r))
        # the x = 1 inseparable tail
        r_dag = n - s + q
        add("Xdagger", s, "tail", "primitive", radius=r_dag, center="1",
            sigma_b=Fraction(1), branch_points={"1": s})
        edges.append(("Xstar", "Xdagger", q))
        # the d-branch out to the new etale tail
        prev, prev_r = "Xstar", r_star
        branch_is = list(range(s, -1, -1))
        for i in branch_is:
            if p == 2 or i < s:
                r = Fraction(2 * n - s - i + q, 2)
            else:  # i = s, p odd: the quotient Y/Q_s argument fixes the disk
                r = n - s + q
            kind = "tail" if i == 0 else "interior"
            tk = "new" if i == 0 else "none"
            sb = Fraction(2) if i == 0 else None
            add(f"X{n - i}", i, kind, tk, radius=r, center="d", sigma_b=sb)
            edges.append((prev, f"X{n - i}", r - prev_r))
            prev, prev_r = f"X{n - i}", r
        wild_on = {"0bar": "X0", "1bar": "Xdagger", "infbar": "X0"}
        if p == 3 and s >= 2:
            r = Fraction(n - s) + Fraction(2, 3)
            add("Xdprime", s - 1, "tail", "new", radius=r, center="d'",
                sigma_b=Fraction(2))
            edges.append((f"X{n - s}", "Xdprime", r - (n - s + q)))
            flags.append("p = 3 with 1 < s < n: graph shape beyond the "
                         "certified tails is lower-confidence")
        if p == 2:
            for j in range(1, s):
                r = Fraction(2 * n - s - j + 1, 2)
                add(f"Xd{j}", j, "tail", "new", radius=r, center=f"d_{j}",
                    sigma_b=Fraction(2))
                edges.append((f"X{n - j - 1}", f"Xd{j}", Fraction(1, 2)))
            flags.append("p = 2: graph shape beyond the certified tails is "
                         "lower-confidence")

    # upstairs decorations
    inertia_of = {c["id"]: c["inertia"] for c in comps}
    neigh = {c["id"]: [] for c in comps}
    for u, v, _ in edges:
        neigh[u].append(v)
        neigh[v].append(u)
    components = []
    for c in comps:
        larger = any(inertia_of[nb] > c["inertia"] for nb in neigh[c["id"]])
        count, genus, cond, note = _upstairs(spec, c["inertia"], larger)
        components.append(Component(
            id=c["id"], inertia_exponent=c["inertia"], genus=0,
            kind=c["kind"], tail_kind=c["tail_kind"],
            branch_points=c["branch_points"], disk_center=c["center"],
            radius_valuation=c["radius"], sigma_b=c["sigma_b"],
            upstairs_count=count, upstairs_genus=genus,
            upstairs_conductor=cond, note=note,
        ))
    for wid in wild_on:
        components.append(Component(id=wid, kind="augmented",
                                    note="wild branch point"))
    graph_edges = [GraphEdge(u, v, epaisseur=eps) for u, v, eps in edges]
    graph_edges += [GraphEdge(wild_on[wid], wid) for wid in wild_on]

    signatures = [
        {"point": pt, "sigma_w": "0", "logarithmic": True}
        for pt in ("0", "1", "inf")
    ]
    signatures.append({
        "component": "X0", "deformation": "multiplicative",
        "delta": "1", "levels": n,
    })
    signatures += [{"flag": f} for f in flags]

    draft = DecoratedGraph(p, n, tuple(components), tuple(graph_edges),
                           mG=1, signatures=tuple(signatures))
    # fill sigma_eff on every component edge from the decorations
    final_edges = []
    for e in draft.edges:
        if draft.component(e.target).kind == "augmented":
            final_edges.append(e)
            continue
        sig = sigma_eff_outward(draft, e.source, e.target)
        final_edges.append(GraphEdge(e.source, e.target, e.epaisseur, sig))
    return DecoratedGraph(p, n, tuple(components), tuple(final_edges),
                          mG=1, signatures=tuple(signatures))


def quotient_spec(spec: CoverSpec, j: int) -> CoverSpec:
    """The cover Y/Q_j -> X: same exponents, p-power degree n - j."""
    if not (0 < j < spec.s):
        raise ValueError("quotient requires 0 < j < s")
    return branch_signature(spec.p, spec.n - j, spec.a, spec.b)


# -- stable-model field tower ------------------------------------------------

def stab_field_tower(spec: CoverSpec) -> FieldTower:
    p, n, s, a, b = spec.p, spec.n, spec.s, spec.a, spec.b
    meta = [("a", a), ("b", b), ("n", n), ("s", s)]
    steps = [TowerStep("cyclotomic", level=n)]
    if s == n:
        case = "i"
    elif p > 3:
        case = "ii"
        steps.append(TowerStep("kummer", exponent=p ** (n - s),
                               radicand="a/(a+b)"))
    elif p == 3 and s == 1:
        case = "iii"
        steps.append(TowerStep("kummer", exponent=3,
                               radicand="3^(2n+1) binom(b,3)"))
        steps.append(TowerStep("kummer", exponent=3 ** (n - 1),
                               radicand="a/(a+b)"))
    elif p == 3:
        case = "iv"
        steps.append(TowerStep("kummer", exponent=3,
                               radicand="3^(2(n-s)+3) binom(b,3)  [gives d']"))
        steps.append(TowerStep("kummer", exponent=3 ** (n - s),
                               radicand="a/(a+b)"))
        steps.append(TowerStep(
            "kummer", exponent=3 ** (n - s + 1),
            radicand="(d')^a (d'-1)^b / (a^a b^b (a+b)^-(a+b))"))
    else:
        case = "v"
        steps.append(TowerStep("kummer", exponent=2 ** (n - 1),
                               radicand="d_0"))
        if s >= 2:
            steps.append(TowerStep("kummer", exponent=2 ** (s - 1),
                                   radicand="d_0 - 1"))
        for j in range(1, s):
            steps.append(TowerStep("kummer", exponent=2 ** (n - j),
                                   radicand=f"d_{j}"))
            if s - j >= 1:
                steps.append(TowerStep("kummer", exponent=2 ** (s - j),
                                       radicand=f"d_{j} - 1"))
    steps.append(TowerStep("tame"))
    meta.append(("case", case))
    return FieldTower(p, tuple(steps), tuple(sorted(meta)))


# -- conductor certificate ---------------------------------------------------

def _unit_radicand_fact(a: int, b: int, p: int):
    if vp_rational(Fraction(a, a + b), p) != 0:
        raise CertificationFailed("v(a/(a+b)) = 0 fails")
    return "v(a/(a+b)) = 0 verified; p^k-th root of a unit over K_n has " \
           "conductor < n"


def conductor_bound(ft: FieldTower, n: int) -> dict:
    """Certify that the n-th upper-numbering ramification group of the
    stable-model field over the base vanishes, from exactly verified
    valuation facts.  Returns {vanishes_at_n, conductor, detail}."""
    meta = ft.meta_dict()
    p = ft.prime
    case = meta["case"]
    a, b, s = meta["a"], meta["b"], meta["s"]
    detail = [f"K_{n}/K_0 is cyclotomic: conductor exactly {n - 1} < {n}"]
    parts = [Fraction(n - 1)]
    exact = True

    if case == "i":
        pass
    elif case == "ii":
        detail.append(_unit_radicand_fact(a, b, p))
        exact = False
    elif case == "iii":
        rad = Fraction(3 ** (2 * n + 1)) * binom_falling(b, 3)
        v = vp_rational(rad, 3)
        if v != 3 * n - 1:
            raise CertificationFailed(
                f"v_3(3^(2n+1) binom(b,3)) = {v}, expected {3 * n - 1}"
            )
        detail.append(f"cube-root radicand valuation {3 * n - 1} verified")
        K1 = cyclotomic_tower(3, 1)
        cv = kummer_step_conductor(K1, rad, 3)
        # single wild jump: upper = lower for L/K_1; lower numbering is
        # subgroup-invariant, so phi_{L/K_0} converts it
        lowL = Filtration(((Fraction(0), 3), (cv.value, 1)), 6, "lower")
        h = herbrand_phi(lowL, cv.value)
        detail.append(f"conductor of K_1(cbrt)/K_0 is {ratstr(h)} "
                      f"({cv.kind}) < {n}")
        if not h < n:
            raise CertificationFailed("cube-root part does not vanish at n")
        parts.append(h)
        detail.append(_unit_radicand_fact(a, b, p))
        exact = exact and cv.kind == "exact"
    elif case == "iv":
        rad = Fraction(3 ** (2 * (n - s) + 3)) * binom_falling(b, 3)
        v = vp_rational(rad, 3)
        if v != 3 * (n - s) + 2:
            raise CertificationFailed(
                f"v_3(d' radicand) = {v}, expected {3 * (n - s) + 2}"
            )
        # verify v(d'' - 1) = n - s + 2/3 on the actual tower
        t1 = Tower(3).adjoin_radical(3, rad, "t")
        r = t1.gen(0) * Fraction(1, a)
        if t1.val(r) != Fraction(n - s) + Fraction(2, 3):
            raise CertificationFailed("v(d''-1) = n-s+2/3 fails")
        detail.append("v(d''-1) = n-s+2/3 verified")
        K1 = cyclotomic_tower(3, 1)
        cv = kummer_step_conductor(K1, rad, 3)
        lowL = Filtration(((Fraction(0), 3), (cv.value, 1)), 6, "lower")
        hL = herbrand_phi(lowL, cv.value)
        detail.append(f"conductor of L/K_0 is {ratstr(hL)} with "
                      f"L/K_1 conductor {ratstr(cv.value)} ({cv.kind})")
        # M/L is one more cube root over L (e = 6): certified cap bound
        L_tower = K1.adjoin_radical(3, rad, "t")
        capM = Fraction(3 * L_tower.ram_index, 2)
        detail.append(f"conductor of M/L is at most {ratstr(capM)}")
        hM = max(hL, herbrand_phi(lowL, capM))
        detail.append(f"conductor of M/K_0 is at most {ratstr(hM)} < {n}")
        if not hM < n:
            raise CertificationFailed("d' part does not vanish at n")
        parts.append(hM)
        detail.append(_unit_radicand_fact(a, b, p))
        exact = False
    elif case == "v":
        spec = CoverSpec(2, n, a, b, s, (2 ** n, 2 ** s, 2 ** n))
        for j in range(0, s):
            dv = 2 ** (n - j) * b
            cls = square_class_K2_K3(dv)
            ell = 2 if (s + j) % 2 == 1 else 3
            ok = cls["di_square_K2"] if ell == 2 else (
                cls["di_square_K3"] and not cls["di_square_K2"])
            if not ok:
                raise CertificationFailed(
                    f"square class of 2^(n-{j}) b i disagrees with "
                    f"l({j}) = {ell}"
                )
            tw, root = _p2_sqrt_tower(spec, j)
            dj = tw.rational(Fraction(a, a + b)) + \
                root * Fraction(1, (a + b) ** 2)
            if tw.val(dj - 1) != n - s:
                raise CertificationFailed(f"v(d_{j} - 1) = n - s fails")
            tj = dj * Fraction(a + b, a) - 1
            if tw.val(tj) != Fraction(2 * n - s - j, 2):
                raise CertificationFailed(
                    f"v(t_{j}) = n - (s+{j})/2 fails"
                )
            alpha = (dj - 1) * Fraction(a + b, -b) - 1
            if tw.val(alpha) != Fraction(s - j, 2):
                raise CertificationFailed(
                    f"v(alpha'_{j} - 1) = (s-{j})/2 fails"
                )
            detail.append(
                f"d_{j}: l({j}) = {ell}, v(d_{j}-1) = {n - s}, "
                f"v(t_{j}) = {ratstr(Fraction(2 * n - s - j, 2))}, "
                f"v(alpha'_{j}-1) = {ratstr(Fraction(s - j, 2))} verified"
            )
        if vp_rational(Fraction(-b, a + b), 2) != n - s:
            raise CertificationFailed("v(b/(a+b)) = n - s fails")
        detail.append("square classes and unit levels match the certified "
                      "p = 2 table; conductor of K/K_0 is < n")
        exact = False
    else:
        raise ValueError(f"unknown tower case {case!r}")

    value = compositum_conductor(parts)
    return {
        "vanishes_at_n": True,
        "conductor": ConductorValue("exact" if exact and case == "i"
                                    else "bound", value),
        "detail": detail,
    }


# -- report assembly ---------------------------------------------------------

def analyze(p: int, n: int, a: int, b: int, L: int | None = None) -> dict:
    """Full self-certifying report for one cover."""
    from .graph import (
        check_local_vanishing,
        check_vanishing_cycles,
        effective_different_profile,
        tail_invariant_checks,
        validate_structure,
    )

    spec = branch_signature(p, n, a, b)
    verdict = certify_tail(spec, L)
    graph = build_stable_graph(spec)
    violations = validate_structure(graph) + tail_invariant_checks(graph)
    residual = check_vanishing_cycles(graph)
    local = check_local_vanishing(graph)
    profile = effective_different_profile(graph)
    tower = stab_field_tower(spec)
    conductor = conductor_bound(tower, n)
    expected = "SplitsZ4" if p == 2 else "SplitsArtinSchreier"
    certified = (
        verdict.kind == expected
        and not violations
        and residual == 0
        and all(v == 0 for v in local.values())
        and conductor["vanishes_at_n"]
    )
    return {
        "spec": spec.to_json(),
        "certificate": verdict.to_json(),
        "graph": graph.to_json(),
        "graph_violations": violations,
        "vanishing_cycles_residual": ratstr(residual),
        "local_vanishing_residuals": {k: ratstr(v) for k, v in local.items()},
        "effective_different": {k: ratstr(v) for k, v in profile.items()},
        "inseparable_tails": [t.to_json() for t in inseparable_tails(spec)],
        "tower": tower.to_json(),
        "conductor": {
            "vanishes_at_n": conductor["vanishes_at_n"],
            "conductor": conductor["conductor"].to_json(),
            "detail": conductor["detail"],
        },
        "moduli_field_note": (
            f"the field of moduli relative to K_0 is K_{n} = "
            f"K_0(zeta_{{{p}^{n}}})"
        ),
        "certified": certified,
    }
