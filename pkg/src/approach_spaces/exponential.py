"""The function-space structure on contractions ``X -> [0, inf]``.

For a pseudo-approach space ``X`` the exponential ``[0, inf]^X`` carries the
coarsest convergence ``d`` that makes evaluation a contraction.  At the
principal ultrafilter of ``psi`` only the ultrafilters ``(psi, x0)``
project onto it, which gives the closed form used by :func:`d_principal`::

    d(psi, phi) = max { phi(x) - psi(x0) | phi(x) - psi(x0) > dm(x0, x) }   (0 if none)

:func:`d_bruteforce` evaluates the defining infimum by enumerating the
ultrafilters on ``family x X`` instead.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .approach import (ApproachSpace, check_halfline_contraction, halfline_conv,
                       label, phi_uv)
from .numrel import NumRel, PointSet
from .quantale import INF, ZERO, Cost, CostLike, add, inf_of, join, ominus
from .reports import CheckReport, Witness, to_jsonable
from . import ultra

__all__ = [
    "ContractionFn", "NotAContraction", "ProbeFamily", "ReplayReport", "ReplayStep",
    "contraction_fn", "d_principal", "d_bruteforce", "yoneda", "yoneda0",
    "scale_fn", "check_umaxact", "replay_theorem",
]


class NotAContraction(ValueError):
    pass


@dataclass(frozen=True)
class ContractionFn:
    """A map ``X -> [0, inf]`` together with its contraction certificate."""

    space: ApproachSpace
    values: tuple
    name: str = field(default="", compare=False)
    certificate: CheckReport = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        vals = tuple(Cost(v) for v in self.values)
        if len(vals) != len(self.space.points):
            raise ValueError("one value per point is required")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "certificate",
                           check_halfline_contraction(self.space, vals))

    @property
    def certified(self) -> bool:
        return self.certificate.ok

    def __call__(self, x) -> Cost:
        return self.values[self.space.points.index(x)]

    def as_dict(self) -> dict:
        return {label(x): v for x, v in zip(self.space.points, self.values)}

    def __str__(self):
        return self.name or "[" + ", ".join(str(v) for v in self.values) + "]"


def contraction_fn(space: ApproachSpace, values: Sequence[CostLike] | Mapping,
                   name: str = "") -> ContractionFn:
    if isinstance(values, Mapping):
        by_label = {str(k): v for k, v in values.items()}
        try:
            values = [by_label[label(x)] for x in space.points]
        except KeyError as exc:
            raise KeyError(f"no value for point {exc.args[0]}") from None
    return ContractionFn(space, tuple(values), name)


def _require(*fns: ContractionFn):
    for f in fns:
        if not f.certified:
            w = f.certificate.witness
            raise NotAContraction(f"{f} is not a contraction: {w.check} at {w.at}")


def d_principal(space: ApproachSpace, psi: ContractionFn, phi: ContractionFn,
                check: bool = True) -> Cost:
    """``d(principal(psi), phi)`` in closed form.

    ``check=False`` evaluates the formula on uncertified maps too; such a
    value is not a point of the exponential.
    """
    if check:
        _require(psi, phi)
    e = space.matrix.entries
    best = ZERO
    for i, p0 in enumerate(psi.values):
        for j, f in enumerate(phi.values):
            t = ominus(f, p0)
            if t > e[i][j] and t > best:
                best = t
    return best


class ProbeFamily:
    """A finite window into ``[0, inf]^X``: some certified functions."""

    def __init__(self, space: ApproachSpace, members, check: bool = True):
        members = list(members)
        if check:
            _require(*members)
        for f in members:
            if f.space != space:
                raise ValueError("family members live on a different space")
        self.space = space
        self.points = PointSet.dedup(members)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def d_relation(self) -> NumRel:
        """``d`` restricted to principal ultrafilters: ``U(family) -|-> family``."""
        F = self.points
        UF = ultra.ultra_set(F)
        return NumRel(UF, F, tuple(
            tuple(d_principal(self.space, p.point, f) for f in F) for p in UF))


def d_bruteforce(family: ProbeFamily, psi: ContractionFn, phi: ContractionFn,
                 check: bool = True) -> Cost:
    """``inf {u | for all q over psi and x: u v a(U pi2 q, x) >= b(U ev q, phi x)}``.

    ``q`` ranges over every ultrafilter on ``family x X`` whose first marginal
    is principal at ``psi``; ``U ev`` is built by preimages and the half-line
    convergence uses the literal xi.
    """
    if check:
        _require(psi, phi)
    space = family.space
    F, X = family.points, space.points
    FX = F.product(X)
    V = ultra.value_carrier(f(x) for f in F for x in X)
    target = ultra.unit(psi, F)
    conditions = []
    for q in ultra.enumerate_ultrafilters(FX):
        if ultra.push_forward(lambda p: p[0], q, F) != target:
            continue
        xq = ultra.push_forward(lambda p: p[1], q, X)
        evq = ultra.push_forward_literal(lambda p: p[0](p[1]), q, V)
        for x in X:
            conditions.append((space.conv(xq, x), halfline_conv(evq, phi(x))))
    candidates = sorted({ZERO, INF} | {b for _, b in conditions})
    for u in candidates:
        if all(join(u, a) >= b for a, b in conditions):
            return u
    raise AssertionError("inf always satisfies the condition")


def yoneda(space: ApproachSpace) -> dict:
    """``principal(z) -> (x -> dm(z, x))`` for every point z."""
    out = {}
    for i, uf in enumerate(ultra.enumerate_ultrafilters(space.points)):
        out[uf] = ContractionFn(space, space.matrix.entries[i], f"y({uf.point})")
    return out


def yoneda0(space: ApproachSpace) -> dict:
    """``y . e_X``: point -> its row."""
    return {uf.point: f for uf, f in yoneda(space).items()}


def scale_fn(u: CostLike, phi: ContractionFn) -> ContractionFn:
    u = Cost(u)
    _require(phi)
    name = f"{u} v {phi.name}" if phi.name else ""
    return ContractionFn(phi.space, tuple(join(u, v) for v in phi.values), name)


def check_umaxact(space: ApproachSpace, psi: ContractionFn, phi: ContractionFn,
                  u: CostLike) -> CheckReport:
    """Both inequalities ``u v d(p, phi) >= d(p, u v phi)`` and
    ``u v Ud(P, p) >= Ud(P, u v p)`` at principal ``p`` and ``P``.

    The second is evaluated through the ultrafilter machinery on the family
    ``{psi, phi, u v phi}``.
    """
    u = Cost(u)
    uphi = scale_fn(u, phi)
    lhs1, rhs1 = join(u, d_principal(space, psi, phi)), d_principal(space, psi, uphi)

    fam = ProbeFamily(space, [psi, phi, uphi])
    F = fam.points
    UF = ultra.ultra_set(F)
    Ud = ultra.extend(fam.d_relation())
    P = ultra.FinUltrafilter(UF, ultra.unit(psi, F))
    p = ultra.unit(phi, F)
    up = ultra.push_forward(lambda f: scale_fn(u, f), p, F)
    lhs2, rhs2 = join(u, Ud(P, p)), Ud(P, up)

    at = {"psi": str(psi), "phi": str(phi), "u": str(u)}
    if lhs1 < rhs1:
        return CheckReport(False, "umaxact", Witness("u v d >= d(-, u v phi)", at, lhs1, rhs1))
    if lhs2 < rhs2:
        return CheckReport(False, "umaxact", Witness("u v Ud >= Ud(-, u v p)", at, lhs2, rhs2))
    return CheckReport(True, "umaxact")


# -- replay of the necessity proof ---------------------------------------------

@dataclass
class ReplayStep:
    name: str
    relation: str
    lhs: Cost
    rhs: Cost
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs if self.relation == "=" else self.lhs >= self.rhs

    def to_dict(self):
        return {"name": self.name, "relation": self.relation, "lhs": str(self.lhs),
                "rhs": str(self.rhs), "holds": self.holds, "note": self.note}


@dataclass
class ReplayReport:
    inputs: dict
    quantities: dict
    steps: list
    criterion: ReplayStep

    @property
    def break_step(self) -> str | None:
        for s in self.steps:
            if not s.holds:
                return s.name
        return None

    @property
    def facts_hold(self) -> bool:
        return all(s.holds for s in self.steps if s.name.startswith("fact"))

    def step(self, name: str) -> ReplayStep:
        return next(s for s in self.steps if s.name == name)

    def to_dict(self):
        return {
            "inputs": to_jsonable(self.inputs),
            "quantities": to_jsonable(self.quantities),
            "steps": [s.to_dict() for s in self.steps],
            "break": self.break_step,
            "criterion": self.criterion.to_dict(),
        }


def replay_theorem(space: ApproachSpace, z, x0, u: CostLike, v: CostLike) -> ReplayReport:
    """Evaluate every quantity of the necessity argument at one instance.

    The iterated ultrafilter is the principal one at ``principal(z)``.  Steps
    are reported in proof order; ``break_step`` names the first that fails.
    """
    u, v = Cost(u), Cost(v)
    X = space.points
    UX = ultra.ultra_set(X)
    XX = ultra.FinUltrafilter(UX, ultra.unit(z, X))

    y = yoneda(space)
    y0 = yoneda0(space)
    phi = ContractionFn(space, phi_uv(space, z, u, v), f"phi[{u},{v}]")
    members = list(y.values()) + [scale_fn(v, y0[z]), phi]
    fam = ProbeFamily(space, members)
    F = fam.points
    UF = ultra.ultra_set(F)
    FX = F.product(X)
    UFX = ultra.ultra_set(FX)

    p = ultra.push_forward(y, XX, F)
    P = ultra.push_forward(lambda uf: ultra.push_forward(y0, uf, F), XX, UF)
    Q = ultra.push_forward(
        lambda uf: ultra.push_forward(lambda x: (y0[x], x), uf, FX), XX, UFX)
    Q_marg1 = ultra.push_forward(
        lambda w: ultra.push_forward(lambda q: q[0], w, F), Q, UF)
    Q_marg2 = ultra.push_forward(
        lambda w: ultra.push_forward(lambda q: q[1], w, X), Q, UX)

    D = fam.d_relation()
    UD = ultra.extend(D)
    mQ = ultra.mult(Q)
    V = ultra.value_carrier(f(x) for f in F for x in X)
    ev = lambda q: q[0](q[1])
    if len(V) <= ultra.LITERAL_CAP:
        xi_ev_mQ, xi_mode = ultra.xi_literal(ultra.push_forward_literal(ev, mQ, V)), "literal"
    else:  # too many values to enumerate subsets; principal collapse instead
        xi_ev_mQ, xi_mode = ultra.xi(ultra.push_forward(ev, mQ, V)), "principal"
    vp = ultra.push_forward(lambda f: scale_fn(v, f), p, F)
    mP = ultra.mult(P)
    mXX = ultra.mult(XX)
    a_lim = space.conv(mXX, x0)
    d_vp_phi = D(vp, phi)
    Ud_P_vp = UD(P, vp)
    d_mP_phi = D(mP, phi)
    d_prime = join(D(ultra.push_forward(lambda q: q[0], mQ, F), phi),
                   space.conv(ultra.push_forward(lambda q: q[1], mQ, X), x0))
    phi_x0 = phi(x0)
    a = space.convergence()
    phi_literal = inf_of(
        add(join(u, a(xx, x0)), join(v, ultra.extend(a)(XX, xx))) for xx in UX)

    quantities = {
        "p": str(p), "P": str(P), "Q": str(Q),
        "UUpi1(Q) = P": Q_marg1 == P, "UUpi2(Q) = XX": Q_marg2 == XX,
        "phi_uv": phi.as_dict(), "v.p": str(vp), "m(P)": str(mP),
        "a(m(XX), x0)": a_lim, "xi.Uev.m(Q)": xi_ev_mQ, "xi evaluation": xi_mode,
        "Ud(P, v.p) + d(v.p, phi)": add(Ud_P_vp, d_vp_phi),
        "d(m(P), phi)": d_mP_phi, "family size": len(F),
    }
    steps = [
        ReplayStep("fact1a", "=", ZERO, xi_ev_mQ, "xi . Uev . m(Q)"),
        ReplayStep("fact1b", "=", ZERO, UD(P, p), "Ud(P, p)"),
        ReplayStep("fact2", ">=", v, Ud_P_vp, "v >= Ud(P, v.p)"),
        ReplayStep("fact3", ">=", u, d_vp_phi, "u >= d(v.p, phi)"),
        ReplayStep("d-transitivity", ">=", add(u, v), d_mP_phi,
                   "u + v >= d(m(P), phi)"),
        ReplayStep("join", ">=", join(add(u, v), a_lim), join(d_mP_phi, a_lim),
                   "(u+v) v a(m(XX), x0) >= d(m(P), phi) v a(m(XX), x0)"),
        ReplayStep("product", "=", join(d_mP_phi, a_lim), d_prime,
                   "= d'(m(Q), (phi, x0))"),
        ReplayStep("ev-contraction", ">=", d_prime, ominus(phi_x0, xi_ev_mQ),
                   "d'(m(Q), (phi, x0)) >= phi(x0) - xi.Uev.m(Q)"),
        ReplayStep("fact1-substitution", "=", ominus(phi_x0, xi_ev_mQ), phi_x0,
                   "phi(x0) - xi.Uev.m(Q) = phi(x0)"),
        ReplayStep("phi-definition", "=", phi_x0, phi_literal,
                   "phi(x0) = inf over UX"),
    ]
    criterion = ReplayStep("criterion", ">=", join(add(u, v), a_lim), phi_x0,
                           "(u+v) v a(m(XX), x0) >= phi(x0)")
    inputs = {"z": label(z), "x0": label(x0), "u": u, "v": v}
    return ReplayReport(inputs, quantities, steps, criterion)
