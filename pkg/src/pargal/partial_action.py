"""Unital partial actions of a finite group on a finite commutative ring.

An action assigns to each g an idempotent 1_g (so D_g = R·1_g) and a ring
isomorphism alpha_g : D_{g^-1} -> D_g.  alpha[g] is stored as a total
table on D_{g^-1} with -1 outside it; applying alpha_g to an arbitrary r
always means alpha_g(r·1_{g^-1}).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DefectError
from .finring import (FiniteRing, Subring, corner_ring, idempotents,
                      primitive_idempotents, subring_from_members)
from .groups import FiniteGroup


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: dict
    detail: str

    def __str__(self):
        w = ", ".join(f"{k}={v}" for k, v in self.witness.items())
        return f"[{self.axiom}] {self.detail} ({w})"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]
    counts: dict

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        if self.ok:
            return "valid: all partial action axioms hold"
        lines = [f"INVALID: {sum(self.counts.values())} violation(s) "
                 f"across {len(self.counts)} axiom(s)"]
        for v in self.violations:
            lines.append("  " + str(v))
        for ax, c in sorted(self.counts.items()):
            lines.append(f"  axiom {ax}: {c} total")
        return "\n".join(lines)


_WITNESS_CAP = 3  # per axiom; counts still reflect every violation


class _Collector:
    def __init__(self):
        self.violations = []
        self.counts = {}

    def hit(self, axiom, witness, detail, extra=0):
        n = self.counts.get(axiom, 0)
        if n < _WITNESS_CAP:
            self.violations.append(Violation(axiom, witness, detail))
        self.counts[axiom] = n + 1 + extra

    def report(self):
        return ValidationReport(tuple(self.violations), dict(self.counts))


def _additive_generators(ring: FiniteRing, members: np.ndarray) -> list[int]:
    """Small set generating the additive group of the given ideal."""
    mem = [int(m) for m in members]
    in_span = np.zeros(ring.order, dtype=bool)
    in_span[ring.zero] = True
    gens = []
    for m in mem:
        if in_span[m]:
            continue
        gens.append(m)
        current = np.nonzero(in_span)[0]
        while True:
            new = np.unique(ring.add[current, m])
            fresh = new[~in_span[new]]
            if fresh.size == 0:
                break
            in_span[fresh] = True
            current = np.nonzero(in_span)[0]
    return gens


def validate(ring: FiniteRing, group: FiniteGroup, one_g, alpha) -> ValidationReport:
    """Check all unital partial action axioms on raw tables.

    Violations are data: every broken axiom is reported with a concrete
    witness (element/group indices); an empty report certifies the axioms.
    """
    col = _Collector()
    nR, nG = ring.order, group.order
    one_g = np.asarray(one_g, dtype=np.int64)
    alpha = np.asarray(alpha, dtype=np.int64)
    if one_g.shape != (nG,) or alpha.shape != (nG, nR):
        col.hit("shape", {"one_g": one_g.shape, "alpha": alpha.shape},
                f"expected one_g ({nG},) and alpha ({nG}, {nR})")
        return col.report()
    if one_g.min() < 0 or one_g.max() >= nR or alpha.min() < -1 or alpha.max() >= nR:
        col.hit("shape", {}, "table entries out of element range")
        return col.report()

    inv = group.inverse_table
    gid = group.identity

    for g in range(nG):
        e = int(one_g[g])
        if int(ring.mul[e, e]) != e:
            col.hit("one-idempotent", {"g": g, "e": e},
                    "1_g is not idempotent")

    if int(one_g[gid]) != ring.one:
        col.hit("identity-component", {"g": gid, "e": int(one_g[gid])},
                "1_1 must be the ring identity")
    else:
        bad = np.nonzero(alpha[gid] != np.arange(nR))[0]
        if bad.size:
            col.hit("identity-component", {"g": gid, "r": int(bad[0])},
                    "alpha_1 must be the identity map",
                    extra=int(bad.size) - 1)

    # definedness: alpha[g] is a total map exactly on D_{g^-1}
    dom_ok = np.ones(nG, dtype=bool)
    for g in range(nG):
        e_in = int(one_g[inv[g]])
        in_dom = ring.mul[:, e_in] == np.arange(nR)
        defined = alpha[g] >= 0
        missing = np.nonzero(in_dom & ~defined)[0]
        spurious = np.nonzero(~in_dom & defined)[0]
        for r in missing[:_WITNESS_CAP]:
            col.hit("domain-definedness", {"g": g, "r": int(r)},
                    "alpha_g undefined on a member of D_{g^-1}")
        for r in spurious[:_WITNESS_CAP]:
            col.hit("domain-definedness", {"g": g, "r": int(r)},
                    "alpha_g defined outside D_{g^-1}")
        if missing.size or spurious.size:
            dom_ok[g] = False

    # the remaining checks read alpha through a totalised table; broken
    # entries collapse to 0 and are already reported above
    safe = np.where(alpha >= 0, alpha, ring.zero)
    ahat = np.empty((nG, nR), dtype=np.int64)
    for g in range(nG):
        ahat[g] = safe[g][ring.mul[:, one_g[inv[g]]]]

    for g in range(nG):
        if not dom_ok[g]:
            continue
        e_in, e_out = int(one_g[inv[g]]), int(one_g[g])
        members = np.nonzero(ring.mul[:, e_in] == np.arange(nR))[0]
        image = safe[g][members]
        out_members = ring.mul[:, e_out] == np.arange(nR)
        if (len(np.unique(image)) != len(members)
                or not out_members[image].all()
                or len(members) != int(out_members.sum())):
            col.hit("bijection", {"g": g},
                    "alpha_g is not a bijection from D_{g^-1} onto D_g")
            continue
        if int(safe[g][e_in]) != e_out:
            col.hit("unit-to-unit", {"g": g, "got": int(safe[g][e_in])},
                    "alpha_g(1_{g^-1}) != 1_g")
        gens = _additive_generators(ring, members)
        for a in gens:
            lhs = safe[g][ring.add[a, members]]
            rhs = ring.add[safe[g][a], image]
            bad = np.nonzero(lhs != rhs)[0]
            if bad.size:
                col.hit("additive", {"g": g, "a": a, "b": int(members[bad[0]])},
                        "alpha_g(a+b) != alpha_g(a)+alpha_g(b)",
                        extra=int(bad.size) - 1)
        for a in gens:
            for b in gens:
                lhs = int(safe[g][ring.mul[a, b]])
                rhs = int(ring.mul[safe[g][a], safe[g][b]])
                if lhs != rhs:
                    col.hit("multiplicative", {"g": g, "a": a, "b": b},
                            "alpha_g(ab) != alpha_g(a)alpha_g(b)")

    # unital compatibility: alpha_g(1_h 1_{g^-1}) = 1_g 1_{gh}
    for g in range(nG):
        for h in range(nG):
            lhs = int(ahat[g][one_g[h]])
            rhs = int(ring.mul[one_g[g], one_g[group.table[g, h]]])
            if lhs != rhs:
                col.hit("unital-compatibility", {"g": g, "h": h},
                        "alpha_g(1_h 1_{g^-1}) != 1_g 1_{gh}")

    # composition: alpha_g(alpha_h(s 1_{h^-1}) 1_{g^-1}) 1_g = alpha_{gh}(s 1_{(gh)^-1}) 1_g
    for g in range(nG):
        eg = int(one_g[g])
        for h in range(nG):
            gh = int(group.table[g, h])
            lhs = ring.mul[ahat[g][ahat[h]], eg]
            rhs = ring.mul[ahat[gh], eg]
            bad = np.nonzero(lhs != rhs)[0]
            if bad.size:
                col.hit("composition",
                        {"g": g, "h": h, "s": int(bad[0])},
                        "alpha_g . alpha_h and alpha_{gh} disagree",
                        extra=int(bad.size) - 1)

    # inverse pairing: alpha_{g^-1} inverts alpha_g on D_{g^-1}
    for g in range(nG):
        if not (dom_ok[g] and dom_ok[inv[g]]):
            continue
        e_in = int(one_g[inv[g]])
        members = np.nonzero(ring.mul[:, e_in] == np.arange(nR))[0]
        back = safe[inv[g]][safe[g][members]]
        bad = np.nonzero(back != members)[0]
        if bad.size:
            col.hit("inverse-pairing", {"g": g, "r": int(members[bad[0]])},
                    "alpha_{g^-1}(alpha_g(r)) != r",
                    extra=int(bad.size) - 1)

    return col.report()


@dataclass(frozen=True, eq=False)
class PartialAction:
    ring: FiniteRing
    group: FiniteGroup
    one_g: np.ndarray
    alpha: np.ndarray
    tag: str = ""

    def __post_init__(self):
        report = validate(self.ring, self.group, self.one_g, self.alpha)
        if not report.ok:
            raise DefectError(f"invalid partial action\n{report}")

    @cached_property
    def alpha_hat(self) -> np.ndarray:
        """Total tables: alpha_hat[g][r] = alpha_g(r·1_{g^-1})."""
        inv = self.group.inverse_table
        out = np.empty((self.group.order, self.ring.order), dtype=np.int64)
        for g in range(self.group.order):
            out[g] = self.alpha[g][self.ring.mul[:, self.one_g[inv[g]]]]
        return out

    def one(self, g: int) -> int:
        return int(self.one_g[g])

    def apply(self, g: int, r: int) -> int:
        """alpha_g(r·1_{g^-1})."""
        return int(self.alpha_hat[g, r])

    def domain_members(self, g: int) -> tuple[int, ...]:
        return self.ring.corner_members(int(self.one_g[g]))

    def is_global(self) -> bool:
        return bool((self.one_g == self.ring.one).all())

    def __repr__(self):
        label = self.tag or "partial action"
        return (f"PartialAction({label}: {self.group.tag} on {self.ring.tag}, "
                f"domains {[len(self.domain_members(g)) for g in range(self.group.order)]})")


def trivial_partial_action(ring: FiniteRing, group: FiniteGroup,
                           tag: str = "") -> PartialAction:
    nG, nR = group.order, ring.order
    one_g = np.full(nG, ring.one, dtype=np.int64)
    alpha = np.tile(np.arange(nR, dtype=np.int64), (nG, 1))
    return PartialAction(ring, group, one_g, alpha, tag=tag or "trivial")


@dataclass(frozen=True, eq=False)
class GlobalAction:
    ring: FiniteRing
    group: FiniteGroup
    sigma: np.ndarray  # (|G|, |R|) automorphism tables
    tag: str = ""

    def __post_init__(self):
        nR, nG = self.ring.order, self.group.order
        if self.sigma.shape != (nG, nR):
            raise ValueError("sigma tables have wrong shape")
        if not np.array_equal(self.sigma[self.group.identity], np.arange(nR)):
            raise ValueError("sigma_1 is not the identity")
        gens = _additive_generators(self.ring, np.arange(nR))
        for g in range(nG):
            s = self.sigma[g]
            if sorted(s.tolist()) != list(range(nR)):
                raise ValueError(f"sigma_{g} is not a bijection")
            if int(s[self.ring.one]) != self.ring.one:
                raise ValueError(f"sigma_{g} moves the identity")
            for a in gens:
                if not np.array_equal(s[self.ring.add[a]], self.ring.add[s[a]][s]):
                    raise ValueError(f"sigma_{g} is not additive")
                for b in gens:
                    if int(s[self.ring.mul[a, b]]) != int(self.ring.mul[s[a], s[b]]):
                        raise ValueError(f"sigma_{g} is not multiplicative")
        for g in range(nG):
            for h in range(nG):
                gh = int(self.group.table[g, h])
                if not np.array_equal(self.sigma[g][self.sigma[h]], self.sigma[gh]):
                    raise ValueError(f"sigma_{g} . sigma_{h} != sigma_{{gh}}")

    def __repr__(self):
        label = self.tag or "global action"
        return f"GlobalAction({label}: {self.group.tag} on {self.ring.tag})"


def as_partial(glob: GlobalAction) -> PartialAction:
    """A global action is a partial action with every 1_g = 1."""
    nG = glob.group.order
    one_g = np.full(nG, glob.ring.one, dtype=np.int64)
    return PartialAction(glob.ring, glob.group, one_g, glob.sigma.copy(),
                         tag=glob.tag or "global")


def restrict_global(glob: GlobalAction, e: int, tag: str = "") -> PartialAction:
    """Restrict a global action to the corner Se: 1_g = e·sigma_g(e),
    alpha_g = sigma_g cut down to D_{g^-1}."""
    R, G, sig = glob.ring, glob.group, glob.sigma
    if not R.is_idempotent(e):
        raise ValueError(f"{e} is not idempotent")
    corner = corner_ring(R, e)
    members = np.array(R.corner_members(e), dtype=np.int64)
    to_loc = np.full(R.order, -1, dtype=np.int64)
    to_loc[members] = np.arange(len(members))
    nG = G.order
    inv = G.inverse_table
    one_amb = np.array([int(R.mul[e, sig[g][e]]) for g in range(nG)],
                       dtype=np.int64)
    one_loc = to_loc[one_amb]
    alpha = np.full((nG, corner.order), -1, dtype=np.int64)
    for g in range(nG):
        e_in = int(one_amb[inv[g]])
        dom = members[R.mul[members, e_in] == members]
        alpha[g][to_loc[dom]] = to_loc[sig[g][dom]]
    return PartialAction(corner, G, one_loc, alpha,
                         tag=tag or f"{glob.tag or 'global'}|e={R.names[e]}")


def invariant_subring(action: PartialAction) -> Subring:
    """{r in R : alpha_g(r·1_{g^-1}) = r·1_g for every g}."""
    R = action.ring
    mask = np.ones(R.order, dtype=bool)
    for g in range(action.group.order):
        mask &= action.alpha_hat[g] == R.mul[:, action.one_g[g]]
    return subring_from_members(R, np.nonzero(mask)[0])


@dataclass(frozen=True)
class OrbitReport:
    domain_sizes: tuple[int, ...]
    one_names: tuple[str, ...]
    one_heights: tuple[int, ...]          # primitive idempotents below 1_g
    idempotents: tuple[int, ...]
    dynamics: tuple[tuple[int, ...], ...]  # dynamics[g][i] = alpha_g(e_i·1_{g^-1})

    def __str__(self):
        lines = [f"domain sizes: {list(self.domain_sizes)}",
                 f"1_g: {list(self.one_names)}",
                 f"1_g heights: {list(self.one_heights)}"]
        lines.append(f"idempotents: {list(self.idempotents)}")
        for g, row in enumerate(self.dynamics):
            lines.append(f"  g={g}: e -> {list(row)}")
        return "\n".join(lines)


def orbit_report(action: PartialAction) -> OrbitReport:
    R, G = action.ring, action.group
    ids = idempotents(R)
    prims = primitive_idempotents(R)
    sizes = tuple(len(action.domain_members(g)) for g in range(G.order))
    heights = tuple(
        sum(1 for p in prims if int(R.mul[p, action.one_g[g]]) == p)
        for g in range(G.order))
    dyn = tuple(
        tuple(int(action.alpha_hat[g, e]) for e in ids)
        for g in range(G.order))
    return OrbitReport(domain_sizes=sizes,
                       one_names=tuple(R.names[int(action.one_g[g])]
                                       for g in range(G.order)),
                       one_heights=heights,
                       idempotents=ids,
                       dynamics=dyn)
