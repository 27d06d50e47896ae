"""Graded algebras over a partial action.

R*G (skew group ring), the twisted crossed product R*_f G for a 2-cocycle
f, the twisted bimodules (D_g)_{g^-1}, the factor set of the canonical
partial representation Theta, Delta(Theta), and the isomorphisms tying
them together.

Elements are per-component coordinate tuples: entry g holds an element of
D_g, standing for a_g·delta_g.  The monomial basis is the disjoint union
of the D_g's, so products of basis monomials are again basis monomials
and the structure constants form an index table rather than a matrix.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from math import prod

import numpy as np

from .cohomology import Cochain, coboundary, cochain_mul, corner_idem, identity_cochain
from .errors import BudgetError, DefectError, PreconditionError
from .partial_action import PartialAction, _additive_generators, invariant_subring

ASSOC_TRIPLE_BUDGET = 1_000_000
SAMPLED_TRIPLES = 20_000
ELEMENT_ITER_BUDGET = 1_000_000


@dataclass(frozen=True, eq=False)
class TwistedBimodule:
    """(D_g)_{g^-1}: the ideal D_g with plain left action and right action
    twisted through alpha_g."""
    action: PartialAction
    g: int

    def __post_init__(self):
        act, g = self.action, self.g
        R = act.ring
        ginv = act.group.inv(g)
        # compatibility: r·d = d * alpha_{g^-1}(r·1_g) for all r, d, where
        # * is this module's twisted right action
        twisted = act.alpha_hat[g][act.alpha_hat[ginv]]
        for d in self.members:
            lhs = R.mul[np.arange(R.order), d]
            rhs = R.mul[d, twisted]
            if not np.array_equal(lhs, rhs):
                raise DefectError(f"bimodule compatibility fails at g={g}, d={d}")

    @cached_property
    def members(self) -> tuple[int, ...]:
        return tuple(int(d) for d in self.action.domain_members(self.g))

    def left(self, r: int, d: int) -> int:
        return int(self.action.ring.mul[r, d])

    def right(self, d: int, r: int) -> int:
        return int(self.action.ring.mul[d, self.action.alpha_hat[self.g][r]])


def theta_bimodule(action: PartialAction, g: int) -> TwistedBimodule:
    return TwistedBimodule(action, g)


@dataclass(frozen=True)
class AssocReport:
    triples: int
    sampled: bool
    ok: bool


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    action: PartialAction
    twist: Cochain | None
    unit: tuple[int, ...]
    assoc: AssocReport
    central_checked: bool
    tag: str
    # when set, monomial products read this table instead of the alpha
    # formula: mono_table[(g, h)][i, j] = coefficient of the product of the
    # i-th basis element of D_g with the j-th of D_h
    mono_table: dict | None = None

    @cached_property
    def component_members(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(d) for d in self.action.domain_members(g))
                     for g in range(self.action.group.order))

    @cached_property
    def _positions(self) -> tuple[dict, ...]:
        return tuple({d: i for i, d in enumerate(mem)}
                     for mem in self.component_members)

    @property
    def order(self) -> int:
        return prod(len(m) for m in self.component_members)

    @property
    def zero(self) -> tuple[int, ...]:
        return (self.action.ring.zero,) * self.action.group.order

    def element(self, coords) -> tuple[int, ...]:
        out = tuple(int(c) for c in coords)
        if len(out) != self.action.group.order:
            raise PreconditionError("wrong number of components")
        for g, c in enumerate(out):
            if c not in self._positions[g]:
                raise PreconditionError(f"component {g} value {c} outside D_g")
        return out

    def monomial(self, g: int, d: int) -> tuple[int, ...]:
        out = [self.action.ring.zero] * self.action.group.order
        out[g] = d
        return self.element(out)

    def mono_mul(self, g: int, a: int, h: int, b: int) -> tuple[int, int]:
        """(a·delta_g)(b·delta_h) = coeff·delta_{gh}."""
        act = self.action
        R = act.ring
        k = act.group.op(g, h)
        if self.mono_table is not None:
            coeff = int(self.mono_table[(g, h)][self._positions[g][a],
                                                self._positions[h][b]])
            return k, coeff
        coeff = int(R.mul[a, act.alpha_hat[g][b]])
        if self.twist is not None:
            coeff = int(R.mul[coeff, self.twist[(g, h)]])
        return k, coeff

    def mul(self, u, v) -> tuple[int, ...]:
        R = self.action.ring
        nG = self.action.group.order
        acc = [R.zero] * nG
        for g in range(nG):
            if u[g] == R.zero:
                continue
            for h in range(nG):
                if v[h] == R.zero:
                    continue
                k, coeff = self.mono_mul(g, u[g], h, v[h])
                acc[k] = int(R.add[acc[k], coeff])
        return tuple(acc)

    def add(self, u, v) -> tuple[int, ...]:
        R = self.action.ring
        return tuple(int(R.add[a, b]) for a, b in zip(u, v))

    def embed_ring(self, r: int) -> tuple[int, ...]:
        """r -> r·(unit); the unital ring embedding R -> component 1."""
        R = self.action.ring
        ident = self.action.group.identity
        out = [R.zero] * self.action.group.order
        out[ident] = int(R.mul[r, self.unit[ident]])
        return tuple(out)

    def elements(self):
        if self.order > ELEMENT_ITER_BUDGET:
            raise BudgetError("algebra-elements", ELEMENT_ITER_BUDGET, self.order)
        for combo in itertools.product(*self.component_members):
            yield tuple(int(c) for c in combo)

    def monomials(self):
        for g, mem in enumerate(self.component_members):
            for d in mem:
                yield g, d

    def structure_text(self) -> str:
        """Plain-text structure constants: basis legend, then one line per
        basis index pair with the product's basis index (monomial products
        of monomials are monomials)."""
        names = self.action.ring.names
        basis = list(self.monomials())
        index = {}
        lines = [f"# algebra {self.tag}: order {self.order}, "
                 f"{len(basis)} basis monomials"]
        for i, (g, d) in enumerate(basis):
            index[(g, d)] = i
            lines.append(f"basis {i}: {names[d]} delta_{self.action.group.names[g]}")
        zero = self.action.ring.zero
        for i, (g, a) in enumerate(basis):
            for j, (h, b) in enumerate(basis):
                k, coeff = self.mono_mul(g, a, h, b)
                tgt = "0" if coeff == zero else str(index[(k, coeff)])
                lines.append(f"{i} {j} -> {tgt}")
        return "\n".join(lines) + "\n"


def _check_associativity(alg: GradedAlgebra) -> AssocReport:
    monos = list(alg.monomials())
    n = len(monos)
    total = n ** 3
    if total <= ASSOC_TRIPLE_BUDGET:
        triples = itertools.product(monos, monos, monos)
        count, sampled = total, False
    else:
        rng = random.Random(0)
        triples = ((monos[rng.randrange(n)], monos[rng.randrange(n)],
                    monos[rng.randrange(n)]) for _ in range(SAMPLED_TRIPLES))
        count, sampled = SAMPLED_TRIPLES, True
    for (g, a), (h, b), (l, c) in triples:
        k1, ab = alg.mono_mul(g, a, h, b)
        left = alg.mono_mul(k1, ab, l, c)
        k2, bc = alg.mono_mul(h, b, l, c)
        right = alg.mono_mul(g, a, k2, bc)
        if left != right:
            raise DefectError(
                f"associativity fails on monomials ({g},{a}),({h},{b}),({l},{c})")
    return AssocReport(count, sampled, True)


def _check_unit(alg: GradedAlgebra):
    u = alg.unit
    for g, d in alg.monomials():
        m = alg.monomial(g, d)
        if alg.mul(u, m) != m or alg.mul(m, u) != m:
            raise DefectError(f"unit fails on monomial ({g},{d})")


def _check_invariants_central(alg: GradedAlgebra) -> bool:
    S = invariant_subring(alg.action)
    for s in S.members:
        es = alg.embed_ring(int(s))
        for g, d in alg.monomials():
            m = alg.monomial(g, d)
            if alg.mul(es, m) != alg.mul(m, es):
                raise DefectError(f"invariant {s} not central against ({g},{d})")
    return True


def skew_group_ring(action: PartialAction) -> GradedAlgebra:
    """R*G with (a·delta_g)(b·delta_h) = a·alpha_g(b·1_{g^-1})·delta_{gh}."""
    ident = action.group.identity
    unit = [action.ring.zero] * action.group.order
    unit[ident] = action.ring.one
    alg = GradedAlgebra(action=action, twist=None, unit=tuple(unit),
                        assoc=AssocReport(0, False, False),
                        central_checked=False, tag="skew")
    report = _check_associativity(alg)
    alg = GradedAlgebra(action=action, twist=None, unit=tuple(unit),
                        assoc=report, central_checked=True, tag="skew")
    _check_unit(alg)
    _check_invariants_central(alg)
    return alg


def _z2_witness(action: PartialAction, f: Cochain):
    """First triple where the 2-cocycle identity fails, or None."""
    df = coboundary(action, f)
    ident = identity_cochain(action, 3)
    if df == ident:
        return None
    names = action.group.names
    for gs in itertools.product(range(action.group.order), repeat=3):
        if df[gs] != ident[gs]:
            return tuple(names[g] for g in gs)
    raise DefectError("coboundary differs but no witness position found")


def crossed_product(action: PartialAction, f: Cochain) -> GradedAlgebra:
    """R*_{alpha,f}G; identity element f(1,1)^{-1}·delta_1."""
    if f.n != 2:
        raise PreconditionError("twist must be a 2-cochain")
    witness = _z2_witness(action, f)
    if witness is not None:
        raise PreconditionError(f"twist violates the 2-cocycle law at {witness}")
    R = action.ring
    ident = action.group.identity
    f11 = f[(ident, ident)]
    # f(1,1) is a unit of all of R: its corner is 1_1·1_1 = 1
    inv = next(u for u in range(R.order)
               if int(R.mul[f11, u]) == R.one and int(R.mul[u, f11]) == R.one)
    unit = [R.zero] * action.group.order
    unit[ident] = inv
    alg = GradedAlgebra(action=action, twist=f, unit=tuple(unit),
                        assoc=AssocReport(0, False, False),
                        central_checked=False, tag="crossed")
    report = _check_associativity(alg)
    alg = GradedAlgebra(action=action, twist=f, unit=tuple(unit),
                        assoc=report, central_checked=True, tag="crossed")
    _check_unit(alg)
    _check_invariants_central(alg)
    return alg


# ------------------------------------------------------------- factor set

@dataclass(frozen=True, eq=False)
class ThetaFactorSet:
    """f^Theta_{g,h}: Theta(g) x Theta(h) -> Theta(gh), (u,v) ->
    u·alpha_g(v·1_{g^-1}); tables indexed by member positions."""
    action: PartialAction
    tables: dict
    bilinear_checked: bool
    pentagon_checked: bool
    exhaustive: bool   # False: checks ran on additive generators per slot

    @cached_property
    def _pos(self) -> tuple[dict, ...]:
        return tuple({int(d): i for i, d in enumerate(self.action.domain_members(g))}
                     for g in range(self.action.group.order))

    def __call__(self, g: int, h: int, u: int, v: int) -> int:
        return int(self.tables[(g, h)][self._pos[g][u], self._pos[h][v]])


def theta_factor_set(action: PartialAction) -> ThetaFactorSet:
    """Build the factor-set tables, then check balance, outer linearity and
    the pentagon.  All three identities are additive in every element slot,
    so when full enumeration exceeds the budget the slots range over
    additive generators instead; the report says which ran."""
    R, G = action.ring, action.group
    nG = G.order
    members = [tuple(int(d) for d in action.domain_members(g)) for g in range(nG)]
    tables = {}
    for g in range(nG):
        for h in range(nG):
            mh = np.asarray(members[h], dtype=np.int64)
            t = np.empty((len(members[g]), len(mh)), dtype=np.int64)
            for i, u in enumerate(members[g]):
                t[i] = R.mul[u, action.alpha_hat[g][mh]]
            tables[(g, h)] = t
    fs = ThetaFactorSet(action, tables, False, False, False)

    side = sum(len(m) for m in members)
    exhaustive = side * side * R.order <= ASSOC_TRIPLE_BUDGET \
        and side ** 3 <= ASSOC_TRIPLE_BUDGET
    if exhaustive:
        slot = members
        ring_slot = tuple(range(R.order))
    else:
        slot = [tuple(int(x) for x in
                      _additive_generators(R, np.asarray(m, dtype=np.int64)))
                for m in members]
        ring_slot = tuple(int(x) for x in
                          _additive_generators(R, np.arange(R.order)))

    mods = [TwistedBimodule(action, g) for g in range(nG)]
    for g in range(nG):
        for h in range(nG):
            gh = G.op(g, h)
            for u in slot[g]:
                for v in slot[h]:
                    val = fs(g, h, u, v)
                    if int(R.mul[val, action.one(g)]) != val:
                        raise DefectError("factor set leaves the 1_g corner")
                    for r in ring_slot:
                        if fs(g, h, mods[g].right(u, r), v) != \
                           fs(g, h, u, mods[h].left(r, v)):
                            raise DefectError(
                                f"balance fails at g={g},h={h},u={u},v={v},r={r}")
                        if fs(g, h, mods[g].left(r, u), v) != \
                           mods[gh].left(r, val):
                            raise DefectError("left linearity fails")
                        if fs(g, h, u, mods[h].right(v, r)) != \
                           mods[gh].right(val, r):
                            raise DefectError("right linearity fails")
    fs = ThetaFactorSet(action, tables, True, False, exhaustive)

    for g in range(nG):
        for h in range(nG):
            for l in range(nG):
                gh, hl = G.op(g, h), G.op(h, l)
                for u in slot[g]:
                    for v in slot[h]:
                        for w in slot[l]:
                            left = fs(gh, l, fs(g, h, u, v), w)
                            right = fs(g, hl, u, fs(h, l, v, w))
                            if left != right:
                                raise DefectError(
                                    f"pentagon fails at ({g},{h},{l})")
    return ThetaFactorSet(action, tables, True, True, exhaustive)


def delta_theta(action: PartialAction) -> GradedAlgebra:
    """Delta(Theta) = direct sum of the Theta(g) with multiplication given
    by the Theta factor set; unity 1·delta_1."""
    fs = theta_factor_set(action)
    ident = action.group.identity
    unit = [action.ring.zero] * action.group.order
    unit[ident] = action.ring.one
    alg = GradedAlgebra(action=action, twist=None, unit=tuple(unit),
                        assoc=AssocReport(0, False, False),
                        central_checked=False, tag="Delta(Theta)",
                        mono_table=fs.tables)
    report = _check_associativity(alg)
    alg = GradedAlgebra(action=action, twist=None, unit=tuple(unit),
                        assoc=report, central_checked=True, tag="Delta(Theta)",
                        mono_table=fs.tables)
    _check_unit(alg)
    _check_invariants_central(alg)
    return alg


# ----------------------------------------------------------- isomorphisms

@dataclass(frozen=True, eq=False)
class GradedIso:
    """Component-scaling map source -> target: a_g·delta_g -> a_g·scale_g·delta_g."""
    source: GradedAlgebra
    target: GradedAlgebra
    scale: tuple[int, ...]
    multiplicative: bool
    bijective: bool
    fixes_invariants: bool

    def forward(self, u) -> tuple[int, ...]:
        R = self.source.action.ring
        return tuple(int(R.mul[a, s]) for a, s in zip(u, self.scale))


def _verify_iso(source: GradedAlgebra, target: GradedAlgebra,
                scale) -> GradedIso:
    action = source.action
    R = action.ring
    iso = GradedIso(source, target, tuple(scale), False, False, False)
    for g, mem in enumerate(source.component_members):
        imgs = {int(R.mul[d, scale[g]]) for d in mem}
        if imgs != set(target.component_members[g]):
            raise PreconditionError(f"component {g} map is not a bijection")
    monos = list(source.monomials())
    for (g, a), (h, b) in itertools.product(monos, monos):
        lhs = iso.forward(source.mul(source.monomial(g, a), source.monomial(h, b)))
        rhs = target.mul(iso.forward(source.monomial(g, a)),
                         iso.forward(source.monomial(h, b)))
        if lhs != rhs:
            raise PreconditionError(
                f"map not multiplicative on ({g},{a})x({h},{b})")
    S = invariant_subring(action)
    fixes = all(iso.forward(source.embed_ring(int(s))) == target.embed_ring(int(s))
                for s in S.members)
    if not fixes:
        raise DefectError("map moves the invariant subring")
    return GradedIso(source, target, tuple(scale), True, True, True)


def coiso_map(action: PartialAction, f: Cochain, f2: Cochain,
              eps: Cochain) -> GradedIso:
    """For f = f2·(delta eps): the isomorphism R*_{alpha,f}G -> R*_{alpha,f2}G
    sending a_g·delta_g to a_g·eps(g)·delta_g."""
    if f.n != 2 or f2.n != 2 or eps.n != 1:
        raise PreconditionError("need 2-cochains f, f2 and a 1-cochain eps")
    if cochain_mul(f2, coboundary(action, eps)) != f:
        raise PreconditionError("witness invalid: f != f2·(delta eps)")
    source = crossed_product(action, f)
    target = crossed_product(action, f2)
    scale = [eps[(g,)] for g in range(action.group.order)]
    return _verify_iso(source, target, scale)


def kappa_iso(action: PartialAction) -> GradedIso:
    """Delta(Theta) -> R*G by u_g -> u_g·delta_g (coordinatewise identity),
    checked multiplicative on every basis pair."""
    source = delta_theta(action)
    target = skew_group_ring(action)
    scale = [action.one(g) for g in range(action.group.order)]
    return _verify_iso(source, target, scale)
