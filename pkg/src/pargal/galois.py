"""Partial Galois coordinates: verification, search, regular representation.

Coordinates are pairs (x_i, y_i) with, for every group element g,

    sum_i  x_i · alpha_g(y_i · 1_{g^-1})  =  (1 if g = identity else 0).

Existence is decidable outright.  Writing v_y for the vector
(alpha_g(y·1_{g^-1}))_g in prod_g D_g, the left sides sweep the additive
subgroup generated by {a·v_b : a, b additive generators of R} (the sum is
additive in each x_i and each y_i), so coordinates exist iff the Kronecker
vector lies in an integer lattice.  A solution of the lattice system also
produces an explicit certificate with one pair per additive generator.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import prod

import numpy as np

from . import intmat
from .errors import DefectError, PreconditionError
from .finring import FiniteRing, Subring, primitive_idempotents
from .groups import FinAbPresentation, abelian_structure
from .partial_action import PartialAction, invariant_subring

SEARCH_BUDGET = 1_000_000
LATTICE_BUDGET = 40_000_000   # rows * cols^2 for the Smith reduction
ENDO_SCAN_BUDGET = 1_000_000
BASIS_NODE_BUDGET = 20_000


@dataclass(frozen=True)
class GaloisCertificate:
    pairs: tuple[tuple[int, int], ...]
    strategy: str = "given"

    @property
    def m(self) -> int:
        return len(self.pairs)

    def __repr__(self):
        return f"GaloisCertificate(m={self.m}, strategy={self.strategy!r})"


@dataclass(frozen=True)
class NotFound:
    conclusive: bool
    reason: str


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    sums: tuple[int, ...]        # computed sum for each g, ring indices
    failing_g: int | None

    def __str__(self):
        if self.ok:
            return "certificate holds"
        return f"certificate fails at g={self.failing_g} (sum={self.sums[self.failing_g]})"


def galois_sums(action: PartialAction, pairs) -> tuple[int, ...]:
    """sum_i x_i·alpha_g(y_i·1_{g^-1}) for each g."""
    R = action.ring
    out = []
    for g in range(action.group.order):
        row = action.alpha_hat[g]
        acc = R.zero
        for x, y in pairs:
            acc = int(R.add[acc, R.mul[x, row[y]]])
        out.append(acc)
    return tuple(out)


def kronecker_vector(action: PartialAction) -> tuple[int, ...]:
    return tuple(action.ring.one if g == action.group.identity else action.ring.zero
                 for g in range(action.group.order))


def verify_certificate(action: PartialAction, cert) -> CertificateCheck:
    pairs = cert.pairs if isinstance(cert, GaloisCertificate) else tuple(cert)
    n = action.ring.order
    for x, y in pairs:
        if not (0 <= x < n and 0 <= y < n):
            raise PreconditionError(f"pair ({x},{y}) outside the ring")
    sums = galois_sums(action, pairs)
    target = kronecker_vector(action)
    failing = next((g for g in range(len(sums)) if sums[g] != target[g]), None)
    return CertificateCheck(failing is None, sums, failing)


# ------------------------------------------------------------------ lattice

@lru_cache(maxsize=64)
def _additive_presentation(ring: FiniteRing) -> FinAbPresentation:
    return abelian_structure(
        list(range(ring.order)), lambda a, b: int(ring.add[a, b]), ring.zero)


def _add_multiple(ring: FiniteRing, c: int, a: int) -> int:
    """c·a in the additive group, c any integer."""
    pres = _additive_presentation(ring)
    exp = pres.invariant_factors[-1] if pres.invariant_factors else 1
    c %= exp
    acc, base = ring.zero, a
    while c:
        if c & 1:
            acc = int(ring.add[acc, base])
        base = int(ring.add[base, base])
        c >>= 1
    return acc


def _solve_row_system(rows, moduli, target):
    """Integer coefficients c with sum c_i·rows_i = target modulo the
    per-column moduli, or None.  Columns all share index space with target."""
    n_cols = len(target)
    aug = [list(r) for r in rows]
    for j, m in enumerate(moduli):
        aug.append([m if k == j else 0 for k in range(n_cols)])
    if not aug:
        return [] if not any(target) else None
    diag, U, V, Uinv, Vinv = intmat.smith_normal_form(aug)
    tv = [sum(target[i] * V[i][j] for i in range(n_cols)) for j in range(n_cols)]
    w = [0] * len(aug)
    for j in range(n_cols):
        d = diag[j] if j < len(diag) else 0
        if d == 0:
            if tv[j] != 0:
                return None
        else:
            if tv[j] % d:
                return None
            w[j] = tv[j] // d
    coeff = [sum(w[i] * U[i][k] for i in range(len(aug))) for k in range(len(aug))]
    return coeff[:len(rows)]


def _span_certificate(action: PartialAction):
    """Solve the lattice membership; a coefficient vector converts into
    pairs (x_b, b), one per additive generator b."""
    R, nG = action.ring, action.group.order
    pres = _additive_presentation(R)
    gens = pres.generators
    k = len(gens)
    n_cols = k * nG
    if (k * k + n_cols) * n_cols * n_cols > LATTICE_BUDGET:
        return None, False   # inconclusive: reduction too large
    rows, labels = [], []
    for a in gens:
        for b in gens:
            vec = [int(R.mul[a, action.alpha_hat[g][b]]) for g in range(nG)]
            rows.append([c for x in vec for c in pres.coords_of(x)])
            labels.append((a, b))
    moduli = [pres.invariant_factors[j % k] for j in range(n_cols)] if k else []
    target = [c for x in kronecker_vector(action) for c in pres.coords_of(x)]
    coeff = _solve_row_system(rows, moduli, target)
    if coeff is None:
        return None, True    # conclusive: no coordinates of any length
    # merge by generator: x_b = sum_a c_{(a,b)}·a, so m <= number of generators
    pairs = []
    for b in gens:
        xb = R.zero
        for (a, b2), c in zip(labels, coeff):
            if b2 == b and c:
                xb = int(R.add[xb, _add_multiple(R, c, a)])
        if xb != R.zero:
            pairs.append((xb, b))
    if not pairs:
        pairs = [(R.zero, R.zero)]
    cert = GaloisCertificate(tuple(pairs), strategy="linear-solve")
    if not verify_certificate(action, cert).ok:
        raise DefectError("lattice solution failed to verify")
    return cert, True


def _idempotent_candidate(action: PartialAction):
    prims = primitive_idempotents(action.ring)
    if not prims:
        return None
    pairs = tuple((e, e) for e in prims)
    cert = GaloisCertificate(pairs, strategy="idempotents")
    return cert if verify_certificate(action, cert).ok else None


def _generating_pool(action: PartialAction) -> tuple[int, ...]:
    R = action.ring
    pres = _additive_presentation(R)
    pool = set(pres.generators) | set(primitive_idempotents(R)) | {R.one}
    pool.discard(R.zero)
    return tuple(sorted(pool))


def _exhaustive_search(action: PartialAction, max_m: int):
    """Pairs drawn from a small generating pool, m <= max_m, lexicographic
    first-found.  Returns (certificate|None, searched_exhaustively)."""
    pool = _generating_pool(action)
    pair_pool = list(itertools.product(pool, repeat=2))
    total = 0
    for m in range(1, max_m + 1):
        count = 1
        for i in range(m):
            count = count * (len(pair_pool) + i) // (i + 1)
        total += count
    if total > SEARCH_BUDGET:
        return None, False
    for m in range(1, max_m + 1):
        for combo in itertools.combinations_with_replacement(pair_pool, m):
            cert = GaloisCertificate(tuple(combo), strategy="exhaustive")
            if verify_certificate(action, cert).ok:
                return cert, True
    return None, True


def find_certificate(action: PartialAction, max_m: int = 4):
    """GaloisCertificate or NotFound.  NotFound is conclusive whenever the
    lattice membership test ran (it decides existence for every length m);
    otherwise the exhaustive bound is reported as inconclusive."""
    cert = _idempotent_candidate(action)
    if cert is not None:
        return cert
    cert, conclusive = _span_certificate(action)
    if cert is not None:
        if cert.m > max_m:
            small, done = _exhaustive_search(action, max_m)
            if small is not None:
                return small
        return cert
    if conclusive:
        return NotFound(True, "Kronecker vector lies outside the coordinate lattice")
    small, done = _exhaustive_search(action, max_m)
    if small is not None:
        return small
    if done:
        reason = f"lattice reduction over budget; bounded search exhausted m <= {max_m}"
    else:
        reason = "lattice reduction and bounded search both over budget"
    return NotFound(False, reason)


def is_galois(action: PartialAction) -> bool:
    return isinstance(find_certificate(action), GaloisCertificate)


# ------------------------------------------------- regular representation

@dataclass(frozen=True)
class RegularRepReport:
    is_homomorphism: bool
    injective: bool | None       # None: skew ring too large to scan
    skew_order: int
    invariant_order: int
    free_rank: int | None        # rank of R over R^alpha when free
    basis: tuple[int, ...] | None
    endo_order: int | None       # |S|^(rank^2) when free
    bijective: bool | None
    sampled: bool                # pair checks sampled rather than exhaustive
    cross_checked: bool          # endomorphism count re-derived by brute force

    def __str__(self):
        bij = {True: "bijective", False: "not bijective", None: "undecided"}[self.bijective]
        return (f"rho: hom={self.is_homomorphism} {bij}; |skew|={self.skew_order} "
                f"|End|={self.endo_order} rank={self.free_rank}")


def rho_monomial(action: PartialAction, g: int, r: int) -> np.ndarray:
    """The endomorphism x -> r·alpha_g(x·1_{g^-1}) as a value table."""
    return action.ring.mul[r, action.alpha_hat[g]]


def _span_closure(ring: FiniteRing, seed) -> np.ndarray:
    cur = np.unique(np.asarray(sorted(set(seed) | {ring.zero}), dtype=np.int64))
    while True:
        nxt = np.unique(ring.add[np.ix_(cur, cur)])
        if nxt.shape == cur.shape:
            return cur
        cur = nxt


def _module_span(ring: FiniteRing, s_arr: np.ndarray, vecs) -> np.ndarray:
    seed = set()
    for b in vecs:
        seed.update(int(v) for v in ring.mul[s_arr, b])
    return _span_closure(ring, seed)


def _free_basis(ring: FiniteRing, s_members, rank: int):
    """Ascending basis (b_1 < ... < b_rank) with |span| = |S|^k at every
    step, or None.  Exact stepwise growth forces unique representation,
    hence freeness."""
    s_arr = np.asarray(sorted(s_members), dtype=np.int64)
    s_order = len(s_members)
    nodes = 0

    def extend(basis, span):
        nonlocal nodes
        depth = len(basis)
        if depth == rank:
            return basis if len(span) == ring.order else None
        span_set = set(int(v) for v in span)
        start = basis[-1] + 1 if basis else 0
        for b in range(start, ring.order):
            if b in span_set:
                continue
            nodes += 1
            if nodes > BASIS_NODE_BUDGET:
                return None
            new_span = _module_span(ring, s_arr, basis + [b])
            if len(new_span) != s_order ** (depth + 1):
                continue
            got = extend(basis + [b], new_span)
            if got is not None:
                return got
        return None

    got = extend([], np.array([ring.zero], dtype=np.int64))
    return tuple(got) if got is not None else None


def _count_linear_endos(ring: FiniteRing, s_members) -> int | None:
    """Brute-force |End_S(R)|: assign images to additive generators,
    keep assignments that extend to additive maps and commute with S.
    Additive extension is automatic once each image's additive order
    divides its generator's; S-linearity then only needs checking at the
    generators (both sides are additive in the other argument)."""
    pres = _additive_presentation(ring)
    gens, facs = pres.generators, pres.invariant_factors
    if ring.order ** len(gens) > ENDO_SCAN_BUDGET:
        return None
    top = max(facs, default=1)
    mult = np.zeros((top + 1, ring.order), dtype=np.int64)   # mult[c] = c·(-)
    for c in range(1, top + 1):
        mult[c] = ring.add[mult[c - 1], np.arange(ring.order)]
    choices = [np.nonzero(mult[d] == ring.zero)[0] for d in facs]
    coords = np.array([pres.coords_of(x) for x in range(ring.order)], dtype=np.int64)
    count = 0
    for images in itertools.product(*choices):
        table = np.full(ring.order, ring.zero, dtype=np.int64)
        for j, y in enumerate(images):
            table = ring.add[table, mult[coords[:, j], y]]
        if all(table[ring.mul[s, gj]] == ring.mul[s, table[gj]]
               for s in s_members for gj in gens):
            count += 1
    return count


def skew_order(action: PartialAction) -> int:
    return prod(len(action.domain_members(g)) for g in range(action.group.order))


def regular_representation(action: PartialAction) -> RegularRepReport:
    """rho: R*G -> additive endomorphisms of R, r·delta_g to the map
    x -> r·alpha_g(x·1_{g^-1}); reports homomorphism, injectivity, and
    whether the image is all of End_{R^alpha}(R)."""
    R, G = action.ring, action.group
    S = invariant_subring(action)
    s_members = S.members
    monomials = [(g, int(r)) for g in range(G.order)
                 for r in action.domain_members(g)]
    n_mono = len(monomials)

    ident_ok = np.array_equal(rho_monomial(action, G.identity, R.one),
                              np.arange(R.order))
    sampled = n_mono * n_mono > ENDO_SCAN_BUDGET
    rng = np.random.default_rng(0) if sampled else None
    if sampled:
        pair_iter = ((monomials[rng.integers(n_mono)], monomials[rng.integers(n_mono)])
                     for _ in range(ENDO_SCAN_BUDGET // 4))
    else:
        pair_iter = itertools.product(monomials, monomials)
    hom_ok = ident_ok
    for (g, r), (h, r2) in pair_iter:
        left = rho_monomial(action, g, r)[rho_monomial(action, h, r2)]
        prod_r = int(R.mul[r, action.alpha_hat[g][r2]])
        right = rho_monomial(action, G.op(g, h), prod_r)
        if not np.array_equal(left, right):
            hom_ok = False
            break

    order = skew_order(action)
    injective: bool | None = None
    if order <= ENDO_SCAN_BUDGET:
        images = set()
        rows = {g: [rho_monomial(action, g, int(r)) for r in action.domain_members(g)]
                for g in range(G.order)}
        for choice in itertools.product(*(range(len(rows[g])) for g in range(G.order))):
            acc = np.full(R.order, R.zero, dtype=np.int64)
            for g, ci in enumerate(choice):
                acc = R.add[acc, rows[g][ci]]
            images.add(acc.tobytes())
        injective = len(images) == order

    s_order = len(s_members)
    rank = None
    n = 1
    while s_order ** n < R.order:
        n += 1
    if s_order ** n == R.order:
        basis = _free_basis(R, s_members, n)
        if basis is not None:
            rank = n
    else:
        basis = None
    endo_order = s_order ** (rank * rank) if rank is not None else None
    bijective = None
    if injective is not None and endo_order is not None:
        bijective = injective and order == endo_order and hom_ok

    brute = _count_linear_endos(R, s_members)
    cross_checked = brute is not None and endo_order is not None and brute == endo_order
    if brute is not None and endo_order is not None and brute != endo_order:
        raise DefectError(f"endomorphism count mismatch: {brute} vs {endo_order}")
    return RegularRepReport(
        is_homomorphism=hom_ok, injective=injective, skew_order=order,
        invariant_order=s_order, free_rank=rank, basis=basis,
        endo_order=endo_order, bijective=bijective, sampled=sampled,
        cross_checked=cross_checked)
