"""Named example actions used across tests and the CLI, plus random
instance and mutation generators.

The workhorse family: the cyclic rotation of a cube of identical fields
(values move one slot to the right), restricted to corners of the form
(1,1,0).  Restricting the F2 cube at (1,1,0) gives a ring of order 4
with 1_g = (0,1,0) and 1_{g^2} = (1,0,0); the F4 cube gives order 16
with the same idempotent pattern.
"""
from __future__ import annotations

import random
from functools import lru_cache
from math import prod

import numpy as np

from . import finring, groups
from .finring import make_ring, product_automorphism, element_from_components
from .partial_action import (GlobalAction, PartialAction, as_partial,
                             restrict_global, trivial_partial_action)

_SHIFT = (1, 2, 0)  # slot j's value moves to slot j+1 mod 3


def shift_global(component_tag: str, copies: int = 3) -> GlobalAction:
    """Cyclic rotation of a product of identical components."""
    ring = make_ring("*".join([component_tag] * copies))
    group = groups.cyclic_group(copies)
    perm = tuple((j + 1) % copies for j in range(copies))
    step = product_automorphism(ring, perm)
    sigma = np.empty((copies, ring.order), dtype=np.int64)
    sigma[0] = np.arange(ring.order)
    for i in range(1, copies):
        sigma[i] = step[sigma[i - 1]]
    return GlobalAction(ring=ring, group=group, sigma=sigma,
                        tag=f"shift({component_tag}^{copies})")


@lru_cache(maxsize=None)
def fixture(name: str) -> PartialAction:
    key = name.strip().upper()
    if key in ("E0", "GLOBAL-SHIFT-F2"):
        return as_partial(shift_global("GF(2)"))
    if key == "E1":
        glob = shift_global("GF(2)")
        e = element_from_components(glob.ring, (1, 1, 0))
        return restrict_global(glob, e, tag="E1")
    if key == "E2":
        glob = shift_global("GF(4;x^2+x+1)")
        e = element_from_components(glob.ring, (1, 1, 0))
        return restrict_global(glob, e, tag="E2")
    if key in ("E3", "GLOBAL-SHIFT-F4"):
        return as_partial(shift_global("GF(4;x^2+x+1)"))
    if key == "N1":
        return trivial_partial_action(make_ring("GF(2)"),
                                      groups.cyclic_group(2), tag="N1")
    raise ValueError(f"unknown fixture {name!r}; have {fixture_names()}")


def fixture_names() -> tuple[str, ...]:
    return ("E0", "E1", "E2", "E3", "N1")


# ------------------------------------------------- random instances

_FIELD_TAGS = ("GF(2)", "GF(3)", "GF(4;x^2+x+1)", "GF(5)", "GF(7)",
               "GF(8;x^3+x+1)", "GF(9;x^2+1)")


def random_global_instance(rng: random.Random,
                           max_order: int = finring.DEFAULT_RING_CAP):
    """A random global action on a product of at most 4 small fields,
    together with a random idempotent to restrict at.

    The automorphism generator combines a tag-preserving slot permutation
    with per-slot frobenius twists; the group is the cyclic group it
    generates.
    """
    while True:
        k = rng.randint(1, 4)
        tags = [rng.choice(_FIELD_TAGS) for _ in range(k)]
        orders = [finring.make_ring(t).order for t in tags]
        if prod(orders) <= max_order:
            break
    ring = make_ring("*".join(tags))
    parts = ring.components if k > 1 else (ring,)

    # random permutation preserving component tags
    by_tag: dict[str, list[int]] = {}
    for j, p in enumerate(parts):
        by_tag.setdefault(p.tag, []).append(j)
    perm = [0] * k
    for slots in by_tag.values():
        shuffled = slots[:]
        rng.shuffle(shuffled)
        for a, b in zip(slots, shuffled):
            perm[a] = b
    frob = [rng.randrange(p.field_params[1]) for p in parts]
    step = (product_automorphism(ring, perm, frob) if k > 1
            else _field_frobenius_power(ring, frob[0]))

    # cyclic group generated by the chosen automorphism
    order = 1
    cur = step.copy()
    idx = np.arange(ring.order)
    while not np.array_equal(cur, idx):
        cur = step[cur]
        order += 1
    group = groups.cyclic_group(order)
    sigma = np.empty((order, ring.order), dtype=np.int64)
    sigma[0] = idx
    for i in range(1, order):
        sigma[i] = step[sigma[i - 1]]
    glob = GlobalAction(ring=ring, group=group, sigma=sigma,
                        tag="random:" + "*".join(tags))
    ids = finring.idempotents(ring)
    e = rng.choice(ids)
    return glob, e


def _field_frobenius_power(ring, t):
    out = np.arange(ring.order)
    if t:
        fr = finring.frobenius_table(ring)
        for _ in range(t % ring.field_params[1]):
            out = fr[out]
    return out


# ------------------------------------------------- mutations

def single_site_mutations(action: PartialAction, rng=None, per_site=None):
    """Yield (description, one_g, alpha) single-entry corruptions.

    With rng=None every site and every alternative value is produced;
    otherwise per_site alternatives are sampled at each site.
    """
    R, G = action.ring, action.group
    base_one = action.one_g.copy()
    base_alpha = action.alpha.copy()
    ids = finring.idempotents(R)

    def pick(cands):
        cands = [c for c in cands]
        if rng is None or per_site is None or len(cands) <= per_site:
            return cands
        return rng.sample(cands, per_site)

    for g in range(G.order):
        e = int(base_one[g])
        for e2 in pick([i for i in ids if i != e]):
            one2 = base_one.copy()
            one2[g] = e2
            yield (f"one_g[{g}] {R.names[e]}->{R.names[e2]}", one2, base_alpha)
        non_idem = [r for r in range(R.order) if not R.is_idempotent(r)]
        for r in pick(non_idem[:1] if rng is None else non_idem):
            one2 = base_one.copy()
            one2[g] = r
            yield (f"one_g[{g}] set non-idempotent {R.names[r]}", one2,
                   base_alpha)

    for g in range(G.order):
        dom = np.nonzero(base_alpha[g] >= 0)[0]
        outside = np.nonzero(base_alpha[g] < 0)[0]
        for r in dom:
            cur = int(base_alpha[g][r])
            for v in pick([v for v in range(R.order) if v != cur]):
                a2 = base_alpha.copy()
                a2[g, r] = v
                yield (f"alpha[{g}][{R.names[int(r)]}] -> {R.names[v]}",
                       base_one, a2)
            a2 = base_alpha.copy()
            a2[g, r] = -1
            yield (f"alpha[{g}][{R.names[int(r)]}] undefined", base_one, a2)
        for r in pick(list(outside)):
            a2 = base_alpha.copy()
            a2[g, int(r)] = int(base_alpha[g][dom[0]]) if dom.size else R.zero
            yield (f"alpha[{g}] defined at stray {R.names[int(r)]}",
                   base_one, a2)
