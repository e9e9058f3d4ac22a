"""Identity catalogue, free semilattices, the four closure operators on a free
semilattice, preservation of identities by the power construction, and the
desk-scale freeness check."""

from __future__ import annotations

import random
from itertools import combinations, product

from . import caps as _caps
from .algebra import (
    JOIN,
    FiniteAlgebra,
    FreePresentation,
    holds_identity,
    homomorphisms,
    identity_witness,
    is_homomorphism,
    enumerate_endomorphisms,
)
from .bits import members
from .closure import ClosureOperator
from .errors import ArityMismatch, CapExceeded, UnknownSymbol
from .parser import parse_identity
from .power import build_extended_power, lift_endomorphism
from .terms import App, Var, is_linear_identity

MUL = "m"
GEN_NAMES = ("x", "y", "z", "w")

# templates over one binary symbol {o}
UNARY_TEMPLATES = (
    ("associative", "{o}(x,{o}(y,z)) = {o}({o}(x,y),z)"),
    ("commutative", "{o}(x,y) = {o}(y,x)"),
    ("idempotent", "{o}(x,x) = x"),
    ("entropic", "{o}({o}(x,y),{o}(z,w)) = {o}({o}(x,z),{o}(y,w))"),
    ("left_normal", "{o}({o}(x,y),z) = {o}({o}(x,z),y)"),
    ("right_normal", "{o}(x,{o}(y,z)) = {o}(y,{o}(x,z))"),
    ("left_zero", "{o}(x,y) = x"),
    ("right_zero", "{o}(x,y) = y"),
)
# templates relating two binary symbols {o} and {p}
PAIR_TEMPLATES = (
    ("interchange", "{o}({p}(x,y),{p}(z,w)) = {p}({o}(x,z),{o}(y,w))"),
)
# laws of a multiplication m together with the join +
ORDERED_TEMPLATES = (
    ("distributive_bisemilattice", "+(x,m(y,z)) = m(+(x,y),+(x,z))"),
    ("stammered", "m(x,y) = +(x,y)"),
    ("absorption_meet", "m(x,+(x,y)) = x"),
    ("absorption_join", "+(x,m(x,y)) = x"),
)


def catalogue(alg):
    """Named identities applicable to the signature of `alg`, in a fixed order."""
    binaries = [s for s, a in alg.signature if a == 2]
    out = []
    for o in binaries:
        for name, tpl in UNARY_TEMPLATES:
            out.append((f"{name}[{o}]", parse_identity(tpl.format(o=o), alg)))
    for o, p in combinations(binaries, 2):
        for name, tpl in PAIR_TEMPLATES:
            out.append((f"{name}[{o},{p}]", parse_identity(tpl.format(o=o, p=p), alg)))
    for name, tpl in ORDERED_TEMPLATES:
        try:
            out.append((name, parse_identity(tpl, alg)))
        except (UnknownSymbol, ArityMismatch):
            continue
    return out


def satisfied(alg, entries=None):
    """Names of the catalogue identities that hold in `alg`."""
    entries = catalogue(alg) if entries is None else entries
    return frozenset(name for name, ident in entries if holds_identity(alg, ident))


def variety_label(alg):
    """Which of the four ordered-semilattice varieties `alg` lands in,
    read off the identities it satisfies (the most specific one wins)."""
    sat = satisfied(alg)
    if "stammered" in sat:
        return "stammered semilattices"
    if {"absorption_meet", "absorption_join"} <= sat:
        return "distributive lattices"
    if "distributive_bisemilattice" in sat:
        return "distributive bisemilattices"
    return "semilattice-ordered semilattices"


# free semilattices ------------------------------------------------------------


def _left_comb(gens):
    t = Var(gens[0])
    for g in gens[1:]:
        t = App(MUL, (t, Var(g)))
    return t


def free_semilattice(k, cap=None):
    """Free semilattice on k generators: nonempty subsets of the generators
    under union. Element e stands for generator set e + 1."""
    if k < 1:
        raise ValueError("need at least one generator")
    _caps.check("free semilattice generators", k, cap or _caps.current().free)
    names = GEN_NAMES[:k] if k <= len(GEN_NAMES) else tuple(f"x{i}" for i in range(k))
    size = (1 << k) - 1
    alg = FiniteAlgebra.from_functions(
        f"FSL({k})", size, {MUL: (2, lambda a, b: ((a + 1) | (b + 1)) - 1)},
        labels=tuple("".join(names[i] for i in members(e + 1)) for e in range(size)),
    )
    gens = tuple((1 << i) - 1 for i in range(k))
    reps = tuple(_left_comb(members(e + 1)) for e in range(size))
    return FreePresentation(alg, gens, reps, names)


def _c1(t):
    """Unions of nonempty subfamilies: closure of T under pairwise union."""
    current = t
    while True:
        elems = members(current)
        grown = current
        for a in elems:
            for b in elems:
                grown |= 1 << (((a + 1) | (b + 1)) - 1)
        if grown == current:
            return current
        current = grown


def kuril_polak(k, i, cap=None):
    """One of the four closure operators on the free semilattice over k generators.

    For nonempty T (a set of generator sets):
      1: unions of nonempty subfamilies of T
      2: r with t within r within the union of T, for some t in T
      3: r within the union of T
      4: r containing some t in T
    and the empty set is fixed.
    """
    if i not in (1, 2, 3, 4):
        raise ValueError("operator index must be 1, 2, 3 or 4")
    _caps.check("free semilattice generators", k, cap or _caps.current().free)
    size = (1 << k) - 1

    def c(t):
        if t == 0:
            return 0
        if i == 1:
            return _c1(t)
        ts = [e + 1 for e in members(t)]
        union = 0
        for g in ts:
            union |= g
        out = 0
        for e in range(size):
            r = e + 1
            below = r & ~union == 0
            above = any(g & ~r == 0 for g in ts)
            if (i == 2 and below and above) or (i == 3 and below) or (i == 4 and above):
                out |= 1 << e
        return out

    return ClosureOperator.from_function(size, c)


# preservation of identities -----------------------------------------------------


def power_preserves(base, ident, pa=None):
    """(holds in base, holds in the power algebra, power witness or None).

    The witness maps variable names to subsets."""
    holds_base = holds_identity(base, ident)
    pa = pa or build_extended_power(base)
    w = identity_witness(pa.algebra, ident)
    if w is None:
        return holds_base, True, None
    names = ident.names
    witness = {(names[v] if v < len(names) else f"x{v}"): pa.algebra.label(e) for v, e in w.items()}
    return holds_base, False, witness


def linear_catalogue(alg):
    return [(name, ident) for name, ident in catalogue(alg) if is_linear_identity(ident)]


# semilattice-ordered semilattices and freeness ----------------------------------


def semilattice_tables(n):
    """All semilattice operations on {0..n-1} as flat tables."""
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    out = []
    for values in product(range(n), repeat=len(pairs)):
        tab = [0] * (n * n)
        for a in range(n):
            tab[a * n + a] = a
        for (a, b), v in zip(pairs, values):
            tab[a * n + b] = tab[b * n + a] = v
        if all(tab[tab[a * n + b] * n + c] == tab[a * n + tab[b * n + c]]
               for a, b, c in product(range(n), repeat=3)):
            out.append(tuple(tab))
    return out


def semilattice_ordered_semilattices(max_size=3):
    """Every labelled (A, m, +) with both reducts semilattices and m
    distributing over +, for carriers up to `max_size`."""
    out = []
    for n in range(1, max_size + 1):
        tables = semilattice_tables(n)
        for mt, jt in product(tables, repeat=2):
            if all(mt[a * n + jt[b * n + c]] == jt[mt[a * n + b] * n + mt[a * n + c]]
                   for a, b, c in product(range(n), repeat=3)):
                out.append(FiniteAlgebra(f"SOS{n}#{len(out)}", n,
                                         ((MUL, 2), (JOIN, 2)), (mt, jt)))
    return out


def extension_counts(k=2, targets=None):
    """For each target and each generator assignment, the number of
    homomorphisms from the power algebra of FSL(k) extending it.

    Yields ``(target, assignment, count)``.
    """
    fp = free_semilattice(k)
    pa = build_extended_power(fp.algebra)
    gens = [pa.singleton(g) for g in fp.generators]
    targets = semilattice_ordered_semilattices() if targets is None else targets
    for tgt in targets:
        for images in product(range(tgt.size), repeat=k):
            fixed = dict(zip(gens, images))
            count = sum(1 for _ in homomorphisms(pa.algebra, tgt, fixed))
            yield tgt, images, count


# endomorphism samples for large power algebras ------------------------------


def free_power_endomorphism(pa, fp, images):
    """Endomorphism of the power algebra of a free semilattice sending the
    singleton of generator i to the power element `images[i]` (indices).

    The images must be idempotent (X X = X): they then generate a semilattice,
    singletons map by freeness, and arbitrary subsets map to the union of the
    images of their members, which respects products since complex products
    distribute over unions."""
    for i in images:
        if pa.op(MUL, i + 1, i + 1) != i + 1:
            raise ValueError(f"generator image {pa.label(i + 1)} is not idempotent")
    size = fp.algebra.size
    # value of each free-semilattice element: product of generator images
    value = []
    for e in range(size):
        gens = members(e + 1)
        v = images[gens[0]] + 1
        for g in gens[1:]:
            v = pa.op(MUL, v, images[g] + 1)
        value.append(v)
    out = []
    for idx in range(pa.size):
        code = 0
        for e in members(idx + 1):
            code |= value[e]
        out.append(code - 1)
    return tuple(out)


def endomorphism_sample(pa, fp=None, size=64, seed=0):
    """A documented sample of power-algebra endomorphisms.

    Always contains the lifts of every base endomorphism (when the base is
    within the cap) and the constant maps onto idempotent elements; with a free
    presentation of a semilattice, also `size` random generator images drawn
    with `seed` among the idempotent power elements."""
    sample = []
    try:
        sample.extend(lift_endomorphism(f) for f in enumerate_endomorphisms(pa.base))
    except CapExceeded:
        pass
    alg = pa.algebra
    for e in range(alg.size):
        if all(alg.apply(s, *([e] * a)) == e for s, a in alg.signature):
            sample.append(tuple([e] * alg.size))
    if fp is not None and fp.algebra.signature == ((MUL, 2),):
        rng = random.Random(seed)
        k = len(fp.generators)
        idem = [i for i in range(pa.size) if pa.op(MUL, i + 1, i + 1) == i + 1]
        for _ in range(size):
            sample.append(free_power_endomorphism(pa, fp, [rng.choice(idem) for _ in range(k)]))
    seen, out = set(), []
    for f in sample:
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out


def is_endomorphism(alg, f):
    return is_homomorphism(alg, alg, f)
