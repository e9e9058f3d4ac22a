"""Congruences of finite algebras and the relations built from power-algebra
congruences: restriction to singletons, lifting of base equivalences, and the
transport maps between the power algebra of A and that of a quotient A/alpha.

Congruences are canonical partitions (see `partitions`).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from . import caps as _caps
from . import partitions as P
from .algebra import classify_mode, generate_subalgebra, quotient_algebra, row_major_index
from .bits import members
from .errors import IllDefined, NotAMode, SchemaError, TildeMismatch
from .power import build_extended_power


def _one_coordinate_moves(alg, x, y):
    """Pairs of table values obtained by swapping x for y in a single argument."""
    n = alg.size
    for sym, arity in alg.signature:
        tab = alg.table(sym)
        for i in range(arity):
            for rest in product(range(n), repeat=arity - 1):
                a = rest[:i] + (x,) + rest[i:]
                b = rest[:i] + (y,) + rest[i:]
                yield sym, a, b, tab[row_major_index(a, n)], tab[row_major_index(b, n)]


def congruence_witness(alg, part):
    """First ``(symbol, args1, args2)`` with related arguments and unrelated values."""
    if len(part) != alg.size:
        raise SchemaError(f"partition of size {len(part)} on carrier of size {alg.size}")
    for x, y in P.pairs(part):
        for sym, a, b, u, v in _one_coordinate_moves(alg, x, y):
            if part[u] != part[v]:
                return sym, a, b
    return None


def is_congruence(alg, part):
    return congruence_witness(alg, part) is None


def _close(alg, uf, pending):
    while pending:
        x, y = pending.pop()
        for _, _, _, u, v in _one_coordinate_moves(alg, x, y):
            if uf.union(u, v):
                pending.append((u, v))
    return uf.partition()


def principal_congruence(alg, a, b):
    """Least congruence relating a and b."""
    uf = P.UnionFind(alg.size)
    if not uf.union(a, b):
        return P.identity(alg.size)
    return _close(alg, uf, [(a, b)])


def generated_congruence(alg, pairs):
    uf = P.UnionFind(alg.size)
    pending = [(a, b) for a, b in pairs if uf.union(a, b)]
    return _close(alg, uf, pending)


def _canonical_order(congs):
    return sorted(congs, key=lambda p: (-P.num_blocks(p), p))


def all_congruences(alg, cap=None):
    """The congruence lattice: identity first, total last.

    Built as the join-closure of the principal congruences.
    """
    n = alg.size
    _caps.check(f"congruences of {alg.name}", n, cap or _caps.current().congruence)
    principals = {principal_congruence(alg, a, b) for a in range(n) for b in range(a + 1, n)}
    found = set(principals) | {P.identity(n)}
    frontier = set(principals)
    while frontier:
        fresh = set()
        for p in frontier:
            for q in principals:
                j = P.join(p, q)
                if j not in found:
                    fresh.add(j)
        found |= fresh
        frontier = fresh
    return _canonical_order(found)


def congruences_by_partition_scan(alg, cap=None):
    """Independent oracle: filter every partition of the carrier."""
    _caps.check(f"partition scan of {alg.name}", alg.size, cap or _caps.current().bell)
    return _canonical_order(p for p in P.set_partitions(alg.size) if is_congruence(alg, p))


def fully_invariant_witness(part, endos):
    """First ``(endo index, x, y)`` with x ~ y but f(x) !~ f(y), or None."""
    for i, f in enumerate(endos):
        for x, y in P.pairs(part):
            if part[f[x]] != part[f[y]]:
                return i, x, y
    return None


def is_fully_invariant(alg, part, endos):
    """Stable under every map in `endos`.

    With the complete endomorphism list this decides full invariance; with a
    sample it is only a necessary condition.
    """
    return fully_invariant_witness(part, endos) is None


def tilde(pa, theta):
    """Base relation a ~ b iff {a} and {b} are related."""
    return P.canonical([theta[pa.singleton(a)] for a in range(pa.n)])


def block_image(code, alpha):
    """Bitmask over the blocks of `alpha` met by the subset `code`."""
    out = 0
    for e in members(code):
        out |= 1 << alpha[e]
    return out


def lift_equiv(pa, theta_base):
    """X ~ Y iff every x in X is related to some y in Y and vice versa.

    For an equivalence this is equality of the sets of blocks met.
    """
    return P.from_key(pa.size, lambda i: block_image(pa.code(i), theta_base))


@lru_cache(maxsize=64)
def quotient_power(pa, alpha):
    """Extended power algebra of base/alpha."""
    q = quotient_algebra(pa.base, alpha, name=f"{pa.base.name}/a")
    return build_extended_power(q, cap=pa.n)


def delta_quotient(pa, psi, alpha):
    """The congruence on P(A/alpha) with (B^a, C^a) related iff (B, C) in psi.

    Requires tilde(psi) == alpha; well-definedness is re-checked over every
    representative B of each image and reported with a witness pair.
    """
    if tilde(pa, psi) != tuple(alpha):
        raise TildeMismatch("restriction of psi to singletons differs from alpha")
    qpa = quotient_power(pa, tuple(alpha))
    label = [None] * qpa.size
    first = [None] * qpa.size
    for i in range(pa.size):
        j = block_image(pa.code(i), alpha) - 1
        if label[j] is None:
            label[j], first[j] = psi[i], i
        elif label[j] != psi[i]:
            raise IllDefined("psi is not constant on a fibre of B -> B^alpha", (first[j], i))
    return P.canonical(label)


def delta_lift(pa, psi, alpha):
    """The congruence on P(A) with (B, C) related iff (B^a, C^a) in psi."""
    qpa = quotient_power(pa, tuple(alpha))
    if len(psi) != qpa.size:
        raise SchemaError("psi does not live on the power algebra of base/alpha")
    if tilde(qpa, psi) != P.identity(qpa.n):
        raise TildeMismatch("psi must restrict to the identity on singletons")
    return P.canonical([psi[block_image(pa.code(i), alpha) - 1] for i in range(pa.size)])


def rho_congruence(pa):
    """X ~ Y iff X and Y generate the same subalgebra (base must be a mode)."""
    if classify_mode(pa.base) != (True, True):
        raise NotAMode(f"{pa.base.name} is not idempotent and entropic")
    return P.from_key(pa.size, lambda i: generate_subalgebra(pa.base, pa.code(i)))
