"""Concrete closure operators: Gamma-sinks, r-closed subsets of semigroups,
closed n-semigroups, plus the axioms of closure algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .algebra import JOIN, row_major_index
from .bits import from_members, members
from .closure import (
    ClosureOperator,
    Order,
    compare_closures,
    join_closures,
    meet_by_closed_sets,
)
from .errors import (
    HasConstants,
    NoLeastElement,
    NotAMode,
    NotASemilattice,
    NotAssociative,
    NotNSemigroup,
    SchemaError,
)
from .algebra import classify_mode
from .power import build_extended_power


def _gamma(alg, gamma):
    gamma = tuple(sorted(set(gamma)))
    for sym in gamma:
        if alg.arity(sym) == 0:
            raise SchemaError(f"sink symbol {sym!r} must have positive arity")
    return gamma


def sink_generate(alg, gamma, seed):
    """Least subalgebra containing `seed` that absorbs every op of `gamma`
    in every coordinate: nu(A,..,S,..,A) within S."""
    if alg.has_constants:
        raise HasConstants(f"{alg.name} has constant operations")
    gamma = _gamma(alg, gamma)
    n = alg.size
    everything = range(n)
    current = seed
    while True:
        elems = members(current)
        grown = current
        for sym, arity in alg.signature:
            tab = alg.table(sym)
            for args in product(elems, repeat=arity):
                grown |= 1 << tab[row_major_index(args, n)]
        for sym in gamma:
            arity = alg.arity(sym)
            tab = alg.table(sym)
            for i in range(arity):
                for args in product(*[elems if j == i else everything for j in range(arity)]):
                    grown |= 1 << tab[row_major_index(args, n)]
        if grown == current:
            return current
        current = grown


def sink_closure_operator(alg, gamma):
    return ClosureOperator.from_function(alg.size, lambda t: sink_generate(alg, gamma, t))


def _positive_symbols(alg):
    return tuple(s for s, a in alg.signature if a > 0)


def all_gammas(alg):
    syms = _positive_symbols(alg)
    return [g for r in range(len(syms) + 1) for g in combinations(syms, r)]


@dataclass
class SinkMeetRecord:
    gamma1: tuple
    gamma2: tuple
    meet_is_union_sink: bool
    empty_sink_greatest: bool
    full_sink_least: bool
    join_below_intersection: bool
    join_equals_intersection: bool  # informational only
    witness: dict = field(default_factory=dict)

    @property
    def ok(self):
        return (self.meet_is_union_sink and self.empty_sink_greatest
                and self.full_sink_least and self.join_below_intersection)


def meet_sink_operators(alg, gamma1, gamma2, pa=None):
    """Compare C_G1, C_G2 with C_(G1 u G2) and C_(G1 n G2) in the order given
    by kernel congruences on the extended power algebra."""
    if classify_mode(alg) != (True, True):
        raise NotAMode(f"{alg.name} is not idempotent and entropic")
    g1, g2 = _gamma(alg, gamma1), _gamma(alg, gamma2)
    pa = pa or build_extended_power(alg)
    ops = {g: sink_closure_operator(alg, g) for g in all_gammas(alg)}
    c1, c2 = ops[g1], ops[g2]
    union = ops[tuple(sorted(set(g1) | set(g2)))]
    inter = ops[tuple(sorted(set(g1) & set(g2)))]
    witness = {}

    meet = meet_by_closed_sets(c1, c2)
    meet_ok = meet == union
    if not meet_ok:
        t = next(t for t in range(1 << alg.size) if meet(t) != union(t))
        witness["meet"] = {"T": t, "meet": meet(t), "union_sink": union(t)}

    top, bottom = ops[()], ops[_positive_symbols(alg)]
    greatest = all(compare_closures(pa, c, top) in (Order.LESS, Order.EQUAL) for c in ops.values())
    least = all(compare_closures(pa, bottom, c) in (Order.LESS, Order.EQUAL) for c in ops.values())

    join = join_closures(pa, [c1, c2])
    rel = compare_closures(pa, join, inter)
    if rel not in (Order.LESS, Order.EQUAL):
        witness["join"] = rel.value
    return SinkMeetRecord(g1, g2, meet_ok, greatest, least,
                          rel in (Order.LESS, Order.EQUAL), rel == Order.EQUAL, witness)


# semigroups ------------------------------------------------------------------


def _binary_symbol(alg, sym):
    if sym is None:
        binaries = [s for s, a in alg.signature if a == 2]
        if len(binaries) != 1:
            raise SchemaError(f"{alg.name}: name the binary operation explicitly")
        return binaries[0]
    if alg.arity(sym) != 2:
        raise SchemaError(f"{sym!r} is not binary")
    return sym


def is_associative(alg, sym):
    n = alg.size
    return all(alg.apply(sym, alg.apply(sym, a, b), c) == alg.apply(sym, a, alg.apply(sym, b, c))
               for a, b, c in product(range(n), repeat=3))


def _with_unit(alg, sym):
    """Multiplication on S u {1}, the fresh neutral element being `n`."""
    n = alg.size
    tab = alg.table(sym)

    def mul(x, y):
        if x == n:
            return y
        if y == n:
            return x
        return tab[x * n + y]

    return mul


def r_closure(alg, r, seed, sym=None):
    """Least r-closed subset containing `seed`; the empty seed stays empty.

    X is r-closed when p u_i q in X for all i implies p u_1 ... u_r q in X,
    for p, q in S u {1} and u_i in S.
    """
    sym = _binary_symbol(alg, sym)
    if r < 1:
        raise ValueError("r must be at least 1")
    if not is_associative(alg, sym):
        raise NotAssociative(f"{sym!r} is not associative on {alg.name}")
    if seed == 0:
        return 0
    n = alg.size
    mul = _with_unit(alg, sym)
    ends = range(n + 1)
    current = seed
    while True:
        grown = current
        for p, q in product(ends, ends):
            # u with p u q in the current set
            good = [u for u in range(n) if current >> mul(mul(p, u), q) & 1]
            for us in product(good, repeat=r):
                word = p
                for u in us:
                    word = mul(word, u)
                grown |= 1 << mul(word, q)
        if grown == current:
            return current
        current = grown


def r_closure_operator(alg, r, sym=None):
    return ClosureOperator.from_function(alg.size, lambda t: r_closure(alg, r, t, sym))


# n-semigroups ------------------------------------------------------------------


def is_n_semigroup(alg, sym):
    """All bracketings of f over 2n-1 arguments agree."""
    n = alg.arity(sym)
    if n < 2:
        raise SchemaError(f"{sym!r} needs arity at least 2")
    f = alg.table(sym)
    size = alg.size

    def app(args):
        return f[row_major_index(args, size)]

    for a in product(range(size), repeat=2 * n - 1):
        first = app((app(a[:n]),) + a[n:])
        for i in range(1, n):
            if app(a[:i] + (app(a[i:i + n]),) + a[i + n:]) != first:
                return False
    return True


def _sub_closure(alg, sym, seed):
    n, size = alg.arity(sym), alg.size
    f = alg.table(sym)
    current = seed
    while True:
        elems = members(current)
        grown = current
        for args in product(elems, repeat=n):
            grown |= 1 << f[row_major_index(args, size)]
        if grown == current:
            return current
        current = grown


def n_closed_step(alg, sym, current):
    """One application of the recursion X -> X^[k+1], literally."""
    n, size = alg.arity(sym), alg.size
    f = alg.table(sym)

    def app(args):
        return f[row_major_index(args, size)]

    out = 0
    for ps in product(range(size), repeat=n - 1):
        for qs in product(range(size), repeat=n - 1):
            good = [u for u in range(size) if current >> app((app(ps + (u,)),) + qs) & 1]
            for us in product(good, repeat=n):
                out |= 1 << app((app(ps + (app(us),)),) + qs)
    return out


def n_closed_chain(alg, sym, seed):
    """The ascending chain X^[0], X^[1], ... up to stabilization, starting from
    the subsemigroup generated by `seed`. Each level is joined with the previous
    one, so ascent holds even without idempotency."""
    if not is_n_semigroup(alg, sym):
        raise NotNSemigroup(f"{sym!r} is not an n-semigroup operation on {alg.name}")
    chain = [_sub_closure(alg, sym, seed)]
    while True:
        nxt = chain[-1] | n_closed_step(alg, sym, chain[-1])
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)


def n_closed_generate(alg, sym, seed):
    """[X]: the union of the chain X^[k]; [{}] = {}."""
    if seed == 0:
        if not is_n_semigroup(alg, sym):
            raise NotNSemigroup(f"{sym!r} is not an n-semigroup operation on {alg.name}")
        return 0
    return n_closed_chain(alg, sym, seed)[-1]


def n_closed_operator(alg, sym):
    return ClosureOperator.from_function(alg.size, lambda t: n_closed_generate(alg, sym, t))


# closure algebras --------------------------------------------------------------


def _least(s, join):
    for z in range(s.size):
        if all(s.apply(join, z, x) == x for x in range(s.size)):
            return z
    raise NoLeastElement(f"{s.name} has no least element for {join!r}")


def closure_algebra_violation(s, zero=None, c="c", join=JOIN):
    """First failed axiom as ``(axiom, arguments)``, or None.

    Checks c(0) = 0, c(x + y) = c(x) + c(y), x <= c(x) and c(c(x)) = c(x), where
    x <= y means x + y = y.
    """
    if s.arity(c) != 1 or s.arity(join) != 2:
        raise SchemaError("closure algebras need a unary c and a binary join")
    n = s.size
    for x, y, z in product(range(n), repeat=3):
        if s.apply(join, s.apply(join, x, y), z) != s.apply(join, x, s.apply(join, y, z)):
            raise NotASemilattice(f"{join!r} is not associative at {(x, y, z)}")
    for x, y in product(range(n), repeat=2):
        if s.apply(join, x, y) != s.apply(join, y, x):
            raise NotASemilattice(f"{join!r} is not commutative at {(x, y)}")
    for x in range(n):
        if s.apply(join, x, x) != x:
            raise NotASemilattice(f"{join!r} is not idempotent at {x}")
    if zero is None:
        zero = _least(s, join)
    elif any(s.apply(join, zero, x) != x for x in range(n)):
        raise NoLeastElement(f"{zero} is not the least element")

    if s.apply(c, zero) != zero:
        return "c(0) = 0", (zero,)
    for x, y in product(range(n), repeat=2):
        if s.apply(c, s.apply(join, x, y)) != s.apply(join, s.apply(c, x), s.apply(c, y)):
            return "c(x + y) = c(x) + c(y)", (x, y)
    for x in range(n):
        cx = s.apply(c, x)
        if s.apply(join, x, cx) != cx:
            return "x <= c(x)", (x,)
        if s.apply(c, cx) != cx:
            return "c(c(x)) = c(x)", (x,)
    return None


def check_closure_algebra(s, zero=None, c="c", join=JOIN):
    return closure_algebra_violation(s, zero, c, join) is None


def seed_from_labels(alg, labels):
    """Bitmask of the elements named by `labels` (labels or integer strings)."""
    return from_members(alg.element(x) for x in labels)
