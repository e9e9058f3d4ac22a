"""Closure operators on a finite carrier, stored as full subset tables, and
their correspondence with congruences of the extended power algebra.

On a finite carrier every closure operator is algebraic, so that property is
never checked separately.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import product

import numpy as np

from . import caps as _caps
from . import partitions as P
from .algebra import (
    JOIN,
    FiniteAlgebra,
    enumerate_endomorphisms,
    eval_term,
    require_base_signature,
)
from .bits import full, is_subset, members, nonempty_submasks
from .errors import (
    ClosureIncompatible,
    HasConstants,
    NotAClosureOperator,
    SchemaError,
)
from .power import complex_op, distributivity_witness, subset_label
from .terms import render, terms_up_to_depth


@dataclass(frozen=True)
class ClosureOperator:
    n: int
    table: tuple  # table[T] = C(T) for every bitmask T, the empty set included

    def __post_init__(self):
        size = 1 << self.n
        if len(self.table) != size:
            raise SchemaError(f"closure table needs {size} entries, got {len(self.table)}")
        top = size - 1
        for t, ct in enumerate(self.table):
            if not 0 <= ct <= top:
                raise SchemaError(f"C({t}) = {ct} is not a subset")
            if not is_subset(t, ct):
                raise NotAClosureOperator("not extensive", ("extensive", t))
            if self.table[ct] != ct:
                raise NotAClosureOperator("not idempotent", ("idempotent", t))
            for a in range(self.n):
                if not is_subset(ct, self.table[t | 1 << a]):
                    raise NotAClosureOperator("not monotone", ("monotone", t, t | 1 << a))

    def __call__(self, code):
        return self.table[code]

    @classmethod
    def from_function(cls, n, fn):
        return cls(n, tuple(fn(t) for t in range(1 << n)))

    @classmethod
    def identity(cls, n):
        return cls(n, tuple(range(1 << n)))

    @classmethod
    def constant(cls, n, empty_to_empty=False):
        """T -> A for every T (optionally keeping the empty set fixed)."""
        top = full(n)
        return cls(n, tuple(0 if (t == 0 and empty_to_empty) else top for t in range(1 << n)))

    @classmethod
    def from_closed_sets(cls, n, family):
        """Operator of a Moore family (must contain the full set)."""
        family = sorted(set(family), key=lambda s: (bin(s).count("1"), s))
        if full(n) not in family:
            raise SchemaError("a closure system must contain the whole carrier")
        table = []
        for t in range(1 << n):
            table.append(next(s for s in family if is_subset(t, s)))
        return cls(n, tuple(table))

    @property
    def closed_sets(self):
        return sorted({ct for ct in self.table})

    @property
    def empty_preserving(self):
        return self.table[0] == 0


def closure_from_congruence(pa, theta):
    """C(T) = {a | some nonempty U subset of T has U + {a} related to U}; C({}) = {}."""
    n = pa.n
    table = []
    for t in range(1 << n):
        out = 0
        for u in nonempty_submasks(t):
            lab = theta[u - 1]
            for a in range(n):
                if theta[(u | 1 << a) - 1] == lab:
                    out |= 1 << a
        table.append(out)
    return ClosureOperator(n, tuple(table))


def congruence_from_closure(pa, c):
    """Nonempty subsets grouped by equal closure."""
    if c.n != pa.n:
        raise SchemaError("closure operator and power algebra live on different carriers")
    return P.canonical([c.table[code] for code in range(1, 1 << c.n)])


# condition checks -----------------------------------------------------------

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class Flag:
    status: str
    witness: object = None
    bounds: dict = field(default_factory=dict)

    def __bool__(self):
        return self.status == PASS


@dataclass
class ConditionReport:
    """Outcome of each side condition on a closure operator.

    empty_preserving  C({}) = {}
    compatible        w(C(T_1),...,C(T_k)) within C(w(T_1,...,T_k))
    substitutive      phi({r}) within C(phi(T)) for r in C(T), phi a power endomorphism
    separating        C({a}) = C({b}) only when a = b
    term_stable       s/a in C(Q) implies s(P..) within C(union of q(P..), q in Q)
    """

    empty_preserving: Flag
    compatible: Flag
    substitutive: Flag
    separating: Flag
    term_stable: Flag

    NAMES = ("empty_preserving", "compatible", "substitutive", "separating", "term_stable")

    def flags(self):
        return {name: getattr(self, name) for name in self.NAMES}

    @property
    def in_clo(self):
        return bool(self.empty_preserving) and bool(self.compatible)

    @property
    def in_clo_fi(self):
        return self.in_clo and bool(self.substitutive)

    def to_dict(self):
        return {name: asdict(flag) for name, flag in self.flags().items()}


def _check_empty(c):
    if c.table[0] == 0:
        return Flag(PASS)
    return Flag(FAIL, {"C({})": c.table[0]})


def _check_compatible(pa, c):
    base = pa.base
    m = pa.size
    for sym, arity in base.signature:
        if arity == 0:
            continue
        for args in product(range(1, m + 1), repeat=arity):
            lhs = pa.op(sym, *[c.table[t] for t in args])
            rhs = c.table[pa.op(sym, *args)]
            if not is_subset(lhs, rhs):
                return Flag(FAIL, {"op": sym, "args": [pa.label(t) for t in args],
                                   "lhs": pa.label(lhs), "rhs": base.format_subset(rhs)})
    return Flag(PASS)


def _check_substitutive(pa, c, endos, coverage):
    bounds = {"endomorphisms": len(endos), "coverage": coverage}
    for k, phi in enumerate(endos):
        for t in range(1, pa.size + 1):
            image_t = phi[t - 1] + 1
            closed = c.table[image_t]
            for r in members(c.table[t]):
                image_r = phi[pa.singleton(r)] + 1
                if not is_subset(image_r, closed):
                    return Flag(FAIL, {"endomorphism": k, "T": pa.label(t),
                                       "r": pa.base.label(r)}, bounds)
    return Flag(PASS, bounds=bounds)


def _check_separating(c):
    seen = {}
    for a in range(c.n):
        ca = c.table[1 << a]
        if ca in seen:
            return Flag(FAIL, {"a": seen[ca], "b": a})
        seen[ca] = a
    return Flag(PASS)


def _code_tables(pa):
    """Power operations indexed by subset bitmask (row 0 unused)."""
    size = 1 << pa.n
    dtype = np.uint8 if size <= 256 else np.uint16
    out = {}
    for sym, arity in pa.base.signature:
        tab = np.zeros((size,) * arity, dtype=dtype)
        tab[(slice(1, None),) * arity] = pa.algebra.np_tables[sym] + 1
        out[sym] = tab
    return out, dtype


@lru_cache(maxsize=2)
def _term_functions(pa, fp, depth_bound):
    """Distinct power-algebra functions of terms of bounded depth over the
    generators, evaluated on every assignment of nonempty subsets.

    Returns ``(assignments, [(term, value, array)], representative arrays)``.
    """
    F = fp.algebra
    g = len(fp.generators)
    m = (1 << F.size) - 1
    tabs, dtype = _code_tables(pa)
    grid = np.indices((m,) * g, dtype=np.int64).reshape(g, -1) + 1
    leaves = [grid[i].astype(dtype) for i in range(g)]
    ops = [(s, a) for s, a in F.signature if s != JOIN]

    cache = {}

    def evaluate(t):
        if t in cache:
            return cache[t]
        if hasattr(t, "index"):
            arr = leaves[t.index]
        else:
            arr = tabs[t.symbol][tuple(evaluate(a) for a in t.args)]
        cache[t] = arr
        return arr

    seen = {}
    functions = []
    for t in terms_up_to_depth(ops, g, depth_bound):
        arr = evaluate(t)
        key = arr.tobytes()
        if key in seen:
            cache[t] = functions[seen[key]][2]
            continue
        seen[key] = len(functions)
        functions.append((t, eval_term(F, t, list(fp.generators)), arr))
    reps = [evaluate(t) for t in fp.representatives]
    return grid, functions, reps


def _minimal_sources(c, v):
    """Inclusion-minimal nonempty Q with v in C(Q)."""
    hits = [q for q in range(1, 1 << c.n) if c.table[q] >> v & 1]
    return [q for q in hits if not any(h != q and is_subset(h, q) for h in hits)]


def _check_term_stable(pa, c, fp, depth_bound, max_assignments):
    F = fp.algebra
    g = len(fp.generators)
    count = ((1 << F.size) - 1) ** g
    bounds = {"depth": depth_bound, "generators": g, "assignments": count,
              "Q": "nonempty sets of representative terms"}
    if count > max_assignments:
        return Flag(SKIPPED, {"cap": max_assignments, "needed": count}, bounds)
    grid, functions, reps = _term_functions(pa, fp, depth_bound)
    bounds["distinct_term_functions"] = len(functions)
    ctab = np.array(c.table, dtype=reps[0].dtype if reps else np.uint16)
    sources = {}
    for t, v, arr in functions:
        if v not in sources:
            sources[v] = _minimal_sources(c, v)
        for q in sources[v]:
            union = np.zeros_like(arr)
            for e in members(q):
                union |= reps[e]
            bad = (arr & ~ctab[union]) != 0
            if bad.any():
                i = int(np.argmax(bad))
                assignment = {fp.names[k] if k < len(fp.names) else f"x{k}":
                              F.format_subset(int(grid[k, i])) for k in range(g)}
                return Flag(FAIL, {"s": render(t, fp.names), "Q": F.format_subset(q),
                                   "assignment": assignment}, bounds)
    return Flag(PASS, bounds=bounds)


def check_conditions(pa, c, fp=None, depth_bound=2, endos=None, coverage=None, caps=None):
    """Decide every side condition within explicit bounds.

    Power-algebra endomorphisms are enumerated when the power carrier is within
    the endomorphism cap (coverage "full"); otherwise `endos` must be supplied
    (coverage "partial" unless stated) or the flag is skipped. The term
    stability flag needs a free presentation of the base and is skipped without.
    """
    caps = caps or _caps.current()
    if c.n != pa.n:
        raise SchemaError("closure operator and power algebra live on different carriers")
    if endos is None:
        if pa.size <= caps.endo:
            endos, coverage = enumerate_endomorphisms(pa.algebra, cap=caps.endo), "full"
        else:
            subst = Flag(SKIPPED, {"cap": caps.endo, "needed": pa.size})
    if endos is not None:
        subst = _check_substitutive(pa, c, endos, coverage or "partial")
    if fp is None:
        term = Flag(SKIPPED, {"reason": "no free presentation supplied"})
    else:
        if fp.algebra != pa.base:
            raise SchemaError("free presentation does not present the power algebra's base")
        term = _check_term_stable(pa, c, fp, depth_bound, caps.assignments)
    return ConditionReport(
        empty_preserving=_check_empty(c),
        compatible=_check_compatible(pa, c),
        substitutive=subst,
        separating=_check_separating(c),
        term_stable=term,
    )


# order and lattice operations -------------------------------------------------


class Order(str, Enum):
    EQUAL = "="
    LESS = "<"
    GREATER = ">"
    INCOMPARABLE = "incomparable"


def compare_closures(pa, c1, c2):
    """c1 <= c2 iff the kernel congruence of c2 is contained in that of c1."""
    u1 = congruence_from_closure(pa, c1)
    u2 = congruence_from_closure(pa, c2)
    le = P.refines(u2, u1)
    ge = P.refines(u1, u2)
    if le and ge:
        return Order.EQUAL
    if le:
        return Order.LESS
    if ge:
        return Order.GREATER
    return Order.INCOMPARABLE


def join_closures(pa, cs):
    """Least upper bound: the operator of the intersection of the kernels."""
    if not cs:
        raise ValueError("join of an empty family")
    kernel = congruence_from_closure(pa, cs[0])
    for c in cs[1:]:
        kernel = P.meet(kernel, congruence_from_closure(pa, c))
    return closure_from_congruence(pa, kernel)


def meet_by_closed_sets(c1, c2):
    """Operator whose closed sets are those closed for both operators."""
    if c1.n != c2.n:
        raise SchemaError("operators on different carriers")
    both = set(c1.closed_sets) & set(c2.closed_sets)
    return ClosureOperator.from_closed_sets(c1.n, both)


# algebra of closed sets ------------------------------------------------------


def closed_set_algebra(base, c):
    """Nonempty closed sets with w_C(X..) = C(w(X..)) and X + Y = C(X u Y).

    Requires w(C(A_1),...) within C(w(A_1,...)) for all subsets A_i (checked,
    empty sets included); the result is re-verified to distribute over +.
    """
    require_base_signature(base)
    if base.has_constants:
        raise HasConstants(f"{base.name} has constant operations")
    if c.n != base.size:
        raise SchemaError("closure operator does not live on the base carrier")
    size = 1 << base.size

    def cx(sym, args):
        return 0 if 0 in args else complex_op(base, sym, args)

    for sym, arity in base.signature:
        for args in product(range(size), repeat=arity):
            lhs = cx(sym, [c.table[a] for a in args])
            rhs = c.table[cx(sym, list(args))]
            if not is_subset(lhs, rhs):
                raise ClosureIncompatible(f"{sym} fails the inclusion at {args}", (sym, args))
    carrier = sorted({c.table[b] for b in range(1, size)})
    index = {code: i for i, code in enumerate(carrier)}
    k = len(carrier)
    signature, tables = [], []
    for sym, arity in base.signature:
        signature.append((sym, arity))
        tables.append(tuple(index[c.table[complex_op(base, sym, [carrier[i] for i in idx])]]
                            for idx in product(range(k), repeat=arity)))
    signature.append((JOIN, 2))
    tables.append(tuple(index[c.table[carrier[i] | carrier[j]]]
                        for i in range(k) for j in range(k)))
    labels = tuple(subset_label(base, code) for code in carrier)
    alg = FiniteAlgebra(f"P_C({base.name})", k, tuple(signature), tuple(tables), labels)
    if distributivity_witness(alg) is not None:
        raise AssertionError("closed-set operations fail to distribute over +")
    for sym, arity in base.signature:
        for bs in product(range(1, size), repeat=arity):
            lhs = alg.apply(sym, *[index[c.table[b]] for b in bs])
            if carrier[lhs] != c.table[complex_op(base, sym, list(bs))]:
                raise AssertionError(f"w_C(C(B)..) != C(w(B..)) at {bs}")
    for b1 in range(1, size):
        for b2 in range(1, size):
            if carrier[alg.apply(JOIN, index[c.table[b1]], index[c.table[b2]])] != c.table[b1 | b2]:
                raise AssertionError(f"C(B1) + C(B2) != C(B1 u B2) at {b1}, {b2}")
    return alg
