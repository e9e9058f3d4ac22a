"""Extended power algebras: complex operations on nonempty subsets plus union.

A nonempty subset with bitmask ``c`` of the base carrier is element ``c - 1`` of
the power algebra, so singleton ``{a}`` is element ``2**a - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import caps as _caps
from .algebra import JOIN, FiniteAlgebra, _check_term, require_base_signature, row_major_index
from .bits import members
from .errors import EmptyArgument, HasConstants, SchemaError, UnboundVariable
from .terms import Var


def subset_label(base, code):
    return "{" + ",".join(base.label(e) for e in members(code)) + "}"


def complex_op(base, sym, args):
    """``{w(a_1,...,a_k) | a_i in A_i}`` for nonempty subsets given as bitmasks."""
    arity = base.arity(sym)
    if len(args) != arity:
        raise SchemaError(f"{sym} expects {arity} arguments, got {len(args)}")
    if any(a == 0 for a in args):
        raise EmptyArgument(f"complex {sym} applied to the empty set")
    tab = base.table(sym)
    out = 0
    for elems in product(*(members(a) for a in args)):
        out |= 1 << tab[row_major_index(elems, base.size)]
    return out


@dataclass(frozen=True)
class PowerAlgebra:
    base: FiniteAlgebra
    algebra: FiniteAlgebra

    @property
    def n(self):
        return self.base.size

    @property
    def size(self):
        return self.algebra.size

    @staticmethod
    def index(code):
        return code - 1

    @staticmethod
    def code(index):
        return index + 1

    @staticmethod
    def singleton(a):
        return (1 << a) - 1

    @property
    def singleton_index(self):
        return tuple(self.singleton(a) for a in range(self.n))

    def op(self, sym, *codes):
        """Apply a power-algebra operation to subset bitmasks."""
        return self.algebra.apply(sym, *[c - 1 for c in codes]) + 1

    def label(self, code):
        return subset_label(self.base, code)


def build_extended_power(base, cap=None):
    """The algebra of nonempty subsets with complex operations and ``+`` = union."""
    require_base_signature(base)
    if base.has_constants:
        raise HasConstants(f"{base.name} has constant operations")
    _caps.check(f"power algebra of {base.name}", base.size, cap or _caps.current().power)
    n = base.size
    m = (1 << n) - 1
    codes = range(1, m + 1)
    signature, tables = [], []
    for sym, arity in base.signature:
        signature.append((sym, arity))
        tables.append(tuple(complex_op(base, sym, args) - 1 for args in product(codes, repeat=arity)))
    signature.append((JOIN, 2))
    tables.append(tuple((a | b) - 1 for a in codes for b in codes))
    labels = tuple(subset_label(base, c) for c in codes)
    alg = FiniteAlgebra(f"P({base.name})", m, tuple(signature), tuple(tables), labels)
    witness = distributivity_witness(alg)
    if witness is not None:
        raise AssertionError(f"complex operation fails to distribute over union at {witness}")
    return PowerAlgebra(base, alg)


def distributivity_witness(alg, join=JOIN):
    """First ``(symbol, coordinate, args, other)`` where an operation fails to
    distribute over `join` in that coordinate, or None.

    Checks ``w(..., x_i + y, ...) = w(..., x_i, ...) + w(..., y, ...)`` for every
    non-join operation of positive arity, exhaustively and vectorized.
    """
    n = alg.size
    J = alg.np_tables[join]
    for sym, arity in alg.signature:
        if sym == join or arity == 0:
            continue
        T = alg.np_tables[sym]
        grids = np.indices((n,) * (arity + 1), dtype=np.intp)
        xs, y = list(grids[:arity]), grids[arity]
        for i in range(arity):
            lhs = T[tuple(xs[:i] + [J[xs[i], y]] + xs[i + 1:])]
            rhs = J[T[tuple(xs)], T[tuple(xs[:i] + [y] + xs[i + 1:])]]
            bad = lhs != rhs
            if bad.any():
                pos = np.unravel_index(int(np.argmax(bad)), bad.shape)
                pos = tuple(int(p) for p in pos)
                return sym, i, pos[:arity], pos[arity]
    return None


def lift_map(f, code):
    """Image ``{f(s) | s in S}`` of a subset under an element map."""
    out = 0
    for s in members(code):
        out |= 1 << f[s]
    return out


def lift_endomorphism(f):
    """The power-algebra map (on element indices) induced by a base map."""
    m = (1 << len(f)) - 1
    return tuple(lift_map(f, c) - 1 for c in range(1, m + 1))


@dataclass(frozen=True)
class RelationStructure:
    size: int
    relations: tuple  # ((symbol, arity, frozenset of tuples), ...)

    def __post_init__(self):
        seen = set()
        for sym, arity, tuples in self.relations:
            if sym in seen:
                raise SchemaError(f"duplicate relation symbol {sym!r}")
            seen.add(sym)
            if sym == JOIN:
                raise SchemaError(f"relation symbol {JOIN!r} is reserved")
            if arity < 1:
                raise SchemaError(f"relation {sym!r} needs arity >= 1")
            for tup in tuples:
                if len(tup) != arity or any(not 0 <= x < self.size for x in tup):
                    raise SchemaError(f"bad tuple {tup!r} in relation {sym!r}")


def build_relational_power(rs, cap=None, name="rel"):
    """Algebra on all ``2**n`` subsets (empty set included, element = bitmask).

    Each (k+1)-ary relation R gives the k-ary operation
    ``f_R(A_1..A_k) = {y | exists a_i in A_i with R(a_1..a_k, y)}``; ``+`` is union.
    """
    _caps.check(f"relational power of {name}", rs.size, cap or _caps.current().power)
    m = 1 << rs.size
    signature, tables = [], []
    for sym, arity, tuples in rs.relations:
        k = arity - 1
        image = {}
        for tup in tuples:
            image.setdefault(tup[:-1], 0)
            image[tup[:-1]] |= 1 << tup[-1]
        table = []
        for args in product(range(m), repeat=k):
            out = 0
            for pre, ys in image.items():
                if all(args[i] >> pre[i] & 1 for i in range(k)):
                    out |= ys
            table.append(out)
        signature.append((sym, k))
        tables.append(tuple(table))
    signature.append((JOIN, 2))
    tables.append(tuple(a | b for a in range(m) for b in range(m)))
    labels = tuple("{" + ",".join(str(e) for e in members(c)) + "}" for c in range(m))
    return FiniteAlgebra(f"P({name})", m, tuple(signature), tuple(tables), labels)


def term_power_eval(pa, t, env):
    """Evaluate a term in the power algebra; `env` maps variables to nonempty bitmasks."""
    _check_term(pa.base, t)
    return _power_eval(pa, t, env)


def _power_eval(pa, t, env):
    if isinstance(t, Var):
        try:
            code = env[t.index]
        except (KeyError, IndexError):
            raise UnboundVariable(f"variable x{t.index} is unbound") from None
        if code == 0:
            raise EmptyArgument("power terms take nonempty subsets")
        return code
    return pa.op(t.symbol, *[_power_eval(pa, a, env) for a in t.args])
