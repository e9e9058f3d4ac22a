"""Finite algebras given by operation tables.

Carriers are ``{0..n-1}``. Each operation of arity k is a flat row-major table of
length ``n**k``: the entry for ``(a_1, ..., a_k)`` sits at
``sum(a_i * n**(k-1-i))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from . import caps as _caps
from .bits import members
from .errors import (
    ArityMismatch,
    NotACongruence,
    ReservedSymbol,
    SchemaError,
    UnboundVariable,
    UnknownSymbol,
)
from .terms import Var, render

JOIN = "+"

# largest boolean mask materialized at once when checking identities
_CHUNK = 1 << 22


def row_major_index(args, n):
    idx = 0
    for a in args:
        idx = idx * n + a
    return idx


@dataclass(frozen=True)
class FiniteAlgebra:
    name: str
    size: int
    signature: tuple  # ((symbol, arity), ...)
    tables: tuple  # one flat table per operation, aligned with `signature`
    labels: tuple | None = None

    def __post_init__(self):
        n = self.size
        if not isinstance(n, int) or n < 1:
            raise SchemaError(f"carrier size must be a positive integer, got {n!r}")
        if len(self.tables) != len(self.signature):
            raise SchemaError("one table per operation required")
        seen = set()
        for (sym, arity), table in zip(self.signature, self.tables):
            if sym in seen:
                raise SchemaError(f"duplicate operation symbol {sym!r}")
            seen.add(sym)
            if not isinstance(arity, int) or arity < 0:
                raise SchemaError(f"bad arity {arity!r} for {sym!r}")
            if len(table) != n**arity:
                raise SchemaError(
                    f"table of {sym!r} has length {len(table)}, expected {n**arity}"
                )
            for v in table:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise SchemaError(f"table of {sym!r} has entry {v!r} outside 0..{n - 1}")
        if self.labels is not None:
            if len(self.labels) != n or len(set(self.labels)) != n:
                raise SchemaError("labels must be distinct, one per element")

    @classmethod
    def from_functions(cls, name, size, ops, labels=None):
        """Build from ``{symbol: (arity, function)}``."""
        signature = []
        tables = []
        for sym, (arity, fn) in ops.items():
            signature.append((sym, arity))
            tables.append(tuple(fn(*args) for args in product(range(size), repeat=arity)))
        return cls(name, size, tuple(signature), tuple(tables),
                   tuple(labels) if labels is not None else None)

    @cached_property
    def _arity(self):
        return dict(self.signature)

    @cached_property
    def _table(self):
        return {sym: table for (sym, _), table in zip(self.signature, self.tables)}

    @cached_property
    def np_tables(self):
        """Operation tables as numpy arrays of shape ``(n,) * arity``."""
        n = self.size
        return {
            sym: np.array(table, dtype=np.intp).reshape((n,) * arity)
            for (sym, arity), table in zip(self.signature, self.tables)
        }

    @property
    def symbols(self):
        return [sym for sym, _ in self.signature]

    @property
    def has_constants(self):
        return any(arity == 0 for _, arity in self.signature)

    def arity(self, sym):
        try:
            return self._arity[sym]
        except KeyError:
            raise UnknownSymbol(f"unknown operation symbol {sym!r} in {self.name}") from None

    def table(self, sym):
        self.arity(sym)
        return self._table[sym]

    def apply(self, sym, *args):
        return self.table(sym)[row_major_index(args, self.size)]

    def label(self, x):
        return self.labels[x] if self.labels is not None else str(x)

    def element(self, label):
        """Element with the given label (or decimal index when unlabeled)."""
        if self.labels is not None and label in self.labels:
            return self.labels.index(label)
        try:
            x = int(label)
        except ValueError:
            raise SchemaError(f"no element labeled {label!r} in {self.name}") from None
        if not 0 <= x < self.size:
            raise SchemaError(f"element {x} outside carrier of {self.name}")
        return x

    def format_subset(self, code):
        return "{" + ",".join(self.label(e) for e in members(code)) + "}"

    def reduct(self, syms, name=None):
        keep = [i for i, (s, _) in enumerate(self.signature) if s in syms]
        return FiniteAlgebra(
            name or self.name,
            self.size,
            tuple(self.signature[i] for i in keep),
            tuple(self.tables[i] for i in keep),
            self.labels,
        )


def require_base_signature(alg):
    """Constructions that add the join reject algebras already using it."""
    if JOIN in alg.symbols:
        raise ReservedSymbol(f"{alg.name}: symbol {JOIN!r} is reserved for the join")


def _check_term(alg, t):
    if isinstance(t, Var):
        return
    if alg.arity(t.symbol) != len(t.args):
        raise ArityMismatch(
            f"{t.symbol} has arity {alg.arity(t.symbol)}, applied to {len(t.args)} arguments"
        )
    for a in t.args:
        _check_term(alg, a)


def eval_term(alg, t, env):
    """Value of term `t` under `env` (mapping or sequence: variable index -> element)."""
    _check_term(alg, t)
    return _eval(alg, t, env)


def _eval(alg, t, env):
    if isinstance(t, Var):
        try:
            return env[t.index]
        except (KeyError, IndexError):
            raise UnboundVariable(f"variable x{t.index} is unbound") from None
    args = [_eval(alg, a, env) for a in t.args]
    return alg.table(t.symbol)[row_major_index(args, alg.size)]


def _eval_np(alg, t, leaves):
    if isinstance(t, Var):
        return leaves[t.index]
    tab = alg.np_tables[t.symbol]
    if not t.args:
        return tab
    return tab[tuple(_eval_np(alg, a, leaves) for a in t.args)]


def identity_witness(alg, ident):
    """First assignment (lexicographic) falsifying the identity, or None.

    The assignment is returned as ``{variable index: element}``.
    """
    _check_term(alg, ident.lhs)
    _check_term(alg, ident.rhs)
    vs = ident.variables()
    k, n = len(vs), alg.size
    lead = 0
    while lead < k and n ** (k - lead) > _CHUNK:
        lead += 1
    rest = k - lead
    full_shape = (n,) * rest
    for prefix in product(range(n), repeat=lead):
        leaves = {}
        for i, v in enumerate(vs):
            if i < lead:
                leaves[v] = np.intp(prefix[i])
            else:
                shape = [1] * rest
                shape[i - lead] = n
                leaves[v] = np.arange(n, dtype=np.intp).reshape(shape)
        lhs = np.broadcast_to(_eval_np(alg, ident.lhs, leaves), full_shape)
        rhs = np.broadcast_to(_eval_np(alg, ident.rhs, leaves), full_shape)
        diff = lhs != rhs
        if diff.any():
            pos = np.unravel_index(int(np.argmax(diff)), full_shape) if rest else ()
            values = tuple(prefix) + tuple(int(p) for p in pos)
            return dict(zip(vs, values))
    return None


def holds_identity(alg, ident):
    return identity_witness(alg, ident) is None


def _constraints(src, dst):
    """Per source element k, the table constraints decidable once 0..k are mapped."""
    by_key = [[] for _ in range(src.size)]
    for sym, arity in src.signature:
        if dst.arity(sym) != arity:
            raise ArityMismatch(f"{sym}: arity {arity} in {src.name}, {dst.arity(sym)} in {dst.name}")
        stab = src.table(sym)
        dtab = dst.table(sym)
        if arity == 0:
            by_key[stab[0]].append(((), stab[0], dtab))
            continue
        for idx, args in enumerate(product(range(src.size), repeat=arity)):
            res = stab[idx]
            by_key[max(max(args), res)].append((args, res, dtab))
    return by_key


def homomorphisms(src, dst, fixed=None):
    """All homomorphisms src -> dst (as tuples), in lexicographic order.

    `fixed` optionally pins the images of some source elements. Exhaustive
    backtracking: a partial map is abandoned as soon as a fully mapped table
    entry is violated.
    """
    fixed = fixed or {}
    by_key = _constraints(src, dst)
    n, m = src.size, dst.size
    h = [0] * n

    def ok(pos):
        for args, res, dtab in by_key[pos]:
            idx = 0
            for a in args:
                idx = idx * m + h[a]
            if dtab[idx] != h[res]:
                return False
        return True

    def rec(pos):
        if pos == n:
            yield tuple(h)
            return
        for v in ([fixed[pos]] if pos in fixed else range(m)):
            h[pos] = v
            if ok(pos):
                yield from rec(pos + 1)

    yield from rec(0)


def is_homomorphism(src, dst, h):
    for sym, arity in src.signature:
        stab, dtab = src.table(sym), dst.table(sym)
        for idx, args in enumerate(product(range(src.size), repeat=arity)):
            if h[stab[idx]] != dtab[row_major_index([h[a] for a in args], dst.size)]:
                return False
    return True


def enumerate_endomorphisms(alg, cap=None):
    """Every self-map commuting with all operations, in lexicographic order."""
    _caps.check(f"endomorphisms of {alg.name}", alg.size, cap or _caps.current().endo)
    return list(homomorphisms(alg, alg))


def compose(f, g):
    """The map x -> f(g(x))."""
    return tuple(f[x] for x in g)


def generate_subalgebra(alg, seed):
    """Least subset containing `seed` (bitmask) closed under every operation."""
    current = seed
    while True:
        elems = members(current)
        grown = current
        for sym, arity in alg.signature:
            tab = alg.table(sym)
            for args in product(elems, repeat=arity):
                grown |= 1 << tab[row_major_index(args, alg.size)]
        if grown == current:
            return current
        current = grown


def is_idempotent(alg):
    return all(
        alg.apply(sym, *([x] * arity)) == x
        for sym, arity in alg.signature
        for x in range(alg.size)
    )


def _commute(alg, f, g):
    n_rows, n_cols = alg.arity(f), alg.arity(g)
    n = alg.size
    for flat in product(range(n), repeat=n_rows * n_cols):
        rows = [flat[i * n_cols:(i + 1) * n_cols] for i in range(n_rows)]
        lhs = alg.apply(f, *[alg.apply(g, *row) for row in rows])
        cols = [[rows[i][j] for i in range(n_rows)] for j in range(n_cols)]
        rhs = alg.apply(g, *[alg.apply(f, *col) for col in cols])
        if lhs != rhs:
            return False
    return True


def is_entropic(alg):
    syms = alg.symbols
    return all(_commute(alg, f, g) for i, f in enumerate(syms) for g in syms[i:])


def classify_mode(alg):
    """(idempotent, entropic); an algebra with both is a mode."""
    return is_idempotent(alg), is_entropic(alg)


def quotient_algebra(alg, part, name=None):
    """Quotient by a congruence given as a canonical partition.

    Blocks become elements in label order; raises NotACongruence (with a witness
    ``(symbol, args)``) if some operation is not well defined on blocks.
    """
    if len(part) != alg.size:
        raise SchemaError("partition size does not match carrier")
    k = max(part) + 1
    reps = [part.index(b) for b in range(k)]
    signature, tables = [], []
    for sym, arity in alg.signature:
        tab = alg.table(sym)
        qtab = tuple(
            part[tab[row_major_index([reps[b] for b in blocks], alg.size)]]
            for blocks in product(range(k), repeat=arity)
        )
        for idx, args in enumerate(product(range(alg.size), repeat=arity)):
            if part[tab[idx]] != qtab[row_major_index([part[a] for a in args], k)]:
                raise NotACongruence(
                    f"{sym} is not well defined on the blocks at {args}", (sym, args)
                )
        signature.append((sym, arity))
        tables.append(qtab)
    labels = None
    if alg.labels is not None:
        labels = tuple(
            "[" + ",".join(alg.labels[x] for x in range(alg.size) if part[x] == b) + "]"
            for b in range(k)
        )
    return FiniteAlgebra(name or f"{alg.name}/~", k, tuple(signature), tuple(tables), labels)


@dataclass(frozen=True)
class FreePresentation:
    """A finite algebra together with generators and a term naming each element."""

    algebra: FiniteAlgebra
    generators: tuple
    representatives: tuple
    names: tuple = ()

    def __post_init__(self):
        env = list(self.generators)
        if len(self.representatives) != self.algebra.size:
            raise SchemaError("one representative term per element required")
        for e, t in enumerate(self.representatives):
            if eval_term(self.algebra, t, env) != e:
                raise SchemaError(f"representative {render(t, self.names)} does not evaluate to {e}")

    def term_label(self, t):
        return render(t, self.names)
