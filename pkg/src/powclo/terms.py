"""Term syntax and identities."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple = ()


Term = "Var | App"


@dataclass(frozen=True)
class Identity:
    lhs: object
    rhs: object
    names: tuple = ()

    def variables(self):
        return sorted(variables(self.lhs) | variables(self.rhs))

    def __str__(self):
        return f"{render(self.lhs, self.names)} = {render(self.rhs, self.names)}"


def var_name(index, names=()):
    if index < len(names):
        return names[index]
    return f"x{index}"


def render(t, names=()):
    if isinstance(t, Var):
        return var_name(t.index, names)
    if not t.args:
        return f"{t.symbol}()"
    return f"{t.symbol}(" + ",".join(render(a, names) for a in t.args) + ")"


def variables(t):
    if isinstance(t, Var):
        return {t.index}
    out = set()
    for a in t.args:
        out |= variables(a)
    return out


def occurrences(t, counts=None):
    """Map variable index -> number of occurrences in t."""
    if counts is None:
        counts = {}
    if isinstance(t, Var):
        counts[t.index] = counts.get(t.index, 0) + 1
    else:
        for a in t.args:
            occurrences(a, counts)
    return counts


def depth(t):
    if isinstance(t, Var):
        return 0
    return 1 + max((depth(a) for a in t.args), default=0)


def symbols(t):
    if isinstance(t, Var):
        return set()
    out = {(t.symbol, len(t.args))}
    for a in t.args:
        out |= symbols(a)
    return out


def is_linear_identity(ident):
    """Every variable occurs at most once on each side."""
    return all(c <= 1 for c in occurrences(ident.lhs).values()) and all(
        c <= 1 for c in occurrences(ident.rhs).values()
    )


def substitute(t, mapping):
    if isinstance(t, Var):
        return mapping.get(t.index, t)
    return App(t.symbol, tuple(substitute(a, mapping) for a in t.args))


def terms_up_to_depth(ops, num_vars, max_depth):
    """All terms of depth <= max_depth over variables 0..num_vars-1.

    `ops` is a sequence of (symbol, arity). Returned in order of increasing depth,
    each level in the order produced by `itertools.product`.
    """
    levels = [[Var(i) for i in range(num_vars)]]
    for sym, arity in ops:
        if arity == 0:
            levels[0].append(App(sym))
    everything = list(levels[0])
    for d in range(1, max_depth + 1):
        fresh = []
        for sym, arity in ops:
            if arity == 0:
                continue
            for args in product(everything, repeat=arity):
                if max(depth(a) for a in args) == d - 1:
                    fresh.append(App(sym, args))
        everything.extend(fresh)
    return everything
