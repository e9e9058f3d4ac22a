"""Small named algebras used throughout the tests, suites and CLI defaults."""

from .algebra import FiniteAlgebra


def sl2():
    """Two-element meet semilattice 0 < 1."""
    return FiniteAlgebra.from_functions("SL2", 2, {"m": (2, min)})


def sl3v():
    """The 'V': bottom 0 with incomparable atoms a, b (a m b = 0)."""
    def meet(x, y):
        if x == y:
            return x
        return 0

    return FiniteAlgebra.from_functions("SL3V", 3, {"m": (2, meet)}, labels=("0", "a", "b"))


def chain3():
    return FiniteAlgebra.from_functions("C3", 3, {"m": (2, min)})


def lz2():
    """Left-zero band on {0, 1}."""
    return FiniteAlgebra.from_functions("LZ2", 2, {"p": (2, lambda a, b: a)})


def lzrz():
    """{0, 1} with a left-zero and a right-zero operation."""
    return FiniteAlgebra.from_functions(
        "LZRZ", 2, {"p": (2, lambda a, b: a), "q": (2, lambda a, b: b)}
    )


def z2():
    return FiniteAlgebra.from_functions("Z2", 2, {"a": (2, lambda x, y: (x + y) % 2)})


def rectangular_band():
    """2x2 rectangular band, (a, b)(c, d) = (a, d), elements coded 2a + b."""
    return FiniteAlgebra.from_functions(
        "RB4", 4, {"m": (2, lambda x, y: (x & 2) | (y & 1))},
        labels=("00", "01", "10", "11"),
    )


def trivial():
    return FiniteAlgebra.from_functions("T1", 1, {"m": (2, lambda a, b: 0)})


def derived_ternary(alg, sym="m", name=None):
    """The ternary operation f(a, b, c) = (a b) c of a binary operation."""
    def f(a, b, c):
        return alg.apply(sym, alg.apply(sym, a, b), c)

    return FiniteAlgebra.from_functions(name or f"{alg.name}^3", alg.size, {"f": (3, f)},
                                        labels=alg.labels)


def majority():
    def maj(a, b, c):
        return a if a in (b, c) else b

    return FiniteAlgebra.from_functions("MAJ2", 2, {"f": (3, maj)})


def sierpinski_closure_algebra():
    """Power set of the Sierpinski space {x, y} (open sets {}, {x}, {x,y}) with
    topological closure. Subsets are bitmasks, x = bit 0, y = bit 1."""
    closure = {0: 0, 1: 3, 2: 2, 3: 3}
    return FiniteAlgebra.from_functions(
        "Sierpinski", 4,
        {"c": (1, closure.__getitem__), "+": (2, lambda s, t: s | t)},
        labels=("{}", "{x}", "{y}", "{x,y}"),
    )


MODES = (sl2, sl3v, chain3, lz2, lzrz)

BY_NAME = {
    "sl2": sl2,
    "sl3v": sl3v,
    "chain3": chain3,
    "lz2": lz2,
    "lzrz": lzrz,
    "z2": z2,
    "rb4": rectangular_band,
    "trivial": trivial,
}
