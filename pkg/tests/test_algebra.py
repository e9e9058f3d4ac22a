import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_endomorphisms, naive_holds
from strategies import algebras, terms, to_naive

from powclo import fixtures as F
from powclo.algebra import (
    FiniteAlgebra,
    FreePresentation,
    classify_mode,
    compose,
    enumerate_endomorphisms,
    eval_term,
    generate_subalgebra,
    holds_identity,
    identity_witness,
    is_homomorphism,
    quotient_algebra,
    row_major_index,
)
from powclo.errors import (
    ArityMismatch,
    CapExceeded,
    NotACongruence,
    SchemaError,
    UnboundVariable,
    UnknownSymbol,
)
from powclo.parser import parse_identity
from powclo.terms import App, Identity, Var, is_linear_identity


def m(a, b):
    return App("m", (a, b))


x, y, z = Var(0), Var(1), Var(2)


class TestConstruction:
    def test_row_major(self):
        assert row_major_index((1, 0, 2), 3) == 1 * 9 + 0 + 2

    def test_entry_out_of_range(self):
        with pytest.raises(SchemaError):
            FiniteAlgebra("bad", 2, (("m", 2),), ((0, 0, 0, 2),))

    def test_table_length(self):
        with pytest.raises(SchemaError):
            FiniteAlgebra("bad", 2, (("m", 2),), ((0, 0, 0),))

    def test_duplicate_symbol(self):
        with pytest.raises(SchemaError):
            FiniteAlgebra("bad", 1, (("m", 1), ("m", 1)), ((0,), (0,)))

    def test_unknown_symbol(self):
        with pytest.raises(UnknownSymbol):
            F.sl2().table("q")


class TestEval:
    def test_meet_with_bottom(self):
        assert eval_term(F.sl2(), m(x, y), {0: 1, 1: 0}) == 0

    def test_variable(self):
        assert eval_term(F.sl3v(), x, {0: 2}) == 2

    def test_sl3v_nested(self):
        a, b = 1, 2
        assert eval_term(F.sl3v(), m(m(x, y), x), {0: a, 1: b}) == 0

    def test_unbound(self):
        with pytest.raises(UnboundVariable):
            eval_term(F.sl2(), m(x, y), {0: 1})

    def test_arity_mismatch(self):
        with pytest.raises(ArityMismatch):
            eval_term(F.sl2(), App("m", (x,)), {0: 1})

    def test_unknown(self):
        with pytest.raises(UnknownSymbol):
            eval_term(F.sl2(), App("q", (x, x)), {0: 1})


class TestIdentities:
    def test_associative(self):
        assert holds_identity(F.sl2(), Identity(m(x, m(y, z)), m(m(x, y), z)))

    def test_idempotent(self):
        assert holds_identity(F.sl2(), Identity(m(x, x), x))

    def test_left_zero_not_commutative(self):
        p = lambda a, b: App("p", (a, b))  # noqa: E731
        ident = Identity(p(x, y), p(y, x))
        assert not holds_identity(F.lz2(), ident)
        assert identity_witness(F.lz2(), ident) == {0: 0, 1: 1}

    def test_variables_need_not_coincide(self):
        # x = y fails on any carrier with two elements
        assert not holds_identity(F.sl2(), Identity(x, y))
        assert holds_identity(F.trivial(), Identity(x, y))

    def test_linearity(self):
        assert is_linear_identity(Identity(m(x, m(y, z)), m(m(x, y), z)))
        assert not is_linear_identity(Identity(m(x, x), x))
        assert is_linear_identity(Identity(m(x, y), m(y, x)))

    def test_agrees_with_naive_interpreter(self):
        """100 random (algebra, identity) pairs, carriers <= 4, depth <= 3."""
        rng = random.Random(7)
        sig = (("p", 2), ("q", 1))

        def rand_term(d):
            if d == 0 or rng.random() < 0.3:
                return Var(rng.randrange(3))
            sym, arity = rng.choice(sig)
            return App(sym, tuple(rand_term(d - 1) for _ in range(arity)))

        for _ in range(100):
            n = rng.randint(1, 4)
            tabs = {s: tuple(rng.randrange(n) for _ in range(n ** a)) for s, a in sig}
            alg = FiniteAlgebra("R", n, sig, (tabs["p"], tabs["q"]))
            lhs, rhs = rand_term(3), rand_term(3)
            expected = naive_holds(to_naive(lhs), to_naive(rhs), tabs, n, 3)
            assert holds_identity(alg, Identity(lhs, rhs)) == expected


@given(st.data())
def test_holds_identity_matches_naive(data):
    alg = data.draw(algebras(max_size=3))
    lhs = data.draw(terms(alg.signature))
    rhs = data.draw(terms(alg.signature))
    ops = {s: alg.table(s) for s in alg.symbols}
    assert holds_identity(alg, Identity(lhs, rhs)) == naive_holds(
        to_naive(lhs), to_naive(rhs), ops, alg.size, 3)


class TestEndomorphisms:
    def test_sl2(self):
        assert enumerate_endomorphisms(F.sl2()) == [(0, 0), (0, 1), (1, 1)]

    def test_trivial(self):
        assert enumerate_endomorphisms(F.trivial()) == [(0,)]

    def test_lz2_all_maps(self):
        assert enumerate_endomorphisms(F.lz2()) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_cap(self):
        big = FiniteAlgebra.from_functions("C9", 9, {"m": (2, min)})
        with pytest.raises(CapExceeded):
            enumerate_endomorphisms(big)

    @pytest.mark.parametrize("make", [F.sl2, F.sl3v, F.chain3, F.lz2, F.lzrz, F.z2, F.majority])
    def test_matches_brute_force(self, make):
        alg = make()
        ops = [(a, alg.table(s)) for s, a in alg.signature]
        assert enumerate_endomorphisms(alg) == brute_endomorphisms(alg.size, ops)

    @given(algebras(max_size=4))
    def test_backtracking_matches_brute_force(self, alg):
        ops = [(a, alg.table(s)) for s, a in alg.signature]
        assert enumerate_endomorphisms(alg) == brute_endomorphisms(alg.size, ops)

    @given(algebras(max_size=4))
    def test_identity_and_composition(self, alg):
        endos = enumerate_endomorphisms(alg)
        assert tuple(range(alg.size)) in endos
        found = set(endos)
        for f in endos:
            for g in endos:
                assert compose(f, g) in found
        assert all(is_homomorphism(alg, alg, f) for f in endos)


class TestSubalgebras:
    def test_sl3v(self):
        assert generate_subalgebra(F.sl3v(), 0b110) == 0b111
        assert generate_subalgebra(F.sl3v(), 0b010) == 0b010

    def test_sl2(self):
        assert generate_subalgebra(F.sl2(), 0b10) == 0b10

    @given(algebras(max_size=4), st.integers(0, 15), st.integers(0, 15))
    def test_closure_laws(self, alg, s, t):
        full = (1 << alg.size) - 1
        s, t = s & full, t & full
        cs = generate_subalgebra(alg, s)
        assert s & ~cs == 0
        assert generate_subalgebra(alg, cs) == cs
        if s & ~t == 0:
            assert cs & ~generate_subalgebra(alg, t) == 0


class TestModes:
    def test_sl2(self):
        assert classify_mode(F.sl2()) == (True, True)

    def test_lzrz(self):
        assert classify_mode(F.lzrz()) == (True, True)

    def test_z2(self):
        assert classify_mode(F.z2()) == (False, True)

    def test_rectangular_band(self):
        assert classify_mode(F.rectangular_band()) == (True, True)

    def test_non_entropic(self):
        # a binary operation that is idempotent but not entropic
        def op(a, b):
            return a if a == b else (a + 2 * b) % 3
        alg = FiniteAlgebra.from_functions("N", 3, {"m": (2, op)})
        assert classify_mode(alg) == (True, False)

    @given(algebras(max_size=3, arities=(1, 2)))
    def test_entropic_matches_matrix_check(self, alg):
        def naive_commute(f, g):
            af, ag = alg.arity(f), alg.arity(g)
            for flat in product(range(alg.size), repeat=af * ag):
                rows = [flat[i * ag:(i + 1) * ag] for i in range(af)]
                cols = [[rows[i][j] for i in range(af)] for j in range(ag)]
                if alg.apply(f, *[alg.apply(g, *r) for r in rows]) != \
                        alg.apply(g, *[alg.apply(f, *c) for c in cols]):
                    return False
            return True

        expected = all(naive_commute(f, g) for f in alg.symbols for g in alg.symbols)
        assert classify_mode(alg)[1] == expected


class TestQuotient:
    def test_identity_partition(self):
        q = quotient_algebra(F.sl2(), (0, 1))
        assert q.tables == F.sl2().tables

    def test_total_partition(self):
        q = quotient_algebra(F.sl2(), (0, 0))
        assert q.size == 1

    def test_not_a_congruence(self):
        # {0,2} | {1} on the 3-chain: min(0,1)=0 but min(2,1)=1
        with pytest.raises(NotACongruence) as e:
            quotient_algebra(F.chain3(), (0, 1, 0))
        assert e.value.witness[0] == "m"

    def test_power_quotient(self):
        from powclo.power import build_extended_power
        pa = build_extended_power(F.sl2())
        q = quotient_algebra(pa.algebra, (0, 1, 1))
        assert q.size == 2


class TestFreePresentation:
    def test_bad_representative(self):
        with pytest.raises(SchemaError):
            FreePresentation(F.sl2(), (0,), (Var(0), Var(0)))

    def test_sl2_from_parser(self):
        alg = F.sl2()
        ident = parse_identity("m(x,y) = m(y,x)", alg)
        assert holds_identity(alg, ident)
