"""Lattice arithmetic: signatures, parity, characteristic vectors,
orthogonal complements.  Oracle routes are written here, independently of
the package implementation."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from m4calc.errors import DegenerateForm, DependentVectors, NonIntegralVector
from m4calc.lattice import (
    IntersectionLattice,
    diagonal_lattice,
    e8_gram,
    hyperbolic_gram,
    is_characteristic,
    orthogonal_complement,
    parity,
    signature,
    solve_in_basis,
)

from conftest import congruent, random_unimodular


def oracle_signature(gram):
    """Completing-the-square diagonalization, written independently: peel off
    one variable at a time from the quadratic form q(x) = x^T G x."""
    form = {
        (i, j): Fraction(gram[i][j]) for i in range(len(gram)) for j in range(len(gram))
    }
    n = len(gram)
    vars_left = list(range(n))
    plus = minus = 0
    while vars_left:
        v = next((i for i in vars_left if form.get((i, i), 0) != 0), None)
        if v is None:
            pair = next(
                ((i, j) for i in vars_left for j in vars_left
                 if i < j and form.get((i, j), 0) != 0),
                None,
            )
            if pair is None:
                raise DegenerateForm("oracle: degenerate")
            i, j = pair
            # basis change e_i -> e_i + e_j, i.e. substitute x_j -> x_j + x_i:
            # creates the diagonal term 2*G_ij on x_i^2
            new = dict(form)
            for a in vars_left:
                for b in vars_left:
                    coeff = form.get((a, b), 0)
                    if not coeff:
                        continue
                    for aa in ([a, i] if a == j else [a]):
                        for bb in ([b, i] if b == j else [b]):
                            if (aa, bb) != (a, b):
                                new[(aa, bb)] = new.get((aa, bb), 0) + coeff
            form = new
            v = i
        a = form[(v, v)]
        if a > 0:
            plus += 1
        else:
            minus += 1
        # q = a*(x_v + sum(b_i/a x_i))^2 + rest
        coeffs = {
            i: form.get((v, i), 0) + form.get((i, v), 0)
            for i in vars_left
            if i != v
        }
        vars_left.remove(v)
        for i in vars_left:
            for j in vars_left:
                adj = (coeffs.get(i, 0) * coeffs.get(j, 0)) / (4 * a)
                key = (i, j)
                form[key] = form.get(key, 0) - adj
    return plus, minus


def lattice_from(gram):
    return IntersectionLattice(
        tuple(tuple(r) for r in gram), tuple(f"x{i}" for i in range(len(gram)))
    )


def direct_sum(*grams):
    n = sum(len(g) for g in grams)
    out = [[0] * n for _ in range(n)]
    off = 0
    for g in grams:
        for i in range(len(g)):
            for j in range(len(g)):
                out[off + i][off + j] = g[i][j]
        off += len(g)
    return out


K3_GRAM = direct_sum(
    hyperbolic_gram(), hyperbolic_gram(), hyperbolic_gram(), e8_gram(), e8_gram()
)


class TestSignature:
    def test_hyperbolic_like_diagonal(self):
        assert signature(lattice_from([[1, 0], [0, -1]])) == (1, 1)

    def test_negative_e8(self):
        L = lattice_from(e8_gram())
        assert oracle_signature(e8_gram()) == (0, 8)
        assert signature(L) == (0, 8)

    def test_k3_form(self):
        assert oracle_signature(K3_GRAM) == (3, 19)
        assert signature(lattice_from(K3_GRAM)) == (3, 19)

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateForm):
            signature(lattice_from([[0, 0], [0, 0]]))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000))
    def test_basis_invariance(self, seed):
        rng = random.Random(seed)
        base = rng.choice(
            [[[1, 0], [0, -1]], list(map(list, hyperbolic_gram())),
             [[2, 1, 0], [1, 2, 0], [0, 0, -2]], [[-1, 0], [0, -1]]]
        )
        p = random_unimodular(rng, len(base))
        assert signature(lattice_from(congruent(base, p))) == signature(lattice_from(base))


class TestParity:
    def test_odd_diagonal(self):
        assert parity(diagonal_lattice([-1])) == 1

    def test_hyperbolic_even(self):
        assert parity(lattice_from(hyperbolic_gram())) == 0

    def test_k3_even(self):
        # brute: every diagonal entry even
        assert all(K3_GRAM[i][i] % 2 == 0 for i in range(22))
        assert parity(lattice_from(K3_GRAM)) == 0

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000))
    def test_basis_invariance(self, seed):
        rng = random.Random(seed)
        base = rng.choice(
            [list(map(list, hyperbolic_gram())), [[1, 0], [0, -1]], [[2, 1], [1, 2]]]
        )
        p = random_unimodular(rng, len(base))
        assert parity(lattice_from(congruent(base, p))) == parity(lattice_from(base))


class TestCharacteristic:
    def test_zero_in_even_lattice(self):
        L = lattice_from(hyperbolic_gram())
        assert is_characteristic(L, L.vector([0, 0]))

    def test_generator_of_minus_one(self):
        L = diagonal_lattice([-1])
        assert is_characteristic(L, L.vector([1]))

    def test_brute_force_diag_1_1(self):
        L = diagonal_lattice([1, 1])
        # brute: k.x = x.x mod 2 on both basis vectors
        def brute(k):
            return all((k[i] * 1 - 1) % 2 == 0 for i in range(2))

        assert brute((1, 1)) and is_characteristic(L, L.vector([1, 1]))
        assert not brute((1, 0)) and not is_characteristic(L, L.vector([1, 0]))

    def test_non_integral_rejected(self):
        L = diagonal_lattice([1, 1])
        with pytest.raises(NonIntegralVector):
            is_characteristic(L, L.vector([Fraction(1, 2), 0]))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000))
    def test_van_der_blij(self, seed):
        # k.k = sigma mod 8 for every characteristic k of a unimodular form
        rng = random.Random(seed)
        base = rng.choice(
            [[[1, 0], [0, -1]], list(map(list, hyperbolic_gram())), [[1]],
             direct_sum([[1]], [[-1]], [[-1]])]
        )
        p = random_unimodular(rng, len(base))
        L = lattice_from(congruent(base, p))
        b_plus, b_minus = signature(L)
        sigma = b_plus - b_minus
        for coords in itertools.product([-1, 0, 1, 2], repeat=L.rank):
            k = L.vector(coords)
            if is_characteristic(L, k):
                assert (L.square(k) - sigma) % 8 == 0


class TestOrthogonalComplement:
    def test_coordinate_split(self):
        L = diagonal_lattice([1, -1, -1])
        comp, basis = orthogonal_complement(L, [L.vector([0, 0, 1])])
        assert signature(comp) == (1, 1)
        assert {tuple(b.coords) for b in basis} == {(1, 0, 0), (0, 1, 0)}

    def test_definite_block_split(self):
        L = lattice_from(direct_sum([[-4]], [[1, 0], [0, 1]]))
        comp, _ = orthogonal_complement(L, [L.basis_vector(0)])
        assert comp.gram == ((1, 0), (0, 1))

    def test_dependent_rejected(self):
        L = diagonal_lattice([1, -1])
        with pytest.raises(DependentVectors):
            orthogonal_complement(L, [L.vector([1, 1]), L.vector([2, 2])])

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 10_000))
    def test_random_unimodular_oracle(self, seed):
        rng = random.Random(seed)
        base = direct_sum([[1]], [[1]], [[-1]], [[-1]], [[-1]])
        p = random_unimodular(rng, 5, steps=8)
        L = lattice_from(congruent(base, p))
        v = L.vector([rng.randint(-2, 2) for _ in range(5)])
        if v.is_zero:
            v = L.basis_vector(0)
        comp, basis = orthogonal_complement(L, [v])
        # every basis vector of the result is orthogonal to v
        for b in basis:
            assert L.pairing(b, v) == 0
        assert comp.rank == 4
        # exhaustive small-coefficient search: every integral vector
        # orthogonal to v lies in the (saturated) span of the basis
        for coords in itertools.product([-2, -1, 0, 1, 2], repeat=5):
            x = L.vector(coords)
            if L.pairing(x, v) != 0:
                continue
            sol = solve_in_basis(L, list(basis), x)
            assert sol is not None
            assert all(s.denominator == 1 for s in sol)

    def test_rank_drop(self):
        L = lattice_from(K3_GRAM)
        vs = [L.basis_vector(0), L.basis_vector(2)]
        comp, _ = orthogonal_complement(L, vs)
        assert comp.rank == L.rank - 2


class TestSerialization:
    def test_roundtrip(self):
        L = lattice_from(K3_GRAM)
        assert IntersectionLattice.from_json(L.to_json()) == L

    def test_big_entries_as_strings(self):
        big = 2**60
        L = lattice_from([[big]])
        data = L.to_json()
        assert data["gram"][0][0] == str(big)
        assert IntersectionLattice.from_json(data) == L
