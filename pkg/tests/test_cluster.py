"""Cluster characters: golden values, path agreement, multiplicativity.

Expected Laurent polynomials are hand-derived from the definition
X_M = sum_e chi(Gr_e(M)) x^(e R + (d-e) R^T - d); the derivations are
recorded next to each assertion.
"""

import numpy as np
import pytest

from hallchar import catalog, cluster
from hallchar.catalog import parse_symbol
from hallchar.laurent import LaurentPoly
from hallchar.quiver import kronecker_quiver, linear_quiver

A1 = linear_quiver(1)
A2 = linear_quiver(2)
A3 = linear_quiver(3)
K = kronecker_quiver()


def mono(exps, c=1):
    return LaurentPoly.monomial(exps, c)


def test_character_exponent_a2():
    # A_2 has R = [[0,1],[0,0]].  For d = (1,0) (the simple S_1):
    #   e = (0,0): 0*R + (1,0)R^T - (1,0) = (0,0) + (0,0) - (1,0) = (-1,0)
    #   e = (1,0): (1,0)R - (1,0)      = (0,1) - (1,0)          = (-1,1)
    assert cluster.character_exponent(A2, (1, 0), (0, 0)) == (-1, 0)
    assert cluster.character_exponent(A2, (1, 0), (1, 0)) == (-1, 1)


def test_chi_grassmannian_projective_spaces():
    # Gr_1 of S_1^m over the one-vertex quiver is P^{m-1}:
    # chi(P^1) = 2, chi(P^2) = 3.
    assert cluster.chi_grassmannian(parse_symbol("2*S1", A1), (1,)) == 2
    assert cluster.chi_grassmannian(parse_symbol("3*S1", A1), (1,)) == 3
    # out-of-range e is not a subdimension vector
    assert cluster.chi_grassmannian(parse_symbol("S1", A1), (2,)) == 0
    with pytest.raises(ValueError):
        cluster.chi_grassmannian(parse_symbol("S1", A2), (1,))


def test_char_simples_a2():
    # S_1 on A_2: subreps e = (0,0) and (1,0), both one point, so
    # X_{S_1} = x1^-1 + x1^-1 x2 (exponents derived above).
    assert cluster.char_of_symbol(parse_symbol("S1", A2)) == (
        mono((-1, 0)) + mono((-1, 1))
    )
    # S_2 = P(2) is simple projective: e = (0,0) gives
    # (0,1)R^T - (0,1) = (1,0) - (0,1) = (1,-1); e = (0,1) gives
    # (0,1)R - (0,1) = (0,-1).  X_{S_2} = x1 x2^-1 + x2^-1.
    assert cluster.char_of_symbol(parse_symbol("S2", A2)) == (
        mono((1, -1)) + mono((0, -1))
    )


def test_char_projective_a2():
    # P(1) on A_2 has d = (1,1); its subreps are 0, S_2, P(1) (e = (1,0)
    # is not closed under the arrow), each a single point:
    #   e = (0,0): (1,1)R^T - (1,1) = (1,0) - (1,1) = (0,-1)
    #   e = (0,1): (0,1)R + (1,0)R^T - (1,1) = (0,0)+(0,0)-(1,1) = (-1,-1)
    #   e = (1,1): (1,1)R - (1,1) = (0,1) - (1,1) = (-1,0)
    assert cluster.char_of_symbol(parse_symbol("P1", A2)) == (
        mono((0, -1)) + mono((-1, -1)) + mono((-1, 0))
    )


def test_char_simples_kronecker():
    # Kronecker R = [[0,2],[0,0]].  S_1 has subreps e = (0,0), (1,0):
    #   e = (0,0): (1,0)R^T - (1,0) = (-1,0)
    #   e = (1,0): (1,0)R - (1,0) = (0,2) - (1,0) = (-1,2)
    # so X_{S_1} = x1^-1 (1 + x2^2); dually X_{S_2} = x2^-1 (1 + x1^2).
    assert cluster.char_of_symbol(parse_symbol("S1", K)) == (
        mono((-1, 0)) + mono((-1, 2))
    )
    assert cluster.char_of_symbol(parse_symbol("S2", K)) == (
        mono((0, -1)) + mono((2, -1))
    )


def test_char_regular_kronecker():
    # The regular R(lam, 1) has d = (1,1), matrices [1], [lam]; subreps are
    # e = (0,0), (0,1), (1,1), one point each (e = (1,0) would need the
    # source line killed by both arrows, impossible):
    #   e = (0,0): (1,1)R^T - (1,1) = (2,0) - (1,1) = (1,-1)
    #   e = (0,1): (0,1)R + (1,0)R^T - (1,1) = (-1,-1)
    #   e = (1,1): (1,1)R - (1,1) = (0,2) - (1,1) = (-1,1)
    X = cluster.char_of_symbol(parse_symbol("R(1,1)@0", K))
    assert X == mono((1, -1)) + mono((-1, -1)) + mono((-1, 1))
    # chi(Gr_e) sums to the number of subrep strata: 3
    assert X.eval_at_ones() == 3
    # any tube point gives the same character
    assert cluster.char_of_symbol(parse_symbol("R(1,1)@1", K)) == X


def test_char_zero_module():
    assert cluster.char_of_symbol(parse_symbol("0", A2)) == LaurentPoly.constant(2, 1)
    assert cluster.char_of_symbol(parse_symbol("0", K)) == LaurentPoly.constant(2, 1)


def test_char_by_strata_agrees():
    for quiver, text in [
        (A2, "P1"),
        (A2, "S1 + S2"),
        (K, "S1"),
        (K, "R(1,1)@0"),
        (K, "P[1,2]"),
        (A3, "P1"),
    ]:
        sym = parse_symbol(text, quiver)
        assert cluster.char_by_strata(sym) == cluster.char_of_symbol(sym)


def test_multiplicativity():
    # X is multiplicative over direct sums: X_{M + N} = X_M X_N.
    for quiver, a, b in [
        (A2, "S1", "S2"),
        (A2, "P1", "S1"),
        (K, "S1", "S2"),
        (K, "R(1,1)@0", "R(1,1)@1"),
        (A3, "S2", "P1"),
    ]:
        A = parse_symbol(a, quiver)
        B = parse_symbol(b, quiver)
        lhs = cluster.char_of_symbol(A.direct_sum(B))
        assert lhs == cluster.char_of_symbol(A) * cluster.char_of_symbol(B)


def test_socle_and_top_monomials():
    # Kronecker injectives: I(1) = S_1 = I[1,0], I(2) = I[2,1]; the socle
    # of I(1) + I(2) is S_1 + S_2, so x^(dim soc) = x1 x2.
    assert cluster.socle_monomial(K, [(("I", 0), 1), (("I", 1), 1)]) == mono((1, 1))
    # A_2: top(P(1) + P(2)^2) = S_1 + S_2^2
    assert cluster.top_monomial(
        A2, [(("root", (1, 1)), 1), (("root", (0, 1)), 2)]
    ) == mono((1, 2))
    with pytest.raises(ValueError):
        cluster.socle_monomial(K, [(("P", 0), 1)])  # projective, not injective
    with pytest.raises(ValueError):
        cluster.top_monomial(A2, [(("root", (1, 0)), 1)])  # S_1 not projective


def test_char_of_shifted_projective():
    # P(2)[1] on A_2 has character x^(dim top P(2)) = x2.
    assert cluster.char_of_shifted_projective((0, 1)) == mono((0, 1))
    assert cluster.char_of_shifted_projective((2, 0)) == mono((2, 0))


def test_chartable_memo_and_checks():
    T = cluster.CharTable(K)
    sym = parse_symbol("S1 + S2", K)
    X = T.char(sym)
    assert X is T.char(sym)  # memoized
    assert X == cluster.char_of_symbol(parse_symbol("S1", K)) * cluster.char_of_symbol(
        parse_symbol("S2", K)
    )
    with pytest.raises(ValueError):
        T.char(parse_symbol("S1", A2))


def test_chartable_char_of_classes_concrete():
    # concrete regular labels (census keys) are lifted to abstract tags
    T = cluster.CharTable(K)
    X = T.char_of_classes([(("Rc", 0, 1), 1)])
    assert X == cluster.char_of_symbol(parse_symbol("R(1,1)@0", K))
    # and the lift maps distinct points to distinct tags
    Y = T.char_of_classes([(("Rc", 0, 1), 1), (("Rc", catalog.INF, 1), 1)])
    assert Y == X * X


def test_abstract_symbol_from_classes_fingerprint():
    pairs = [(("Rc", 0, 2), 1), (("Rc", 1, 1), 3), (("P", 0), 1)]
    sym = catalog.abstract_symbol_from_classes(K, pairs)
    assert sym.fingerprint() == catalog.fingerprint_of_classes(pairs)
    assert sym.dims == catalog.decomposition_dims(K, pairs)
    # abstract atoms pass through untouched
    again = catalog.abstract_symbol_from_classes(K, sym.atoms)
    assert again == sym
