"""Tests for extension middles and homomorphism strata.

Hand-derived values (1 -> 2 and Kronecker):
  * Ext^1(S_1, S_2) on 1 -> 2 is a line; class 0 gives the split middle,
    each of the p-1 nonzero classes gives P(1).
  * Ext^1(S_1, S_2) on Kronecker is a plane; the middle with cocycle
    (a, b) is the regular R([a:b], 1), so each of the p+1 points of P^1
    receives p-1 classes and the split middle exactly one.
  * An extension with split middle is trivial, so the split class always
    has census count 1.
  * Hom(S_1, S_1) = F_p: the zero map (kernel and cokernel S_1) plus
    p-1 isomorphisms.
"""

import numpy as np
import pytest

from hallchar import catalog, rep, strata
from hallchar.catalog import INF, module_from_class
from hallchar.errors import BudgetExceeded
from hallchar.quiver import kronecker_quiver, linear_quiver

A2 = linear_quiver(2)
A3 = linear_quiver(3)
K = kronecker_quiver()


def simple(Q, p, i):
    return rep.Rep.simple(Q, p, i)


def test_ext_middle_census_a2():
    for p in (2, 3, 5):
        X, Y = simple(A2, p, 0), simple(A2, p, 1)
        census = strata.ext_middle_census(X, Y)
        split = ((("root", (0, 1)), 1), (("root", (1, 0)), 1))
        glued = ((("root", (1, 1)), 1),)
        assert census == {split: 1, glued: p - 1}
        # reverse direction has no extensions
        assert strata.ext_middle_census(Y, X) == {split: 1}


def test_ext_middle_census_total_mass():
    p = 3
    cases = [
        (simple(A2, p, 0), simple(A2, p, 1)),
        (module_from_class(A2, ("root", (1, 1)), p), simple(A2, p, 0)),
        (simple(K, p, 0), simple(K, p, 1)),
        (
            module_from_class(K, ("Rc", 0, 1), p),
            module_from_class(K, ("Rc", 0, 1), p),
        ),
    ]
    for X, Y in cases:
        census = strata.ext_middle_census(X, Y)
        assert sum(census.values()) == p ** rep.ext1_dim(X, Y)
        # Miyata: only the trivial class has split middle
        assert census.get(strata.split_middle_classes(X, Y), 0) == 1


def test_ext_middle_census_kronecker_tubes():
    p = 3
    X, Y = simple(K, p, 0), simple(K, p, 1)  # Ext is 2-dimensional
    census = strata.ext_middle_census(X, Y)
    split = ((("P", 0), 1), (("I", 0), 1))
    assert census[split] == 1
    points = [0, 1, 2, INF]
    for lam in points:
        assert census[((("Rc", lam, 1), 1),)] == p - 1
    assert len(census) == 1 + len(points)


def test_middle_from_cocycle_kronecker():
    p = 5
    X, Y = simple(K, p, 0), simple(K, p, 1)
    basis = strata.ext_complement_basis(X, Y)
    assert basis.shape == (2, 2)
    lam = 3
    flat = np.array([1, lam], dtype=np.int64)  # A = 1, B = lam
    mid = strata.middle_from_cocycle(X, Y, flat)
    assert catalog.decompose(mid) == ((("Rc", lam, 1), 1),)
    # the middle always contains Y as a subrep with quotient X
    self_ext = module_from_class(K, ("Rc", 0, 1), p)
    basis2 = strata.ext_complement_basis(self_ext, self_ext)
    assert basis2.shape[1] == 1  # dim Ext^1(R, R) = 1
    mid2 = strata.middle_from_cocycle(self_ext, self_ext, basis2[:, 0])
    assert catalog.decompose(mid2) == ((("Rc", 0, 2), 1),)


def test_ext_complement_with_nontrivial_coboundaries():
    p = 3
    P1 = module_from_class(A2, ("root", (1, 1)), p)
    # C^1 is one-dimensional but entirely coboundaries: Ext^1(P(1), P(1)) = 0
    assert strata.ext_complement_basis(P1, P1).shape == (1, 0)
    assert strata.ext_middle_census(P1, P1) == {
        ((("root", (1, 1)), 2),): 1
    }


def test_ext_budget():
    p = 5
    M = rep.direct_sum(*[simple(K, p, 0)] * 3)
    N = rep.direct_sum(*[simple(K, p, 1)] * 3)
    with pytest.raises(BudgetExceeded):
        strata.ext_middle_census(M, N, budget=100)  # 5^18 classes


def test_hom_census_simple():
    for p in (2, 5):
        S = simple(A2, p, 0)
        census = strata.hom_census(S, S)
        s1 = ((("root", (1, 0)), 1),)
        assert census == {
            (s1, s1): 1,  # zero map
            ((), ()): p - 1,  # isomorphisms
        }


def test_hom_census_matches_brute_force():
    p = 2
    P1 = module_from_class(A2, ("root", (1, 1)), p)
    S1 = simple(A2, p, 0)
    cases_a2 = [
        (P1, S1),
        (S1, P1),
        (rep.direct_sum(P1, S1), P1),
        (P1, rep.direct_sum(S1, simple(A2, p, 1))),
    ]
    for L1, L2 in cases_a2:
        assert strata.hom_census(L1, L2) == strata.hom_census_brute(L1, L2)
    r0 = module_from_class(K, ("Rc", 0, 1), p)
    i0 = module_from_class(K, ("I", 0), p)
    p0 = module_from_class(K, ("P", 0), p)
    cases_k = [
        (r0, r0),
        (rep.direct_sum(p0, i0), r0),
        (r0, rep.direct_sum(p0, i0)),
        (module_from_class(K, ("P", 1), p), rep.direct_sum(r0, i0)),
    ]
    for L1, L2 in cases_k:
        assert strata.hom_census(L1, L2) == strata.hom_census_brute(L1, L2)


def test_hom_census_total_mass():
    p = 3
    P1 = module_from_class(A2, ("root", (1, 1)), p)
    M = rep.direct_sum(P1, simple(A2, p, 0))
    for L1, L2 in [(M, M), (M, P1), (P1, M)]:
        census = strata.hom_census(L1, L2)
        assert sum(census.values()) == p ** rep.hom_dim(L1, L2)


def test_hom_census_a3():
    p = 2
    P2 = catalog.parse_symbol("P2", A3).instantiate(p)
    I2 = catalog.parse_symbol("I2", A3).instantiate(p)
    assert strata.hom_census(P2, I2) == strata.hom_census_brute(P2, I2)
