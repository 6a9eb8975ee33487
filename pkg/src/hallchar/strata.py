"""Extension and homomorphism strata: exact counts grouped by iso class.

Extensions
----------
For representations X, Y the space of 1-cocycles is

    C^1 = prod_{arrows a: s->t} Hom(X_s, Y_t),

inside which the coboundaries B^1 are the image of prod_i Hom(X_i, Y_i)
under f |-> (Y_a f_s - f_t X_a)_a; then Ext^1(X, Y) = C^1 / B^1.  The
middle term of the extension with cocycle d is the representation L with
L_i = Y_i + X_i and block matrices

    L_a = [[ Y_a, d_a ],
           [  0 , X_a ]],

which contains Y as a subrepresentation with quotient X.  Enumerating one
cocycle per class (a basis of a complement of B^1) and decomposing the
middles yields the extension census

    ext_middle_census(X, Y)[middle_classes] = #{e in Ext^1(X,Y) : mid(e) iso}

whose total mass is p^{dim Ext^1(X, Y)}.  The class e = 0 contributes the
split middle.

Homomorphisms
-------------
The homomorphism census counts maps g: L1 -> L2 by the pair
(class of Coker g, class of Ker g).  Every g factors through its image W,
and for a fixed iso class of W the maps with Ker g iso Y and Coker g iso X
split into a choice of kernel (a subrep of L1 with quotient class W), a
choice of image (a subrep of L2 with cokernel class X), and an isomorphism
L1/Ker -> W -> Image, counted by |Aut W|:

    #{g : Coker iso X, Ker iso Y}
        = sum_W  g^{L1}_{W, Y} * g^{L2}_{X, W} * |Aut W|.

This reduces homomorphism strata to the (cached) Hall censuses instead of
enumerating p^{dim Hom} maps; the brute-force enumeration is kept as a
cross-check oracle for tests.
"""

import itertools

import numpy as np

from . import catalog, linalg, rep, subspaces
from .errors import BudgetExceeded
from .rep import Rep

DEFAULT_EXT_BUDGET = 1_000_000


def _cocycle_layout(X, Y):
    """Offsets of vec(d_a) inside the flat cocycle coordinate vector."""
    offsets = []
    pos = 0
    for (s, t) in X.quiver.arrows:
        offsets.append(pos)
        pos += Y.dims[t] * X.dims[s]
    return offsets, pos


def coboundary_matrix(X, Y):
    """Matrix of f |-> (Y_a f_s - f_t X_a)_a in flat coordinates.

    Columns are indexed by the stacked vec(f_i), rows by the stacked
    vec(d_a); row-major vec throughout, as in the Hom solver.
    """
    p = X.p
    c_off, c_total = _cocycle_layout(X, Y)
    f_off = []
    pos = 0
    for i in range(X.quiver.n):
        f_off.append(pos)
        pos += Y.dims[i] * X.dims[i]
    out = np.zeros((c_total, pos), dtype=np.int64)
    for a, (s, t) in enumerate(X.quiver.arrows):
        rows = Y.dims[t] * X.dims[s]
        if rows == 0:
            continue
        # vec(Y_a f_s) = (Y_a (x) I) vec(f_s)
        bs = np.kron(Y.mats[a], np.eye(X.dims[s], dtype=np.int64))
        out[c_off[a] : c_off[a] + rows, f_off[s] : f_off[s] + Y.dims[s] * X.dims[s]] = bs
        # vec(f_t X_a) = (I (x) X_a^T) vec(f_t)
        bt = np.kron(np.eye(Y.dims[t], dtype=np.int64), X.mats[a].T)
        out[c_off[a] : c_off[a] + rows, f_off[t] : f_off[t] + Y.dims[t] * X.dims[t]] = (
            out[c_off[a] : c_off[a] + rows, f_off[t] : f_off[t] + Y.dims[t] * X.dims[t]]
            - bt
        ) % p
    return out % p


def ext_complement_basis(X, Y):
    """Flat cocycle vectors representing a basis of Ext^1(X, Y)."""
    p = X.p
    _, c_total = _cocycle_layout(X, Y)
    if c_total == 0:
        return np.zeros((c_total, 0), dtype=np.int64)
    cb = coboundary_matrix(X, Y)
    if cb.shape[1] == 0:
        span_pivots = set()
    else:
        B = np.ascontiguousarray(cb.T % p)
        r, pivots = linalg.rref_mod(B, p)
        span_pivots = {int(pivots[i]) for i in range(r)}
    free = [j for j in range(c_total) if j not in span_pivots]
    out = np.zeros((c_total, len(free)), dtype=np.int64)
    for k, j in enumerate(free):
        out[j, k] = 1
    return out


def middle_from_cocycle(X, Y, flat):
    """The middle term of the extension of X by Y with the given cocycle."""
    Q, p = X.quiver, X.p
    offsets, _ = _cocycle_layout(X, Y)
    dims = [Y.dims[i] + X.dims[i] for i in range(Q.n)]
    mats = []
    for a, (s, t) in enumerate(Q.arrows):
        m = np.zeros((dims[t], dims[s]), dtype=np.int64)
        yt, xs = Y.dims[t], X.dims[s]
        m[:yt, : Y.dims[s]] = Y.mats[a]
        m[yt:, Y.dims[s] :] = X.mats[a]
        if yt and xs:
            m[:yt, Y.dims[s] :] = flat[offsets[a] : offsets[a] + yt * xs].reshape(
                yt, xs
            )
        mats.append(m)
    return Rep(Q, p, dims, mats)


def ext_middle_census(X, Y, budget=DEFAULT_EXT_BUDGET):
    """{middle_classes: #extension classes}, total mass p^{dim Ext^1}."""
    p = X.p
    basis = ext_complement_basis(X, Y)
    e_dim = basis.shape[1]
    expected = rep.ext1_dim(X, Y)
    if e_dim != expected:
        raise AssertionError(
            f"cocycle complement dimension {e_dim} != dim Ext^1 = {expected}"
        )
    if p**e_dim > budget:
        raise BudgetExceeded(f"{p}^{e_dim} extension classes exceed budget")
    census = {}
    for coeffs in itertools.product(range(p), repeat=e_dim):
        flat = (basis @ np.array(coeffs, dtype=np.int64)) % p if e_dim else np.zeros(
            basis.shape[0], dtype=np.int64
        )
        mid = middle_from_cocycle(X, Y, flat)
        key = catalog.decompose(mid)
        census[key] = census.get(key, 0) + 1
    return census


def split_middle_classes(X, Y):
    """The decomposition of the split middle X + Y."""
    return catalog.decompose(rep.direct_sum(Y, X))


# ---------------------------------------------------------------------------
# homomorphism strata
# ---------------------------------------------------------------------------


def _dims_leq(a, b):
    return all(x <= y for x, y in zip(a, b))


def hom_census(L1, L2, budget=subspaces.DEFAULT_SUBSPACE_BUDGET):
    """{(coker_classes, ker_classes): #maps L1 -> L2 in that stratum}.

    Total mass is p^{dim Hom(L1, L2)}.
    """
    Q, p = L1.quiver, L1.p
    out = {}
    n = Q.n
    for r in itertools.product(*[range(min(L1.dims[i], L2.dims[i]) + 1) for i in range(n)]):
        ker_dims = tuple(L1.dims[i] - r[i] for i in range(n))
        c1 = subspaces.hall_census(L1, ker_dims, budget=budget)
        c2 = subspaces.hall_census(L2, r, budget=budget)
        if not c1 or not c2:
            continue
        # join on the image class W: quotient side of c1, sub side of c2
        by_w1 = {}
        for (w, y), cnt in c1.items():
            by_w1.setdefault(w, []).append((y, cnt))
        for (x, w), cnt2 in c2.items():
            if w not in by_w1:
                continue
            aut_w = catalog.aut_count_of_classes(Q, w, p)
            for y, cnt1 in by_w1[w]:
                key = (x, y)
                out[key] = out.get(key, 0) + cnt1 * cnt2 * aut_w
    return out


def hom_census_brute(L1, L2, cap=200000):
    """Oracle: enumerate all of Hom(L1, L2) and classify kernels/cokernels."""
    p = L1.p
    basis = rep.hom_basis(L1, L2)
    h = len(basis)
    if p**h > cap:
        raise BudgetExceeded(f"{p}^{h} maps exceed cap {cap}")
    out = {}
    nv = L1.quiver.n
    zero = [
        np.zeros((L2.dims[i], L1.dims[i]), dtype=np.int64) for i in range(nv)
    ]
    for coeffs in itertools.product(range(p), repeat=h):
        f = [z.copy() for z in zero]
        for c, g in zip(coeffs, basis):
            if c:
                for i in range(nv):
                    f[i] = (f[i] + c * g[i]) % p
        ker = rep.kernel_rep(L1, L2, f)
        cok = rep.cokernel_rep(L1, L2, f)
        key = (catalog.decompose(cok), catalog.decompose(ker))
        out[key] = out.get(key, 0) + 1
    return out


def hom_stratum_count(L1, L2, coker_classes, ker_classes, budget=subspaces.DEFAULT_SUBSPACE_BUDGET):
    census = hom_census(L1, L2, budget=budget)
    key = (catalog.sort_classes(coker_classes), catalog.sort_classes(ker_classes))
    return census.get(key, 0)
