"""Catalogs of indecomposable representations, exact decomposition, and
a textual grammar for naming modules.

Supported catalogs
------------------
* Dynkin quivers: indecomposables correspond to positive roots.  For the
  equioriented A_n quiver these are interval modules (built directly);
  for other Dynkin orientations the unique indecomposable with a given
  root as dimension vector is found by seeded random search (a generic
  representation of a root dimension vector is the indecomposable one,
  recognized by dim End = 1).

* Kronecker quiver (two parallel arrows): the indecomposables are
    - preprojectives  P_n with dims (n, n+1),   A = [I; 0], B = [0; I]
    - preinjectives   I_n with dims (n+1, n),   A = [I | 0], B = [0 | I]
    - regulars        R(pt, m) for pt in P^1,   one Jordan-type block:
        pt = lam finite:  A = Id_m, B = J_m(lam)
        pt = infinity:    A = J_m(0), B = Id_m
  Points of P^1 over F_p whose residue field is larger than F_p ("tubes at
  irrational points") are outside this catalog; decomposition detects them
  and raises OutsideCatalog.

Decomposition
-------------
Multiplicities of indecomposable summands are computed from exact Hom
dimension counts via almost-split sequences.  For an indecomposable Z
which is not injective, with sequence 0 -> Z -> E -> Z' -> 0,

    mult_Z(M) = dim Hom(Z, M) - dim Hom(E, M) + dim Hom(Z', M),

because the cokernel of Hom(E, M) -> Hom(Z, M) ... precisely: the maps
Z -> M that do not factor through E are exactly the split injections onto
Z-summands, and their count is mult * dim End(Z)/rad = mult here.  Dually,
for non-projective Z with sequence 0 -> Z'' -> E -> Z -> 0,

    mult_Z(M) = dim Hom(M, Z) - dim Hom(M, E) + dim Hom(M, Z'').

Contributions of any other summand cancel in the alternating sum, so the
formula is exact even in the presence of summands outside the catalog;
those reveal themselves through the final mass check
sum(mult * dims) = dims(M).

Symbols
-------
A module symbol is a formal direct sum of catalog atoms, written e.g.

    S1 + 2*P[1,2] + R(1,1)@0 + R(2,2)@1

Atoms: `S<i>`, `P<i>`, `I<i>` (1-based vertex index: simple, projective,
injective), `<Letter>[d1,...,dn]` / `<Letter>(d1,...)` naming the unique
indecomposable with that dimension vector, and on the Kronecker quiver
`R(m,m)@<tag>` regulars where the integer tag names an abstract tube.
Untagged regular atoms receive fresh tags in parse order; `k*atom` repeats
an atom (same tube!), while two untagged `R(1,1) + R(1,1)` atoms land in
two different tubes.  `0` is the zero module.  Tags materialize at a prime
p through a fixed sequence of points of P^1 (tag 0 -> 0, 1 -> 1,
2 -> infinity, k -> k-1 for k >= 3); a prime is admissible for a set of
tags when the materialized points stay pairwise distinct mod p.
"""

import itertools
import re
import zlib
from fractions import Fraction

import numpy as np

from . import rep
from .errors import ComputationError, OutsideCatalog, UnsupportedQuiver
from .rep import Rep

INF = "inf"

# ---------------------------------------------------------------------------
# concrete class labels
#
#   ('root', dims)    Dynkin indecomposable with this dimension vector
#   ('P', n)          Kronecker preprojective, dims (n, n+1)
#   ('I', n)          Kronecker preinjective, dims (n+1, n)
#   ('Rc', lam, m)    Kronecker regular at the concrete point lam (int or INF)
#   ('R', tag, m)     Kronecker regular at an abstract tagged tube (symbols)
#   ('S', i) ('proj', i) ('inj', i)   vertex atoms on general acyclic quivers
# ---------------------------------------------------------------------------

_MODULE_CACHE = {}


def jordan_block(lam, m):
    J = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        J[i, i] = lam
        if i + 1 < m:
            J[i, i + 1] = 1
    return J


def _is_linear_a_n(quiver):
    return quiver.arrows == tuple((i, i + 1) for i in range(quiver.n - 1))


def _stable_seed(*parts):
    return zlib.crc32(repr(parts).encode()) & 0xFFFFFFFF


def _paths_from(quiver, i):
    """All paths starting at i, as tuples of arrow indices, grouped by end."""
    by_end = [[] for _ in range(quiver.n)]
    stack = [(i, ())]
    while stack:
        v, path = stack.pop()
        by_end[v].append(path)
        for a, (s, t) in enumerate(quiver.arrows):
            if s == v:
                stack.append((t, path + (a,)))
    for v in range(quiver.n):
        by_end[v].sort()
    return by_end


def _projective_rep(quiver, i, p):
    """P(i): basis at v = paths i -> v; arrows act by composition."""
    paths = _paths_from(quiver, i)
    index = [{path: k for k, path in enumerate(paths[v])} for v in range(quiver.n)]
    dims = [len(paths[v]) for v in range(quiver.n)]
    mats = []
    for a, (s, t) in enumerate(quiver.arrows):
        m = np.zeros((dims[t], dims[s]), dtype=np.int64)
        for col, path in enumerate(paths[s]):
            m[index[t][path + (a,)], col] = 1
        mats.append(m)
    return Rep(quiver, p, dims, mats)


def _dynkin_indec(quiver, root, p):
    if _is_linear_a_n(quiver):
        # interval module: all coordinates 0/1 and the support contiguous
        mats = []
        for (s, t) in quiver.arrows:
            if root[s] and root[t]:
                mats.append(np.ones((1, 1), dtype=np.int64))
            else:
                mats.append(np.zeros((root[t], root[s]), dtype=np.int64))
        return Rep(quiver, p, root, mats)
    # generic search: a representation of a root dimension vector is the
    # indecomposable iff its endomorphism ring is F_p
    for attempt in range(96):
        rng = np.random.default_rng(_stable_seed("indec", quiver.key, root, p, attempt))
        M = rep.random_rep(quiver, root, p, rng)
        if rep.hom_dim(M, M) == 1:
            return M
    raise ComputationError(
        f"could not construct the indecomposable of dimension {root} over F_{p}"
    )


def module_from_class(quiver, cls, p):
    """The representation named by a concrete class label."""
    key = (quiver.key, cls, p)
    if key in _MODULE_CACHE:
        return _MODULE_CACHE[key]
    kind = cls[0]
    if kind == "root":
        M = _dynkin_indec(quiver, tuple(cls[1]), p)
    elif kind == "P":
        n = cls[1]
        A = np.vstack([np.eye(n, dtype=np.int64), np.zeros((1, n), dtype=np.int64)])
        B = np.vstack([np.zeros((1, n), dtype=np.int64), np.eye(n, dtype=np.int64)])
        M = Rep(quiver, p, (n, n + 1), [A, B])
    elif kind == "I":
        n = cls[1]
        A = np.hstack([np.eye(n, dtype=np.int64), np.zeros((n, 1), dtype=np.int64)])
        B = np.hstack([np.zeros((n, 1), dtype=np.int64), np.eye(n, dtype=np.int64)])
        M = Rep(quiver, p, (n + 1, n), [A, B])
    elif kind == "Rc":
        lam, m = cls[1], cls[2]
        if m == 0:
            M = Rep.zero(quiver, p)
        elif lam == INF:
            M = Rep(quiver, p, (m, m), [jordan_block(0, m), np.eye(m, dtype=np.int64)])
        else:
            M = Rep(
                quiver, p, (m, m), [np.eye(m, dtype=np.int64), jordan_block(int(lam) % p, m)]
            )
    elif kind == "S":
        M = Rep.simple(quiver, p, cls[1])
    elif kind == "proj":
        M = _projective_rep(quiver, cls[1], p)
    elif kind == "inj":
        # I(i) is the dual of the projective at i over the opposite quiver
        opp = quiver.opposite()
        M = rep.opposite_rep(_projective_rep(opp, cls[1], p), opp=quiver)
    else:
        raise ValueError(f"unknown class label {cls!r}")
    _MODULE_CACHE[key] = M
    return M


def class_dims(quiver, cls):
    kind = cls[0]
    if kind == "root":
        return tuple(cls[1])
    if kind == "P":
        return (cls[1], cls[1] + 1)
    if kind == "I":
        return (cls[1] + 1, cls[1])
    if kind in ("Rc", "R"):
        return (cls[2], cls[2])
    if kind == "S":
        return tuple(1 if v == cls[1] else 0 for v in range(quiver.n))
    if kind == "proj":
        return quiver.projective_dim(cls[1])
    if kind == "inj":
        return quiver.injective_dim(cls[1])
    raise ValueError(f"unknown class label {cls!r}")


def _param_key(x):
    return (1, 0) if x == INF else (0, int(x))


def class_sort_key(cls):
    kind = cls[0]
    if kind == "root":
        return (0, sum(cls[1]), tuple(cls[1]))
    if kind == "P":
        return (0, cls[1], ())
    if kind in ("Rc", "R"):
        return (1, _param_key(cls[1]), cls[2])
    if kind == "I":
        return (2, cls[1], ())
    if kind == "S":
        return (0, 0, (cls[1],))
    if kind == "proj":
        return (0, 1, (cls[1],))
    return (0, 2, (cls[1],))


def sort_classes(pairs):
    """Canonical order for a decomposition [(class, mult), ...]."""
    return tuple(sorted(pairs, key=lambda cm: class_sort_key(cm[0])))


def decomposition_dims(quiver, decomp):
    n = quiver.n
    out = [0] * n
    for cls, mult in decomp:
        d = class_dims(quiver, cls)
        for i in range(n):
            out[i] += mult * d[i]
    return tuple(out)


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------


def decompose(M, certify=False):
    """Krull-Schmidt decomposition of M as ((class, mult), ...).

    Raises OutsideCatalog when part of M is not matched by the catalog
    (Kronecker regulars at points with larger residue field) and
    UnsupportedQuiver for quivers with no catalog at all.
    """
    Q = M.quiver
    if M.total_dim() == 0:
        return ()
    if Q.is_dynkin():
        decomp = _decompose_dynkin(M)
    elif Q.is_kronecker():
        decomp = _decompose_kronecker(M)
    else:
        raise UnsupportedQuiver(
            "decomposition is only available for Dynkin and Kronecker quivers"
        )
    if certify:
        parts = []
        for cls, mult in decomp:
            parts.extend([module_from_class(Q, cls, M.p)] * mult)
        if parts:
            again = rep.direct_sum(*parts)
        else:
            again = Rep.zero(Q, M.p)
        if not rep.is_isomorphic(M, again):
            raise ComputationError("decomposition certificate failed")
    return decomp


_DYNKIN_SOLVE_CACHE = {}


def _dynkin_hom_data(Q, p):
    key = (Q.key, p)
    if key in _DYNKIN_SOLVE_CACHE:
        return _DYNKIN_SOLVE_CACHE[key]
    roots = Q.positive_roots()
    reps = [module_from_class(Q, ("root", r), p) for r in roots]
    k = len(roots)
    # A[r][s] = dim Hom(X_s, X_r); the system is A m = v with
    # v[r] = dim Hom(M, X_r) ... note Hom(M, X_r) = sum_s m_s Hom(X_s, X_r)
    A = [
        [Fraction(rep.hom_dim(reps[s], reps[r])) for s in range(k)]
        for r in range(k)
    ]
    _DYNKIN_SOLVE_CACHE[key] = (roots, reps, A)
    return roots, reps, A


def _solve_fractions(A, v):
    """Solve the square exact system A x = v; raises on singular A."""
    n = len(v)
    mat = [row[:] + [v[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if piv is None:
            raise ComputationError("singular classification system")
        mat[col], mat[piv] = mat[piv], mat[col]
        scale = mat[col][col]
        mat[col] = [x / scale for x in mat[col]]
        for r in range(n):
            if r != col and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
    return [mat[i][n] for i in range(n)]


def _decompose_dynkin(M):
    Q, p = M.quiver, M.p
    roots, reps_, A = _dynkin_hom_data(Q, p)
    v = [Fraction(rep.hom_dim(M, X)) for X in reps_]
    m = _solve_fractions(A, v)
    out = []
    for root, mult in zip(roots, m):
        if mult == 0:
            continue
        if mult.denominator != 1 or mult < 0:
            raise ComputationError(f"non-integral multiplicity {mult} for {root}")
        out.append((("root", root), int(mult)))
    decomp = sort_classes(out)
    if decomposition_dims(Q, decomp) != M.dims:
        raise OutsideCatalog("dimension mass not matched by Dynkin catalog")
    return decomp


def _kron_hom(Q, p, cls, M, reverse=False):
    if cls[0] == "Rc" and cls[2] == 0:
        return 0
    X = module_from_class(Q, cls, p)
    return rep.hom_dim(M, X) if reverse else rep.hom_dim(X, M)


def _decompose_kronecker(M):
    Q, p = M.quiver, M.p
    d1, d2 = M.dims
    out = []
    # preprojectives P_n (not injective): almost-split sequence starting at
    # P_n is 0 -> P_n -> P_{n+1}^2 -> P_{n+2} -> 0
    for n in range(0, d1 + 1):
        if n + 1 > d2:
            break
        mult = (
            _kron_hom(Q, p, ("P", n), M)
            - 2 * _kron_hom(Q, p, ("P", n + 1), M)
            + _kron_hom(Q, p, ("P", n + 2), M)
        )
        if mult:
            out.append((("P", n), mult))
    # preinjectives I_n (not projective): sequence ending at I_n is
    # 0 -> I_{n+2} -> I_{n+1}^2 -> I_n -> 0
    for n in range(0, d2 + 1):
        if n + 1 > d1:
            break
        mult = (
            _kron_hom(Q, p, ("I", n), M, reverse=True)
            - 2 * _kron_hom(Q, p, ("I", n + 1), M, reverse=True)
            + _kron_hom(Q, p, ("I", n + 2), M, reverse=True)
        )
        if mult:
            out.append((("I", n), mult))
    # regulars: homogeneous tubes, sequence 0 -> R_m -> R_{m-1}+R_{m+1} -> R_m -> 0
    remaining = np.array(M.dims) - np.array(decomposition_dims(Q, out))
    if remaining.any():
        for lam in list(range(p)) + [INF]:
            if _kron_hom(Q, p, ("Rc", lam, 1), M) == 0:
                continue
            for m in range(1, min(d1, d2) + 1):
                mult = (
                    2 * _kron_hom(Q, p, ("Rc", lam, m), M)
                    - _kron_hom(Q, p, ("Rc", lam, m - 1), M)
                    - _kron_hom(Q, p, ("Rc", lam, m + 1), M)
                )
                if mult:
                    out.append((("Rc", lam, m), mult))
    for cls, mult in out:
        if mult < 0:
            raise ComputationError(f"negative multiplicity {mult} for {cls}")
    decomp = sort_classes(out)
    if decomposition_dims(Q, decomp) != M.dims:
        raise OutsideCatalog(
            "part of the module lives in a tube at a point of P^1 with "
            "residue field larger than F_p"
        )
    return decomp


def aut_count(M, decomp=None):
    """|Aut M| via the Krull-Schmidt decomposition."""
    if decomp is None:
        decomp = decompose(M)
    return rep.aut_count_from_mults(M, [mult for _, mult in decomp])


def module_from_classes(quiver, classes, p):
    """Direct sum of catalog modules for a decomposition ((cls, mult), ...)."""
    parts = []
    for cls, mult in classes:
        parts.extend([module_from_class(quiver, cls, p)] * mult)
    if not parts:
        return Rep.zero(quiver, p)
    return rep.direct_sum(*parts)


_AUT_CACHE = {}


def aut_count_of_classes(quiver, classes, p):
    """|Aut| of the module with the given decomposition, cached."""
    classes = sort_classes(classes)
    key = (quiver.key, classes, p)
    if key not in _AUT_CACHE:
        M = module_from_classes(quiver, classes, p)
        _AUT_CACHE[key] = rep.aut_count_from_mults(M, [m for _, m in classes])
    return _AUT_CACHE[key]


# ---------------------------------------------------------------------------
# Auslander-Reiten translation on labels
# ---------------------------------------------------------------------------


def translate_class(quiver, cls):
    """tau of an indecomposable class; None when the class is projective."""
    kind = cls[0]
    if kind == "root":
        d = tuple(cls[1])
        if any(d == quiver.projective_dim(i) for i in range(quiver.n)):
            return None
        out = quiver.coxeter(d)
        return ("root", out)
    if kind == "P":
        return ("P", cls[1] - 2) if cls[1] >= 2 else None
    if kind == "I":
        return ("I", cls[1] + 2)
    if kind in ("Rc", "R"):
        return cls
    raise ValueError(f"tau undefined for {cls!r}")


def translate_class_inverse(quiver, cls):
    """tau^{-1} of an indecomposable class; None when injective."""
    kind = cls[0]
    if kind == "root":
        d = tuple(cls[1])
        if any(d == quiver.injective_dim(i) for i in range(quiver.n)):
            return None
        return ("root", quiver.coxeter_inverse(d))
    if kind == "I":
        return ("I", cls[1] - 2) if cls[1] >= 2 else None
    if kind == "P":
        return ("P", cls[1] + 2)
    if kind in ("Rc", "R"):
        return cls
    raise ValueError(f"tau^{{-1}} undefined for {cls!r}")


def projective_vertex_of_class(quiver, cls):
    """Vertex i with class = P(i), else None."""
    kind = cls[0]
    if kind == "root":
        for i in range(quiver.n):
            if tuple(cls[1]) == quiver.projective_dim(i):
                return i
        return None
    if kind == "P":
        if cls[1] == 0:
            return 1
        if cls[1] == 1:
            return 0
        return None
    if kind == "proj":
        return cls[1]
    if kind == "S":
        return cls[1] if not any(s == cls[1] for (s, t) in quiver.arrows) else None
    return None


def injective_vertex_of_class(quiver, cls):
    """Vertex i with class = I(i), else None."""
    kind = cls[0]
    if kind == "root":
        for i in range(quiver.n):
            if tuple(cls[1]) == quiver.injective_dim(i):
                return i
        return None
    if kind == "I":
        if cls[1] == 0:
            return 0
        if cls[1] == 1:
            return 1
        return None
    if kind == "inj":
        return cls[1]
    if kind == "S":
        return cls[1] if not any(t == cls[1] for (s, t) in quiver.arrows) else None
    return None


# ---------------------------------------------------------------------------
# fingerprints: iso-class data up to renaming tubes
# ---------------------------------------------------------------------------


def fingerprint_of_classes(pairs):
    """Canonical form of a decomposition up to renaming the tube points.

    Works for both abstract ('R', tag, m) and concrete ('Rc', lam, m)
    regular labels, so symbols and per-prime decompositions can be compared
    directly.
    """
    rigid = []
    tubes = {}
    for cls, mult in pairs:
        if cls[0] in ("R", "Rc"):
            tubes.setdefault(cls[1], []).append((cls[2], mult))
        else:
            rigid.append((cls, mult))
    rigid.sort(key=lambda cm: class_sort_key(cm[0]))
    groups = sorted(tuple(sorted(g)) for g in tubes.values())
    return (tuple(rigid), tuple(groups))


# ---------------------------------------------------------------------------
# abstract tube tags
# ---------------------------------------------------------------------------


def lam_of_tag(tag, p):
    """Materialize an abstract tube tag as a point of P^1(F_p)."""
    tag = int(tag)
    if tag == 0:
        return 0
    if tag == 1:
        return 1 % p
    if tag == 2:
        return INF
    return (tag - 1) % p


def _finite_tag_values(tags):
    vals = []
    for tag in tags:
        tag = int(tag)
        if tag == 2:
            continue
        vals.append(tag - 1 if tag >= 3 else tag)
    return vals


def prime_admissible_for_tags(tags, p):
    """True when the tags materialize to pairwise distinct points mod p."""
    vals = _finite_tag_values(tags)
    return len(set(v % p for v in vals)) == len(vals)


def min_prime_for_tags(tags):
    p = 2
    while not prime_admissible_for_tags(tags, p):
        p = next_prime(p)
    return p


def next_prime(p):
    q = p + 1
    while True:
        if all(q % d for d in range(2, int(q**0.5) + 1)):
            return q
        q += 1


def primes_from(p, count):
    """`count` consecutive primes starting at the smallest prime >= p."""
    out = []
    q = p if p >= 2 else 2
    while not all(q % d for d in range(2, int(q**0.5) + 1)):
        q += 1
    while len(out) < count:
        out.append(q)
        q = next_prime(q)
    return out


# ---------------------------------------------------------------------------
# module symbols
# ---------------------------------------------------------------------------

_ATOM_VERTEX = re.compile(r"^([A-Z])(\d+)$")
_ATOM_DIMS = re.compile(r"^([A-Z])[\[\(]([\d,\s]+)[\]\)](?:@(\d+))?$")


class ModuleSymbol:
    """A formal direct sum of catalog atoms over a fixed quiver."""

    def __init__(self, quiver, atoms):
        self.quiver = quiver
        merged = {}
        for atom, mult in atoms:
            if mult < 0:
                raise ValueError("negative multiplicity")
            if mult == 0:
                continue
            merged[atom] = merged.get(atom, 0) + mult
        self.atoms = tuple(
            sorted(merged.items(), key=lambda am: class_sort_key(am[0]))
        )

    # -- data ----------------------------------------------------------------

    @property
    def dims(self):
        return decomposition_dims(self.quiver, self.atoms)

    def total_dim(self):
        return sum(self.dims)

    def is_zero(self):
        return not self.atoms

    def mults(self):
        return tuple(m for _, m in self.atoms)

    def tags(self):
        return sorted({a[1] for a, _ in self.atoms if a[0] == "R"})

    def indec_count(self):
        return sum(m for _, m in self.atoms)

    def fingerprint(self):
        return fingerprint_of_classes(self.atoms)

    @property
    def key(self):
        return (self.quiver.key, self.atoms)

    def __eq__(self, other):
        return isinstance(other, ModuleSymbol) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    # -- materialization -------------------------------------------------------

    def admissible_prime(self, p):
        return prime_admissible_for_tags(self.tags(), p)

    def min_prime(self):
        return min_prime_for_tags(self.tags())

    def concrete_classes(self, p):
        """The per-prime decomposition this symbol materializes to."""
        if not self.admissible_prime(p):
            raise ValueError(
                f"prime {p} too small: tube tags {self.tags()} collide mod {p}"
            )
        out = []
        for atom, mult in self.atoms:
            if atom[0] == "R":
                out.append((("Rc", lam_of_tag(atom[1], p), atom[2]), mult))
            else:
                out.append((atom, mult))
        return sort_classes(out)

    def instantiate(self, p):
        """A representation over F_p in this symbol's isomorphism class."""
        parts = []
        for cls, mult in self.concrete_classes(p):
            parts.extend([module_from_class(self.quiver, cls, p)] * mult)
        if not parts:
            return Rep.zero(self.quiver, p)
        return rep.direct_sum(*parts)

    def direct_sum(self, *others):
        atoms = list(self.atoms)
        for o in others:
            if o.quiver.key != self.quiver.key:
                raise ValueError("symbols over different quivers")
            atoms.extend(o.atoms)
        return ModuleSymbol(self.quiver, atoms)

    # -- printing --------------------------------------------------------------

    def __str__(self):
        if not self.atoms:
            return "0"
        parts = []
        for atom, mult in self.atoms:
            text = _atom_str(self.quiver, atom)
            parts.append(f"{mult}*{text}" if mult > 1 else text)
        return "+".join(parts)

    def __repr__(self):
        return f"ModuleSymbol({self})"


def _atom_str(quiver, atom):
    kind = atom[0]
    if kind == "root":
        return "M[" + ",".join(str(x) for x in atom[1]) + "]"
    if kind == "P":
        return f"P[{atom[1]},{atom[1] + 1}]"
    if kind == "I":
        return f"I[{atom[1] + 1},{atom[1]}]"
    if kind == "R":
        return f"R({atom[2]},{atom[2]})@{atom[1]}"
    if kind == "Rc":
        return f"R({atom[2]},{atom[2]})@lam={atom[1]}"
    if kind == "S":
        return f"S{atom[1] + 1}"
    if kind == "proj":
        return f"P{atom[1] + 1}"
    if kind == "inj":
        return f"I{atom[1] + 1}"
    raise ValueError(f"unprintable atom {atom!r}")


def _atom_from_dims(quiver, dims, tag, fresh_tag):
    """Classify a dimension vector as a single indecomposable atom."""
    if quiver.is_kronecker():
        d1, d2 = dims
        if d2 == d1 + 1:
            atom = ("P", d1)
        elif d1 == d2 + 1:
            atom = ("I", d2)
        elif d1 == d2 and d1 > 0:
            return ("R", tag if tag is not None else fresh_tag(), d1)
        else:
            raise ValueError(f"no indecomposable of dimension {dims}")
        if tag is not None:
            raise ValueError("@tag is only meaningful for regular modules")
        return atom
    if tag is not None:
        raise ValueError("@tag is only meaningful on the Kronecker quiver")
    if quiver.is_dynkin():
        if quiver.tits_form(dims) != 1 or not any(dims):
            raise ValueError(f"{dims} is not a root: no such indecomposable")
        return ("root", tuple(dims))
    raise UnsupportedQuiver(
        "dimension-vector atoms need a Dynkin or Kronecker quiver"
    )


def _vertex_atom(quiver, letter, i, fresh_tag):
    if not (1 <= i <= quiver.n):
        raise ValueError(f"vertex index {i} out of range")
    v = i - 1
    if letter == "S":
        dims = tuple(1 if u == v else 0 for u in range(quiver.n))
    elif letter == "P":
        dims = quiver.projective_dim(v)
    elif letter == "I":
        dims = quiver.injective_dim(v)
    else:
        raise ValueError(f"unknown vertex atom {letter}{i}")
    if quiver.is_dynkin() or quiver.is_kronecker():
        return _atom_from_dims(quiver, dims, None, fresh_tag)
    return {"S": ("S", v), "P": ("proj", v), "I": ("inj", v)}[letter]


def parse_symbol(text, quiver):
    """Parse the module-symbol grammar (see module docstring)."""
    text = text.strip()
    if not text:
        raise ValueError("empty module symbol")
    used_tags = set()
    counter = itertools.count()

    def fresh_tag():
        for t in counter:
            if t not in used_tags:
                used_tags.add(t)
                return t

    # collect explicit tags first so fresh ones never collide
    for m in re.finditer(r"@(\d+)", text):
        used_tags.add(int(m.group(1)))
    atoms = []
    for term in text.split("+"):
        term = term.strip().replace(" ", "")
        if not term:
            raise ValueError("empty summand in module symbol")
        mult = 1
        if "*" in term:
            head, term = term.split("*", 1)
            mult = int(head)
        if term == "0":
            continue
        m = _ATOM_VERTEX.match(term)
        if m:
            atoms.append((_vertex_atom(quiver, m.group(1), int(m.group(2)), fresh_tag), mult))
            continue
        m = _ATOM_DIMS.match(term)
        if m:
            dims = tuple(int(x) for x in m.group(2).replace(" ", "").split(","))
            if len(dims) != quiver.n:
                raise ValueError(
                    f"dimension vector {dims} has wrong length for this quiver"
                )
            tag = int(m.group(3)) if m.group(3) is not None else None
            atoms.append((_atom_from_dims(quiver, dims, tag, fresh_tag), mult))
            continue
        raise ValueError(f"cannot parse module atom {term!r}")
    return ModuleSymbol(quiver, atoms)


def symbol_from_classes(quiver, pairs):
    """Wrap a decomposition whose labels are already abstract atoms."""
    return ModuleSymbol(quiver, pairs)


def abstract_symbol_from_classes(quiver, pairs):
    """Build a ModuleSymbol from a decomposition that may carry concrete labels.

    Concrete regular classes ('Rc', lam, m) arise as census keys at a fixed
    prime; to re-enter the prime-independent world each distinct parameter
    lam is renamed to a fresh abstract tube tag ('R', tag, m).  Distinct lams
    get distinct tags, so the fingerprint of the result equals the
    fingerprint of the input.  Abstract labels pass through unchanged and
    fresh tags are chosen above any tag already present.
    """
    pairs = list(pairs)
    used = {cls[1] for cls, _ in pairs if cls[0] == "R"}
    lams = sorted(
        {cls[1] for cls, _ in pairs if cls[0] == "Rc"}, key=_param_key
    )
    tag_of = {}
    nxt = 0
    for lam in lams:
        while nxt in used:
            nxt += 1
        tag_of[lam] = nxt
        used.add(nxt)
        nxt += 1
    out = []
    for cls, mult in pairs:
        if cls[0] == "Rc":
            cls = ("R", tag_of[cls[1]], cls[2])
        out.append((cls, mult))
    return ModuleSymbol(quiver, out)


def min_prime_for_symbols(symbols):
    tags = set()
    for s in symbols:
        tags.update(s.tags())
    return min_prime_for_tags(tags)


def simple_projective_vertices(quiver):
    """Vertices whose projective is simple (the sinks)."""
    return quiver.sinks()
