"""Acyclic quivers and the bilinear forms attached to them.

A quiver is a finite directed multigraph.  Vertices are 0-based integers
internally (the text file format below is 1-based).  For an acyclic quiver
the path algebra is finite dimensional and hereditary, and all homological
data used in this package is determined by the arrow-count matrix

    A[i][j] = number of arrows i -> j.

The Euler form of two dimension vectors is

    <d, e> = sum_i d_i e_i - sum_{arrows a} d_{s(a)} e_{t(a)} = d (I - A) e^T

and equals dim Hom(M, N) - dim Ext^1(M, N) for any representations M, N
with dim M = d, dim N = e.  The Coxeter matrix

    Phi = -E E^{-T},   E = I - A,

acts on row vectors from the right; for a non-projective indecomposable M
the Auslander-Reiten translate satisfies dim(tau M) = (dim M) Phi.

Quiver file format (parse_quiver):

    # comment lines start with '#'
    vertices 3
    arrow a 1 2
    arrow b 2 3

i.e. one `vertices <n>` line, then `arrow <id> <src> <dst>` lines with
1-based vertex numbers.
"""

import itertools
from fractions import Fraction

import numpy as np


class Quiver:
    """A finite acyclic quiver with named arrows.

    Attributes
    ----------
    n : number of vertices (0-based ids 0..n-1 internally)
    arrows : list of (source, target) pairs, 0-based
    arrow_names : list of arrow id strings, parallel to `arrows`
    """

    def __init__(self, n, arrows, arrow_names=None, name=None):
        self.n = int(n)
        self.arrows = tuple((int(s), int(t)) for (s, t) in arrows)
        if arrow_names is None:
            arrow_names = [f"a{k}" for k in range(len(self.arrows))]
        self.arrow_names = tuple(arrow_names)
        self.name = name
        if self.n <= 0:
            raise ValueError("quiver needs at least one vertex")
        for (s, t) in self.arrows:
            if not (0 <= s < self.n and 0 <= t < self.n):
                raise ValueError(f"arrow endpoint out of range: {(s, t)}")
            if s == t:
                raise ValueError("loops are not allowed (quiver must be acyclic)")
        if len(set(self.arrow_names)) != len(self.arrow_names):
            raise ValueError("duplicate arrow ids")
        self._topo = self._toposort()
        # arrow-count matrix A[i][j] = #arrows i -> j
        A = np.zeros((self.n, self.n), dtype=np.int64)
        for (s, t) in self.arrows:
            A[s, t] += 1
        self.arrow_matrix = A
        self.euler_matrix = np.eye(self.n, dtype=np.int64) - A
        self.coxeter_matrix = self._coxeter()
        # key: hashable identity used for caching
        self.key = (self.n, self.arrows)

    def topological_order(self):
        """Vertex order with all arrows pointing forward."""
        return list(self._topo)

    # -- construction helpers -------------------------------------------

    def _toposort(self):
        """Kahn's algorithm; raises ValueError on a directed cycle."""
        indeg = [0] * self.n
        out = [[] for _ in range(self.n)]
        for (s, t) in self.arrows:
            indeg[t] += 1
            out[s].append(t)
        queue = [v for v in range(self.n) if indeg[v] == 0]
        order = []
        while queue:
            v = min(queue)  # deterministic
            queue.remove(v)
            order.append(v)
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        if len(order) != self.n:
            raise ValueError("quiver has a directed cycle")
        return order

    def _coxeter(self):
        """Phi = -E E^{-T} as an exact integer matrix.

        E = I - A is unimodular (triangular with unit diagonal in any
        topological order), so the inverse is integral.
        """
        n = self.n
        E = [[Fraction(int(self.euler_matrix[i, j])) for j in range(n)] for i in range(n)]
        # invert E by Gauss-Jordan over Q
        inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
        mat = [row[:] for row in E]
        for col in range(n):
            piv = next(r for r in range(col, n) if mat[r][col] != 0)
            mat[col], mat[piv] = mat[piv], mat[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            scale = mat[col][col]
            mat[col] = [x / scale for x in mat[col]]
            inv[col] = [x / scale for x in inv[col]]
            for r in range(n):
                if r != col and mat[r][col] != 0:
                    factor = mat[r][col]
                    mat[r] = [x - factor * y for x, y in zip(mat[r], mat[col])]
                    inv[r] = [x - factor * y for x, y in zip(inv[r], inv[col])]
        # Phi = -E * (E^{-1})^T
        phi = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                val = -sum(E[i][k] * inv[j][k] for k in range(n))
                assert val.denominator == 1
                phi[i, j] = int(val)
        return phi

    # -- forms and dimension-vector arithmetic ---------------------------

    def euler_form(self, d, e):
        """<d, e> = dim Hom - dim Ext^1 on dimension vectors."""
        d = np.asarray(d, dtype=np.int64)
        e = np.asarray(e, dtype=np.int64)
        return int(d @ self.euler_matrix @ e)

    def tits_form(self, d):
        """q(d) = <d, d>, the quadratic (Tits) form."""
        return self.euler_form(d, d)

    @property
    def r_matrix(self):
        """R with r_ij = dim Ext^1(S_i, S_j) = #arrows i -> j."""
        return self.arrow_matrix

    @property
    def r_matrix_t(self):
        """R' = R^T, i.e. r'_ij = dim Ext^1(S_j, S_i)."""
        return self.arrow_matrix.T

    def coxeter(self, d):
        """Row-vector right action d |-> d Phi (dimension vector of tau M)."""
        return tuple(int(x) for x in np.asarray(d, dtype=np.int64) @ self.coxeter_matrix)

    def coxeter_inverse(self, d):
        """d |-> d Phi^{-1} (dimension vector of tau^{-1} M)."""
        n = self.n
        phi = [[Fraction(int(self.coxeter_matrix[i, j])) for j in range(n)] for i in range(n)]
        # solve x Phi = d  <=>  Phi^T x^T = d^T
        aug = [[phi[j][i] for j in range(n)] + [Fraction(int(d[i]))] for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if aug[r][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            scale = aug[col][col]
            aug[col] = [x / scale for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        out = []
        for i in range(n):
            assert aug[i][n].denominator == 1
            out.append(int(aug[i][n]))
        return tuple(out)

    # -- projectives / injectives ----------------------------------------

    def path_counts(self):
        """C[i][j] = number of paths i -> j (trivial paths included)."""
        n = self.n
        C = np.eye(n, dtype=np.int64)
        # accumulate powers of the arrow matrix; nilpotent since acyclic
        P = np.eye(n, dtype=np.int64)
        for _ in range(n):
            P = P @ self.arrow_matrix
            if not P.any():
                break
            C = C + P
        return C

    def projective_dim(self, i):
        """Dimension vector of the projective P(i): paths starting at i."""
        return tuple(int(x) for x in self.path_counts()[i])

    def injective_dim(self, i):
        """Dimension vector of the injective I(i): paths ending at i."""
        return tuple(int(x) for x in self.path_counts()[:, i])

    def sinks(self):
        return [v for v in range(self.n) if all(s != v for (s, t) in self.arrows)]

    def sources(self):
        return [v for v in range(self.n) if all(t != v for (s, t) in self.arrows)]

    # -- shape tests -------------------------------------------------------

    def is_tree(self):
        """True when the underlying undirected graph is a tree."""
        if len(self.arrows) != self.n - 1:
            return False
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (s, t) in self.arrows:
            rs, rt = find(s), find(t)
            if rs == rt:
                return False
            parent[rs] = rt
        return True

    def is_dynkin(self):
        """Tree underlying graph with positive definite Tits form."""
        if not self.is_tree():
            return False
        # positive definite <=> q(d) > 0 for all nonzero d; check leading
        # principal minors of the symmetrized Gram matrix (2q).
        n = self.n
        sym = self.euler_matrix + self.euler_matrix.T
        g = [[Fraction(int(sym[i, j])) for j in range(n)] for i in range(n)]
        for k in range(1, n + 1):
            minor = _det([row[:k] for row in g[:k]])
            if minor <= 0:
                return False
        return True

    def is_kronecker(self):
        return (
            self.n == 2
            and len(self.arrows) == 2
            and self.arrows[0] == self.arrows[1]
        )

    def positive_roots(self):
        """All nonzero d >= 0 with q(d) = 1, for a Dynkin quiver.

        These are exactly the dimension vectors of the indecomposable
        representations.  Coordinates of roots of the A/D/E diagrams are
        bounded by 6, so a box search is exhaustive.
        """
        if not self.is_dynkin():
            raise ValueError("positive roots are only enumerated for Dynkin quivers")
        roots = []
        for d in itertools.product(range(7), repeat=self.n):
            if any(d) and self.tits_form(d) == 1:
                roots.append(tuple(d))
        roots.sort(key=lambda v: (sum(v), v))
        return roots

    def opposite(self):
        """The quiver with all arrows reversed."""
        return Quiver(
            self.n,
            [(t, s) for (s, t) in self.arrows],
            arrow_names=self.arrow_names,
            name=None if self.name is None else self.name + "_op",
        )

    def __repr__(self):
        arrows = ", ".join(
            f"{name}:{s + 1}->{t + 1}"
            for name, (s, t) in zip(self.arrow_names, self.arrows)
        )
        return f"Quiver({self.n} vertices; {arrows})"


def _det(rows):
    """Exact determinant of a small matrix of Fractions."""
    n = len(rows)
    mat = [row[:] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for r in range(col + 1, n):
            if mat[r][col]:
                f = mat[r][col] * inv
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
    return det


# -- presets and parsing ----------------------------------------------------


def kronecker_quiver():
    """Two vertices, two parallel arrows 1 -> 2."""
    return Quiver(2, [(0, 1), (0, 1)], arrow_names=["a", "b"], name="kronecker")


def linear_quiver(n):
    """Equioriented type A_n: 1 -> 2 -> ... -> n."""
    return Quiver(
        n,
        [(i, i + 1) for i in range(n - 1)],
        arrow_names=[f"a{i + 1}" for i in range(n - 1)],
        name=f"A{n}",
    )


_PRESETS = {
    "kronecker": kronecker_quiver,
    "a2": lambda: linear_quiver(2),
    "a3": lambda: linear_quiver(3),
    "a4": lambda: linear_quiver(4),
}


def quiver_by_name(name):
    try:
        return _PRESETS[name.lower()]()
    except KeyError:
        raise ValueError(
            f"unknown quiver preset {name!r}; available: {sorted(_PRESETS)}"
        ) from None


def parse_quiver(text, name=None):
    """Parse the quiver text format (see module docstring)."""
    n = None
    arrows = []
    names = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertices":
            if n is not None:
                raise ValueError(f"line {lineno}: duplicate 'vertices' line")
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'vertices <n>'")
            n = int(parts[1])
        elif parts[0] == "arrow":
            if len(parts) != 4:
                raise ValueError(f"line {lineno}: expected 'arrow <id> <src> <dst>'")
            if n is None:
                raise ValueError(f"line {lineno}: 'vertices' must come first")
            src, dst = int(parts[2]), int(parts[3])
            if not (1 <= src <= n and 1 <= dst <= n):
                raise ValueError(f"line {lineno}: vertex out of range (1-based)")
            names.append(parts[1])
            arrows.append((src - 1, dst - 1))
        else:
            raise ValueError(f"line {lineno}: unknown directive {parts[0]!r}")
    if n is None:
        raise ValueError("missing 'vertices' line")
    return Quiver(n, arrows, arrow_names=names, name=name)


def load_quiver(spec):
    """Load a quiver from a preset name or a file path."""
    import os

    if os.path.exists(spec):
        with open(spec) as fh:
            return parse_quiver(fh.read(), name=os.path.basename(spec))
    return quiver_by_name(spec)
