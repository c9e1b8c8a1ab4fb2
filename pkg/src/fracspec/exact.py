"""Exact integer/rational linear algebra on small matrices.

Matrices are tuples of row tuples; vectors are tuples. Entries are ``int`` or
``fractions.Fraction``. Dimensions here are tiny (d <= 3 in practice), so
plain Python beats any clever representation.
"""
from fractions import Fraction
from math import lcm

import numpy as np


def as_fraction_vector(x):
    return tuple(Fraction(c) for c in x)


def as_point(p, dim=None):
    """Exact point: accepts a scalar (d = 1) or a sequence of coordinates."""
    if isinstance(p, (int, Fraction, str)) or hasattr(p, "__index__"):
        p = (p,)
    pt = tuple(Fraction(c) for c in p)
    if dim is not None and len(pt) != dim:
        raise ValueError(f"point {p} does not have dimension {dim}")
    return pt


def mat_vec(M, x):
    return tuple(sum(a * b for a, b in zip(row, x)) for row in M)


def mat_mul(A, B):
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def transpose(M):
    return tuple(zip(*M))


def identity(d):
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def mat_pow(M, n):
    out = identity(len(M))
    for _ in range(n):
        out = mat_mul(M, out)
    return out


def dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def inverse(M):
    """Gauss-Jordan inverse over the rationals. Raises ZeroDivisionError if singular."""
    d = len(M)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(d)]
           for i, row in enumerate(M)]
    for c in range(d):
        piv = next((r for r in range(c, d) if aug[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [v / p for v in aug[c]]
        for r in range(d):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return tuple(tuple(row[d:]) for row in aug)


def det(M):
    d = len(M)
    A = [[Fraction(v) for v in row] for row in M]
    out = Fraction(1)
    for c in range(d):
        piv = next((r for r in range(c, d) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            out = -out
        out *= A[c][c]
        for r in range(c + 1, d):
            f = A[r][c] / A[c][c]
            A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return out


def common_denominator(values):
    out = 1
    for v in values:
        out = lcm(out, Fraction(v).denominator)
    return out


def scale_to_integers(points):
    """Write rational points as ``(D, ints)`` with ``point = ints / D``."""
    pts = [tuple(Fraction(c) for c in p) for p in points]
    D = common_denominator(c for p in pts for c in p)
    return D, [tuple(int(c * D) for c in p) for p in pts]


def hermite_rows(rows):
    """Row-style Hermite normal form of an integer matrix.

    Returns the nonzero rows of the HNF: upper echelon, positive pivots,
    entries above each pivot reduced into ``[0, pivot)``. The rows generate
    the same Z-module as the input rows.
    """
    A = [list(map(int, r)) for r in rows]
    if not A:
        return []
    ncols = len(A[0])
    out = []
    r0 = 0
    for c in range(ncols):
        # Euclid on column c among rows r0..end
        while True:
            nz = [r for r in range(r0, len(A)) if A[r][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda r: abs(A[r][c]))
            A[r0], A[piv] = A[piv], A[r0]
            done = True
            for r in range(r0 + 1, len(A)):
                if A[r][c]:
                    q = A[r][c] // A[r0][c]
                    A[r] = [a - q * b for a, b in zip(A[r], A[r0])]
                    if A[r][c]:
                        done = False
            if done:
                break
        if r0 < len(A) and A[r0][c] != 0:
            if A[r0][c] < 0:
                A[r0] = [-a for a in A[r0]]
            for r in range(r0):
                q = A[r][c] // A[r0][c]
                A[r] = [a - q * b for a, b in zip(A[r], A[r0])]
            r0 += 1
    out = [tuple(r) for r in A[:r0]]
    return out


class Lattice:
    """Full-rank lattice in Q^d given by an exact basis (columns generate it).

    The basis is stored in a canonical (Hermite) form, so two ``Lattice``
    objects compare equal exactly when they are the same set.
    """

    def __init__(self, basis_columns):
        cols = [tuple(Fraction(c) for c in col) for col in basis_columns]
        d = len(cols)
        if d == 0 or any(len(c) != d for c in cols):
            raise ValueError("lattice basis must be d vectors in Q^d")
        D = common_denominator(c for col in cols for c in col)
        rows = hermite_rows([tuple(int(c * D) for c in col) for col in cols])
        if len(rows) != d:
            raise ValueError("lattice basis is singular")
        self.dim = d
        self.denominator = D
        self._rows = tuple(tuple(Fraction(v, D) for v in r) for r in rows)
        # columns of the basis matrix are the canonical generators
        self.basis = transpose(self._rows)
        self._inv = inverse(self.basis)

    @property
    def generators(self):
        return self._rows

    def coordinates(self, x):
        return mat_vec(self._inv, as_fraction_vector(x))

    def __contains__(self, x):
        return all(c.denominator == 1 for c in self.coordinates(x))

    def contains_integers(self):
        return all(tuple(int(i == j) for j in range(self.dim)) in self for i in range(self.dim))

    def is_invariant(self, M):
        """True if ``M`` maps the lattice into itself."""
        return all(mat_vec(M, g) in self for g in self._rows)

    def points_in_box(self, lo, hi):
        """All lattice points in the closed box ``[lo, hi]``, sorted.

        ``lo``/``hi`` may be floats; the caller inflates them as needed.
        """
        B = np.array([[float(v) for v in row] for row in self.basis])
        Binv = np.linalg.inv(B)
        corners = np.array(np.meshgrid(*[[lo[i], hi[i]] for i in range(self.dim)],
                                       indexing="ij")).reshape(self.dim, -1)
        coeff = Binv @ corners
        cmin = np.floor(coeff.min(axis=1)).astype(int) - 1
        cmax = np.ceil(coeff.max(axis=1)).astype(int) + 1
        out = []
        ranges = [range(a, b + 1) for a, b in zip(cmin, cmax)]
        for c in np.array(np.meshgrid(*ranges, indexing="ij")).reshape(self.dim, -1).T:
            x = mat_vec(self.basis, tuple(int(v) for v in c))
            if all(lo[i] <= x[i] <= hi[i] for i in range(self.dim)):
                out.append(x)
        return sorted(set(out))

    def __eq__(self, other):
        return isinstance(other, Lattice) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        gens = ", ".join("(" + ", ".join(str(v) for v in r) + ")" for r in self._rows)
        return f"Lattice(dim={self.dim}, generators=[{gens}])"


def integer_span_basis(vectors, dim):
    """Basis rows (HNF) of the Z-span of integer ``vectors``; ``None`` if not full rank."""
    rows = hermite_rows([tuple(v) for v in vectors if any(v)])
    if len(rows) != dim:
        return None
    return rows

