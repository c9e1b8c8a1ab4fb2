"""Dual-side set dynamics: the S operator, membership in S^n(Pi(B)), extreme cycles.

Every set here is a finite sorted tuple of exact points (tuples of
``Fraction``); nothing in this module touches floating point except the
``|m_B| = 1`` test on lattice points and the radius filter.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx
import numpy as np

from . import exact
from .errors import AmbiguousDigit, NoCycles
from .exact import Lattice, as_point
from .hadamard import HadamardPair, dual_lattice
from .ifs import _as_digits, _as_matrix, box_for_maps, mask_mB

EXTREME_TOL = 1e-12
BOX_INFLATION = 1e-9


class Provenance(enum.Enum):
    FROM_CYCLES = "from-cycles"
    S_ITERATE = "s-iterate"
    INTERSECTION = "intersection"
    EXPLICIT = "explicit"
    GAMMA_N = "gamma-n"


@dataclass(frozen=True)
class SpectrumSet:
    """Sorted, duplicate-free finite set of exact frequency points."""

    points: tuple
    provenance: Provenance = Provenance.EXPLICIT
    depth: int | None = None
    truncation_note: str = ""

    def __post_init__(self):
        pts = tuple(sorted({as_point(p) for p in self.points}))
        if pts and len({len(p) for p in pts}) != 1:
            raise ValueError("points of mixed dimension")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, points, **kw):
        return cls(tuple(points), **kw)

    @property
    def dim(self):
        return len(self.points[0]) if self.points else None

    @property
    def label(self):
        if self.depth is None:
            return self.provenance.value
        return f"{self.provenance.value}({self.depth})"

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __contains__(self, x):
        return as_point(x) in set(self.points)

    def scalars(self):
        """Points as plain Fractions (d = 1 only)."""
        if self.points and len(self.points[0]) != 1:
            raise ValueError("scalars() needs a one-dimensional set")
        return [p[0] for p in self.points]


def _spectrum(points, like=None, **kw):
    if like is not None and not kw:
        kw = dict(provenance=like.provenance, depth=like.depth, truncation_note=like.truncation_note)
    return SpectrumSet(tuple(points), **kw)


def s_apply(R, L, spectrum) -> SpectrumSet:
    """``S(Lambda) = union_l (R^T Lambda + l)``."""
    R = _as_matrix(R)
    RT = exact.transpose(R)
    L = _as_digits(L, len(R))
    pts = spectrum.points if isinstance(spectrum, SpectrumSet) else [as_point(p) for p in spectrum]
    out = set()
    for lam in pts:
        y = exact.mat_vec(RT, lam)
        for l in L:
            out.add(tuple(Fraction(a + b) for a, b in zip(y, l)))
    like = spectrum if isinstance(spectrum, SpectrumSet) else None
    return _spectrum(out, like)


def s_iterate(R, L, spectrum, n: int) -> SpectrumSet:
    """``S^n(Lambda)``; starting from ``{0}`` this is the orbit of 0 under length-n words."""
    cur = spectrum if isinstance(spectrum, SpectrumSet) else SpectrumSet.of(spectrum)
    for _ in range(n):
        cur = s_apply(R, L, cur)
    return SpectrumSet(cur.points, Provenance.S_ITERATE, n)


def s_chain_membership(x, pair: HadamardPair, lattice: Lattice, n: int) -> bool:
    """Decide ``x in S^n(lattice)`` exactly.

    When ``R^T`` maps the lattice into itself (always the case for d = 1) every
    intermediate point must lie in the lattice, and for a Hadamard pair at most
    one digit can be peeled at each step; a second candidate raises
    ``AmbiguousDigit``. Otherwise intermediate points need not be lattice
    points, and all ``N^n`` digit words are searched.
    """
    RTinv = pair.ifs.RTinv
    y = as_point(x, pair.ifs.dim)
    if not lattice.is_invariant(pair.ifs.RT):
        return _membership_exhaustive(y, pair.L, RTinv, lattice, n)
    for _ in range(n):
        hits = []
        for l in pair.L:
            z = exact.mat_vec(RTinv, tuple(a - b for a, b in zip(y, l)))
            if z in lattice:
                hits.append(z)
        if not hits:
            return False
        if len(hits) > 1:
            raise AmbiguousDigit(f"{len(hits)} digits peel {y}; is (B, L) a Hadamard pair?")
        y = hits[0]
    return y in lattice


def _membership_exhaustive(y, L, RTinv, lattice, n):
    frontier = {y}
    for _ in range(n):
        frontier = {exact.mat_vec(RTinv, tuple(a - b for a, b in zip(p, l)))
                    for p in frontier for l in L}
    return any(p in lattice for p in frontier)


@dataclass(frozen=True)
class Cycle:
    points: tuple
    digits: tuple
    extreme: bool

    def __len__(self):
        return len(self.points)


def find_extreme_cycles(pair: HadamardPair, lattice: Lattice | None = None) -> list[Cycle]:
    """All cycles of the dual maps ``tau_l`` through lattice points with ``|m_B| = 1``.

    Candidates are the lattice points in the (inflated) bounding box of the
    dual attractor ``X_L``; cycles are found in the graph ``x -> tau_l(x)``.
    """
    ifs = pair.ifs
    if lattice is None:
        lattice = dual_lattice(ifs.B, ifs.dim)
    box = box_for_maps(ifs.RT, pair.L)
    lo = [float(v) - BOX_INFLATION for v in box.lo]
    hi = [float(v) + BOX_INFLATION for v in box.hi]
    cand = [p for p in lattice.points_in_box(lo, hi)
            if abs(abs(mask_mB(ifs, p)) - 1.0) <= EXTREME_TOL]
    cset = set(cand)
    G = nx.DiGraph()
    G.add_nodes_from(cand)
    for p in cand:
        for l in pair.L:
            q = pair.dual_map(l, p)
            if q in cset:
                G.add_edge(p, q, digit=l)
    cycles = []
    for nodes in nx.simple_cycles(G):
        k = nodes.index(min(nodes))
        nodes = nodes[k:] + nodes[:k]
        digits = tuple(G.edges[nodes[i], nodes[(i + 1) % len(nodes)]]["digit"]
                       for i in range(len(nodes)))
        extreme = all(abs(abs(mask_mB(ifs, p)) - 1.0) <= EXTREME_TOL for p in nodes)
        cycles.append(Cycle(tuple(nodes), digits, extreme))
    cycles.sort(key=lambda c: c.points)
    return cycles


def spectrum_from_cycles(cycles, R, L, depth: int) -> SpectrumSet:
    """``union_{j<=depth} S^j(-C)`` over the extreme cycles ``C``.

    This is the depth-``depth`` truncation of the smallest S-invariant set
    containing every ``-C``. In d >= 2 the result is only a candidate set.
    """
    extreme = [c for c in cycles if c.extreme]
    if not extreme:
        raise NoCycles("no extreme cycles given")
    seeds = {tuple(-v for v in p) for c in extreme for p in c.points}
    cur = SpectrumSet.of(seeds)
    acc = set(cur.points)
    for _ in range(depth):
        cur = s_apply(R, L, cur)
        acc.update(cur.points)
    dim = len(next(iter(seeds)))
    note = "" if dim == 1 else "candidate set; no completeness claim in d >= 2"
    return SpectrumSet(tuple(acc), Provenance.FROM_CYCLES, depth, note)


def lambda_n_filter(spectrum, R, n: int, r0: float) -> SpectrumSet:
    """Points with ``|(R^T)^{-n} lambda| <= r0`` (slack 1e-15 toward inclusion)."""
    if not r0 > 0:
        raise ValueError("r0 must be positive")
    R = _as_matrix(R)
    M = exact.inverse(exact.mat_pow(exact.transpose(R), n))
    bound = float(r0) + 1e-15 * max(1.0, float(r0))
    pts = spectrum.points if isinstance(spectrum, SpectrumSet) else [as_point(p) for p in spectrum]
    keep = []
    for lam in pts:
        y = exact.mat_vec(M, lam)
        if math.sqrt(float(sum(v * v for v in y))) <= bound:
            keep.append(lam)
    like = spectrum if isinstance(spectrum, SpectrumSet) else None
    return _spectrum(keep, like)


def radius_shift(R, r1: float, r0: float) -> int:
    """Smallest ``m`` with ``(R^T)^{-m} B(0, r1)`` inside ``B(0, r0)``."""
    Tinv = np.linalg.inv(np.array(_as_matrix(R), dtype=float).T)
    P = np.eye(Tinv.shape[0])
    for m in itertools.count():
        if np.linalg.norm(P, 2) * r1 <= r0:
            return m
        P = Tinv @ P


# ---------------------------------------------------------------------------
# spectrum files: one point per line, coordinates "p/q" separated by spaces


def format_point(p) -> str:
    return " ".join(f"{c.numerator}/{c.denominator}" for c in as_point(p))


def write_spectrum(spectrum: SpectrumSet, path, header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# provenance: {spectrum.label}\n")
        if spectrum.truncation_note:
            fh.write(f"# note: {spectrum.truncation_note}\n")
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for p in spectrum.points:
            fh.write(format_point(p) + "\n")


def parse_spectrum(text: str) -> SpectrumSet:
    pts = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            pts.append(tuple(Fraction(tok) for tok in line.split()))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: cannot parse {line!r}") from exc
    return SpectrumSet(tuple(pts), Provenance.EXPLICIT, truncation_note="read from file")


def read_spectrum(path) -> SpectrumSet:
    with open(path, encoding="utf-8") as fh:
        return parse_spectrum(fh.read())
