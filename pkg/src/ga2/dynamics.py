"""Permutations of F_p^2 induced by automorphisms, and their cycle structure.

Points are indexed as ``x + p*y``.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .amalgam import NormalForm, to_normal_form
from .errors import (CapExceeded, NotAnAutomorphism, NotFiniteField, ReversorCheckFailed,
                     SymmetryCheckFailed)
from .generators import PolyMap
from .symmetry import is_reversor, is_symmetry

__all__ = ["PermTable", "CycleStats", "PairingReport", "induced_permutation",
           "cycle_statistics", "fixed_points_fp", "reversor_cycle_pairing",
           "symmetry_orbit_check", "cycles"]

MAX_P = 101


@dataclass(frozen=True)
class PermTable:
    p: int
    images: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.images.setflags(write=False)

    def __len__(self):
        return len(self.images)

    def __call__(self, index: int) -> int:
        return int(self.images[index])

    def point(self, index: int):
        return index % self.p, index // self.p

    def index(self, x: int, y: int) -> int:
        return x % self.p + self.p * (y % self.p)

    def inverse(self) -> "PermTable":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(len(self.images))
        return PermTable(self.p, inv)

    def __eq__(self, other):
        return (isinstance(other, PermTable) and self.p == other.p
                and np.array_equal(self.images, other.images))

    def __hash__(self):
        return hash((self.p, self.images.tobytes()))


@dataclass(frozen=True)
class CycleStats:
    cycle_lengths: tuple
    fixed_point_count: int

    def histogram(self):
        return sorted(Counter(self.cycle_lengths).items())

    def records(self):
        recs = [{"rec": "CYCLE", "len": n, "count": k} for n, k in self.histogram()]
        recs.append({"rec": "FIXED", "count": self.fixed_point_count})
        return recs

    def report_lines(self):
        lines = [f"CYCLE len={n} count={k}" for n, k in self.histogram()]
        lines.append(f"FIXED {self.fixed_point_count}")
        return lines


def _require_fp(ctx, max_p):
    if not ctx.p:
        raise NotFiniteField("phase-space enumeration needs a prime field")
    if max_p is not None and ctx.p > max_p:
        raise CapExceeded(f"p = {ctx.p} exceeds the cap {max_p}")


def _eval_bipoly(F, xs, ys, p):
    dx = max((i for i, _ in F.terms), default=0)
    dy = max((j for _, j in F.terms), default=0)
    px = [np.ones_like(xs)]
    for _ in range(dx):
        px.append(px[-1] * xs % p)
    py = [np.ones_like(ys)]
    for _ in range(dy):
        py.append(py[-1] * ys % p)
    out = np.zeros_like(xs)
    for (i, j), c in F.terms.items():
        out = (out + int(c) * (px[i] * py[j] % p)) % p
    return out


def _eval_range(f: PolyMap, p, lo, hi):
    idx = np.arange(lo, hi, dtype=np.int64)
    xs, ys = idx % p, idx // p
    return _eval_bipoly(f.P, xs, ys, p) + p * _eval_bipoly(f.Q, xs, ys, p)


def _eval_nf(nf: NormalForm, p, lo=0, hi=None):
    """Apply the normal-form letters one at a time."""
    idx = np.arange(lo, p * p if hi is None else hi, dtype=np.int64)
    xs, ys = idx % p, idx // p
    for letter in reversed(nf.word().letters):
        m = letter.polymap
        xs, ys = _eval_bipoly(m.P, xs, ys, p), _eval_bipoly(m.Q, xs, ys, p)
    return xs + p * ys


def induced_permutation(f, *, max_p: int | None = MAX_P, threads: int = 1,
                        cross_check: bool = False) -> PermTable:
    """Table of ``f`` on all p^2 points, checked to be a bijection.

    A PolyMap is evaluated as expanded; a word or normal form is evaluated
    letter by letter, since expanding a long word can be far costlier than
    the table itself. ``cross_check`` compares against the other route.
    """
    _require_fp(f.ctx, max_p)
    nf = to_normal_form(f)  # raises NotAnAutomorphism for non-automorphisms
    expanded = isinstance(f, PolyMap)
    p = f.ctx.p
    n = p * p
    if p > 3037000499 ** 0.5:
        raise CapExceeded("p too large for 64-bit evaluation")
    threads = max(1, threads)
    bounds = [n * k // threads for k in range(threads + 1)]
    chunks = list(zip(bounds, bounds[1:]))
    if expanded:
        def job(c):
            return _eval_range(f, p, *c)
    else:
        def job(c):
            return _eval_nf(nf, p, *c)
    if threads == 1:
        parts = [job(c) for c in chunks]
    else:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(job, chunks))
    images = np.concatenate(parts)
    if len(np.unique(images)) != n:
        raise NotAnAutomorphism(f"the map is not a bijection of F_{p}^2")
    if cross_check:
        other = _eval_nf(nf, p) if expanded else _eval_range(nf.to_polymap(), p, 0, n)
        if not np.array_equal(images, other):
            raise AssertionError("expanded map and normal form disagree on F_p^2")
    return PermTable(p, images)


def cycles(perm: PermTable):
    """Cycles as lists of point indices, each starting at its smallest index."""
    seen = np.zeros(len(perm), dtype=bool)
    img = perm.images.tolist()
    out = []
    for start in range(len(img)):
        if seen[start]:
            continue
        cyc = []
        k = start
        while not seen[k]:
            seen[k] = True
            cyc.append(k)
            k = img[k]
        out.append(cyc)
    return out


def cycle_statistics(perm: PermTable) -> CycleStats:
    lengths = tuple(sorted(len(c) for c in cycles(perm)))
    return CycleStats(lengths, lengths.count(1))


def fixed_points_fp(f, *, max_p: int | None = None):
    """All (x, y) in F_p^2 with f(x, y) = (x, y), as integer pairs."""
    _require_fp(f.ctx, max_p)
    p = f.ctx.p
    if isinstance(f, PolyMap):
        images = _eval_range(f, p, 0, p * p)
    else:
        images = _eval_nf(to_normal_form(f), p)
    return [(int(k) % p, int(k) // p) for k in np.flatnonzero(images == np.arange(p * p))]


@dataclass(frozen=True)
class PairingReport:
    histogram: tuple
    invariant_cycles: int
    symmetric_points: tuple  # per cycle, points fixed by r (only when r is an involution)
    holds: bool
    cycle_map_is_involution: bool | None

    def report_lines(self):
        lines = [f"CYCLE len={n} count={k}" for n, k in self.histogram]
        lines.append(f"INVARIANT {self.invariant_cycles}")
        lines.append(f"PAIRING {'holds' if self.holds else 'fails'}")
        return lines


def _cycle_labels(cyc, n):
    label = np.empty(n, dtype=np.int64)
    for k, c in enumerate(cyc):
        label[c] = k
    return label


def reversor_cycle_pairing(f, r, **kw) -> PairingReport:
    """How the reversor ``r`` permutes the cycles of ``f`` on F_p^2."""
    if not is_reversor(f, r):
        raise ReversorCheckFailed("r does not conjugate f to its inverse")
    F, R = induced_permutation(f, **kw), induced_permutation(r, **kw)
    cyc = cycles(F)
    label = _cycle_labels(cyc, len(F))
    holds = True
    target = []
    for c in cyc:
        hit = {int(label[R(k)]) for k in c}
        t = hit.pop() if len(hit) == 1 else None
        if t is None or len(cyc[t]) != len(c):
            holds, t = False, None
        target.append(t)
    invariant = sum(1 for k, t in enumerate(target) if t == k)
    r_invol = bool(np.array_equal(R.images[R.images], np.arange(len(R))))
    if r_invol:
        sym = tuple(sum(1 for k in c if R(k) == k) for c in cyc)
        cmap = holds and all(target[t] == k for k, t in enumerate(target))
    else:
        sym, cmap = (), None
    hist = tuple(sorted(Counter(len(c) for c in cyc).items()))
    return PairingReport(hist, invariant, sym, holds, cmap)


def symmetry_orbit_check(f, s, **kw) -> bool:
    """Whether ``s`` carries each f-cycle onto an f-cycle, preserving the cyclic order."""
    if not is_symmetry(f, s):
        raise SymmetryCheckFailed("s does not commute with f")
    F, S = induced_permutation(f, **kw), induced_permutation(s, **kw)
    cyc = cycles(F)
    length_of = np.empty(len(F), dtype=np.int64)
    for c in cyc:
        length_of[c] = len(c)
    for c in cyc:
        imgs = [S(k) for k in c]
        if length_of[imgs[0]] != len(c):
            return False
        if any(F(a) != b for a, b in zip(imgs, imgs[1:] + imgs[:1])):
            return False
    return True
