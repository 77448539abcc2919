"""Homology with respect to the exterior operators Q0 = Sq1 and
Q1 = Sq2 Sq1 + Sq1 Sq2 (degree 3), and the splitting of a module into
free and trivial pieces over the subalgebra generated by Sq1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .a1core import A1Module, GradedMap, dualize
from .f2linalg import Subspace, complement, image, kernel

__all__ = [
    "MargolisResult", "LocalityVerdict", "A0Decomposition",
    "q0_map", "q1_map", "margolis_homology", "is_q0_local", "a0_decompose",
]

_SHIFT = {"Q0": 1, "Q1": 3}
_SLACK = {"Q0": 1, "Q1": 5}  # degrees discarded below a truncation cutoff


@dataclass
class MargolisResult:
    op: str                              # "Q0" or "Q1"
    dims: Dict[int, int]                 # homology dimension per degree
    reps: Dict[int, List[int]]           # cycle representatives per degree
    reliable: Tuple[Optional[int], Optional[int]]  # inclusive degree window

    def in_range(self, k: int) -> bool:
        lo, hi = self.reliable
        return (lo is None or k >= lo) and (hi is None or k <= hi)

    def nonzero_degrees(self) -> List[int]:
        return sorted(k for k, d in self.dims.items() if d)


@dataclass
class LocalityVerdict:
    local: bool
    reliable: Tuple[Optional[int], Optional[int]]
    witness_degree: Optional[int] = None  # a degree with Q1-homology, if any


@dataclass
class A0Decomposition:
    """Basis split over the subalgebra generated by Sq1: ``pairs`` are
    (degree, b, Sq1 b) spanning free summands, ``trivial`` are
    (degree, representative) classes with no Sq1 in or out."""

    pairs: List[Tuple[int, int, int]]
    trivial: List[Tuple[int, int]]


def q0_map(m: A1Module) -> GradedMap:
    return m.sq1


def q1_map(m: A1Module) -> GradedMap:
    """Q1 = Sq2 Sq1 + Sq1 Sq2, a degree 3 operator with Q1 Q1 = 0."""
    return m.sq2.compose(m.sq1).add(m.sq1.compose(m.sq2))


def _reliable_window(m: A1Module, op: str) -> Tuple[Optional[int], Optional[int]]:
    lo = None
    hi = None
    if m.truncated_above is not None:
        hi = m.truncated_above - _SLACK[op]
    if m.truncated_below is not None:
        lo = m.truncated_below + _SLACK[op]
    return lo, hi


def margolis_homology(m: A1Module, op: str = "Q0", side: str = "module") -> MargolisResult:
    """Degreewise ker/im homology of Q0 or Q1.

    ``side='dual'`` computes on the degreewise dual (right action); the
    dimensions agree with the module side at negated degrees.
    """
    if op not in _SHIFT:
        raise ValueError(f"unknown operator {op!r}")
    if side == "dual":
        m = dualize(m)
    elif side != "module":
        raise ValueError(f"unknown side {side!r}")
    q = q0_map(m) if op == "Q0" else q1_map(m)
    shift = _SHIFT[op]
    lo_r, hi_r = _reliable_window(m, op)
    dims: Dict[int, int] = {}
    reps: Dict[int, List[int]] = {}
    for k in m.space.degrees:
        if (lo_r is not None and k < lo_r) or (hi_r is not None and k > hi_r):
            continue
        ker = kernel(q.mat(k))
        im = image(q.mat(k - shift))
        reps_k = complement(im, ker)
        dims[k] = len(reps_k)
        reps[k] = reps_k
    return MargolisResult(op, dims, reps, (lo_r, hi_r))


def is_q0_local(m: A1Module) -> LocalityVerdict:
    """True when the Q1-homology vanishes across the reliable window."""
    h = margolis_homology(m, "Q1")
    bad = h.nonzero_degrees()
    if bad:
        return LocalityVerdict(False, h.reliable, witness_degree=bad[0])
    return LocalityVerdict(True, h.reliable)


def a0_decompose(m: A1Module) -> A0Decomposition:
    """Split the underlying Sq1-module into free pairs and trivial classes.

    In each degree, vectors completing ker(Sq1) to the whole degree span free
    summands together with their Sq1-images; representatives of
    ker(Sq1)/im(Sq1) span trivial summands.  The listed vectors jointly form
    a basis of every fully-present degree.
    """
    pairs: List[Tuple[int, int, int]] = []
    trivial: List[Tuple[int, int]] = []
    for k in m.space.degrees:
        if m.truncated_above is not None and k > m.truncated_above - 1:
            continue
        ker = kernel(m.sq1.mat(k))
        full = Subspace.full(m.dim(k))
        for b in complement(ker, full):
            pairs.append((k, b, m.sq1.apply(k, b)))
        im = image(m.sq1.mat(k - 1))
        for r in complement(im, ker):
            trivial.append((k, r))
    return A0Decomposition(pairs, trivial)
