"""Observed state sets per level, against the finite-spectrum bound."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import GnnClassifier, GnnError, run_levels

# Bounds whose binary representation would exceed this many bits are not
# materialised; they are reported as None ("larger than anything observable").
MAX_BOUND_BITS = 1 << 20


def spectrum_bound(d: int, L: int, k: int, family: str, max_bits: int = MAX_BOUND_BITS) -> list:
    """b_0 = 2^d, b_{l+1} = b_l·(k+1)^{b_l} (AC) or b_l·(k+1)^{2·b_l} (ACR, AC+).

    Entries too large to write down are None; the sequence is increasing, so
    every later entry is None as well.
    """
    if k < 1:
        raise GnnError("bound k must be >= 1")
    if family not in ("AC", "ACR", "ACPlus"):
        raise GnnError(f"unknown family {family!r}")
    mult = 1 if family == "AC" else 2
    out = [2 ** d]
    for _ in range(L):
        b = out[-1]
        # b > max_bits already implies more than max_bits bits
        if b is None or b > max_bits or b.bit_length() + mult * b * math.log2(k + 1) > max_bits:
            out.append(None)
            continue
        out.append(b * (k + 1) ** (mult * b))
    return out


@dataclass(frozen=True)
class SpectrumReport:
    levels: tuple          # frozensets of observed vectors, one per level
    bounds: tuple | None   # None for unbounded classifiers

    def sizes(self) -> list:
        return [len(s) for s in self.levels]

    def within_bounds(self) -> bool:
        if self.bounds is None:
            return True
        return all(b is None or len(s) <= b for s, b in zip(self.levels, self.bounds))


def measure_spectrum(n: GnnClassifier, corpus) -> SpectrumReport:
    levels = [set() for _ in range(len(n.layers) + 1)]
    for g in corpus:
        if g.dim != n.input_dim:
            raise GnnError(f"corpus graph of dimension {g.dim}, classifier expects {n.input_dim}")
        for lvl, labels in enumerate(run_levels(n, g)):
            levels[lvl].update(labels)
    bounds = None
    if n.bounded:
        family = n.family() or "ACR"  # mixed kinds: use the larger recurrence
        bounds = tuple(spectrum_bound(n.input_dim, len(n.layers), n.max_bound(), family))
    return SpectrumReport(tuple(frozenset(s) for s in levels), bounds)
