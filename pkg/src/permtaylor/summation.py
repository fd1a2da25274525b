"""Compensated accumulation with a fixed reduction tree.

Neumaier's variant of Kahan summation keeps a running compensation term so
that long alternating sums (Ryser, permutation sums) stay reproducible and
accurate. Sums over large index sets are grouped into fixed-size chunks
whose boundaries depend only on the number of items; chunk partials are
folded in index order, so serial and thread-parallel runs produce
bit-identical results.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

CHUNK = 2048


class Neumaier:
    """Running compensated sum of real floats."""

    __slots__ = ("s", "c")

    def __init__(self) -> None:
        self.s = 0.0
        self.c = 0.0

    def add(self, x: float) -> None:
        s = self.s
        t = s + x
        # the branch recovers the rounding error of s + x exactly
        if abs(s) >= abs(x):
            self.c += (s - t) + x
        else:
            self.c += (x - t) + s
        self.s = t

    def value(self) -> float:
        return self.s + self.c


class ComplexNeumaier:
    """Compensated sum of complex values, one accumulator per component."""

    __slots__ = ("re", "im")

    def __init__(self) -> None:
        self.re = Neumaier()
        self.im = Neumaier()

    def add(self, z: complex) -> None:
        self.re.add(z.real)
        self.im.add(z.imag)

    def value(self) -> complex:
        return complex(self.re.value(), self.im.value())


def chunked_sum(fn: Callable, items: Sequence, threads: int = 1) -> complex:
    """Compensated sum of fn(item) over items.

    Chunk layout is a function of len(items) alone and the partials are
    combined in chunk order, so the result does not depend on `threads`.
    """
    chunks = [items[i : i + CHUNK] for i in range(0, len(items), CHUNK)]

    def partial(chunk):
        acc = ComplexNeumaier()
        for item in chunk:
            acc.add(fn(item))
        return acc.re.s, acc.re.c, acc.im.s, acc.im.c

    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(partial, chunks))
    else:
        parts = [partial(chunk) for chunk in chunks]

    total = ComplexNeumaier()
    for sr, cr, si, ci in parts:
        total.re.add(sr)
        total.re.add(cr)
        total.im.add(si)
        total.im.add(ci)
    return total.value()
