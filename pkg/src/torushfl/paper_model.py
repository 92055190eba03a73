"""Symbolic generators of the special Heegaard diagram for T(n, n).

A generator picks one pure intersection point for each index i = 2..n,
labelled exterior (E), grid (G) or inner (I), each with a number of
decorations (primes).  Only gradings are modelled, not differentials.

Working Alexander contributions (1-based coordinates):

    E_i -> 0,  G_i -> (1,...,1 [i-1 times], 0,...,0),  I_i -> (1,...,1)

and every decoration on the label at index i adds 1 to coordinate i.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Sequence, Tuple

LABELS = ("E", "G", "I")
_TOKEN = re.compile(r"^([EGI])('*)$")


@dataclass(frozen=True)
class SymbolicGenerator:
    """Labels and decoration counts for indices 2..n (position 0 is index 2)."""

    labels: Tuple[str, ...]
    decorations: Tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.decorations):
            raise ValueError("labels and decorations differ in length")
        if not self.labels:
            raise ValueError("a generator needs at least one intersection point")
        for lab, d in zip(self.labels, self.decorations):
            if lab not in LABELS:
                raise ValueError(f"unknown label {lab!r}")
            if not 0 <= d <= 2:
                raise ValueError(f"decoration count {d} out of range")

    @classmethod
    def parse(cls, tokens: Sequence[str]) -> "SymbolicGenerator":
        """From tokens like ``["G''", "E'", "I'"]`` for indices 2, 3, ...."""
        labels, decs = [], []
        for tok in tokens:
            m = _TOKEN.match(tok)
            if not m:
                raise ValueError(f"malformed label {tok!r}")
            labels.append(m.group(1))
            decs.append(len(m.group(2)))
        return cls(tuple(labels), tuple(decs))

    @property
    def n(self) -> int:
        return len(self.labels) + 1

    @property
    def last(self) -> str:
        """Label of x_n."""
        return self.labels[-1]

    def __str__(self):
        return "(" + ", ".join(f"{l}{chr(39) * d}{i + 2}" for i, (l, d) in enumerate(zip(self.labels, self.decorations))) + ")"


def _check_width(gen: SymbolicGenerator, n: int) -> None:
    if gen.n != n:
        raise ValueError(f"generator has {len(gen.labels)} points, expected {n - 1} for n={n}")


def working_alexander(gen: SymbolicGenerator, n: int) -> Tuple[int, ...]:
    _check_width(gen, n)
    out = [0] * n
    for pos, (lab, d) in enumerate(zip(gen.labels, gen.decorations)):
        i = pos + 2
        if lab == "G":
            for j in range(i - 1):
                out[j] += 1
        elif lab == "I":
            for j in range(n):
                out[j] += 1
        out[i - 1] += d
    return tuple(out)


def absolute_alexander2(gen: SymbolicGenerator, n: int) -> Tuple[int, ...]:
    """Doubled absolute Alexander vector: (n-1)/2 minus the working grading."""
    return tuple(n - 1 - 2 * w for w in working_alexander(gen, n))


def interior_location(w: Sequence[int]) -> Tuple[int, int]:
    """(c, s) when ``w`` is the non-decreasing slice representative, else ValueError."""
    n = len(w)
    lo, hi = w[0], w[-1]
    if hi - lo != 1 or list(w) != sorted(w):
        raise ValueError(f"{tuple(w)} is not an interior slice point")
    c = hi
    s = list(w).count(hi) + 1
    if not (1 <= c <= n - 1 and 2 <= s <= n):
        raise ValueError(f"{tuple(w)} is not an interior slice point")
    return c, s


def model_grading(gen: SymbolicGenerator, n: int) -> int:
    """Homological grading from the generator's labels.

    With k the number of I or G points and d the number of decorated
    points, the grading is ``-k^2 - 2k - d``, plus one when x_n is a grid
    point (it is joined to the matching I-class generator by a bigon).
    """
    interior_location(working_alexander(gen, n))
    k = sum(1 for lab in gen.labels if lab in ("I", "G"))
    d = sum(1 for v in gen.decorations if v)
    return -k * k - 2 * k - d + (1 if gen.last == "G" else 0)


def _check_range(n: int, c: int, s: int) -> None:
    if n < 2 or not (1 <= c <= n - 1 and 2 <= s <= n):
        raise ValueError(f"(n, c, s) = ({n}, {c}, {s}) out of range")


def _binom(m: int, k: int) -> int:
    return comb(m, k) if k >= 0 else 0


def class_counts(n: int, c: int, s: int) -> Tuple[int, int, int]:
    _check_range(n, c, s)
    return _binom(n - 2, c - 1), _binom(n - 2, c - 2), _binom(n - 2, c - 2)


# candidate points: E or I (plain or primed) at indices 2..n-1; E', I', G'' at n
_INNER_CHOICES = (("E", 0), ("E", 1), ("I", 0), ("I", 1))
_LAST_CHOICES = (("E", 1), ("I", 1), ("G", 2))


def generators_at(n: int, c: int, s: int) -> Dict[str, List[SymbolicGenerator]]:
    """Brute-force all candidate pure generators landing on the slice point.

    Returns the E-, I- and G-classes keyed by the label of x_n.
    """
    _check_range(n, c, s)
    target = (c - 1,) * (n - s + 1) + (c,) * (s - 1)
    out: Dict[str, List[SymbolicGenerator]] = {"E": [], "I": [], "G": []}
    for inner in itertools.product(_INNER_CHOICES, repeat=n - 2):
        for last in _LAST_CHOICES:
            pts = inner + (last,)
            gen = SymbolicGenerator(tuple(p[0] for p in pts), tuple(p[1] for p in pts))
            if working_alexander(gen, n) == target:
                out[last[0]].append(gen)
    return out


def order_key(gen: SymbolicGenerator) -> Tuple[int, ...]:
    """Binary sequence over indices 2..n-1 (E -> 0, I -> 1).

    Python tuple comparison is the intended order: S > T when S has a 1 at
    the first index where they differ.
    """
    if gen.last == "E":
        raise ValueError("order_key is defined on I- and G-class generators only")
    seq = []
    for lab in gen.labels[:-1]:
        if lab == "G":
            raise ValueError("grid points are only allowed at index n")
        seq.append(1 if lab == "I" else 0)
    return tuple(seq)


def class_ranking(gens: Sequence[SymbolicGenerator]) -> Dict[SymbolicGenerator, int]:
    """Rank each generator 1..len(gens) by ascending order_key."""
    ordered = sorted(gens, key=order_key)
    keys = [order_key(g) for g in ordered]
    if len(set(keys)) != len(keys):
        raise ValueError("order_key is not injective on this set")
    return {g: i + 1 for i, g in enumerate(ordered)}


def interior_rank_model(n: int, c: int, s: int) -> Tuple[int, int]:
    """(rank, maslov) at v_{s,c,n} from |E| + |I| - |G| on enumerated generators."""
    classes = generators_at(n, c, s)
    grades = {lab: {model_grading(g, n) for g in gens} for lab, gens in classes.items()}
    if len(grades["E"]) != 1:
        raise AssertionError(f"E-class gradings not concentrated: {grades['E']}")
    (top,) = grades["E"]
    if classes["I"]:
        if grades["I"] != {top} or grades["G"] != {top + 1}:
            raise AssertionError(f"unexpected class gradings {grades}")
    rank = len(classes["E"]) + len(classes["I"]) - len(classes["G"])
    return rank, top
