"""Weyl group action and Cremona reduction on the blown-up plane.

The group is generated by the multiplicity swaps s_i (i >= 1, exchanging
slots i and i+1) and the quadratic Cremona reflection s_0 in the root
L - E_1 - E_2 - E_3. Every generator is an involution preserving the
intersection form and the canonical class.

``reduce`` drives a class into a terminal form by sorting multiplicities
descending (recording adjacent swaps) and applying s_0 while it decreases the
degree. Terminal statuses:

* NegL      -- the reduced class meets L negatively (degree < 0),
* NegLine   -- it meets L - E_1 negatively (degree < top multiplicity),
* InChamber -- degree >= m_1 + m_2 + m_3 with multiplicities sorted.

A class is effective only if reduction ends InChamber with the visible free
part; NegL / NegLine witnesses non-effectivity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .lattice import DivisorClass, canonical_class, intersect, line_class, point_class, selfint

CREMONA = 0

NEG_L = "NegL"
NEG_LINE = "NegLine"
IN_CHAMBER = "InChamber"


def swap(i: int) -> int:
    """Generator exchanging multiplicity slots i and i+1 (1-based)."""
    if i < 1:
        raise InputError(f"swap index must be >= 1, got {i}")
    return i


@dataclass(frozen=True)
class WeylWord:
    """A word in the generators, applied left to right.

    ops[k] is CREMONA (0) for s_0 or i >= 1 for the swap s_i. Since every
    generator is an involution, the inverse word is simply the reverse.
    """

    ops: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(int(v) for v in self.ops))
        if any(v < 0 for v in self.ops):
            raise InputError("word contains a negative generator index")

    def __len__(self) -> int:
        return len(self.ops)

    def inverse(self) -> "WeylWord":
        return WeylWord(tuple(reversed(self.ops)))

    def __mul__(self, other: "WeylWord") -> "WeylWord":
        """Concatenation: (w * u) F = u(w(F)) under left-to-right application."""
        return WeylWord(self.ops + other.ops)

    def __str__(self) -> str:
        return format_word(self)


def format_word(w: WeylWord) -> str:
    return " ".join(f"s{i}" for i in w.ops)


def parse_word(text: str) -> WeylWord:
    toks = text.split()
    ops = []
    for tok in toks:
        if not tok.startswith("s") or not tok[1:].isdigit():
            raise InputError(f"bad generator {tok!r}: expected s<index>")
        ops.append(int(tok[1:]))
    return WeylWord(tuple(ops))


def apply_generator(f: DivisorClass, g: int) -> DivisorClass:
    """One generator. Swaps need n > i; Cremona needs n >= 3."""
    if g == CREMONA:
        if f.n < 3:
            raise InputError("Cremona needs at least 3 multiplicity slots")
        c = f.t - f.m[0] - f.m[1] - f.m[2]
        m = (f.m[0] + c, f.m[1] + c, f.m[2] + c) + f.m[3:]
        return DivisorClass(f.t + c, m)
    i = g - 1
    if i + 1 >= f.n:
        raise InputError(f"swap s{g} out of range for {f.n} points")
    m = list(f.m)
    m[i], m[i + 1] = m[i + 1], m[i]
    return DivisorClass(f.t, tuple(m))


def apply_word(w: WeylWord, f: DivisorClass, inverse: bool = False) -> DivisorClass:
    ops = reversed(w.ops) if inverse else w.ops
    for g in ops:
        f = apply_generator(f, g)
    return f


@dataclass(frozen=True)
class ReducedForm:
    """Result of reduction: terminal class, the word that got there, status.

    apply_word(word, original) == reduced, and apply_word(word, reduced,
    inverse=True) recovers the original.
    """

    reduced: DivisorClass
    word: WeylWord
    status: str


def _sort_ops(m: list[int]) -> list[int]:
    """Stable descending insertion sort, returning the adjacent swaps used."""
    ops = []
    for i in range(1, len(m)):
        j = i
        while j > 0 and m[j - 1] < m[j]:
            m[j - 1], m[j] = m[j], m[j - 1]
            ops.append(j)
            j -= 1
    return ops


def reduce(f: DivisorClass) -> ReducedForm:
    """Cremona reduction. Classes with n < 3 are padded to 3 slots first, so
    the terminal class (and word) always has max(n, 3) slots."""
    g = f.pad_to(3) if f.n < 3 else f
    t, m = g.t, list(g.m)
    ops: list[int] = []
    while True:
        ops.extend(_sort_ops(m))
        if t < 0:
            status = NEG_L
            break
        c = t - m[0] - m[1] - m[2]
        if c >= 0:
            status = NEG_LINE if t < m[0] else IN_CHAMBER
            break
        ops.append(CREMONA)
        t += c
        m[0] += c
        m[1] += c
        m[2] += c
    return ReducedForm(DivisorClass(t, tuple(m)), WeylWord(tuple(ops)), status)


def is_exceptional(e: DivisorClass) -> bool:
    """True for Weyl images of the point classes E_i: self-intersection -1,
    K.E = -1, and reduction terminates at a single -1 multiplicity."""
    if e.n == 0:
        return False
    k = canonical_class(e.n)
    if selfint(e) != -1 or intersect(k, e) != -1:
        return False
    r = reduce(e).reduced
    return r.t == 0 and r.m[-1] == -1 and all(v == 0 for v in r.m[:-1])


def orbit_of_line(c: DivisorClass) -> WeylWord | None:
    """A word w with apply_word(w, L) == c, when c is in the orbit of L
    (equivalently reduce(c) terminates at L); None otherwise."""
    r = reduce(c)
    if r.reduced != line_class(r.reduced.n):
        return None
    return r.word.inverse()


def _canon(t: int, m: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    ms = tuple(sorted(m, reverse=True))
    while ms and ms[-1] == 0:
        ms = ms[:-1]
    return t, ms


def enumerate_exceptional(max_degree: int) -> list[DivisorClass]:
    """All exceptional classes with 1 <= E.L <= max_degree, canonicalized
    (multiplicities sorted descending, trailing zeros stripped), sorted by
    (degree, multiplicities).

    Walks the Weyl orbit upward from the line through two points: applying
    s_0 to every 3-element multiset of multiplicity values (with up to three
    virtual zero slots) reaches every exceptional class, because reduction
    strictly decreases degree and its inverse steps are among these moves.
    """
    if max_degree < 1:
        return []
    start = _canon(1, (1, 1))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for t, m in frontier:
            values = list(m) + [0, 0, 0]
            triples = set()
            for a in range(len(values) - 2):
                for b in range(a + 1, len(values) - 1):
                    for c in range(b + 1, len(values)):
                        triples.add((values[a], values[b], values[c]))
            for v1, v2, v3 in triples:
                c0 = t - v1 - v2 - v3
                t2 = t + c0
                if not (1 <= t2 <= max_degree):
                    continue
                rest = list(m) + [0, 0, 0]
                for v in (v1, v2, v3):
                    rest.remove(v)
                child = _canon(t2, tuple(rest + [v1 + c0, v2 + c0, v3 + c0]))
                if child not in seen:
                    seen.add(child)
                    nxt.append(child)
        frontier = nxt
    out = [DivisorClass(t, m) for t, m in sorted(seen)]
    return out


def line_reduction(e: DivisorClass) -> tuple[WeylWord, DivisorClass, list[int]]:
    """Reduce an exceptional class of degree >= 1 just far enough to reach a
    degree-1 class (the proper transform of a line through two points).

    Returns (word, terminal class, degree trail): the terminal has sorted
    multiplicities (1, 1, 0, ..., 0), and trail[k] is the class degree before
    ops[k] was applied (what a reverse replay must restore after undoing it).
    """
    if intersect(e, line_class(e.n)) < 1:
        raise InputError("line reduction needs a class of degree >= 1")
    g = e.pad_to(3) if e.n < 3 else e
    t, m = g.t, list(g.m)
    ops: list[int] = []
    trail: list[int] = []
    while True:
        for op in _sort_ops(m):
            ops.append(op)
            trail.append(t)
        if t == 1:
            break
        c = t - m[0] - m[1] - m[2]
        if c >= 0:
            raise InputError(f"class {e} is not in the line orbit")
        ops.append(CREMONA)
        trail.append(t)
        t += c
        m[0] += c
        m[1] += c
        m[2] += c
    term = DivisorClass(t, tuple(m))
    if term.m[: 2] != (1, 1) or any(term.m[2:]):
        raise InputError(f"class {e} is not in the line orbit")
    return WeylWord(tuple(ops)), term, trail


def exceptional_points(w: WeylWord, n: int) -> list[DivisorClass]:
    """The images w(E_i) for i = 1..n (classes of the exceptional curves
    after transporting by w)."""
    return [apply_word(w, point_class(i, n)) for i in range(1, n + 1)]
