"""Congruence classes, covering systems, exact-cover verification, and the
two classical constructions (the power-of-two tower and the doubling map).

A system is an exact (disjoint) cover when every integer lies in exactly one
of its classes.  Verification uses the criterion: pairwise disjoint classes
with density exactly 1 cover everything (the uncovered set would be a finite
union of residue classes with density 0, hence empty).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .arith import CapExceeded, Fraction


class NotSingleRepeated(ValueError):
    """The moduli multiset is not 'distinct values plus the largest repeated'."""


@dataclass(frozen=True, order=True)
class CongruenceClass:
    """One arithmetic progression: residue (mod modulus).

    Residues are canonicalized into [0, modulus) at construction; ordering is
    (modulus, residue), the canonical serialization order.
    """

    modulus: int
    residue: int

    def __init__(self, residue: int, modulus: int):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "residue", residue % modulus)

    def covers(self, x: int) -> bool:
        return (x - self.residue) % self.modulus == 0

    def __str__(self) -> str:
        return f"{self.residue} mod {self.modulus}"


def classes_disjoint(c1: CongruenceClass, c2: CongruenceClass) -> bool:
    """True iff the two progressions share no integer.

    By CRT they intersect exactly when the residues agree modulo
    gcd(m1, m2); in particular coprime moduli always intersect.
    """
    return (c1.residue - c2.residue) % math.gcd(c1.modulus, c2.modulus) != 0


def first_common(c1: CongruenceClass, c2: CongruenceClass) -> int | None:
    """Smallest nonnegative integer in both classes, or None if disjoint."""
    if classes_disjoint(c1, c2):
        return None
    l = c1.modulus // math.gcd(c1.modulus, c2.modulus) * c2.modulus
    x = c1.residue
    while not c2.covers(x):
        x += c1.modulus
        if x >= l + c1.residue:
            raise AssertionError("intersecting classes must meet below the lcm")
    return x


class CoveringSystem:
    """A nonempty finite list of congruence classes, stored in canonical order.

    Classes are sorted by (modulus, residue); exact duplicates are rejected
    (a class can never be disjoint from a copy of itself).
    """

    __slots__ = ("classes",)

    def __init__(self, classes):
        cl = tuple(sorted(classes))
        if not cl:
            raise ValueError("a covering system needs at least one class")
        for a, b in zip(cl, cl[1:]):
            if a == b:
                raise ValueError(f"duplicate class {a}")
        object.__setattr__(self, "classes", cl)

    def __setattr__(self, name, value):
        raise AttributeError("CoveringSystem is immutable")

    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)

    def __eq__(self, other):
        return isinstance(other, CoveringSystem) and self.classes == other.classes

    def __hash__(self):
        return hash(self.classes)

    def __repr__(self):
        return f"CoveringSystem({list(self.classes)!r})"

    def moduli(self) -> list[int]:
        return [c.modulus for c in self.classes]

    def lcm(self) -> int:
        l = 1
        for c in self.classes:
            l = l // math.gcd(l, c.modulus) * c.modulus
        return l


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of a verification: valid iff no conflict, density 1, no gap."""

    valid: bool
    density: Fraction
    first_conflict: tuple[int, int] | None = None
    first_gap: int | None = None


def density(s: CoveringSystem) -> Fraction:
    """Exact sum of 1/m over all classes."""
    total = Fraction(0)
    for c in s.classes:
        total = total + Fraction(1, c.modulus)
    return total


def verify(s: CoveringSystem) -> VerifyReport:
    """Exact-cover check via pairwise disjointness plus density 1.

    first_conflict is the least (i, j) pair of intersecting classes in
    canonical order.  Gaps are never reported here: disjointness with density
    1 already implies total coverage, so this path never scans integers.
    """
    cl = s.classes
    conflict = None
    for i in range(len(cl)):
        for j in range(i + 1, len(cl)):
            if not classes_disjoint(cl[i], cl[j]):
                conflict = (i, j)
                break
        if conflict:
            break
    dens = density(s)
    return VerifyReport(
        valid=conflict is None and dens == Fraction(1),
        density=dens,
        first_conflict=conflict,
    )


def verify_bruteforce(s: CoveringSystem, lcm_cap: int = 10**6) -> VerifyReport:
    """Independent oracle: count hits over one full period Z/L.

    Materializes how many classes cover each residue mod L = lcm(moduli);
    valid iff every count is exactly 1.  Reports the first over-covered point
    as a conflict (the first two classes covering it) and the first uncovered
    point as a gap.  Raises CapExceeded when L exceeds lcm_cap.
    """
    l = s.lcm()
    if l > lcm_cap:
        raise CapExceeded(f"lcm {l} exceeds cap {lcm_cap}")
    counts = [0] * l
    for c in s.classes:
        for x in range(c.residue, l, c.modulus):
            counts[x] += 1
    conflict = None
    gap = None
    for x in range(l):
        if counts[x] > 1 and conflict is None:
            covering = [i for i, c in enumerate(s.classes) if c.covers(x)]
            conflict = (covering[0], covering[1])
        if counts[x] == 0 and gap is None:
            gap = x
        if conflict is not None and gap is not None:
            break
    return VerifyReport(
        valid=conflict is None and gap is None,
        density=density(s),
        first_conflict=conflict,
        first_gap=gap,
    )


def trivial_power_system(r: int) -> CoveringSystem:
    """The power-of-two tower whose largest modulus 2^r appears exactly twice.

    r = 1 degenerates to the parity partition {0 mod 2, 1 mod 2}.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if r == 1:
        return CoveringSystem([CongruenceClass(0, 2), CongruenceClass(1, 2)])
    classes = [CongruenceClass(2 ** (i - 1) - 1, 2**i) for i in range(1, r + 1)]
    classes.append(CongruenceClass(2**r - 1, 2**r))
    return CoveringSystem(classes)


def double_system(s: CoveringSystem) -> CoveringSystem:
    """Double every class (a -> 2a+1, m -> 2m) and prepend 0 mod 2.

    Maps exact covers to exact covers: the new class takes the evens and the
    doubled classes tile the odds.  The input must itself verify.
    """
    report = verify(s)
    if not report.valid:
        raise ValueError("double_system needs a valid covering system")
    classes = [CongruenceClass(0, 2)]
    classes.extend(
        CongruenceClass(2 * c.residue + 1, 2 * c.modulus) for c in s.classes
    )
    return CoveringSystem(classes)


@dataclass(frozen=True)
class ModuliProfile:
    """Moduli-only fingerprint: distinct base moduli plus `top` repeated `repeats` times.

    Density base + repeats/top must be exactly 1; that invariant is what makes
    profiles candidates for exact covers, and it is enforced at construction
    so corrupted data fails loudly.
    """

    base: tuple[int, ...]
    top: int
    repeats: int

    def __post_init__(self):
        base = tuple(self.base)
        object.__setattr__(self, "base", base)
        if self.repeats < 2:
            raise ValueError("the top modulus must repeat at least twice")
        if any(b >= self.top for b in base):
            raise ValueError("base moduli must be strictly below the top")
        if any(b < 1 for b in base) or self.top < 1:
            raise ValueError("moduli must be positive")
        if list(base) != sorted(set(base)):
            raise ValueError("base moduli must be strictly increasing")
        dens = Fraction(self.repeats, self.top)
        for b in base:
            dens = dens + Fraction(1, b)
        if dens != Fraction(1):
            raise ValueError(f"profile density {dens} != 1")

    def moduli(self) -> list[int]:
        """The full moduli multiset, ascending."""
        return list(self.base) + [self.top] * self.repeats

    def sort_key(self) -> tuple:
        """Canonical order: number of distinct moduli, then lexicographic."""
        return (len(self.base) + 1, self.base + (self.top,))


def profile_of(s: CoveringSystem) -> ModuliProfile:
    """Extract the (base, top, repeats) profile of a system's moduli multiset.

    Raises NotSingleRepeated unless exactly one modulus value repeats, it is
    the largest, and it occurs at least twice.
    """
    mods = sorted(s.moduli())
    top = mods[-1]
    repeats = mods.count(top)
    base = mods[: len(mods) - repeats]
    if repeats < 2:
        raise NotSingleRepeated("the largest modulus does not repeat")
    if len(set(base)) != len(base):
        raise NotSingleRepeated("a non-maximal modulus repeats")
    return ModuliProfile(base=tuple(base), top=top, repeats=repeats)


_TERM_RE = re.compile(r"^\s*(\d+)\s+mod\s+(\d+)\s*$")


def parse_system(text: str) -> CoveringSystem:
    """Parse the system grammar: comma-separated `A mod M` terms."""
    terms = text.split(",")
    classes = []
    for term in terms:
        m = _TERM_RE.match(term)
        if not m:
            raise ValueError(f"cannot parse class {term.strip()!r}")
        residue, modulus = int(m.group(1)), int(m.group(2))
        if modulus < 1:
            raise ValueError(f"modulus must be positive in {term.strip()!r}")
        classes.append(CongruenceClass(residue, modulus))
    return CoveringSystem(classes)


def format_system(s: CoveringSystem) -> str:
    return ", ".join(str(c) for c in s.classes)


_MODULUS_RE = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_moduli(text: str) -> list[int]:
    """Parse the multiset grammar: whitespace-separated moduli.

    A `^r` suffix repeats its modulus r times, e.g. `3 6^4`.
    """
    out = []
    for token in text.split():
        m = _MODULUS_RE.match(token)
        if not m:
            raise ValueError(f"cannot parse modulus {token!r}")
        value = int(m.group(1))
        count = int(m.group(2)) if m.group(2) else 1
        if value < 1:
            raise ValueError(f"modulus must be positive: {token!r}")
        if count < 1:
            raise ValueError(f"repetition count must be positive: {token!r}")
        out.extend([value] * count)
    if not out:
        raise ValueError("empty moduli multiset")
    return sorted(out)


def format_moduli(moduli) -> str:
    """Render a multiset in the grammar, folding trailing repeats of the
    largest value into a `^r` suffix."""
    mods = sorted(moduli)
    if not mods:
        raise ValueError("empty moduli multiset")
    top = mods[-1]
    repeats = mods.count(top)
    head = mods[: len(mods) - repeats]
    parts = [str(d) for d in head]
    parts.append(f"{top}^{repeats}" if repeats > 1 else str(top))
    return " ".join(parts)
