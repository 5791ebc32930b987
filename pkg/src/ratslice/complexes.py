"""Filtered GF(2) chain complexes and their tau invariants.

A FilteredComplex is a finite chain complex over GF(2) whose generators
carry an exact-rational Maslov grading, an exact-rational Alexander
grading, and a Spin^c label.  The differential drops Maslov by exactly 1,
never raises Alexander, preserves the Spin^c label, and squares to zero.
The Alexander grading of a chain is the maximum over its support, so every
Alexander level j cuts out a subcomplex (all generators with A <= j).

For a nonzero homology class alpha, tau(alpha) is the least level j at
which alpha is hit by the map H(level-j subcomplex) -> H(total complex);
equivalently the minimum over cycle representatives z of alpha of the top
Alexander grading in z.  We compute it by eliminating the boundary columns
with row priority "highest Alexander grading first": the canonical residue
of a cycle modulo boundaries is then the representative whose top grading
is smallest possible, and tau is the grading of its leading row.  The
ascending level sweep and the exhaustive minimum over representatives
agree with this by exactness of the canonical form; the test suite checks
all three routes against each other on small complexes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from .gf2 import VectorGF2, new_engine

FULL_ENUMERATION_CAP = 20


class InvalidComplexError(ValueError):
    """The generator/differential data violate a complex invariant."""


class DeductionError(ValueError):
    """A survivor deduction is infeasible; the message names the obstruction."""


class Generator(NamedTuple):
    id: str
    maslov: Fraction
    alexander: Fraction
    spinc: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class FloerClass:
    """A nonzero homology class, carried by a cycle representative."""

    representative: VectorGF2
    spinc: Optional[str] = None
    maslov: Optional[Fraction] = None


@dataclass(frozen=True)
class TauSpectrum:
    """tau values per homology class, with the extremes and their spread."""

    per_class: dict[str, Fraction]
    tau_max: Fraction
    tau_min: Fraction
    breadth: Fraction
    enumeration_complete: bool

    def __post_init__(self):
        if self.breadth != self.tau_max - self.tau_min or self.breadth < 0:
            raise ValueError("breadth must equal tau_max - tau_min >= 0")
        for cid, value in self.per_class.items():
            if not self.tau_min <= value <= self.tau_max:
                raise ValueError(f"class {cid}: tau outside [tau_min, tau_max]")


class FilteredComplex:
    """Immutable filtered complex; invariants verified at construction."""

    def __init__(
        self,
        generators: Iterable[Generator | tuple[str, Fraction, Fraction, str]],
        differential: Mapping[str, Iterable[str]],
        _checked: bool = False,
    ):
        self.generators: tuple[Generator, ...] = tuple(
            g if isinstance(g, Generator) else Generator(*g) for g in generators
        )
        self.differential: dict[str, frozenset[str]] = {
            src: frozenset(dsts)
            for src, dsts in differential.items()
            if frozenset(dsts)
        }
        self.index = {g.id: i for i, g in enumerate(self.generators)}
        if not _checked:
            report = validate(self)
            if not report.ok:
                raise InvalidComplexError("; ".join(report.violations))

    @classmethod
    def unchecked(cls, generators, differential) -> "FilteredComplex":
        """Skip construction-time validation (for building report examples)."""
        return cls(generators, differential, _checked=True)

    def __len__(self) -> int:
        return len(self.generators)

    def generator(self, gid: str) -> Generator:
        return self.generators[self.index[gid]]

    @cached_property
    def boundary_columns(self) -> list[int]:
        """Column bitsets of the differential in generator input order."""
        cols = []
        for g in self.generators:
            bits = 0
            for dst in self.differential.get(g.id, ()):
                bits |= 1 << self.index[dst]
            cols.append(bits)
        return cols

    def boundary_of(self, bits: int) -> int:
        out = 0
        cols = self.boundary_columns
        while bits:
            low = bits & -bits
            out ^= cols[low.bit_length() - 1]
            bits ^= low
        return out

    # Row order for tau: highest Alexander grading first, then input order.
    @cached_property
    def _tau_row_order(self) -> tuple[list[int], list[int]]:
        order = sorted(range(len(self.generators)),
                       key=lambda i: (-self.generators[i].alexander, i))
        position = [0] * len(order)
        for new, old in enumerate(order):
            position[old] = new
        return order, position

    def _permute(self, bits: int) -> int:
        _, position = self._tau_row_order
        out = 0
        while bits:
            low = bits & -bits
            out |= 1 << position[low.bit_length() - 1]
            bits ^= low
        return out

    @cached_property
    def _tau_engine(self):
        """Boundary columns eliminated in descending-Alexander row order."""
        engine = new_engine(len(self.generators), track=False)
        for col in self.boundary_columns:
            engine.add_column(self._permute(col))
        return engine

    @cached_property
    def alexander_levels(self) -> list[Fraction]:
        return sorted({g.alexander for g in self.generators})


def validate(complex_: FilteredComplex) -> ValidationReport:
    """Check all four datatype invariants; list every violation found."""
    violations: list[str] = []
    seen: set[str] = set()
    for g in complex_.generators:
        if g.id in seen:
            violations.append(f"duplicate generator id {g.id!r}")
        seen.add(g.id)
    for src, dsts in complex_.differential.items():
        if src not in complex_.index:
            violations.append(f"differential source {src!r} is not a generator")
            continue
        gs = complex_.generator(src)
        for dst in sorted(dsts):
            if dst not in complex_.index:
                violations.append(f"differential target {dst!r} is not a generator")
                continue
            gd = complex_.generator(dst)
            if gd.maslov != gs.maslov - 1:
                violations.append(
                    f"arrow {src} -> {dst}: Maslov drop "
                    f"{gs.maslov - gd.maslov}, expected 1"
                )
            if gd.alexander > gs.alexander:
                violations.append(
                    f"arrow {src} -> {dst}: Alexander grading raised "
                    f"({gs.alexander} -> {gd.alexander})"
                )
            if gd.spinc != gs.spinc:
                violations.append(
                    f"arrow {src} -> {dst}: Spin^c label changed "
                    f"({gs.spinc} -> {gd.spinc})"
                )
    if not violations:
        cols = complex_.boundary_columns
        for g in complex_.generators:
            square = 0
            for dst in complex_.differential.get(g.id, ()):
                square ^= cols[complex_.index[dst]]
            if square:
                offender = min(
                    complex_.generators[i].id
                    for i in _bit_positions(square)
                )
                violations.append(
                    f"d o d != 0 starting at {g.id} (hits {offender} oddly)"
                )
    return ValidationReport(tuple(violations))


def _bit_positions(bits: int):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def homology_ranks(
    complex_: FilteredComplex,
) -> dict[tuple[str, Fraction], int]:
    """Rank of the homology per (Spin^c label, Maslov grading).

    The differential preserves Spin^c and drops Maslov by 1, so it is block
    diagonal over (spinc, maslov) sources; the rank at a bigrading is
    dim - rank(boundary out) - rank(boundary in).
    """
    blocks: dict[tuple[str, Fraction], list[int]] = {}
    for i, g in enumerate(complex_.generators):
        blocks.setdefault((g.spinc, g.maslov), []).append(i)
    cols = complex_.boundary_columns
    block_rank: dict[tuple[str, Fraction], int] = {}
    for key, members in blocks.items():
        engine = new_engine(len(complex_.generators), track=False)
        for i in members:
            engine.add_column(cols[i])
        block_rank[key] = engine.rank
    ranks: dict[tuple[str, Fraction], int] = {}
    for (s, m), members in blocks.items():
        r = len(members) - block_rank[(s, m)] - block_rank.get((s, m + 1), 0)
        if r:
            ranks[(s, m)] = r
    return ranks


def total_homology_rank(complex_: FilteredComplex) -> int:
    return sum(homology_ranks(complex_).values())


def homology_basis(complex_: FilteredComplex) -> list[FloerClass]:
    """Deterministic basis of the total homology, one cycle per class.

    Representatives are canonically reduced modulo boundaries and are
    homogeneous in (Spin^c, Maslov); blocks are visited in sorted order.
    """
    n = len(complex_.generators)
    blocks: dict[tuple[str, Fraction], list[int]] = {}
    for i, g in enumerate(complex_.generators):
        blocks.setdefault((g.spinc, g.maslov), []).append(i)
    cols = complex_.boundary_columns
    basis: list[FloerClass] = []
    for (s, m) in sorted(blocks, key=lambda key: (key[0], -key[1])):
        members = blocks[(s, m)]
        incoming = new_engine(n, track=False)
        for i in blocks.get((s, m + 1), ()):
            incoming.add_column(cols[i])
        cycles = new_engine(n, track=True)
        for i in members:
            cycles.add_column(cols[i])
        quotient = new_engine(n, track=False)
        for combo in cycles.kernel_combos:
            bits = 0
            for pos in _bit_positions(combo):
                bits |= 1 << members[pos]
            residue = incoming.reduce(bits)
            if not residue:
                continue
            before = quotient.rank
            quotient.add_column(residue)
            if quotient.rank > before:
                basis.append(
                    FloerClass(
                        representative=VectorGF2.from_int(n, residue),
                        spinc=s,
                        maslov=m,
                    )
                )
    return basis


def _check_cycle(complex_: FilteredComplex, alpha: FloerClass) -> int:
    rep = alpha.representative
    if rep.length != len(complex_.generators):
        raise ValueError(
            f"representative length {rep.length} != {len(complex_.generators)} generators"
        )
    bits = rep.to_int()
    if complex_.boundary_of(bits):
        raise ValueError("representative is not a cycle")
    return bits


def tau(complex_: FilteredComplex, alpha: FloerClass) -> Fraction:
    """Minimal Alexander level at which alpha appears in homology."""
    bits = _check_cycle(complex_, alpha)
    residue = complex_._tau_engine.reduce(complex_._permute(bits))
    if not residue:
        raise ValueError("class is zero in homology")
    order, _ = complex_._tau_row_order
    leading = (residue & -residue).bit_length() - 1
    return complex_.generators[order[leading]].alexander


def tau_by_level_sweep(complex_: FilteredComplex, alpha: FloerClass) -> Fraction:
    """tau by the ascending level sweep with image-membership tests.

    Visits only Alexander values realized by generators.  At level j the
    class appears iff its representative differs by a boundary from a cycle
    supported in the level-j subcomplex.  Quadratic in the number of
    levels; tau() computes the same number with one elimination.
    """
    bits = _check_cycle(complex_, alpha)
    n = len(complex_.generators)
    cols = complex_.boundary_columns
    for level in complex_.alexander_levels:
        engine = new_engine(n, track=False)
        sub = [i for i, g in enumerate(complex_.generators) if g.alexander <= level]
        subcycles = new_engine(n, track=True)
        for i in sub:
            subcycles.add_column(cols[i])
        for combo in subcycles.kernel_combos:
            cycle_bits = 0
            for pos in _bit_positions(combo):
                cycle_bits |= 1 << sub[pos]
            engine.add_column(cycle_bits)
        for col in cols:
            engine.add_column(col)
        if engine.contains(bits):
            return level
    raise ValueError("class is zero in homology")


def tau_spectrum(complex_: FilteredComplex) -> TauSpectrum:
    """tau of every nonzero class (rank <= 20), else of a basis only."""
    basis = homology_basis(complex_)
    if not basis:
        raise ValueError("total homology is zero")
    rank = len(basis)
    reps = [complex_._permute(c.representative.to_int()) for c in basis]
    engine = complex_._tau_engine
    order, _ = complex_._tau_row_order

    def tau_of(bits: int) -> Fraction:
        residue = engine.reduce(bits)
        if not residue:
            raise AssertionError("combination of basis classes reduced to zero")
        leading = (residue & -residue).bit_length() - 1
        return complex_.generators[order[leading]].alexander

    per_class: dict[str, Fraction] = {}
    if rank <= FULL_ENUMERATION_CAP:
        # Gray-code walk: each step XORs one basis representative.
        current = 0
        mask = 0
        for step in range(1, 1 << rank):
            flip = (step & -step).bit_length() - 1
            current ^= reps[flip]
            mask ^= 1 << flip
            cid = "+".join(f"b{i}" for i in _bit_positions(mask))
            per_class[cid] = tau_of(current)
        complete = True
    else:
        for i, bits in enumerate(reps):
            per_class[f"b{i}"] = tau_of(bits)
        complete = False
    values = per_class.values()
    tau_max, tau_min = max(values), min(values)
    return TauSpectrum(
        per_class=per_class,
        tau_max=tau_max,
        tau_min=tau_min,
        breadth=tau_max - tau_min,
        enumeration_complete=complete,
    )


def connected_sum_shift(spectrum: TauSpectrum, t: Fraction) -> TauSpectrum:
    """Connected sum with a local knot shifts every tau value uniformly."""
    t = Fraction(t)
    return TauSpectrum(
        per_class={cid: v + t for cid, v in spectrum.per_class.items()},
        tau_max=spectrum.tau_max + t,
        tau_min=spectrum.tau_min + t,
        breadth=spectrum.breadth,
        enumeration_complete=spectrum.enumeration_complete,
    )


RankEntry = tuple[Fraction, Optional[Fraction], int]


def _normalize_ranks(
    ranks: Sequence[RankEntry],
) -> list[tuple[Fraction, Optional[Fraction], int]]:
    merged: dict[tuple[Fraction, Optional[Fraction]], int] = {}
    for alexander, maslov, count in ranks:
        if count < 0:
            raise DeductionError("negative rank")
        key = (Fraction(alexander), None if maslov is None else Fraction(maslov))
        merged[key] = merged.get(key, 0) + count
    entries = [(a, m, c) for (a, m), c in merged.items() if c > 0]
    entries.sort(key=lambda e: (e[0], e[1] if e[1] is not None else Fraction(0)))
    return entries


def survivor_deduction(
    ranks: Sequence[RankEntry], target_rank: int
) -> frozenset[tuple[Fraction, ...]]:
    """All multisets of Alexander gradings that can survive cancellation.

    One cancellation removes a unit of rank from each member of a pair of
    bigradings whose Maslov gradings differ by exactly 1 and whose
    higher-Maslov member sits at strictly greater Alexander grading
    (page >= 1 differentials strictly drop the filtration).  Entries with
    maslov None use the Alexander-only rule.  Outcomes are collected by
    depth-first search memoized on the remaining rank vector.
    """
    entries = _normalize_ranks(ranks)
    total = sum(c for _, _, c in entries)
    if total < target_rank:
        raise DeductionError(
            f"total rank {total} is below the target rank {target_rank}"
        )
    if (total - target_rank) % 2:
        raise DeductionError(
            f"parity mismatch: cancellations remove rank in pairs, but "
            f"total {total} - target {target_rank} is odd"
        )
    pairs: list[tuple[int, int]] = []
    for hi, (a_hi, m_hi, _) in enumerate(entries):
        for lo, (a_lo, m_lo, _) in enumerate(entries):
            if a_hi <= a_lo:
                continue
            if m_hi is not None and m_lo is not None and m_hi != m_lo + 1:
                continue
            pairs.append((hi, lo))
    alexanders = [a for a, _, _ in entries]
    memo: dict[tuple[int, ...], frozenset[tuple[Fraction, ...]]] = {}

    def search(vector: tuple[int, ...]) -> frozenset[tuple[Fraction, ...]]:
        if sum(vector) == target_rank:
            survivors = []
            for value, count in zip(alexanders, vector):
                survivors.extend([value] * count)
            return frozenset({tuple(survivors)})
        cached = memo.get(vector)
        if cached is not None:
            return cached
        outcomes: set[tuple[Fraction, ...]] = set()
        for hi, lo in pairs:
            if vector[hi] and vector[lo]:
                nxt = list(vector)
                nxt[hi] -= 1
                nxt[lo] -= 1
                outcomes |= search(tuple(nxt))
        result = frozenset(outcomes)
        memo[vector] = result
        return result

    outcomes = search(tuple(c for _, _, c in entries))
    if not outcomes:
        raise DeductionError(
            "target rank unreachable: no sequence of cancellable pairs "
            "(Maslov difference 1, Alexander strictly dropping) reaches it"
        )
    return outcomes


def min_breadth_lower_bound(
    ranks: Sequence[RankEntry], target_rank: int
) -> Fraction:
    """Certified lower bound for tau breadth from the cancellation model.

    The true surviving classes realize one outcome, so the minimum over
    all outcomes of (top surviving grading - bottom surviving grading)
    bounds tau_max - tau_min from below.
    """
    if target_rank < 1:
        raise DeductionError("breadth needs at least one survivor")
    outcomes = survivor_deduction(ranks, target_rank)
    return min(max(out) - min(out) for out in outcomes)
