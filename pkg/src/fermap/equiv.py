"""Labelling symmetries of fermion-qubit mappings and equivalence checking.

Two mappings are equivalent when a sequence of qubit swaps, single-qubit
Clifford basis changes, pair braids, operator sign changes and fermionic
mode swaps turns one into the other.  The decision procedure is
bounded-exhaustive: a cheap structural fingerprint rejects early, then the
search runs over qubit permutations and per-qubit letter permutations
(signs, braids and pair order are absorbed greedily).  Witnesses replay
through apply_symmetry and reproduce the target exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Union

from . import pauli
from .mapping import FermionQubitMapping, is_valid
from .pauli import PauliString

_LETTERS = ("X", "Y", "Z")

_EVEN_PERMS = ({"X": "X", "Y": "Y", "Z": "Z"},
               {"X": "Y", "Y": "Z", "Z": "X"},
               {"X": "Z", "Y": "X", "Z": "Y"})
_ALL_PERMS = tuple(
    {"X": a, "Y": b, "Z": c} for a, b, c in itertools.permutations(_LETTERS)
)


def _perm_parity(rho: dict[str, str]) -> int:
    """0 for even letter permutations (identity, 3-cycles), 1 for transpositions."""
    fixed = sum(1 for k, v in rho.items() if k == v)
    return 1 if fixed == 1 else 0


# -- symmetry operations -------------------------------------------------------

@dataclass(frozen=True)
class QubitSwap:
    """Relabel qubits: the letter on qubit i moves to qubit perm[i]."""

    perm: tuple[int, ...]


@dataclass(frozen=True)
class LocalBasisChange:
    """Single-qubit Clifford relabelling of (X, Y, Z) on one qubit.

    ``image`` lists the signed images of X, Y and Z in order.  Realizable
    exactly when the letters form a permutation whose parity matches the
    sign product (+1 for even permutations, -1 for transpositions); these
    are the 24 single-qubit Clifford images.
    """

    qubit: int
    image: tuple[tuple[str, int], tuple[str, int], tuple[str, int]]

    def __post_init__(self):
        letters = [ell for ell, _ in self.image]
        if sorted(letters) != sorted(_LETTERS):
            raise ValueError("image letters must be a permutation of X, Y, Z")
        rho = dict(zip(_LETTERS, letters))
        sign_product = 1
        for _, s in self.image:
            if s not in (1, -1):
                raise ValueError("signs must be +1 or -1")
            sign_product *= s
        want = 1 if _perm_parity(rho) == 0 else -1
        if sign_product != want:
            raise ValueError("signed letter permutation is not a Clifford image")


@dataclass(frozen=True)
class PairBraid:
    """(G_2i, G_2i+1) -> (-G_2i+1, G_2i) for direction +1, (G_2i+1, -G_2i) for -1."""

    mode: int
    direction: int = 1

    def __post_init__(self):
        if self.direction not in (1, -1):
            raise ValueError("direction must be +1 or -1")


@dataclass(frozen=True)
class SignChange:
    """Negate the single operator with the given flat index in 0..2n-1."""

    index: int


@dataclass(frozen=True)
class FermionSwap:
    """Permute mode labels: new pair i is old pair perm[i]."""

    perm: tuple[int, ...]


SymmetryOp = Union[QubitSwap, LocalBasisChange, PairBraid, SignChange, FermionSwap]


def _permute_qubits(p: PauliString, perm: tuple[int, ...]) -> PauliString:
    letters = p.letters()
    moved = ["I"] * p.n
    for i, ell in enumerate(letters):
        moved[perm[i]] = ell
    return pauli.from_letters(moved, p.display_power())


def _relabel_letters(p: PauliString, qubit: int, image) -> PauliString:
    letters = list(p.letters())
    ell = letters[qubit]
    if ell == "I":
        return p
    new_letter, sign = image[_LETTERS.index(ell)]
    letters[qubit] = new_letter
    extra = 2 if sign < 0 else 0
    return pauli.from_letters(letters, p.display_power() + extra)


def apply_symmetry(m: FermionQubitMapping, op: SymmetryOp) -> FermionQubitMapping:
    """Transformed mapping; the output is again a valid mapping."""
    if isinstance(op, QubitSwap):
        if sorted(op.perm) != list(range(m.n)):
            raise ValueError("qubit permutation must cover 0..n-1")
        pairs = tuple(
            (_permute_qubits(a, op.perm), _permute_qubits(b, op.perm)) for a, b in m.pairs
        )
        return FermionQubitMapping(m.n, pairs)
    if isinstance(op, LocalBasisChange):
        if not 0 <= op.qubit < m.n:
            raise ValueError("qubit out of range")
        pairs = tuple(
            (_relabel_letters(a, op.qubit, op.image), _relabel_letters(b, op.qubit, op.image))
            for a, b in m.pairs
        )
        return FermionQubitMapping(m.n, pairs)
    if isinstance(op, PairBraid):
        a, b = m.pairs[op.mode]
        new_pair = (b.negated(), a) if op.direction == 1 else (b, a.negated())
        pairs = list(m.pairs)
        pairs[op.mode] = new_pair
        return FermionQubitMapping(m.n, tuple(pairs))
    if isinstance(op, SignChange):
        if not 0 <= op.index < 2 * m.n:
            raise ValueError("operator index out of range")
        pairs = list(m.pairs)
        a, b = pairs[op.index // 2]
        pairs[op.index // 2] = (a.negated(), b) if op.index % 2 == 0 else (a, b.negated())
        return FermionQubitMapping(m.n, tuple(pairs))
    if isinstance(op, FermionSwap):
        if sorted(op.perm) != list(range(m.n)):
            raise ValueError("mode permutation must cover 0..n-1")
        pairs = tuple(m.pairs[op.perm[i]] for i in range(m.n))
        return FermionQubitMapping(m.n, pairs)
    raise TypeError(f"not a symmetry operation: {op!r}")


def apply_symmetries(m: FermionQubitMapping, ops) -> FermionQubitMapping:
    for op in ops:
        m = apply_symmetry(m, op)
    return m


# -- fingerprint -----------------------------------------------------------------

def fingerprint(m: FermionQubitMapping):
    """Canonical invariant under all five symmetry kinds.

    Combines the multiset of per-pair weight signatures with, per qubit,
    the multiset of unordered local letter pairs canonicalized over letter
    renamings; the qubit entries are themselves sorted.  Equal mappings
    give equal fingerprints; distinct fingerprints prove inequivalence.
    """
    weight_sig = tuple(
        sorted(tuple(sorted((a.weight(), b.weight()))) for a, b in m.pairs)
    )
    qubit_parts = []
    for q in range(m.n):
        raw = [tuple(sorted((a.letter(q), b.letter(q)))) for a, b in m.pairs]
        best = None
        for rho in _ALL_PERMS:
            renamed = sorted(
                tuple(sorted(rho.get(ell, "I") for ell in item)) for item in raw
            )
            key = tuple(renamed)
            if best is None or key < best:
                best = key
        qubit_parts.append(best)
    return (m.n, weight_sig, tuple(sorted(qubit_parts)))


# -- equivalence decision ----------------------------------------------------------

@dataclass(frozen=True)
class Equivalent:
    witness: tuple[SymmetryOp, ...]


@dataclass(frozen=True)
class Inequivalent:
    reason: str


@dataclass(frozen=True)
class Unknown:
    reason: str


def _unsigned_key(p: PauliString) -> tuple[int, int]:
    return (p.x, p.z)


def equivalent(
    m1: FermionQubitMapping, m2: FermionQubitMapping, budget: int = 200_000
) -> Equivalent | Inequivalent | Unknown:
    """Decide Definition-9 equivalence by fingerprint plus bounded search.

    The search covers qubit permutations times per-qubit unsigned letter
    permutations; pair order, braids and signs are resolved greedily per
    pair since they act independently once supports match.  Exhaustive
    whenever n! * 6^n fits the budget (n <= 4 by default); otherwise
    Unknown.  A returned witness replays m1 into m2 exactly.
    """
    if m1.n != m2.n:
        raise ValueError("mappings must have equal mode counts")
    n = m1.n
    if m1 == m2:
        return Equivalent(())
    if fingerprint(m1) != fingerprint(m2):
        return Inequivalent("fingerprints differ")
    total = 1
    for k in range(2, n + 1):
        total *= k
    total *= 6**n
    if total > budget:
        return Unknown(f"search space {total} exceeds budget {budget}")

    target_pairs: dict[frozenset, int] = {}
    for mode, (a, b) in enumerate(m2.pairs):
        target_pairs[frozenset((_unsigned_key(a), _unsigned_key(b)))] = mode

    m1_letters = [(a.letters(), b.letters()) for a, b in m1.pairs]

    for sigma in itertools.permutations(range(n)):
        for rhos in itertools.product(range(6), repeat=n):
            ok = True
            assignment: list[int | None] = [None] * n
            for mode, (la, lb) in enumerate(m1_letters):
                ka = _transform_key(la, sigma, rhos, n)
                kb = _transform_key(lb, sigma, rhos, n)
                hit = target_pairs.get(frozenset((ka, kb)))
                if hit is None:
                    ok = False
                    break
                assignment[hit] = mode
            if not ok or any(v is None for v in assignment):
                continue
            ops = _build_witness(m1, m2, sigma, rhos, assignment)
            if ops is not None:
                return Equivalent(ops)
    return Inequivalent("no labelling symmetry matches")


def _transform_key(letters, sigma, rhos, n) -> tuple[int, int]:
    x = z = 0
    for i, ell in enumerate(letters):
        if ell == "I":
            continue
        q = sigma[i]
        new = _ALL_PERMS[rhos[q]][ell]
        if new in ("X", "Y"):
            x |= 1 << q
        if new in ("Z", "Y"):
            z |= 1 << q
    return (x, z)


def _build_witness(m1, m2, sigma, rhos, assignment) -> tuple[SymmetryOp, ...] | None:
    ops: list[SymmetryOp] = []
    if tuple(sigma) != tuple(range(m1.n)):
        ops.append(QubitSwap(tuple(sigma)))
    for q in range(m1.n):
        rho = _ALL_PERMS[rhos[q]]
        if all(rho[ell] == ell for ell in _LETTERS):
            continue
        if _perm_parity(rho) == 0:
            image = tuple((rho[ell], 1) for ell in _LETTERS)
        else:
            fixed = next(ell for ell in _LETTERS if rho[ell] == ell)
            image = tuple((rho[ell], -1 if ell == fixed else 1) for ell in _LETTERS)
        ops.append(LocalBasisChange(q, image))  # type: ignore[arg-type]
    if tuple(assignment) != tuple(range(m1.n)):
        ops.append(FermionSwap(tuple(assignment)))
    current = apply_symmetries(m1, ops)
    for mode in range(m1.n):
        a, b = current.pairs[mode]
        c, d = m2.pairs[mode]
        if _unsigned_key(a) != _unsigned_key(c):
            ops.append(PairBraid(mode, 1))
            a, b = b.negated(), a
        if a != c:
            ops.append(SignChange(2 * mode))
            a = a.negated()
        if b != d:
            ops.append(SignChange(2 * mode + 1))
            b = b.negated()
        if (a, b) != (c, d):
            return None
    if apply_symmetries(m1, ops) != m2:
        return None
    return tuple(ops)


# -- two-mode templates ---------------------------------------------------------------

class TwoModeTemplate(Enum):
    JW = "JW_template"
    BK = "BK_template"
    PRODUCT_BREAKING = "ProductBreaking_template"


def classify_two_mode(m: FermionQubitMapping) -> TwoModeTemplate:
    """Template of a validated two-mode mapping by pair weight signature.

    One single-qubit pair plus one weight-2 pair is the Jordan-Wigner
    shape; one mixed pair plus a weight-2 pair is Bravyi-Kitaev; two mixed
    pairs split the single-qubit operators and break the product vacuum.
    """
    if m.n != 2:
        raise ValueError("two-mode classification needs n == 2")
    if not is_valid(m):
        raise ValueError("mapping does not satisfy the anticommutation relations")
    sig = tuple(sorted(tuple(sorted((a.weight(), b.weight()))) for a, b in m.pairs))
    if sig == ((1, 1), (2, 2)):
        return TwoModeTemplate.JW
    if sig == ((1, 2), (2, 2)):
        return TwoModeTemplate.BK
    if sig == ((1, 2), (1, 2)):
        return TwoModeTemplate.PRODUCT_BREAKING
    raise ValueError(f"impossible two-mode weight signature {sig}")


@dataclass(frozen=True)
class CensusResult:
    counts: dict[TwoModeTemplate, int]
    total: int


def two_mode_census() -> CensusResult:
    """Classify every ordered 4-tuple of anticommuting unsigned 2-qubit Paulis."""
    strings = [
        pauli.from_letters((a, b))
        for a in ("I",) + _LETTERS
        for b in ("I",) + _LETTERS
        if (a, b) != ("I", "I")
    ]
    counts = {t: 0 for t in TwoModeTemplate}
    total = 0
    for quad in itertools.permutations(strings, 4):
        good = all(
            pauli.anticommutes(quad[i], quad[j]) for i in range(4) for j in range(i + 1, 4)
        )
        if not good:
            continue
        m = FermionQubitMapping(2, ((quad[0], quad[1]), (quad[2], quad[3])))
        counts[classify_two_mode(m)] += 1
        total += 1
    return CensusResult(counts, total)


# -- witness serialization ----------------------------------------------------------

def format_ops(ops) -> str:
    """Line-per-op text log, replayable by parse_ops."""
    lines = []
    for op in ops:
        if isinstance(op, QubitSwap):
            lines.append("qubit-swap " + " ".join(map(str, op.perm)))
        elif isinstance(op, LocalBasisChange):
            img = " ".join(
                f"{src}->{'-' if s < 0 else ''}{dst}"
                for src, (dst, s) in zip(_LETTERS, op.image)
            )
            lines.append(f"basis-change {op.qubit} {img}")
        elif isinstance(op, PairBraid):
            lines.append(f"pair-braid {op.mode} {'+' if op.direction == 1 else '-'}")
        elif isinstance(op, SignChange):
            lines.append(f"sign-change {op.index}")
        elif isinstance(op, FermionSwap):
            lines.append("fermion-swap " + " ".join(map(str, op.perm)))
        else:
            raise TypeError(f"not a symmetry operation: {op!r}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_ops(text: str) -> tuple[SymmetryOp, ...]:
    ops: list[SymmetryOp] = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "qubit-swap":
            ops.append(QubitSwap(tuple(int(t) for t in rest)))
        elif head == "basis-change":
            qubit = int(rest[0])
            image = []
            for tok in rest[1:]:
                src, dst = tok.split("->")
                sign = -1 if dst.startswith("-") else 1
                image.append((dst.lstrip("-"), sign))
            ops.append(LocalBasisChange(qubit, tuple(image)))  # type: ignore[arg-type]
        elif head == "pair-braid":
            ops.append(PairBraid(int(rest[0]), 1 if rest[1] == "+" else -1))
        elif head == "sign-change":
            ops.append(SignChange(int(rest[0])))
        elif head == "fermion-swap":
            ops.append(FermionSwap(tuple(int(t) for t in rest)))
        else:
            raise ValueError(f"unknown op line {line!r}")
    return tuple(ops)
