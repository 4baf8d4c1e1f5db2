"""Affine and linear encodings of the Fock basis.

An affine encoding sends occupation vector f to the computational basis
state |G(f xor b)> for an invertible binary matrix G and offset b.  This
module builds the stabiliser tableau of the encoding Clifford, the exact
Pauli representations of its Majorana operators, detects whether a given
mapping is such an encoding, and reduces affine encodings to linear ones
(which differ only in operator signs).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2, mapping as fqm, pauli
from .gf2 import BinMatrix
from .mapping import FermionQubitMapping
from .pauli import PauliString


@dataclass(frozen=True)
class AffineEncoding:
    """Fock-basis encoding f -> |G(f xor b)>; linear when b == 0."""

    g: BinMatrix
    b: int

    def __post_init__(self):
        if self.b >> self.g.n:
            raise ValueError("offset has bits beyond the matrix width")
        gf2.invert(self.g)  # raises Singular if g is not invertible

    @property
    def n(self) -> int:
        return self.g.n

    def is_linear(self) -> bool:
        return self.b == 0


@dataclass(frozen=True)
class NotClassical:
    """Witness that a mapping does not classically encode the Fock basis.

    ``reason`` explains the failure; when a specific occupation vector
    maps outside the plain computational basis it is reported in ``f``
    together with the offending symbolic state.
    """

    reason: str
    f: int | None = None
    state: object | None = None

    def __str__(self) -> str:
        if self.f is not None:
            return f"{self.reason} (f={self.f:b}, state={self.state})"
        return self.reason


@dataclass(frozen=True)
class StabiliserTableau:
    """Symplectic images of X_0..X_{n-1}, Z_0..Z_{n-1} under a Clifford.

    Column c packs the image of the c-th generator as a 2n-bit vector
    (x-part in bits 0..n-1, z-part in bits n..2n-1); ``signs`` holds one
    sign bit per column.  Equal tableaux mean equal Cliffords up to a
    global phase.
    """

    n: int
    columns: tuple[int, ...]
    signs: int

    def __post_init__(self):
        if len(self.columns) != 2 * self.n:
            raise ValueError("need 2n columns")

    def image(self, c: int) -> PauliString:
        """The signed Pauli image of generator c (X_c for c < n, else Z_{c-n})."""
        vec = self.columns[c]
        x = vec & ((1 << self.n) - 1)
        z = vec >> self.n
        sign_power = 2 * ((self.signs >> c) & 1)
        # phase convention: the stored operator is (+/-) X^x Z^z with the
        # y-count folded in so the displayed coefficient is exactly +/-1
        return PauliString(self.n, x, z, (x & z).bit_count() + sign_power)

    def dump(self) -> str:
        """2n rows of 2n+1 bits: tableau matrix rows, then the sign bit."""
        lines = []
        for r in range(2 * self.n):
            bits = "".join(str((col >> r) & 1) for col in self.columns)
            bits += str((self.signs >> r) & 1)
            lines.append(bits)
        return "\n".join(lines) + "\n"


def tableau_of_affine(enc: AffineEncoding) -> StabiliserTableau:
    """Block tableau: G top-left, (G^-1)^T bottom-right, sign column (0,b)."""
    n = enc.n
    ginv = gf2.invert(enc.g)
    cols = []
    for i in range(n):  # X_i -> X_{U(i)}: x-part is column i of G
        cols.append(enc.g.column(i))
    for i in range(n):  # Z_i -> (-1)^{b_i} Z_{F(i)}: z-part is row i of G^-1
        cols.append(ginv.rows[i] << n)
    signs = enc.b << n
    return StabiliserTableau(n, tuple(cols), signs)


def conjugate_via_tableau(tab: StabiliserTableau, p: PauliString) -> PauliString:
    """Image of p under the tableau's Clifford, signs and phase exact."""
    if p.n != tab.n:
        raise ValueError("dimension mismatch")
    factors = [pauli.identity(p.n).times_i(p.phase)]
    for j in range(p.n):
        if (p.x >> j) & 1:
            factors.append(tab.image(j))
    for j in range(p.n):
        if (p.z >> j) & 1:
            factors.append(tab.image(p.n + j))
    return pauli.multiply_all(factors)


def majoranas_of_affine(enc: AffineEncoding) -> FermionQubitMapping:
    """Exact Pauli pairs of the affine encoding f -> |G(f xor b)>.

    G_{2i}   = (-1)^{b_0+..+b_{i-1}} X_{U(i)} Z_{P(i)}
    G_{2i+1} = i (-1)^{b_0+..+b_i}   X_{U(i)} Z_{R(i)}

    For b = 0 this is the linear-encoding formula; the vacuum is |G b>.
    """
    n = enc.n
    pairs = []
    prefix = 0  # running parity of b_0..b_{i-1}
    for i in range(n):
        u, _f, p_set, r_set = gf2.ufpr_sets(enc.g, i)
        u_mask = _mask(u)
        bi = (enc.b >> i) & 1
        even = PauliString(n, u_mask, _mask(p_set), 2 * prefix)
        odd = PauliString(n, u_mask, _mask(r_set), 1 + 2 * ((prefix + bi) % 2))
        pairs.append((even, odd))
        prefix = (prefix + bi) % 2
    return FermionQubitMapping(n, tuple(pairs))


def _mask(indices) -> int:
    out = 0
    for j in indices:
        out |= 1 << j
    return out


def detect_classical(
    m: FermionQubitMapping, extra_samples: int | None = None, seed: int = 0
) -> AffineEncoding | NotClassical:
    """Decide whether m classically encodes the Fock basis; recover (G, b).

    The symbolic vacuum must be a plain computational basis state |q>.
    Candidate G is read off the X/Y supports of the even Majoranas and
    b = G^-1 q; the n+1 states {vacuum, single excitations} are then
    verified symbolically along with a seeded sample of multi-excitation
    vectors (2n by default).
    """
    vac = fqm.vacuum_state(m)
    if isinstance(vac, fqm.NonProduct):
        return NotClassical(f"entangled vacuum: {vac}")
    if not vac.is_computational():
        return NotClassical("vacuum is a product state outside the computational basis", 0, vac)
    q = vac.bits()

    cols = [m.pairs[i][0].x for i in range(m.n)]  # X/Y support of G_{2i}
    g = BinMatrix(m.n, tuple(cols)).transpose()  # column i = flip pattern of mode i
    try:
        ginv = gf2.invert(g)
    except gf2.Singular:
        return NotClassical("excitation flip patterns are not linearly independent")
    b = gf2.mat_vec(ginv, q)
    enc = AffineEncoding(g, b)

    probes = [0] + [1 << j for j in range(m.n)]
    if extra_samples is None:
        extra_samples = 2 * m.n
    if m.n > 1:
        import random

        rng = random.Random(seed)
        for _ in range(extra_samples):
            probes.append(rng.randrange(1 << m.n))
    for f in probes:
        state = fqm.fock_state(m, f)
        if state.phase != 0 or not state.is_computational():
            return NotClassical("Fock state outside the +1 computational basis", f, state)
        if state.bits() != gf2.mat_vec(enc.g, f ^ enc.b):
            return NotClassical("Fock state disagrees with the affine law", f, state)
    return enc


def affine_to_linear(
    m: FermionQubitMapping, enc: AffineEncoding
) -> tuple[FermionQubitMapping, int]:
    """The linear encoding with the same G, plus per-operator sign flips.

    Conjugating by X on the qubits selected by b only flips signs, so the
    returned mapping's 2n operators match m's up to sign; bit i of the
    returned mask is set where operator i changed sign.
    """
    expected = majoranas_of_affine(enc)
    if expected != m:
        raise ValueError("mapping does not match the claimed affine encoding")
    linear = majoranas_of_affine(AffineEncoding(enc.g, 0))
    flips = 0
    for i, (got, want) in enumerate(zip(m.gammas, linear.gammas)):
        if (got.x, got.z) != (want.x, want.z):
            raise AssertionError("unsigned operators of affine and linear encodings differ")
        if got.phase != want.phase:
            flips |= 1 << i
    return linear, flips
