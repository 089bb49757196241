"""Exact operator algebra for Majorana/Clifford generators.

Operators live on n qubits via the Jordan-Wigner encoding.  A PauliTerm is
i^phase * X(x)Z(z) with bit-mask exponents, multiplied with exact phase
bookkeeping; an OperatorSum carries Gaussian-rational coefficients so that
projector identities can be checked without floating point.  DenseOperator
is the numpy backend used for cross-validation, with a fixed tolerance.

Basis convention: qubit j corresponds to bit j of a computational index
(little-endian), matching the bit-packing of gf2.BitVector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapacityError, PreconditionError
from .gf2 import BitVector
from .qgeometry import q_form

#: Absolute entrywise tolerance for dense-operator comparisons.
TAU = 1e-9

DEFAULT_MAX_DENSE_QUBITS = 12

_PHASE_LABEL = {0: "+1", 1: "+i", 2: "-1", 3: "-i"}
_LABEL_PHASE = {v: k for k, v in _PHASE_LABEL.items()}


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    real: Fraction
    imag: Fraction

    @classmethod
    def of(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(Fraction(value), Fraction(0))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.real + other.real, self.imag + other.imag)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.real - other.real, self.imag - other.imag)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.real * other.real - self.imag * other.imag,
            self.real * other.imag + self.imag * other.real,
        )

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.real, -self.imag)

    def __bool__(self) -> bool:
        return bool(self.real) or bool(self.imag)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.real, -self.imag)

    def reciprocal(self) -> "GaussianRational":
        d = self.real * self.real + self.imag * self.imag
        if not d:
            raise ZeroDivisionError("reciprocal of zero")
        return GaussianRational(self.real / d, -self.imag / d)

    def times_i_power(self, k: int) -> "GaussianRational":
        k &= 3
        if k == 0:
            return self
        if k == 1:
            return GaussianRational(-self.imag, self.real)
        if k == 2:
            return -self
        return GaussianRational(self.imag, -self.real)

    def to_complex(self) -> complex:
        return complex(self.real) + 1j * complex(self.imag)


_GR_ZERO = GaussianRational(Fraction(0), Fraction(0))
_GR_ONE = GaussianRational(Fraction(1), Fraction(0))


@dataclass(frozen=True, slots=True)
class PauliTerm:
    """i^phase_exponent * X(x_mask) Z(z_mask) on x_mask.length qubits."""

    phase_exponent: int
    x_mask: BitVector
    z_mask: BitVector

    def __post_init__(self):
        if self.x_mask.length != self.z_mask.length:
            raise PreconditionError("x and z masks must have equal length")
        object.__setattr__(self, "phase_exponent", self.phase_exponent & 3)

    @classmethod
    def identity(cls, qubits: int) -> "PauliTerm":
        return cls(0, BitVector.zeros(qubits), BitVector.zeros(qubits))

    @property
    def qubits(self) -> int:
        return self.x_mask.length

    @property
    def is_identity_mask(self) -> bool:
        return self.x_mask.is_zero and self.z_mask.is_zero

    def __mul__(self, other: "PauliTerm") -> "PauliTerm":
        # Z(z1) X(x2) = (-1)^(z1.x2) X(x2) Z(z1)
        phase = self.phase_exponent + other.phase_exponent + 2 * self.z_mask.dot(other.x_mask)
        return PauliTerm(phase, self.x_mask ^ other.x_mask, self.z_mask ^ other.z_mask)

    def mul_phase(self, k: int) -> "PauliTerm":
        return PauliTerm(self.phase_exponent + k, self.x_mask, self.z_mask)

    def adjoint(self) -> "PauliTerm":
        # (X(x)Z(z))^dag = Z(z)X(x) = (-1)^(x.z) X(x)Z(z)
        phase = -self.phase_exponent + 2 * self.x_mask.dot(self.z_mask)
        return PauliTerm(phase, self.x_mask, self.z_mask)

    @property
    def is_hermitian(self) -> bool:
        return (self.phase_exponent - self.x_mask.dot(self.z_mask)) % 2 == 0

    def commutes_with(self, other: "PauliTerm") -> bool:
        return (self.x_mask.dot(other.z_mask) ^ self.z_mask.dot(other.x_mask)) == 0

    def label(self) -> str:
        """Text form: phase token then letters, e.g. '-i XZIY'.

        The token is the coefficient of the literal Pauli letters, so Y
        positions absorb one factor of i each relative to the XZ encoding.
        """
        y_count = (self.x_mask.bits & self.z_mask.bits).bit_count()
        token = _PHASE_LABEL[(self.phase_exponent - y_count) % 4]
        letters = []
        for j in range(self.qubits):
            pair = (self.x_mask[j], self.z_mask[j])
            letters.append({(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}[pair])
        return token + " " + "".join(letters)

    @classmethod
    def from_label(cls, text: str) -> "PauliTerm":
        parts = text.split()
        if len(parts) != 2 or parts[0] not in _LABEL_PHASE:
            raise PreconditionError(f"malformed Pauli label: {text!r}")
        token, letters = parts
        x = z = 0
        for j, ch in enumerate(letters):
            if ch == "X":
                x |= 1 << j
            elif ch == "Z":
                z |= 1 << j
            elif ch == "Y":
                x |= 1 << j
                z |= 1 << j
            elif ch != "I":
                raise PreconditionError(f"bad Pauli letter {ch!r} in {text!r}")
        n = len(letters)
        y_count = (x & z).bit_count()
        phase = (_LABEL_PHASE[token] + y_count) % 4
        return cls(phase, BitVector(n, x), BitVector(n, z))

    def __str__(self) -> str:
        return self.label()


class OperatorSum:
    """A finite sum of Pauli terms with exact complex-rational coefficients.

    Terms are keyed by (x_mask, z_mask); the per-term phase is folded into
    the coefficient, and zero coefficients are pruned, so equal operators
    compare equal.
    """

    __slots__ = ("qubits", "terms")

    def __init__(self, qubits: int, terms: dict | None = None):
        self.qubits = qubits
        self.terms: dict[tuple[BitVector, BitVector], GaussianRational] = {
            k: v for k, v in (terms or {}).items() if v
        }

    @classmethod
    def zero(cls, qubits: int) -> "OperatorSum":
        return cls(qubits)

    @classmethod
    def identity(cls, qubits: int) -> "OperatorSum":
        return cls.from_term(PauliTerm.identity(qubits))

    @classmethod
    def from_term(cls, term: PauliTerm, coeff=1) -> "OperatorSum":
        c = GaussianRational.of(coeff).times_i_power(term.phase_exponent)
        return cls(term.qubits, {(term.x_mask, term.z_mask): c})

    def _check(self, other: "OperatorSum") -> None:
        if self.qubits != other.qubits:
            raise PreconditionError("operator qubit counts differ")

    def __add__(self, other: "OperatorSum") -> "OperatorSum":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, _GR_ZERO) + v
        return OperatorSum(self.qubits, out)

    def __sub__(self, other: "OperatorSum") -> "OperatorSum":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, _GR_ZERO) - v
        return OperatorSum(self.qubits, out)

    def scale(self, factor) -> "OperatorSum":
        f = GaussianRational.of(factor)
        return OperatorSum(self.qubits, {k: v * f for k, v in self.terms.items()})

    def __mul__(self, other: "OperatorSum") -> "OperatorSum":
        self._check(other)
        out: dict = {}
        for (x1, z1), c1 in self.terms.items():
            for (x2, z2), c2 in other.terms.items():
                key = (x1 ^ x2, z1 ^ z2)
                c = (c1 * c2).times_i_power(2 * z1.dot(x2))
                out[key] = out.get(key, _GR_ZERO) + c
        return OperatorSum(self.qubits, out)

    def adjoint(self) -> "OperatorSum":
        out = {}
        for (x, z), c in self.terms.items():
            out[(x, z)] = c.conjugate().times_i_power(2 * x.dot(z))
        return OperatorSum(self.qubits, out)

    def trace(self) -> GaussianRational:
        """2^n times the identity coefficient; all other Paulis are traceless."""
        n = self.qubits
        key = (BitVector.zeros(n), BitVector.zeros(n))
        c = self.terms.get(key, _GR_ZERO)
        return GaussianRational(c.real * (1 << n), c.imag * (1 << n))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OperatorSum)
            and self.qubits == other.qubits
            and self.terms == other.terms
        )

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"OperatorSum(qubits={self.qubits}, terms={len(self.terms)})"


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """Dense complex matrix backend; equality means entrywise within TAU."""

    matrix: np.ndarray

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        return DenseOperator(self.matrix @ other.matrix)

    def __add__(self, other: "DenseOperator") -> "DenseOperator":
        return DenseOperator(self.matrix + other.matrix)

    def __sub__(self, other: "DenseOperator") -> "DenseOperator":
        return DenseOperator(self.matrix - other.matrix)

    def dagger(self) -> "DenseOperator":
        return DenseOperator(self.matrix.conj().T)

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def approx_equal(self, other: "DenseOperator", tol: float = TAU) -> bool:
        return bool(np.max(np.abs(self.matrix - other.matrix)) <= tol)

    def is_zero(self, tol: float = TAU) -> bool:
        return bool(np.max(np.abs(self.matrix)) <= tol)


_EYE2 = np.eye(2, dtype=complex)
_X2 = np.array([[0, 1], [1, 0]], dtype=complex)
_Z2 = np.array([[1, 0], [0, -1]], dtype=complex)
_XZ2 = _X2 @ _Z2
_SINGLE = {(0, 0): _EYE2, (1, 0): _X2, (0, 1): _Z2, (1, 1): _XZ2}


def majorana(index: int, modes: int) -> PauliTerm:
    """The Jordan-Wigner image of the index-th Majorana generator (1-based).

    Odd/even indices 2j-1, 2j map to Z-strings ending in X or Y on qubit
    j-1.  For odd mode counts the last generator is realized as the parity
    operator of the first modes-1 modes; that representation is standard
    but not faithful.
    """
    if modes < 2:
        raise PreconditionError(f"need at least 2 modes, got {modes}")
    if not 1 <= index <= modes:
        raise PreconditionError(f"Majorana index {index} out of range 1..{modes}")
    n = modes // 2
    if index > 2 * n:
        return parity_operator(2 * n)
    j = (index + 1) // 2
    x = 1 << (j - 1)
    if index % 2:
        z = (1 << (j - 1)) - 1
        phase = 0
    else:
        z = (1 << j) - 1
        phase = 1  # Y = i X Z
    return PauliTerm(phase, BitVector(n, x), BitVector(n, z))


def gamma_of(x: BitVector, modes: int | None = None) -> PauliTerm:
    """Hermitian involution i^(w(w-1)/2) * product of the Majoranas in x.

    The set bits of x select generators in ascending order; the prefactor
    makes the product Hermitian with square I.  gamma_of(0) = I.
    """
    m = x.length if modes is None else modes
    if modes is not None and modes != x.length:
        raise PreconditionError(f"vector length {x.length} does not match modes {modes}")
    if m < 2:
        raise PreconditionError(f"need at least 2 modes, got {m}")
    term = PauliTerm.identity(m // 2)
    for i in x.support():
        term = term * majorana(i + 1, m)
    w = x.weight
    return term.mul_phase(w * (w - 1) // 2)


def commutation_sign(x: BitVector, y: BitVector) -> int:
    """0 when gamma_of(x) and gamma_of(y) commute, 1 when they anticommute.

    Computed combinatorially as q(x,y); agreement with the operator-level
    outcome is a tested invariant.
    """
    return q_form(x, y)


def parity_operator(modes: int) -> PauliTerm:
    """The global parity operator i^n gamma_1 ... gamma_2n (modes = 2n).

    Hermitian involution; commutes with even-weight gamma_of(x) and
    anticommutes with odd-weight ones.
    """
    if modes % 2:
        raise PreconditionError(f"parity operator needs an even mode count, got {modes}")
    n = modes // 2
    term = PauliTerm.identity(n)
    for i in range(1, modes + 1):
        term = term * majorana(i, modes)
    return term.mul_phase(n)


def braid_unitary(i: int, j: int, modes: int, alpha: float = 0.0) -> DenseOperator:
    """Braiding unitary e^(i alpha)/sqrt(2) (I + gamma_i gamma_j), i < j.

    Conjugation sends gamma_i to -gamma_j and gamma_j to gamma_i, fixing
    the other generators.
    """
    if not 1 <= i < j <= modes:
        raise PreconditionError(f"need 1 <= i < j <= modes, got i={i}, j={j}, modes={modes}")
    gi = realize(majorana(i, modes))
    gj = realize(majorana(j, modes))
    dim = gi.dimension
    u = (np.eye(dim, dtype=complex) + gi.matrix @ gj.matrix) * (
        np.exp(1j * alpha) / math.sqrt(2.0)
    )
    return DenseOperator(u)


def chirality_split(modes: int) -> tuple[DenseOperator, DenseOperator]:
    """Eigenprojectors of the parity operator onto the +1 and -1 sectors."""
    p = realize(parity_operator(modes))
    eye = np.eye(p.dimension, dtype=complex)
    return (
        DenseOperator((eye + p.matrix) / 2),
        DenseOperator((eye - p.matrix) / 2),
    )


def _pauli_matrix(term: PauliTerm) -> np.ndarray:
    m = np.ones((1, 1), dtype=complex)
    for q in range(term.qubits):
        m = np.kron(_SINGLE[(term.x_mask[q], term.z_mask[q])], m)
    return (1j ** term.phase_exponent) * m


def realize(op: PauliTerm | OperatorSum, max_dense_qubits: int = DEFAULT_MAX_DENSE_QUBITS) -> DenseOperator:
    """Dense matrix of a PauliTerm or OperatorSum (algebra homomorphism).

    Capped at max_dense_qubits qubits to keep matrices desk-sized.
    """
    if op.qubits > max_dense_qubits:
        raise CapacityError(
            f"dense realization of {op.qubits} qubits exceeds the cap of {max_dense_qubits}"
        )
    if isinstance(op, PauliTerm):
        return DenseOperator(_pauli_matrix(op))
    dim = 1 << op.qubits
    acc = np.zeros((dim, dim), dtype=complex)
    for (x, z), c in op.terms.items():
        acc += c.to_complex() * _pauli_matrix(PauliTerm(0, x, z))
    return DenseOperator(acc)
