"""Graph-metric filtrations for generating sets of operators.

A generating set (identity plus distance-1 errors) induces a nested family
of spans E_0 <= E_1 <= ... where E_t is spanned by products of up to t
generators.  This module builds the generating sets named by the theory
(quantum Hamming, full Clifford, spinorial, semispinorial) and computes
the dimension sequence of the filtration, plus a finite isometry check for
candidate unitaries.

Products of Pauli strings are scalar multiples of Pauli strings, so for
uncompressed sets the span dimension is exactly the number of distinct
(x, z) mask pairs reached; that is the exact engine.  Chirality-compressed
sets are handled by exact Gaussian elimination over complex rationals.
A floating-point rank engine is available as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import CapacityError, PreconditionError
from .gf2 import BitVector
from .cliffordrep import (
    DenseOperator,
    GaussianRational,
    PauliTerm,
    _GR_ONE,
    _GR_ZERO,
    gamma_of,
    majorana,
    parity_operator,
    realize,
)

_DENSE_RANK_TOL = 1e-7
_ISOMETRY_TOL = 1e-9
_MAX_AMBIENT = 4096  # operator-space dimension cap for rank computations
_MAX_EXACT_BLOCK = 16  # block side length above which the dense engine takes over


@dataclass(frozen=True)
class BlockCompression:
    """Restriction of n-qubit operators to a set of computational states."""

    qubits: int
    kept_states: tuple[int, ...]


@dataclass(frozen=True)
class GeneratingSet:
    """Distance-1 error space: the identity plus the named generators.

    `block` is set for chirality-compressed sets; the terms are then
    understood as acting on the kept block only.
    """

    label: str
    qubits: int
    terms: tuple[PauliTerm, ...]
    modes: int | None = None
    block: BlockCompression | None = None

    @property
    def ambient_dim(self) -> int:
        if self.block is not None:
            return len(self.block.kept_states) ** 2
        return 4**self.qubits

    @property
    def space_dim(self) -> int:
        """Dimension of the Hilbert space the generators act on."""
        if self.block is not None:
            return len(self.block.kept_states)
        return 1 << self.qubits


@dataclass(frozen=True)
class FiltrationReport:
    label: str
    dims: tuple[int, ...]
    saturation_level: int | None
    ambient_dim: int


@dataclass(frozen=True)
class IsometryResult:
    ok: bool
    failed_level: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def _check_caps(gen: GeneratingSet) -> None:
    if gen.ambient_dim > _MAX_AMBIENT:
        raise CapacityError(
            f"operator space of dimension {gen.ambient_dim} exceeds the cap of {_MAX_AMBIENT}"
        )
    if not any(t.is_identity_mask for t in gen.terms):
        raise PreconditionError("generating set must contain the identity")


def _run_levels(gens, multiply, insert, rank, t_max):
    """Shared level-by-level closure; returns the dims sequence d_0, d_1, ...

    `insert` adds an element to the running span and reports whether it was
    independent; `rank` is the current span dimension.  Levels stop at
    saturation (no growth) or after t_max steps.
    """
    dims = [rank()]
    level = 0
    candidates = list(gens)
    while True:
        level += 1
        new = [e for e in candidates if insert(e)]
        dims.append(rank())
        if dims[-1] == dims[-2]:
            break
        if t_max is not None and level >= t_max:
            break
        candidates = [multiply(e, g) for e in new for g in gens]
    return dims


def _saturation(dims) -> int | None:
    for t in range(len(dims) - 1):
        if dims[t] == dims[t + 1]:
            return t
    return None


class _ExactSpan:
    """Row space over Q(i) maintained as an echelon basis (exact)."""

    def __init__(self):
        self.rows: dict[int, list[GaussianRational]] = {}

    def insert(self, vec) -> bool:
        vec = list(vec)
        width = len(vec)
        pos = 0
        while pos < width:
            if not vec[pos]:
                pos += 1
                continue
            row = self.rows.get(pos)
            if row is None:
                inv = vec[pos].reciprocal()
                self.rows[pos] = [c * inv for c in vec]
                return True
            c = vec[pos]
            for i in range(pos, width):
                if row[i]:
                    vec[i] = vec[i] - c * row[i]
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)


class _DenseSpan:
    """Orthonormalized span of flattened complex matrices (float rank)."""

    def __init__(self, tol=_DENSE_RANK_TOL):
        self.basis: list[np.ndarray] = []
        self.tol = tol

    def insert(self, mat) -> bool:
        v = np.asarray(mat, dtype=complex).ravel()
        for q in self.basis:
            v = v - np.vdot(q, v) * q
        norm = np.linalg.norm(v)
        if norm <= self.tol:
            return False
        self.basis.append(v / norm)
        return True

    @property
    def rank(self) -> int:
        return len(self.basis)


def _exact_block_matrix(term: PauliTerm, block: BlockCompression):
    """Block restriction of a Pauli term with exact complex-rational entries.

    Full-space entries are i^p (-1)^(z.c) at (c^x, c); the block keeps the
    rows and columns of the retained states.
    """
    kept = block.kept_states
    index = {state: i for i, state in enumerate(kept)}
    size = len(kept)
    phase = _GR_ONE.times_i_power(term.phase_exponent)
    x, z = term.x_mask.bits, term.z_mask.bits
    rows = [[_GR_ZERO] * size for _ in range(size)]
    for col, state in enumerate(kept):
        target = state ^ x
        row = index.get(target)
        if row is None:
            continue  # the term leaves the block; entry drops out
        sign = (z & state).bit_count() & 1
        rows[row][col] = -phase if sign else phase
    return tuple(tuple(r) for r in rows)


def _exact_block_mul(a, b):
    size = len(a)
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = _GR_ZERO
            for k in range(size):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _dense_elements(gen: GeneratingSet) -> list[np.ndarray]:
    mats = []
    for t in gen.terms:
        m = realize(t).matrix
        if gen.block is not None:
            kept = list(gen.block.kept_states)
            m = m[np.ix_(kept, kept)]
        mats.append(m)
    return mats


def filtration(gen: GeneratingSet, t_max: int | None = None, engine: str = "auto") -> FiltrationReport:
    """Dimension sequence of the level spans E_0, E_1, ... for a set.

    Runs until the dimensions saturate or t_max levels, whichever first.
    Engines: 'exact' (mask counting, or exact elimination on compressed
    blocks), 'dense' (float rank, the cross-check fallback), or 'auto'.
    """
    _check_caps(gen)
    if engine == "auto":
        if gen.block is not None and len(gen.block.kept_states) > _MAX_EXACT_BLOCK:
            engine = "dense"
        else:
            engine = "exact"
    if engine == "exact" and gen.block is None:
        # Every product of Pauli strings is a phase times a Pauli string, so
        # the span dimension is the number of distinct mask pairs reached.
        masks = [(t.x_mask.bits, t.z_mask.bits) for t in gen.terms]
        seen: set[tuple[int, int]] = {(0, 0)}

        def insert(e):
            if e in seen:
                return False
            seen.add(e)
            return True

        dims = _run_levels(
            masks,
            lambda a, b: (a[0] ^ b[0], a[1] ^ b[1]),
            insert,
            lambda: len(seen),
            t_max,
        )
    elif engine == "exact":
        block = gen.block
        gens = [_exact_block_matrix(t, block) for t in gen.terms]
        span = _ExactSpan()
        identity = _exact_block_matrix(PauliTerm.identity(gen.qubits), block)
        span.insert(tuple(c for row in identity for c in row))
        dims = _run_levels(
            gens,
            _exact_block_mul,
            lambda m: span.insert(tuple(c for row in m for c in row)),
            lambda: span.rank,
            t_max,
        )
    elif engine == "dense":
        gens = _dense_elements(gen)
        span = _DenseSpan()
        span.insert(np.eye(gen.space_dim, dtype=complex))
        dims = _run_levels(gens, lambda a, b: a @ b, span.insert, lambda: span.rank, t_max)
    else:
        raise PreconditionError(f"unknown filtration engine {engine!r}")
    dims = tuple(dims)
    return FiltrationReport(gen.label, dims, _saturation(dims), gen.ambient_dim)


def gen_quantum_hamming(n: int) -> GeneratingSet:
    """Identity plus the 3n single-qubit Pauli operators."""
    if n < 1:
        raise PreconditionError(f"need at least 1 qubit, got {n}")
    terms = [PauliTerm.identity(n)]
    for j in range(n):
        unit = BitVector.unit(n, j)
        zero = BitVector.zeros(n)
        terms.append(PauliTerm(0, unit, zero))  # X_j
        terms.append(PauliTerm(1, unit, unit))  # Y_j
        terms.append(PauliTerm(0, zero, unit))  # Z_j
    return GeneratingSet(f"quantum-hamming(n={n})", n, tuple(terms))


def gen_full_clifford(m: int) -> GeneratingSet:
    """Identity plus the m Majorana generators as distance-1 errors."""
    if m < 2:
        raise PreconditionError(f"need at least 2 modes, got {m}")
    n = m // 2
    terms = [PauliTerm.identity(n)] + [majorana(i, m) for i in range(1, m + 1)]
    return GeneratingSet(f"full-clifford(m={m})", n, tuple(terms), modes=m)


def gen_spinorial(m: int) -> GeneratingSet:
    """Identity plus all C(m,2) Hermitian rank-2 products gamma_i gamma_j."""
    if m < 3:
        raise PreconditionError(f"need at least 3 modes, got {m}")
    n = m // 2
    terms = [PauliTerm.identity(n)]
    for i, j in combinations(range(m), 2):
        terms.append(gamma_of(BitVector(m, (1 << i) | (1 << j))))
    return GeneratingSet(f"spinorial(m={m})", n, tuple(terms), modes=m)


def gen_semispinorial(m: int, minus_block: bool = False) -> GeneratingSet:
    """Rank-2 products compressed to one chirality block (default +1).

    The rank-2 generators are even, hence commute with the parity operator
    and preserve the block.
    """
    if m % 2 or m < 4:
        raise PreconditionError(f"need an even mode count >= 4, got {m}")
    n = m // 2
    diag = realize(parity_operator(m)).matrix.diagonal().real
    want = -1.0 if minus_block else 1.0
    kept = tuple(int(s) for s in np.nonzero(np.isclose(diag, want))[0])
    block = BlockCompression(n, kept)
    base = gen_spinorial(m)
    sign = "-" if minus_block else "+"
    return GeneratingSet(
        f"semispinorial(m={m}, block={sign})", n, base.terms, modes=m, block=block
    )


def isometry_check(
    gen: GeneratingSet,
    unitary: DenseOperator | np.ndarray,
    t_max: int | None = None,
    tol: float = _ISOMETRY_TOL,
) -> IsometryResult:
    """Whether conjugation by a unitary preserves every level span E_t.

    Builds each level's span densely and tests that the conjugate of each
    spanning element stays inside it (residual within tol, relative to the
    element norm).  Checks levels up to saturation or t_max.
    """
    _check_caps(gen)
    u = unitary.matrix if isinstance(unitary, DenseOperator) else np.asarray(unitary, dtype=complex)
    if u.shape != (gen.space_dim, gen.space_dim):
        raise PreconditionError(
            f"unitary of shape {u.shape} does not act on dimension {gen.space_dim}"
        )
    udag = u.conj().T
    gens = _dense_elements(gen)
    span = _DenseSpan()
    eye = np.eye(gen.space_dim, dtype=complex)
    span.insert(eye)
    level = 0
    candidates = list(gens)
    while True:
        level += 1
        new = [m for m in candidates if span.insert(m)]
        # elements retained at earlier levels already passed inside smaller
        # spans, so only the new spanning elements need conjugation checks
        for m in new:
            w = (u @ m @ udag).ravel()
            for q in span.basis:
                w = w - np.vdot(q, w) * q
            if np.linalg.norm(w) > tol * max(1.0, np.linalg.norm(m)):
                return IsometryResult(False, failed_level=level)
        if not new:
            break
        if t_max is not None and level >= t_max:
            break
        candidates = [m @ g for m in new for g in gens]
    return IsometryResult(True)
