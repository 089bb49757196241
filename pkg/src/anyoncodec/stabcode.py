"""Clifford stabilizer codes built from q-isotropic subspaces: projectors,
error-detection verdicts, Clifford distance, the Hamming-derived family,
and a verification suite that cross-checks the combinatorial layer against
dense operator arithmetic.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import CapacityError, NotIsotropicError, PreconditionError
from .gf2 import (
    DEFAULT_MAX_ENUM_BITS,
    UNBOUNDED,
    BinaryCode,
    BitVector,
    _span_blocks,
    dual_distance_by_columns,
    hamming_dual,
    make_code,
)
from .qgeometry import (
    ParityClass,
    QSubspace,
    classify,
    even_subcode,
    extend,
    isotropy_witness,
    q_complement,
    q_form,
)
from .cliffordrep import (
    DEFAULT_MAX_DENSE_QUBITS,
    TAU,
    OperatorSum,
    PauliTerm,
    gamma_of,
    realize,
)

#: Returned by clifford_distance when the q-complement equals the subspace.
NO_LOGICAL = "no-logical"

# 'auto' distance computations enumerate the complement up to this dimension
# and switch to the increasing-weight search beyond it.
_ENUM_AUTO_BITS = 20


class DetectVerdict(str, Enum):
    STABILIZER = "Stabilizer"
    DETECTABLE = "Detectable"
    LOGICAL = "Logical"


class StabilizerCode:
    """A stabilizer code on 2n Majorana modes (n qubits).

    Defined by a q-isotropic subspace C of F2^(2n), one sign per basis
    vector, and the derived projector (1/2^dim) prod (I + c_x Gamma_x).
    Mixed-parity subspaces are accepted but flagged parity_violating.
    """

    __slots__ = ("subspace", "signs", "modes", "n", "k", "complement")

    def __init__(self, subspace: QSubspace, signs: tuple[int, ...]):
        self.subspace = subspace
        self.signs = signs
        self.modes = subspace.length
        self.n = self.modes // 2
        self.k = self.n - subspace.dimension
        self.complement = q_complement(subspace.code)

    @property
    def parity_violating(self) -> bool:
        return self.subspace.parity_class is ParityClass.MIXED_PARITY

    def basis_terms(self) -> list[PauliTerm]:
        return [gamma_of(b) for b in self.subspace.code.basis]

    def sign_of(self, vector: BitVector) -> int:
        for b, c in zip(self.subspace.code.basis, self.signs):
            if b == vector:
                return c
        raise PreconditionError(f"{vector} is not a basis vector of the stabilizer")

    def projector(self) -> OperatorSum:
        """Exact expansion of (1/2^dim) prod (I + c_x Gamma_x)."""
        p = OperatorSum.identity(self.n)
        half = Fraction(1, 2)
        for b, c in zip(self.subspace.code.basis, self.signs):
            g = OperatorSum.from_term(gamma_of(b), coeff=c)
            p = (p + p * g).scale(half)
        return p

    def group_sum(self) -> OperatorSum:
        """(1/2^dim) sum over the stabilizer group of sign(g) Gamma_g.

        Computed independently of projector(): the sign of a group element
        is the product of its basis signs times the real phase relating the
        ordered basis product to the Hermitian Gamma of the combined mask.
        Equality with projector() is a tested identity.
        """
        basis = self.subspace.code.basis
        dim = len(basis)
        terms = self.basis_terms()
        nq = self.n
        acc = OperatorSum.zero(nq)
        weight = Fraction(1, 1 << dim)
        for pick in range(1 << dim):
            prod = PauliTerm.identity(nq)
            g_bits = 0
            csign = 1
            for i in range(dim):
                if (pick >> i) & 1:
                    prod = prod * terms[i]
                    g_bits ^= basis[i].bits
                    csign *= self.signs[i]
            target = gamma_of(BitVector(self.modes, g_bits))
            rel = (prod.phase_exponent - target.phase_exponent) % 4
            if rel not in (0, 2):
                raise AssertionError("stabilizer group element with non-real sign")
            sign = csign if rel == 0 else -csign
            acc = acc + OperatorSum.from_term(target, coeff=weight * sign)
        return acc

    def __repr__(self) -> str:
        return f"StabilizerCode(modes={self.modes}, k={self.k})"


def build_code(subspace: QSubspace, signs=None) -> StabilizerCode:
    """Build a stabilizer code from a q-isotropic subspace of F2^(2n).

    `signs` may be None (all +1), a sequence aligned with the RREF basis,
    or a mapping from basis vector to +-1 covering the basis exactly.
    """
    if subspace.length % 2:
        raise PreconditionError(
            f"ambient length must be even (2n modes), got {subspace.length}"
        )
    witness = isotropy_witness(subspace.code)
    if witness is not None:
        raise NotIsotropicError("subspace is not q-isotropic", witness=witness)
    basis = subspace.code.basis
    if signs is None:
        resolved = tuple(1 for _ in basis)
    elif isinstance(signs, dict):
        if set(signs) != set(basis):
            raise PreconditionError("sign map must cover exactly the basis vectors")
        resolved = tuple(signs[b] for b in basis)
    else:
        resolved = tuple(signs)
        if len(resolved) != len(basis):
            raise PreconditionError(
                f"need {len(basis)} signs, got {len(resolved)}"
            )
    if any(c not in (-1, 1) for c in resolved):
        raise PreconditionError("signs must be +1 or -1")
    return StabilizerCode(subspace, resolved)


def detect(code: StabilizerCode, y: BitVector) -> DetectVerdict:
    """Classify an error vector: in the stabilizer, detectable, or logical."""
    if y.length != code.modes:
        raise PreconditionError(
            f"vector length {y.length} does not match {code.modes} modes"
        )
    if code.subspace.code.contains(y):
        return DetectVerdict.STABILIZER
    if any(q_form(y, b) for b in code.subspace.code.basis):
        return DetectVerdict.DETECTABLE
    return DetectVerdict.LOGICAL


def _extended_basis_rows(include: BinaryCode, exclude: BinaryCode) -> list[int]:
    """A basis of `include` whose first dim(exclude) rows span `exclude`."""
    rows = [b.bits for b in exclude.basis]
    red: dict[int, int] = {}
    for r in rows:
        v = r
        while v:
            hb = v.bit_length() - 1
            if hb not in red:
                red[hb] = v
                break
            v ^= red[hb]
    for b in include.basis:
        v = b.bits
        while v:
            hb = v.bit_length() - 1
            if hb not in red:
                red[hb] = v
                rows.append(b.bits)
                break
            v ^= red[hb]
    return rows


def _min_excluded_weight(
    include: BinaryCode,
    exclude: BinaryCode,
    method: str = "auto",
    max_enum_bits: int = DEFAULT_MAX_ENUM_BITS,
    even_only: bool = False,
):
    """Minimum weight over include \\ exclude with deterministic witness.

    Requires exclude <= include.  Returns (weight, BitVector) minimizing
    (weight, integer value), or None when the difference is empty.
    `method` is 'enum' (scan the whole span), 'weight' (increasing-weight
    search with membership tests), or 'auto'.
    """
    n = include.length
    r = include.dimension
    s = exclude.dimension
    if r == s:
        return None
    if method == "auto":
        method = "enum" if (r <= _ENUM_AUTO_BITS and n <= 64) else "weight"
    if method == "enum":
        if r > max_enum_bits:
            raise CapacityError(
                f"enumeration of 2^{r} words exceeds the cap of 2^{max_enum_bits}"
            )
        if n > 64:
            raise CapacityError("span enumeration supports length <= 64 only")
        if s > 20:
            raise CapacityError("exclusion subcode too large to mask during enumeration")
        rows = _extended_basis_rows(include, exclude)
        assert len(rows) == r
        best = None
        for sel, block in _span_blocks(rows):
            w = np.bitwise_count(block).astype(np.int64)
            if sel == 0:
                w[: 1 << s] = 1 << 20  # exclude the subcode's own words
            if even_only:
                w[w % 2 == 1] = 1 << 20
            bmin = int(w.min())
            if bmin >= 1 << 20:
                continue
            cand = int(block[w == bmin].min())
            if best is None or (bmin, cand) < best:
                best = (bmin, cand)
        if best is None:
            return None
        return best[0], BitVector(n, best[1])
    if method != "weight":
        raise PreconditionError(f"unknown distance method {method!r}")
    start, step = (2, 2) if even_only else (1, 1)
    for w in range(start, n + 1, step):
        hits = []
        for support in combinations(range(n), w):
            bits = 0
            for i in support:
                bits |= 1 << i
            v = BitVector(n, bits)
            if include.contains(v) and not exclude.contains(v):
                hits.append(bits)
        if hits:
            return w, BitVector(n, min(hits))
    return None


def clifford_distance(
    code: StabilizerCode,
    method: str = "auto",
    max_enum_bits: int = DEFAULT_MAX_ENUM_BITS,
) -> int | str:
    """Minimum weight of a logical vector (in the q-complement but not the
    stabilizer), or NO_LOGICAL when the complement equals the subspace.
    """
    found = _min_excluded_weight(
        code.complement, code.subspace.code, method=method, max_enum_bits=max_enum_bits
    )
    return NO_LOGICAL if found is None else found[0]


def build_hamming_subspace(s: int) -> QSubspace:
    """The q-isotropic subspace behind the distance-3 Hamming-derived family.

    With n = 2^s - 1 and C' the [n, s] simplex code, spans {(x,x)} together
    with (1_n, 0_n) inside F2^(2n); dimension s+1, mixed parity.
    """
    if s < 2:
        raise PreconditionError(f"s must be >= 2, got {s}")
    if s == 2:
        warnings.warn("s=2 lies outside the intended s >= 3 family", stacklevel=2)
    simplex = hamming_dual(s)
    n = simplex.length
    rows = [BitVector(2 * n, b.bits | (b.bits << n)) for b in simplex.basis]
    rows.append(BitVector(2 * n, (1 << n) - 1))
    return classify(make_code(2 * n, rows))


def _census(code: StabilizerCode) -> dict[str, int]:
    dim = code.subspace.dimension
    comp = code.complement.dimension
    total = 1 << code.modes
    stab = 1 << dim
    logical = (1 << comp) - stab
    return {
        DetectVerdict.STABILIZER.value: stab,
        DetectVerdict.DETECTABLE.value: total - (1 << comp),
        DetectVerdict.LOGICAL.value: logical,
    }


def code_report(
    code: StabilizerCode,
    max_enum_bits: int = DEFAULT_MAX_ENUM_BITS,
    method: str = "auto",
) -> dict:
    """Structured summary of a stabilizer code.

    Distances are exact when the complement is small enough to scan
    (method 'enum' or 'weight'); otherwise the report falls back to the
    projective certificate on the extended code, which lower-bounds the
    distance without enumerating anything.
    """
    comp_dim = code.complement.dimension
    report = {
        "modes": code.modes,
        "n": code.n,
        "k": code.k,
        "stabilizer_dimension": code.subspace.dimension,
        "complement_dimension": comp_dim,
        "parity_class": code.subspace.parity_class.value,
        "parity_violating": code.parity_violating,
        "verdict_census": _census(code),
        "distance_lower_bound": None,
        "logical_minweight_witness": None,
    }
    if comp_dim <= max_enum_bits:
        chosen = method
        if chosen == "auto":
            chosen = "enum" if (comp_dim <= _ENUM_AUTO_BITS and code.modes <= 64) else "weight"
        found = _min_excluded_weight(
            code.complement, code.subspace.code, method=chosen, max_enum_bits=max_enum_bits
        )
        even = _min_excluded_weight(
            even_subcode(code.complement)[0],
            even_subcode(code.subspace.code)[0],
            method=chosen,
            max_enum_bits=max_enum_bits,
            even_only=True,
        )
        report["distance_method"] = chosen
        report["clifford_distance"] = NO_LOGICAL if found is None else found[0]
        report["even_clifford_distance"] = NO_LOGICAL if even is None else even[0]
        if found is not None:
            report["logical_minweight_witness"] = str(found[1])
            report["distance_lower_bound"] = found[0]
    else:
        dd = dual_distance_by_columns(extend(code.subspace))
        report["distance_method"] = "certificate"
        report["clifford_distance"] = None
        report["even_clifford_distance"] = None
        if dd != UNBOUNDED:
            report["extension_dual_distance"] = dd
            report["distance_lower_bound"] = dd - 1 if (dd - 1) % 2 else dd
    return report


def dense_verdict(projector: np.ndarray, gamma: np.ndarray, tol: float = TAU) -> DetectVerdict:
    """Classify P Gamma P at the matrix level: 0, proportional to P, or neither."""
    m = projector @ gamma @ projector
    if np.max(np.abs(m)) <= tol:
        return DetectVerdict.DETECTABLE
    lam = np.trace(m) / np.trace(projector)
    if abs(lam) > tol and np.max(np.abs(m - lam * projector)) <= tol:
        return DetectVerdict.STABILIZER
    return DetectVerdict.LOGICAL


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def run_verification(
    code: BinaryCode,
    level: str = "combinatorial",
    signs=None,
    max_dense_qubits: int = DEFAULT_MAX_DENSE_QUBITS,
    seed: int = 0,
) -> list[CheckResult]:
    """Invariant suite for a candidate stabilizer subspace.

    Combinatorial checks cover isotropy/commutation, classification,
    complement containment, group sign reality and the verdict census;
    the dense level adds projector identities, the group-sum identity and
    the verdict/operator correspondence.  Returns one CheckResult per
    check; a non-isotropic input short-circuits after the failing
    commutation check.
    """
    if code.length % 2:
        raise PreconditionError(f"ambient length must be even, got {code.length}")
    if level not in ("combinatorial", "dense"):
        raise PreconditionError(f"unknown verification level {level!r}")
    results = []
    modes = code.length
    basis = code.basis

    witness = isotropy_witness(code)
    pair_count = len(basis) * (len(basis) - 1) // 2
    if witness is not None:
        results.append(
            CheckResult(
                "commutation-signs",
                False,
                f"q({witness[0]}, {witness[1]}) = 1: generators anticommute",
            )
        )
        return results
    agree = all(
        (q_form(x, y) == 0) == gamma_of(x).commutes_with(gamma_of(y))
        for x, y in combinations(basis, 2)
    )
    results.append(
        CheckResult(
            "commutation-signs",
            agree,
            f"{pair_count} basis pairs q-orthogonal and operator-commuting",
        )
    )
    if not agree:
        return results

    qs = classify(code, require_isotropic=False)
    sc = build_code(qs, signs)

    if qs.dimension <= 16:
        even_words = sum(1 for w in code.codewords() if w.parity == 0)
        total = 1 << qs.dimension
        if qs.parity_class is ParityClass.ALL_EVEN:
            ok = even_words == total
            detail = f"all {total} words even"
        else:
            ok = even_words * 2 == total and qs.even_dimension == qs.dimension - 1
            detail = f"{even_words}/{total} words even, even part dim {qs.even_dimension}"
        results.append(CheckResult("parity-classification", ok, detail))

    contains = all(sc.complement.contains(b) for b in basis)
    results.append(
        CheckResult(
            "complement-contains-code",
            contains,
            f"dim {qs.dimension} inside complement dim {sc.complement.dimension}",
        )
    )

    if qs.dimension <= 16:
        try:
            sc.group_sum()  # raises if any group element has a non-real sign
            results.append(
                CheckResult(
                    "group-signs-real",
                    True,
                    f"all 2^{qs.dimension} group elements carry signs +-1",
                )
            )
        except AssertionError as exc:
            results.append(CheckResult("group-signs-real", False, str(exc)))

    census = _census(sc)
    if modes <= 16:
        scan = {v.value: 0 for v in DetectVerdict}
        for bits in range(1 << modes):
            scan[detect(sc, BitVector(modes, bits)).value] += 1
        ok = scan == census
        results.append(
            CheckResult(
                "verdict-census",
                ok,
                f"exhaustive scan of 2^{modes} vectors matches {census}",
            )
        )
    else:
        ok = sum(census.values()) == 1 << modes and all(v >= 0 for v in census.values())
        results.append(CheckResult("verdict-census", ok, f"partition arithmetic {census}"))

    if level == "dense":
        if sc.n > max_dense_qubits:
            raise CapacityError(
                f"dense level needs {sc.n} qubits, cap is {max_dense_qubits}"
            )
        p = realize(sc.projector(), max_dense_qubits).matrix
        herm = float(np.max(np.abs(p - p.conj().T)))
        idem = float(np.max(np.abs(p @ p - p)))
        tr = complex(np.trace(p))
        ok = herm <= TAU and idem <= TAU and abs(tr - 2**sc.k) <= TAU
        results.append(
            CheckResult(
                "projector-identities",
                ok,
                f"|P-P*|={herm:.1e}, |P^2-P|={idem:.1e}, trace={tr.real:.1f} (expect {2 ** sc.k})",
            )
        )
        if qs.dimension <= 16:
            ok = sc.projector() == sc.group_sum()
            results.append(
                CheckResult("group-sum-identity", ok, "product expansion equals group sum")
            )
        if modes <= 10:
            samples = [BitVector(modes, bits) for bits in range(1 << modes)]
            scope = f"exhaustive over 2^{modes} vectors"
        else:
            import random as _random

            rng = _random.Random(seed)
            small = [BitVector(modes, 0)]
            small += [BitVector.unit(modes, i) for i in range(modes)]
            small += [
                BitVector.unit(modes, i) ^ BitVector.unit(modes, j)
                for i, j in combinations(range(modes), 2)
            ]
            extra = [BitVector(modes, rng.getrandbits(modes)) for _ in range(200)]
            samples = small + extra
            scope = f"{len(samples)} sampled vectors (all weight <= 2 plus seeded draws)"
        mismatches = 0
        for y in samples:
            g = realize(gamma_of(y), max_dense_qubits).matrix
            if dense_verdict(p, g) is not detect(sc, y):
                mismatches += 1
        results.append(
            CheckResult(
                "verdict-operator-correspondence",
                mismatches == 0,
                f"{scope}, {mismatches} mismatches",
            )
        )
    return results
