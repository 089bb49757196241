"""The q-form q(x,y) = x.y + wt(x)wt(y) mod 2 and everything built on it:
isotropic subspaces, their two-class parity structure, q-orthogonal
complements, the puncture/extend bijection with all-even self-orthogonal
codes, and a randomized search for such codes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .errors import NotIsotropicError, PreconditionError
from .gf2 import UNBOUNDED, BinaryCode, BitVector, dual, dual_distance_by_columns, make_code


class ParityClass(str, Enum):
    ALL_EVEN = "AllEven"
    MIXED_PARITY = "MixedParity"


@dataclass(frozen=True)
class QSubspace:
    """A q-isotropic subspace tagged with its parity classification.

    All-even subspaces are self-orthogonal codes; mixed-parity subspaces
    split as even_part + (even_part ^ odd_coset_rep) with the even part of
    codimension 1.  Construct through classify(), which verifies isotropy.
    """

    code: BinaryCode
    parity_class: ParityClass
    even_part: BinaryCode
    odd_coset_rep: BitVector | None

    @property
    def length(self) -> int:
        return self.code.length

    @property
    def dimension(self) -> int:
        return self.code.dimension

    @property
    def even_dimension(self) -> int:
        return self.even_part.dimension


def q_form(x: BitVector, y: BitVector) -> int:
    """q(x,y) = x.y + wt(x)wt(y) mod 2; symmetric, bilinear, q(x,x) = 0."""
    return x.dot(y) ^ (x.parity & y.parity)


def isotropy_witness(code: BinaryCode) -> tuple[BitVector, BitVector] | None:
    """A basis pair (x,y) with q(x,y) = 1, or None if the code is q-isotropic.

    Checking basis pairs suffices by bilinearity; the diagonal vanishes
    identically.
    """
    for x, y in combinations(code.basis, 2):
        if q_form(x, y):
            return (x, y)
    return None


def is_q_isotropic(code: BinaryCode) -> bool:
    return isotropy_witness(code) is None


def q_complement(code: BinaryCode) -> BinaryCode:
    """The q-orthogonal complement {x : q(x,c) = 0 for all c in code}.

    Since wt(x) = x.1, q(x,c) = x.(c + wt(c).1), so the complement is the
    standard dual of the code spanned by those shifted generators.
    """
    n = code.length
    ones = BitVector.ones(n)
    shifted = [b ^ ones if b.parity else b for b in code.basis]
    return dual(make_code(n, shifted))


def even_subcode(code: BinaryCode) -> tuple[BinaryCode, BitVector | None]:
    """Split off the even-weight subcode.

    If the code has an odd-weight word, returns (even subcode of dimension
    k-1, one odd-weight coset representative); otherwise (code, None).
    The parity of a word is linear, so basis parities decide everything.
    """
    odd = [b for b in code.basis if b.parity]
    if not odd:
        return code, None
    u = odd[0]
    rows = [b for b in code.basis if not b.parity] + [b ^ u for b in odd[1:]]
    return make_code(code.length, rows), u


def classify(code: BinaryCode, require_isotropic: bool = True) -> QSubspace:
    """Classify a q-isotropic subspace as AllEven or MixedParity.

    With require_isotropic (the default) a non-isotropic input raises
    NotIsotropicError carrying a witness pair; pass False only when the
    caller has already verified isotropy.
    """
    if require_isotropic:
        witness = isotropy_witness(code)
        if witness is not None:
            raise NotIsotropicError(
                f"subspace is not q-isotropic: q({witness[0]}, {witness[1]}) = 1",
                witness=witness,
            )
    even, u = even_subcode(code)
    if u is None:
        return QSubspace(code, ParityClass.ALL_EVEN, code, None)
    return QSubspace(code, ParityClass.MIXED_PARITY, even, u)


def extend(subspace: QSubspace | BinaryCode) -> BinaryCode:
    """Append a parity coordinate: {(x, wt(x) mod 2) : x in S}.

    For q-isotropic input the result is an all-even self-orthogonal code of
    the same dimension in F2^(n+1).
    """
    if isinstance(subspace, QSubspace):
        code = subspace.code
    else:
        code = subspace
        witness = isotropy_witness(code)
        if witness is not None:
            raise NotIsotropicError(
                "extend requires a q-isotropic subspace", witness=witness
            )
    rows = [b.append(b.parity) for b in code.basis]
    return make_code(code.length + 1, rows)


def self_orthogonality_witness(code: BinaryCode):
    """An odd-weight basis row, or a basis pair with dot product 1, or None."""
    for b in code.basis:
        if b.parity:
            return (b,)
    for x, y in combinations(code.basis, 2):
        if x.dot(y):
            return (x, y)
    return None


def puncture(code: BinaryCode, coordinate: int | None = None) -> QSubspace:
    """Delete one coordinate (default: the last) of an all-even
    self-orthogonal code; the result is q-isotropic.

    Inverse of extend() on the last coordinate.  Any coordinate is allowed
    since the q-form is permutation-invariant.
    """
    if code.length < 2:
        raise PreconditionError("cannot puncture a length-1 code")
    witness = self_orthogonality_witness(code)
    if witness is not None:
        if len(witness) == 1:
            raise PreconditionError(
                f"puncture requires an all-even code; {witness[0]} has odd weight",
                witness=witness,
            )
        raise PreconditionError(
            f"puncture requires a self-orthogonal code; {witness[0]}.{witness[1]} = 1",
            witness=witness,
        )
    c = code.length - 1 if coordinate is None else coordinate
    if not 0 <= c < code.length:
        raise PreconditionError(f"coordinate {c} out of range")
    rows = [b.delete(c) for b in code.basis]
    return classify(make_code(code.length - 1, rows))


def random_all_even_self_orthogonal(
    length: int, rng: random.Random, stop_probability: float = 0.0
) -> BinaryCode:
    """Greedily grow a random all-even self-orthogonal code in F2^length.

    Each step draws a random even-weight vector orthogonal to the current
    span and independent of it; with stop_probability the growth stops
    early (useful for sampling codes of varied dimension).
    """
    ones = BitVector.ones(length)
    rows: list[BitVector] = []
    for _ in range(length):
        if rows and stop_probability and rng.random() < stop_probability:
            break
        current = make_code(length, rows)
        space = dual(make_code(length, rows + [ones]))
        if make_code(length, list(space.basis) + rows).dimension == current.dimension:
            break  # no candidates left outside the current span
        dim = space.dimension
        v = None
        for _ in range(20 * max(dim, 1)):
            pick = rng.getrandbits(dim) if dim else 0
            cand = BitVector.zeros(length)
            for i, b in enumerate(space.basis):
                if (pick >> i) & 1:
                    cand = cand ^ b
            if not current.contains(cand):
                v = cand
                break
        if v is None:
            break
        rows.append(v)
    return make_code(length, rows)


def search_self_orthogonal(
    n: int, target_dual_distance: int, budget: int = 200, seed: int = 0
) -> QSubspace | None:
    """Randomized search for a q-isotropic subspace of F2^n whose extension
    to F2^(n+1) is all-even self-orthogonal with dual distance >= target.

    Restarts a greedy growth up to `budget` times; deterministic for a
    fixed seed.  Returns None when the budget is exhausted (absence is a
    valid outcome, e.g. when the target exceeds n+1).
    """
    if n < 2:
        raise PreconditionError(f"n must be >= 2, got {n}")
    if target_dual_distance < 2:
        raise PreconditionError(
            f"target dual distance must be >= 2, got {target_dual_distance}"
        )
    if target_dual_distance > n + 1:
        return None  # dual distance cannot exceed the ambient length
    rng = random.Random(seed)
    for _ in range(budget):
        code = random_all_even_self_orthogonal(n + 1, rng)
        if code.dimension == 0:
            continue
        dd = dual_distance_by_columns(code)
        if dd != UNBOUNDED and dd >= target_dual_distance:
            return puncture(code)
    return None
