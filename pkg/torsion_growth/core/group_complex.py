# core/group_complex.py
"""
Based complexes of free Z[Gamma]-modules, coefficient lattices, and the
integer cochain complexes obtained by specializing one into the other.

Group words are tuples of nonzero integers: `k` is generator k (1-based)
and `-k` its inverse. A boundary ∂_q is an r_{q-1} x r_q matrix of
group-ring elements acting on the left, ∂_q(σ_k) = Σ_j a_jk σ_j. On the
cochain side the entry a_jk becomes the block Σ c_γ ρ(γ^-1)^T at block
position (k, j) of D_{q-1}.
"""

# Standard Imports
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple
# Third-party Imports
import numpy as np
# Local Imports
from .config import DEFAULT_CONFIG, EngineConfig
from .errors import CapacityError, ConsistencyError, ValidationError
from .exact_linalg import (
    SparseIntMatrix, certified_rank, det_integer, inverse_unimodular, rational_rank, snf,
)

LOGGER = logging.getLogger(__name__)

Word = Tuple[int, ...]
IntMatrix = Tuple[Tuple[int, ...], ...]


def reduce_word(word: Iterable[int]) -> Word:
    """Free reduction: cancel adjacent `k, -k` pairs."""
    out: List[int] = []
    for letter in word:
        letter = int(letter)
        if letter == 0:
            raise ValidationError("Generator index 0 in a group word")
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_word(word: Word) -> Word:
    return tuple(-x for x in reversed(word))


def _as_int_matrix(matrix: Sequence[Sequence[int]], name: str) -> IntMatrix:
    rows = tuple(tuple(int(x) for x in row) for row in matrix)
    if any(len(row) != len(rows) for row in rows):
        raise ValidationError(f"{name} is not square")
    return rows


def _object_array(matrix: IntMatrix, size: int) -> np.ndarray:
    return np.array(matrix, dtype=object).reshape(size, size)


def _matrix_key(arr: np.ndarray) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in arr.tolist())


class _MatrixAction:
    """Integer matrices for generators and their inverses, evaluated on words."""

    def __init__(self, matrices: Sequence[IntMatrix], size: int) -> None:
        self.size = size
        self.forward = [_object_array(m, size) for m in matrices]
        self.backward = [_object_array(tuple(map(tuple, inverse_unimodular(m))), size) if size else
                         _object_array(m, size) for m in matrices]
        self.identity = np.identity(size, dtype=int).astype(object)

    def evaluate(self, word: Word) -> np.ndarray:
        result = self.identity.copy()
        for letter in word:
            step = self.forward[letter - 1] if letter > 0 else self.backward[-letter - 1]
            result = result @ step
        return result


def _check_unimodular(matrices: Sequence[IntMatrix], what: str) -> None:
    for k, matrix in enumerate(matrices, start=1):
        if not matrix:
            continue
        det = det_integer(matrix)
        if abs(det) != 1:
            raise ValidationError(f"{what} {k} has determinant {det}; |det| must be 1")


@dataclass(frozen=True)
class GroupPresentationData:
    """
    A group given by integer matrix generators of one size, with optional
    relator words checked against those matrices.
    """
    generator_matrices: Tuple[IntMatrix, ...]
    generator_names: Tuple[str, ...] = ()
    relators: Tuple[Word, ...] = ()
    _action: _MatrixAction = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        matrices = tuple(_as_int_matrix(m, f"Generator {k}")
                         for k, m in enumerate(self.generator_matrices, start=1))
        sizes = {len(m) for m in matrices}
        if len(sizes) > 1:
            raise ValidationError(f"Generator matrices have mixed sizes {sorted(sizes)}")
        object.__setattr__(self, "generator_matrices", matrices)
        names = tuple(self.generator_names) or _default_names(len(matrices))
        if len(names) != len(matrices):
            raise ValidationError(f"{len(names)} names for {len(matrices)} generators")
        object.__setattr__(self, "generator_names", names)
        _check_unimodular(matrices, "Generator")
        object.__setattr__(self, "_action", _MatrixAction(matrices, self.size))
        relators = tuple(reduce_word(w) for w in self.relators)
        object.__setattr__(self, "relators", relators)
        for word in relators:
            self._check_word(word)
            if not np.array_equal(self._action.evaluate(word), self._action.identity):
                raise ValidationError(f"Relator {list(word)} does not evaluate to the identity")

    def __str__(self) -> str:
        return f"<{', '.join(self.generator_names)} | {len(self.relators)} relators> in GL_{self.size}(Z)"

    @property
    def ngens(self) -> int:
        return len(self.generator_matrices)

    @property
    def size(self) -> int:
        return len(self.generator_matrices[0]) if self.generator_matrices else 0

    def _check_word(self, word: Word) -> None:
        for letter in word:
            if abs(letter) > self.ngens:
                raise ValidationError(f"Word uses generator {abs(letter)} of a {self.ngens}-generator group")

    def evaluate(self, word: Word) -> np.ndarray:
        self._check_word(word)
        return self._action.evaluate(word)

    def enumerate_elements(self, cap: int) -> List[Tuple[Word, IntMatrix]]:
        """
        Breadth-first closure under the generators: (shortest word, matrix)
        pairs with the identity first. Raises CapacityError past `cap`.
        """
        identity = _matrix_key(self._action.identity)
        elements = [((), identity)]
        seen = {identity: 0}
        queue = deque([((), self._action.identity)])
        while queue:
            word, current = queue.popleft()
            for k in range(self.ngens):
                nxt = current @ self._action.forward[k]
                key = _matrix_key(nxt)
                if key in seen:
                    continue
                if len(elements) >= cap:
                    raise CapacityError(f"Group order exceeds the cap of {cap}")
                seen[key] = len(elements)
                elements.append((word + (k + 1,), key))
                queue.append((word + (k + 1,), nxt))
        return elements


def _default_names(n: int) -> Tuple[str, ...]:
    if n == 1:
        return ("t",)
    return tuple(f"g{k}" for k in range(1, n + 1))


@dataclass(frozen=True)
class GroupRingElement:
    """Finite integer combination of reduced group words."""
    terms: Mapping[Word, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: Dict[Word, int] = {}
        for word, coeff in dict(self.terms).items():
            word = reduce_word(word)
            clean[word] = clean.get(word, 0) + int(coeff)
        object.__setattr__(self, "terms", {w: c for w, c in sorted(clean.items()) if c})

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word, coeff in self.terms.items():
            body = "*".join(str(x) for x in word) or "1"
            parts.append(f"{coeff}[{body}]")
        return " + ".join(parts)

    @classmethod
    def zero(cls) -> "GroupRingElement":
        return cls({})

    @classmethod
    def one(cls) -> "GroupRingElement":
        return cls({(): 1})

    @classmethod
    def from_word(cls, word: Iterable[int], coeff: int = 1) -> "GroupRingElement":
        return cls({tuple(word): coeff})

    @classmethod
    def power_sum(cls, generator: int, exponents: Iterable[int]) -> "GroupRingElement":
        """Σ t^e over the given exponents, t the generator with index `generator`."""
        terms: Dict[Word, int] = {}
        for e in exponents:
            word = (generator,) * e if e >= 0 else (-generator,) * (-e)
            terms[word] = terms.get(word, 0) + 1
        return cls(terms)

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            terms[word] = terms.get(word, 0) + coeff
        return GroupRingElement(terms)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        terms: Dict[Word, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = reduce_word(w1 + w2)
                terms[word] = terms.get(word, 0) + c1 * c2
        return GroupRingElement(terms)

    def scale(self, k: int) -> "GroupRingElement":
        return GroupRingElement({w: k * c for w, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def max_generator(self) -> int:
        return max((abs(x) for w in self.terms for x in w), default=0)


@dataclass(frozen=True, eq=False)
class GroupRingMatrix:
    """
    Sparse matrix over Z[Gamma]. Entry (j, k) is the coefficient of σ_j in
    ∂σ_k; absent entries are zero and no stored entry is zero.
    """
    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], GroupRingElement] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValidationError(f"Negative matrix shape {self.rows}x{self.cols}")
        clean: Dict[Tuple[int, int], GroupRingElement] = {}
        for (j, k), element in dict(self.entries).items():
            if not (0 <= j < self.rows and 0 <= k < self.cols):
                raise ConsistencyError(f"Entry ({j}, {k}) outside a {self.rows}x{self.cols} boundary")
            if not isinstance(element, GroupRingElement):
                element = GroupRingElement(element)
            if not element.is_zero():
                clean[(int(j), int(k))] = element
        object.__setattr__(self, "entries", clean)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupRingMatrix):
            return False
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    __hash__ = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[GroupRingElement]], n_rows: int, n_cols: int) -> "GroupRingMatrix":
        """Build from dense rows, which must be n_rows x n_cols."""
        if len(rows) != n_rows or any(len(row) != n_cols for row in rows):
            raise ConsistencyError(f"Boundary is not {n_rows}x{n_cols}")
        return cls(n_rows, n_cols, {(j, k): e for j, row in enumerate(rows) for k, e in enumerate(row)})

    def to_rows(self) -> Tuple[Tuple[GroupRingElement, ...], ...]:
        zero = GroupRingElement.zero()
        return tuple(tuple(self.entries.get((j, k), zero) for k in range(self.cols)) for j in range(self.rows))

    def by_column(self) -> Dict[int, List[Tuple[int, GroupRingElement]]]:
        columns: Dict[int, List[Tuple[int, GroupRingElement]]] = {}
        for (j, k), element in self.entries.items():
            columns.setdefault(k, []).append((j, element))
        return columns


@dataclass(frozen=True)
class GroupRingComplex:
    """
    Chain complex C_0 <- C_1 <- ... <- C_d of free Z[Gamma]-modules with
    preferred bases. `boundaries[q-1]` is ∂_q, an r_{q-1} x r_q matrix given
    either as a `GroupRingMatrix`, a mapping (j, k) -> element, or dense rows.
    """
    basis_sizes: Tuple[int, ...]
    boundaries: Tuple[GroupRingMatrix, ...]
    label: str = ""

    def __post_init__(self) -> None:
        sizes = tuple(int(r) for r in self.basis_sizes)
        if any(r < 0 for r in sizes):
            raise ValidationError(f"Negative basis size in {sizes}")
        if len(self.boundaries) != max(len(sizes) - 1, 0):
            raise ConsistencyError(f"{len(self.boundaries)} boundaries for {len(sizes)} degrees")
        boundaries = []
        for q, matrix in enumerate(self.boundaries, start=1):
            if isinstance(matrix, Mapping):
                matrix = GroupRingMatrix(sizes[q - 1], sizes[q], matrix)
            elif not isinstance(matrix, GroupRingMatrix):
                matrix = GroupRingMatrix.from_rows(matrix, sizes[q - 1], sizes[q])
            if (matrix.rows, matrix.cols) != (sizes[q - 1], sizes[q]):
                raise ConsistencyError(f"∂_{q} is not {sizes[q - 1]}x{sizes[q]}")
            boundaries.append(matrix)
        object.__setattr__(self, "basis_sizes", sizes)
        object.__setattr__(self, "boundaries", tuple(boundaries))

    def __str__(self) -> str:
        name = self.label or "complex"
        return f"{name}{list(self.basis_sizes)}"

    @property
    def top_degree(self) -> int:
        return len(self.basis_sizes) - 1

    @property
    def ngens(self) -> int:
        return max((e.max_generator() for m in self.boundaries for e in m.entries.values()), default=0)

    def boundary(self, q: int) -> Tuple[Tuple[GroupRingElement, ...], ...]:
        """∂_q as dense rows."""
        return self.boundaries[q - 1].to_rows()

    def boundary_entries(self, q: int) -> Mapping[Tuple[int, int], GroupRingElement]:
        return self.boundaries[q - 1].entries


@lru_cache(maxsize=64)
def _matrix_action(matrices: Tuple[IntMatrix, ...], size: int) -> _MatrixAction:
    return _MatrixAction(matrices, size)


@lru_cache(maxsize=4096)
def _contragredient_block(matrices: Tuple[IntMatrix, ...], size: int, word: Word) -> np.ndarray:
    """ρ(γ^-1)^T for the group word γ, read-only."""
    block = _matrix_action(matrices, size).evaluate(invert_word(word)).T
    block.setflags(write=False)
    return block


@dataclass(frozen=True)
class CoeffModule:
    """A lattice Z^rank with a unimodular action given per generator."""
    rank: int
    action: Tuple[IntMatrix, ...]
    relators: Tuple[Word, ...] = ()
    label: str = ""

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValidationError(f"Negative module rank {self.rank}")
        matrices = tuple(_as_int_matrix(m, f"Action matrix {k}") for k, m in enumerate(self.action, start=1))
        for k, m in enumerate(matrices, start=1):
            if len(m) != self.rank:
                raise ValidationError(f"Action matrix {k} has size {len(m)}, module rank is {self.rank}")
        _check_unimodular(matrices, "Action matrix")
        object.__setattr__(self, "action", matrices)
        relators = tuple(reduce_word(w) for w in self.relators)
        object.__setattr__(self, "relators", relators)
        identity = _matrix_action(matrices, self.rank).identity
        for word in relators:
            if not np.array_equal(self.evaluate(word), identity):
                raise ValidationError(f"Relator {list(word)} is not satisfied by the module action")

    def __str__(self) -> str:
        return f"{self.label or 'module'}(rank={self.rank}, gens={self.ngens})"

    @property
    def ngens(self) -> int:
        return len(self.action)

    @classmethod
    def from_presentation(cls, gp: GroupPresentationData, label: str = "") -> "CoeffModule":
        return cls(gp.size, gp.generator_matrices, gp.relators, label or "defining")

    def evaluate(self, word: Word) -> np.ndarray:
        for letter in word:
            if abs(letter) > self.ngens:
                raise ValidationError(f"Word uses generator {abs(letter)}, module has {self.ngens}")
        return _matrix_action(self.action, self.rank).evaluate(word)

    def contragredient(self, element: GroupRingElement) -> np.ndarray:
        """Σ c_γ ρ(γ^-1)^T, the block an entry specializes to."""
        if element.max_generator() > self.ngens:
            raise ValidationError(f"{element} uses generator {element.max_generator()}, module has {self.ngens}")
        total = np.zeros((self.rank, self.rank), dtype=object)
        for word, coeff in element.terms.items():
            total = total + coeff * _contragredient_block(self.action, self.rank, word)
        return total


def trivial_module(ngens: int, rank: int = 1) -> CoeffModule:
    identity = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
    return CoeffModule(rank, (identity,) * ngens, label="trivial")


def direct_sum_module(first: CoeffModule, second: CoeffModule) -> CoeffModule:
    if first.ngens != second.ngens:
        raise ValidationError(f"Cannot add modules over {first.ngens} and {second.ngens} generators")
    rank = first.rank + second.rank
    action = []
    for a, b in zip(first.action, second.action):
        block = [[0] * rank for _ in range(rank)]
        for i, row in enumerate(a):
            block[i][:first.rank] = row
        for i, row in enumerate(b):
            block[first.rank + i][first.rank:] = row
        action.append(tuple(map(tuple, block)))
    return CoeffModule(rank, tuple(action), first.relators + second.relators,
                       f"{first.label or 'M'}+{second.label or 'M'}")


def regular_module(gp: GroupPresentationData, config: EngineConfig = DEFAULT_CONFIG) -> CoeffModule:
    """Z[G] for a finite group, generators acting by left multiplication."""
    elements = gp.enumerate_elements(config.max_group_order)
    index = {key: i for i, (_, key) in enumerate(elements)}
    n = len(elements)
    action = []
    for k in range(gp.ngens):
        generator = gp._action.forward[k]
        perm = [[0] * n for _ in range(n)]
        for i, (_, key) in enumerate(elements):
            target = index[_matrix_key(generator @ _object_array(key, gp.size))]
            perm[target][i] = 1
        action.append(tuple(map(tuple, perm)))
    return CoeffModule(n, tuple(action), gp.relators, "regular")


# Cochain complexes

@dataclass(frozen=True)
class CochainComplex:
    """
    Integer cochain complex C^0 -> C^1 -> ... -> C^d with preferred bases;
    `coboundaries[q]` is D_q of shape dims[q+1] x dims[q].
    """
    dims: Tuple[int, ...]
    coboundaries: Tuple[SparseIntMatrix, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(n) for n in self.dims)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "coboundaries", tuple(self.coboundaries))
        if any(n < 0 for n in dims):
            raise ValidationError(f"Negative cochain dimension in {dims}")
        if len(self.coboundaries) != max(len(dims) - 1, 0):
            raise ConsistencyError(f"{len(self.coboundaries)} coboundaries for {len(dims)} degrees")
        for q, d in enumerate(self.coboundaries):
            if d.shape != (dims[q + 1], dims[q]):
                raise ConsistencyError(f"D_{q} has shape {d.shape}, expected {(dims[q + 1], dims[q])}")

    def __str__(self) -> str:
        return f"cochains{list(self.dims)}"

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def coboundary(self, q: int) -> SparseIntMatrix:
        """D_q, with zero maps outside the stored range."""
        if 0 <= q < len(self.coboundaries):
            return self.coboundaries[q]
        source = self.dims[q] if 0 <= q < len(self.dims) else 0
        target = self.dims[q + 1] if 0 <= q + 1 < len(self.dims) else 0
        return SparseIntMatrix.zeros(target, source)

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * n for q, n in enumerate(self.dims))

    def check_dd(self) -> None:
        for q in range(len(self.coboundaries) - 1):
            composite = self.coboundaries[q + 1] @ self.coboundaries[q]
            if not composite.is_zero():
                raise ConsistencyError(f"D_{q + 1}·D_{q} is nonzero ({composite.nnz} entries)")


def specialize(cx: GroupRingComplex, m: CoeffModule, config: EngineConfig = DEFAULT_CONFIG) -> CochainComplex:
    """Hom_{Z[Gamma]}(C_*, M) in the preferred bases σ^q_k ⊗ e_i."""
    if cx.ngens > m.ngens:
        raise ValidationError(f"{cx} uses generator {cx.ngens}, {m} has {m.ngens}")
    rank = m.rank
    dims = tuple(r * rank for r in cx.basis_sizes)
    coboundaries = []
    for q in range(1, len(cx.basis_sizes)):
        entries: Dict[Tuple[int, int], int] = {}
        for (j, k), element in cx.boundary_entries(q).items():
            block = m.contragredient(element)
            for a in range(rank):
                for b in range(rank):
                    value = block[a, b]
                    if value:
                        entries[(k * rank + a, j * rank + b)] = int(value)
        coboundaries.append(SparseIntMatrix(dims[q], dims[q - 1], entries))
    cc = CochainComplex(dims, tuple(coboundaries))
    if config.check_dd:
        try:
            cc.check_dd()
        except ConsistencyError as err:
            raise ConsistencyError(f"{cx} is inconsistent under {m}: {err}")
    return cc


# Cohomology

@dataclass(frozen=True)
class DegreeCohomology:
    degree: int
    free_rank: int
    elementary_divisors: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValidationError(f"Negative free rank in degree {self.degree}")
        for a, b in zip(self.elementary_divisors, self.elementary_divisors[1:]):
            if b % a:
                raise ValidationError(f"Divisors {self.elementary_divisors} do not form a chain")
        if any(d <= 1 for d in self.elementary_divisors):
            raise ValidationError("Elementary divisors of a torsion group must exceed 1")

    @property
    def torsion_order(self) -> int:
        return prod(self.elementary_divisors)

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.elementary_divisors]
        return f"H^{self.degree} = " + (" + ".join(parts) or "0")


@dataclass(frozen=True)
class CohomologyResult:
    degrees: Tuple[DegreeCohomology, ...]

    def __str__(self) -> str:
        return "; ".join(str(d) for d in self.degrees)

    def __getitem__(self, q: int) -> DegreeCohomology:
        return self.degrees[q]

    @property
    def free_ranks(self) -> List[int]:
        return [d.free_rank for d in self.degrees]

    @property
    def torsion_orders(self) -> List[int]:
        return [d.torsion_order for d in self.degrees]

    def is_finite(self) -> bool:
        return all(d.free_rank == 0 for d in self.degrees)

    def alternating_product(self) -> Fraction:
        """Π_q |H^q|^((-1)^(q+1)) as an exact rational."""
        value = Fraction(1)
        for d in self.degrees:
            value *= Fraction(d.torsion_order) if d.degree % 2 else Fraction(1, d.torsion_order)
        return value

    def euler_characteristic(self) -> int:
        return sum((-1) ** d.degree * d.free_rank for d in self.degrees)


def cochain_cohomology(cc: CochainComplex, config: EngineConfig = DEFAULT_CONFIG,
                       max_degree: Optional[int] = None) -> CohomologyResult:
    """
    Cohomology from Smith forms alone. ker D_q is saturated and contains the
    image of D_{q-1}, so the torsion of H^q is the nontrivial invariant factors
    of D_{q-1} and its free rank is dims[q] - rank D_q - rank D_{q-1}.

    With `max_degree` only H^0..H^max_degree are computed and D_max_degree
    contributes its rank alone, which is first tried modulo a prime against
    the bound dims[q] - rank D_{q-1}.
    """
    if max_degree is not None and max_degree < 0:
        raise ValidationError(f"Maximum degree must be nonnegative, got {max_degree}")
    top = cc.top_degree if max_degree is None else min(max_degree, cc.top_degree)
    for q in range(1, top + 1):
        if not (cc.coboundary(q) @ cc.coboundary(q - 1)).is_zero():
            raise ConsistencyError(f"Image of D_{q - 1} leaves the kernel of D_{q}")
    forms = [snf(cc.coboundary(q), config) for q in range(top)]
    ranks = [form.rank for form in forms]
    if top >= 0:
        last = cc.coboundary(top)
        bound = cc.dims[top] - (ranks[-1] if ranks else 0)
        ranks.append(certified_rank(last, bound, config))
    degrees = []
    for q in range(top + 1):
        incoming = ranks[q - 1] if q > 0 else 0
        free_rank = cc.dims[q] - ranks[q] - incoming
        divisors = forms[q - 1].nontrivial if q > 0 else ()
        LOGGER.debug("Degree %d: ranks %d in, %d out, divisors %s", q, incoming, ranks[q], divisors)
        degrees.append(DegreeCohomology(q, free_rank, divisors))
    return CohomologyResult(tuple(degrees))


def cohomology(cx: GroupRingComplex, m: CoeffModule, config: EngineConfig = DEFAULT_CONFIG,
               max_degree: Optional[int] = None) -> CohomologyResult:
    return cochain_cohomology(specialize(cx, m, config), config, max_degree)


def is_exact_over_q(cc: CochainComplex) -> bool:
    ranks = [rational_rank(d) for d in cc.coboundaries]
    for q, n in enumerate(cc.dims):
        outgoing = ranks[q] if q < len(ranks) else 0
        incoming = ranks[q - 1] if q > 0 else 0
        if outgoing + incoming != n:
            return False
    return True


def is_rationally_acyclic(cx: GroupRingComplex, m: CoeffModule, config: EngineConfig = DEFAULT_CONFIG) -> bool:
    return is_exact_over_q(specialize(cx, m, config))


# Oracle complexes

def cyclic_presentation(p: int) -> GroupPresentationData:
    """Z/p generated by the companion matrix of 1 + t + ... + t^(p-1)."""
    return GroupPresentationData((_cyclotomic_companion(p),), ("t",), ((1,) * p,))


def _cyclotomic_companion(p: int) -> IntMatrix:
    n = p - 1
    matrix = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        matrix[i + 1][i] = 1
    for j in range(n):
        matrix[j][n - 1] = -1
    return tuple(map(tuple, matrix))


def cyclotomic_module(p: int) -> CoeffModule:
    """Z[t]/(1 + t + ... + t^(p-1)) in the basis 1, t, ..., t^(p-2)."""
    gp = cyclic_presentation(p)
    return CoeffModule(p - 1, gp.generator_matrices, gp.relators, f"zeta_{p}")


def lens_complex(p: int, q: int) -> Tuple[GroupRingComplex, CoeffModule]:
    """Cellular chains of the lens space L(p, q) and its acyclic ζ-module."""
    if p < 2:
        raise ValidationError(f"Lens spaces need p >= 2, got {p}")
    if gcd(p, q) != 1:
        raise ValidationError(f"gcd({p}, {q}) = {gcd(p, q)}; lens parameters must be coprime")
    t = GroupRingElement.from_word((1,))
    one = GroupRingElement.one()
    norm = GroupRingElement.power_sum(1, range(p))
    twist = GroupRingElement.power_sum(1, [q % p]) - one
    cx = GroupRingComplex((1, 1, 1, 1), (((t - one,),), ((norm,),), ((twist,),)), f"L({p},{q})")
    return cx, cyclotomic_module(p)


def periodic_complex(p: int, length: int) -> GroupRingComplex:
    """Periodic resolution of Z over Z[Z/p]: ∂ alternates t - 1 and the norm element."""
    if p < 2 or length < 0:
        raise ValidationError(f"Invalid periodic resolution parameters p={p}, length={length}")
    t_minus_one = GroupRingElement.from_word((1,)) - GroupRingElement.one()
    norm = GroupRingElement.power_sum(1, range(p))
    boundaries = tuple(((t_minus_one if q % 2 else norm,),) for q in range(1, length + 1))
    return GroupRingComplex((1,) * (length + 1), boundaries, f"periodic({p})")


def bar_complex(gp: GroupPresentationData, length: int, config: EngineConfig = DEFAULT_CONFIG) -> GroupRingComplex:
    """
    Normalized bar resolution of a finite group, truncated at `length`. The
    basis in degree n is (G \\ {1})^n in breadth-first element order and

        d[g1|...|gn] = g1[g2|...|gn] + Σ (-1)^i [..|g_i g_{i+1}|..] + (-1)^n [g1|...|g_{n-1}]

    with cells containing the identity dropped.
    """
    if not (0 <= length <= config.max_bar_length):
        raise CapacityError(f"Bar length {length} outside 0..{config.max_bar_length}")
    elements = gp.enumerate_elements(config.max_group_order)
    index = {key: i for i, (_, key) in enumerate(elements)}
    words = [word for word, _ in elements]
    arrays = [_object_array(key, gp.size) for _, key in elements]
    table = [[index[_matrix_key(a @ b)] for b in arrays] for a in arrays]

    nontrivial = list(range(1, len(elements)))
    bases: List[List[Tuple[int, ...]]] = [[()]]
    for _ in range(length):
        bases.append([cell + (g,) for cell in bases[-1] for g in nontrivial])
    positions = [{cell: i for i, cell in enumerate(basis)} for basis in bases]

    boundaries = []
    for n in range(1, length + 1):
        entries: Dict[Tuple[int, int], Dict[Word, int]] = {}
        for k, cell in enumerate(bases[n]):
            faces = [(words[cell[0]], cell[1:], 1)]
            for i in range(1, n):
                merged = table[cell[i - 1]][cell[i]]
                if merged:
                    faces.append(((), cell[:i - 1] + (merged,) + cell[i + 1:], (-1) ** i))
            faces.append(((), cell[:-1], (-1) ** n))
            for word, face, sign in faces:
                terms = entries.setdefault((positions[n - 1][face], k), {})
                terms[word] = terms.get(word, 0) + sign
        boundaries.append(GroupRingMatrix(len(bases[n - 1]), len(bases[n]),
                                          {key: GroupRingElement(terms) for key, terms in entries.items()}))
    LOGGER.debug("Bar resolution of a group of order %d, sizes %s", len(elements), [len(b) for b in bases])
    return GroupRingComplex(tuple(len(b) for b in bases), tuple(boundaries), f"bar({len(elements)})")


def check_boundaries(cx: GroupRingComplex, gp: Optional[GroupPresentationData] = None,
                     config: EngineConfig = DEFAULT_CONFIG) -> bool:
    """
    Verify ∂_q ∘ ∂_{q+1} = 0. Exact in Z[G] when `gp` is finite within the
    group-order cap; otherwise under the defining matrices of `gp`, or in the
    free group ring when no group is given.
    """
    evaluate = None
    if gp is not None:
        try:
            elements = gp.enumerate_elements(config.max_group_order)
        except CapacityError:
            module = CoeffModule.from_presentation(gp)
            specialize(cx, module, config.with_overrides(check_dd=False)).check_dd()
            return True
        index = {key: i for i, (_, key) in enumerate(elements)}
        positions: Dict[Word, int] = {}

        def evaluate(element: GroupRingElement) -> Dict[int, int]:
            totals: Dict[int, int] = {}
            for word, coeff in element.terms.items():
                if word not in positions:
                    positions[word] = index[_matrix_key(gp.evaluate(word))]
                i = positions[word]
                totals[i] = totals.get(i, 0) + coeff
            return {i: c for i, c in totals.items() if c}

    for q in range(1, cx.top_degree):
        lower = cx.boundaries[q - 1].by_column()
        composite: Dict[Tuple[int, int], Dict[Word, int]] = {}
        for (k, l), upper in cx.boundary_entries(q + 1).items():
            for j, element in lower.get(k, ()):
                terms = composite.setdefault((j, l), {})
                for word, coeff in (upper * element).terms.items():
                    terms[word] = terms.get(word, 0) + coeff
        for (j, l), terms in sorted(composite.items()):
            total = GroupRingElement(terms)
            residue = evaluate(total) if evaluate else total.terms
            if residue:
                raise ConsistencyError(f"∂_{q}∘∂_{q + 1} is nonzero at ({j}, {l}) in {cx}")
    return True
