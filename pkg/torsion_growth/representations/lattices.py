# representations/lattices.py
"""
Integral coefficient modules built from integer matrix groups: symmetric
powers, their duals, and Schur-module lattices cut out of tensor powers of
Z^3 by a Young symmetrizer.
"""

# Standard Imports
import logging
from fractions import Fraction
from math import factorial, prod
from typing import Dict, List, Sequence, Tuple
# Third-party Imports
from sympy import Poly, symbols
from sympy.utilities.iterables import multiset_permutations
# Local Imports
from .weights import HighestWeight
from ..core.config import DEFAULT_CONFIG, EngineConfig
from ..core.errors import CapacityError, InternalError, ValidationError
from ..core.exact_linalg import det_integer, independent_columns, inverse_rational, inverse_unimodular, saturate
from ..core.group_complex import CoeffModule, Word

LOGGER = logging.getLogger(__name__)

Matrix = Sequence[Sequence[int]]
TensorWord = Tuple[int, ...]


def _validated(gen_matrices: Sequence[Matrix], size: int = 0) -> List[List[List[int]]]:
    matrices = [[list(map(int, row)) for row in a] for a in gen_matrices]
    for k, a in enumerate(matrices, start=1):
        if any(len(row) != len(a) for row in a):
            raise ValidationError(f"Generator {k} is not square")
        if size and len(a) != size:
            raise ValidationError(f"Generator {k} is {len(a)}x{len(a)}, expected {size}x{size}")
        det = det_integer(a)
        if abs(det) != 1:
            raise ValidationError(f"Generator {k} has determinant {det}; |det| must be 1")
    if len({len(a) for a in matrices}) > 1:
        raise ValidationError("Generators have mixed sizes")
    return matrices


def monomial_exponents(g: int, m: int) -> List[Tuple[int, ...]]:
    """Exponent vectors of degree-m monomials in g variables, graded-lex descending."""
    if g == 0:
        return [()] if m == 0 else []

    def build(remaining: int, slots: int):
        if slots == 1:
            yield (remaining,)
            return
        for first in range(remaining, -1, -1):
            for rest in build(remaining - first, slots - 1):
                yield (first,) + rest

    return list(build(m, g))


def sym_power_matrix(a: Matrix, m: int) -> List[List[int]]:
    """Matrix of Sym^m(a) on the monomial basis; x_j -> Σ_i a_ij x_i."""
    g = len(a)
    basis = monomial_exponents(g, m)
    if g == 0:
        return [[1]] if m == 0 else []
    index = {e: i for i, e in enumerate(basis)}
    xs = symbols(f"x1:{g + 1}")
    linear = [Poly(sum(int(a[i][j]) * xs[i] for i in range(g)), *xs) for j in range(g)]
    one = Poly(1, *xs)
    out = [[0] * len(basis) for _ in basis]
    for col, exps in enumerate(basis):
        image = one
        for j, e in enumerate(exps):
            if e:
                image = image * linear[j] ** e
        for mono, coeff in image.as_dict().items():
            out[index[tuple(mono)]][col] = int(coeff)
    return out


def sym_power_lattice(gen_matrices: Sequence[Matrix], m: int, relators: Sequence[Word] = ()) -> CoeffModule:
    if m < 0:
        raise ValidationError(f"Symmetric power degree must be >= 0, got {m}")
    matrices = _validated(gen_matrices)
    g = len(matrices[0]) if matrices else 0
    rank = len(monomial_exponents(g, m))
    action = tuple(tuple(map(tuple, sym_power_matrix(a, m))) for a in matrices)
    return CoeffModule(rank, action, tuple(relators), f"Sym^{m}")


def dual_sym_power_lattice(gen_matrices: Sequence[Matrix], m: int, relators: Sequence[Word] = ()) -> CoeffModule:
    """Sym^m of the contragredient action γ -> (γ^-1)^T."""
    matrices = _validated(gen_matrices)
    duals = [[list(col) for col in zip(*inverse_unimodular(a))] for a in matrices]
    module = sym_power_lattice(duals, m, relators)
    return CoeffModule(module.rank, module.action, module.relators, f"Sym^{m}*")


# Schur modules

class _SchurShape:
    """Two-row Young diagram (λ1, λ2); slots of row 2 sit below the first λ2 slots of row 1."""

    def __init__(self, lam1: int, lam2: int) -> None:
        self.lam1, self.lam2 = lam1, lam2
        self.degree = lam1 + lam2

    def column_strict_words(self) -> List[TensorWord]:
        words: List[TensorWord] = [()]
        for _ in range(self.lam1):
            words = [w + (x,) for w in words for x in range(3)]
        out = []
        for top in words:
            bottoms: List[TensorWord] = [()]
            for c in range(self.lam2):
                bottoms = [b + (x,) for b in bottoms for x in range(top[c] + 1, 3)]
            out.extend(top + b for b in bottoms)
        return out

    def symmetrize(self, word: TensorWord) -> Dict[TensorWord, int]:
        """Row symmetrizer applied after the column antisymmetrizer."""
        columns: List[Tuple[TensorWord, int]] = [(word, 1)]
        for c in range(self.lam2):
            swapped = []
            for w, sign in columns:
                flipped = list(w)
                flipped[c], flipped[self.lam1 + c] = w[self.lam1 + c], w[c]
                swapped.append((tuple(flipped), -sign))
            columns += swapped
        result: Dict[TensorWord, int] = {}
        for w, sign in columns:
            top, bottom = w[:self.lam1], w[self.lam1:]
            weight = sign * _stabilizer(top) * _stabilizer(bottom)
            for new_top in multiset_permutations(list(top)):
                for new_bottom in multiset_permutations(list(bottom)):
                    key = tuple(new_top) + tuple(new_bottom)
                    result[key] = result.get(key, 0) + weight
        return {k: v for k, v in result.items() if v}


def _stabilizer(letters: TensorWord) -> int:
    return prod(factorial(letters.count(x)) for x in set(letters))


def _content(word: TensorWord) -> Tuple[int, int, int]:
    return (word.count(0), word.count(1), word.count(2))


class _WeightBlock:
    """Saturated lattice inside one weight space of the tensor power."""

    def __init__(self, words: List[TensorWord], basis: List[List[int]]) -> None:
        self.words = words
        self.index = {w: i for i, w in enumerate(words)}
        self.basis = basis
        self.pivots = independent_columns(basis, len(words))
        self.solver = inverse_rational([[row[c] for c in self.pivots] for row in basis])

    def coordinates(self, vector: Dict[int, int]) -> List[int]:
        """Integer y with y · basis = vector."""
        r = len(self.basis)
        coords = []
        for i in range(r):
            total = sum((vector.get(self.pivots[l], 0) * self.solver[l][i] for l in range(r)), Fraction(0))
            if total.denominator != 1:
                raise InternalError("Tensor action leaves the saturated Schur lattice")
            coords.append(int(total))
        for j in range(len(self.words)):
            if sum(coords[i] * self.basis[i][j] for i in range(r)) != vector.get(j, 0):
                raise InternalError("Tensor action leaves the span of the Schur module")
        return coords


def _apply_tensor(a: List[List[int]], vector: Dict[TensorWord, int]) -> Dict[TensorWord, int]:
    """a^{⊗k} applied one slot at a time."""
    current = vector
    degree = len(next(iter(vector))) if vector else 0
    for slot in range(degree):
        nxt: Dict[TensorWord, int] = {}
        for word, coeff in current.items():
            source = word[slot]
            for target in range(3):
                entry = a[target][source]
                if entry:
                    key = word[:slot] + (target,) + word[slot + 1:]
                    nxt[key] = nxt.get(key, 0) + coeff * entry
        current = {k: v for k, v in nxt.items() if v}
    return current


def schur_module_lattice(gen_matrices: Sequence[Matrix], partition: Tuple[int, int],
                         config: EngineConfig = DEFAULT_CONFIG, relators: Sequence[Word] = ()) -> CoeffModule:
    """
    Lattice of integer points in the image of the Young symmetrizer on
    (Z^3)^{⊗(λ1+λ2)}; it carries the SL3 weight (λ1-λ2)ω1 + λ2ω2.
    """
    lam1, lam2 = (int(x) for x in partition)
    if not lam1 >= lam2 >= 0:
        raise ValidationError(f"Partition ({lam1}, {lam2}) is not weakly decreasing and nonnegative")
    if lam1 + lam2 > config.max_tensor_degree:
        raise CapacityError(f"Tensor degree {lam1 + lam2} exceeds the cap of {config.max_tensor_degree}")
    matrices = _validated(gen_matrices, size=3)
    shape = _SchurShape(lam1, lam2)

    generators: Dict[Tuple[int, int, int], List[Dict[TensorWord, int]]] = {}
    for word in shape.column_strict_words():
        image = shape.symmetrize(word)
        if image:
            generators.setdefault(_content(word), []).append(image)

    blocks: List[Tuple[Tuple[int, int, int], _WeightBlock]] = []
    for content in sorted(generators, reverse=True):
        words = sorted({w for image in generators[content] for w in image})
        index = {w: i for i, w in enumerate(words)}
        dense = []
        for image in generators[content]:
            row = [0] * len(words)
            for w, v in image.items():
                row[index[w]] = v
            dense.append(row)
        basis = saturate(dense, config.max_bits)
        blocks.append((content, _WeightBlock(words, basis)))

    rank = sum(len(block.basis) for _, block in blocks)
    expected = HighestWeight("A2", (lam1 - lam2, lam2)).dimension()
    if rank != expected:
        raise InternalError(f"Schur lattice for ({lam1}, {lam2}) has rank {rank}, Weyl dimension is {expected}")
    LOGGER.debug("Schur lattice (%d, %d): rank %d over %d weight blocks", lam1, lam2, rank, len(blocks))

    offsets = {}
    position = 0
    for content, block in blocks:
        offsets[content] = position
        position += len(block.basis)
    block_of = dict(blocks)

    action = []
    for a in matrices:
        columns = []
        for content, block in blocks:
            for row in block.basis:
                vector = {block.words[j]: v for j, v in enumerate(row) if v}
                image = _apply_tensor(a, vector)
                column = [0] * rank
                by_content: Dict[Tuple[int, int, int], Dict[int, int]] = {}
                for w, v in image.items():
                    target = block_of.get(_content(w))
                    if target is None or w not in target.index:
                        raise InternalError("Tensor action leaves the Schur module")
                    by_content.setdefault(_content(w), {})[target.index[w]] = v
                for target_content, vec in by_content.items():
                    coords = block_of[target_content].coordinates(vec)
                    start = offsets[target_content]
                    column[start:start + len(coords)] = coords
                columns.append(column)
        action.append(tuple(tuple(columns[j][i] for j in range(rank)) for i in range(rank)))
    return CoeffModule(rank, tuple(action), tuple(relators), f"S({lam1},{lam2})")
