# core/exact_linalg.py
"""
Exact integer and rational linear algebra.

`SparseIntMatrix` carries boundary and coboundary matrices. `snf` computes
elementary divisors with a sparse elimination that picks pivots by
(bit-length, fill-in); a modular strategy is available behind the same
entry point. `certified_rank` checks a rank modulo a prime against a known
bound before falling back to the Smith form. The remaining helpers (Hermite
form with transforms, saturated kernels, lattice saturation, Bareiss
determinants) serve the cohomology and torsion pipelines.
"""

# Standard Imports
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm, prod
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple
# Third-party Imports
import numpy as np
from sympy import prevprime
from sympy.ntheory.modular import crt
# Local Imports
from .config import DEFAULT_CONFIG, EngineConfig
from .errors import CapacityError, ParseError, ValidationError

LOGGER = logging.getLogger(__name__)

DenseMatrix = List[List[int]]
RowDicts = Dict[int, Dict[int, int]]

# Primes for multi-modular determinants, walked downwards from here.
_CRT_PRIME_START = 2**61 - 1
# Dense rank modulo this prime keeps products inside int64.
_RANK_PRIME = 2**31 - 1


@dataclass(frozen=True, eq=False)
class SparseIntMatrix:
    """
    Immutable sparse integer matrix. Absent entries are zero and no stored
    entry is zero.
    """
    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValidationError(f"Negative matrix shape {self.rows}x{self.cols}")
        clean: Dict[Tuple[int, int], int] = {}
        for (r, c), value in dict(self.entries).items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValidationError(f"Entry ({r}, {c}) outside a {self.rows}x{self.cols} matrix")
            if isinstance(value, Fraction) and value.denominator != 1:
                raise ValidationError(f"Non-integral entry {value} at ({r}, {c})")
            value = int(value)
            if value:
                clean[(int(r), int(c))] = value
        object.__setattr__(self, "entries", clean)

    def __str__(self) -> str:
        return f"{self.rows}x{self.cols}[{self.nnz}]"

    def __repr__(self) -> str:
        return f"SparseIntMatrix(rows={self.rows}, cols={self.cols}, nnz={self.nnz})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return False
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    __hash__ = None

    @property
    def nnz(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def get(self, r: int, c: int) -> int:
        return self.entries.get((r, c), 0)

    def is_zero(self) -> bool:
        return not self.entries

    def max_bits(self) -> int:
        return max((abs(v).bit_length() for v in self.entries.values()), default=0)

    # Constructors

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseIntMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "SparseIntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], cols: Optional[int] = None) -> "SparseIntMatrix":
        """Build from a list of rows; `cols` is required when there are no rows."""
        rows = len(dense)
        if cols is None:
            if rows == 0:
                raise ValidationError("Column count required for a matrix without rows")
            cols = len(dense[0])
        entries = {}
        for r, row in enumerate(dense):
            if len(row) != cols:
                raise ValidationError(f"Row {r} has {len(row)} entries, expected {cols}")
            for c, value in enumerate(row):
                if value:
                    entries[(r, c)] = value
        return cls(rows, cols, entries)

    # Conversions

    def to_dense(self) -> DenseMatrix:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), value in self.entries.items():
            dense[r][c] = value
        return dense

    def row_dicts(self) -> RowDicts:
        """Fresh mutable row -> {col: value} mapping of the nonzero rows."""
        rows: RowDicts = {}
        for (r, c), value in self.entries.items():
            rows.setdefault(r, {})[c] = value
        return rows

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise ValidationError(f"Cannot multiply {self} by {other}")
        right = other.row_dicts()
        out: Dict[Tuple[int, int], int] = {}
        for (i, k), a in self.entries.items():
            for j, b in right.get(k, {}).items():
                out[(i, j)] = out.get((i, j), 0) + a * b
        return SparseIntMatrix(self.rows, other.cols, out)

    def __neg__(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def direct_sum(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        """Block diagonal matrix diag(self, other)."""
        entries = dict(self.entries)
        for (r, c), v in other.entries.items():
            entries[(r + self.rows, c + self.cols)] = v
        return SparseIntMatrix(self.rows + other.rows, self.cols + other.cols, entries)

    # Text exchange format: "rows cols nnz" then "row col value" lines.

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols} {self.nnz}"]
        for (r, c) in sorted(self.entries):
            lines.append(f"{r} {c} {self.entries[(r, c)]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, source: Optional[str] = None) -> "SparseIntMatrix":
        lines = [(n + 1, line) for n, line in enumerate(text.splitlines()) if line.strip()]
        if not lines:
            raise ParseError("Empty matrix text", line=1, column=1, source=source)
        header_no, header = lines[0]
        rows, cols, nnz = _parse_int_fields(header, 3, header_no, source)
        if rows < 0 or cols < 0 or nnz < 0:
            raise ParseError("Negative value in header", line=header_no, column=1, source=source)
        body = lines[1:]
        if len(body) != nnz:
            where = body[nnz][0] if len(body) > nnz else (body[-1][0] + 1 if body else header_no + 1)
            raise ParseError(f"Header announces {nnz} entries, found {len(body)}", line=where, column=1,
                             source=source)
        entries: Dict[Tuple[int, int], int] = {}
        for line_no, line in body:
            r, c, value = _parse_int_fields(line, 3, line_no, source)
            if not (0 <= r < rows and 0 <= c < cols):
                raise ParseError(f"Index ({r}, {c}) out of range", line=line_no, column=1, source=source)
            if value == 0:
                raise ParseError("Explicit zero entry", line=line_no, column=_field_column(line, 2),
                                 source=source)
            if (r, c) in entries:
                raise ParseError(f"Duplicate entry ({r}, {c})", line=line_no, column=1, source=source)
            entries[(r, c)] = value
        return cls(rows, cols, entries)


def _field_column(line: str, index: int) -> int:
    """1-based column where whitespace-separated field `index` starts."""
    pos = 0
    for k, token in enumerate(line.split()):
        pos = line.index(token, pos)
        if k == index:
            return pos + 1
        pos += len(token)
    return len(line) + 1


def _parse_int_fields(line: str, count: int, line_no: int, source: Optional[str]) -> List[int]:
    tokens = line.split()
    if len(tokens) != count:
        raise ParseError(f"Expected {count} fields, found {len(tokens)}", line=line_no,
                         column=_field_column(line, min(len(tokens), count)), source=source)
    values = []
    for k, token in enumerate(tokens):
        try:
            values.append(int(token, 10))
        except ValueError:
            raise ParseError(f"Not a decimal integer: {token!r}", line=line_no,
                             column=_field_column(line, k), source=source)
    return values


@dataclass(frozen=True)
class SnfResult:
    """Nonzero elementary divisors d_1 | d_2 | ... of an integer matrix."""
    divisors: Tuple[int, ...]

    def __post_init__(self) -> None:
        for a, b in zip(self.divisors, self.divisors[1:]):
            if a <= 0 or b % a:
                raise ValidationError(f"Divisors {self.divisors} do not form a divisibility chain")

    @property
    def rank(self) -> int:
        return len(self.divisors)

    @property
    def nontrivial(self) -> Tuple[int, ...]:
        """Divisors greater than one: the invariants of the torsion of the cokernel."""
        return tuple(d for d in self.divisors if d > 1)

    def __str__(self) -> str:
        return "[" + ", ".join(str(d) for d in self.divisors) + "]"


# Smith normal form

def snf(m: SparseIntMatrix, config: EngineConfig = DEFAULT_CONFIG,
        strategy: Optional[str] = None) -> SnfResult:
    """
    Elementary divisors of `m`. The fraction-free strategy is the default;
    the modular strategy applies to full-rank matrices and otherwise falls
    back to fraction-free.
    """
    strategy = strategy or config.snf_strategy
    _check_bits(m.entries.values(), config.max_bits)
    if m.is_zero():
        return SnfResult(())
    if strategy == "modular":
        result = _snf_modular(m, config)
        if result is not None:
            return result
        LOGGER.debug("Modular SNF needs full rank, %s is deficient; using fraction-free", m)
    elif strategy != "fraction_free":
        raise ValidationError(f"Unknown SNF strategy {strategy!r}")
    diagonal, _ = _eliminate(m.row_dicts(), config.max_bits)
    return SnfResult(_divisor_chain(diagonal))


def _check_bits(values: Iterable[int], max_bits: int) -> None:
    for v in values:
        if abs(v).bit_length() > max_bits:
            raise CapacityError(f"Entry of {abs(v).bit_length()} bits exceeds the cap of {max_bits} bits; "
                                "use the modular strategy or raise the cap")


def _round_div(a: int, b: int) -> int:
    """Quotient q with |a - q*b| <= |b|/2."""
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1 if (r > 0) == (b > 0) else -1
    return q


def _symmetric_mod(a: int, modulus: Optional[int]) -> int:
    if modulus is None:
        return a
    a %= modulus
    return a - modulus if 2 * a > modulus else a


def _choose_pivot(rows: RowDicts, cols: Dict[int, Set[int]]) -> Tuple[int, int]:
    """Entry minimizing (bit-length, Markowitz fill-in); first found wins ties."""
    best = None
    best_key = None
    for r in sorted(rows):
        row = rows[r]
        row_fill = len(row) - 1
        for c in sorted(row):
            key = (abs(row[c]).bit_length(), row_fill * (len(cols[c]) - 1))
            if best_key is None or key < best_key:
                best, best_key = (r, c), key
                if key == (1, 0):
                    return best
    return best


def _add_row_multiple(rows: RowDicts, cols: Dict[int, Set[int]], target: int, source: int,
                      factor: int, max_bits: int, modulus: Optional[int]) -> None:
    """rows[target] += factor * rows[source]."""
    row_t = rows[target]
    for c, value in rows[source].items():
        new = _symmetric_mod(row_t.get(c, 0) + factor * value, modulus)
        if new:
            if abs(new).bit_length() > max_bits:
                raise CapacityError(f"Coefficient growth beyond {max_bits} bits during elimination")
            if c not in row_t:
                cols.setdefault(c, set()).add(target)
            row_t[c] = new
        elif c in row_t:
            del row_t[c]
            cols[c].discard(target)
            if not cols[c]:
                del cols[c]
    if not row_t:
        del rows[target]


def _eliminate(rows: RowDicts, max_bits: int, modulus: Optional[int] = None) -> Tuple[List[int], int]:
    """
    Diagonalize by unimodular row and column operations. Returns the absolute
    diagonal entries (in pivot order, not yet a divisibility chain) and the
    number of eliminated pivots. With `modulus`, entries are kept reduced.
    """
    if modulus is not None:
        rows = {r: {c: _symmetric_mod(v, modulus) for c, v in row.items()} for r, row in rows.items()}
        rows = {r: {c: v for c, v in row.items() if v} for r, row in rows.items()}
        rows = {r: row for r, row in rows.items() if row}
    cols: Dict[int, Set[int]] = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)

    diagonal: List[int] = []
    while rows:
        i, j = _choose_pivot(rows, cols)
        while True:
            pivot = rows[i][j]
            # Clear column j with row operations.
            moved = False
            for r in sorted(cols[j] - {i}):
                q = _round_div(rows[r][j], pivot)
                _add_row_multiple(rows, cols, r, i, -q, max_bits, modulus)
                if r in rows and j in rows[r]:
                    i, moved = r, True
                    break
            if moved:
                continue
            # Column j holds only the pivot, so column operations touch row i alone.
            pivot = rows[i][j]
            row_i = rows[i]
            moved = False
            for c in sorted(row_i):
                if c == j:
                    continue
                rem = _symmetric_mod(row_i[c] - _round_div(row_i[c], pivot) * pivot, modulus)
                if rem == 0:
                    del row_i[c]
                    cols[c].discard(i)
                    if not cols[c]:
                        del cols[c]
                else:
                    row_i[c] = rem
                    j, moved = c, True
                    break
            if not moved:
                break
        diagonal.append(abs(rows[i][j]))
        del rows[i]
        del cols[j]
    return diagonal, len(diagonal)


def _divisor_chain(diagonal: Iterable[int]) -> Tuple[int, ...]:
    """Turn nonzero diagonal entries into the invariant factor chain."""
    d = sorted(abs(x) for x in diagonal if x)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            if d[j] % d[i]:
                g = gcd(d[i], d[j])
                d[i], d[j] = g, d[i] // g * d[j]
    return tuple(d)


def _snf_modular(m: SparseIntMatrix, config: EngineConfig) -> Optional[SnfResult]:
    """
    Invariant factors modulo D = |det| of a nonsingular maximal minor. Valid
    when the matrix has full row rank (after transposing so rows <= cols),
    because the column lattice then contains D times the ambient lattice.
    """
    dense = m.to_dense()
    n_rows, n_cols = m.rows, m.cols
    if n_rows > n_cols:
        dense = [list(col) for col in zip(*dense)]
        n_rows, n_cols = n_cols, n_rows
    pivots = independent_columns(dense, n_cols)
    if len(pivots) < n_rows:
        return None
    minor = [[row[c] for c in pivots] for row in dense]
    modulus = abs(det_multimodular(minor))
    LOGGER.debug("Modular SNF of %s modulo a %d-bit determinant", m, modulus.bit_length())
    if modulus == 1:
        return SnfResult((1,) * n_rows)
    rows = {r: {c: v for c, v in enumerate(row) if v} for r, row in enumerate(dense)}
    diagonal, found = _eliminate({r: row for r, row in rows.items() if row}, config.max_bits, modulus)
    invariants = [gcd(g, modulus) for g in diagonal] + [modulus] * (n_rows - found)
    return SnfResult(_divisor_chain(invariants))


# Ranks, echelon bases and determinants

class _EchelonBasis:
    """Incremental content-free integer echelon basis of a rational span."""

    def __init__(self) -> None:
        self.by_lead: Dict[int, Dict[int, int]] = {}

    def reduce(self, vec: Dict[int, int]) -> Dict[int, int]:
        vec = {k: v for k, v in vec.items() if v}
        while vec:
            lead = min(vec)
            basis = self.by_lead.get(lead)
            if basis is None:
                return vec
            a, p = vec[lead], basis[lead]
            g = gcd(a, p)
            fa, fp = p // g, a // g
            new = {k: fa * v for k, v in vec.items()}
            for k, v in basis.items():
                new[k] = new.get(k, 0) - fp * v
            vec = _primitive({k: v for k, v in new.items() if v})
        return vec

    def add(self, vec: Dict[int, int]) -> bool:
        """Insert `vec`; returns False when it is already in the span."""
        reduced = self.reduce(vec)
        if not reduced:
            return False
        self.by_lead[min(reduced)] = _primitive(reduced)
        return True

    def __len__(self) -> int:
        return len(self.by_lead)


def _primitive(vec: Dict[int, int]) -> Dict[int, int]:
    content = 0
    for v in vec.values():
        content = gcd(content, v)
    if content <= 1:
        return vec
    return {k: v // content for k, v in vec.items()}


def rational_rank(m: SparseIntMatrix) -> int:
    """Rank over the rationals, by integer-preserving row reduction."""
    basis = _EchelonBasis()
    for row in m.row_dicts().values():
        basis.add(row)
    return len(basis)


def modular_rank(m: SparseIntMatrix, prime: int = _RANK_PRIME) -> int:
    """Rank over GF(prime) by dense elimination; a lower bound for the rational rank."""
    if prime >= 2**31:
        raise ValidationError(f"Prime {prime} too large for 64-bit elimination")
    a = np.zeros(m.shape, dtype=np.int64)
    for (r, c), value in m.entries.items():
        a[r, c] = value % prime
    rank = 0
    for c in range(m.cols):
        if rank == m.rows:
            break
        nonzero = np.flatnonzero(a[rank:, c])
        if not nonzero.size:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
        a[rank, c:] = a[rank, c:] * pow(int(a[rank, c]), -1, prime) % prime
        below = rank + 1 + np.flatnonzero(a[rank + 1:, c])
        if below.size:
            a[below, c:] = (a[below, c:] - np.outer(a[below, c], a[rank, c:]) % prime) % prime
        rank += 1
    return rank


def certified_rank(m: SparseIntMatrix, upper_bound: int, config: EngineConfig = DEFAULT_CONFIG) -> int:
    """
    Rational rank of `m` given an upper bound known to hold. The Gram matrix
    has the same rational rank, and its rank modulo a prime is a lower bound;
    when that meets the bound the rank is exact, otherwise the Smith form
    decides.
    """
    if m.is_zero():
        return 0
    bound = min(upper_bound, m.rows, m.cols)
    gram = m @ m.transpose() if m.rows <= m.cols else m.transpose() @ m
    lower = modular_rank(gram)
    if lower == bound:
        return lower
    LOGGER.debug("Rank of %s modulo a prime is %d below the bound %d; using the Smith form", m, lower, bound)
    return snf(m, config).rank


def independent_columns(dense: Sequence[Sequence[int]], cols: Optional[int] = None) -> List[int]:
    """
    Indices of the greedy left-to-right maximal independent set of columns;
    the first column that raises the rank is taken.
    """
    cols = len(dense[0]) if cols is None and dense else (cols or 0)
    basis = _EchelonBasis()
    chosen = []
    for c in range(cols):
        column = {r: row[c] for r, row in enumerate(dense) if row[c]}
        if column and basis.add(column):
            chosen.append(c)
    return chosen


def det_integer(matrix: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValidationError("Determinant of a non-square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_rational(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a rational matrix: clear row denominators, then Bareiss."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValidationError("Determinant of a non-square matrix")
    scale = 1
    rows = []
    for row in matrix:
        row = [Fraction(x) for x in row]
        den = lcm(1, *(x.denominator for x in row))
        rows.append([int(x * den) for x in row])
        scale *= den
    return Fraction(det_integer(rows), scale)


def _det_mod_p(matrix: Sequence[Sequence[int]], p: int) -> int:
    a = [[x % p for x in row] for row in matrix]
    n = len(a)
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k] % p
        inv = pow(a[k][k], -1, p)
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] * inv % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[k])]
    return det % p


def det_multimodular(matrix: Sequence[Sequence[int]]) -> int:
    """Integer determinant by Chinese remaindering past the Hadamard bound."""
    n = len(matrix)
    if n == 0:
        return 1
    bound = prod(isqrt(sum(x * x for x in row)) + 1 for row in matrix)
    moduli: List[int] = []
    residues: List[int] = []
    modulus = 1
    p = _CRT_PRIME_START
    while modulus <= 2 * bound:
        residues.append(_det_mod_p(matrix, p))
        moduli.append(p)
        modulus *= p
        p = prevprime(p)
    value, modulus = crt(moduli, residues, check=False)
    value = int(value)
    return value - modulus if 2 * value > modulus else value


def inverse_rational(matrix: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Gauss-Jordan inverse over the rationals."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise ValidationError("Singular matrix has no inverse")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]


def inverse_unimodular(matrix: Sequence[Sequence[int]]) -> DenseMatrix:
    """Integer inverse of a matrix with determinant +-1."""
    det = det_integer(matrix)
    if abs(det) != 1:
        raise ValidationError(f"Matrix with determinant {det} is not unimodular")
    return [[int(x) for x in row] for row in inverse_rational(matrix)]


# Hermite normal form, kernels and saturation

@dataclass(frozen=True)
class HnfResult:
    """
    Column Hermite form H = A U with U unimodular; `inverse` is U^-1 and the
    first `rank` columns of H are the nonzero ones.
    """
    form: DenseMatrix
    transform: DenseMatrix
    inverse: DenseMatrix
    rank: int


def hermite_normal_form(m: SparseIntMatrix, max_bits: int = DEFAULT_CONFIG.max_bits) -> HnfResult:
    a = m.to_dense()
    n = m.cols
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    u_inv = [[int(i == j) for j in range(n)] for i in range(n)]

    def combine(j1: int, j2: int, x: int, y: int, s: int, t: int) -> None:
        # col_j1, col_j2 <- x*col_j1 + y*col_j2, s*col_j1 + t*col_j2 with x*t - y*s = 1
        for mat in (a, u):
            for row in mat:
                c1, c2 = row[j1], row[j2]
                row[j1], row[j2] = x * c1 + y * c2, s * c1 + t * c2
        r1, r2 = u_inv[j1], u_inv[j2]
        u_inv[j1] = [t * p - s * q for p, q in zip(r1, r2)]
        u_inv[j2] = [-y * p + x * q for p, q in zip(r1, r2)]

    k = 0
    for i in range(m.rows):
        if k == n:
            break
        for c in range(k + 1, n):
            b = a[i][c]
            if b == 0:
                continue
            p = a[i][k]
            if p == 0:
                combine(k, c, 0, 1, -1, 0)
                continue
            g, x, y = _xgcd(p, b)
            combine(k, c, x, y, -b // g, p // g)
        if a[i][k] == 0:
            continue
        if a[i][k] < 0:
            _negate_column(a, u, u_inv, k)
        pivot = a[i][k]
        for c in range(k):
            q = a[i][c] // pivot
            if q:
                for mat in (a, u):
                    for row in mat:
                        row[c] -= q * row[k]
                u_inv[k] = [p + q * r for p, r in zip(u_inv[k], u_inv[c])]
        _check_bits((v for row in a for v in row), max_bits)
        k += 1
    return HnfResult(form=a, transform=u, inverse=u_inv, rank=k)


def _negate_column(a: DenseMatrix, u: DenseMatrix, u_inv: DenseMatrix, k: int) -> None:
    for mat in (a, u):
        for row in mat:
            row[k] = -row[k]
    u_inv[k] = [-x for x in u_inv[k]]


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def integer_kernel(m: SparseIntMatrix, max_bits: int = DEFAULT_CONFIG.max_bits) -> List[List[int]]:
    """Saturated basis of {x in Z^cols : m x = 0}, as a list of vectors."""
    hnf = hermite_normal_form(m, max_bits)
    return [[hnf.transform[r][c] for r in range(m.cols)] for c in range(hnf.rank, m.cols)]


def saturate(generators: Sequence[Sequence[int]], max_bits: int = DEFAULT_CONFIG.max_bits) -> List[List[int]]:
    """
    Basis of (span_Q of the generators) intersected with Z^n, returned as
    rows. Works with one constraint per distinct column, so the ambient
    dimension may be large as long as the rank is small.
    """
    gens = [[int(x) for x in g] for g in generators if any(g)]
    if not gens:
        return []
    n = len(gens[0])
    echelon = _EchelonBasis()
    basis_rows = [g for g in gens if echelon.add({c: v for c, v in enumerate(g) if v})]
    r = len(basis_rows)
    pivots = independent_columns(basis_rows, n)
    square_inv = inverse_rational([[row[c] for c in pivots] for row in basis_rows])
    coords = [[sum((square_inv[i][l] * basis_rows[l][j] for l in range(r)), Fraction(0)) for j in range(n)]
              for i in range(r)]
    delta = lcm(1, *(x.denominator for row in coords for x in row))
    scaled = [[int(x * delta) for x in row] for row in coords]

    lattice = [[int(i == j) for j in range(r)] for i in range(r)]
    seen: Set[Tuple[int, ...]] = set()
    for j in range(n):
        column = tuple(scaled[i][j] % delta for i in range(r))
        if not any(column) or column in seen:
            continue
        seen.add(column)
        values = [sum(y[l] * column[l] for l in range(r)) % delta for y in lattice]
        if not any(values):
            continue
        kernel = integer_kernel(SparseIntMatrix.from_dense([values + [delta]]), max_bits)
        lattice = [[sum(k[i] * lattice[i][l] for i in range(r)) for l in range(r)] for k in kernel]

    result = []
    for y in lattice:
        row = []
        for j in range(n):
            total = sum(y[l] * scaled[l][j] for l in range(r))
            if total % delta:
                raise CapacityError("Saturation produced a non-integral vector")
            row.append(total // delta)
        result.append(row)
    return result
