# representations/weights.py
"""
Highest weights for the root systems A1, A2 and D_{n+1}, the Cartan
involution at weight level, and Weyl's dimension formula.

A2 and A1 weights are written in fundamental-weight coordinates, D-type
weights in the orthonormal basis e_1, ..., e_{n+1}.
"""

# Standard Imports
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence, Tuple, Union
# Local Imports
from ..core.errors import ParseError, ValidationError

RationalVector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class RootSystemData:
    """Positive roots, half-sum ρ and the inner product, all in one coordinate basis."""
    name: str
    positive_roots: Tuple[RationalVector, ...]
    rho: RationalVector
    gram: Tuple[RationalVector, ...]

    def __post_init__(self) -> None:
        dim = len(self.rho)
        object.__setattr__(self, "rho", tuple(Fraction(x) for x in self.rho))
        object.__setattr__(self, "positive_roots",
                           tuple(tuple(Fraction(x) for x in root) for root in self.positive_roots))
        object.__setattr__(self, "gram", tuple(tuple(Fraction(x) for x in row) for row in self.gram))
        if len(self.gram) != dim or any(len(row) != dim for row in self.gram):
            raise ValidationError(f"Inner product of {self.name} does not match rank {dim}")
        for root in self.positive_roots:
            if len(root) != dim:
                raise ValidationError(f"Root {root} of {self.name} has the wrong length")
            if self.inner(self.rho, root) <= 0:
                raise ValidationError(f"<rho, {root}> is not positive in {self.name}")

    def __str__(self) -> str:
        return self.name

    @property
    def rank(self) -> int:
        return len(self.rho)

    def inner(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return sum((Fraction(u[i]) * self.gram[i][j] * Fraction(v[j])
                    for i in range(self.rank) for j in range(self.rank) if self.gram[i][j]), Fraction(0))

    @classmethod
    def a1(cls) -> "RootSystemData":
        return cls("A1", ((2,),), (1,), ((Fraction(1, 2),),))

    @classmethod
    def a2(cls) -> "RootSystemData":
        third = Fraction(1, 3)
        return cls("A2", ((2, -1), (-1, 2), (1, 1)), (1, 1), ((2 * third, third), (third, 2 * third)))

    @classmethod
    def d_type(cls, n: int) -> "RootSystemData":
        """D_{n+1} in the basis e_1, ..., e_{n+1}: roots e_i ± e_j, ρ = (n, n-1, ..., 0)."""
        if n < 1:
            raise ValidationError(f"D_(n+1) needs n >= 1, got {n}")
        size = n + 1
        roots = []
        for i in range(size):
            for j in range(i + 1, size):
                for sign in (-1, 1):
                    root = [0] * size
                    root[i], root[j] = 1, sign
                    roots.append(tuple(root))
        identity = tuple(tuple(int(i == j) for j in range(size)) for i in range(size))
        return cls(f"D{size}", tuple(roots), tuple(range(n, -1, -1)), identity)


@dataclass(frozen=True)
class HighestWeight:
    """A dominant integral weight of A1, A2 or D_{n+1}."""
    root_system: str
    coefficients: Tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(int(x) for x in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        match self.root_system:
            case "A1" | "A2":
                expected = 1 if self.root_system == "A1" else 2
                if len(coeffs) != expected:
                    raise ValidationError(f"{self.root_system} weights have {expected} coordinates")
                if any(x < 0 for x in coeffs):
                    raise ValidationError(f"{self} is not dominant: coordinates must be >= 0")
            case "D":
                if len(coeffs) < 2:
                    raise ValidationError("D-type weights need at least 2 coordinates")
                head = coeffs[:-1]
                if any(a < b for a, b in zip(head, head[1:])) or head[-1] < abs(coeffs[-1]):
                    raise ValidationError(f"{self} is not dominant: need k1 >= ... >= kn >= |k(n+1)|")
            case _:
                raise ValidationError(f"Unsupported root system {self.root_system!r}")

    def __str__(self) -> str:
        return f"{self.root_system}:{','.join(str(x) for x in self.coefficients)}"

    @classmethod
    def parse(cls, text: str) -> "HighestWeight":
        """Read `A2:3,1`, `A1:4` or `D:k1,...,kn+1`."""
        kind, sep, body = text.strip().partition(":")
        if not sep or not body:
            raise ParseError(f"Weight {text!r} is not of the form SYSTEM:c1,c2,...", column=1, source="--weight")
        try:
            coeffs = tuple(int(x) for x in body.split(","))
        except ValueError:
            raise ParseError(f"Weight coordinates {body!r} are not integers", column=len(kind) + 2,
                             source="--weight")
        return cls(kind.strip().upper(), coeffs)

    @property
    def n(self) -> int:
        """The n of D_{n+1}."""
        return len(self.coefficients) - 1

    def root_system_data(self) -> RootSystemData:
        match self.root_system:
            case "A1":
                return RootSystemData.a1()
            case "A2":
                return RootSystemData.a2()
            case _:
                return RootSystemData.d_type(self.n)

    def scaled(self, m: int) -> "HighestWeight":
        return HighestWeight(self.root_system, tuple(m * x for x in self.coefficients))

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def dimension(self) -> int:
        return weyl_dim(self.root_system_data(), self)


def theta_twist(w: HighestWeight) -> HighestWeight:
    """Weight of the representation composed with the Cartan involution."""
    match w.root_system:
        case "D":
            return HighestWeight("D", w.coefficients[:-1] + (-w.coefficients[-1],))
        case "A2":
            return HighestWeight("A2", (w.coefficients[1], w.coefficients[0]))
        case _:
            return w


def is_theta_fixed(w: HighestWeight) -> bool:
    return theta_twist(w) == w


def weyl_dim(rs: RootSystemData, w: Union[HighestWeight, Sequence[int]]) -> int:
    """Π_{α>0} <w + ρ, α> / <ρ, α>."""
    coeffs = w.coefficients if isinstance(w, HighestWeight) else tuple(w)
    if len(coeffs) != rs.rank:
        raise ValidationError(f"Weight {coeffs} does not live in {rs}")
    shifted = tuple(Fraction(x) + r for x, r in zip(coeffs, rs.rho))
    value = Fraction(1)
    for root in rs.positive_roots:
        if rs.inner(coeffs, root) < 0:
            raise ValidationError(f"Weight {coeffs} is not dominant for {rs}")
        value *= rs.inner(shifted, root) / rs.inner(rs.rho, root)
    if value.denominator != 1:
        raise ValidationError(f"Weight {coeffs} is not integral for {rs}")
    return int(value)


def descends_to_projective(w: HighestWeight) -> bool:
    """Whether the center acts trivially: even coordinate sum (D), τ1 ≡ τ2 mod 3 (A2), even (A1)."""
    match w.root_system:
        case "D":
            return sum(w.coefficients) % 2 == 0
        case "A2":
            return (w.coefficients[0] - w.coefficients[1]) % 3 == 0
        case _:
            return w.coefficients[0] % 2 == 0


# Named weights

def omega_plus(n: int) -> HighestWeight:
    return HighestWeight("D", (1,) * (n + 1))


def omega_minus(n: int) -> HighestWeight:
    return theta_twist(omega_plus(n))


def a2_fundamental(i: int) -> HighestWeight:
    if i not in (1, 2):
        raise ValidationError(f"A2 has fundamental weights 1 and 2, not {i}")
    return HighestWeight("A2", (1, 0) if i == 1 else (0, 1))


def so_tau_weight(n: int, m: int) -> HighestWeight:
    """τ(m): 2m(e_1 + ... + e_{n+1}) for n even, m(e_1 + ... + e_{n+1}) for n odd."""
    if n < 1 or m < 0:
        raise ValidationError(f"τ(m) needs n >= 1 and m >= 0, got n={n}, m={m}")
    return omega_plus(n).scaled(2 * m if n % 2 == 0 else m)


def _check_positive(**values: int) -> None:
    for name, value in values.items():
        if value < 1:
            raise ValidationError(f"{name} must be >= 1, got {value}")


def so_module_rank(n: int, d: int, m: int) -> int:
    """Z-rank of M_m: d copies of (τ(m) ⊕ τ(m)_θ)^{⊗d}, i.e. d·(2·dim τ(m))^d."""
    _check_positive(n=n, d=d, m=m)
    return d * (2 * so_tau_weight(n, m).dimension()) ** d


def so_rank_degree(n: int, d: int) -> int:
    return d * n * (n + 1) // 2


def so_rank_leading_coefficient(n: int, d: int) -> Fraction:
    """
    Exact limit of so_module_rank(n, d, m) / m^(d n (n+1) / 2). With τ(m) = c·m·(1, ..., 1),
    dim τ(m) has leading coefficient Π_{i<j} 2c / (ρ_i + ρ_j).
    """
    _check_positive(n=n, d=d)
    c = 2 if n % 2 == 0 else 1
    rho = list(range(n, -1, -1))
    leading = prod((Fraction(2 * c, rho[i] + rho[j]) for i in range(n + 1) for j in range(i + 1, n + 1)),
                   start=Fraction(1))
    return d * (2 * leading) ** d


def sl3_rank_leading_coefficient(tau1: int, tau2: int) -> Tuple[int, Fraction]:
    """(degree, coefficient) of m -> dim V(τ1 m ω1 + τ2 m ω2) from Weyl's formula."""
    HighestWeight("A2", (tau1, tau2))
    if tau1 and tau2:
        return 3, Fraction(tau1 * tau2 * (tau1 + tau2), 2)
    if tau1 or tau2:
        return 2, Fraction((tau1 + tau2) ** 2, 2)
    return 0, Fraction(1)


def sl3_printed_coefficient(tau1: int, tau2: int) -> Fraction:
    """The alternative cubic coefficient (τ1²τ1 + τ2²τ1)/2, kept to contrast with the Weyl-formula value."""
    return Fraction(tau1 ** 2 * tau1 + tau2 ** 2 * tau1, 2)
