"""
Nested grids n_k = 2^(k-1) (n_1 + 1) - 1.

Grid points theta_{j,n} = j pi / (n+1) are carried as exact rationals
j/(n+1); pi is multiplied in only when a transcendental is evaluated.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..exceptions import InvalidGridError

# Extra nodes beyond K in the interpolation stencil: level k uses K - k + 5 nodes
STENCIL_EXTRA = 5


def grid_point(j: int, n: int) -> Fraction:
    """theta_{j,n} / pi as an exact rational."""
    return Fraction(j, n + 1)


def c_rule(j: int, n: int, c: int) -> tuple[int, int]:
    """The (j, n) pair with the same grid point after refining by c: (c j, c (n+1) - 1)."""
    return c * j, c * (n + 1) - 1


@dataclass(frozen=True)
class GridSpec:
    """
    Coarse order n_1 and number of levels K.

    Attributes:
        n_1: Coarse matrix order
        K: Number of levels
    """

    n_1: int
    K: int

    def __post_init__(self):
        if self.K < 1:
            raise InvalidGridError(f"K must be >= 1, got {self.K}")
        if self.n_1 < self.K + STENCIL_EXTRA:
            raise InvalidGridError(
                f"n_1 = {self.n_1} too small for K = {self.K}: need n_1 >= K + {STENCIL_EXTRA}"
            )

    @property
    def levels(self) -> range:
        return range(1, self.K + 1)

    def order(self, k: int) -> int:
        """n_k."""
        return 2 ** (k - 1) * (self.n_1 + 1) - 1

    @property
    def orders(self) -> list[int]:
        return [self.order(k) for k in self.levels]

    def step(self, k: int) -> Fraction:
        """h_k = 1 / (n_k + 1)."""
        return Fraction(1, self.order(k) + 1)

    @property
    def steps(self) -> list[Fraction]:
        return [self.step(k) for k in self.levels]

    def index(self, j_1: int, k: int) -> int:
        """j_k = 2^(k-1) j_1."""
        return 2 ** (k - 1) * j_1

    def indices(self, k: int) -> list[int]:
        """All j_k for j_1 = 1..n_1."""
        return [self.index(j, k) for j in range(1, self.n_1 + 1)]

    def node(self, i: int) -> Fraction:
        """sigma_i / pi for i = 0..n_1+1 (endpoints included)."""
        if not 0 <= i <= self.n_1 + 1:
            raise IndexError(f"node index {i} outside 0..{self.n_1 + 1}")
        return grid_point(i, self.n_1)

    @property
    def nodes(self) -> list[Fraction]:
        return [self.node(i) for i in range(self.n_1 + 2)]

    def stencil_size(self, k: int) -> int:
        """Number of interpolation nodes used for coefficient k."""
        return self.K - k + STENCIL_EXTRA

    def verify_nesting(self) -> None:
        """Check theta_{j_1,n_1} = theta_{j_k,n_k} exactly on every level."""
        for k in self.levels:
            n_k = self.order(k)
            for j in range(1, self.n_1 + 1):
                if grid_point(self.index(j, k), n_k) != grid_point(j, self.n_1):
                    raise InvalidGridError(f"grid point mismatch at j_1={j}, k={k}")

    def to_dict(self) -> dict:
        return {"n_1": self.n_1, "K": self.K, "orders": self.orders}


def make_grid(n_1: int, K: int) -> GridSpec:
    """
    Build and verify the nested grid.

    Raises:
        InvalidGridError: K < 1 or n_1 < K + 5
    """
    grid = GridSpec(int(n_1), int(K))
    grid.verify_nesting()
    return grid
