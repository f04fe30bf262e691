"""
Exact integer linear algebra over numpy object arrays.

``normal_form`` diagonalizes an integer matrix by unimodular row and column
operations (Euclid steps on pairs of entries). The diagonal is not reduced to
Smith form, which the solver does not need: A x = b is solved by D y = Sinv b
and x = Tinv y.
"""

import logging
from typing import Optional, Tuple

import attr
import numpy as np

logger = logging.getLogger(__name__)


def exgcd(a: int, b: int) -> np.ndarray:
    """A 2x2 integer matrix M of determinant 1 with M @ [a, b] = [gcd(a, b), 0].

    When a divides b, M[0, 1] is 0.
    """
    a_sign = -1 if a < 0 else 1
    b_sign = -1 if b < 0 else 1
    a, b = a * a_sign, b * b_sign
    M = np.array([[b, 0, 1], [a, 1, 0]], dtype=object)
    while M[1, 0] != 0:
        k = M[0, 0] // M[1, 0]
        M[0] -= k * M[1]
        M = M[::-1]
    g = M[0, 0]
    M = M[:, 1:] * np.array([a_sign, b_sign], dtype=object)
    if g != 0:
        M[1] = [-b_sign * b // g, a_sign * a // g]
    return M


@attr.s(auto_attribs=True)
class NormalForm:
    """Sinv @ A @ Tinv == D with D diagonal (same shape as A) and Sinv, Tinv unimodular."""
    D: np.ndarray
    Sinv: np.ndarray
    Tinv: np.ndarray

    @property
    def diagonal(self) -> np.ndarray:
        k = min(self.D.shape)
        return np.array([self.D[i, i] for i in range(k)], dtype=object)

    def kernel(self) -> np.ndarray:
        """Columns spanning the integer kernel of A."""
        diagonal = list(self.diagonal) + [0] * (self.D.shape[1] - min(self.D.shape))
        zero = np.array([d == 0 for d in diagonal], dtype=bool)
        return self.Tinv[:, zero]


def normal_form(A: np.ndarray) -> NormalForm:
    """Diagonalize the integer matrix A with exact arithmetic."""
    D = np.array(A, dtype=object)
    rows, cols = D.shape
    Sinv = np.eye(rows, dtype=object)
    Tinv = np.eye(cols, dtype=object)

    def clear_column(i: int) -> bool:
        if all(D[j, i] == 0 for j in range(i + 1, rows)):
            return False
        for j in range(i + 1, rows):
            if D[j, i] == 0:
                continue
            M = exgcd(D[i, i], D[j, i])
            D[[i, j]] = M @ D[[i, j]]
            Sinv[[i, j]] = M @ Sinv[[i, j]]
        return True

    def clear_row(i: int) -> bool:
        if all(D[i, j] == 0 for j in range(i + 1, cols)):
            return False
        for j in range(i + 1, cols):
            if D[i, j] == 0:
                continue
            M = exgcd(D[i, i], D[i, j]).T
            D[:, [i, j]] = D[:, [i, j]] @ M
            Tinv[:, [i, j]] = Tinv[:, [i, j]] @ M
        return True

    for i in range(min(rows, cols)):
        clear_column(i)
        while clear_row(i) and clear_column(i):
            pass
    return NormalForm(D, Sinv, Tinv)


def solve_integer_system(form: NormalForm, b: np.ndarray) -> Optional[np.ndarray]:
    """An integer x with A x = b (zero on the free coordinates), or None."""
    c = form.Sinv @ np.array(b, dtype=object)
    rows, cols = form.D.shape
    y = np.zeros(cols, dtype=object)
    for i in range(rows):
        d = form.D[i, i] if i < cols else 0
        if d == 0:
            if c[i] != 0:
                return None
        elif c[i] % d != 0:
            return None
        else:
            y[i] = c[i] // d
    return form.Tinv @ y


def reduce_l1(x: np.ndarray, kernel: np.ndarray, max_rounds: int = 1000) -> Tuple[np.ndarray, int]:
    """Apply +/- kernel moves while they strictly lower the l1 norm; returns (x, moves)."""
    x = np.array(x, dtype=object)
    norm = sum(abs(v) for v in x)
    moves = 0
    for _ in range(max_rounds):
        improved = False
        for j in range(kernel.shape[1]):
            for sign in (1, -1):
                candidate = x + sign * kernel[:, j]
                candidate_norm = sum(abs(v) for v in candidate)
                if candidate_norm < norm:
                    x, norm = candidate, candidate_norm
                    moves += 1
                    improved = True
        if not improved:
            break
    return x, moves
