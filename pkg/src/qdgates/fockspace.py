"""Truncated Fock-space matrices for standard and deformed ladder operators.

Operators act on the retained levels ``0 .. cutoff-1`` as plain numpy
arrays.  The deformed annihilation/creation pair is obtained by dressing the
standard ladder matrices with a diagonal factor

    F(n) = sqrt((q**n * psi1 - q**-n * psi2) / (n * (q - q**-1)))

built from two positive functions of q, and the deformed number operator is
the standard one shifted by ``ln(psi2)/s`` times the identity.

The value of the dressing at ``n = 0`` is a removable 0/0 point when
``psi1 == psi2`` and is assigned its limit ``psi * s / sinh(s)`` (under the
square root); in the general case the expression is simply evaluated just
off zero.  Either way the level-0 value multiplies only zero matrix entries,
so any finite convention leaves the operators unchanged.

Constructors accept a ``dtype`` so that callers needing identity residuals
below one float64 ulp of the operator magnitude (the audit module) can run
the same pipeline in ``np.longdouble``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .qnumber import DeformationParam

# Stand-in evaluation point for the 0/0 dressing value when psi1 != psi2.
GENERAL_LIMIT_LEVEL = 1e-8

CONSTANT_ONE = "constant_one"
POWER_OF_Q = "power_of_q"


class RadicandError(ValueError):
    """A dressing factor would need the square root of a negative number."""


@dataclass(frozen=True)
class TruncatedFockSpace:
    """Fock levels 0 .. cutoff-1 kept; everything above is projected away."""

    cutoff: int

    def __post_init__(self) -> None:
        if not isinstance(self.cutoff, int) or self.cutoff < 2:
            raise ValueError(f"cutoff must be an integer >= 2, got {self.cutoff!r}")


@dataclass(frozen=True)
class FunctionChoice:
    """Values of the six arbitrary dressing functions at the working q.

    ``psi1``/``psi2`` dress the control-side oscillator pair and ``beta1``/
    ``beta2`` the target side.  ``psi3``/``psi4`` belong to the second
    oscillator in the Hadamard construction and default to ``psi1``/``psi2``.
    All six sit under square roots and must be strictly positive.
    """

    psi1: float = 1.0
    psi2: float = 1.0
    beta1: float = 1.0
    beta2: float = 1.0
    psi3: float | None = None
    psi4: float | None = None

    def __post_init__(self) -> None:
        if self.psi3 is None:
            object.__setattr__(self, "psi3", self.psi1)
        if self.psi4 is None:
            object.__setattr__(self, "psi4", self.psi2)
        for name in ("psi1", "psi2", "psi3", "psi4", "beta1", "beta2"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and value > 0):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")

    @classmethod
    def unit(cls) -> "FunctionChoice":
        """The undeformed-compatible choice: all six functions equal to 1."""
        return cls()

    @classmethod
    def from_families(
        cls, psi_family: "FunctionFamily", beta_family: "FunctionFamily", q: float
    ) -> "FunctionChoice":
        psi = psi_family.evaluate(q)
        beta = beta_family.evaluate(q)
        return cls(psi1=psi, psi2=psi, beta1=beta, beta2=beta)


@dataclass(frozen=True)
class FunctionFamily:
    """Either the constant function 1 or the power q**exponent.

    A family is evaluated afresh at every grid point of a sweep, so a single
    object describes the arbitrary-function choice across all of them.
    """

    kind: str = CONSTANT_ONE
    exponent: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in (CONSTANT_ONE, POWER_OF_Q):
            raise ValueError(f"unknown function family kind {self.kind!r}")
        object.__setattr__(self, "exponent", float(self.exponent))

    def evaluate(self, q: float) -> float:
        if self.kind == CONSTANT_ONE:
            return 1.0
        return q ** self.exponent

    def label(self) -> str:
        if self.kind == CONSTANT_ONE:
            return "1"
        return f"q^{self.exponent:g}"

    @classmethod
    def parse(cls, text: str) -> "FunctionFamily":
        """Parse "1", "q", or "q^<exponent>"."""
        text = text.strip()
        if text == "1":
            return cls(CONSTANT_ONE)
        if text == "q":
            return cls(POWER_OF_Q, 1.0)
        if text.startswith("q^"):
            try:
                return cls(POWER_OF_Q, float(text[2:]))
            except ValueError:
                pass
        raise ValueError(f"cannot parse function family {text!r}; expected '1', 'q' or 'q^<float>'")


def _radicand(n, s, psi1, psi2):
    """Square of the dressing factor; all arguments share one scalar type."""
    if psi1 == psi2:
        if n == 0:
            return psi1 * s / np.sinh(s)
        return psi1 * np.sinh(n * s) / (n * np.sinh(s))
    if n == 0:
        n = type(s)(GENERAL_LIMIT_LEVEL)
    return (np.exp(n * s) * psi1 - np.exp(-n * s) * psi2) / (2 * n * np.sinh(s))


def f_value(n: float, p: DeformationParam, psi1: float, psi2: float) -> float:
    """Dressing eigenvalue at occupation ``n``.

    Arguments may be negative: the shifted dressing of the second oscillator
    in a pair evaluates at ``1 - n1``, which drops below zero on a truncated
    space.  A negative radicand raises :class:`RadicandError` naming the
    offending point.
    """
    r = _radicand(float(n), p.s, float(psi1), float(psi2))
    if r < 0:
        raise RadicandError(
            f"negative radicand at level n={n} with psi1={psi1}, psi2={psi2}"
        )
    return float(math.sqrt(r))


def ladder_ops(
    space: TruncatedFockSpace, dtype=np.float64
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Standard annihilation, creation and number matrices.

    ``a`` lowers with coefficient sqrt(n), its transpose raises, and the
    number operator is diag(0, ..., cutoff-1).  The matrices are real, so
    the creation operator equals the conjugate transpose of ``a``.
    """
    d = space.cutoff
    a = np.zeros((d, d), dtype=dtype)
    for n in range(1, d):
        a[n - 1, n] = np.sqrt(dtype(n))
    n_hat = np.diag(np.arange(d).astype(dtype))
    return a, a.T.copy(), n_hat


def dressing_diag(
    space: TruncatedFockSpace,
    p: DeformationParam,
    psi1: float,
    psi2: float,
    dtype=np.float64,
    arguments: Sequence[float] | None = None,
) -> np.ndarray:
    """Diagonal dressing matrix, one eigenvalue per retained level.

    ``arguments`` overrides the evaluation points (default: the level
    numbers themselves); the shifted second-oscillator dressing passes
    ``1 - n`` here.
    """
    if arguments is None:
        arguments = range(space.cutoff)
    s = dtype(p.s)
    g1 = dtype(psi1)
    g2 = dtype(psi2)
    values = np.zeros(space.cutoff, dtype=dtype)
    for i, n in enumerate(arguments):
        r = _radicand(dtype(n), s, g1, g2)
        if r < 0:
            raise RadicandError(
                f"negative radicand at level n={n} with psi1={psi1}, psi2={psi2}"
            )
        values[i] = np.sqrt(r)
    return np.diag(values)


def deformed_ladder_ops(
    space: TruncatedFockSpace,
    p: DeformationParam,
    psi1: float,
    psi2: float,
    dtype=np.float64,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dressed ladder pair and the shifted number operator.

    Returns ``(a_q, a_q_dag, n_deformed)`` with ``a_q = a F(N)``,
    ``a_q_dag = F(N) a_dag`` and ``n_deformed = N - ln(psi2)/s``.  When
    ``psi1 == psi2`` the dressing is real symmetric and ``a_q_dag`` equals
    the conjugate transpose of ``a_q``.
    """
    a, a_dag, n_hat = ladder_ops(space, dtype=dtype)
    f = dressing_diag(space, p, psi1, psi2, dtype=dtype)
    a_q = a @ f
    a_q_dag = f @ a_dag
    shift = np.log(dtype(psi2)) / dtype(p.s)
    n_deformed = n_hat - shift * np.eye(space.cutoff, dtype=dtype)
    return a_q, a_q_dag, n_deformed
