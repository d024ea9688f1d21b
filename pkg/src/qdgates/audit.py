"""Residual checks for the deformed-oscillator operator identities.

Each check rebuilds the dressed operators on the requested space, forms both
sides of one identity, and reports the largest-magnitude entry of the
difference on the truncation-safe interior block.  Products of two ladder
operators can touch one boundary level each, so identities are asserted on
levels ``0 .. cutoff-3`` only.

The checks run in extended precision (``np.longdouble``).  At cutoff 16 and
s close to 1 the deformed diagonal reaches ~1e5, where one float64 ulp is
already ~3e-11; an absolute residual budget of 1e-12 is only meaningful with
the wider accumulator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fockspace import FunctionChoice, TruncatedFockSpace, deformed_ladder_ops
from .qnumber import DeformationParam

AUDIT_DTYPE = np.longdouble
MIN_AUDIT_CUTOFF = 4
MAX_SHIFT_POLY_DEGREE = 4

QCOMMUTATOR = "qcommutator"
NUMBER_COMMUTATORS = "number_commutators"
NUMBER_PRODUCTS = "number_products"
SHIFT_RULE = "shift_rule"

ALGEBRA_CHECK_IDS = (QCOMMUTATOR, NUMBER_COMMUTATORS, NUMBER_PRODUCTS, SHIFT_RULE)

# f(x) = x**2 + 1, the default polynomial probed against the shift rule.
DEFAULT_SHIFT_POLY = (1.0, 0.0, 1.0)


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of one identity check at one grid point."""

    condition_id: str
    s: float
    choice: FunctionChoice
    cutoff: int
    residual: float
    tolerance: float
    passed: bool

    @classmethod
    def from_residual(cls, condition_id, p, choice, cutoff, residual, tolerance):
        residual = float(residual)
        tolerance = float(tolerance)
        if not math.isfinite(residual) or residual < 0:
            raise ValueError(f"residual must be finite and nonnegative, got {residual!r}")
        if tolerance <= 0:
            raise ValueError(f"tolerance must be positive, got {tolerance!r}")
        return cls(condition_id, p.s, choice, cutoff, residual, tolerance, residual <= tolerance)


def _require_audit_space(space: TruncatedFockSpace) -> None:
    if space.cutoff < MIN_AUDIT_CUTOFF:
        raise ValueError(
            f"audits need cutoff >= {MIN_AUDIT_CUTOFF} for a nonempty interior block, "
            f"got {space.cutoff}"
        )


def _interior(m: np.ndarray) -> np.ndarray:
    # drop the two truncation-corrupted top levels
    return m[:-2, :-2]


def _build(space, p, choice):
    return deformed_ladder_ops(space, p, choice.psi1, choice.psi2, dtype=AUDIT_DTYPE)


def check_qcommutator(
    space: TruncatedFockSpace, p: DeformationParam, choice: FunctionChoice, tol: float
) -> ConditionReport:
    """a_q a_q+ - q a_q+ a_q should equal q**(-N) on the interior block."""
    _require_audit_space(space)
    a_q, a_q_dag, n_def = _build(space, p, choice)
    s = AUDIT_DTYPE(p.s)
    q = np.exp(s)
    lhs = a_q @ a_q_dag - q * (a_q_dag @ a_q)
    rhs = np.diag(np.exp(-s * np.diag(n_def)))
    residual = np.max(np.abs(_interior(lhs - rhs)))
    return ConditionReport.from_residual(QCOMMUTATOR, p, choice, space.cutoff, residual, tol)


def check_number_commutators(
    space: TruncatedFockSpace, p: DeformationParam, choice: FunctionChoice, tol: float
) -> ConditionReport:
    """[N, a_q] = -a_q and [N, a_q+] = a_q+.

    Holds for every function choice: N differs from the plain number
    operator by a multiple of the identity, which commutes with everything.
    """
    _require_audit_space(space)
    a_q, a_q_dag, n_def = _build(space, p, choice)
    lower = n_def @ a_q - a_q @ n_def + a_q
    raise_ = n_def @ a_q_dag - a_q_dag @ n_def - a_q_dag
    residual = max(np.max(np.abs(_interior(lower))), np.max(np.abs(_interior(raise_))))
    return ConditionReport.from_residual(
        NUMBER_COMMUTATORS, p, choice, space.cutoff, residual, tol
    )


def check_number_products(
    space: TruncatedFockSpace, p: DeformationParam, choice: FunctionChoice, tol: float
) -> ConditionReport:
    """a_q+ a_q against the deformed number [N], a_q a_q+ against [N+1].

    The match requires psi1 * psi2 == 1; for every other choice the two
    sides genuinely disagree and the measured residual documents the gap
    rather than asserting the relation.
    """
    _require_audit_space(space)
    a_q, a_q_dag, n_def = _build(space, p, choice)
    s = AUDIT_DTYPE(p.s)
    nu = np.diag(n_def)
    q_of_n = np.diag(np.sinh(s * nu) / np.sinh(s))
    q_of_n1 = np.diag(np.sinh(s * (nu + 1)) / np.sinh(s))
    d1 = a_q_dag @ a_q - q_of_n
    d2 = a_q @ a_q_dag - q_of_n1
    residual = max(np.max(np.abs(_interior(d1))), np.max(np.abs(_interior(d2))))
    return ConditionReport.from_residual(NUMBER_PRODUCTS, p, choice, space.cutoff, residual, tol)


def check_shift_rule(
    space: TruncatedFockSpace,
    p: DeformationParam,
    choice: FunctionChoice,
    f_coeffs: Sequence[float],
    tol: float,
) -> ConditionReport:
    """a_q f(N) = f(N+1) a_q for a polynomial f given by ascending coefficients.

    A structural property of lowering operators against diagonal functions;
    holds for every function choice.
    """
    _require_audit_space(space)
    coeffs = [float(c) for c in f_coeffs]
    if not coeffs:
        raise ValueError("shift-rule polynomial needs at least one coefficient")
    if len(coeffs) - 1 > MAX_SHIFT_POLY_DEGREE:
        raise ValueError(
            f"shift-rule polynomial degree is capped at {MAX_SHIFT_POLY_DEGREE}, "
            f"got degree {len(coeffs) - 1}"
        )
    a_q, _, n_def = _build(space, p, choice)
    nu = np.diag(n_def)

    def poly(x):
        out = np.zeros_like(x)
        for c in reversed(coeffs):
            out = out * x + AUDIT_DTYPE(c)
        return out

    f_n = np.diag(poly(nu))
    f_n_plus = np.diag(poly(nu + 1))
    d = a_q @ f_n - f_n_plus @ a_q
    residual = np.max(np.abs(_interior(d)))
    return ConditionReport.from_residual(SHIFT_RULE, p, choice, space.cutoff, residual, tol)


def run_algebra_checks(
    space: TruncatedFockSpace,
    p: DeformationParam,
    choice: FunctionChoice,
    tol: float,
    f_coeffs: Sequence[float] = DEFAULT_SHIFT_POLY,
) -> list[ConditionReport]:
    """All four identity checks at one grid point, in registry order."""
    return [
        check_qcommutator(space, p, choice, tol),
        check_number_commutators(space, p, choice, tol),
        check_number_products(space, p, choice, tol),
        check_shift_rule(space, p, choice, f_coeffs, tol),
    ]
