"""Qubit gate actions on oscillator-pair states and realizability checks.

Gates are defined on (possibly scaled) basis states and extended linearly.
Deformed variants route coefficients through the dressed-state constructors,
so a deformed gate differs from the plain one only by the common scalar the
dressed basis vectors carry; when comparing against standard outputs, that
scalar is factored out and outputs are compared by proportionality.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .fockspace import FunctionChoice, RadicandError, TruncatedFockSpace, dressing_diag, ladder_ops
from .qnumber import DeformationParam
from .qubits import (
    OscillatorPairState,
    QUBIT_CUTOFF,
    TwoQubitState,
    basis_two_qubit_state,
    deformed_qubit_state,
    pair_index,
    quad_index,
    two_qubit_state,
    vacuum,
)

_SQRT2 = math.sqrt(2.0)


class Gate(Enum):
    NOT = "not"
    HADAMARD = "hadamard"
    PHASE = "phase"
    CNOT = "cnot"


@dataclass(frozen=True)
class GateConditionReport:
    """Outcome of one gate-realizability condition at one grid point."""

    gate: Gate
    s: float
    choice: FunctionChoice
    residual: float
    tolerance: float
    realizable: bool


def _qubit_components(state: OscillatorPairState) -> tuple[complex, complex]:
    """Amplitudes on the down/up patterns; rejects support anywhere else."""
    space = state.space
    idx_down = pair_index(space, 0, 1)
    idx_up = pair_index(space, 1, 0)
    rest = np.delete(state.amplitudes, [idx_down, idx_up])
    if np.any(rest != 0):
        raise ValueError("state has support outside the qubit occupations (1,0)/(0,1)")
    return complex(state.amplitudes[idx_down]), complex(state.amplitudes[idx_up])


def _require_deformed_args(p, choice) -> None:
    if p is None or choice is None:
        raise ValueError("deformed mode needs both a DeformationParam and a FunctionChoice")


def apply_not(
    state: OscillatorPairState,
    deformed: bool = False,
    p: DeformationParam | None = None,
    choice: FunctionChoice | None = None,
) -> OscillatorPairState:
    """Exchange the up and down components.

    In deformed mode the coefficients are re-expressed in the dressed basis
    and the flipped state is rebuilt through the dressed constructors, i.e.
    the creation-operator exponents are interchanged.
    """
    space = state.space
    amp_down, amp_up = _qubit_components(state)
    out = np.zeros_like(state.amplitudes)
    if not deformed:
        out[pair_index(space, 1, 0)] = amp_down
        out[pair_index(space, 0, 1)] = amp_up
        return OscillatorPairState(space, out)
    _require_deformed_args(p, choice)
    basis_up = deformed_qubit_state(1, p, choice, space)
    basis_down = deformed_qubit_state(0, p, choice, space)
    pref_up = basis_up.amplitudes[pair_index(space, 1, 0)]
    pref_down = basis_down.amplitudes[pair_index(space, 0, 1)]
    out = (amp_up / pref_up) * basis_down.amplitudes + (amp_down / pref_down) * basis_up.amplitudes
    return OscillatorPairState(space, out)


def check_not_condition(
    p: DeformationParam, choice: FunctionChoice, tol: float
) -> GateConditionReport:
    """Eigenvalue condition under which the deformed flip is indistinguishable
    from the plain one.

    At both qubit occupations the condition pins the ratio psi1/psi2 to the
    same target value 1, so it is measured on the ratio: the verdict is then
    invariant under a common rescaling of the pair.  The flip, superposition
    and phase gates share this condition.
    """
    q = p.q
    residual = 0.0
    for n_hat in (0, 1):
        target_num = q ** (-n_hat) - n_hat * q ** (-n_hat) - n_hat * q ** (n_hat - 1)
        target_den = q**n_hat - n_hat * q**n_hat - n_hat * q ** (1 - n_hat)
        residual = max(residual, abs(choice.psi1 / choice.psi2 - target_num / target_den))
    return GateConditionReport(Gate.NOT, p.s, choice, residual, float(tol), residual <= tol)


def apply_hadamard(
    state: OscillatorPairState,
    deformed: bool = False,
    p: DeformationParam | None = None,
    choice: FunctionChoice | None = None,
) -> OscillatorPairState:
    """Send each basis component x to ((-1)**x |x> + |1-x>) / sqrt(2).

    The 1/sqrt(2) is applied so outputs of basis inputs stay unit norm.  In
    deformed mode the up vector is dressed by (psi1, psi2) and the down
    vector by (psi3, psi4), each oscillator carrying its own dressing.
    """
    space = state.space
    amp_down, amp_up = _qubit_components(state)
    if not deformed:
        out = np.zeros_like(state.amplitudes)
        out[pair_index(space, 0, 1)] = (amp_down + amp_up) / _SQRT2
        out[pair_index(space, 1, 0)] = (amp_down - amp_up) / _SQRT2
        return OscillatorPairState(space, out)
    _require_deformed_args(p, choice)
    basis_up = deformed_qubit_state(1, p, choice, space).amplitudes
    basis_down = _own_dressed_down_state(space, p, choice.psi3, choice.psi4)
    pref_up = basis_up[pair_index(space, 1, 0)]
    pref_down = basis_down[pair_index(space, 0, 1)]
    c_up = amp_up / pref_up
    c_down = amp_down / pref_down
    out = (c_down * (basis_down + basis_up) + c_up * (basis_down - basis_up)) / _SQRT2
    return OscillatorPairState(space, out)


def _own_dressed_down_state(space, p, g1, g2) -> np.ndarray:
    # second oscillator dressed at its own occupation, as in the
    # two-function-pair superposition construction
    _, a_dag, _ = ladder_ops(space)
    f_own = dressing_diag(space, p, g1, g2)
    op = np.kron(np.eye(space.cutoff), f_own @ a_dag)
    return op @ vacuum(space).amplitudes


def apply_phase_shift(state: OscillatorPairState, theta: float) -> OscillatorPairState:
    """Multiply the up component by e**(i*theta); the down component is untouched."""
    if not math.isfinite(theta):
        raise ValueError(f"phase angle must be finite, got {theta!r}")
    space = state.space
    amp_down, amp_up = _qubit_components(state)
    out = np.zeros_like(state.amplitudes)
    out[pair_index(space, 0, 1)] = amp_down
    out[pair_index(space, 1, 0)] = cmath.exp(1j * theta) * amp_up
    return OscillatorPairState(space, out)


_QUBIT_PATTERNS = {
    (0, 0): (0, 1, 0, 1),
    (0, 1): (0, 1, 1, 0),
    (1, 0): (1, 0, 0, 1),
    (1, 1): (1, 0, 1, 0),
}


def _basis_component(state: TwoQubitState) -> tuple[tuple[int, int], complex]:
    """The (x, y) pattern a scaled basis state occupies, plus its amplitude."""
    space = state.space
    nz = np.nonzero(state.amplitudes)[0]
    if len(nz) != 1:
        raise ValueError("two-qubit gate input must be a scaled product basis state")
    idx = int(nz[0])
    for bits, pattern in _QUBIT_PATTERNS.items():
        if idx == quad_index(space, *pattern):
            return bits, complex(state.amplitudes[idx])
    raise ValueError("two-qubit gate input has support outside the qubit patterns")


def apply_cnot(
    state: TwoQubitState,
    deformed: bool = False,
    p: DeformationParam | None = None,
    choice_a: FunctionChoice | None = None,
    choice_b: FunctionChoice | None = None,
) -> TwoQubitState:
    """Flip the target qubit exactly when the control is up."""
    space = state.space
    (x, y), amp = _basis_component(state)
    if x == 0:
        return TwoQubitState(space, state.amplitudes.copy())
    if not deformed:
        out = np.zeros_like(state.amplitudes)
        out[quad_index(space, *_QUBIT_PATTERNS[(x, 1 - y)])] = amp
        return TwoQubitState(space, out)
    _require_deformed_args(p, choice_a)
    _require_deformed_args(p, choice_b)
    reference_in = two_qubit_state(x, y, p, choice_a, choice_b, space)
    reference_out = two_qubit_state(x, 1 - y, p, choice_a, choice_b, space)
    scale = amp / reference_in.amplitudes[quad_index(space, *_QUBIT_PATTERNS[(x, y)])]
    return TwoQubitState(space, scale * reference_out.amplitudes)


@dataclass(frozen=True)
class TruthTableRow:
    """One transition of the controlled flip, with the output measured
    against the expected undeformed basis element."""

    input_bits: tuple[int, int]
    expected_bits: tuple[int, int]
    amplitude: complex
    off_support: float


def cnot_truth_table(
    deformed: bool = False,
    p: DeformationParam | None = None,
    choice_a: FunctionChoice | None = None,
    choice_b: FunctionChoice | None = None,
    space: TruncatedFockSpace | None = None,
) -> list[TruthTableRow]:
    """Run all four basis transitions of the controlled flip.

    In deformed mode every row picks up the same scalar relative to the
    plain table, so the amplitudes are constant across rows once the gate is
    realizable; the caller inspects amplitudes (undeformed: exactly 1) or
    their spread (deformed).
    """
    space = space or TruncatedFockSpace(QUBIT_CUTOFF)
    rows = []
    for x, y in ((0, 0), (0, 1), (1, 0), (1, 1)):
        if deformed:
            _require_deformed_args(p, choice_a)
            _require_deformed_args(p, choice_b)
            state_in = two_qubit_state(x, y, p, choice_a, choice_b, space)
        else:
            state_in = basis_two_qubit_state(x, y, space)
        state_out = apply_cnot(state_in, deformed, p, choice_a, choice_b)
        expected = (x, y ^ x)
        idx = quad_index(space, *_QUBIT_PATTERNS[expected])
        amplitude = complex(state_out.amplitudes[idx])
        off = float(np.max(np.abs(np.delete(state_out.amplitudes, idx))))
        rows.append(TruthTableRow((x, y), expected, amplitude, off))
    return rows


def check_cnot_condition(
    p: DeformationParam, beta1: float, beta2: float, tol: float
) -> GateConditionReport:
    """Both sides of the target-swap condition at the qubit occupations.

    The condition is an identity in the control value k, so the residual is
    expected to vanish for every positive (beta1, beta2).  Factors raised to
    the zeroth power are removable artifacts of the written-out expression
    (their denominators can vanish exactly where the exponent does); they
    contribute 1 and are excluded from the residual.
    """
    if not (beta1 > 0 and beta2 > 0):
        raise ValueError(f"beta1 and beta2 must be positive, got {beta1!r}, {beta2!r}")
    q = p.q
    denom = q - 1.0 / q

    def factor(argument: float, exponent: float) -> float:
        if exponent == 0.0:
            return 1.0
        base = (q**argument * beta1 - q ** (-argument) * beta2) / (argument * denom)
        if base < 0:
            raise RadicandError(
                f"negative radicand in swap-condition factor at argument {argument} "
                f"with beta1={beta1}, beta2={beta2}"
            )
        return base**exponent

    residual = 0.0
    for k in (0, 1):
        k_hat = k  # the occupation the swapped target actually carries
        lhs = factor(k_hat, k / 2) * factor(1 - k_hat + k, (1 - k) / 2)
        rhs = factor(1 - k_hat, (1 - k) / 2) * factor(k_hat - 1 + k, k / 2)
        residual = max(residual, abs(lhs - rhs))
    choice = FunctionChoice(beta1=beta1, beta2=beta2)
    return GateConditionReport(Gate.CNOT, p.s, choice, residual, float(tol), residual <= tol)
