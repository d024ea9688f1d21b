"""Two-oscillator qubits built by the boson realization of angular momentum.

A qubit lives in a pair of oscillators carrying exactly one total quantum:
occupation (1, 0) is spin up (label 1), occupation (0, 1) is spin down
(label 0).  General (j, m) states occupy ``(j+m, j-m)``.  All states are
produced by applying explicit creation matrices to the pair vacuum, so the
same operator pipeline the audits verify also builds the states; deformation
shows up purely as a scalar rescaling of the basis vectors.

Basis ordering over the joint occupations (n1, n2) is row-major and fixed;
four-oscillator states order (a1, a2, b1, b2) row-major, which is exactly
the Kronecker product of two pair states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fockspace import (
    FunctionChoice,
    FunctionFamily,
    POWER_OF_Q,
    TruncatedFockSpace,
    dressing_diag,
    ladder_ops,
)
from .qnumber import DeformationParam, q_factorial

# Qubit work occupies levels 0..1 only; cutoff 4 leaves margin.
QUBIT_CUTOFF = 4


def pair_index(space: TruncatedFockSpace, n1: int, n2: int) -> int:
    return n1 * space.cutoff + n2


def quad_index(space: TruncatedFockSpace, n_a1: int, n_a2: int, n_b1: int, n_b2: int) -> int:
    d = space.cutoff
    return ((n_a1 * d + n_a2) * d + n_b1) * d + n_b2


@dataclass(frozen=True)
class OscillatorPairState:
    """Amplitude vector over the joint occupations of one oscillator pair."""

    space: TruncatedFockSpace
    amplitudes: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def overlap(self, other: "OscillatorPairState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def support(self) -> tuple[tuple[int, int], ...]:
        d = self.space.cutoff
        return tuple(
            (int(i) // d, int(i) % d) for i in np.nonzero(self.amplitudes)[0]
        )

    def nonzero_triples(self) -> list[tuple[int, float, float]]:
        """(basis index, real part, imaginary part) for each nonzero amplitude."""
        return [
            (int(i), float(self.amplitudes[i].real), float(self.amplitudes[i].imag))
            for i in np.nonzero(self.amplitudes)[0]
        ]


@dataclass(frozen=True)
class TwoQubitState:
    """Amplitude vector over the joint occupations of two oscillator pairs."""

    space: TruncatedFockSpace
    amplitudes: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def overlap(self, other: "TwoQubitState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def support(self) -> tuple[tuple[int, int, int, int], ...]:
        d = self.space.cutoff
        out = []
        for i in np.nonzero(self.amplitudes)[0]:
            i = int(i)
            out.append((i // d**3, (i // d**2) % d, (i // d) % d, i % d))
        return tuple(out)

    def nonzero_triples(self) -> list[tuple[int, float, float]]:
        return [
            (int(i), float(self.amplitudes[i].real), float(self.amplitudes[i].imag))
            for i in np.nonzero(self.amplitudes)[0]
        ]


def _check_label(x: int) -> None:
    if x not in (0, 1):
        raise ValueError(f"qubit label must be 0 or 1, got {x!r}")


def pair_creation_ops(space: TruncatedFockSpace) -> tuple[np.ndarray, np.ndarray]:
    """Creation matrices for the two oscillators of a pair."""
    _, a_dag, _ = ladder_ops(space)
    eye = np.eye(space.cutoff)
    return np.kron(a_dag, eye), np.kron(eye, a_dag)


def deformed_pair_creation_ops(
    space: TruncatedFockSpace, p: DeformationParam, g1: float, g2: float
) -> tuple[np.ndarray, np.ndarray]:
    """Dressed creation matrices for a pair.

    Oscillator 1 carries the dressing at its own occupation; oscillator 2
    carries it at one minus the *first* oscillator's occupation, the form
    appropriate when the pair holds a single quantum in total.
    """
    _, a_dag, _ = ladder_ops(space)
    eye = np.eye(space.cutoff)
    f_own = dressing_diag(space, p, g1, g2)
    f_shift = dressing_diag(
        space, p, g1, g2, arguments=[1 - n for n in range(space.cutoff)]
    )
    return np.kron(f_own @ a_dag, eye), np.kron(f_shift, a_dag)


def vacuum(space: TruncatedFockSpace) -> OscillatorPairState:
    """Both oscillators empty; unit amplitude on (0, 0)."""
    amp = np.zeros(space.cutoff**2, dtype=complex)
    amp[pair_index(space, 0, 0)] = 1.0
    return OscillatorPairState(space, amp)


def qubit_state(x: int, space: TruncatedFockSpace) -> OscillatorPairState:
    """Basis qubit: occupation (1, 0) for x = 1, (0, 1) for x = 0."""
    _check_label(x)
    c1, c2 = pair_creation_ops(space)
    op = c1 if x == 1 else c2
    return OscillatorPairState(space, op @ vacuum(space).amplitudes)


def jm_state(j: float, m: float, space: TruncatedFockSpace) -> OscillatorPairState:
    """Unit-norm angular-momentum state on occupations (j+m, j-m)."""
    n1 = j + m
    n2 = j - m
    for name, value in (("j+m", n1), ("j-m", n2)):
        if abs(value - round(value)) > 1e-9:
            raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")
    n1 = int(round(n1))
    n2 = int(round(n2))
    if j < 0 or n1 < 0 or n2 < 0:
        raise ValueError(f"need j >= 0 and |m| <= j, got j={j}, m={m}")
    if n1 >= space.cutoff or n2 >= space.cutoff:
        raise ValueError(
            f"occupations ({n1}, {n2}) exceed the cutoff {space.cutoff}"
        )
    c1, c2 = pair_creation_ops(space)
    amp = vacuum(space).amplitudes
    for _ in range(n1):
        amp = c1 @ amp
    for _ in range(n2):
        amp = c2 @ amp
    amp = amp / math.sqrt(math.factorial(n1) * math.factorial(n2))
    return OscillatorPairState(space, amp)


def _deformed_qubit_amplitudes(
    x: int, p: DeformationParam, g1: float, g2: float, space: TruncatedFockSpace
) -> np.ndarray:
    c1, c2 = deformed_pair_creation_ops(space, p, g1, g2)
    op = c1 if x == 1 else c2
    amp = op @ vacuum(space).amplitudes
    # deformed factorials of the occupations; identically 1 at qubit labels,
    # kept so the normalization has the same shape as for higher towers
    norm = math.sqrt(q_factorial(x, p) * q_factorial(1 - x, p))
    return amp / norm


def deformed_qubit_state(
    x: int, p: DeformationParam, choice: FunctionChoice, space: TruncatedFockSpace
) -> OscillatorPairState:
    """Deformed basis qubit; same support as ``qubit_state``, rescaled by the dressing."""
    _check_label(x)
    return OscillatorPairState(
        space, _deformed_qubit_amplitudes(x, p, choice.psi1, choice.psi2, space)
    )


def basis_two_qubit_state(x: int, y: int, space: TruncatedFockSpace) -> TwoQubitState:
    """Undeformed product basis state |x>|y> over two oscillator pairs."""
    _check_label(x)
    _check_label(y)
    return TwoQubitState(
        space, np.kron(qubit_state(x, space).amplitudes, qubit_state(y, space).amplitudes)
    )


def two_qubit_state(
    x: int,
    y: int,
    p: DeformationParam,
    choice_a: FunctionChoice,
    choice_b: FunctionChoice,
    space: TruncatedFockSpace,
) -> TwoQubitState:
    """Deformed product state: control dressed by the psi pair of ``choice_a``,
    target by the beta pair of ``choice_b``."""
    _check_label(x)
    _check_label(y)
    ctrl = _deformed_qubit_amplitudes(x, p, choice_a.psi1, choice_a.psi2, space)
    tgt = _deformed_qubit_amplitudes(y, p, choice_b.beta1, choice_b.beta2, space)
    return TwoQubitState(space, np.kron(ctrl, tgt))


@dataclass(frozen=True)
class NormRatioResult:
    """Measured deformed/undeformed squared-norm ratio with both candidate laws.

    The construction itself decides which law it satisfies; neither
    prediction is privileged here.
    """

    measured: float
    prediction_product: float  # psi * beta
    prediction_sqrt: float  # sqrt(psi * beta)

    def matched_law(self) -> str:
        d_product = abs(self.measured - self.prediction_product)
        d_sqrt = abs(self.measured - self.prediction_sqrt)
        return "product" if d_product <= d_sqrt else "sqrt_product"

    def distance_to_matched(self) -> float:
        return min(
            abs(self.measured - self.prediction_product),
            abs(self.measured - self.prediction_sqrt),
        )


def norm_ratio_experiment(
    x: int,
    y: int,
    p: DeformationParam,
    psi: float,
    beta: float,
    space: TruncatedFockSpace,
) -> NormRatioResult:
    """Squared-norm ratio of the deformed basis state to the undeformed one."""
    if not (psi > 0 and beta > 0):
        raise ValueError(f"psi and beta must be positive, got psi={psi!r}, beta={beta!r}")
    deformed = two_qubit_state(
        x, y, p, FunctionChoice(psi1=psi, psi2=psi), FunctionChoice(beta1=beta, beta2=beta), space
    )
    plain = basis_two_qubit_state(x, y, space)
    measured = float(
        np.vdot(deformed.amplitudes, deformed.amplitudes).real
        / np.vdot(plain.amplitudes, plain.amplitudes).real
    )
    return NormRatioResult(measured, psi * beta, math.sqrt(psi * beta))


@dataclass(frozen=True)
class CaseIIOccupation:
    """Deformed occupation eigenvalue implied by one dressing-function value.

    The deformed eigenvalue sits ``ln(psi)/s`` below the plain one, so a
    dressing value of 1 collapses back onto the undeformed bookkeeping.
    """

    n_hat: int
    psi_value: float
    n_prime: float

    def is_undeformed(self) -> bool:
        return self.psi_value == 1.0


def occupation_from_value(n_hat: int, psi_value: float, p: DeformationParam) -> CaseIIOccupation:
    if psi_value <= 0:
        raise ValueError(f"dressing value must be positive, got {psi_value!r}")
    return CaseIIOccupation(n_hat, float(psi_value), n_hat - math.log(psi_value) / p.s)


def occupation_from_exponent(n_hat: int, alpha: float, p: DeformationParam) -> CaseIIOccupation:
    """Occupation for psi = q**alpha; the deformed eigenvalue is exactly n_hat - alpha."""
    return CaseIIOccupation(n_hat, p.q ** alpha, float(n_hat - alpha))


@dataclass(frozen=True)
class CaseIIRow:
    """One deformed basis state with the function choices that pin its
    deformed occupations at the qubit values."""

    state_label: str
    psi_rule: str
    beta_rule: str
    psi_family: FunctionFamily
    beta_family: FunctionFamily
    control: CaseIIOccupation
    target: CaseIIOccupation


def case2_consistency_table(p: DeformationParam) -> list[CaseIIRow]:
    """The four basis states with their consistent deformed bookkeeping.

    A deformed eigenvalue v forces the plain occupation to sit at
    v + ln(psi)/s, so the rows pair psi = q**n_hat with v = 0 and
    psi = q**(n_hat - 1) with v = 1; the smallest plain occupation
    compatible with each row is used.  The plain occupation always exceeds
    the deformed one.
    """

    def rule(target: int) -> str:
        return "q^n_hat" if target == 0 else "q^(n_hat-1)"

    rows = []
    for label in ("00", "01", "10", "11"):
        n_target = int(label[0])
        k_target = int(label[1])
        n_hat = n_target + 1
        k_hat = k_target + 1
        control = occupation_from_exponent(n_hat, n_hat - n_target, p)
        target = occupation_from_exponent(k_hat, k_hat - k_target, p)
        rows.append(
            CaseIIRow(
                state_label=label,
                psi_rule=rule(n_target),
                beta_rule=rule(k_target),
                psi_family=FunctionFamily(POWER_OF_Q, float(n_hat - n_target)),
                beta_family=FunctionFamily(POWER_OF_Q, float(k_hat - k_target)),
                control=control,
                target=target,
            )
        )
    return rows
