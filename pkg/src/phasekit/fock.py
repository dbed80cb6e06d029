"""Two-mode deformed oscillator: Fock space, ladder matrices, and algebra checks.

Notation used throughout the package
------------------------------------
Two bosonic-like modes carry occupation numbers (n1, n2).  A real
deformation parameter ``kappa`` bends the ladder amplitudes through the
structure function

    F_i(n1, n2) = n_i * [1 + kappa * (n1 + n2 - 1)],   i = 1, 2,

and the diagonal Hamiltonian H has eigenvalues

    lam(n) = n * [1 + kappa * (n - 1)],   n = n1 + n2.

For kappa = -1/k (k a positive integer) the admissible states are the
finite triangle n1 + n2 <= k, of dimension d = (k+1)(k+2)/2; the six
operators a1-, a1+, a2-, a2+, N1, N2 then realize a finite-dimensional
Lie-algebra representation (su(3)-type).  For kappa >= 0 the natural
space is infinite; this package works on an explicit finite window
n1 + n2 <= sigma (see :mod:`phasekit.truncated`).

Basis ordering is fixed once and for all: states (n1, n2) are listed
with n2 as the outer loop and n1 as the inner loop, so the flat index of
|n1, n2> with n2 = l is  l*(2*B - l + 3)/2 + n1  for shell bound B.
With this ordering the global cyclic phase operator is a single d-cycle.

A representation phase parameter ``phi`` multiplies every ladder matrix
element by exp(-+ i * [lam(total') - lam(total)] * phi); it is the knob
that later makes phase states temporally stable.

All constructed objects are immutable after build and safe for
concurrent reads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

__all__ = [
    "Regime",
    "KappaSpec",
    "FockSpace",
    "LinearOperator",
    "StateVector",
    "PositivityError",
    "structure_function",
    "level_energy",
    "build_space",
    "ladder",
    "transfer_ladder",
    "number_operator",
    "identity_operator",
    "hamiltonian",
    "evolution_operator",
    "lie_generators",
    "check_algebra",
    "commutator",
    "dagger",
]


class PositivityError(ValueError):
    """Structure function evaluated where it is negative."""


class Regime(Enum):
    """Sign regime of the deformation parameter."""

    NEGATIVE = "negative"  # kappa = -1/k exactly, finite space
    ZERO = "zero"
    POSITIVE = "positive"


@dataclass(frozen=True)
class KappaSpec:
    """Deformation parameter, its regime, phase parameter, and window size.

    Build instances through :meth:`negative` (kappa = -1/k, input is the
    integer k so the regime is never floating-point ambiguous) or
    :meth:`nonnegative` (kappa >= 0 plus a mandatory window size sigma).
    """

    kappa: float
    regime: Regime
    phi: float = 0.0
    k: int | None = None
    sigma: int | None = None

    def __post_init__(self):
        if self.regime is Regime.NEGATIVE:
            if self.k is None or self.k < 0:
                raise ValueError("negative regime requires integer k >= 0")
            if self.k > 0 and self.kappa != -1.0 / self.k:
                raise ValueError("negative regime requires kappa = -1/k exactly")
        else:
            if self.sigma is None or self.sigma < 1:
                raise ValueError("kappa >= 0 requires a window size sigma >= 1")
            if self.regime is Regime.ZERO and self.kappa != 0.0:
                raise ValueError("zero regime requires kappa = 0")
            if self.regime is Regime.POSITIVE and not self.kappa > 0.0:
                raise ValueError("positive regime requires kappa > 0")

    @classmethod
    def negative(cls, k: int, phi: float = 0.0) -> "KappaSpec":
        """Spec with kappa = -1/k.  k = 0 is the degenerate one-state space."""
        if k < 0:
            raise ValueError("k must be a nonnegative integer")
        # k = 0 is the formal limit kappa -> -inf; the single state (0,0)
        # never multiplies kappa by a nonzero count, so -inf is safe here.
        kappa = -1.0 / k if k > 0 else -math.inf
        return cls(kappa=kappa, regime=Regime.NEGATIVE, phi=phi, k=k)

    @classmethod
    def nonnegative(cls, kappa: float, sigma: int, phi: float = 0.0) -> "KappaSpec":
        if kappa < 0:
            raise ValueError("use KappaSpec.negative(k) for kappa < 0 (kappa = -1/k only)")
        regime = Regime.ZERO if kappa == 0.0 else Regime.POSITIVE
        return cls(kappa=kappa, regime=regime, phi=phi, sigma=sigma)

    @property
    def is_negative(self) -> bool:
        return self.regime is Regime.NEGATIVE

    @property
    def bound(self) -> int:
        """Shell bound of the associated finite space (k, or sigma)."""
        return self.k if self.is_negative else self.sigma  # type: ignore[return-value]


@dataclass(frozen=True)
class FockSpace:
    """Ordered two-mode basis over the triangle n1 + n2 <= bound.

    ``states[j]`` is the pair (n1, n2) at flat index j; ``index`` is the
    inverse map.  Equality compares the basis data only, so a space
    reconstructed from a JSON export compares equal to the original.
    The originating :class:`KappaSpec` rides along as provenance (``spec``)
    and is not part of equality.
    """

    dim: int
    states: tuple[tuple[int, int], ...]
    bound: int
    index: dict[tuple[int, int], int] = field(repr=False)
    spec: KappaSpec | None = field(default=None, repr=False, compare=False)

    def __eq__(self, other):
        if not isinstance(other, FockSpace):
            return NotImplemented
        return (self.dim, self.bound, self.states) == (other.dim, other.bound, other.states)

    def __hash__(self):
        return hash((self.dim, self.bound, self.states))

    def index_of(self, n1: int, n2: int) -> int:
        return self.index[(n1, n2)]

    def totals(self) -> np.ndarray:
        """n1 + n2 for every basis state, in order."""
        return np.array([n1 + n2 for n1, n2 in self.states])

    def shell_indices(self) -> list[int]:
        return [j for j, (n1, n2) in enumerate(self.states) if n1 + n2 == self.bound]

    def interior_indices(self) -> list[int]:
        return [j for j, (n1, n2) in enumerate(self.states) if n1 + n2 < self.bound]


@dataclass(frozen=True, eq=False)
class LinearOperator:
    """Dense complex matrix tagged with its Fock space and a label."""

    matrix: np.ndarray
    space: FockSpace
    label: str = ""

    def __post_init__(self):
        d = self.space.dim
        if self.matrix.shape != (d, d):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match space dim {d}"
            )

    def dagger(self) -> "LinearOperator":
        return LinearOperator(self.matrix.conj().T, self.space, self.label + "^+")


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitude vector over a Fock space."""

    amps: np.ndarray
    space: FockSpace
    label: str = ""

    def __post_init__(self):
        if self.amps.shape != (self.space.dim,):
            raise ValueError(
                f"amplitude length {self.amps.shape} does not match space dim {self.space.dim}"
            )

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


def structure_function(i: int, n1: int, n2: int, kappa: float, tol: float = 1e-12) -> float:
    """F_i(n1, n2) = n_i * [1 + kappa*(n1 + n2 - 1)].

    Satisfies F_1(0, n2) = F_2(n1, 0) = 0 and the step recurrences
    F_i(.. n_i + 1 ..) - F_i(..) = 1 + kappa*(2 n_i + n_j).  Values that
    come out negative beyond ``tol`` violate the positivity condition of
    the representation and raise :class:`PositivityError`; exact zeros
    (the shell edge for kappa < 0) are valid and mean the corresponding
    ladder amplitude vanishes.
    """
    if i not in (1, 2):
        raise ValueError("mode index must be 1 or 2")
    if n1 < 0 or n2 < 0:
        raise ValueError("occupation numbers must be nonnegative")
    ni = n1 if i == 1 else n2
    if ni == 0:
        return 0.0
    value = ni * (1.0 + kappa * (n1 + n2 - 1))
    if value < -tol:
        raise PositivityError(
            f"F_{i}({n1},{n2}) = {value} < 0 for kappa = {kappa}"
        )
    return max(value, 0.0)


def level_energy(n: int, kappa: float) -> float:
    """Hamiltonian eigenvalue lam(n) = n * [1 + kappa*(n-1)] at total n."""
    if n == 0:
        return 0.0
    return n * (1.0 + kappa * (n - 1))


def build_space(spec: KappaSpec) -> FockSpace:
    """Enumerate the triangle n1 + n2 <= bound in the canonical order.

    The outer loop runs over l = n2 and the inner loop over n1, which
    places |n1, l> at flat index l*(2*bound - l + 3)/2 + n1.
    """
    bound = spec.bound
    states: list[tuple[int, int]] = []
    for l in range(bound + 1):
        for n in range(bound - l + 1):
            states.append((n, l))
    index = {st: j for j, st in enumerate(states)}
    dim = len(states)
    assert dim == (bound + 1) * (bound + 2) // 2
    for j, (n, l) in enumerate(states):
        assert j == l * (2 * bound - l + 3) // 2 + n
    return FockSpace(dim=dim, states=tuple(states), bound=bound, index=index, spec=spec)


def _check_pair(spec: KappaSpec, space: FockSpace):
    if space.spec is not None and space.spec != spec:
        raise ValueError("FockSpace was built from a different KappaSpec")


def ladder(spec: KappaSpec, space: FockSpace, mode: int, sign: int) -> LinearOperator:
    """Matrix of a_mode^+ (sign=+1) or a_mode^- (sign=-1).

    Raising:  a_i^+ |..n_i..> = sqrt(F_i(.. n_i+1 ..)) * exp(-i*dlam*phi) |..n_i+1..>
    Lowering: a_i^- |..n_i..> = sqrt(F_i(..)) * exp(+i*dlam*phi) |..n_i-1..>
    with dlam the Hamiltonian gap between target and source levels.
    Raising out of the shell n1 + n2 = bound gives zero: structurally for
    any finite window, and exactly so for kappa = -1/k where the
    structure function itself vanishes there.
    """
    if mode not in (1, 2):
        raise ValueError("mode must be 1 or 2")
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    _check_pair(spec, space)
    kappa, phi, bound = spec.kappa, spec.phi, space.bound
    mat = np.zeros((space.dim, space.dim), dtype=complex)
    for j, (n1, n2) in enumerate(space.states):
        t = n1 + n2
        if sign == +1:
            if t + 1 > bound:
                continue
            tgt = (n1 + 1, n2) if mode == 1 else (n1, n2 + 1)
            amp = math.sqrt(structure_function(mode, *tgt, kappa))
            gap = level_energy(t + 1, kappa) - level_energy(t, kappa)
            mat[space.index_of(*tgt), j] = amp * np.exp(-1j * gap * phi)
        else:
            ni = n1 if mode == 1 else n2
            if ni == 0:
                continue
            tgt = (n1 - 1, n2) if mode == 1 else (n1, n2 - 1)
            amp = math.sqrt(structure_function(mode, n1, n2, kappa))
            gap = level_energy(t, kappa) - level_energy(t - 1, kappa)
            mat[space.index_of(*tgt), j] = amp * np.exp(+1j * gap * phi)
    label = f"a{mode}{'+' if sign > 0 else '-'}"
    return LinearOperator(mat, space, label)


def transfer_ladder(spec: KappaSpec, space: FockSpace, sign: int, tol: float = 1e-12) -> LinearOperator:
    """Cross-mode pair a3^+ = [a2^+, a1^-], a3^- = [a1^+, a2^-].

    Built as the commutator of ladder matrices and checked against the
    closed-form action a3^+ |n1,n2> = -kappa*sqrt(n1*(n2+1)) |n1-1,n2+1>
    (conjugate pattern for a3^-); the two routes agree on the whole space
    for kappa < 0 and on sources off the shell for a finite kappa >= 0
    window, where the commutator route keeps the honest windowed value.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    _check_pair(spec, space)
    a1 = ladder(spec, space, 1, -sign)  # a3^+ = [a2^+, a1^-], a3^- = [a1^+, a2^-]
    a2 = ladder(spec, space, 2, +sign)
    mat = commutator(a2.matrix, a1.matrix) if sign > 0 else commutator(a1.matrix, a2.matrix)

    closed = np.zeros_like(mat)
    kappa = spec.kappa if space.bound > 0 else 0.0
    for j, (n1, n2) in enumerate(space.states):
        if sign > 0 and n1 >= 1:
            closed[space.index_of(n1 - 1, n2 + 1), j] = -kappa * math.sqrt(n1 * (n2 + 1))
        elif sign < 0 and n2 >= 1:
            closed[space.index_of(n1 + 1, n2 - 1), j] = -kappa * math.sqrt((n1 + 1) * n2)
    cols = range(space.dim) if spec.is_negative else space.interior_indices()
    err = max((np.abs(mat[:, c] - closed[:, c]).max() for c in cols), default=0.0)
    if err > tol:
        raise ArithmeticError(
            f"transfer ladder commutator deviates from closed form by {err}"
        )
    return LinearOperator(mat, space, f"a3{'+' if sign > 0 else '-'}")


def number_operator(space: FockSpace, mode: int) -> LinearOperator:
    if mode not in (1, 2):
        raise ValueError("mode must be 1 or 2")
    diag = [st[mode - 1] for st in space.states]
    return LinearOperator(np.diag(np.asarray(diag, dtype=complex)), space, f"N{mode}")


def identity_operator(space: FockSpace) -> LinearOperator:
    return LinearOperator(np.eye(space.dim, dtype=complex), space, "I")


def hamiltonian(spec: KappaSpec, space: FockSpace) -> LinearOperator:
    """Diagonal Hamiltonian with entries lam(n1 + n2); level n is (n+1)-fold degenerate."""
    _check_pair(spec, space)
    diag = [level_energy(n1 + n2, spec.kappa) for n1, n2 in space.states]
    return LinearOperator(np.diag(np.asarray(diag, dtype=complex)), space, "H")


def evolution_operator(spec: KappaSpec, space: FockSpace, t: float) -> LinearOperator:
    """Diagonal propagator exp(-i * H * t)."""
    _check_pair(spec, space)
    diag = [np.exp(-1j * level_energy(n1 + n2, spec.kappa) * t) for n1, n2 in space.states]
    return LinearOperator(np.diag(np.asarray(diag, dtype=complex)), space, f"U({t})")


def _kappa_times(kappa: float, mat: np.ndarray) -> np.ndarray:
    # kappa may be -inf for the degenerate k = 0 space; there the matrix
    # is exactly zero and the product must stay zero, not become nan.
    if not np.any(mat):
        return np.zeros_like(mat)
    return kappa * mat


def lie_generators(spec: KappaSpec, space: FockSpace) -> list[LinearOperator]:
    """Eight generators {e+1, e-1, e+2, e-2, e+3, e-3, h1, h2}.

    e(+-)m = a_m^(+-) / sqrt(|kappa|) and the two diagonal Cartan-type
    elements h_i = [I + kappa*(2 N_i + N_j)] / (2 kappa).  For kappa != 0
    these close under commutation (su(3)-type span for kappa < 0,
    su(2,1)-type for kappa > 0, up to window defects on the shell).
    """
    _check_pair(spec, space)
    kappa = spec.kappa
    if kappa == 0.0:
        raise ValueError("Lie generators are defined only for kappa != 0")
    root = math.sqrt(abs(kappa)) if math.isfinite(kappa) else 1.0
    ident = np.eye(space.dim, dtype=complex)
    n1 = number_operator(space, 1).matrix
    n2 = number_operator(space, 2).matrix
    gens: list[LinearOperator] = []
    for m in (1, 2, 3):
        for s, tagname in ((+1, f"e+{m}"), (-1, f"e-{m}")):
            a = transfer_ladder(spec, space, s) if m == 3 else ladder(spec, space, m, s)
            gens.append(LinearOperator(a.matrix / root, space, tagname))
    if math.isfinite(kappa):
        h1 = (ident + _kappa_times(kappa, 2 * n1 + n2)) / (2 * kappa)
        h2 = (ident + _kappa_times(kappa, 2 * n2 + n1)) / (2 * kappa)
    else:
        # degenerate k = 0 limit: 1/(2*kappa) -> 0
        h1 = np.zeros_like(ident)
        h2 = np.zeros_like(ident)
    gens.append(LinearOperator(h1, space, "h1"))
    gens.append(LinearOperator(h2, space, "h2"))
    return gens


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def span_projection_residual(generators: list[np.ndarray], target: np.ndarray) -> float:
    """Distance from ``target`` to the complex span of ``generators``.

    Least-squares coefficient solve on flattened matrices; returns the
    max-abs entry of the unexplained remainder.
    """
    basis = np.stack([g.ravel() for g in generators], axis=1)
    coeff, *_ = np.linalg.lstsq(basis, target.ravel(), rcond=None)
    return float(np.abs(target.ravel() - basis @ coeff).max())


def lie_closure_residual(spec: KappaSpec, space: FockSpace) -> float:
    """Worst span-projection residual over all pairwise commutators.

    For kappa >= 0 the generators live on a finite window whose shell
    rows carry truncation defects, so the check restricts every matrix
    to the interior block (totals <= bound - 1) where the windowed
    products coincide with the untruncated ones.
    """
    gens = [g.matrix for g in lie_generators(spec, space)]
    if not spec.is_negative:
        keep = space.interior_indices()
        gens = [g[np.ix_(keep, keep)] for g in gens]
    worst = 0.0
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            comm = commutator(gens[i], gens[j])
            worst = max(worst, span_projection_residual(gens, comm))
    return worst


def _split_residual(resid: np.ndarray, space: FockSpace) -> tuple[float, float]:
    """(interior, shell) max-abs split of a residual matrix.

    An entry is interior when both its row and column states sit strictly
    inside the shell n1 + n2 = bound.
    """
    totals = space.totals()
    on_shell = totals == space.bound
    shell_mask = on_shell[:, None] | on_shell[None, :]
    interior = float(np.abs(np.where(shell_mask, 0.0, resid)).max()) if resid.size else 0.0
    shell = float(np.abs(np.where(shell_mask, resid, 0.0)).max()) if resid.size else 0.0
    return interior, shell


def check_algebra(spec: KappaSpec, space: FockSpace, tol: float = 1e-10) -> list:
    """Verify the defining relations as matrix identities.

    Checks, per identity, the max-abs residual split into interior and
    shell parts: the two ladder commutators against I + kappa*(N1+N2+N_i),
    the number-ladder relations, vanishing of same-sign cross
    commutators, and the two-step relations [a_i, [a_i, a_j]] = 0 with
    opposite signs.  For kappa >= 0 windows the ladder commutators hold
    only off the shell, so those entries pass on their interior residual;
    everything else is gated on the full matrix.

    Returns a list of :class:`phasekit.reports.CheckEntry`.
    """
    from .reports import CheckEntry

    _check_pair(spec, space)
    kappa = spec.kappa
    ident = np.eye(space.dim, dtype=complex)
    a = {
        (m, s): ladder(spec, space, m, s).matrix
        for m in (1, 2)
        for s in (+1, -1)
    }
    n = {m: number_operator(space, m).matrix for m in (1, 2)}
    entries: list[CheckEntry] = []

    def add(name: str, resid: np.ndarray, gate_interior: bool):
        interior, shell = _split_residual(resid, space)
        gate = interior if gate_interior else max(interior, shell)
        entries.append(
            CheckEntry(
                name=name,
                max_residual=float(max(interior, shell)),
                passed=bool(gate <= tol),
                interior=interior,
                shell=shell,
            )
        )

    for m in (1, 2):
        lhs = commutator(a[(m, -1)], a[(m, +1)])
        rhs = ident + _kappa_times(kappa, n[1] + n[2] + n[m])
        add(f"ladder_commutator_mode{m}", lhs - rhs, gate_interior=not spec.is_negative)
    for i in (1, 2):
        for jm in (1, 2):
            for s, tag in ((+1, "+"), (-1, "-")):
                lhs = commutator(n[i], a[(jm, s)])
                rhs = s * a[(i, s)] if i == jm else np.zeros_like(lhs)
                add(f"number_ladder[N{i},a{jm}{tag}]", lhs - rhs, gate_interior=False)
    for s, tag in ((+1, "+"), (-1, "-")):
        resid = commutator(a[(1, s)], a[(2, s)])
        add(f"cross_ladder[a1{tag},a2{tag}]", resid, gate_interior=False)
    for (i, jm) in ((1, 2), (2, 1)):
        for s, tag in ((+1, "+"), (-1, "-")):
            inner = commutator(a[(i, s)], a[(jm, -s)])
            resid = commutator(a[(i, s)], inner)
            add(
                f"triple[a{i}{tag},[a{i}{tag},a{jm}{'-' if s > 0 else '+'}]]",
                resid,
                gate_interior=not spec.is_negative,
            )
    return entries
