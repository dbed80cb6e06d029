"""Unitary phase operators on the finite (kappa < 0) space.

The triangle basis splits three ways into invariant blocks:

* fixed n2 = l      -> blocks of size k - l + 1 (mode-1 ladder acts inside)
* fixed n1 = l      -> blocks of size k - l + 1 (mode-2 ladder)
* fixed n1 + n2 = l -> blocks of size l + 1     (transfer ladder)

Each family of phase operators is a block-cyclic unitary built directly
from its defining action (never by inverting the singular sqrt-structure
diagonal): inside a block it steps the running index down by one,
carrying the phase exp(i * [lam(from) - lam(to)] * phi), and wraps the
edge state around to the top of the block.  The transfer family needs no
phases at all because its blocks sit at constant total occupation.  On
top of these, a single global operator cycles through all d basis states
(the basis ordering was chosen to make it the plain d-cycle up to
phases).

The polar decompositions  a_i^- = E_i * sqrt(F_i)  then hold as exact
matrix identities and are verified in the test suite, not used as the
construction route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .fock import (
    FockSpace,
    KappaSpec,
    LinearOperator,
    level_energy,
    structure_function,
)

__all__ = [
    "PartitionKind",
    "Partition",
    "PhaseFamily",
    "PhaseOperator",
    "build_partition",
    "mode_phase_operator",
    "transfer_phase_operator",
    "cyclic_phase_operator",
    "sqrt_structure_operator",
]


class PartitionKind(Enum):
    FIXED_MODE2 = "fixed_mode2"   # blocks {|n, l> : n = 0..k-l}
    FIXED_MODE1 = "fixed_mode1"   # blocks {|l, n> : n = 0..k-l}
    FIXED_TOTAL = "fixed_total"   # blocks {|l-n, n> : n = 0..l}


class PhaseFamily(Enum):
    MODE1 = "mode1"
    MODE2 = "mode2"
    TRANSFER = "transfer"
    CYCLIC = "cyclic"


_FAMILY_KIND = {
    PhaseFamily.MODE1: PartitionKind.FIXED_MODE2,
    PhaseFamily.MODE2: PartitionKind.FIXED_MODE1,
    PhaseFamily.TRANSFER: PartitionKind.FIXED_TOTAL,
}


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks of flat basis indices covering the whole space."""

    kind: PartitionKind
    blocks: tuple[tuple[int, ...], ...]

    def block_sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]


@dataclass(frozen=True, eq=False)
class PhaseOperator:
    """A unitary phase operator together with its per-block components.

    ``op`` is the full d x d unitary.  For the three block families,
    ``block_ops[l]`` is the component supported on block l (a full-size
    matrix, zero outside the block) and their sum equals ``op``; the
    global cyclic family has no block decomposition.
    """

    op: LinearOperator
    family: PhaseFamily
    block_ops: tuple[LinearOperator, ...] | None = None
    partition: Partition | None = None


def _require_negative(spec_or_space):
    spec = spec_or_space.spec if isinstance(spec_or_space, FockSpace) else spec_or_space
    if spec is None or not spec.is_negative:
        raise ValueError("phase operators and partitions require the finite kappa = -1/k space")


def _block_states(kind: PartitionKind, k: int, l: int) -> list[tuple[int, int]]:
    if kind is PartitionKind.FIXED_MODE2:
        return [(n, l) for n in range(k - l + 1)]
    if kind is PartitionKind.FIXED_MODE1:
        return [(l, n) for n in range(k - l + 1)]
    return [(l - n, n) for n in range(l + 1)]


def build_partition(space: FockSpace, kind: PartitionKind) -> Partition:
    """Split the basis into the invariant blocks of the given kind."""
    _require_negative(space)
    k = space.bound
    blocks = []
    for l in range(k + 1):
        blocks.append(tuple(space.index_of(*st) for st in _block_states(kind, k, l)))
    covered = sorted(j for b in blocks for j in b)
    assert covered == list(range(space.dim)), "partition must cover the basis exactly once"
    return Partition(kind=kind, blocks=tuple(blocks))


def _assemble_blocks(spec, space, family, column_maps) -> PhaseOperator:
    """Build block_ops from per-block (source index, target index, phase) triples."""
    partition = build_partition(space, _FAMILY_KIND[family])
    block_ops = []
    total = np.zeros((space.dim, space.dim), dtype=complex)
    for l, triples in enumerate(column_maps):
        mat = np.zeros((space.dim, space.dim), dtype=complex)
        for src, tgt, phase in triples:
            mat[tgt, src] = phase
        block_ops.append(LinearOperator(mat, space, f"{family.value}({l})"))
        total += mat
    op = LinearOperator(total, space, family.value)
    return PhaseOperator(op=op, family=family, block_ops=tuple(block_ops), partition=partition)


def mode_phase_operator(spec: KappaSpec, space: FockSpace, mode: int) -> PhaseOperator:
    """Block-cyclic unitary whose polar pairing reproduces the mode ladder.

    In each fixed-other-mode block it lowers the running occupation by
    one with phase exp(i*[lam(t) - lam(t-1)]*phi), and wraps the bottom
    state to the top of the block with the compensating phase
    exp(i*[lam(l) - lam(k)]*phi).
    """
    if mode not in (1, 2):
        raise ValueError("mode must be 1 or 2")
    _require_negative(spec)
    k, phi, kappa = space.bound, spec.phi, spec.kappa
    family = PhaseFamily.MODE1 if mode == 1 else PhaseFamily.MODE2
    column_maps = []
    for l in range(k + 1):
        states = _block_states(_FAMILY_KIND[family], k, l)
        triples = []
        for pos, st in enumerate(states):
            src = space.index_of(*st)
            if pos > 0:
                tgt_state = states[pos - 1]
                t = st[0] + st[1]
                phase = np.exp(1j * (level_energy(t, kappa) - level_energy(t - 1, kappa)) * phi)
            else:
                tgt_state = states[-1]
                phase = np.exp(1j * (level_energy(l, kappa) - level_energy(k, kappa)) * phi)
            triples.append((src, space.index_of(*tgt_state), phase))
        column_maps.append(triples)
    return _assemble_blocks(spec, space, family, column_maps)


def transfer_phase_operator(spec: KappaSpec, space: FockSpace) -> PhaseOperator:
    """Phase-free block-cyclic unitary paired with the transfer ladder.

    Blocks sit at constant total occupation, so every step is at zero
    Hamiltonian gap and the action carries no phi dependence: inside
    block l it maps |l-n, n> to |l-n+1, n-1>, wrapping |l, 0> to |0, l>.
    """
    _require_negative(spec)
    k = space.bound
    column_maps = []
    for l in range(k + 1):
        states = _block_states(PartitionKind.FIXED_TOTAL, k, l)
        triples = []
        for pos, st in enumerate(states):
            src = space.index_of(*st)
            tgt_state = states[pos - 1] if pos > 0 else states[-1]
            triples.append((src, space.index_of(*tgt_state), 1.0 + 0.0j))
        column_maps.append(triples)
    return _assemble_blocks(spec, space, PhaseFamily.TRANSFER, column_maps)


def cyclic_phase_operator(spec: KappaSpec, space: FockSpace) -> PhaseOperator:
    """Global unitary cycling through all d basis states.

    In flat order it sends index j to j-1 (and 0 back to d-1), with the
    phase of each hop fixed by the Hamiltonian gap between the two
    states; at phi = 0 it is exactly the d-cycle permutation matrix.
    Repeated application therefore connects every pair of basis rays,
    which no single block family can do.
    """
    _require_negative(spec)
    k, phi, kappa = space.bound, spec.phi, spec.kappa
    d = space.dim
    mat = np.zeros((d, d), dtype=complex)
    for src, (n1, n2) in enumerate(space.states):
        tgt = src - 1 if src > 0 else d - 1
        t_src = n1 + n2
        t_tgt = sum(space.states[tgt])
        phase = np.exp(1j * (level_energy(t_src, kappa) - level_energy(t_tgt, kappa)) * phi)
        mat[tgt, src] = phase
    op = LinearOperator(mat, space, PhaseFamily.CYCLIC.value)
    return PhaseOperator(op=op, family=PhaseFamily.CYCLIC)


def sqrt_structure_operator(spec: KappaSpec, space: FockSpace, mode: int) -> LinearOperator:
    """Diagonal sqrt(F_mode(N1, N2)); mode 3 is |kappa| * sqrt((N1+1) * N2).

    These are the positive factors in the polar decompositions
    a_i^- = E_i * sqrt(F_i); the mode-3 radical keeps the -kappa
    prefactor outside, which is positive in the kappa < 0 regime.
    """
    if mode not in (1, 2, 3):
        raise ValueError("mode must be 1, 2 or 3")
    diag = np.zeros(space.dim, dtype=complex)
    for j, (n1, n2) in enumerate(space.states):
        if mode == 3:
            kappa = spec.kappa if n2 > 0 else 0.0
            diag[j] = abs(kappa) * math.sqrt((n1 + 1) * n2)
        else:
            diag[j] = math.sqrt(structure_function(mode, n1, n2, spec.kappa))
    return LinearOperator(np.diag(diag), space, f"sqrtF{mode}")
