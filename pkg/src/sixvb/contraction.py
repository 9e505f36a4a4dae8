"""Direct construction of invariant states by weaving crossing weights.

The nested pairing admits an explicit invariant: a tensor product of
two-site line and reflected-line solutions.  Any other pairing is reached
by a planned sequence of adjacent endpoint swaps; each swap multiplies the
running state with a crossing factor conjugated at end sites and then
relabels the two sites.  The overall scalar picked up along the way is
irrelevant because the partition function is a ratio of components.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DegenerateSpecError, PoleError
from .exact import format_rational
from .lattice import (
    ExternalConfig,
    LatticeSpec,
    ice_rule_satisfied,
    inhomogeneities,
    initial_spec,
    is_initial,
    reference_config,
    require_valid,
)
from .monodromy import QuantumState, external_component

_F0 = Fraction(0)
_F1 = Fraction(1)


def line_invariant() -> QuantumState:
    """Two-site invariant of a free line: components 1 at (1,1) and (2,2)."""
    return QuantumState(2, (_F1, _F0, _F0, _F1))


def boundary_line_invariant(theta, q) -> QuantumState:
    """Two-site invariant of a reflected line; the (2,2) component is the
    reflection weight (q-theta)/(q+theta)."""
    theta, q = Fraction(theta), Fraction(q)
    if q + theta == 0:
        raise PoleError("reflection weights have a pole at q + theta = 0")
    return QuantumState(2, (_F1, _F0, _F0, (q - theta) / (q + theta)))


def initial_invariant(spec: LatticeSpec) -> QuantumState:
    """Tensor product of two-site invariants for the nested pairing.

    Line k occupies sites (2(N-k)+1, 2(N-k)+2), so line N fills the most
    significant pair and line 1 the least significant one.
    """
    require_valid(spec)
    if not is_initial(spec):
        raise ValueError("initial invariant requires the nested pairing")
    amps = [_F1]
    for k in range(spec.n, 0, -1):
        local = (
            boundary_line_invariant(spec.rapidities[k - 1], spec.boundary_q)
            if spec.is_reflected(k)
            else line_invariant()
        )
        amps = [a * b for a in amps for b in local.amplitudes]
    return QuantumState(spec.length, tuple(amps))


@dataclass(frozen=True)
class Move:
    """Adjacent endpoint swap at (position, position+1) with the crossing
    argument actually applied."""

    position: int
    argument: Fraction


@dataclass(frozen=True)
class MoveSequence:
    moves: tuple
    source: LatticeSpec
    target: LatticeSpec


def moves_to_dict(seq: MoveSequence) -> dict:
    return {
        "moves": [
            {"p": m.position, "arg": format_rational(m.argument)} for m in seq.moves
        ]
    }


def _endpoint_layout(spec: LatticeSpec):
    """Per-position endpoint descriptors: (line, is_end), inhomogeneity value."""
    length = spec.length
    owner = [None] * length
    for k, chord in enumerate(spec.chords, start=1):
        owner[chord.start - 1] = (k, False)
        owner[chord.end - 1] = (k, True)
    v = inhomogeneities(spec).values
    return owner, list(v)


def replay_moves(seq: MoveSequence) -> tuple:
    """Apply the endpoint swaps of a plan to the source layout; returns the
    resulting per-position endpoint descriptors."""
    owner, _ = _endpoint_layout(seq.source)
    owner = list(owner)
    for move in seq.moves:
        p = move.position - 1
        owner[p], owner[p + 1] = owner[p + 1], owner[p]
    return tuple(owner)


def plan_moves(spec: LatticeSpec, lowest_first: bool = False) -> MoveSequence:
    """Deterministic adjacent-swap plan from the nested pairing to the target.

    The default strategy places the endpoint belonging to the highest
    position first; ``lowest_first`` gives an alternative plan used to
    exercise independence of the result from the route.  Neither strategy
    ever swaps the two endpoints of the same line, so no crossing factor is
    evaluated at its pole.
    """
    require_valid(spec)
    source = initial_spec(spec)
    target_owner, _ = _endpoint_layout(spec)
    owner, v = _endpoint_layout(source)
    owner = list(owner)
    moves = []

    def emit(p):  # swap positions p, p+1 (1-based p)
        moves.append(Move(position=p, argument=v[p] - v[p - 1]))
        owner[p - 1], owner[p] = owner[p], owner[p - 1]
        v[p - 1], v[p] = v[p], v[p - 1]

    length = spec.length
    if lowest_first:
        for pos in range(1, length + 1):
            cur = owner.index(target_owner[pos - 1]) + 1
            for p in range(cur - 1, pos - 1, -1):
                emit(p)
    else:
        for pos in range(length, 0, -1):
            cur = owner.index(target_owner[pos - 1]) + 1
            for p in range(cur, pos):
                emit(p)
    return MoveSequence(moves=tuple(moves), source=source, target=spec)


def _apply_s(amps, length, site, inverse=False):
    """Similarity rotation at one site: |1> -> -|2>, |2> -> |1> (inverse flips signs)."""
    mask = 1 << (length - site)
    out = list(amps)
    for i0 in range(len(amps)):
        if i0 & mask:
            continue
        i1 = i0 | mask
        if inverse:
            out[i0], out[i1] = -amps[i1], amps[i0]
        else:
            out[i0], out[i1] = amps[i1], -amps[i0]
    return out


def _apply_r_pair(amps, length, p, theta):
    """Unit-normalized crossing factor on adjacent sites (p, p+1)."""
    if theta == -1:
        raise PoleError("crossing factor evaluated at its pole theta = -1")
    hi = 1 << (length - p)
    lo = 1 << (length - p - 1)
    d = theta + 1
    out = list(amps)
    for idx in range(len(amps)):
        a = (idx & hi) != 0
        b = (idx & lo) != 0
        if a != b:
            swapped = idx ^ hi ^ lo
            out[idx] = (theta * amps[idx] + amps[swapped]) / d
    return out


def _apply_swap(amps, length, p):
    hi = 1 << (length - p)
    lo = 1 << (length - p - 1)
    out = list(amps)
    for idx in range(len(amps)):
        a = (idx & hi) != 0
        b = (idx & lo) != 0
        if a != b:
            out[idx] = amps[idx ^ hi ^ lo]
    return out


def build_invariant(spec: LatticeSpec, plan: Optional[MoveSequence] = None) -> QuantumState:
    """Weave the nested-pairing invariant into the invariant of the target.

    Each move applies, at its position p, the operator
    ``swap . C R(v_{p+1} - v_p) C^{-1}`` where C rotates whichever of the
    two sites currently holds an end point; the inhomogeneity bookkeeping
    then travels with the endpoints.  The state is exact throughout; its
    overall normalization is arbitrary.
    """
    require_valid(spec)
    if plan is None:
        plan = plan_moves(spec)
    source = plan.source
    owner, v = _endpoint_layout(source)
    owner = list(owner)
    length = spec.length
    amps = list(initial_invariant(source).amplitudes)

    for move in plan.moves:
        p = move.position
        theta = v[p] - v[p - 1]
        if theta != move.argument:
            raise ValueError("move plan inconsistent with inhomogeneity bookkeeping")
        ends = [s for s in (p, p + 1) if owner[s - 1][1]]
        for s in ends:
            amps = _apply_s(amps, length, s, inverse=True)
        amps = _apply_r_pair(amps, length, p, theta)
        for s in reversed(ends):
            amps = _apply_s(amps, length, s)
        amps = _apply_swap(amps, length, p)
        owner[p - 1], owner[p] = owner[p], owner[p - 1]
        v[p - 1], v[p] = v[p], v[p - 1]

    target_owner, target_v = _endpoint_layout(spec)
    if owner != list(target_owner) or v != list(target_v):
        raise ValueError("move plan did not reach the target pairing")
    return QuantumState(length, tuple(amps))


def z_direct(spec: LatticeSpec, config: ExternalConfig) -> Fraction:
    """Partition function read off the woven invariant state."""
    if not ice_rule_satisfied(spec, config):
        return _F0
    state = build_invariant(spec)
    norm = external_component(state, spec, reference_config(spec.n))
    if norm == 0:
        raise DegenerateSpecError("reference component of the invariant vanished")
    return external_component(state, spec, config) / norm


def z_direct_table(spec: LatticeSpec, configs: Sequence[ExternalConfig]) -> list:
    """Values for many configs from a single weave."""
    state = build_invariant(spec)
    norm = external_component(state, spec, reference_config(spec.n))
    if norm == 0:
        raise DegenerateSpecError("reference component of the invariant vanished")
    out = []
    for config in configs:
        if not ice_rule_satisfied(spec, config):
            out.append(_F0)
        else:
            out.append(external_component(state, spec, config) / norm)
    return out
