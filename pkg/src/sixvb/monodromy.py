"""Chain-space operators for the open chain with a reflecting end.

The chain has L = 2N sites; site 1 owns the most significant position, so a
product basis state (s_1, ..., s_L) with s_i in {1, 2} sits at index
``sum((s_i - 1) << (L - i))``.  Operators carrying an auxiliary space are
kept as explicit 2x2 blocks of chain-space operators; block (1,1) is the A
block, (1,2) the creation block B, (2,1) the annihilation block C and (2,2)
the D block.

Every local factor of a monodromy touches one site only, so besides the
dense block representation there is a fast path that applies a whole
monodromy to a state while tracking the 2x2 auxiliary structure.  The dense
path is used for operator-level identity checks at small L; the fast path
drives every state-level computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import PoleError
from .exact import ExactMatrix, format_rational, parse_rational
from .lattice import LatticeSpec, ExternalConfig, inhomogeneities, require_valid
from .weights import r_matrix

_F0 = Fraction(0)
_F1 = Fraction(1)


def basis_index(states: Sequence[int]) -> int:
    """Index of the product basis state (s_1, ..., s_L), site 1 most significant."""
    idx = 0
    for s in states:
        idx = (idx << 1) | (s - 1)
    return idx


def index_to_states(idx: int, length: int) -> tuple:
    return tuple(((idx >> (length - i)) & 1) + 1 for i in range(1, length + 1))


@dataclass(frozen=True)
class QuantumState:
    """Exact vector over the 2^L chain space."""

    length: int
    amplitudes: tuple

    def __post_init__(self):
        amps = tuple(Fraction(a) for a in self.amplitudes)
        if len(amps) != 1 << self.length:
            raise ValueError(f"state needs {1 << self.length} amplitudes, got {len(amps)}")
        object.__setattr__(self, "amplitudes", amps)

    def component(self, states: Sequence[int]) -> Fraction:
        return self.amplitudes[basis_index(states)]

    def scale(self, c) -> "QuantumState":
        c = Fraction(c)
        return QuantumState(self.length, tuple(c * a for a in self.amplitudes))

    def __add__(self, other: "QuantumState") -> "QuantumState":
        if self.length != other.length:
            raise ValueError("chain length mismatch")
        return QuantumState(
            self.length, tuple(a + b for a, b in zip(self.amplitudes, other.amplitudes))
        )

    def __sub__(self, other: "QuantumState") -> "QuantumState":
        return self + other.scale(-1)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.amplitudes)

    def norm_square(self) -> Fraction:
        return sum((a * a for a in self.amplitudes), _F0)

    def to_dict(self) -> dict:
        return {
            "L": self.length,
            "components": [
                {
                    "basis": "".join(str(s) for s in index_to_states(i, self.length)),
                    "value": format_rational(a),
                }
                for i, a in enumerate(self.amplitudes)
                if a != 0
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "QuantumState":
        length = int(data["L"])
        amps = [_F0] * (1 << length)
        for comp in data["components"]:
            states = tuple(int(ch) for ch in comp["basis"])
            if len(states) != length:
                raise ValueError(f"basis string {comp['basis']!r} has wrong length")
            amps[basis_index(states)] = parse_rational(comp["value"])
        return cls(length, tuple(amps))


def states_proportional(u: QuantumState, v: QuantumState) -> bool:
    """True when u and v span the same ray (either may be scaled arbitrarily)."""
    if u.length != v.length:
        return False
    ua, va = u.amplitudes, v.amplitudes
    pivot = next((i for i, a in enumerate(ua) if a != 0), None)
    if pivot is None:
        return v.is_zero()
    if va[pivot] == 0:
        return False
    c = va[pivot] / ua[pivot]
    return all(c * a == b for a, b in zip(ua, va))


@dataclass(frozen=True)
class QuantumOperator:
    length: int
    matrix: ExactMatrix

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols or self.matrix.rows != 1 << self.length:
            raise ValueError("operator must be square of dimension 2^L")


@dataclass(frozen=True)
class AuxOperator:
    """2x2 array of chain-space operators: ((A, B), (C, D))."""

    length: int
    blocks: tuple

    @property
    def a_block(self) -> ExactMatrix:
        return self.blocks[0][0]

    @property
    def b_block(self) -> ExactMatrix:
        return self.blocks[0][1]

    @property
    def c_block(self) -> ExactMatrix:
        return self.blocks[1][0]

    @property
    def d_block(self) -> ExactMatrix:
        return self.blocks[1][1]

    def block(self, r: int, c: int) -> ExactMatrix:
        """1-based auxiliary indices; block(1, 2) is the creation block."""
        return self.blocks[r - 1][c - 1]

    def __matmul__(self, other: "AuxOperator") -> "AuxOperator":
        if self.length != other.length:
            raise ValueError("chain length mismatch")
        rows = []
        for r in range(2):
            row = []
            for c in range(2):
                acc = self.blocks[r][0] @ other.blocks[0][c]
                acc = acc + self.blocks[r][1] @ other.blocks[1][c]
                row.append(acc)
            rows.append(tuple(row))
        return AuxOperator(self.length, tuple(rows))

    def scale(self, c) -> "AuxOperator":
        return AuxOperator(
            self.length,
            tuple(tuple(b.scale(c) for b in row) for row in self.blocks),
        )

    def aux_transpose(self) -> "AuxOperator":
        (a, b), (c, d) = self.blocks
        return AuxOperator(self.length, ((a, c), (b, d)))

    def aux_s_conjugate(self) -> "AuxOperator":
        """Conjugation by ((0,1),(-1,0)) in the auxiliary space: ((D,-C),(-B,A))."""
        (a, b), (c, d) = self.blocks
        return AuxOperator(self.length, ((d, c.scale(-1)), (b.scale(-1), a)))


@dataclass(frozen=True)
class VacuumEigenvalues:
    alpha_val: Fraction
    delta_tilde_val: Fraction
    xi_val: Fraction
    lambda_val: Fraction


@dataclass(frozen=True)
class ChainData:
    """Site data of the end-point-conjugated chain: inhomogeneity and block type."""

    length: int
    v: tuple
    conjugate: tuple
    q: Fraction


@lru_cache(maxsize=256)
def chain_data(spec: LatticeSpec) -> ChainData:
    require_valid(spec)
    v = inhomogeneities(spec).values
    conj = [False] * spec.length
    for chord in spec.chords:
        conj[chord.end - 1] = True
    return ChainData(spec.length, v, tuple(conj), spec.boundary_q)


# -- eigenvalue functions -----------------------------------------------------

def f_factor(z, theta) -> Fraction:
    z, theta = Fraction(z), Fraction(theta)
    return (z - theta - 1) * (z - theta + 1) * (z + theta) * (z + theta + 2)


def g_factor(z, theta) -> Fraction:
    z, theta = Fraction(z), Fraction(theta)
    return (z - theta) * (z - theta + 1) * (z + theta + 1) * (z + theta + 2)


def _signed_thetas(spec: LatticeSpec):
    return [
        t if spec.is_reflected(k) else -t for k, t in enumerate(spec.rapidities, start=1)
    ]


def xi_value(spec: LatticeSpec, z) -> Fraction:
    z = Fraction(z)
    out = _F1
    for t in _signed_thetas(spec):
        out *= g_factor(z, t)
    return out


def lambda_value(spec: LatticeSpec, z) -> Fraction:
    z = Fraction(z)
    out = _F1
    for t in _signed_thetas(spec):
        out *= f_factor(z, t)
    return out


def vacuum_eigenvalues(spec: LatticeSpec, z) -> VacuumEigenvalues:
    """Eigenvalues of the diagonal blocks on the reference state.

    alpha(z) = (q+z) Xi(z) and dtilde(z) = 2z/(2z+1) (q-z-1) Xi(z-1); the
    shifted D block has a pole at z = -1/2.
    """
    require_valid(spec)
    z = Fraction(z)
    if 2 * z + 1 == 0:
        raise PoleError("shifted D block has a pole at z = -1/2")
    q = spec.boundary_q
    xi = xi_value(spec, z)
    return VacuumEigenvalues(
        alpha_val=(q + z) * xi,
        delta_tilde_val=Fraction(2 * z, 1) / (2 * z + 1) * (q - z - 1) * xi_value(spec, z - 1),
        xi_val=xi,
        lambda_val=lambda_value(spec, z),
    )


# -- reference state ----------------------------------------------------------

def reference_state(spec: LatticeSpec) -> QuantumState:
    """End-point-rotated all-1 product state: state 2 at every end site.

    Each end-site rotation sends |1> to -|2>, so the overall sign is (-1)^N.
    """
    require_valid(spec)
    length = spec.length
    states = [1] * length
    for chord in spec.chords:
        states[chord.end - 1] = 2
    amps = [_F0] * (1 << length)
    amps[basis_index(states)] = _F1 if spec.n % 2 == 0 else -_F1
    return QuantumState(length, tuple(amps))


# -- fast state-application engine --------------------------------------------

def _lax_column(a, b, length, site, w, conjugate):
    """Apply one local factor to an auxiliary column (a, b) of chain vectors."""
    size = 1 << length
    mask = 1 << (length - site)
    wp1 = w + 1
    a2 = [None] * size
    b2 = [None] * size
    for i0 in range(size):
        if i0 & mask:
            continue
        i1 = i0 | mask
        x0 = a[i0]
        x1 = a[i1]
        y0 = b[i0]
        y1 = b[i1]
        if conjugate:
            a2[i0] = w * x0 - y1
            a2[i1] = wp1 * x1
            b2[i0] = wp1 * y0
            b2[i1] = w * y1 - x0
        else:
            a2[i0] = wp1 * x0
            a2[i1] = w * x1 + y0
            b2[i0] = w * y0 + x1
            b2[i1] = wp1 * y1
    return a2, b2


def _apply_single_row_column(col_a, col_b, chain: ChainData, z, hat: bool):
    """Left-multiply one auxiliary column (a, b) by a conjugated row product."""
    length = chain.length
    sites = range(1, length + 1) if hat else range(length, 0, -1)
    for site in sites:
        w = z + chain.v[site - 1] if hat else z - chain.v[site - 1]
        conj = chain.conjugate[site - 1]
        col_a, col_b = _lax_column(col_a, col_b, length, site, w, conj)
    return col_a, col_b


def _apply_single_row(phi, chain: ChainData, z, hat: bool):
    """Left-multiply a 2x2 array of chain vectors by one conjugated row product."""
    for c in (0, 1):
        phi[0][c], phi[1][c] = _apply_single_row_column(phi[0][c], phi[1][c], chain, z, hat)
    return phi


def _aux_columns(vec):
    zero = [_F0] * len(vec)
    return [[list(vec), list(zero)], [list(zero), list(vec)]]


def single_row_on_state(spec: LatticeSpec, z, hat: bool, state: QuantumState):
    """Blocks of the conjugated single-row product applied to a state.

    Returns a 2x2 nested list ``phi`` with ``phi[r][c]`` the chain vector
    block(r+1, c+1) |state>.
    """
    chain = chain_data(spec)
    phi = _aux_columns(state.amplitudes)
    _apply_single_row(phi, chain, Fraction(z), hat)
    return [[QuantumState(chain.length, tuple(col)) for col in row] for row in phi]


def double_row_on_state(spec: LatticeSpec, z, state: QuantumState):
    """Blocks of the double-row monodromy applied to a state (2x2 nested list)."""
    chain = chain_data(spec)
    z = Fraction(z)
    q = chain.q
    phi = _aux_columns(state.amplitudes)
    _apply_single_row(phi, chain, z, hat=True)
    for c in (0, 1):
        phi[0][c] = [(q + z) * x for x in phi[0][c]]
        phi[1][c] = [(q - z) * x for x in phi[1][c]]
    _apply_single_row(phi, chain, z, hat=False)
    return [[QuantumState(chain.length, tuple(col)) for col in row] for row in phi]


def _open_b_amplitudes(chain: ChainData, z, vec):
    """Creation block of the double-row monodromy applied to raw amplitudes.

    Only the second auxiliary column of the identity-dressed state feeds
    block (1, 2), so a single column pair is tracked.
    """
    z = Fraction(z)
    q = chain.q
    col_a = [_F0] * len(vec)
    col_b = list(vec)
    col_a, col_b = _apply_single_row_column(col_a, col_b, chain, z, hat=True)
    col_a = [(q + z) * x for x in col_a]
    col_b = [(q - z) * x for x in col_b]
    col_a, _ = _apply_single_row_column(col_a, col_b, chain, z, hat=False)
    return col_a


def apply_open_b(spec: LatticeSpec, z, state: QuantumState) -> QuantumState:
    """Apply the open-chain creation operator at parameter z to a state."""
    chain = chain_data(spec)
    return QuantumState(chain.length, tuple(_open_b_amplitudes(chain, z, state.amplitudes)))


def apply_closed_b(spec: LatticeSpec, z, state: QuantumState) -> QuantumState:
    """Apply the closed-chain (single-row) creation block to a state."""
    chain = chain_data(spec)
    col_a = [_F0] * len(state.amplitudes)
    col_b = list(state.amplitudes)
    col_a, _ = _apply_single_row_column(col_a, col_b, chain, Fraction(z), hat=False)
    return QuantumState(chain.length, tuple(col_a))


# -- dense operators ----------------------------------------------------------

def _embedded_e(length: int, site: int, a: int, b: int) -> ExactMatrix:
    """Chain-space embedding of the elementary matrix e_{ab} at one site."""
    size = 1 << length
    mask = 1 << (length - site)
    want = (b - 1) * mask
    put = (a - 1) * mask
    rows = [[_F0] * size for _ in range(size)]
    for j in range(size):
        if (j & mask) == want:
            rows[(j & ~mask) | put][j] = _F1
    return ExactMatrix(tuple(tuple(r) for r in rows))


def lax_embed(z, site: int, length: int, conjugate: bool = False) -> AuxOperator:
    """One local factor as an auxiliary-block operator on the full chain.

    Plain blocks: block(r,c) = z d_{rc} I + e_{cr} at the site, so block
    (1,2) creates state 2 out of state 1.  Conjugate blocks:
    block(r,c) = (z+1) d_{rc} I - e_{rc}.
    """
    if not (1 <= site <= length):
        raise ValueError(f"site {site} out of range 1..{length}")
    z = Fraction(z)
    eye = ExactMatrix.identity(1 << length)
    if not conjugate:
        blocks = (
            (eye.scale(z) + _embedded_e(length, site, 1, 1), _embedded_e(length, site, 2, 1)),
            (_embedded_e(length, site, 1, 2), eye.scale(z) + _embedded_e(length, site, 2, 2)),
        )
    else:
        blocks = (
            (
                eye.scale(z + 1) - _embedded_e(length, site, 1, 1),
                _embedded_e(length, site, 1, 2).scale(-1),
            ),
            (
                _embedded_e(length, site, 2, 1).scale(-1),
                eye.scale(z + 1) - _embedded_e(length, site, 2, 2),
            ),
        )
    return AuxOperator(length, blocks)


def single_row(spec: LatticeSpec, z, hat: bool = False) -> AuxOperator:
    """Dense conjugated single-row monodromy (end sites carry conjugate blocks)."""
    chain = chain_data(spec)
    z = Fraction(z)
    sites = range(chain.length, 0, -1) if hat else range(1, chain.length + 1)
    op = None
    for site in sites:
        w = z + chain.v[site - 1] if hat else z - chain.v[site - 1]
        factor = lax_embed(w, site, chain.length, conjugate=chain.conjugate[site - 1])
        op = factor if op is None else op @ factor
    return op


def double_row(spec: LatticeSpec, z) -> AuxOperator:
    """Dense double-row monodromy M K Mhat with the dressed boundary matrix."""
    chain = chain_data(spec)
    z = Fraction(z)
    q = chain.q
    eye = ExactMatrix.identity(1 << chain.length)
    boundary = AuxOperator(
        chain.length,
        (
            (eye.scale(q + z), ExactMatrix.zeros(eye.rows, eye.cols)),
            (ExactMatrix.zeros(eye.rows, eye.cols), eye.scale(q - z)),
        ),
    )
    return single_row(spec, z, hat=False) @ boundary @ single_row(spec, z, hat=True)


def d_tilde(spec: LatticeSpec, z) -> QuantumOperator:
    """Shifted diagonal block Dtilde(z) = D(z) - A(z)/(2z+1)."""
    z = Fraction(z)
    if 2 * z + 1 == 0:
        raise PoleError("shifted D block has a pole at z = -1/2")
    u = double_row(spec, z)
    return QuantumOperator(
        spec.length, u.d_block - u.a_block.scale(_F1 / (2 * z + 1))
    )


def check_crossing(spec: LatticeSpec, z) -> bool:
    """The two single-row products are auxiliary transposes of each other.

    Mhat(z)^{t_a} = (-1)^L S M(-z-1) S^{-1} with the transpose and the
    similarity both taken in the auxiliary space.
    """
    z = Fraction(z)
    lhs = single_row(spec, z, hat=True).aux_transpose()
    sign = 1 if spec.length % 2 == 0 else -1
    rhs = single_row(spec, -z - 1, hat=False).aux_s_conjugate().scale(sign)
    return lhs == rhs


def check_reflection_algebra(spec: LatticeSpec, x, y) -> bool:
    """Exchange identity of the double-row monodromy on two auxiliary legs.

    R(x-y) U1(x) R(x+y) U2(y) = U2(y) R(x+y) U1(x) R(x-y) on the space
    (aux leg 1, aux leg 2, chain).  Dense; intended for short chains.
    """
    x, y = Fraction(x), Fraction(y)
    ux = double_row(spec, x)
    uy = double_row(spec, y)
    dim_q = 1 << spec.length
    dim = 4 * dim_q

    def aux_first(op: AuxOperator):
        rows = [[_F0] * dim for _ in range(dim)]
        for a in range(2):
            for a2 in range(2):
                blk = op.blocks[a][a2]
                for b in range(2):
                    for qi in range(dim_q):
                        row = (a * 2 + b) * dim_q + qi
                        base = (a2 * 2 + b) * dim_q
                        ent = blk.entries[qi]
                        for qj in range(dim_q):
                            if ent[qj]:
                                rows[row][base + qj] = ent[qj]
        return ExactMatrix(tuple(tuple(r) for r in rows))

    def aux_second(op: AuxOperator):
        rows = [[_F0] * dim for _ in range(dim)]
        for b in range(2):
            for b2 in range(2):
                blk = op.blocks[b][b2]
                for a in range(2):
                    for qi in range(dim_q):
                        row = (a * 2 + b) * dim_q + qi
                        base = (a * 2 + b2) * dim_q
                        ent = blk.entries[qi]
                        for qj in range(dim_q):
                            if ent[qj]:
                                rows[row][base + qj] = ent[qj]
        return ExactMatrix(tuple(tuple(r) for r in rows))

    def r_on_aux(theta):
        r4 = r_matrix(theta).matrix
        rows = [[_F0] * dim for _ in range(dim)]
        for ab in range(4):
            for ab2 in range(4):
                val = r4[ab, ab2]
                if val:
                    for qi in range(dim_q):
                        rows[ab * dim_q + qi][ab2 * dim_q + qi] = val
        return ExactMatrix(tuple(tuple(r) for r in rows))

    rm = r_on_aux(x - y)
    rp = r_on_aux(x + y)
    u1 = aux_first(ux)
    u2 = aux_second(uy)
    return rm @ u1 @ rp @ u2 == u2 @ rp @ u1 @ rm


def external_component(state: QuantumState, spec: LatticeSpec, config: ExternalConfig) -> Fraction:
    """Contraction of a chain state with perimeter labels: alpha at starts, beta at ends."""
    if len(config.alpha) != spec.n or len(config.beta) != spec.n:
        raise ValueError(f"config labels must have length {spec.n}")
    states = [0] * spec.length
    for chord, a, b in zip(spec.chords, config.alpha, config.beta):
        states[chord.start - 1] = a
        states[chord.end - 1] = b
    return state.component(states)
