"""Dense statevector checks of the graph-state / graph correspondence.

Qubits are ordered by ``StateVector.labels``; amplitude index bits are
big-endian (the first label is the most significant bit). Global phase is
ignored: states are compared by fidelity modulus.
"""

from __future__ import annotations

import itertools
import json
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .graphs import LabeledGraph, local_complement
from .oracles import PairSet, VmWitness

MAX_QUBITS = 12
NORM_TOL = 1e-10

_S2 = 1 / np.sqrt(2)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) * _S2
# exp(-i pi/4 X) and exp(i pi/4 Z)
SQRT_MINUS_I_X = np.array([[1, -1j], [-1j, 1]], dtype=complex) * _S2
SQRT_I_Z = np.diag([np.exp(1j * np.pi / 4), np.exp(-1j * np.pi / 4)])

_EIGEN = {
    "X": (np.array([1, 1]) * _S2, np.array([1, -1]) * _S2),
    "Y": (np.array([1, 1j]) * _S2, np.array([1, -1j]) * _S2),
    "Z": (np.array([1, 0]), np.array([0, 1])),
}


class QubitLimitError(ValueError):
    pass


@dataclass(frozen=True)
class StateVector:
    labels: tuple[str, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2 ** len(self.labels):
            raise ValueError(f"{amps.size} amplitudes for {len(self.labels)} qubits")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate qubit label")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n(self) -> int:
        return len(self.labels)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.n)

    def reorder(self, labels: Sequence[str]) -> StateVector:
        if sorted(labels) != sorted(self.labels):
            raise ValueError(f"label mismatch: {sorted(labels)} vs {sorted(self.labels)}")
        if self.n == 0:
            return self
        perm = [self.labels.index(x) for x in labels]
        return StateVector(tuple(labels), np.transpose(self.tensor(), perm).reshape(-1))

    def fidelity(self, other: StateVector) -> float:
        """``|<self|other>|`` after aligning qubit order."""
        o = other.reorder(self.labels)
        return float(abs(np.vdot(self.amplitudes, o.amplitudes)))

    def apply(self, label: str, gate: np.ndarray) -> StateVector:
        if label not in self.labels:
            raise ValueError(f"unknown qubit {label!r}")
        q = self.labels.index(label)
        t = np.moveaxis(np.tensordot(gate, self.tensor(), axes=([1], [q])), 0, q)
        return StateVector(self.labels, t.reshape(-1))

    def to_json(self) -> str:
        """Amplitude dump: ``{"labels": [...], "amplitudes": [[re, im], ...]}``."""
        return json.dumps({"labels": list(self.labels),
                           "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes]})


def _guard(n: int, cap: int = MAX_QUBITS) -> None:
    if n > cap:
        raise QubitLimitError(f"{n} qubits exceeds the limit of {cap}")


def plus_state(labels: Sequence[str]) -> StateVector:
    _guard(len(labels))
    n = len(labels)
    return StateVector(tuple(labels), np.full(2 ** n, 2 ** (-n / 2), dtype=complex))


def graph_state(g: LabeledGraph) -> StateVector:
    """``|+>`` on every vertex, then a controlled-Z per edge."""
    n = len(g)
    _guard(n)
    idx = np.arange(2 ** n)
    bits = [(idx >> (n - 1 - i)) & 1 for i in range(n)]
    parity = np.zeros(2 ** n, dtype=np.int64)
    for u, v in g.edges():
        parity ^= bits[g.index(u)] & bits[g.index(v)]
    amps = (1 - 2 * parity) * 2 ** (-n / 2)
    return StateVector(tuple(g.vertices), amps.astype(complex))


def lc_unitary(g: LabeledGraph, v: str, s: StateVector) -> StateVector:
    """Apply ``exp(-i pi/4 X_v)`` and ``exp(i pi/4 Z_u)`` for each neighbour ``u`` of ``v``."""
    if v not in g:
        raise ValueError(f"unknown vertex {v!r}")
    if sorted(s.labels) != sorted(g.vertices):
        raise ValueError("state qubits do not match graph vertices")
    s = s.apply(v, SQRT_MINUS_I_X)
    for u in g.neighbors(v):
        s = s.apply(u, SQRT_I_Z)
    return s


def pauli_measure(s: StateVector, v: str, basis: str, seed: int | random.Random) -> tuple[int, StateVector]:
    """Projective Pauli measurement of qubit ``v``; the qubit is removed.

    The outcome is drawn with ``random.Random(seed)`` weighted by the Born
    probabilities, so a zero-probability branch is never selected.
    """
    if basis not in _EIGEN:
        raise ValueError(f"basis must be X, Y or Z, got {basis!r}")
    if v not in s.labels:
        raise ValueError(f"unknown qubit {v!r}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    q = s.labels.index(v)
    rest = s.labels[:q] + s.labels[q + 1:]
    branches = []
    for vec in _EIGEN[basis]:
        t = np.tensordot(np.conj(vec), s.tensor(), axes=([0], [q])).reshape(-1)
        branches.append((float(np.vdot(t, t).real), t))
    probs = [p for p, _ in branches]
    k = rng.choices([0, 1], weights=probs)[0]
    p, t = branches[k]
    return (1 if k == 0 else -1), StateVector(rest, t / np.sqrt(p))


def bell_target_state(b: PairSet, cap: int = 6) -> StateVector:
    """Tensor product of ``(|00> + |11>)/sqrt 2`` over the pairs of ``b``."""
    if len(b) > cap:
        raise QubitLimitError(f"{len(b)} pairs exceeds the limit of {cap}")
    phi = np.array([1, 0, 0, 1], dtype=complex) * _S2
    amps = np.ones(1, dtype=complex)
    for _ in b:
        amps = np.kron(amps, phi)
    return StateVector(tuple(b.vertices()), amps)


def schmidt_rank(s: StateVector, part: Iterable[str], tol: float = 1e-9) -> int:
    part = list(part)
    other = [x for x in s.labels if x not in part]
    m = s.reorder(part + other).amplitudes.reshape(2 ** len(part), -1)
    return int(np.linalg.matrix_rank(m, tol=tol))


def schmidt_profile(s: StateVector) -> dict[frozenset[str], int]:
    """Schmidt rank across every bipartition, keyed by the side without the first label."""
    labels = sorted(s.labels)
    out = {}
    for r in range(1, len(labels)):
        for part in itertools.combinations(labels[1:], r):
            out[frozenset(part)] = schmidt_rank(s, part)
    return out


def replay_witness(g: LabeledGraph, w: VmWitness, seed: int = 0) -> tuple[StateVector, LabeledGraph]:
    """Run a vertex-minor witness on ``|g>``.

    Each LC step applies :func:`lc_unitary` for the current graph; deleted
    vertices are then measured in Z. Returns the post-measurement state and
    the graph the witness replays to.
    """
    rng = random.Random(seed)
    s = graph_state(g)
    h = g
    for v in w.lc_sequence:
        s = lc_unitary(h, v, s)
        h = local_complement(h, v)
    for v in w.deleted:
        _, s = pauli_measure(s, v, "Z", rng)
    return s, w.replay(g)
