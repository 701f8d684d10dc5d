"""
Dense spin Hamiltonian of the periodic Cluster-XY chain.

Basis convention: site 0 is the most significant qubit of the basis index, ``|0>`` is the ``σz = +1`` state.
"""

import logging
import time
from dataclasses import dataclass
from functools import reduce

import numpy as np
import scipy.sparse

from core import NUMERICS, CouplingPoint, FloatArray, IntArray, SizeDomainError, validate_chain_length

log = logging.getLogger(__name__)

HERMITICITY_TOL = 1e-13
PARITY_COMMUTATOR_TOL = 1e-12

PAULI = {
    "I": scipy.sparse.identity(2, dtype=np.complex128, format="csr"),
    "X": scipy.sparse.csr_matrix(np.array([[0, 1], [1, 0]], dtype=np.complex128)),
    "Y": scipy.sparse.csr_matrix(np.array([[0, -1j], [1j, 0]], dtype=np.complex128)),
    "Z": scipy.sparse.csr_matrix(np.array([[1, 0], [0, -1]], dtype=np.complex128)),
}


class OracleError(RuntimeError):
    """Exact diagonalisation produced a result violating a structural invariant."""


def check_oracle_size(size: int) -> int:
    """Even chain length in ``[ORACLE_MIN_N, ORACLE_MAX_N]``."""
    size = validate_chain_length(size, upper=NUMERICS.ORACLE_MAX_N)
    if size < NUMERICS.ORACLE_MIN_N:
        msg = f"oracle chain length must be at least {NUMERICS.ORACLE_MIN_N}, given: {size}"
        raise SizeDomainError(msg)
    return size


def pauli_string(size: int, operators: dict[int, str]) -> scipy.sparse.csr_matrix:
    """
    Tensor product with ``operators[site]`` at the given 0-based sites and the identity elsewhere.

    Site 0 is the leftmost factor of the Kronecker product.
    """
    factors = [PAULI[operators.get(site, "I")] for site in range(size)]
    return reduce(lambda left, right: scipy.sparse.kron(left, right, format="csr"), factors)


def parity_diagonal(size: int) -> IntArray:
    """Diagonal of ``Q = Π σz``: ``(-1)^(number of flipped spins)`` per basis index."""
    indices = np.arange(2**size, dtype=np.uint64)
    return 1 - 2 * (np.bitwise_count(indices) % 2).astype(np.int64)


def parity_operator(size: int) -> scipy.sparse.dia_matrix:
    """
    Parity ``Q = Π σz`` as a sparse diagonal ``±1`` matrix, ``Q² = 1``.

    :param size: number of sites (any positive integer).
    """
    return scipy.sparse.diags(parity_diagonal(size).astype(np.float64), format="dia")


def sector_indices(size: int, sector: int) -> IntArray:
    """Basis indices of the ``Q = (-1)^q`` eigenspace, increasing."""
    return np.flatnonzero(parity_diagonal(size) == (-1) ** int(sector))


@dataclass(frozen=True, slots=True, eq=False)
class DenseHamiltonian:
    """
    :param N: even chain length in ``[4, 12]``.
    :param point: couplings.
    :param matrix: ``2^N × 2^N`` complex Hermitian matrix.
    """

    N: int
    point: CouplingPoint
    matrix: np.ndarray

    @property
    def dimension(self) -> int:
        return int(self.matrix.shape[0])

    def hermiticity_residual(self) -> float:
        return float(np.abs(self.matrix - self.matrix.conj().T).max())

    def parity_residual(self) -> float:
        """``‖HQ - QH‖_max``; ``Q`` is diagonal so the commutator scales entry ``(a, b)`` by ``q_b - q_a``."""
        q = parity_diagonal(self.N)
        return float(np.abs(self.matrix * (q[np.newaxis, :] - q[:, np.newaxis])).max())

    def sector_block(self, sector: int) -> tuple[np.ndarray, IntArray]:
        """Restriction to the ``Q = (-1)^q`` eigenspace and the basis indices it acts on."""
        indices = sector_indices(self.N, sector)
        return self.matrix[np.ix_(indices, indices)], indices

    def eigenvalues(self) -> FloatArray:
        return np.linalg.eigvalsh(self.matrix)


def _cluster_xy_sparse(size: int, point: CouplingPoint) -> scipy.sparse.csr_matrix:
    dim = 2**size
    matrix = scipy.sparse.csr_matrix((dim, dim), dtype=np.complex128)
    for site in range(size):
        left, right = (site - 1) % size, (site + 1) % size
        matrix -= pauli_string(size, {left: "X", site: "Z", right: "X"})
        matrix -= point.h * pauli_string(size, {site: "Z"})
        matrix += point.lambda_y * pauli_string(size, {site: "Y", right: "Y"})
        matrix += point.lambda_x * pauli_string(size, {site: "X", right: "X"})
    return matrix


def build_hamiltonian(size: int, point: CouplingPoint) -> DenseHamiltonian:
    """
    ``H = -Σ σx_{i-1} σz_i σx_{i+1} - h Σ σz_i + λy Σ σy_i σy_{i+1} + λx Σ σx_i σx_{i+1}`` with periodic boundaries.

    :param size: even chain length in ``[4, 12]``.
    :raises SizeDomainError: outside that range or for odd lengths.
    :raises OracleError: if the assembled matrix is not Hermitian or does not conserve parity.
    """
    size = check_oracle_size(size)
    start = time.perf_counter()
    hamiltonian = DenseHamiltonian(N=size, point=point, matrix=_cluster_xy_sparse(size, point).toarray())

    msg: list[str] = []
    if (residual := hamiltonian.hermiticity_residual()) > HERMITICITY_TOL:
        msg.append(f"Hamiltonian not Hermitian, residual {residual:.3e}")
    if (residual := hamiltonian.parity_residual()) > PARITY_COMMUTATOR_TOL:
        msg.append(f"Hamiltonian does not commute with parity, residual {residual:.3e}")
    if msg:
        log.error("Invalid oracle Hamiltonian", extra={"N": size, "point": point})
        raise OracleError("\n" + "\n".join(msg))

    log.debug("Hamiltonian built", extra={"N": size, "point": point, "elapsed": time.perf_counter() - start})
    return hamiltonian
