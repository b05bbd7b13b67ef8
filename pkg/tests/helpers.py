"""Independent oracles shared by several test modules."""
import numpy as np

from substab.subform import SubTriple, objective


def fd_gradient(A, t: SubTriple, block: str, h: float = 1e-6) -> np.ndarray:
    """Central finite differences of the objective in one block, entry by entry."""
    base = {"S": t.S, "U": t.U, "B": t.B}
    n = t.S.shape[0]
    G = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            vals = []
            for sign in (1.0, -1.0):
                blocks = {k: v.copy() for k, v in base.items()}
                blocks[block][i, j] += sign * h
                vals.append(objective(A, SubTriple(**blocks, target_radius=t.target_radius)))
            G[i, j] = (vals[0] - vals[1]) / (2 * h)
    return G


def kron_stein(A, Q):
    """Solve A^T P A - P + Q = 0 through the dense n^2 x n^2 linear system."""
    n = A.shape[0]
    K = np.eye(n * n) - np.kron(A.T, A.T)
    p = np.linalg.solve(K, Q.reshape(-1, order="F"))
    return p.reshape((n, n), order="F")


def random_sym_with_spectrum(rng, shape, lo, hi):
    """Batch of symmetric matrices with eigenvalues uniform in [lo, hi]."""
    m, n = shape
    G = rng.standard_normal((m, n, n))
    Q, _ = np.linalg.qr(G)
    w = rng.uniform(lo, hi, size=(m, n))
    return np.einsum("mij,mj,mkj->mik", Q, w, Q)


def random_orthogonal_batch(rng, m, n):
    Q, R = np.linalg.qr(rng.standard_normal((m, n, n)))
    d = np.sign(np.einsum("mii->mi", R))
    return Q * d[:, None, :]


def nearby_feasible_orthogonal(rng, U, m, scale=1e-2):
    """Orthogonal matrices close to U: U expm(K) for small skew K (Cayley form)."""
    n = U.shape[0]
    G = rng.standard_normal((m, n, n)) * scale
    K = G - np.swapaxes(G, 1, 2)
    I = np.eye(n)
    C = np.linalg.solve(I - K, I + K)
    return U @ C
