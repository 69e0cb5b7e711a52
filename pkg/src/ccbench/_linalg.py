"""Shared dense linear-algebra helpers.

Everything here works on plain complex ndarrays; the typed wrappers live in
qprob. Kept private: the public API is the qprob module.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def hermitize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + dagger(m))


def herm_residual(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - dagger(m))))


def frob(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def comm_residual(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius norm of the commutator [a, b]."""
    return frob(a @ b - b @ a)


def trace_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Trace inner product <a, b> = tr(a^dagger b)."""
    return complex(np.sum(a.conj() * b))


def real_trace(m: np.ndarray) -> float:
    return float(np.trace(m).real)


def as_square(m, name: str = "matrix") -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"{name} must be square, got shape {a.shape}")
    return a


def check_same_dim(a: np.ndarray, b: np.ndarray) -> int:
    if a.shape != b.shape:
        raise DimensionMismatchError(
            f"dimension mismatch: {a.shape} vs {b.shape}"
        )
    return a.shape[0]


def eigh_desc(m: np.ndarray):
    """Hermitian eigendecomposition, eigenvalues descending, stable order."""
    w, v = np.linalg.eigh(m)
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def span_project(p_cols: np.ndarray) -> np.ndarray:
    """Hermitian projection onto the column span of an orthonormal block."""
    return hermitize(p_cols @ dagger(p_cols))


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases.conj()


def haar_projection(dim: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    u = haar_unitary(dim, rng)
    return span_project(u[:, :rank])


def random_pure_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unit vector."""
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Hilbert-Schmidt style random density matrix (full rank by default)."""
    r = rank or dim
    g = rng.standard_normal((dim, r)) + 1j * rng.standard_normal((dim, r))
    rho = g @ dagger(g)
    return rho / np.trace(rho).real


def random_faithful_density(
    dim: int, rng: np.random.Generator, floor: float = 1e-3
) -> np.ndarray:
    """Random density with spectrum bounded away from zero by ~floor."""
    rho = random_density(dim, rng)
    rho = (1.0 - floor * dim) * rho + floor * np.eye(dim)
    return rho / np.trace(rho).real


def kron_all(mats) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def embed_factor(x_loc: np.ndarray, dims: tuple[int, ...], acting: tuple[int, ...]) -> np.ndarray:
    """Embed an operator on selected tensor factors as x_loc (x) identity.

    ``dims`` are the factor dimensions in order, ``acting`` the sorted factor
    indices x_loc lives on (x_loc's dimension must be their product).
    """
    n = len(dims)
    acting = tuple(acting)
    d_act = int(np.prod([dims[i] for i in acting]))
    if x_loc.shape != (d_act, d_act):
        raise DimensionMismatchError(
            f"local operator shape {x_loc.shape} does not match factors {acting} of {dims}"
        )
    rest = tuple(i for i in range(n) if i not in acting)
    d_rest = int(np.prod([dims[i] for i in rest])) if rest else 1
    big = np.kron(x_loc, np.eye(d_rest))
    # big currently acts on factors ordered acting + rest; permute back.
    order = list(acting) + list(rest)
    perm = np.argsort(order)
    shaped = big.reshape([dims[i] for i in order] * 2)
    shaped = shaped.transpose(list(perm) + [p + n for p in perm])
    d = int(np.prod(dims))
    return np.ascontiguousarray(shaped.reshape(d, d))


def partial_trace(m: np.ndarray, dims: tuple[int, ...], keep: tuple[int, ...]) -> np.ndarray:
    """Trace out all factors not in ``keep`` (result ordered as keep, sorted)."""
    n = len(dims)
    keep = tuple(sorted(keep))
    shaped = m.reshape(list(dims) * 2)
    remaining = list(range(n))
    for i in range(n - 1, -1, -1):
        if i in keep:
            continue
        pos = remaining.index(i)
        shaped = np.trace(shaped, axis1=pos, axis2=pos + len(remaining))
        remaining.remove(i)
    d_keep = int(np.prod([dims[i] for i in keep])) if keep else 1
    return shaped.reshape(d_keep, d_keep)


def orthonormalize_rows(vecs: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis (rows) of the row span of vecs, via SVD."""
    if vecs.size == 0:
        return vecs.reshape(0, vecs.shape[-1])
    u, s, vh = np.linalg.svd(vecs, full_matrices=False)
    keep = s > tol * max(1.0, s[0] if len(s) else 1.0)
    return vh[keep]


def grow_span(basis_rows: np.ndarray, new_rows: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Extend an orthonormal row basis by the directions of new_rows."""
    if new_rows.size == 0:
        return basis_rows
    if basis_rows.size:
        resid = new_rows - (new_rows @ dagger(basis_rows)) @ basis_rows
    else:
        resid = new_rows
    extra = orthonormalize_rows(resid, tol)
    # one reorthogonalization pass for numerical hygiene
    if basis_rows.size and extra.size:
        extra = extra - (extra @ dagger(basis_rows)) @ basis_rows
        extra = orthonormalize_rows(extra, tol)
    if extra.size == 0:
        return basis_rows
    if basis_rows.size == 0:
        return extra
    return np.vstack([basis_rows, extra])
