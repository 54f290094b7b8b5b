"""Quaternion scalars and matrices stored as numpy arrays.

A quaternion a + bi + cj + dk is the length-4 vector (a, b, c, d); a
quaternion matrix of shape (n, m) is an array of shape (n, m, 4).  The
complex embedding maps each entry to the 2x2 block

    [[a + bi,  c + di],
     [-c + di, a - bi]]

so an (n, m) quaternion matrix becomes a (2n, 2m) complex matrix.  The
embedding is a *-homomorphism: it commutes with products and conjugate
transposition, which lets a single complex eigensolver serve the
quaternionic case.
"""

from __future__ import annotations

import numpy as np

ONE = np.array([1.0, 0.0, 0.0, 0.0])


def qarray(values) -> np.ndarray:
    """Coerce to a float array whose last axis has length 4."""
    arr = np.asarray(values, dtype=float)
    if arr.shape[-1] != 4:
        raise ValueError(f"quaternion components must come in 4-tuples, got shape {arr.shape}")
    return arr


def from_real(values) -> np.ndarray:
    """Promote a real array to quaternions with zero imaginary parts."""
    arr = np.asarray(values, dtype=float)
    out = np.zeros(arr.shape + (4,))
    out[..., 0] = arr
    return out


def qmul(p, q) -> np.ndarray:
    """Hamilton product, broadcasting over leading axes."""
    pw, px, py, pz = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    qw, qx, qy, qz = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    return np.stack(
        [
            pw * qw - px * qx - py * qy - pz * qz,
            pw * qx + px * qw + py * qz - pz * qy,
            pw * qy + py * qw + pz * qx - px * qz,
            pw * qz + pz * qw + px * qy - py * qx,
        ],
        axis=-1,
    )


def qconj(p) -> np.ndarray:
    out = np.array(p, dtype=float)
    out[..., 1:] = -out[..., 1:]
    return out


def qnorm(p) -> np.ndarray:
    """Pointwise quaternion norm |p|."""
    return np.sqrt(np.sum(np.asarray(p, dtype=float) ** 2, axis=-1))


def qmat_mul(a, b) -> np.ndarray:
    """Product of quaternion matrices, shapes (n, m, 4) @ (m, k, 4)."""
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            aw @ bw - ax @ bx - ay @ by - az @ bz,
            aw @ bx + ax @ bw + ay @ bz - az @ by,
            aw @ by + ay @ bw + az @ bx - ax @ bz,
            aw @ bz + az @ bw + ax @ by - ay @ bx,
        ],
        axis=-1,
    )


def qmat_conj_transpose(a) -> np.ndarray:
    return qconj(np.swapaxes(a, 0, 1))


def to_complex(q) -> np.ndarray:
    """Embed an (n, m, 4) quaternion matrix as a (2n, 2m) complex matrix."""
    q = qarray(q)
    alpha = q[..., 0] + 1j * q[..., 1]
    beta = q[..., 2] + 1j * q[..., 3]
    n, m = alpha.shape
    out = np.empty((2 * n, 2 * m), dtype=complex)
    out[0::2, 0::2] = alpha
    out[0::2, 1::2] = beta
    out[1::2, 0::2] = -np.conj(beta)
    out[1::2, 1::2] = np.conj(alpha)
    return out


def from_complex(z) -> np.ndarray:
    """Invert :func:`to_complex`, averaging the two redundant copies.

    Only valid for matrices in (or numerically near) the image of the
    embedding; the averaging suppresses rounding noise.
    """
    z = np.asarray(z, dtype=complex)
    alpha = (z[0::2, 0::2] + np.conj(z[1::2, 1::2])) / 2.0
    beta = (z[0::2, 1::2] - np.conj(z[1::2, 0::2])) / 2.0
    return np.stack([alpha.real, alpha.imag, beta.real, beta.imag], axis=-1)


def embedding_defect(z) -> float:
    """Distance from a complex matrix to the image of the embedding."""
    z = np.asarray(z, dtype=complex)
    return float(np.max(np.abs(z - to_complex(from_complex(z)))))


def structure_partner(u) -> np.ndarray:
    """Orthogonal partner of a complex 2n-vector under the quaternionic structure.

    If u is an eigenvector of an embedded matrix, the partner is another
    eigenvector with the same eigenvalue, always orthogonal to u.
    """
    u = np.asarray(u, dtype=complex)
    out = np.empty_like(u)
    out[0::2] = -np.conj(u[1::2])
    out[1::2] = np.conj(u[0::2])
    return out
