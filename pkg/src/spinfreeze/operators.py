"""Fixed operator matrices and basis conventions.

Conventions used throughout the package:

* Two-qubit (dim 4): product basis ``|gg>, |ge>, |eg>, |ee>`` with the
  electron factor leftmost and ``|g> = (1, 0)``.
* Nine-level (dim 9): product basis over spin projections
  ``(m_S, m_I) in {+1, 0, -1} x {+1, 0, -1}``, electron factor leftmost,
  index ``3*i_e + i_n`` with ``i = 0, 1, 2`` for ``m = +1, 0, -1``.
* The reduced two-qubit space maps onto the nine-level basis as
  electron ``{|0>, |-1>} -> {|g>, |e>}`` and nuclear
  ``{|+1>, |0>} -> {|g>, |e>}``.
"""

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
# |e><g| with |g> = (1, 0): raising operator for the g -> e transition.
SIGMA_PLUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
ID2 = np.eye(2, dtype=complex)
ID3 = np.eye(3, dtype=complex)
ID4 = np.eye(4, dtype=complex)

_s = 1.0 / np.sqrt(2.0)
SPIN1_X = np.array([[0, _s, 0], [_s, 0, _s], [0, _s, 0]], dtype=complex)
SPIN1_Y = np.array([[0, -1j * _s, 0], [1j * _s, 0, -1j * _s], [0, 1j * _s, 0]], dtype=complex)
SPIN1_Z = np.diag([1.0, 0.0, -1.0]).astype(complex)

BASIS_LABELS_4 = ("gg", "ge", "eg", "ee")
BASIS_LABELS_9 = tuple(
    f"mS{s}_mI{n}" for s in ("+1", "0", "-1") for n in ("+1", "0", "-1")
)

# Nine-level indices of the reduced-subspace states |gg>, |ge>, |eg>, |ee>:
# (m_S, m_I) = (0, +1), (0, 0), (-1, +1), (-1, 0).
REDUCED_SUBSPACE_INDICES = (3, 4, 6, 7)


def basis_ket(label: str, dim: int = 4) -> np.ndarray:
    """Unit column vector for a basis label ('gg', 'ge', 'eg', 'ee')."""
    idx = BASIS_LABELS_4.index(label)
    ket = np.zeros(dim, dtype=complex)
    if dim == 4:
        ket[idx] = 1.0
    elif dim == 9:
        ket[REDUCED_SUBSPACE_INDICES[idx]] = 1.0
    else:
        raise ValueError(f"unsupported dimension {dim}")
    return ket
