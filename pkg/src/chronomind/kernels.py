"""Boolean world-set and relation kernels.

Each kernel exists twice: a numba ``@njit`` loop and a vectorised numpy
version. ``CHRONOMIND_BACKEND`` (``numba`` or ``numpy``) picks the pair the
evaluators use; the default is numba when it imports. Both variants are
always importable as ``<name>_numba`` / ``<name>_numpy`` for benchmarking.

Conventions: a world set is a ``bool[n]`` vector, a relation ``bool[n, n]``
with ``rel[w, v]`` meaning ``w -> v``.
"""
from __future__ import annotations

import logging
import os

import numpy as np

logger = logging.getLogger(__name__)

try:
    from numba import njit
    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False


# -- numpy ------------------------------------------------------------------

def box_numpy(rel, sat):
    """out[w] = every rel-successor of w is in sat."""
    return ~(rel & ~sat[None, :]).any(axis=1)


def compose_numpy(a, b):
    # float32 goes through BLAS; path counts stay exact well past any model size here
    return (a.astype(np.float32) @ b.astype(np.float32)) > 0


def nbhd_member_numpy(rel, sat, sets, owner):
    """out[w] = (rel[w] & sat) is one of the sets owned by w.

    ``sets`` is ``bool[k, n]``, ``owner[k]`` the world index each set belongs to.
    """
    out = np.zeros(rel.shape[0], dtype=np.bool_)
    if len(owner) == 0:
        return out
    ext = rel[owner] & sat[None, :]
    hit = (sets == ext).all(axis=1)
    out[owner[hit]] = True
    return out


# -- numba ------------------------------------------------------------------

def _box_loop(rel, sat):
    n = rel.shape[0]
    out = np.ones(n, dtype=np.bool_)
    for w in range(n):
        for v in range(rel.shape[1]):
            if rel[w, v] and not sat[v]:
                out[w] = False
                break
    return out


def _compose_loop(a, b):
    n, m = a.shape[0], b.shape[1]
    out = np.zeros((n, m), dtype=np.bool_)
    for w in range(n):
        for z in range(a.shape[1]):
            if a[w, z]:
                for v in range(m):
                    if b[z, v]:
                        out[w, v] = True
    return out


def _nbhd_member_loop(rel, sat, sets, owner):
    n = rel.shape[0]
    out = np.zeros(n, dtype=np.bool_)
    for k in range(owner.shape[0]):
        w = owner[k]
        if out[w]:
            continue
        same = True
        for v in range(n):
            if sets[k, v] != (rel[w, v] and sat[v]):
                same = False
                break
        if same:
            out[w] = True
    return out


if HAS_NUMBA:
    box_numba = njit(cache=True)(_box_loop)
    compose_numba = njit(cache=True)(_compose_loop)
    nbhd_member_numba = njit(cache=True)(_nbhd_member_loop)
else:  # pragma: no cover
    box_numba, compose_numba, nbhd_member_numba = _box_loop, _compose_loop, _nbhd_member_loop


BACKENDS = ("numba", "numpy")


def _select(name: str) -> str:
    name = name.strip().lower()
    if name not in BACKENDS:
        raise ValueError(f"CHRONOMIND_BACKEND must be one of {BACKENDS}, got {name!r}")
    if name == "numba" and not HAS_NUMBA:
        logger.warning("numba unavailable, falling back to numpy kernels")
        return "numpy"
    return name


BACKEND = _select(os.environ.get("CHRONOMIND_BACKEND", "numba" if HAS_NUMBA else "numpy"))

if BACKEND == "numba":
    box, compose, nbhd_member = box_numba, compose_numba, nbhd_member_numba
else:
    box, compose, nbhd_member = box_numpy, compose_numpy, nbhd_member_numpy
