"""Seeded samplers for the random ensembles.

Every sampler takes an ``RngSpec`` and builds a fresh generator from it, so a
given ``(seed, stream)`` always reproduces the same draw. The bit generator is
numpy's Philox (a counter-based generator), keyed through ``SeedSequence``
with the stream id as spawn key; distinct streams are statistically
independent and can be sampled in any order or process.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RngSpec:
    seed: int
    stream: int = 0

    def __post_init__(self):
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.stream < 0:
            raise ValueError("stream must be nonnegative")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.Philox(ss))

    def substream(self, *keys: int) -> "RngSpec":
        """Derive a child spec; the mapping is injective for keys < 2**16."""
        stream = self.stream
        for k in keys:
            if not 0 <= k < 2**16:
                raise ValueError("substream keys must lie in [0, 2**16)")
            stream = (stream << 16) | k
        return RngSpec(self.seed, stream)


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    # E|z|^2 = 1
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def ginibre(n: int, rng: RngSpec) -> np.ndarray:
    """n x n matrix of i.i.d. standard complex Gaussians."""
    return _complex_gaussian(rng.generator(), (n, n))


def ginibre_system(n: int, g: int, rng: RngSpec):
    """``g`` independent Ginibre matrices as a GeneratingSystem."""
    from .wordspan import GeneratingSystem

    return GeneratingSystem(_complex_gaussian(rng.generator(), (g, n, n)))


def haar_isometry(n: int, g: int, rng: RngSpec) -> np.ndarray:
    """Haar-random isometry C^n -> C^(n g) as an (n g) x n matrix.

    QR of a Ginibre matrix with the diagonal of R made positive, which fixes
    the isometry uniquely given the Gaussian draw.
    """
    G = _complex_gaussian(rng.generator(), (n * g, n))
    Q, R = np.linalg.qr(G)
    d = np.diagonal(R)
    phases = d / np.abs(d)
    return Q * phases[np.newaxis, :]


def haar_isometry_kraus(n: int, g: int, rng: RngSpec):
    if g < 1:
        raise ValueError("g must be positive")
    from .channels import KrausChannel

    V = haar_isometry(n, g, rng)
    return KrausChannel(V.reshape(g, n, n))


def random_su(n: int, rng: RngSpec):
    """Random traceless skew-Hermitian matrix with an absolutely continuous law."""
    if n < 2:
        raise ValueError("su(n) needs n >= 2")
    from .liespan import SuElement

    G = ginibre(n, rng)
    X = (G - G.conj().T) / 2
    X = X - (np.trace(X) / n) * np.eye(n)
    # exact anti-Hermiticity of the diagonal after the trace shift
    X = (X - X.conj().T) / 2
    return SuElement(X)


def random_su_system(n: int, g: int, rng: RngSpec):
    from .liespan import LieGeneratingSystem

    return LieGeneratingSystem([random_su(n, rng.substream(i)) for i in range(g)])


def random_peps_tensor(n: int, g: int, rng: RngSpec):
    """PEPS site tensor with all g n^4 entries i.i.d. standard complex Gaussian."""
    from .tensornets import PepsTensor

    return PepsTensor(_complex_gaussian(rng.generator(), (g, n, n, n, n)))
