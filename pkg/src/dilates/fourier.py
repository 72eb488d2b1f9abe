"""Fourier coefficients of indicator functions on Z/pZ.

The transform is ``1_A^(r) = sum_{a in A} exp(2 pi i a r / p)``.  The default
path sums directly: phases are reduced exactly as ``a r mod p`` in integer
arithmetic, then looked up in a cos/sin table, and each frequency is summed
with numpy's pairwise reduction in a fixed element order.  ``method="fft"``
is provided for large p (pipeline runs at p ~ 1e5) and is cross-checked
against the direct path in the tests.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .bounds import w_constant
from .errors import DomainError, EmptyInput
from .residue_core import ResidueSet, dilate, sum_of_dilates

__all__ = [
    "FourierSpectrum",
    "fourier_coefficients",
    "indicator_dft",
    "counting_identity_residual",
    "dilation_parameter",
    "bias_lower_bound",
    "normalize_bias_to_one",
    "eta_at_one",
]

_CHUNK = 1 << 22  # max entries in one (frequencies x elements) phase block
_TIE_RTOL = 1e-9
_AUTO_DIRECT_LIMIT = 4_000_000


def _direct(elements: np.ndarray, p: int) -> np.ndarray:
    k = np.arange(p, dtype=np.int64)
    cos_t = np.cos(2.0 * np.pi * k / p)
    sin_t = np.sin(2.0 * np.pi * k / p)
    out = np.empty(p, dtype=np.complex128)
    n = max(len(elements), 1)
    step = max(1, _CHUNK // n)
    for r0 in range(0, p, step):
        r = k[r0:r0 + step]
        idx = np.outer(r, elements) % p          # exact phase indices
        out.real[r0:r0 + step] = cos_t[idx].sum(axis=1)
        out.imag[r0:r0 + step] = sin_t[idx].sum(axis=1)
    return out


def fourier_coefficients(A: ResidueSet, method: str = "direct") -> np.ndarray:
    """Complex coefficients 1_A^(r) for r = 0..p-1."""
    p = A.modulus
    els = np.asarray(A.elements, dtype=np.int64)
    if method == "auto":
        method = "direct" if p * max(len(els), 1) <= _AUTO_DIRECT_LIMIT else "fft"
    if method == "direct":
        return _direct(els, p)
    if method == "fft":
        ind = np.zeros(p)
        ind[els] = 1.0
        # numpy uses exp(-2 pi i ...); ifft * p gives the + sign convention
        return np.fft.ifft(ind) * p
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class FourierSpectrum:
    modulus: int
    size: int
    magnitudes: np.ndarray = field(repr=False, compare=False)
    bias: float
    bias_argmax: int

    @property
    def eta(self) -> float:
        """|1_A^(1)| / |A|."""
        return float(self.magnitudes[1]) / self.size

    def summary(self) -> dict:
        return {"p": self.modulus, "sizeA": self.size, "bias": self.bias,
                "argmax": self.bias_argmax, "eta": self.eta}


def _pick_bias(mags: np.ndarray, size: int) -> tuple[float, int]:
    rest = mags[1:]
    top = float(rest.max())
    # smallest r wins ties; r and p - r always tie in exact arithmetic
    r_star = int(np.flatnonzero(rest >= top - _TIE_RTOL * max(size, 1))[0]) + 1
    return top, r_star


def indicator_dft(A: ResidueSet, method: str = "direct") -> FourierSpectrum:
    if not A.elements:
        raise EmptyInput("spectrum of the empty set is not defined here")
    mags = np.abs(fourier_coefficients(A, method))
    mags[0] = len(A)
    bias, r_star = _pick_bias(mags, len(A))
    return FourierSpectrum(A.modulus, len(A), mags, bias, r_star)


def counting_identity_residual(A: ResidueSet, t: int, method: str = "direct") -> float:
    """Relative residual of  p|A|^2 = sum_r 1_A^(r) 1_{tA}^(r) conj(1_S^(r))."""
    if not A.elements:
        raise EmptyInput("counting identity needs a non-empty set")
    p = A.modulus
    if t % p == 0:
        raise DomainError("t must be invertible mod p for the identity to count pairs")
    fa = fourier_coefficients(A, method)
    fta = fourier_coefficients(dilate(A, t), method)
    fs = fourier_coefficients(sum_of_dilates(A, t), method)
    total = np.sum(fa * fta * np.conj(fs))
    target = p * len(A) ** 2
    return float(abs(target - total) / target)


def dilation_parameter(size_a: int, sumset_size: int, t: int,
                       w_table: Mapping[int, int] | None = None) -> float:
    """x defined by |S| = x|A| - w(t)."""
    return (sumset_size + w_constant(t, w_table)) / size_a


def bias_lower_bound(A: ResidueSet, t: int, w_table: Mapping[int, int] | None = None) -> float:
    """((1 - x c)/sqrt(x)) |A|.  Negative values are returned as-is (vacuous bound)."""
    if not A.elements:
        raise EmptyInput("bias bound needs a non-empty set")
    k = len(A)
    x = dilation_parameter(k, len(sum_of_dilates(A, t)), t, w_table)
    c = k / A.modulus
    return (1.0 - x * c) / math.sqrt(x) * k


def normalize_bias_to_one(A: ResidueSet, spectrum: FourierSpectrum | None = None,
                          method: str = "direct") -> tuple[ResidueSet, int]:
    """Dilate A by its bias frequency r* so the bias sits at frequency 1."""
    if not A.elements:
        raise EmptyInput("cannot normalize the empty set")
    spec = spectrum if spectrum is not None else indicator_dft(A, method)
    u = spec.bias_argmax
    return dilate(A, u), u


def eta_at_one(A: ResidueSet) -> float:
    """|1_A^(1)| / |A| by a single direct sum (no full spectrum)."""
    if not A.elements:
        raise EmptyInput("eta needs a non-empty set")
    p = A.modulus
    re = math.fsum(math.cos(2 * math.pi * a / p) for a in A.elements)
    im = math.fsum(math.sin(2 * math.pi * a / p) for a in A.elements)
    return min(1.0, math.hypot(re, im) / len(A))
