"""Continuum check of the Fourier invariance of a symmetrised Airy product.

For ``H(x) = p**2 + q`` (mass 1/2, hbar = 1) the pure-state Wigner function is

    W(x) = sqrt(2**(1/3) / pi) * Ai(2**(2/3) * H(x)),

and the product ``F(x2) = W(x1 + x2/2) W(x1 - x2/2)`` equals its own
symplectic Fourier transform

    G(x3) = (1/(2 pi)) * integral d^2x2 exp(i <x2, x3>) F(x2),
    <x2, x3> = p2*q3 - q2*p3.

This module samples ``F`` on a square grid, evaluates ``G`` on the same grid
and reports how far the two are apart.

The Airy function is evaluated without special-function libraries.  For
``|t| < 8`` it uses a local Taylor expansion about the nearest node of a
grid of spacing 1/4; the node values come from the Maclaurin series summed
in 50-digit decimal arithmetic, and the Taylor coefficients follow from the
Airy equation ``y'' = t y``.  For ``|t| >= 8`` it uses the standard
asymptotic expansions.
"""

from __future__ import annotations

import csv
import functools
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext

import numpy as np

__all__ = [
    "AIRY_MIN",
    "AIRY_SWITCH",
    "DEFAULT_EDGE_FLOOR",
    "WindowTooSmall",
    "airy_eval",
    "airy_maclaurin",
    "airy_asymptotic",
    "airy_wigner",
    "PlaneGrid",
    "ContinuousField",
    "symmetrized_product_field",
    "symplectic_ft_2d",
    "AiryInvariance",
    "verify_airy_invariance",
    "emit_field_csv",
    "read_field_csv",
]

# Ai(0) and Ai'(0) to 40 digits: 3**(-2/3)/Gamma(2/3) and -3**(-1/3)/Gamma(1/3)
_AI0 = "0.3550280538878172392600631860041831763980"
_AIP0 = "-0.2588194037928067984051835601892039634791"

AIRY_MIN = -40.0  # oscillatory side; the positive side decays and is unbounded
AIRY_SWITCH = 8.0
_NODE_STEP = 0.25
_TAYLOR_TERMS = 24
_ASYM_TERMS = 30

DEFAULT_EDGE_FLOOR = 1e-3


class WindowTooSmall(ValueError):
    """The sampled field has not decayed at the edge of the window."""


# -- Airy function ---------------------------------------------------------------

def airy_maclaurin(t, digits: int = 50) -> tuple[float, float]:
    """``(Ai(t), Ai'(t))`` from the Maclaurin series in ``digits``-digit arithmetic.

    Slow but accurate for moderate ``|t|``; used for node values and as a
    test oracle.
    """
    with localcontext() as ctx:
        ctx.prec = digits
        x = Decimal(repr(float(t)))
        c1, c2 = Decimal(_AI0), -Decimal(_AIP0)
        x3 = x * x * x
        eps = Decimal(10) ** (-digits + 5)
        # f = sum a_k, g = sum b_k with a_{k+1} = a_k x^3 / ((3k+2)(3k+3)), b_{k+1} = b_k x^3 / ((3k+3)(3k+4))
        a, b = Decimal(1), x
        f, g = a, b
        # derivatives: f' = sum 3k a_k / x, computed directly term by term
        da, db = Decimal(0), Decimal(1)
        fp, gp = da, db
        k = 0
        while True:
            a = a * x3 / ((3 * k + 2) * (3 * k + 3))
            b = b * x3 / ((3 * k + 3) * (3 * k + 4))
            # d/dx of x^(3k+3)/... and x^(3k+4)/...
            da = a * (3 * k + 3) / x if x != 0 else Decimal(0)
            db = b * (3 * k + 4) / x if x != 0 else Decimal(0)
            f, g, fp, gp = f + a, g + b, fp + da, gp + db
            k += 1
            if k > 3 and abs(a) + abs(b) + abs(da) + abs(db) < eps * (1 + abs(f) + abs(g)):
                break
        return float(c1 * f - c2 * g), float(c1 * fp - c2 * gp)


@functools.lru_cache(maxsize=None)
def _taylor_table():
    """Taylor coefficients of Ai about every node in ``(-8, 8)``."""
    nodes = np.arange(-AIRY_SWITCH, AIRY_SWITCH + _NODE_STEP / 2, _NODE_STEP)
    coef = np.zeros((nodes.size, _TAYLOR_TERMS))
    for i, c in enumerate(nodes):
        a0, a1 = airy_maclaurin(c)
        a = [a0, a1, c * a0 / 2]
        for n in range(1, _TAYLOR_TERMS - 2):
            a.append((c * a[n] + a[n - 1]) / ((n + 2) * (n + 1)))
        coef[i] = a[:_TAYLOR_TERMS]
    nodes.setflags(write=False)
    coef.setflags(write=False)
    return nodes, coef


@functools.lru_cache(maxsize=None)
def _asym_coeffs():
    u = [1.0]
    for k in range(1, _ASYM_TERMS):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k))
    return np.array(u)


def airy_asymptotic(t) -> np.ndarray:
    """Asymptotic expansions of Ai for large ``|t|``; accurate to 1e-13 for ``|t| >= 8``.

    With ``zeta = (2/3)|t|**1.5`` the terms ``u_k / zeta**k`` shrink until
    ``k`` is near ``2*zeta``, so 30 terms suffice from ``|t| = 8`` on.
    """
    t = np.asarray(t, dtype=float)
    u = _asym_coeffs()
    z = np.abs(t)
    zeta = 2.0 / 3.0 * z**1.5
    terms = [u[k] * zeta ** (-k) for k in range(u.size)]
    # t > 0: exponentially small branch
    series = sum((-1) ** k * terms[k] for k in range(u.size))
    with np.errstate(under="ignore"):
        pos = np.exp(-zeta) / (2 * np.sqrt(np.pi) * z**0.25) * series
    # t < 0: oscillatory branch
    even = sum((-1) ** k * terms[2 * k] for k in range(u.size // 2))
    odd = sum((-1) ** k * terms[2 * k + 1] for k in range(u.size // 2))
    phase = zeta - np.pi / 4
    neg = (np.cos(phase) * even + np.sin(phase) * odd) / (np.sqrt(np.pi) * z**0.25)
    return np.where(t > 0, pos, neg)


def airy_eval(t):
    """Airy function ``Ai(t)`` for real ``t >= -40``, accurate to about 1e-13.

    Accepts scalars or arrays.  Raises ``ValueError`` below the supported
    range and for non-finite input.
    """
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("Airy argument must be finite")
    if np.any(arr < AIRY_MIN):
        raise ValueError(f"Airy argument below supported range [{AIRY_MIN}, inf)")
    nodes, coef = _taylor_table()
    out = np.empty(arr.shape)
    inner = np.abs(arr) < AIRY_SWITCH
    if np.any(inner):
        x = arr[inner]
        idx = np.rint((x - nodes[0]) / _NODE_STEP).astype(int)
        s = x - nodes[idx]
        c = coef[idx]
        acc = c[:, -1]
        for n in range(_TAYLOR_TERMS - 2, -1, -1):
            acc = acc * s + c[:, n]
        out[inner] = acc
    if np.any(~inner):
        out[~inner] = airy_asymptotic(arr[~inner])
    return float(out) if out.ndim == 0 else out


_W_SCALE = math.sqrt(2 ** (1 / 3) / math.pi)
_T_SCALE = 2 ** (2 / 3)


def airy_wigner(q, p):
    """Wigner function of the linear-potential eigenstate at energy 0.

    Not normalised; the state is not square integrable.
    """
    q, p = np.asarray(q, dtype=float), np.asarray(p, dtype=float)
    return _W_SCALE * airy_eval(_T_SCALE * (p * p + q))


# -- grids and fields ----------------------------------------------------------

@dataclass(frozen=True)
class PlaneGrid:
    """``N x N`` grid of side ``L`` with points ``-L/2 + k*L/N``.

    The grid contains the origin and is symmetric under ``k -> N - k``; the
    point ``-L/2`` is its own partner under periodic closure.
    """

    N: int
    L: float

    def __post_init__(self):
        if isinstance(self.N, bool) or int(self.N) != self.N or self.N < 2 or (self.N & (self.N - 1)):
            raise ValueError(f"N must be a power of two >= 2, got {self.N!r}")
        if not (np.isfinite(self.L) and self.L > 0):
            raise ValueError(f"L must be positive and finite, got {self.L!r}")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "L", float(self.L))

    @property
    def h(self) -> float:
        return self.L / self.N

    @property
    def axis(self) -> np.ndarray:
        return -self.L / 2 + self.h * np.arange(self.N)

    def mesh(self):
        """``(Q, P)`` arrays indexed ``[i, j]`` with ``Q`` along axis 0."""
        x = self.axis
        return np.meshgrid(x, x, indexing="ij")


@dataclass(frozen=True)
class ContinuousField:
    grid: PlaneGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values)
        if v.shape != (self.grid.N, self.grid.N):
            raise ValueError(f"field shape {v.shape} does not match grid N={self.grid.N}")
        if not np.all(np.isfinite(v)):
            raise ValueError("field has non-finite samples")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def edge_ratio(self) -> float:
        """Largest boundary sample relative to the largest sample."""
        v = np.abs(self.values)
        edge = max(v[0].max(), v[-1].max(), v[:, 0].max(), v[:, -1].max())
        peak = v.max()
        return float(edge / peak) if peak > 0 else 0.0

    def check_window(self, floor: float = DEFAULT_EDGE_FLOOR) -> None:
        r = self.edge_ratio()
        if r > floor:
            raise WindowTooSmall(f"edge/peak ratio {r:.3e} exceeds floor {floor:.1e}; enlarge L")


def symmetrized_product_field(x1, grid: PlaneGrid, edge_floor: float = DEFAULT_EDGE_FLOOR,
                              wrong: bool = False) -> ContinuousField:
    """Sample ``F(x2) = W(x1 + x2/2) W(x1 - x2/2)`` on ``grid``.

    ``wrong=True`` samples ``W(x1 + x2/2)**2`` instead, which is not Fourier
    invariant; it exists as a negative control.
    """
    q1, p1 = map(float, x1)
    Q, P = grid.mesh()
    a = airy_wigner(q1 + Q / 2, p1 + P / 2)
    b = a if wrong else airy_wigner(q1 - Q / 2, p1 - P / 2)
    field = ContinuousField(grid, a * b)
    field.check_window(edge_floor)
    return field


def _czt_axis(f, x, sign, axis):
    """``g(y_k) = sum_j w_j f_j exp(i*sign*x_j*y_k)`` along ``axis`` with ``y = x``.

    Evaluated as a chirp-z transform: ``j*k = (j**2 + k**2 - (k - j)**2)/2``
    turns the sum into a convolution done with zero-padded FFTs.  The
    quadrature is the trapezoid rule on the periodically closed window: the
    sample at ``-L/2`` gets half weight and is repeated at ``+L/2`` with the
    other half.
    """
    f = np.moveaxis(np.asarray(f, dtype=complex), axis, -1)
    N = x.size
    h = x[1] - x[0]
    a = sign * h * h
    j = np.arange(N)
    w = np.ones(N)
    w[0] = 0.5
    x0 = x[0]
    # x_j y_k = x0^2 + x0 h (j + k) + h^2 j k
    pre = w * np.exp(1j * sign * x0 * h * j + 1j * a * j * j / 2)
    post = np.exp(1j * sign * (x0 * x0 + x0 * h * j) + 1j * a * j * j / 2)
    m = np.arange(-(N - 1), N)
    chirp = np.exp(-1j * a * m * m / 2)
    M = 1 << int(np.ceil(np.log2(3 * N)))
    kern = np.zeros(M, dtype=complex)
    kern[: 2 * N - 1] = chirp
    conv = np.fft.ifft(np.fft.fft(f * pre, M) * np.fft.fft(kern), M)
    g = conv[..., N - 1 : 2 * N - 1] * post
    # closing sample at +L/2 carries f_0 with the remaining half weight
    g = g + 0.5 * f[..., :1] * np.exp(-1j * sign * x0 * x)
    return np.moveaxis(g, -1, axis)


def symplectic_ft_2d(F: ContinuousField) -> ContinuousField:
    """``G(x3) = (1/(2 pi)) integral d^2x2 exp(i(p2 q3 - q2 p3)) F(x2)`` on the same grid.

    The ``q2`` sum (axis 0) produces ``p3`` and the ``p2`` sum (axis 1)
    produces ``q3``, so the result is transposed back to ``[q3, p3]``.
    """
    x = F.grid.axis
    G = _czt_axis(F.values, x, -1.0, 0)  # exp(-i q2 p3): axis 0 now p3
    G = _czt_axis(G, x, +1.0, 1)  # exp(+i p2 q3): axis 1 now q3
    G = G.T * (F.grid.h**2 / (2 * np.pi))
    return ContinuousField(F.grid, G)


@dataclass(frozen=True)
class AiryInvariance:
    max_abs_err: float
    rel_l2_err: float
    max_imag: float
    edge_ratio: float


def verify_airy_invariance(x1=(-3.0, 0.0), grid: PlaneGrid | None = None,
                           edge_floor: float = DEFAULT_EDGE_FLOOR, wrong: bool = False) -> AiryInvariance:
    """Compare the symmetrised product with its symplectic Fourier transform."""
    grid = grid or PlaneGrid(1024, 24.0)
    F = symmetrized_product_field(x1, grid, edge_floor=edge_floor, wrong=wrong)
    G = symplectic_ft_2d(F).values
    diff = G - F.values
    return AiryInvariance(
        max_abs_err=float(np.max(np.abs(diff))),
        rel_l2_err=float(np.linalg.norm(diff) / np.linalg.norm(F.values)),
        max_imag=float(np.max(np.abs(G.imag)) / np.max(np.abs(F.values))),
        edge_ratio=F.edge_ratio(),
    )


# -- CSV ---------------------------------------------------------------------------

def emit_field_csv(F: ContinuousField, path) -> None:
    """Write ``q,p,value`` rows, row-major over the grid, 17 significant digits."""
    v = F.values
    if np.iscomplexobj(v):
        if np.max(np.abs(v.imag)) > 0:
            raise ValueError("only real fields can be written")
        v = v.real
    x = F.grid.axis
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["q", "p", "value"])
        for i, q in enumerate(x):
            for j, p in enumerate(x):
                w.writerow([f"{q:.17g}", f"{p:.17g}", f"{v[i, j]:.17g}"])


def read_field_csv(path) -> ContinuousField:
    """Parse a file written by ``emit_field_csv`` back into a field."""
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        if header != ["q", "p", "value"]:
            raise ValueError(f"unexpected header {header!r}")
        rows = np.array([[float(c) for c in row] for row in r])
    N = int(round(np.sqrt(len(rows))))
    if N * N != len(rows):
        raise ValueError("row count is not a square")
    q = rows[::N, 0]
    h = q[1] - q[0]
    grid = PlaneGrid(N, h * N)
    if not np.allclose(grid.axis, q, rtol=0, atol=1e-12 * max(1.0, grid.L)):
        raise ValueError("grid in file is not of the form -L/2 + k*L/N")
    return ContinuousField(grid, rows[:, 2].reshape(N, N))
