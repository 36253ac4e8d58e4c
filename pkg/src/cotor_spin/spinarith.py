"""Integer invariants attached to Spin(n): s, t, E, D, m, m', epsilon, h', sigma, tau, C.

Also the Hurwitz-Radon number h and executable checks of the elementary
properties these sets satisfy.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

PASS, FAIL, NA = "pass", "fail", "n/a"

TABLE_COLUMNS = ("n", "s", "t", "m", "m'", "eps", "h'", "l", "h")


def alpha(k: int) -> int:
    """Number of ones in the binary expansion of ``k``."""
    if k <= 0:
        raise ValueError(f"alpha is defined for positive integers, got {k}")
    return k.bit_count()


_GE2 = np.zeros(0, dtype=bool)


def _alpha_ge2(upto: int) -> np.ndarray:
    """Boolean table with entry j true iff alpha(j) >= 2, for 0 <= j <= upto (grown on demand)."""
    global _GE2
    if len(_GE2) <= upto:
        size = max(upto + 1, 2 * len(_GE2), 1024)
        _GE2 = np.bitwise_count(np.arange(size, dtype=np.uint64)) >= 2
    return _GE2


def _require_n(n: int) -> None:
    if not isinstance(n, int) or n < 9:
        raise ValueError(f"n must be an integer >= 9, got {n!r}")


def hurwitz_radon(n: int) -> int:
    _require_n(n)
    ell, r = divmod(n - 1, 8)
    r += 1
    if r == 1:
        return 4 * ell
    if r == 2:
        return 4 * ell + 1
    if r in (3, 4):
        return 4 * ell + 2
    return 4 * ell + 3


def _s_of(n: int) -> int:
    return (n - 1).bit_length()


def _t_of(n: int, s: int) -> int:
    top = 1 << s
    if n >= top - 2:
        return 1
    candidates = [t for t in range(1, s + 1) if top - (1 << t) - 1 <= n < top - (1 << (t - 1)) - 1]
    # the half-open ranges for t = 1..s-1 tile [2^(s-1)-1, 2^s-2)
    assert len(candidates) == 1, (n, candidates)
    return candidates[0]


@dataclass(frozen=True)
class SpinParams:
    """All integers and index sets attached to one n.

    ``E_array``, ``D_array`` and ``sigma_array`` hold the sets as int64 arrays;
    ``E``, ``D`` and ``sigma`` are tuple views built on first use.
    """

    n: int
    s: int
    t: int
    m: int | None
    m_prime: int | None
    epsilon: int | None
    h_prime: int
    ell: int
    h: int
    tau: tuple[int, ...]
    E_array: np.ndarray = field(repr=False, compare=False)
    D_array: np.ndarray = field(repr=False, compare=False)
    sigma_array: np.ndarray = field(repr=False, compare=False)

    @cached_property
    def E(self) -> tuple[int, ...]:
        return tuple(self.E_array.tolist())

    @cached_property
    def D(self) -> tuple[int, ...]:
        return tuple(self.D_array.tolist())

    @cached_property
    def sigma(self) -> tuple[int, ...]:
        return tuple(self.sigma_array.tolist())

    @property
    def C0(self) -> frozenset[int]:
        return frozenset(self.sigma_array[: self.s - self.t].tolist())

    @property
    def C1(self) -> frozenset[int]:
        return frozenset(self.tau)

    @property
    def C(self) -> frozenset[int]:
        return self.C0 | self.C1

    @property
    def d_empty(self) -> bool:
        return self.m is None

    @property
    def killed(self) -> tuple[int, ...]:
        """Indices in [2, n] outside E: w_2 and the w_{2^j+1}."""
        return tuple(k for k in range(2, self.n + 1) if (k - 1).bit_count() < 2)

    def row(self) -> dict:
        """Flat record with the columns of the h' table; absent values are ``None``."""
        return {
            "n": self.n,
            "s": self.s,
            "t": self.t,
            "m": self.m,
            "m'": self.m_prime,
            "eps": self.epsilon,
            "h'": self.h_prime,
            "l": self.ell,
            "h": self.h,
        }

    def to_json(self) -> dict:
        d = self.row()
        d.update(E=list(self.E), D=list(self.D), sigma=list(self.sigma), tau=list(self.tau))
        return d


@lru_cache(maxsize=512)
def spin_params(n: int) -> SpinParams:
    _require_n(n)
    s = _s_of(n)
    t = _t_of(n, s)
    top = 1 << s
    ge2 = _alpha_ge2(top)
    # entry j-2 tests alpha(j-1) for j = 2..n
    E = np.flatnonzero(ge2[1:n]) + 2
    # k <= n and 2^s - k + 1 <= n, so k ranges over [2^s - n + 1, n]
    ks = E[E >= top - n + 1]
    D = ks[ge2[top - ks]]
    if len(D):
        m = int(D[-1])
        m_prime = (1 << (s - t)) * (top - m) + 1
        epsilon = 1 if m_prime <= n else 0
        h_prime = 2 * s - t + epsilon
    else:
        m = m_prime = epsilon = None
        h_prime = s

    head = [top - (1 << (s - 1 - k)) - 1 for k in range(s - t)]
    if epsilon:
        head.append(m)
    head_arr = np.array(head, dtype=E.dtype)
    sigma = np.concatenate([head_arr, E[~np.isin(E, head_arr)]])
    tau = tuple((1 << (s - 1)) + (1 << k) + 1 for k in range(s - t))

    return SpinParams(
        n=n,
        s=s,
        t=t,
        m=m,
        m_prime=m_prime,
        epsilon=epsilon,
        h_prime=h_prime,
        ell=(n - 1) // 8,
        h=hurwitz_radon(n),
        tau=tau,
        E_array=E,
        D_array=D,
        sigma_array=sigma,
    )


def check_invariants(p: SpinParams) -> list[str]:
    """Return a description of every violated structural invariant (empty if none)."""
    bad = []
    n, s, t = p.n, p.s, p.t
    top = 1 << s
    E, D, sigma = p.E_array, p.D_array, p.sigma_array
    if not (1 << (s - 1)) < n <= top:
        bad.append("2^(s-1) < n <= 2^s")
    if n < top - 2:
        if not top - (1 << t) - 1 <= n < top - (1 << (t - 1)) - 1:
            bad.append("t range")
    elif t != 1:
        bad.append("t = 1 near 2^s")
    if len(E) != n - s - 1:
        bad.append("|E| = n-s-1")
    if (len(D) == 0) != (n == (1 << (s - 1)) + 1):
        bad.append("D empty iff n = 2^(s-1)+1")
    if len(D):
        if p.m != int(D.max()):
            bad.append("m = max D")
        if p.m_prime != (1 << (s - t)) * (top - p.m) + 1:
            bad.append("m' formula")
        if p.epsilon != (1 if p.m_prime <= n else 0):
            bad.append("epsilon")
        if p.h_prime != 2 * s - t + p.epsilon:
            bad.append("h' = 2s-t+eps")
    elif p.h_prime != s or p.m is not None:
        bad.append("h' = s when D empty")
    if len(sigma) != len(E) or not np.array_equal(np.sort(sigma), E):
        bad.append("sigma is a bijection onto E")
    for k in range(s - t):
        if sigma[k] != top - (1 << (s - 1 - k)) - 1:
            bad.append(f"sigma({k})")
        if p.tau[k] != (1 << (s - 1)) + (1 << k) + 1:
            bad.append(f"tau({k})")
    eps = p.epsilon or 0
    if eps and sigma[s - t] != p.m:
        bad.append("sigma(s-t) = m")
    if not np.all(np.diff(sigma[s - t + eps:]) > 0):
        bad.append("sigma tail ascending")
    return bad


def verify_section2(n: int) -> dict[str, str]:
    """Check the elementary properties of D, m, m', sigma, tau for one n by enumeration.

    Returns an ordered mapping from check name to ``"pass"``, ``"fail"`` or ``"n/a"``.
    """
    p = spin_params(n)
    s, t, top = p.s, p.t, 1 << p.s
    E, D = p.E_array, p.D_array
    report: dict[str, str] = {}

    def put(name, ok):
        report[name] = PASS if ok else FAIL

    put("E has n-s-1 elements", len(E) == n - s - 1)
    put("C0 subset of E", bool(np.isin(p.sigma_array[: s - t], E).all()))
    put("D empty iff n = 2^(s-1)+1", (len(D) == 0) == (n == (1 << (s - 1)) + 1))
    if len(D):
        put("D closed under k -> 2^s-k+1", bool(np.isin(top - D + 1, D).all()))
        put("2^(s-t+1)(k-1)+1 > n", bool(((1 << (s - t + 1)) * (D - 1) + 1 > n).all()))
        if p.epsilon == 0:
            put("2^(s-t)(k-1)+1 > n", bool(((1 << (s - t)) * (D - 1) + 1 > n).all()))
        else:
            report["2^(s-t)(k-1)+1 > n"] = NA
    else:
        report["D closed under k -> 2^s-k+1"] = NA
        report["2^(s-t+1)(k-1)+1 > n"] = NA
        report["2^(s-t)(k-1)+1 > n"] = NA

    main_case = n >= 18 and n != (1 << (s - 1)) + 1
    if main_case:
        vals = p.sigma_array[: s - t].tolist() + list(p.tau)
        put("sigma(k), tau(k) distinct", len(set(vals)) == 2 * (s - t))
    else:
        report["sigma(k), tau(k) distinct"] = NA
    if main_case and p.epsilon == 1:
        C = p.C
        put("m, m' not in C", p.m not in C and p.m_prime not in C)
        put(
            "m = n and 2^(t-1)+1 < 2^s-n <= 2^t+1",
            p.m == n and (1 << (t - 1)) + 1 < top - n <= (1 << t) + 1,
        )
    else:
        report["m, m' not in C"] = NA
        report["m = n and 2^(t-1)+1 < 2^s-n <= 2^t+1"] = NA
    return report


def collapses_by_integers(n: int) -> bool:
    p = spin_params(n)
    return p.h_prime == p.h


def format_table(rows: list[SpinParams]) -> str:
    """Plain-text table, one right-aligned column per field, ``-`` for absent values."""
    cells = [list(TABLE_COLUMNS)]
    for p in rows:
        cells.append(["-" if v is None else str(v) for v in p.row().values()])
    widths = [max(len(r[i]) for r in cells) for i in range(len(TABLE_COLUMNS))]
    lines = [" ".join(c.rjust(wd) for c, wd in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"
