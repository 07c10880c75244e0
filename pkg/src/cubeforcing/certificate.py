"""
Explicit nonzero assignments of the hypercube support pattern and their checks.

Over GF(3), A_1 = [1] and

    A_{k+1}      = [[2 A_k,    I    ], [I,     A_k^-1]]
    A_{k+1}^-1   = [[A_k^-1,   2 I  ], [2 I,   2 A_k ]]

both follow the support of W_{k+1}. B_n = [[A_{n-1}, I], [I, A_{n-1}^-1]] also
follows the support of W_n, and its bottom block-row is A_{n-1}^-1 times the
top one, so rank(B_n) = 2^(n-2). Over GF(2) the all-ones assignment of W_n has
rank 2^(n-2) for even n and is an involution for odd n.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import gf
from .gf import GFMatrix
from .hypercube import is_assignment, support_matrix

__all__ = [
    "build_A",
    "build_B",
    "build_ones",
    "CheckResult",
    "CertificateReport",
    "verify_certificate",
]


def build_A(n: int) -> tuple[GFMatrix, GFMatrix]:
    """Return ``(A_n, A_n^-1)`` over GF(3), built jointly from the recursion."""
    if n < 1:
        raise ValueError(f"build_A needs n >= 1, got {n}")
    a = gf.identity(1, 3)
    a_inv = a
    for k in range(1, n):
        eye = gf.identity(1 << (k - 1), 3)
        eye2 = gf.scalar_mul(2, eye)
        a, a_inv = (
            gf.block2x2(gf.scalar_mul(2, a), eye, eye, a_inv),
            gf.block2x2(a_inv, eye2, eye2, gf.scalar_mul(2, a)),
        )
    return a, a_inv


def build_B(n: int) -> GFMatrix:
    if n < 2:
        raise ValueError(f"build_B needs n >= 2, got {n}")
    a, a_inv = build_A(n - 1)
    eye = gf.identity(a.rows, 3)
    return gf.block2x2(a, eye, eye, a_inv)


def build_ones(n: int) -> GFMatrix:
    """All-ones assignment of W_n over GF(2)."""
    return support_matrix(n).as_matrix(2)


@dataclass
class CheckResult:
    name: str
    passed: bool
    millis: int

    def line(self, timings: bool = True) -> str:
        status = "pass" if self.passed else "fail"
        return f"check {self.name} {status} {self.millis if timings else 0}"


@dataclass
class CertificateReport:
    n: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_text(self, timings: bool = True) -> str:
        return "".join(c.line(timings) + "\n" for c in self.checks)


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.millis = int(round((time.perf_counter() - self.t0) * 1000))


def verify_certificate(n: int) -> CertificateReport:
    """Run the four certificate checks for Q_n (n >= 2).

    ``inverse``: A_{n-1} A_{n-1}^-1 == I; ``support_A``: both follow W_{n-1};
    ``support_B``: B_n follows W_n; ``rank_B``: rank(B_n) == 2^(n-2).
    Construction time is charged to the first check that needs it.
    """
    if n < 2:
        raise ValueError(f"verify_certificate needs n >= 2, got {n}")
    report = CertificateReport(n)

    with _Timer() as t:
        a, a_inv = build_A(n - 1)
        ok = gf.mat_mul(a, a_inv) == gf.identity(a.rows, 3)
    report.checks.append(CheckResult("inverse", ok, t.millis))

    with _Timer() as t:
        w_prev = support_matrix(n - 1)
        ok = is_assignment(w_prev, a) and is_assignment(w_prev, a_inv)
    report.checks.append(CheckResult("support_A", ok, t.millis))

    with _Timer() as t:
        eye = gf.identity(a.rows, 3)
        b = gf.block2x2(a, eye, eye, a_inv)
        ok = is_assignment(support_matrix(n), b)
    report.checks.append(CheckResult("support_B", ok, t.millis))

    with _Timer() as t:
        ok = gf.rank(b) == 1 << (n - 2)
    report.checks.append(CheckResult("rank_B", ok, t.millis))
    return report
