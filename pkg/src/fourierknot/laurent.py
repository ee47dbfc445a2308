"""Exact integer Laurent polynomials and polynomial-matrix determinants.

Everything in this module is integer arithmetic: no floating point touches
the topology.  Determinants of polynomial matrices come in two exact flavors:
fraction-free Bareiss elimination (the reference method) and a modular
evaluate/interpolate engine for large matrices, certified by a coefficient
bound so the reconstruction is provably exact.
"""

from __future__ import annotations

import math

import numpy as np

# ---------------------------------------------------------------------------
# Dense coefficient-list helpers (index = exponent, trailing zeros trimmed).
# Used internally by the determinant engines; LaurentPolynomial wraps a dict.


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return _trim(out)


def _sub(a: list[int], b: list[int]) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, v in enumerate(b):
        out[i] -= v
    return _trim(out)


def _mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    if len(a) > len(b):
        a, b = b, a
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        if ai == 1:
            for j, bj in enumerate(b):
                out[i + j] += bj
        else:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    """Quotient num/den in Z[t]; raises ArithmeticError unless exact."""
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if not num:
        return []
    if len(num) < len(den):
        raise ArithmeticError("inexact polynomial division")
    if len(den) == 1:
        d = den[0]
        out = []
        for v in num:
            q, r = divmod(v, d)
            if r:
                raise ArithmeticError("inexact polynomial division")
            out.append(q)
        return _trim(out)
    rem = list(num)
    lead = den[-1]
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        v = rem[i]
        if v == 0:
            continue
        q, r = divmod(v, lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[i - dd] = q
        for j in range(dd + 1):
            rem[i - dd + j] -= q * den[j]
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return _trim(out)


class LaurentPolynomial:
    """Immutable integer-coefficient polynomial in t and 1/t.

    Stored as a map exponent -> nonzero coefficient.  The canonical
    (normalized) form shifts the lowest exponent to 0 and makes the constant
    term positive; invariants are defined up to that unit.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c: dict[int, int] = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for e, v in items:
                e, v = int(e), int(v)
                if v:
                    nv = c.get(e, 0) + v
                    if nv:
                        c[e] = nv
                    else:
                        c.pop(e, None)
        self._c = c

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPolynomial":
        return cls({exponent: coefficient})

    @classmethod
    def from_list(cls, coeffs: list[int], valuation: int = 0) -> "LaurentPolynomial":
        return cls({valuation + i: v for i, v in enumerate(coeffs)})

    # -- inspection ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def pairs(self) -> tuple[tuple[int, int], ...]:
        """Sorted (exponent, coefficient) pairs."""
        return tuple(sorted(self._c.items()))

    def degree(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(self._c)

    def valuation(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no valuation")
        return min(self._c)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._c)
        for e, v in other._c.items():
            nv = out.get(e, 0) + v
            if nv:
                out[e] = nv
            else:
                out.pop(e, None)
        return LaurentPolynomial(out)

    def __neg__(self):
        return LaurentPolynomial({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                nv = out.get(e, 0) + v1 * v2
                if nv:
                    out[e] = nv
                else:
                    out.pop(e, None)
        return LaurentPolynomial(out)

    __radd__ = __add__
    __rmul__ = __mul__

    @staticmethod
    def _coerce(other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial({0: other})
        raise TypeError(f"cannot combine LaurentPolynomial with {type(other)!r}")

    def shifted(self, k: int) -> "LaurentPolynomial":
        """Multiply by t**k."""
        return LaurentPolynomial({e + k: v for e, v in self._c.items()})

    def reciprocal(self) -> "LaurentPolynomial":
        """Substitute t -> 1/t."""
        return LaurentPolynomial({-e: v for e, v in self._c.items()})

    def normalized(self) -> "LaurentPolynomial":
        """Strip units: lowest exponent 0, constant term positive."""
        if not self._c:
            return LaurentPolynomial()
        v = self.valuation()
        shifted = {e - v: c for e, c in self._c.items()}
        if shifted[0] < 0:
            shifted = {e: -c for e, c in shifted.items()}
        return LaurentPolynomial(shifted)

    def evaluate_int(self, x: int):
        """Exact value at an integer x (needs non-negative exponents)."""
        if self.is_zero:
            return 0
        if self.valuation() < 0:
            raise ValueError("evaluate_int needs non-negative exponents; normalize first")
        total = 0
        for e, v in self._c.items():
            total += v * x**e
        return total

    # -- dunder plumbing -----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __bool__(self) -> bool:
        return bool(self._c)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({dict(sorted(self._c.items()))!r})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            mag = abs(v)
            if e == 0:
                body = str(mag)
            else:
                power = "t" if e == 1 else f"t^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            if not parts:
                parts.append(body if v > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if v > 0 else f"- {body}")
        return " ".join(parts)


def exact_div(num: LaurentPolynomial, den: LaurentPolynomial) -> LaurentPolynomial:
    """Exact quotient of Laurent polynomials; raises ArithmeticError otherwise."""
    if den.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero:
        return LaurentPolynomial()
    nv, dv = num.valuation(), den.valuation()
    nl = [num.coeff(e) for e in range(nv, num.degree() + 1)]
    dl = [den.coeff(e) for e in range(dv, den.degree() + 1)]
    return LaurentPolynomial.from_list(_exact_div(nl, dl), nv - dv)


# ---------------------------------------------------------------------------
# Determinant engines over matrices of coefficient lists.


def _det_bareiss_lists(m: list[list[list[int]]]) -> list[int]:
    """Fraction-free Bareiss elimination; all divisions are exact in Z[t]."""
    n = len(m)
    if n == 0:
        return [1]
    m = [[list(e) for e in row] for row in m]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return []
        piv = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = _exact_div(_sub(_mul(row_i[j], piv), _mul(mik, row_k[j])), prev)
            row_i[k] = []
        prev = piv
    det = m[n - 1][n - 1]
    return [-v for v in det] if sign < 0 else list(det)


def _primes_31bit(count: int) -> list[int]:
    """First ``count`` primes below 2**31, descending."""
    out = []
    n = (1 << 31) - 1
    while len(out) < count:
        cand = n
        is_p = cand > 1 and cand % 2 == 1
        if is_p:
            f = 3
            while f * f <= cand:
                if cand % f == 0:
                    is_p = False
                    break
                f += 2
        if is_p:
            out.append(cand)
        n -= 2
    return out


def _det_mod_p(a: np.ndarray, p: int) -> int:
    """Determinant mod p of an int64 matrix; products stay below 2**62."""
    a = np.array(a % p, dtype=np.int64)
    n = a.shape[0]
    det = 1
    for k in range(n):
        col = a[k:, k]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            return 0
        i = k + int(nz[0])
        if i != k:
            a[[k, i]] = a[[i, k]]
            det = -det
        piv = int(a[k, k])
        det = det * piv % p
        if k + 1 == n:
            break
        inv = pow(piv, p - 2, p)
        factors = (a[k + 1 :, k] * inv) % p
        a[k + 1 :, k:] = (a[k + 1 :, k:] - factors[:, None] * a[k, k:][None, :]) % p
    return det % p


def _dets_mod_p_batch(stack: np.ndarray, xs: list[int], p: int) -> np.ndarray:
    """Determinants mod p of A(x) for every x in xs, eliminated in lockstep.

    stack[d] holds the degree-d coefficient matrix.  All slices share pivot
    positions; the rare zero pivot is repaired per slice by a row swap.
    Products of two residues stay below 2**62, inside int64.
    """
    n = stack.shape[1]
    nb = len(xs)
    xs_arr = np.asarray(xs, dtype=np.int64) % p
    a = np.broadcast_to(stack[0] % p, (nb, n, n)).copy()
    xp = np.ones(nb, dtype=np.int64)
    for d in range(1, stack.shape[0]):
        xp = xp * xs_arr % p
        a = (a + (stack[d] % p)[None, :, :] * xp[:, None, None]) % p
    dets = np.ones(nb, dtype=np.int64)
    for k in range(n):
        piv = a[:, k, k]
        for b in np.nonzero(piv == 0)[0]:
            if dets[b] == 0:
                continue
            sub = a[b, k:, k]
            nz = np.nonzero(sub)[0]
            if nz.size == 0:
                dets[b] = 0
                continue
            i = k + int(nz[0])
            a[b, [k, i]] = a[b, [i, k]]
            dets[b] = -dets[b]
        piv = a[:, k, k]
        dets = dets * piv % p
        if k + 1 == n:
            break
        inv = np.array([pow(int(v), p - 2, p) if v else 0 for v in piv], dtype=np.int64)
        factors = a[:, k + 1 :, k] * inv[:, None] % p
        a[:, k + 1 :, k:] = (a[:, k + 1 :, k:] - factors[:, :, None] * a[:, k, k:][:, None, :]) % p
    return dets % p


def _interpolate_mod_p(xs: list[int], ys: list[int], p: int) -> list[int]:
    """Newton divided differences over GF(p); returns dense coefficients."""
    n = len(xs)
    coef = list(ys)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            dx = (xs[i] - xs[i - level]) % p
            coef[i] = (coef[i] - coef[i - 1]) * pow(dx, p - 2, p) % p
    # expand Newton form to the monomial basis
    poly = [0] * n
    acc = [1] + [0] * (n - 1)  # product of (x - xs[i]) so far
    for i in range(n):
        c = coef[i]
        if c:
            for d in range(i + 1):
                poly[d] = (poly[d] + c * acc[d]) % p
        if i + 1 < n:
            xi = xs[i] % p
            new_acc = [0] * n
            for d in range(i + 1):
                if acc[d]:
                    new_acc[d + 1] = (new_acc[d + 1] + acc[d]) % p
                    new_acc[d] = (new_acc[d] - acc[d] * xi) % p
            acc = new_acc
    return poly


def _det_modular_lists(m: list[list[list[int]]]) -> list[int]:
    """Exact determinant by evaluation/interpolation mod several 31-bit primes.

    The prime count is chosen from a rigorous coefficient bound: on |z| = 1
    every entry is bounded by its coefficient L1 norm, so Hadamard's
    inequality bounds |det| on the unit circle, hence every coefficient.
    """
    n = len(m)
    if n == 0:
        return [1]
    deg_bound = sum(max((len(e) - 1 for e in row if e), default=0) for row in m)
    bits = 1.0
    for row in m:
        s = sum(sum(abs(c) for c in e) ** 2 for e in row)
        bits += 0.5 * math.log2(max(s, 1))
    n_primes = max(1, math.ceil((bits + 1) / 31.0))
    primes = _primes_31bit(n_primes)

    max_deg = max(max((len(e) for row in m for e in row), default=1), 1)
    stack = np.zeros((max_deg, n, n), dtype=np.int64)
    for i, row in enumerate(m):
        for j, e in enumerate(row):
            for d, c in enumerate(e):
                if not (-(1 << 62) < c < (1 << 62)):
                    raise OverflowError("entry coefficient too large for the modular engine")
                stack[d, i, j] = c

    xs = list(range(deg_bound + 1))
    residues: list[list[int]] = []
    for p in primes:
        ys = [int(v) for v in _dets_mod_p_batch(stack, xs, p)]
        residues.append(_interpolate_mod_p([x % p for x in xs], ys, p))

    # CRT per coefficient, lifted to the symmetric range
    modulus = 1
    for p in primes:
        modulus *= p
    out = []
    for d in range(deg_bound + 1):
        r = 0
        for p, res in zip(primes, residues):
            mp = modulus // p
            r = (r + res[d] * mp * pow(mp % p, p - 2, p)) % modulus
        if r > modulus // 2:
            r -= modulus
        out.append(r)
    return _trim(out)


def _is_unit_monomial(e: LaurentPolynomial) -> bool:
    prs = e.pairs()
    return len(prs) == 1 and prs[0][1] in (1, -1)


_FILL_LIMIT = 64


def _sparse_unit_reduce(rows: list[list[LaurentPolynomial]]):
    """Shrink the matrix by Laplace expansion along unit-monomial pivots.

    Row operations with a +-t**k pivot are exact in the Laurent ring, so the
    determinant factors as sign * unit * det(remainder).  Pivots are chosen
    Markowitz-style (least fill); the pass stops when no unit entry remains
    or every candidate would cause heavy fill.  Returns
    (sign, unit, remainder_rows) with remainder_rows possibly empty, or
    (0, zero, []) when a row vanishes (determinant is zero).
    """
    n = len(rows)
    zero = LaurentPolynomial.zero()
    row_entries: dict[int, dict[int, LaurentPolynomial]] = {r: {} for r in range(n)}
    col_rows: dict[int, set[int]] = {c: set() for c in range(n)}
    for r in range(n):
        for c in range(n):
            e = rows[r][c]
            if not e.is_zero:
                row_entries[r][c] = e
                col_rows[c].add(r)
    row_order = list(range(n))
    col_order = list(range(n))
    sign = 1
    unit = LaurentPolynomial.one()
    while row_order:
        best = None
        for r in row_order:
            entries = row_entries[r]
            if not entries:
                return 0, zero, []
            rc = len(entries)
            for c, e in entries.items():
                if _is_unit_monomial(e):
                    cost = (rc - 1) * (len(col_rows[c]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, r, c, e)
            if best is not None and best[0] == 0:
                break
        if best is None or best[0] > _FILL_LIMIT:
            break
        _, rp, cp, u = best
        i = row_order.index(rp)
        j = col_order.index(cp)
        if (i + j) % 2:
            sign = -sign
        unit = unit * u
        exp, coef = u.pairs()[0]
        u_inv = LaurentPolynomial.monomial(-exp, coef)  # coef is +-1, self-inverse
        pivot_row = row_entries.pop(rp)
        for c in pivot_row:
            col_rows[c].discard(rp)
        row_order.remove(rp)
        col_order.remove(cp)
        for r2 in list(col_rows[cp]):
            e2 = row_entries[r2].pop(cp)
            col_rows[cp].discard(r2)
            factor = e2 * u_inv
            for c2, pe in pivot_row.items():
                if c2 == cp:
                    continue
                cur = row_entries[r2].get(c2, zero)
                nv = cur - factor * pe
                if nv.is_zero:
                    if c2 in row_entries[r2]:
                        del row_entries[r2][c2]
                        col_rows[c2].discard(r2)
                else:
                    if c2 not in row_entries[r2]:
                        col_rows[c2].add(r2)
                    row_entries[r2][c2] = nv
    remainder = [[row_entries[r].get(c, zero) for c in col_order] for r in row_order]
    return sign, unit, remainder


BAREISS_MAX_SIZE = 40


def det_poly_matrix(rows: list[list[LaurentPolynomial]], engine: str = "auto") -> LaurentPolynomial:
    """Exact determinant of a Laurent-polynomial matrix.

    engine: "bareiss" (fraction-free elimination), "modular"
    (evaluate/interpolate with CRT), or "auto" (bareiss up to
    BAREISS_MAX_SIZE, modular beyond).  Both are exact; they are
    cross-checked in the test suite.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    if n == 0:
        return LaurentPolynomial.one()
    sign, unit, rows = _sparse_unit_reduce(rows)
    if sign == 0:
        return LaurentPolynomial.zero()
    prefix = unit if sign > 0 else -unit
    n = len(rows)
    if n == 0:
        return prefix
    # clear negative exponents row by row; each t**k shift is a unit
    shift_total = 0
    lists: list[list[list[int]]] = []
    for row in rows:
        vals = [e.valuation() for e in row if not e.is_zero]
        v = min(min(vals), 0) if vals else 0
        shift_total += -v
        lists.append([
            [e.coeff(d) for d in range(v, e.degree() + 1)] if not e.is_zero else []
            for e in row
        ])
    if engine == "auto":
        engine = "bareiss" if n <= BAREISS_MAX_SIZE else "modular"
    if engine == "bareiss":
        det = _det_bareiss_lists(lists)
    elif engine == "modular":
        det = _det_modular_lists(lists)
    else:
        raise ValueError(f"unknown determinant engine {engine!r}")
    return prefix * LaurentPolynomial.from_list(det, -shift_total)
