"""Truncated formal power series in q with exact coefficients.

A :class:`QSeries` of order N is known modulo q^(N+1); binary operations
require equal coefficient rings and work at the minimum of the two orders.
Coefficients live in any commutative ring exposing ``zero()``/``one()`` on a
ring handle (a :class:`~sympart.poly.VarContext`, or a power-sum ring from
:mod:`sympart.symfunc`) whose elements support +, -, * and scalar
multiplication by rationals.
"""

from .rationals import Rat, SCALARS, as_rat
from .poly import MultiPoly


class QSeries:
    __slots__ = ("ring", "order", "coeffs")

    def __init__(self, ring, order, coeffs=None):
        if order < 0:
            raise ValueError("series order must be nonnegative")
        self.ring = ring
        self.order = order
        if coeffs is None:
            coeffs = [ring.zero() for _ in range(order + 1)]
        else:
            coeffs = list(coeffs)
            if len(coeffs) != order + 1:
                raise ValueError("coefficient list length must be order + 1")
        self.coeffs = coeffs

    # -- constructors ----------------------------------------------------------

    @classmethod
    def one(cls, ring, order):
        s = cls(ring, order)
        s.coeffs[0] = ring.one()
        return s

    @classmethod
    def q_power(cls, ring, order, k, coeff=1):
        """The monomial coeff * q^k (zero series if k exceeds the order)."""
        s = cls(ring, order)
        if k <= order:
            s.coeffs[k] = ring.one() * as_rat(coeff)
        return s

    def copy(self):
        return QSeries(self.ring, self.order, list(self.coeffs))

    # -- helpers ----------------------------------------------------------------

    def _align(self, other):
        if not isinstance(other, QSeries):
            raise TypeError("expected a QSeries")
        if self.ring != other.ring:
            raise ValueError("coefficient-ring mismatch between series")
        return min(self.order, other.order)

    def coefficient(self, n):
        return self.coeffs[n]

    def truncated(self, order):
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.ring, order, self.coeffs[: order + 1])

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other):
        n = self._align(other)
        return QSeries(
            self.ring, n, [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)]
        )

    def __sub__(self, other):
        n = self._align(other)
        return QSeries(
            self.ring, n, [self.coeffs[i] - other.coeffs[i] for i in range(n + 1)]
        )

    def __neg__(self):
        return QSeries(self.ring, self.order, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            # a rational or a coefficient-ring element acts coefficientwise
            c = as_rat(other) if isinstance(other, SCALARS) else other
            return QSeries(self.ring, self.order, [x * c for x in self.coeffs])
        n = self._align(other)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = self.ring.zero()
            for i in range(k + 1):
                if not a[i].is_zero() and not b[k - i].is_zero():
                    acc = acc + a[i] * b[k - i]
            out.append(acc)
        return QSeries(self.ring, n, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        n = self._align(other)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(n + 1))

    def __ne__(self, other):
        return not self.__eq__(other)

    def inverse(self):
        """Multiplicative inverse; the constant term must be invertible."""
        a = self.coeffs
        b0 = _const_inverse(a[0], self.ring)
        out = [b0]
        for n in range(1, self.order + 1):
            acc = self.ring.zero()
            for k in range(1, n + 1):
                if not a[k].is_zero():
                    acc = acc + a[k] * out[n - k]
            out.append(-(b0 * acc))
        return QSeries(self.ring, self.order, out)

    def log(self):
        """Series logarithm; requires constant term 1."""
        if self.coeffs[0] != self.ring.one():
            raise ValueError("series log requires constant term 1")
        a = self.coeffs
        # n*L_n = n*a_n - sum_{k<n} k*L_k*a_{n-k}
        L = [self.ring.zero()]
        for n in range(1, self.order + 1):
            acc = a[n] * n
            for k in range(1, n):
                if not L[k].is_zero() and not a[n - k].is_zero():
                    acc = acc - (L[k] * a[n - k]) * k
            L.append(acc * Rat(1, n))
        return QSeries(self.ring, self.order, L)

    def exp(self):
        """Series exponential; requires constant term 0."""
        if not self.coeffs[0].is_zero():
            raise ValueError("series exp requires constant term 0")
        a = self.coeffs
        E = [self.ring.one()]
        for n in range(1, self.order + 1):
            acc = self.ring.zero()
            for k in range(1, n + 1):
                if not a[k].is_zero() and not E[n - k].is_zero():
                    acc = acc + (a[k] * E[n - k]) * k
            E.append(acc * Rat(1, n))
        return QSeries(self.ring, self.order, E)

    def pow_poly(self, e):
        """Raise to a polynomial exponent: exp(e * log(self)).

        Agrees with repeated multiplication / inversion for constant integer
        exponents; requires constant term 1.
        """
        L = self.log()
        return QSeries(self.ring, self.order, [e * c for c in L.coeffs]).exp()

    def pow_int(self, m):
        """Integer power via repeated multiplication (inversion when m < 0)."""
        if not isinstance(m, int):
            raise TypeError("integer power expected")
        base = self if m >= 0 else self.inverse()
        out = QSeries.one(self.ring, self.order)
        for _ in range(abs(m)):
            out = out * base
        return out

    # -- coefficient transforms ----------------------------------------------------

    def map_coeffs(self, fn, ring=None):
        ring = self.ring if ring is None else ring
        return QSeries(ring, self.order, [fn(c) for c in self.coeffs])

    def substitute_q_negated(self):
        """The series with q replaced by -q."""
        return QSeries(
            self.ring,
            self.order,
            [c if n % 2 == 0 else -c for n, c in enumerate(self.coeffs)],
        )

    # -- canonical text ---------------------------------------------------------------

    def text(self):
        """Canonical form ``c0 + c1*q + ... + cN*q^N`` (zero terms omitted)."""
        pieces = []
        for n, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = c.text()
            if n == 0:
                pieces.append(cs)
                continue
            qpow = "q" if n == 1 else f"q^{n}"
            if cs == "1":
                body = qpow
            elif cs == "-1":
                body = f"-{qpow}"
            elif " " in cs:
                body = f"({cs})*{qpow}"
            else:
                body = f"{cs}*{qpow}"
            pieces.append(body)
        if not pieces:
            return "0"
        out = pieces[0]
        for p in pieces[1:]:
            if p.startswith("-"):
                out += f" - {p[1:]}"
            else:
                out += f" + {p}"
        return out

    __str__ = text

    def __repr__(self):
        return f"QSeries(order={self.order}, {self.text()})"


def _const_inverse(c, ring):
    """Inverse of a series constant term within its coefficient ring."""
    if isinstance(c, MultiPoly):
        if not c.is_constant() or c.constant_value() == 0:
            raise ValueError("constant term is not invertible")
        return ring.one() * (Rat(1) / c.constant_value())
    # power-sum expressions and other duck-typed rings
    inv = getattr(c, "const_inverse", None)
    if inv is None:
        raise ValueError("coefficient type does not support inversion")
    return inv()


class ProductFactor:
    """One factor (1 - q^shift)^exponent of an infinite product."""

    __slots__ = ("shift", "exponent")

    def __init__(self, shift, exponent):
        if not isinstance(shift, int) or shift < 1:
            raise ValueError("factor shift must be a positive integer")
        self.shift = shift
        self.exponent = exponent

    def __repr__(self):
        return f"ProductFactor(1 - q^{self.shift}, exponent={self.exponent})"


def _log_one_minus_qk(ring, order, k):
    """log(1 - q^k) truncated: -sum_{m: km<=order} q^(km)/m."""
    s = QSeries(ring, order)
    one = ring.one()
    m = 1
    while k * m <= order:
        s.coeffs[k * m] = one * Rat(-1, m)
        m += 1
    return s


def product_of_factors(ring, order, factors):
    """Exact truncation of a finite product of (1 - q^k)^e factors.

    Computed as exp(sum e * log(1 - q^k)); exponents may be polynomials,
    rationals or integers.
    """
    total = QSeries(ring, order)
    for f in factors:
        if f.shift > order:
            continue
        lg = _log_one_minus_qk(ring, order, f.shift)
        e = f.exponent
        if isinstance(e, SCALARS):
            total = total + lg * as_rat(e)
        else:
            total = total + QSeries(ring, order, [e * c for c in lg.coeffs])
    return total.exp()


def truncated_infinite_product(ring, order, family):
    """Multiply the factors of an infinite product family, exactly mod q^(order+1).

    ``family(n)`` (n = 1, 2, ...) returns the :class:`ProductFactor` list of the
    n-th term.  The minimum shift must grow strictly with n (all products in
    this package have shifts like 4n-3, 8n-6, ...); a family whose shift fails
    to grow is rejected, since its product would not converge coefficientwise.
    """
    collected = []
    prev_min = 0
    n = 1
    while True:
        batch = family(n)
        if isinstance(batch, ProductFactor):
            batch = [batch]
        batch = list(batch)
        if not batch:
            raise ValueError("factor family returned an empty batch")
        lo = min(f.shift for f in batch)
        if lo <= prev_min:
            raise ValueError("factor family shifts must grow strictly with n")
        prev_min = lo
        if lo > order:
            break
        collected.extend(f for f in batch if f.shift <= order)
        n += 1
    return product_of_factors(ring, order, collected)
