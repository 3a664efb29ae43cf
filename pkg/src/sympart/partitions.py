"""Integer partitions and their cell statistics.

Partitions index everything in this package.  Besides hooks and ordinary
contents, each cell carries a symplectic and an orthogonal content; the two
are exchanged (up to sign) by conjugation.  The doubled-type partitions --
those whose Frobenius coordinates satisfy legs = arms + 1 -- drive all the
signed expansions, and are enumerated here from strict partitions of the
half-size.
"""

from .rationals import Rat
from .poly import MultiPoly

ORDINARY = "ordinary"
SYMPLECTIC = "symplectic"
ORTHOGONAL = "orthogonal"

CONTENT_KINDS = (ORDINARY, SYMPLECTIC, ORTHOGONAL)


class Partition(tuple):
    """A weakly decreasing tuple of positive integers (empty allowed)."""

    def __new__(cls, parts=()):
        parts = tuple(parts)
        for i, p in enumerate(parts):
            if not isinstance(p, int) or p < 1:
                raise ValueError(f"parts must be positive integers, got {p!r}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self):
        return sum(self)

    @property
    def length(self):
        return len(self)

    def part(self, i):
        """The i-th part (1-indexed), zero beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def _conj_parts(self):
        c = getattr(self, "_conj_cache", None)
        if c is None:
            top = self[0] if self else 0
            c = tuple(sum(1 for p in self if p >= i) for i in range(1, top + 1))
            self._conj_cache = c
        return c

    def conjugate(self):
        """Transpose of the Young diagram: column lengths become rows."""
        return Partition(self._conj_parts())

    def cells(self):
        """All cells (i, j), 1-indexed, row by row."""
        for i, p in enumerate(self, start=1):
            for j in range(1, p + 1):
                yield (i, j)

    def contains(self, other):
        """Containment of Young diagrams: other fits inside self."""
        return len(other) <= len(self) and all(
            self[i] >= other[i] for i in range(len(other))
        )

    def _require_cell(self, i, j):
        if not (1 <= i <= len(self) and 1 <= j <= self[i - 1]):
            raise ValueError(f"cell ({i}, {j}) is outside {self.text()}")

    def hook(self, i, j):
        self._require_cell(i, j)
        return self[i - 1] + self._conj_parts()[j - 1] - i - j + 1

    def content(self, i, j):
        self._require_cell(i, j)
        return j - i

    def content_symplectic(self, i, j):
        self._require_cell(i, j)
        if i > j:
            return self.part(i) + self.part(j) - i - j + 2
        # for i <= j both i and j are at most the first part, so the
        # conjugate indexes below are always in range
        conj = self._conj_parts()
        return i + j - conj[i - 1] - conj[j - 1]

    def content_orthogonal(self, i, j):
        self._require_cell(i, j)
        if i >= j:
            return self.part(i) + self.part(j) - i - j
        conj = self._conj_parts()
        return i + j - conj[i - 1] - conj[j - 1] - 2

    def content_of_kind(self, kind, i, j):
        if kind == ORDINARY:
            return self.content(i, j)
        if kind == SYMPLECTIC:
            return self.content_symplectic(i, j)
        if kind == ORTHOGONAL:
            return self.content_orthogonal(i, j)
        raise ValueError(f"unknown content kind {kind!r}")

    def frobenius(self):
        """Diagonal hook coordinates (arms, legs): arms_i = lambda_i - i."""
        conj = self._conj_parts()
        r = sum(1 for i in range(1, len(self) + 1) if self[i - 1] >= i)
        arms = tuple(self[i - 1] - i for i in range(1, r + 1))
        legs = tuple(conj[i - 1] - i for i in range(1, r + 1))
        return arms, legs

    def is_doubled_type(self):
        """True iff legs = arms + 1 along the diagonal (empty counts as yes)."""
        arms, legs = self.frobenius()
        return all(b == a + 1 for a, b in zip(arms, legs))

    # -- text form -----------------------------------------------------------

    def text(self):
        return "[" + ",".join(str(p) for p in self) + "]"

    @classmethod
    def from_text(cls, s):
        s = s.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"malformed partition literal {s!r}")
        body = s[1:-1].strip()
        if not body:
            return cls()
        try:
            parts = [int(x) for x in body.split(",")]
        except ValueError:
            raise ValueError(f"malformed partition literal {s!r}")
        return cls(parts)

    def __repr__(self):
        return f"Partition({self.text()})"


def enumerate_partitions(n):
    """All partitions of n, reverse-lexicographic: (n), (n-1,1), ..., (1,..,1)."""
    if n < 0:
        raise ValueError("cannot partition a negative integer")
    out = []

    def rec(remaining, maxpart, prefix):
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for p in range(min(maxpart, remaining), 0, -1):
            rec(remaining - p, p, prefix + [p])

    rec(n, n if n else 1, [])
    return out


def partitions_up_to(n):
    """All partitions of size <= n, grouped by size, each group reverse-lex."""
    out = []
    for k in range(n + 1):
        out.extend(enumerate_partitions(k))
    return out


def partition_count(n):
    """p(n) by Euler's pentagonal-number recurrence (used as a test oracle)."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > m and g2 > m:
                break
            sign = -1 if k % 2 == 0 else 1
            if g1 <= m:
                total += sign * p[m - g1]
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def from_frobenius(arms, legs):
    """Rebuild a partition from strictly decreasing arm/leg coordinates."""
    if len(arms) != len(legs):
        raise ValueError("arms and legs must have equal length")
    r = len(arms)
    rows = [arms[i] + i + 1 for i in range(r)]
    depth = max((legs[j] + j + 1 for j in range(r)), default=0)
    for i in range(r + 1, depth + 1):
        rows.append(sum(1 for j in range(r) if legs[j] + j + 1 >= i))
    return Partition(rows)


def enumerate_doubled_type(n):
    """Doubled-type partitions of n: Frobenius (m_1..m_r | m_1+1..m_r+1).

    Empty for odd n; for n = 2k they correspond to the strict partitions of k
    via m_i = (part_i) - 1, so the size is 2 * sum(m_i + 1).
    """
    if n < 0:
        raise ValueError("size must be nonnegative")
    if n % 2 == 1:
        return []
    k = n // 2
    out = []

    def strict(remaining, maxpart, prefix):
        if remaining == 0:
            ms = tuple(d - 1 for d in prefix)
            out.append(from_frobenius(ms, tuple(m + 1 for m in ms)))
            return
        for d in range(min(maxpart, remaining), 0, -1):
            strict(remaining - d, d - 1, prefix + [d])

    strict(k, k if k else 1, [])
    return out


def cell_stats(lam):
    """Per-cell statistics: (i, j, hook, content, symplectic, orthogonal)."""
    return [
        (
            i,
            j,
            lam.hook(i, j),
            lam.content(i, j),
            lam.content_symplectic(i, j),
            lam.content_orthogonal(i, j),
        )
        for i, j in lam.cells()
    ]


def weight_product(lam, spec, ctx):
    """The hook/content weight of one partition, as an exact polynomial.

    ``spec`` is a nonempty list of (content kind, variable) pairs; a variable
    may be a name in ``ctx`` or a MultiPoly over ``ctx``.  Returns

        prod_{cells u} prod_{(kind, v)} (v + c_kind(u))  /  prod_u h(u)^len(spec)

    with the integer hook denominator divided into the rational coefficients.
    """
    if not spec:
        raise ValueError("weight spec must be nonempty")
    factors = []
    for kind, v in spec:
        if isinstance(v, str):
            v = ctx.var(v)
        elif v.ctx != ctx:
            raise ValueError("weight variable not in the polynomial context")
        factors.append((kind, v))
    num = ctx.one()
    denom = 1
    for i, j in lam.cells():
        h = lam.hook(i, j)
        for kind, v in factors:
            num = num * (v + lam.content_of_kind(kind, i, j))
        denom *= h ** len(factors)
    return num * Rat(1, denom)
