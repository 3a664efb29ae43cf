"""The truncated power-sum polynomial ring and Schur-type expansions.

Every symmetric function here is a polynomial in the power sums p_1, p_2, ...
truncated at a weight cutoff W: a :class:`PExpr` maps power-sum monomials
(indexed by partitions) to rational coefficients and silently drops weight
above W.  A ring may carry one or two independent power-sum alphabets; the
two-alphabet ring hosts products like f(p) * g(p').

Schur functions come from the Jacobi-Trudi determinant over complete
homogeneous functions, Littlewood-Richardson coefficients from Hall inner
products of Schur products, and symplectic Schur functions from the signed
sum of skew Schur functions over doubled-type partitions.
"""

import os

from .rationals import Rat, SCALARS, as_rat, rat_str
from .partitions import Partition, enumerate_partitions, enumerate_doubled_type

_EMPTY = ()


def z_factor(mu):
    """The centralizer order z_mu = prod_k k^{m_k} m_k! over multiplicities."""
    z = 1
    run_val, run_len = None, 0
    for p in tuple(mu) + (0,):
        if p == run_val:
            run_len += 1
        else:
            if run_val is not None:
                for i in range(1, run_len + 1):
                    z *= run_val * i
            run_val, run_len = p, 1
    return z


class PRing:
    """Handle for the power-sum ring: weight cutoff plus alphabet count."""

    __slots__ = ("cutoff", "alphabets")

    def __init__(self, cutoff, alphabets=1):
        if cutoff < 0:
            raise ValueError("weight cutoff must be nonnegative")
        if alphabets not in (1, 2):
            raise ValueError("only one or two power-sum alphabets are supported")
        self.cutoff = cutoff
        self.alphabets = alphabets

    def __eq__(self, other):
        return (
            isinstance(other, PRing)
            and self.cutoff == other.cutoff
            and self.alphabets == other.alphabets
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return f"PRing(cutoff={self.cutoff}, alphabets={self.alphabets})"

    def _empty_key(self):
        return _EMPTY if self.alphabets == 1 else (_EMPTY, _EMPTY)

    def zero(self):
        return PExpr(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = as_rat(c)
        if c == 0:
            return PExpr(self, {})
        return PExpr(self, {self._empty_key(): c})

    def p(self, k, alphabet=0, coeff=1):
        """The power sum p_k (of the given alphabet) as a PExpr."""
        if not 1 <= k <= self.cutoff:
            raise ValueError(f"p_{k} exceeds the weight cutoff {self.cutoff}")
        if self.alphabets == 1:
            key = (k,)
        else:
            key = ((k,), _EMPTY) if alphabet == 0 else (_EMPTY, (k,))
        return PExpr(self, {key: as_rat(coeff)})

    def monomial(self, mu, coeff=1, nu=None):
        mu = tuple(mu)
        if self.alphabets == 1:
            if nu is not None:
                raise ValueError("second alphabet not available in this ring")
            key = mu
            weights = (sum(mu),)
        else:
            nu = tuple(nu or ())
            key = (mu, nu)
            weights = (sum(mu), sum(nu))
        if any(w > self.cutoff for w in weights):
            return self.zero()
        return PExpr(self, {key: as_rat(coeff)})


def _merge_parts(a, b):
    return tuple(sorted(a + b, reverse=True))


class PExpr:
    """Element of the truncated power-sum ring (immutable)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def constant_value(self):
        return self.terms.get(self.ring._empty_key(), Rat(0))

    def const_inverse(self):
        """Inverse of the constant part, for series bookkeeping."""
        c = self.constant_value()
        if len(self.terms) > (1 if c else 0) or c == 0:
            raise ValueError("PExpr is not an invertible constant")
        return self.ring.const(Rat(1) / c)

    def _check(self, other):
        if self.ring != other.ring:
            raise ValueError("power-sum ring (cutoff/alphabet) mismatch")

    def __add__(self, other):
        if isinstance(other, SCALARS):
            other = self.ring.const(other)
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k)
            if s is None:
                terms[k] = c
            else:
                s = s + c
                if s == 0:
                    del terms[k]
                else:
                    terms[k] = s
        return PExpr(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return PExpr(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, SCALARS):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SCALARS):
            c = as_rat(other)
            if c == 0:
                return self.ring.zero()
            return PExpr(self.ring, {k: v * c for k, v in self.terms.items()})
        self._check(other)
        W = self.ring.cutoff
        two = self.ring.alphabets == 2
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                if two:
                    mu = _merge_parts(k1[0], k2[0])
                    nu = _merge_parts(k1[1], k2[1])
                    if sum(mu) > W or sum(nu) > W:
                        continue
                    key = (mu, nu)
                else:
                    key = _merge_parts(k1, k2)
                    if sum(key) > W:
                        continue
                c = c1 * c2
                s = out.get(key)
                if s is None:
                    out[key] = c
                else:
                    s = s + c
                    if s == 0:
                        del out[key]
                    else:
                        out[key] = s
        return PExpr(self.ring, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, SCALARS):
            other = self.ring.const(other)
        if not isinstance(other, PExpr):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __ne__(self, other):
        return not self.__eq__(other)

    def with_ring(self, ring):
        """Re-tag into another ring with the same alphabet count, re-truncating."""
        if ring.alphabets != self.ring.alphabets:
            raise ValueError("alphabet count mismatch")
        if ring.cutoff >= self.ring.cutoff:
            return PExpr(ring, dict(self.terms))
        W = ring.cutoff
        if ring.alphabets == 1:
            terms = {k: c for k, c in self.terms.items() if sum(k) <= W}
        else:
            terms = {
                k: c for k, c in self.terms.items()
                if sum(k[0]) <= W and sum(k[1]) <= W
            }
        return PExpr(ring, terms)

    def weight(self):
        """Largest total weight among stored monomials (-1 for zero)."""
        if not self.terms:
            return -1
        if self.ring.alphabets == 1:
            return max(sum(k) for k in self.terms)
        return max(sum(k[0]) + sum(k[1]) for k in self.terms)

    # -- text -------------------------------------------------------------------

    @staticmethod
    def _mono_text(mu, symbol):
        pieces = []
        i = 0
        while i < len(mu):
            j = i
            while j < len(mu) and mu[j] == mu[i]:
                j += 1
            e = j - i
            pieces.append(f"{symbol}{mu[i]}" + (f"^{e}" if e > 1 else ""))
            i = j
        return "*".join(pieces)

    def _key_text(self, key):
        if self.ring.alphabets == 1:
            return self._mono_text(key, "p")
        parts = []
        if key[0]:
            parts.append(self._mono_text(key[0], "p"))
        if key[1]:
            parts.append(self._mono_text(key[1], "p'"))
        return "*".join(parts)

    def _sort_key(self, key):
        if self.ring.alphabets == 1:
            return (sum(key), key)
        return (sum(key[0]) + sum(key[1]), key)

    def text(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: self._sort_key(kv[0]), reverse=True)
        pieces = []
        for key, c in items:
            mono = self._key_text(key)
            mag = -c if c < 0 else c
            if not mono:
                body = rat_str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{rat_str(mag)}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    __str__ = text

    def __repr__(self):
        return f"PExpr({self.text()})"


def pexpr_mul(a, b):
    """Ring product with weight truncation (cutoffs must agree)."""
    return a * b


# -- complete homogeneous and Schur functions ------------------------------------

_h_terms = []  # _h_terms[k] = terms dict of h_k (single alphabet, weight k)


def _h_terms_up_to(k):
    # Newton's recurrence k*h_k = sum_{i=1..k} p_i h_{k-i}
    if not _h_terms:
        _h_terms.append({_EMPTY: Rat(1)})
    while len(_h_terms) <= k:
        n = len(_h_terms)
        acc = {}
        for i in range(1, n + 1):
            for key, c in _h_terms[n - i].items():
                nk = _merge_parts(key, (i,))
                s = acc.get(nk)
                acc[nk] = c if s is None else s + c
        _h_terms.append({key: c * Rat(1, n) for key, c in acc.items() if c != 0})
    return _h_terms[k]


def complete_homogeneous(k, ring):
    """h_k in the power-sum basis, from exp(sum p_k z^k / k) = sum h_k z^k."""
    if not isinstance(ring, PRing) or ring.alphabets != 1:
        raise ValueError("complete_homogeneous lives in the one-alphabet ring")
    if k > ring.cutoff:
        raise ValueError(f"h_{k} exceeds the weight cutoff {ring.cutoff}")
    return PExpr(ring, dict(_h_terms_up_to(k)))


_schur_terms = {}  # lam (tuple) -> terms dict


def _schur_terms_for(lam):
    lam = tuple(lam)
    cached = _schur_terms.get(lam)
    if cached is not None:
        return cached
    n = sum(lam)
    ring = PRing(n)
    l = len(lam)
    if l == 0:
        terms = {_EMPTY: Rat(1)}
        _schur_terms[lam] = terms
        return terms
    # Jacobi-Trudi: det(h_{lam_i - i + j}), expanded along rows with a memo
    # over the surviving column subsets.
    entries = []
    for i in range(1, l + 1):
        row = []
        for j in range(1, l + 1):
            idx = lam[i - 1] - i + j
            row.append(None if idx < 0 else idx)
        entries.append(row)
    memo = {0: ring.one()}

    def det(mask, row):
        # mask: bitmask of still-unused columns; row: current row index (0-based)
        got = memo.get(mask)
        if got is not None:
            return got
        acc = ring.zero()
        sign = 1
        for j in range(l):
            bit = 1 << j
            if not mask & bit:
                continue
            idx = entries[row][j]
            if idx is not None:
                sub = det(mask & ~bit, row + 1)
                term = sub * complete_homogeneous(idx, ring)
                acc = acc + (term if sign > 0 else -term)
            sign = -sign
        memo[mask] = acc
        return acc

    full = (1 << l) - 1
    terms = det(full, 0).terms
    _schur_terms[lam] = terms
    return terms


def schur_to_p(lam, ring):
    """The Schur function s_lam as a homogeneous PExpr of weight |lam|."""
    lam = Partition(lam)
    if lam.size > ring.cutoff:
        raise ValueError(f"|{lam.text()}| exceeds the weight cutoff {ring.cutoff}")
    if ring.alphabets != 1:
        raise ValueError("schur_to_p lives in the one-alphabet ring")
    return PExpr(ring, dict(_schur_terms_for(lam)))


def hall_inner(a, b):
    """Hall pairing <p_mu, p_nu> = z_mu delta, extended bilinearly."""
    a._check(b)
    if a.ring.alphabets != 1:
        raise ValueError("hall_inner is defined on the one-alphabet ring")
    small, large = (a.terms, b.terms) if len(a.terms) <= len(b.terms) else (b.terms, a.terms)
    out = Rat(0)
    for key, c in small.items():
        d = large.get(key)
        if d is not None:
            out = out + c * d * z_factor(key)
    return out


# -- Littlewood-Richardson coefficients --------------------------------------------


class LRCache:
    """Memo for LR coefficients, optionally persisted one record per line.

    File format: ``lam;mu;nu;c`` with partitions in bracket form.  The file is
    loaded lazily on first lookup; concurrent writers may duplicate lines, which
    is harmless because every record for a key carries the same value.
    """

    def __init__(self, path=None):
        self.memory = {}
        self.path = path
        self._loaded = path is None

    def _load(self):
        self._loaded = True
        if self.path is None or not os.path.exists(self.path):
            return
        with open(self.path, "r", encoding="ascii") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                ls, ms, ns, cs = line.split(";")
                key = (
                    tuple(Partition.from_text(ls)),
                    tuple(Partition.from_text(ms)),
                    tuple(Partition.from_text(ns)),
                )
                self.memory[key] = int(cs)

    def get(self, key):
        if not self._loaded:
            self._load()
        return self.memory.get(key)

    def put(self, key, value):
        if not self._loaded:
            self._load()
        if key in self.memory:
            return
        self.memory[key] = value
        if self.path is not None:
            lam, mu, nu = key
            line = ";".join(
                [Partition(lam).text(), Partition(mu).text(), Partition(nu).text(), str(value)]
            )
            with open(self.path, "a", encoding="ascii") as fh:
                fh.write(line + "\n")


_default_cache = None


def default_lr_cache():
    """Process-wide cache; honours SYMPART_CACHE_DIR when first created."""
    global _default_cache
    if _default_cache is None:
        cache_dir = os.environ.get("SYMPART_CACHE_DIR")
        if cache_dir:
            os.makedirs(cache_dir, exist_ok=True)
            _default_cache = LRCache(os.path.join(cache_dir, "lr.cache"))
        else:
            _default_cache = LRCache()
    return _default_cache


def set_default_lr_cache(cache):
    global _default_cache
    _default_cache = cache


def lr_coefficient(lam, mu, nu, cache=None):
    """c^lam_{mu,nu} = <s_mu s_nu, s_lam>, computed in the power-sum basis."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if mu.size + nu.size != lam.size:
        return 0
    if not lam.contains(mu) or not lam.contains(nu):
        return 0
    cache = cache or default_lr_cache()
    key = (tuple(lam), tuple(mu), tuple(nu))
    got = cache.get(key)
    if got is not None:
        return got
    ring = PRing(lam.size)
    val = hall_inner(schur_to_p(mu, ring) * schur_to_p(nu, ring), schur_to_p(lam, ring))
    assert val.denominator == 1, "LR coefficient must be an integer"
    c = int(val)
    cache.put(key, c)
    return c


def skew_schur_to_p(lam, mu, ring, cache=None):
    """s_{lam/mu} = sum_nu c^lam_{mu,nu} s_nu; zero when mu is not inside lam."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.size > ring.cutoff:
        raise ValueError("skew shape exceeds the weight cutoff")
    if not lam.contains(mu):
        return ring.zero()
    out = ring.zero()
    for nu in enumerate_partitions(lam.size - mu.size):
        c = lr_coefficient(lam, mu, nu, cache)
        if c:
            out = out + schur_to_p(nu, ring) * c
    return out


# -- symplectic Schur functions ------------------------------------------------------

_sp_terms = {}  # lam (tuple) -> terms dict


def _sp_terms_for(lam, cache=None):
    key = tuple(lam)
    cached = _sp_terms.get(key)
    if cached is not None:
        return cached
    lam = Partition(lam)
    ring = PRing(lam.size)
    acc = ring.zero()
    for b in range(0, lam.size + 1, 2):
        for beta in enumerate_doubled_type(b):
            if not lam.contains(beta):
                continue
            sign = -1 if (b // 2) % 2 else 1
            term = skew_schur_to_p(lam, beta, ring, cache)
            acc = acc + (term if sign > 0 else -term)
    _sp_terms[key] = acc.terms
    return acc.terms


def symplectic_schur_to_p(lam, ring, cache=None):
    """sp_lam via the signed sum of skew Schur functions over doubled-type shapes.

    Inhomogeneous in general; the top-weight part is s_lam itself.
    """
    lam = Partition(lam)
    if lam.size > ring.cutoff:
        raise ValueError(f"|{lam.text()}| exceeds the weight cutoff {ring.cutoff}")
    if ring.alphabets != 1:
        raise ValueError("symplectic_schur_to_p lives in the one-alphabet ring")
    return PExpr(ring, dict(_sp_terms_for(lam, cache)))


# -- specializations --------------------------------------------------------------


def _normalize_per_alphabet(a, values):
    if a.ring.alphabets == 1:
        return (values,)
    if not isinstance(values, tuple) or len(values) != 2:
        raise ValueError("two-alphabet specialization needs a (v, v') pair")
    return values


def specialize_pk_const(a, values, ctx=None):
    """Substitute p_k -> v for every k (per alphabet for two-alphabet rings).

    ``values`` is a scalar or MultiPoly (or a pair of them); the result is a
    rational when everything is scalar, otherwise a MultiPoly over ``ctx``.
    """
    vals = _normalize_per_alphabet(a, values)
    polyish = [not isinstance(v, SCALARS) for v in vals]
    if any(polyish):
        if ctx is None:
            ctx = next(v for v, p in zip(vals, polyish) if p).ctx
        vals = [v if p else ctx.const(v) for v, p in zip(vals, polyish)]
        out = ctx.zero()
    else:
        vals = [as_rat(v) for v in vals]
        out = Rat(0)
    for key, c in a.terms.items():
        comps = (key,) if a.ring.alphabets == 1 else key
        term = c
        for v, mu in zip(vals, comps):
            term = term * v ** len(mu)
        out = out + term
    return out


def specialize_finite_vars(a, values, ctx=None):
    """Substitute p_k -> sum_j (value_j)^k for a finite list of monomial values.

    ``values`` is a list (or a pair of lists, for two alphabets) whose entries
    are scalars or MultiPoly monomials -- e.g. n ones, or Laurent monomials
    s^(2j-2n-1).
    """
    vals = _normalize_per_alphabet(a, values)
    if ctx is None:
        for vlist in vals:
            for v in vlist:
                if not isinstance(v, SCALARS):
                    ctx = v.ctx
                    break
            if ctx is not None:
                break
    W = a.ring.cutoff

    def powersums(vlist):
        ps = {}
        for k in range(1, W + 1):
            acc = ctx.zero() if ctx is not None else Rat(0)
            for v in vlist:
                acc = acc + (as_rat(v) ** k if isinstance(v, SCALARS) else v**k)
            ps[k] = acc
        return ps

    ps = [powersums(vlist) for vlist in vals]
    out = ctx.zero() if ctx is not None else Rat(0)
    for key, c in a.terms.items():
        comps = (key,) if a.ring.alphabets == 1 else key
        term = ctx.const(c) if ctx is not None else c
        for psums, mu in zip(ps, comps):
            for k in mu:
                term = term * psums[k]
        out = out + term
    return out


def tensor(a, b, ring):
    """f(p) * g(p') in the two-alphabet ring, from one-alphabet factors."""
    if ring.alphabets != 2:
        raise ValueError("tensor target must be the two-alphabet ring")
    W = ring.cutoff
    out = {}
    for mu, c in a.terms.items():
        if sum(mu) > W:
            continue
        for nu, d in b.terms.items():
            if sum(nu) > W:
                continue
            out[(mu, nu)] = c * d
    return PExpr(ring, out)
