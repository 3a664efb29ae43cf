"""Sparse multivariate (optionally Laurent) polynomials over exact rationals.

A polynomial always belongs to an explicit :class:`VarContext`; mixing
contexts is an error rather than an implicit coercion, so symbols from
different identities (t vs t1, t2) can never alias silently.  Contexts may
carry truncation caps (per variable, or on total degree), in which case the
ring is the quotient by the monomials exceeding the caps: arithmetic simply
drops such terms.
"""

from .rationals import Rat, SCALARS, as_rat, rat_str


class VarContext:
    """An ordered set of named indeterminates plus Laurent flags and caps.

    ``laurent`` lists variables allowed to carry negative exponents.  A cap in
    ``var_caps`` bounds the exponent of one variable (its absolute value for
    Laurent variables); ``total_cap`` bounds the sum of absolute exponents.
    """

    __slots__ = ("names", "laurent", "var_caps", "total_cap", "_index")

    def __init__(self, names, laurent=(), var_caps=None, total_cap=None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.laurent = frozenset(laurent)
        unknown = self.laurent - set(self.names)
        if unknown:
            raise ValueError(f"laurent flag for unknown variable(s) {sorted(unknown)}")
        self.var_caps = dict(var_caps or {})
        self.total_cap = total_cap
        self._index = {v: i for i, v in enumerate(self.names)}

    def __eq__(self, other):
        return (
            isinstance(other, VarContext)
            and self.names == other.names
            and self.laurent == other.laurent
            and self.var_caps == other.var_caps
            and self.total_cap == other.total_cap
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        flags = []
        if self.laurent:
            flags.append(f"laurent={sorted(self.laurent)}")
        if self.var_caps:
            flags.append(f"var_caps={self.var_caps}")
        if self.total_cap is not None:
            flags.append(f"total_cap={self.total_cap}")
        inner = ", ".join([repr(list(self.names))] + flags)
        return f"VarContext({inner})"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} in context {list(self.names)}")

    def _admits(self, exps):
        """True if the exponent vector survives this context's caps."""
        total = 0
        for name, e in zip(self.names, exps):
            if e < 0 and name not in self.laurent:
                raise ValueError(f"negative exponent for non-Laurent variable {name!r}")
            a = -e if e < 0 else e
            cap = self.var_caps.get(name)
            if cap is not None and a > cap:
                return False
            total += a
        if self.total_cap is not None and total > self.total_cap:
            return False
        return True

    # -- element constructors -------------------------------------------------

    def zero(self):
        return MultiPoly(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = as_rat(c)
        if c == 0:
            return MultiPoly(self, {})
        return MultiPoly(self, {(0,) * len(self.names): c})

    def var(self, name, power=1, coeff=1):
        """The monomial coeff * name**power."""
        exps = [0] * len(self.names)
        exps[self.index(name)] = power
        return MultiPoly(self, {tuple(exps): as_rat(coeff)}, _validate=True)

    def monomial(self, exps, coeff=1):
        return MultiPoly(self, {tuple(exps): as_rat(coeff)}, _validate=True)


class MultiPoly:
    """Immutable sparse polynomial: mapping from exponent vectors to rationals."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms, _validate=False):
        self.ctx = ctx
        if _validate:
            kept = {}
            for exps, c in terms.items():
                if c == 0:
                    continue
                if len(exps) != len(ctx.names):
                    raise ValueError("exponent vector length does not match context")
                if ctx._admits(exps):
                    kept[exps] = as_rat(c)
            terms = kept
        self.terms = terms

    # -- predicates -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        if not self.terms:
            return True
        zero_key = (0,) * len(self.ctx.names)
        return len(self.terms) == 1 and zero_key in self.terms

    def constant_value(self):
        """The coefficient of the constant monomial."""
        return self.terms.get((0,) * len(self.ctx.names), Rat(0))

    def total_degree(self):
        """Max over terms of the sum of absolute exponents; -1 for zero."""
        if not self.terms:
            return -1
        return max(sum(abs(e) for e in exps) for exps in self.terms)

    # -- ring operations ------------------------------------------------------

    def _check_ctx(self, other):
        if self.ctx != other.ctx:
            raise ValueError("variable-context mismatch")

    def __add__(self, other):
        if isinstance(other, SCALARS):
            other = self.ctx.const(other)
        self._check_ctx(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps)
            if s is None:
                terms[exps] = c
            else:
                s = s + c
                if s == 0:
                    del terms[exps]
                else:
                    terms[exps] = s
        return MultiPoly(self.ctx, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, SCALARS):
            other = self.ctx.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SCALARS):
            c = as_rat(other)
            if c == 0:
                return self.ctx.zero()
            return MultiPoly(self.ctx, {e: v * c for e, v in self.terms.items()})
        self._check_ctx(other)
        ctx = self.ctx
        # sums of admissible exponents only ever violate the caps, never the
        # Laurent sign rule, so the caps are the only thing to re-check
        unrestricted = not ctx.var_caps and ctx.total_cap is None
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if not unrestricted and not ctx._admits(e):
                    continue
                c = c1 * c2
                s = out.get(e)
                if s is None:
                    out[e] = c
                else:
                    s = s + c
                    if s == 0:
                        del out[e]
                    else:
                        out[e] = s
        return MultiPoly(ctx, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("polynomial power must be an integer")
        if k < 0:
            return self._mono_inverse() ** (-k)
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def _mono_inverse(self):
        """Inverse of a single-monomial polynomial (Laurent exponents allowed)."""
        if len(self.terms) != 1:
            raise ValueError("only monomials are invertible in the Laurent ring")
        [(exps, c)] = self.terms.items()
        return MultiPoly(self.ctx, {tuple(-e for e in exps): Rat(1) / c}, _validate=True)

    def __eq__(self, other):
        if isinstance(other, SCALARS):
            other = self.ctx.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __ne__(self, other):
        return not self.__eq__(other)

    # -- substitution and evaluation -------------------------------------------

    def substitute(self, target_ctx, images):
        """Map this polynomial through var -> images[var] (MultiPoly in target_ctx).

        Negative exponents require the image to be a single invertible monomial.
        """
        for name in self.ctx.names:
            if name not in images:
                raise KeyError(f"no image given for variable {name!r}")
            if images[name].ctx != target_ctx:
                raise ValueError(f"image of {name!r} is not in the target context")
        out = target_ctx.zero()
        for exps, c in self.terms.items():
            term = target_ctx.const(c)
            for name, e in zip(self.ctx.names, exps):
                if e:
                    term = term * images[name] ** e
            out = out + term
        return out

    def evaluate(self, values):
        """Evaluate at rational values given per variable name."""
        out = Rat(0)
        vals = [as_rat(values[name]) for name in self.ctx.names]
        for exps, c in self.terms.items():
            v = c
            for x, e in zip(vals, exps):
                if e:
                    v = v * x**e
            out = out + v
        return out

    # -- canonical text ---------------------------------------------------------

    def _sorted_terms(self):
        # graded-lexicographic, largest first: total degree, then exponent vector
        return sorted(
            self.terms.items(),
            key=lambda item: (sum(item[0]), item[0]),
            reverse=True,
        )

    def text(self):
        """Canonical form: graded-lex monomials, explicit signs, ^ for powers."""
        if not self.terms:
            return "0"
        pieces = []
        for exps, c in self._sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ctx.names, exps)
                if e != 0
            )
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
        return f"MultiPoly({self.text()})"


def poly_binomial(p, k):
    """Generalized binomial coefficient C(p, k) = p(p-1)...(p-k+1) / k!.

    ``p`` may be a MultiPoly or a scalar paired with a context-free use; the
    result is an exact polynomial.
    """
    if not isinstance(k, int) or k < 0:
        raise ValueError("binomial index must be a nonnegative integer")
    one = p.ctx.one()
    result = one
    fact = 1
    for i in range(k):
        result = result * (p - i)
        fact *= i + 1
    return result * Rat(1, fact)
