"""Truncated charge-zero bosonic Fock space with vertex operators.

The space is the polynomial ring in generators q_1, q_2, ... (deg q_k = k)
cut off at a fixed total degree D; its monomial basis is indexed by the
partitions of size <= D.  Operators are materialized as sparse matrices on
this truncation.  The inner product makes the Schur vectors orthonormal,
i.e. monomials pair diagonally with weight z_mu.

Truncation caveat: a product of operators computed on the truncation agrees
with the true composition only on rows whose degree leaves enough headroom
for the intermediate raising.  Identity checks therefore take an explicit
working cutoff larger than the compared window whenever a lowering operator
follows a raising one (the slack needed is the auxiliary-variable order that
tags the lowering).  Every test states its cutoffs.
"""

from .rationals import Rat, SCALARS
from .partitions import Partition, partitions_up_to
from .symfunc import z_factor, schur_to_p, PRing


class FockBasis:
    """Monomial basis of the degree-<=D truncation, ordered by (size, revlex)."""

    __slots__ = ("cutoff", "parts", "index", "degrees", "zs")

    def __init__(self, degree_cutoff):
        if degree_cutoff < 0:
            raise ValueError("degree cutoff must be nonnegative")
        self.cutoff = degree_cutoff
        self.parts = [tuple(p) for p in partitions_up_to(degree_cutoff)]
        self.index = {p: i for i, p in enumerate(self.parts)}
        self.degrees = [sum(p) for p in self.parts]
        self.zs = [Rat(z_factor(p)) for p in self.parts]

    def __len__(self):
        return len(self.parts)

    def __eq__(self, other):
        return isinstance(other, FockBasis) and self.cutoff == other.cutoff

    def __ne__(self, other):
        return not self.__eq__(other)


class FockVector:
    """Sparse vector on a FockBasis; ``truncated`` marks dropped components."""

    __slots__ = ("basis", "terms", "truncated")

    def __init__(self, basis, terms=None, truncated=False):
        self.basis = basis
        self.terms = terms if terms is not None else {}
        self.truncated = truncated

    def __add__(self, other):
        out = dict(self.terms)
        for i, c in other.terms.items():
            s = out.get(i)
            if s is None:
                out[i] = c
            else:
                s = s + c
                if s:
                    out[i] = s
                else:
                    del out[i]
        return FockVector(self.basis, out, self.truncated or other.truncated)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, c):
        if isinstance(c, SCALARS) and c == 0:
            return FockVector(self.basis, {}, self.truncated)
        out = {}
        for i, v in self.terms.items():
            w = v * c
            if w:
                out[i] = w
        return FockVector(self.basis, out, self.truncated)

    def restrict_degree(self, dmax):
        return FockVector(
            self.basis,
            {i: c for i, c in self.terms.items() if self.basis.degrees[i] <= dmax},
            self.truncated,
        )

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        if self.basis != other.basis or set(self.terms) != set(other.terms):
            return False
        return all(c == other.terms[i] for i, c in self.terms.items())

    def __ne__(self, other):
        return not self.__eq__(other)

    def text(self):
        if not self.terms:
            return "0"
        bits = []
        for i in sorted(self.terms):
            mu = Partition(self.basis.parts[i])
            bits.append(f"({self.terms[i]})*q{mu.text()}")
        return " + ".join(bits)


def vacuum(basis):
    """|0>, the constant monomial."""
    return FockVector(basis, {basis.index[()]: Rat(1)})


def monomial_vector(basis, mu):
    return FockVector(basis, {basis.index[tuple(mu)]: Rat(1)})


def schur_vector(basis, lam):
    """|lam> = s_lam(q) expanded in the monomial basis."""
    lam = Partition(lam)
    if lam.size > basis.cutoff:
        raise ValueError("partition exceeds the degree cutoff")
    expr = schur_to_p(lam, PRing(lam.size))
    return FockVector(basis, {basis.index[mu]: c for mu, c in expr.terms.items()})


def pair(u, v):
    """The inner product making Schur vectors orthonormal: <q_mu, q_nu> = z_mu d."""
    if u.basis != v.basis:
        raise ValueError("basis mismatch")
    small, large = (u, v) if len(u.terms) <= len(v.terms) else (v, u)
    out = Rat(0)
    for i, c in small.terms.items():
        d = large.terms.get(i)
        if d is not None:
            out = out + c * d * u.basis.zs[i]
    return out


def schur_coefficients(v, sizes=None):
    """Expand a vector in the Schur basis: returns {lam: <lam|v>}."""
    out = {}
    for lam in v.basis.parts:
        if sizes is not None and sum(lam) not in sizes:
            continue
        c = pair(schur_vector(v.basis, lam), v)
        if c:
            out[lam] = c
    return out


class FockOperator:
    """Sparse linear map on the truncation: columns[j][i] = entry (i, j).

    ``lossy`` records that building the operator dropped components above the
    degree cutoff for at least one basis vector, so images near the cutoff are
    only exact modulo the truncation (the module docstring explains the slack
    rule for compositions).
    """

    __slots__ = ("basis", "columns", "lossy")

    def __init__(self, basis, columns, lossy=False):
        self.basis = basis
        self.columns = columns
        self.lossy = lossy

    def apply(self, vec):
        if vec.basis != self.basis:
            raise ValueError("basis mismatch")
        out = {}
        for j, c in vec.terms.items():
            col = self.columns.get(j)
            if not col:
                continue
            for i, a in col.items():
                prod = a * c
                if not prod:
                    continue
                s = out.get(i)
                if s is None:
                    out[i] = prod
                else:
                    s = s + prod
                    if s:
                        out[i] = s
                    else:
                        del out[i]
        return FockVector(self.basis, out, vec.truncated or self.lossy)

    def compose(self, other):
        """self after other (matrix product self @ other)."""
        if self.basis != other.basis:
            raise ValueError("basis mismatch")
        cols = {}
        for j, col in other.columns.items():
            image = self.apply(FockVector(self.basis, dict(col)))
            if image.terms:
                cols[j] = image.terms
        return FockOperator(self.basis, cols, self.lossy or other.lossy)

    def __add__(self, other):
        if self.basis != other.basis:
            raise ValueError("basis mismatch")
        cols = {j: dict(col) for j, col in self.columns.items()}
        for j, col in other.columns.items():
            mine = cols.setdefault(j, {})
            for i, c in col.items():
                s = mine.get(i)
                if s is None:
                    mine[i] = c
                else:
                    s = s + c
                    if s:
                        mine[i] = s
                    else:
                        del mine[i]
        return FockOperator(self.basis, cols, self.lossy or other.lossy)

    def scaled(self, c):
        cols = {}
        for j, col in self.columns.items():
            nc = {}
            for i, a in col.items():
                v = a * c
                if v:
                    nc[i] = v
            if nc:
                cols[j] = nc
        return FockOperator(self.basis, cols, self.lossy)

    def entry(self, row_mu, col_mu):
        col = self.columns.get(self.basis.index[tuple(col_mu)], {})
        return col.get(self.basis.index[tuple(row_mu)], Rat(0))


def identity_operator(basis):
    return FockOperator(basis, {j: {j: Rat(1)} for j in range(len(basis))})


# -- Heisenberg generators ------------------------------------------------------------


def _alpha_image(basis, mu, n):
    """alpha_n applied to the monomial q_mu: (nu, coeff) or None (dropped/zero)."""
    if n > 0:
        # n * d/dq_n
        m = mu.count(n)
        if m == 0:
            return None
        nu = list(mu)
        nu.remove(n)
        return tuple(nu), Rat(m * n)
    # multiplication by q_{-n}
    k = -n
    if sum(mu) + k > basis.cutoff:
        return "dropped"
    nu = tuple(sorted(mu + (k,), reverse=True))
    return nu, Rat(1)


def alpha(basis, n):
    """The Heisenberg generator: n d/dq_n for n > 0, multiplication by q_{-n} for n < 0."""
    if n == 0:
        raise ValueError("alpha_0 is not defined")
    cols = {}
    lossy = False
    for j, mu in enumerate(basis.parts):
        img = _alpha_image(basis, mu, n)
        if img is None:
            continue
        if img == "dropped":
            lossy = True
            continue
        nu, c = img
        cols[j] = {basis.index[nu]: c}
    return FockOperator(basis, cols, lossy)


def exp_nilpotent(gen):
    """exp of a strictly degree-raising or -lowering generator, column by column."""
    basis = gen.basis
    cols = {}
    for j in range(len(basis)):
        acc = {j: Rat(1)}
        v = FockVector(basis, {j: Rat(1)})
        k = 1
        while True:
            v = gen.apply(v).scaled(Rat(1, k))
            if not v.terms:
                break
            for i, c in v.terms.items():
                s = acc.get(i)
                if s is None:
                    acc[i] = c
                else:
                    s = s + c
                    if s:
                        acc[i] = s
                    else:
                        del acc[i]
            k += 1
        cols[j] = acc
    return FockOperator(basis, cols, gen.lossy)


def gamma(basis, sign, values, inverse=False):
    """A vertex-operator half: exp(sum_n (P_n / n) alpha_{sign*n}).

    ``values`` is the list of monomial arguments (one entry gives the classic
    single-variable operator with P_n = z^n; several give the product over
    variables via P_n = sum_j y_j^n).  ``inverse`` negates the generator.
    P_n terms whose coefficient dies under the ring's truncation caps drop out
    on their own.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    if not values:
        raise ValueError("at least one argument variable is required")
    gen_cols = {}
    lossy = False
    powers = {}
    for n in range(1, basis.cutoff + 1):
        pn = values[0] ** n
        for v in values[1:]:
            pn = pn + v**n
        if pn.is_zero():
            continue
        powers[n] = pn * Rat(-1 if inverse else 1, n)
    for j, mu in enumerate(basis.parts):
        col = {}
        for n, coeff in powers.items():
            img = _alpha_image(basis, mu, sign * n)
            if img is None:
                continue
            if img == "dropped":
                lossy = True
                continue
            nu, c = img
            i = basis.index[nu]
            add = coeff * c
            s = col.get(i)
            if s is None:
                col[i] = add
            else:
                s = s + add
                if s:
                    col[i] = s
                else:
                    del col[i]
        if col:
            gen_cols[j] = col
    return exp_nilpotent(FockOperator(basis, gen_cols, lossy))


def _quadratic_generator(basis, which):
    """Generators of the four distinguished exponentials.

    G  = -sum 1/(2n) (a_{-n}^2 - a_{-2n})         (raising)
    G* = -sum 1/(2n) (a_{n}^2  - a_{2n})          (lowering)
    F  =  sum 1/n (a_{-n} + a_{-n}^2/2 - a_{-2n}/2)
    F* =  sum 1/n (a_{n}  + a_{n}^2/2  - a_{2n}/2)
    """
    D = basis.cutoff
    raising = which in ("G", "F")
    s = -1 if raising else +1
    cols = {}
    lossy = False

    def add(col, mu, n, scale):
        nonlocal lossy
        img = _alpha_image(basis, mu, n)
        if img is None:
            return
        if img == "dropped":
            lossy = True
            return
        nu, c = img
        # second application for the squared terms is handled by the caller
        i = basis.index[nu]
        v = c * scale
        t = col.get(i)
        if t is None:
            col[i] = v
        else:
            t = t + v
            if t:
                col[i] = t
            else:
                del col[i]

    def add_squared(col, mu, n, scale):
        nonlocal lossy
        img1 = _alpha_image(basis, mu, n)
        if img1 is None:
            return
        if img1 == "dropped":
            lossy = True
            return
        nu1, c1 = img1
        img2 = _alpha_image(basis, nu1, n)
        if img2 is None:
            return
        if img2 == "dropped":
            lossy = True
            return
        nu2, c2 = img2
        i = basis.index[nu2]
        v = c1 * c2 * scale
        t = col.get(i)
        if t is None:
            col[i] = v
        else:
            t = t + v
            if t:
                col[i] = t
            else:
                del col[i]

    for j, mu in enumerate(basis.parts):
        col = {}
        for n in range(1, D + 1):
            if which in ("G", "G*"):
                if 2 * n <= D or not raising:
                    add_squared(col, mu, s * n, Rat(-1, 2 * n))
                    add(col, mu, s * 2 * n, Rat(1, 2 * n))
            else:
                add(col, mu, s * n, Rat(1, n))
                add_squared(col, mu, s * n, Rat(1, 2 * n))
                add(col, mu, s * 2 * n, Rat(-1, 2 * n))
        if col:
            cols[j] = col
    return FockOperator(basis, cols, lossy)


def exp_quadratic(basis, which):
    """exp(G), exp(G*), exp(F) or exp(F*) on the truncation."""
    if which not in ("G", "G*", "F", "F*"):
        raise ValueError("which must be one of G, G*, F, F*")
    return exp_nilpotent(_quadratic_generator(basis, which))


def grading_operator(basis, qmono, sign=+1):
    """q^(L0) (or q^(-L0) with sign=-1): scales degree-d monomials by q^(sign*d)."""
    cols = {}
    for j, mu in enumerate(basis.parts):
        d = sign * sum(mu)
        cols[j] = {j: qmono**d}
    return FockOperator(basis, cols)


# -- evaluation and identity checking ----------------------------------------------


def apply_chain(ops, ket):
    """Apply a composition written left to right: ops[0] acts last."""
    v = ket
    for op in reversed(ops):
        v = op.apply(v)
    return v


def vev(bra, ops, ket):
    """<bra| ops[0] ops[1] ... |ket> on the truncation."""
    return pair(bra, apply_chain(ops, ket))


class OperatorCheckReport:
    """Outcome of an operator-identity check over a spanning set."""

    __slots__ = ("equal", "mismatch", "columns_checked")

    def __init__(self, equal, mismatch, columns_checked):
        self.equal = equal
        self.mismatch = mismatch
        self.columns_checked = columns_checked

    def __repr__(self):
        if self.equal:
            return f"OperatorCheckReport(equal over {self.columns_checked} columns)"
        mu, nu, lhs, rhs = self.mismatch
        return (
            "OperatorCheckReport(first mismatch at column "
            f"q{Partition(nu).text()}, row q{Partition(mu).text()}: {lhs} != {rhs})"
        )


def check_operator_identity(
    basis, lhs_ops, rhs_ops, scalar=None, input_max=None, compare_max=None
):
    """Compare two operator expressions on the monomial spanning set.

    Both sides act on the full truncation; images are compared on rows of
    degree <= compare_max for input columns of degree <= input_max (defaults:
    the basis cutoff).  ``scalar`` multiplies the right-hand side.  Returns a
    report with the first discrepancy, if any.
    """
    input_max = basis.cutoff if input_max is None else input_max
    compare_max = basis.cutoff if compare_max is None else compare_max
    checked = 0
    for j, mu in enumerate(basis.parts):
        if basis.degrees[j] > input_max:
            continue
        checked += 1
        e = FockVector(basis, {j: Rat(1)})
        left = apply_chain(lhs_ops, e).restrict_degree(compare_max)
        right = apply_chain(rhs_ops, e)
        if scalar is not None:
            right = right.scaled(scalar)
        right = right.restrict_degree(compare_max)
        for i in set(left.terms) | set(right.terms):
            lc = left.terms.get(i, Rat(0))
            rc = right.terms.get(i, Rat(0))
            if lc != rc:
                return OperatorCheckReport(
                    False, (basis.parts[i], mu, str(lc), str(rc)), checked
                )
    return OperatorCheckReport(True, None, checked)
