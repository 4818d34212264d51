"""The quantum torus algebra of a seed: exact noncommutative Laurent arithmetic.

Monomials are kept in normal order X_1^(a_1) ... X_m^(a_m) with a fixed node
order; reordering phases are tracked through the pairwise commutation matrix
Lambda (X_i X_j = q^(L_ij) X_j X_i), stored in sixth-units of q-powers.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .qarith import QLaurent, QRational, coeff_shift
from .seed import SeedQuiver
from . import _kernel


class PathToken:
    """Token of an E/F-path: plain node, starred node, or bracket-triple."""

    __slots__ = ("kind", "node", "node2")

    def __init__(self, kind, node, node2=None):
        self.kind = kind      # 'plain' | 'star' | 'bracket'
        self.node = node
        self.node2 = node2

    @classmethod
    def plain(cls, node):
        return cls("plain", node)

    @classmethod
    def star(cls, node):
        return cls("star", node)

    @classmethod
    def bracket(cls, a, b):
        return cls("bracket", a, b)

    def __repr__(self):
        if self.kind == "plain":
            return f"{self.node}"
        if self.kind == "star":
            return f"*{self.node}"
        return f"[{self.node},{self.node2}]"


class Torus:
    """Algebra context for a seed: node order, multipliers, commutation matrix."""

    def __init__(self, quiver: SeedQuiver):
        self.quiver = quiver
        self.nodes = quiver.sorted_nodes()
        self.index = {v: t for t, v in enumerate(self.nodes)}
        m = len(self.nodes)
        lam6 = np.zeros((m, m), dtype=np.int64)
        for (i, j), w in quiver.w.items():
            # X_i X_j = q_i^(-2 b_ij) X_j X_i = q^(-2 w_ij) X_j X_i
            v6 = int(-12 * w)
            assert Fraction(-12 * w).denominator == 1
            a, b = self.index[i], self.index[j]
            lam6[a, b] = v6
            lam6[b, a] = -v6
        self.lam6 = lam6
        self.low6 = np.tril(lam6, k=-1)  # phase matrix for normal ordering
        self.dim = m

    def d_of(self, node):
        return self.quiver.d[node]

    def same_algebra(self, other: "Torus") -> bool:
        return self.nodes == other.nodes and (self.lam6 == other.lam6).all()

    def lam6_of(self, i, j):
        return int(self.lam6[self.index[i], self.index[j]])

    # -- element constructors ---------------------------------------------

    def zero(self):
        return TorusElement(self, {})

    def one(self):
        return TorusElement(self, {(0,) * self.dim: QLaurent.one()})

    def monomial(self, exps, coeff=None):
        coeff = QLaurent.one() if coeff is None else coeff
        exps = tuple(int(x) for x in exps)
        if len(exps) != self.dim:
            raise ValueError("exponent vector has wrong length")
        if coeff.is_zero():
            return self.zero()
        return TorusElement(self, {exps: coeff})

    def generator(self, node, power=1):
        exps = [0] * self.dim
        exps[self.index[node]] = power
        return self.monomial(tuple(exps))

    def exps_of(self, factors):
        """Exponent vector from (node, multiplicity) pairs."""
        exps = [0] * self.dim
        for node, mult in factors:
            exps[self.index[node]] += mult
        return tuple(exps)

    def normal_phase6(self, a, b) -> int:
        """Phase of X^a * X^b -> X^(a+b) in sixth-units: sum_{i>j} L6_ij a_i b_j."""
        av = np.asarray(a, dtype=np.int64)
        bv = np.asarray(b, dtype=np.int64)
        return int(av @ self.low6 @ bv)

    def weyl_phase6(self, exps) -> int:
        """C in sixth-units with Weyl(v) = q^C X^v pinned by the reversal symmetry
        q^C X_1^(v_1)...X_m^(v_m) = q^(-C) X_m^(v_m)...X_1^(v_1)."""
        v = np.asarray(exps, dtype=np.int64)
        phi = int(v @ self.low6 @ v)
        if phi % 2 != 0:
            raise ValueError("Weyl constant leaves the (1/6)Z lattice")
        return phi // 2

    def weyl(self, factors):
        """Weyl-ordered monomial q^C X_(i1)^(m1)...X_(in)^(mn) from (node, mult) pairs."""
        exps = self.exps_of(factors)
        return self.monomial(exps, QLaurent.s_power(self.weyl_phase6(exps)))

    def weyl_of_exps(self, exps, coeff=None):
        base = QLaurent.s_power(self.weyl_phase6(exps))
        if coeff is not None:
            base = base * coeff
        return self.monomial(tuple(exps), base)

    def path_sum(self, tokens):
        """X(t1,...,tn): sum of Weyl partial products, with star/bracket expansions."""
        terms = []
        prefix = [0] * self.dim
        dsmall = min(self.quiver.d.values())
        two_qs = QLaurent.q_power(dsmall) + QLaurent.q_power(-dsmall)
        for tok in tokens:
            if isinstance(tok, PathToken):
                kind, node, node2 = tok.kind, tok.node, tok.node2
            else:
                kind, node, node2 = "plain", tok, None
            if kind == "plain":
                prefix[self.index[node]] += 1
                terms.append(self.weyl_of_exps(tuple(prefix)))
            elif kind == "star":
                j = self.index[node]
                mid = list(prefix)
                mid[j] += 1
                terms.append(self.weyl_of_exps(tuple(mid), two_qs))
                prefix[j] += 2
                terms.append(self.weyl_of_exps(tuple(prefix)))
            elif kind == "bracket":
                ja, jb = self.index[node], self.index[node2]
                wa = list(prefix)
                wa[ja] += 1
                terms.append(self.weyl_of_exps(tuple(wa)))
                wb = list(prefix)
                wb[jb] += 1
                terms.append(self.weyl_of_exps(tuple(wb)))
                prefix[ja] += 1
                prefix[jb] += 1
                terms.append(self.weyl_of_exps(tuple(prefix)))
            else:
                raise ValueError(kind)
        out = self.zero()
        for t in terms:
            out = out + t
        return out


class TorusElement:
    """Finite sum of normal-ordered monomials; coefficients QLaurent or QRational."""

    __slots__ = ("torus", "terms")

    def __init__(self, torus: Torus, terms: dict):
        self.torus = torus
        self.terms = terms

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def items(self):
        return self.terms.items()

    def coeff_of(self, exps):
        return self.terms.get(tuple(exps))

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        if self.torus is not other.torus and not self.torus.same_algebra(other.torus):
            raise ValueError("elements over different tori")
        return TorusElement(self.torus, _kernel.add_terms(self.terms, other.terms))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TorusElement(self.torus, {e: -c for e, c in self.terms.items()})

    def scale(self, coeff):
        if isinstance(coeff, (int, Fraction)):
            coeff = QLaurent.from_rational(coeff)
        if coeff.is_zero():
            return self.torus.zero()
        return TorusElement(self.torus, {e: c * coeff for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QLaurent, QRational)):
            return self.scale(other)
        if not isinstance(other, TorusElement):
            return NotImplemented
        if self.torus is not other.torus and not self.torus.same_algebra(other.torus):
            raise ValueError("elements over different tori")
        if not self.terms or not other.terms:
            return self.torus.zero()
        return TorusElement(
            self.torus,
            _kernel.mul_terms(self.terms, other.terms, self.torus.low6),
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QLaurent, QRational)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            if len(self.terms) == 1:
                return self.inverse() ** (-n)
            raise ValueError("negative power of a non-monomial")
        out = self.torus.one()
        base = self
        for _ in range(n):
            out = out * base
        return out

    def inverse(self):
        """Inverse of a single monomial."""
        if len(self.terms) != 1:
            raise ValueError("only monomials are invertible")
        (exps, coeff), = self.terms.items()
        minus = tuple(-x for x in exps)
        phase = self.torus.normal_phase6(exps, minus)
        if isinstance(coeff, QLaurent):
            inv = coeff.inverse()
        else:
            inv = coeff.inverse()
        return TorusElement(self.torus, {minus: coeff_shift(inv, -phase)})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, TorusElement):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(other.terms[e] == c for e, c in self.terms.items())

    def __hash__(self):
        return hash(frozenset((e, None) for e in self.terms))

    def commutes_with(self, other) -> bool:
        return (self * other - other * self).is_zero()

    def q_commutation6(self, other):
        """c6 with self*other = q^(c6/6)*other*self, for monomials self, other."""
        (ea, _), = self.terms.items()
        (eb, _), = other.terms.items()
        av = np.asarray(ea, dtype=np.int64)
        bv = np.asarray(eb, dtype=np.int64)
        return int(av @ self.torus.lam6 @ bv)

    def render(self):
        if not self.terms:
            return "0"
        parts = []
        order = sorted(self.terms, key=lambda e: tuple(-x for x in e))
        names = self.torus.nodes
        for exps in order:
            c = self.terms[exps]
            mono = "·".join(
                f"X[{names[t]}]" + (f"^{x}" if x != 1 else "")
                for t, x in enumerate(exps) if x
            )
            cs = c.render() if not isinstance(c, QLaurent) or len(c.coeffs) <= 1 else f"({c.render()})"
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"{cs}·{mono}")
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"TorusElement({self.render()})"


# -- division by binomials (1 + a X_k) ------------------------------------------


class NotDivisible(ArithmeticError):
    """Signals a violated Laurent-ness assumption in binomial division."""


def divide_binomial(p: TorusElement, k, a: QLaurent, side: str) -> TorusElement:
    """Q with Q*(1+a*X_k) = p (side='right') or (1+a*X_k)*Q = p (side='left').

    Found by peeling the minimal X_k-degree upward; exact, else NotDivisible.
    """
    torus = p.torus
    kk = torus.index[k]
    xk = torus.generator(k)
    axk = xk.scale(a)
    if side not in ("left", "right"):
        raise ValueError(side)

    by_deg = {}
    for exps, coeff in p.terms.items():
        by_deg.setdefault(exps[kk], {})[exps] = coeff
    if not by_deg:
        return torus.zero()

    quot_terms = {}
    dmin = min(by_deg)
    dmax = max(by_deg)
    carry = {}
    for deg in range(dmin, dmax + 1):
        level = dict(by_deg.get(deg, {}))
        for e, c in carry.items():
            if e[kk] == deg:
                prev = level.get(e)
                level[e] = (prev + c) if prev is not None else c
                if level[e] == 0 or (hasattr(level[e], "is_zero") and level[e].is_zero()):
                    del level[e]
        if not level:
            carry = {e: c for e, c in carry.items() if e[kk] > deg}
            continue
        q_level = TorusElement(torus, level)
        for e, c in list(q_level.terms.items()):
            quot_terms[e] = c
        prod = (q_level * axk) if side == "right" else (axk * q_level)
        carry_new = {}
        for e, c in carry.items():
            if e[kk] > deg:
                carry_new[e] = c
        for e, c in prod.terms.items():
            prev = carry_new.get(e)
            nc = (prev + (-c)) if prev is not None else -c
            dead = nc == 0 or (hasattr(nc, "is_zero") and nc.is_zero())
            if dead:
                carry_new.pop(e, None)
            else:
                carry_new[e] = nc
        carry = carry_new
    if any(not (hasattr(c, "is_zero") and c.is_zero()) for c in carry.values()):
        raise NotDivisible("binomial division left a remainder")
    return TorusElement(torus, quot_terms)


# -- weight grading ---------------------------------------------------------------


def _invert_rational_matrix(m):
    n = len(m)
    aug = [[Fraction(m[r][c]) for c in range(n)] + [Fraction(1) if t == r else Fraction(0) for t in range(n)]
           for r, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [[aug[r][n + c] for c in range(n)] for r in range(n)]


class WeightGrading:
    """Root-lattice grading from the K-monomials of an embedding.

    c_j(m) defined by iota(K_j) m = q^(c_j) m iota(K_j); beta solves
    c_j = -sum_i d_j a_ji beta_i via the symmetrized Cartan matrix.
    """

    def __init__(self, torus: Torus, cartan, k_monomials: dict):
        self.torus = torus
        self.cartan = cartan
        self.order = list(cartan.nodes)
        k_rows = []
        for i in self.order:
            mono = k_monomials[i]
            (exps, _), = mono.terms.items()
            k_rows.append(exps)
        self.kmat = np.asarray(k_rows, dtype=np.int64)
        da = [[cartan.d[i] * cartan.a[i][j] for j in cartan.nodes] for i in cartan.nodes]
        self.da_inv = _invert_rational_matrix(da)

    def c_vector6(self, exps):
        v = np.asarray(exps, dtype=np.int64)
        return self.kmat @ self.torus.lam6 @ v

    def beta_of_exps(self, exps):
        """Root coordinates as a tuple of Fractions; None entries never occur."""
        c6 = self.c_vector6(exps)
        # c_j = -sum_i d_j a_ji beta_i  =>  beta = -(D A)^(-T) c ; DA symmetric
        cs = [Fraction(int(x), 6) for x in c6]
        beta = []
        for r in range(len(self.order)):
            beta.append(-sum(self.da_inv[r][t] * cs[t] for t in range(len(cs))))
        return tuple(beta)

    def beta_of_element(self, elem: TorusElement):
        betas = {self.beta_of_exps(e) for e in elem.terms}
        if len(betas) != 1:
            raise ValueError(f"element not weight-homogeneous: {betas}")
        return next(iter(betas))
