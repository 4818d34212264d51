"""Heisenberg-symbol calculus: derive the cluster variables and the exchange
matrix of the big quantum torus from the position-representation formulas,
independently of any hand-encoded quiver table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cartan import ReducedWord, dynkin_involution
from .seed import NodeLabel, SeedQuiver
from . import tables


class LinearForm(dict):
    """Rational linear combination of symbols ('u', j), ('p', j), ('l', i)."""

    def __missing__(self, key):
        return Fraction(0)

    def _combine(self, other, sign):
        out = LinearForm(self)
        for k, v in other.items():
            w = out[k] + sign * v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return out

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scaled(self, c):
        c = Fraction(c)
        if not c:
            return LinearForm()
        return LinearForm({k: c * v for k, v in self.items()})

    @staticmethod
    def of(*pairs):
        out = LinearForm()
        for key, coeff in pairs:
            v = out[key] + Fraction(coeff)
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return out


def pairing(a: LinearForm, b: LinearForm, dpos) -> Fraction:
    """<A,B> with e(A)e(B) = q^<A,B> e(B)e(A); dpos[j] is the multiplier at position j.

    Calibrated so that e(u_j) e(2 p_j) = q^(d_j) e(2 p_j) e(u_j).
    """
    total = Fraction(0)
    for key, av in a.items():
        kind, j = key
        if kind == "u":
            bv = b[("p", j)]
            if bv:
                total += dpos[j] * av * bv
        elif kind == "p":
            bv = b[("u", j)]
            if bv:
                total -= dpos[j] * av * bv
    return total / 2


@dataclass
class HeisDerivation:
    word: ReducedWord
    forms: dict            # NodeLabel -> LinearForm (exponent of e(.))
    f_forms: dict          # (i, k, sign) -> LinearForm for F_i^{k,+-}
    k_forms: dict          # i -> LinearForm for K_i
    quiver: SeedQuiver
    initial_positions: dict

    def lam_q(self, x: NodeLabel, y: NodeLabel) -> Fraction:
        dpos = self._dpos
        return pairing(self.forms[x], self.forms[y], dpos)


def f_terms(word: ReducedWord, lambda_index=None):
    """F_i^{k,+-} and K_i as linear forms.

    F_i^{k,-} = e(-S + u_i^k - 2 l_nu(i) + 2 p_i^k),
    F_i^{k,+} = e(+S - u_i^k + 2 l_nu(i) + 2 p_i^k),
    S = sum_(j <= v(i,k)) a_(i_j, i) v_j;  K_i = e(-2 l_nu(i) - sum_j a_(i_j, i) v_j).
    The lambda index nu follows the Dynkin involution (pinned by the rank-2 example).
    """
    cd = word.cartan
    if lambda_index is None:
        lambda_index = dynkin_involution(cd.family, cd.n)
    counts = word.counts()
    f_forms = {}
    k_forms = {}
    for i in cd.nodes:
        nu = lambda_index[i]
        run = LinearForm()
        k = 0
        for pos, letter in enumerate(word.word, start=1):
            run = run + LinearForm.of((("u", pos), cd.a[letter][i]))
            if letter == i:
                k += 1
                base = LinearForm.of((("u", pos), 1), (("l", nu), -2), (("p", pos), 2))
                f_forms[(i, k, "-")] = base - run
                f_forms[(i, k, "+")] = (run - base) + LinearForm.of((("p", pos), 4))
        assert k == counts[i]
        k_forms[i] = LinearForm.of((("l", nu), -2)) - run
    return f_forms, k_forms


def cluster_vars_from_ratios(word: ReducedWord, initial_positions=None) -> HeisDerivation:
    """All 2N+2n cluster-variable exponent forms and the derived exchange matrix."""
    cd = word.cartan
    counts = word.counts()
    if initial_positions is None:
        initial_positions = tables.initial_positions(word)
    f_forms, k_forms = f_terms(word)

    forms = {}
    for i in cd.nodes:
        ni = counts[i]
        for k in range(-ni, ni + 1):
            lab = NodeLabel("f", i, k)
            if k == -ni:
                form = f_forms[(i, ni, "-")]
            elif k < 0:
                form = f_forms[(i, -k, "-")] - f_forms[(i, -k + 1, "-")]
            elif k == 0:
                form = f_forms[(i, 1, "+")] - f_forms[(i, 1, "-")]
            elif k < ni:
                form = f_forms[(i, k + 1, "+")] - f_forms[(i, k, "+")]
            else:
                form = (LinearForm() - k_forms[i]) - f_forms[(i, ni, "+")]
            forms[lab] = form
        pos = initial_positions[i]
        forms[NodeLabel("e", i, 0)] = LinearForm.of((("u", pos), -2))

    dpos = {pos: cd.d[letter] for pos, letter in enumerate(word.word, start=1)}

    labels = sorted(forms, key=lambda v: (v.family, v.root, v.level))
    d = {}
    frozen = set()
    for lab in labels:
        d[lab] = cd.d[lab.root]
        if lab.family == "f" and abs(lab.level) == counts[lab.root]:
            frozen.add(lab)

    weights = {}
    for t, x in enumerate(labels):
        fx = forms[x]
        for y in labels[t + 1:]:
            lam = pairing(fx, forms[y], dpos)   # X_x X_y = q^lam X_y X_x
            if lam:
                w = -lam / 2                     # w_xy = d_x b_xy, lam = -2 w_xy
                weights[(x, y)] = w

    quiver = SeedQuiver(tuple(labels), frozen, d, weights)
    deriv = HeisDerivation(word, forms, f_forms, k_forms, quiver, dict(initial_positions))
    deriv._dpos = dpos
    return deriv


def centrality_check(deriv: HeisDerivation) -> bool:
    """iota(K_i) iota(K_i') must be central: its form pairs to zero with everything."""
    cd = deriv.word.cartan
    counts = deriv.word.counts()
    for i in cd.nodes:
        ni = counts[i]
        kk = deriv.k_forms[i]
        kp = LinearForm()
        for k in range(-ni, ni + 1):
            kp = kp + deriv.forms[NodeLabel("f", i, k)]
        combined = kk + kp
        for lab, form in deriv.forms.items():
            if pairing(combined, form, deriv._dpos) != 0:
                return False
    return True
