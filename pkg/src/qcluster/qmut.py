"""Quantum cluster mutation: monomial transform, dilogarithm conjugation,
transport of torus elements across mutation sequences, and the change-of-word
dictionaries (braid move -> quiver mutations + relabel).
"""

from __future__ import annotations

from fractions import Fraction

from .qarith import QLaurent
from .seed import NodeLabel, SeedQuiver
from .torus import Torus, TorusElement, divide_binomial, NotDivisible


class LaurentnessViolation(ArithmeticError):
    pass


def _monomial_map(src: Torus, dst: Torus, images: dict):
    """Multiplicative extension of node -> monomial images (exact torus products)."""
    def apply(elem: TorusElement) -> TorusElement:
        out = dst.zero()
        for exps, coeff in elem.terms.items():
            acc = dst.one()
            for t, v in enumerate(exps):
                if v:
                    acc = acc * (images[src.nodes[t]] ** v)
            out = out + acc.scale(coeff)
        return out
    return apply


def mu_prime_images(seed: SeedQuiver, k, target: Torus, flip=False):
    """Images of the mutated-seed generators under mu'_k, as monomials over target.

    X^_k -> X_k^(-1);  X^_i -> X_i for b_ki <= 0;  X^_i -> q_k^(-c^2) X_i X_k^c
    with c = b_ki for b_ki >= 0 (flip negates b_ki; used for the g_b* variant).
    """
    dk = seed.d[k]
    images = {}
    for i in seed.nodes:
        if i == k:
            images[i] = target.generator(k, -1)
            continue
        bki = seed.b(k, i)
        if flip:
            bki = -bki
        if bki <= 0:
            images[i] = target.generator(i)
        else:
            c = int(bki)
            mono = target.generator(i) * target.generator(k, c)
            images[i] = mono.scale(QLaurent.q_power(-dk * c * c))
    return images


def mu_prime_inverse_images(seed: SeedQuiver, k, target: Torus, flip=False):
    """Images of the original generators under (mu'_k)^(-1) over the mutated torus."""
    dk = seed.d[k]
    images = {}
    for i in seed.nodes:
        if i == k:
            images[i] = target.generator(k, -1)
            continue
        bki = seed.b(k, i)
        if flip:
            bki = -bki
        if bki <= 0:
            images[i] = target.generator(i)
        else:
            c = int(bki)
            mono = target.generator(i) * target.generator(k, c)
            images[i] = mono.scale(QLaurent.q_power(dk * c * c))
    return images


def mu_prime(seed: SeedQuiver, k, elem: TorusElement, torus: Torus, flip=False) -> TorusElement:
    """mu'_k applied to an element expressed over the mutated seed's variables."""
    images = mu_prime_images(seed, k, torus, flip=flip)
    return _monomial_map(elem.torus, torus, images)(elem)


def _commutation_c(torus: Torus, k, exps, dk) -> int:
    """c with X_k M = q_k^(2c) M X_k for the monomial with exponents exps."""
    kvec = [0] * torus.dim
    kvec[torus.index[k]] = 1
    import numpy as np
    psi6 = int(np.asarray(kvec) @ torus.lam6 @ np.asarray(exps, dtype=np.int64))
    c = Fraction(psi6, 12) / dk
    if c.denominator != 1:
        raise ValueError(f"non-integer commutation exponent {c} at {k}")
    return int(c)


def psi_conjugate(seed: SeedQuiver, k, elem: TorusElement, inverse=False,
                  invert_argument=False) -> TorusElement:
    """Ad by the quantum dilogarithm of X_k (or X_k^(-1)).

    inverse=False conjugates by Psi^(q_k)(X_k), inverse=True by its inverse
    g_(b_k)(X_k).  Monomials are grouped by commutation exponent; negative
    groups go through exact binomial division (grouped, not per-monomial).
    """
    torus = elem.torus
    dk = seed.d[k]
    dk6 = int(6 * dk)
    groups = {}
    for exps, coeff in elem.terms.items():
        c = _commutation_c(torus, k, exps, dk)
        if invert_argument:
            c = -c
        groups.setdefault(c, {})[exps] = coeff
    out = torus.zero()
    for c, terms in groups.items():
        part = TorusElement(torus, terms)
        mult = c >= 0
        if inverse:
            mult = not mult
        count = abs(c)
        if count == 0:
            out = out + part
            continue
        # factors (1 + q_k^(+-(2r-1)) Xk^(+-1)); all commute with each other
        for r in range(1, count + 1):
            e6 = (2 * r - 1) * dk6 if c >= 0 else -(2 * r - 1) * dk6
            a = QLaurent.s_power(e6)
            xknode = k
            power = -1 if invert_argument else 1
            if mult:
                xk = torus.generator(xknode, power).scale(a)
                part = part * (torus.one() + xk)
            else:
                try:
                    part = _divide_binomial_power(part, xknode, a, power)
                except NotDivisible as exc:
                    raise LaurentnessViolation(str(exc)) from exc
        out = out + part
    return out


def _divide_binomial_power(part, k, a, power):
    if power == 1:
        return divide_binomial(part, k, a, "right")
    # divisor (1 + a X_k^(-1)) = (a X_k^(-1)) (1 + a^(-1) X_k): divide and unwind
    torus = part.torus
    inv_piece = torus.generator(k, -1).scale(a)
    q1 = divide_binomial_general(part, inv_piece)
    return q1


def divide_binomial_general(p: TorusElement, mono: TorusElement) -> TorusElement:
    """Q with Q*(1 + mono) = p for a single-monomial mono carrying X_k^(+-1)."""
    torus = p.torus
    (mexps, mcoeff), = mono.terms.items()
    nz = [t for t, v in enumerate(mexps) if v]
    assert len(nz) == 1
    kk = nz[0]
    direction = 1 if mexps[kk] > 0 else -1
    by_deg = {}
    for exps, coeff in p.terms.items():
        by_deg.setdefault(exps[kk], {})[exps] = coeff
    if not by_deg:
        return torus.zero()
    quot = {}
    degs = sorted(by_deg, reverse=(direction < 0))
    carry = {}
    lo, hi = min(by_deg), max(by_deg)
    rng = range(lo, hi + 1) if direction > 0 else range(hi, lo - 1, -1)
    for deg in rng:
        level = dict(by_deg.get(deg, {}))
        for e, c in list(carry.items()):
            if e[kk] == deg:
                prev = level.get(e)
                s = (prev + c) if prev is not None else c
                if s == 0 or (hasattr(s, "is_zero") and s.is_zero()):
                    level.pop(e, None)
                else:
                    level[e] = s
                del carry[e]
        if not level:
            continue
        q_level = TorusElement(torus, level)
        for e, c in q_level.terms.items():
            quot[e] = c
        prod = q_level * mono
        for e, c in prod.terms.items():
            prev = carry.get(e)
            nc = (prev + (-c)) if prev is not None else -c
            if nc == 0 or (hasattr(nc, "is_zero") and nc.is_zero()):
                carry.pop(e, None)
            else:
                carry[e] = nc
    if carry:
        raise NotDivisible("binomial division left a remainder")
    return TorusElement(torus, quot)


def mu_q_generator(seed: SeedQuiver, k, i, torus: Torus):
    """Closed-form mu_k^q(X^_i) when it is Laurent (b_ki <= 0 branch), else None."""
    dk6 = int(6 * seed.d[k])
    bki = seed.b(k, i)
    if i == k:
        return torus.generator(k, -1)
    if bki <= 0:
        out = torus.generator(i)
        for r in range(1, int(-bki) + 1):
            out = out * (torus.one() + torus.generator(k).scale(QLaurent.s_power((2 * r - 1) * dk6)))
        return out
    return None


def transport(seed: SeedQuiver, k, elems, torus: Torus = None, starred=False):
    """Move elements to the mutated seed: elem' = (mu_k^q)^(-1)(elem).

    Returns (mutated seed, mutated torus, transported elements).
    """
    if torus is None:
        torus = Torus(seed)
    new_seed = seed.mutate(k)
    new_torus = Torus(new_seed)
    inv_images = mu_prime_inverse_images(seed, k, new_torus, flip=starred)
    mmap = _monomial_map(torus, new_torus, inv_images)
    out = []
    for elem in elems:
        conj = psi_conjugate(seed, k, elem, inverse=not starred,
                             invert_argument=starred)
        out.append(mmap(conj))
    return new_seed, new_torus, out


def run_sequence(seed: SeedQuiver, steps, elems, torus: Torus = None):
    """Fold transport over a mutation sequence; log records per-step term counts."""
    if torus is None:
        torus = Torus(seed)
    log = []
    cur_seed, cur_torus, cur = seed, torus, list(elems)
    for t, step in enumerate(steps):
        if isinstance(step, tuple):
            k, starred = step
        else:
            k, starred = step, False
        before = sum(len(e) for e in cur)
        cur_seed, cur_torus, cur = transport(cur_seed, k, cur, cur_torus, starred=starred)
        after = sum(len(e) for e in cur)
        log.append(f"step {t + 1}: mutate {k} ok (terms: {before}->{after})")
    return cur_seed, cur_torus, cur, log


def relabel_element(elem: TorusElement, torus_old: Torus, torus_new: Torus, relabel: dict):
    """Push an element through a node relabeling (a seed permutation).

    Normal order changes with the node order; the Weyl basis is permutation
    equivariant, so coefficients are transported through it.
    """
    out = {}
    for exps, coeff in elem.terms.items():
        new_exps = [0] * torus_new.dim
        for t, v in enumerate(exps):
            if v:
                node = torus_old.nodes[t]
                new_exps[torus_new.index[relabel.get(node, node)]] = v
        new_exps = tuple(new_exps)
        shift = torus_new.weyl_phase6(new_exps) - torus_old.weyl_phase6(exps)
        from .qarith import coeff_shift
        out[new_exps] = coeff_shift(coeff, shift) if shift else coeff
    return TorusElement(torus_new, out)


# -- change-of-word dictionaries (the braid-move -> mutation tables) ---------------


def braid_move_data(letters, move, cd):
    """Mutation nodes and relabel maps realizing one Coxeter move on the word.

    Returns dict with positive-only and full (paired +-) variants; labels refer
    to the naming in force before the move.
    """
    letters = tuple(letters)
    if move.kind == "swap":
        return {"mutations_positive": [], "relabel_positive": {},
                "mutations_full": [], "relabel_full": {}}

    p, ln = move.pos, move.length
    window = letters[p:p + ln]
    i, j = window[0], window[1]

    def occ(letter, upto):
        return sum(1 for x in letters[:upto] if x == letter)

    counts = {x: sum(1 for y in letters if y == x) for x in set(letters)}

    if ln == 3:
        k = occ(i, p + 1)          # i at window pos 1 is its k-th occurrence
        l = occ(j, p + 2)
        muts_pos = [NodeLabel("f", i, k)]
        muts_full = [NodeLabel("f", i, k), NodeLabel("f", i, -k)]
        relabel = {}
        ni, nj = counts[i], counts[j]
        for s in range(k + 1, ni + 1):
            relabel[NodeLabel("f", i, s)] = NodeLabel("f", i, s - 1)
            relabel[NodeLabel("f", i, -s)] = NodeLabel("f", i, -(s - 1))
        relabel[NodeLabel("f", i, k)] = NodeLabel("f", j, l)
        relabel[NodeLabel("f", i, -k)] = NodeLabel("f", j, -l)
        for s in range(nj, l - 1, -1):
            relabel[NodeLabel("f", j, s)] = NodeLabel("f", j, s + 1)
            relabel[NodeLabel("f", j, -s)] = NodeLabel("f", j, -(s + 1))
        rel_pos = {a: b for a, b in relabel.items() if a.level >= 0}
        return {"mutations_positive": muts_pos, "relabel_positive": rel_pos,
                "mutations_full": muts_full, "relabel_full": relabel}

    if ln == 4:
        # doubly laced: mutate (short, long, short) at their first window occurrences
        short = i if cd.d[i] < cd.d[j] else j
        lng = j if short == i else i
        ks = occ(short, p + (1 if window[0] == short else 2))
        kl = occ(lng, p + (1 if window[0] == lng else 2))
        s_node = NodeLabel("f", short, ks)
        l_node = NodeLabel("f", lng, kl)
        muts_pos = [s_node, l_node, s_node]
        muts_full = []
        for lab in muts_pos:
            muts_full += [lab, NodeLabel("f", lab.root, -lab.level)]
        return {"mutations_positive": muts_pos, "relabel_positive": {},
                "mutations_full": muts_full, "relabel_full": {}}

    if ln == 6:
        short = i if cd.d[i] < cd.d[j] else j
        lng = j if short == i else i
        a = occ(short, p + (1 if window[0] == short else 2))
        b = occ(lng, p + (1 if window[0] == lng else 2))
        S = lambda t: NodeLabel("f", short, t)
        L = lambda t: NodeLabel("f", lng, t)
        if window[0] == short:
            muts_pos = [L(b + 1), L(b), S(a + 1), L(b + 1), S(a + 1), S(a),
                        S(a + 1), L(b + 1), L(b), S(a + 1), L(b + 1)]
        else:
            # inverse direction: reversed sequence conjugated by the end swap
            muts_pos = [L(b + 1), S(a), L(b), L(b + 1), S(a), S(a + 1),
                        S(a), L(b + 1), S(a), L(b), L(b + 1)]
        muts_full = []
        for lab in muts_pos:
            muts_full += [lab, NodeLabel("f", lab.root, -lab.level)]
        relabel = {
            S(a): S(a + 1), S(a + 1): S(a),
            NodeLabel("f", short, -a): NodeLabel("f", short, -(a + 1)),
            NodeLabel("f", short, -(a + 1)): NodeLabel("f", short, -a),
        }
        rel_pos = {x: y for x, y in relabel.items() if x.level >= 0}
        return {"mutations_positive": muts_pos, "relabel_positive": rel_pos,
                "mutations_full": muts_full, "relabel_full": relabel}

    raise ValueError(f"unsupported move length {ln}")


def track_initial_positions(letters, move, positions: dict) -> dict:
    """Initial-term positions after a Coxeter move: the move window reverses."""
    out = {}
    if move.kind == "swap":
        window = {move.pos, move.pos + 1}
        for gen, pos in positions.items():
            p0 = pos - 1
            if p0 in window:
                out[gen] = (move.pos if p0 == move.pos + 1 else move.pos + 1) + 1
            else:
                out[gen] = pos
        return out
    lo, hi = move.pos, move.pos + move.length - 1
    for gen, pos in positions.items():
        p0 = pos - 1
        if lo <= p0 <= hi:
            out[gen] = (lo + hi - p0) + 1
        else:
            out[gen] = pos
    return out
