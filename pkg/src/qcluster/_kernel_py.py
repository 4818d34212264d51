"""Pure-Python kernel for torus-element term combination.

The compiled backend in _kernel_c.pyx implements the same two functions; the
package selects whichever is importable (see _kernel.py).  Coefficients are
QLaurent/QRational objects either way; the kernel only drives the loops.
"""

from __future__ import annotations

import numpy as np


def add_terms(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        prev = out.get(e)
        if prev is None:
            out[e] = c
        else:
            s = prev + c
            if s.is_zero():
                del out[e]
            else:
                out[e] = s
    return out


def mul_terms(a: dict, b: dict, low6) -> dict:
    """Normal-ordered product: phases phi(ea, eb) = ea . low6 . eb in sixth-units."""
    ea_list = list(a.keys())
    eb_list = list(b.keys())
    amat = np.array(ea_list, dtype=np.int64)
    bmat = np.array(eb_list, dtype=np.int64)
    phases = amat @ low6 @ bmat.T
    asum = amat[:, None, :] + bmat[None, :, :]
    out = {}
    ca_list = [a[e] for e in ea_list]
    cb_list = [b[e] for e in eb_list]
    na, nb = len(ea_list), len(eb_list)
    asum_flat = asum.reshape(na * nb, -1)
    keys = list(map(tuple, asum_flat.tolist()))
    phases_flat = phases.reshape(-1).tolist()
    t = 0
    for i in range(na):
        ca = ca_list[i]
        for j in range(nb):
            ph = phases_flat[t]
            key = keys[t]
            t += 1
            c = ca * cb_list[j]
            if ph:
                c = _shift(c, ph)
            prev = out.get(key)
            if prev is None:
                out[key] = c
            else:
                s = prev + c
                if s.is_zero():
                    del out[key]
                else:
                    out[key] = s
    return out


def _shift(c, e6):
    from .qarith import QLaurent
    if isinstance(c, QLaurent):
        return c.shifted(e6)
    return c * QLaurent.s_power(e6)
