# cython: language_level=3
"""Compiled elimination kernel.

Statement-for-statement twin of ``torext._snfpure``; entries stay Python
ints so arbitrary-precision arithmetic is preserved.  The speedup over
the pure twin comes from C-level loop control, not from machine-word
arithmetic.
"""

import cython

BACKEND = "c"


def xgcd(a, b):
    """Extended gcd.  Returns (x, y, g) with x*a + y*b == g == gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        # Maintain the invariants:
        #     x*a + y*b == g
        #     next_x*a + next_y*b == next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def snf_diagonalize(list d, u, v):
    """Reduce d in place to Smith normal form (see the pure twin's docstring)."""
    cdef Py_ssize_t m = len(d)
    cdef Py_ssize_t n = len(<list>d[0]) if m else 0
    cdef Py_ssize_t t = 0
    cdef Py_ssize_t i, j, k, r, pi, pj, uw
    cdef bint row_clear, col_clear
    cdef list di, dt, ut, ui, uj, row
    while t < m and t < n:
        pi = -1
        pj = -1
        best = 0
        for i in range(t, m):
            di = <list>d[i]
            for j in range(t, n):
                e = di[j]
                if e:
                    if e < 0:
                        e = -e
                    if pi < 0 or e < best:
                        best = e
                        pi = i
                        pj = j
            if best == 1:
                break
        if pi < 0:
            break
        if pi != t:
            d[t], d[pi] = d[pi], d[t]
            if u is not None:
                u[t], u[pi] = u[pi], u[t]
        if pj != t:
            for row in d:
                row[t], row[pj] = row[pj], row[t]
            if v is not None:
                for row in v:
                    row[t], row[pj] = row[pj], row[t]
        while True:
            for i in range(t + 1, m):
                b = (<list>d[i])[t]
                if b == 0:
                    continue
                a = (<list>d[t])[t]
                if b % a == 0:
                    q = b // a
                    dt = <list>d[t]
                    di = <list>d[i]
                    for j in range(t, n):
                        di[j] -= q * dt[j]
                    if u is not None:
                        ut = <list>u[t]
                        ui = <list>u[i]
                        uw = len(ui)
                        for j in range(uw):
                            ui[j] -= q * ut[j]
                else:
                    x, y, g = xgcd(a, b)
                    ag = a // g
                    bg = b // g
                    dt = <list>d[t]
                    di = <list>d[i]
                    for j in range(t, n):
                        p = dt[j]
                        q = di[j]
                        dt[j] = x * p + y * q
                        di[j] = ag * q - bg * p
                    if u is not None:
                        ut = <list>u[t]
                        ui = <list>u[i]
                        uw = len(ui)
                        for j in range(uw):
                            p = ut[j]
                            q = ui[j]
                            ut[j] = x * p + y * q
                            ui[j] = ag * q - bg * p
            row_clear = True
            for j in range(t + 1, n):
                if (<list>d[t])[j]:
                    row_clear = False
                    break
            if row_clear:
                break
            for j in range(t + 1, n):
                b = (<list>d[t])[j]
                if b == 0:
                    continue
                a = (<list>d[t])[t]
                if b % a == 0:
                    q = b // a
                    for i in range(t, m):
                        di = <list>d[i]
                        di[j] -= q * di[t]
                    if v is not None:
                        for row in v:
                            row[j] -= q * row[t]
                else:
                    x, y, g = xgcd(a, b)
                    ag = a // g
                    bg = b // g
                    for i in range(t, m):
                        di = <list>d[i]
                        p = di[t]
                        q = di[j]
                        di[t] = x * p + y * q
                        di[j] = ag * q - bg * p
                    if v is not None:
                        for row in v:
                            p = row[t]
                            q = row[j]
                            row[t] = x * p + y * q
                            row[j] = ag * q - bg * p
            col_clear = True
            for i in range(t + 1, m):
                if (<list>d[i])[t]:
                    col_clear = False
                    break
            if col_clear:
                break
        t += 1
    for i in range(min(m, n)):
        if (<list>d[i])[i] < 0:
            di = <list>d[i]
            for j in range(n):
                di[j] = -di[j]
            if u is not None:
                ui = <list>u[i]
                uw = len(ui)
                for j in range(uw):
                    ui[j] = -ui[j]
    # Divisibility repair: replace each out-of-order pair diag(a, b) by
    # diag(gcd, lcm) with a local 2x2 unimodular transform.  The matrix
    # stays diagonal throughout, so no fill-in (and none of the entry
    # blow-up that row-addition repairs cause) is possible.  One pass of
    # i < j suffices: after the inner loop d[i][i] divides every later
    # entry, and later gcd/lcm swaps preserve that.
    r = 0
    while r < m and r < n and (<list>d[r])[r]:
        r += 1
    for i in range(r):
        for j in range(i + 1, r):
            a = (<list>d[i])[i]
            b = (<list>d[j])[j]
            if b % a == 0:
                continue
            x, y, g = xgcd(a, b)
            ag = a // g
            bg = b // g
            (<list>d[i])[i] = g
            (<list>d[j])[j] = ag * b
            if u is not None:
                ui = <list>u[i]
                uj = <list>u[j]
                uw = len(ui)
                for k in range(uw):
                    p = ui[k]
                    q = uj[k]
                    ui[k] = x * p + y * q
                    uj[k] = ag * q - bg * p
            if v is not None:
                xag = x * ag
                ybg = y * bg
                for row in v:
                    p = row[i]
                    q = row[j]
                    row[i] = p + q
                    row[j] = xag * q - ybg * p
