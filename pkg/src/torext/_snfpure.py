"""Pure-Python elimination kernel.

Twin of the compiled module ``torext._snfcore``; both implement the same
algorithm statement-for-statement so their outputs are identical.  All
arithmetic is on Python ints (arbitrary precision), never on machine
words.
"""

BACKEND = "python"


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


def snf_diagonalize(d, u, v):
    """Reduce d in place to Smith normal form.

    d is a list of m lists of n ints.  Row operations are mirrored on u,
    column operations on v (either may be None).  Afterwards d is
    diagonal with nonnegative entries, each dividing the next, and
    (old u) * (old d as a map) * ... -- concretely, if u and v start as
    identity matrices then u @ d_in @ v == d_out.
    """
    m = len(d)
    n = len(d[0]) if m else 0
    t = 0
    while t < m and t < n:
        # Pivot: smallest nonzero absolute value in the trailing block.
        pi = -1
        pj = -1
        best = 0
        for i in range(t, m):
            di = d[i]
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
            break  # trailing block is zero
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
            # Clear column t with unimodular row pairs.
            for i in range(t + 1, m):
                b = d[i][t]
                if b == 0:
                    continue
                a = d[t][t]
                if b % a == 0:
                    q = b // a
                    dt = d[t]
                    di = d[i]
                    for j in range(t, n):
                        di[j] -= q * dt[j]
                    if u is not None:
                        ut = u[t]
                        ui = u[i]
                        for j in range(len(ui)):
                            ui[j] -= q * ut[j]
                else:
                    x, y, g = xgcd(a, b)
                    ag = a // g
                    bg = b // g
                    dt = d[t]
                    di = d[i]
                    for j in range(t, n):
                        p = dt[j]
                        q = di[j]
                        dt[j] = x * p + y * q
                        di[j] = ag * q - bg * p
                    if u is not None:
                        ut = u[t]
                        ui = u[i]
                        for j in range(len(ui)):
                            p = ut[j]
                            q = ui[j]
                            ut[j] = x * p + y * q
                            ui[j] = ag * q - bg * p
            row_clear = True
            for j in range(t + 1, n):
                if d[t][j]:
                    row_clear = False
                    break
            if row_clear:
                break
            # Clear row t with unimodular column pairs.
            for j in range(t + 1, n):
                b = d[t][j]
                if b == 0:
                    continue
                a = d[t][t]
                if b % a == 0:
                    q = b // a
                    for i in range(t, m):
                        d[i][j] -= q * d[i][t]
                    if v is not None:
                        for row in v:
                            row[j] -= q * row[t]
                else:
                    x, y, g = xgcd(a, b)
                    ag = a // g
                    bg = b // g
                    for i in range(t, m):
                        di = d[i]
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
                if d[i][t]:
                    col_clear = False
                    break
            if col_clear:
                break
        t += 1
    # Sign normalization: nonnegative diagonal.
    for i in range(min(m, n)):
        if d[i][i] < 0:
            di = d[i]
            for j in range(n):
                di[j] = -di[j]
            if u is not None:
                ui = u[i]
                for j in range(len(ui)):
                    ui[j] = -ui[j]
    # Divisibility repair: replace each out-of-order pair diag(a, b) by
    # diag(gcd, lcm) with a local 2x2 unimodular transform.  The matrix
    # stays diagonal throughout, so no fill-in (and none of the entry
    # blow-up that row-addition repairs cause) is possible.  One pass of
    # i < j suffices: after the inner loop d[i][i] divides every later
    # entry, and later gcd/lcm swaps preserve that.
    r = 0
    while r < m and r < n and d[r][r]:
        r += 1
    for i in range(r):
        for j in range(i + 1, r):
            a = d[i][i]
            b = d[j][j]
            if b % a == 0:
                continue
            x, y, g = xgcd(a, b)
            ag = a // g
            bg = b // g
            d[i][i] = g
            d[j][j] = ag * b
            if u is not None:
                ui = u[i]
                uj = u[j]
                for k in range(len(ui)):
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
